"""Automorphism group computation for sparse weighted/directed graphs.

The search is individualization-refinement backtracking over ordered
partitions. Refinement drives vertices apart by the multiset of
(neighbor-cell, weight, direction) signatures; the backtracking tree is
pruned with the orbits of the automorphisms found so far (on the leftmost
path) and with a cell-size-sequence node invariant everywhere. Candidate
permutations read off at leaves are always verified against the sparse
entry set, so every returned generator is a genuine automorphism and the
returned set generates the full group.

For very large graphs, :func:`import_generators` accepts generator files
produced by external tools instead of running the native search.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass, field

from . import perms
from .errors import ContractError, ParseError
from .graph import Graph
from .perms import Perm, support_classes
from .schreier import group_order_of

_OUT = 0
_IN = 1


@dataclass(frozen=True)
class Permutation:
    """A vertex permutation in image-array form."""

    image: tuple[int, ...]

    def __post_init__(self):
        perms.check_permutation(list(self.image))

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def as_list(self) -> list[int]:
        return list(self.image)

    def cycles_text(self, labels: list[str] | None = None) -> str:
        return perms.format_cycles(list(self.image), labels)


@dataclass
class GeneratorSet:
    """Verified generators of (a subgroup of) Aut(G); never stores identities."""

    n: int
    generators: list[Permutation] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.generators)

    def images(self) -> list[list[int]]:
        return [g.as_list() for g in self.generators]


@dataclass
class OrderedPartition:
    """Partition of 0..n-1 into ordered cells; cell order is significant."""

    cells: list[list[int]]

    def check(self, n: int) -> None:
        seen = [False] * n
        for cell in self.cells:
            for v in cell:
                if not 0 <= v < n or seen[v]:
                    raise ContractError("cells do not partition 0..n-1")
                seen[v] = True
        if not all(seen):
            raise ContractError("cells do not cover 0..n-1")


def _round12(w: float) -> float:
    # 12 significant digits keeps refinement stable on computed measure nets.
    return float(f"{w:.12g}")


class _Partition:
    """Working ordered partition: stable cell ids plus an order list."""

    __slots__ = ("cells", "order", "cell_of", "next_id")

    def __init__(self, cells: list[list[int]], n: int):
        self.cells: dict[int, list[int]] = {}
        self.order: list[int] = []
        self.cell_of = [0] * n
        self.next_id = 0
        for cell in cells:
            cid = self.next_id
            self.next_id += 1
            members = sorted(cell)
            self.cells[cid] = members
            self.order.append(cid)
            for v in members:
                self.cell_of[v] = cid

    def copy(self) -> "_Partition":
        p = _Partition.__new__(_Partition)
        p.cells = {cid: list(m) for cid, m in self.cells.items()}
        p.order = list(self.order)
        p.cell_of = list(self.cell_of)
        p.next_id = self.next_id
        return p

    def shape(self) -> tuple[int, ...]:
        return tuple(len(self.cells[cid]) for cid in self.order)

    def as_cells(self) -> list[list[int]]:
        return [list(self.cells[cid]) for cid in self.order]

    def target_cell(self) -> int | None:
        """Id of the first smallest non-singleton cell, or None if discrete."""
        best: int | None = None
        best_size = 0
        for cid in self.order:
            size = len(self.cells[cid])
            if size > 1 and (best is None or size < best_size):
                best, best_size = cid, size
        return best

    def individualize(self, cid: int, v: int) -> tuple[int, int]:
        """Split {v} out of cell cid, placing the singleton first."""
        members = self.cells[cid]
        rest = [u for u in members if u != v]
        new_single = self.next_id
        new_rest = self.next_id + 1
        self.next_id += 2
        self.cells[new_single] = [v]
        self.cells[new_rest] = rest
        del self.cells[cid]
        pos = self.order.index(cid)
        self.order[pos : pos + 1] = [new_single, new_rest]
        self.cell_of[v] = new_single
        for u in rest:
            self.cell_of[u] = new_rest
        return new_single, new_rest

    def refine(self, g: Graph, active: list[int]) -> None:
        """Coarsest equitable refinement; ``active`` seeds the splitter queue."""
        queue = deque(active)
        queued = set(active)
        cells, order, cell_of = self.cells, self.order, self.cell_of
        directed = g.directed
        while queue:
            wid = queue.popleft()
            queued.discard(wid)
            members = cells.get(wid)
            if members is None:
                continue  # superseded by its fragments
            acc: dict[int, dict[tuple, int]] = {}
            for w in members:
                for u, wt in g.neighbors(w).items():
                    key = (_round12(wt), _IN)
                    sig = acc.setdefault(u, {})
                    sig[key] = sig.get(key, 0) + 1
                if directed:
                    for u, wt in g.in_neighbors(w).items():
                        key = (_round12(wt), _OUT)
                        sig = acc.setdefault(u, {})
                        sig[key] = sig.get(key, 0) + 1
            touched_cells: dict[int, list[int]] = {}
            for u in acc:
                touched_cells.setdefault(cell_of[u], []).append(u)
            # Process affected cells in partition order for determinism.
            for cid in [c for c in order if c in touched_cells]:
                cmembers = cells[cid]
                if len(cmembers) == 1:
                    continue
                groups: dict[tuple, list[int]] = {}
                for u in cmembers:
                    sig = acc.get(u)
                    key = tuple(sorted(sig.items())) if sig else ()
                    groups.setdefault(key, []).append(u)
                if len(groups) == 1:
                    continue
                frag_ids = []
                pos = order.index(cid)
                del cells[cid]
                for key in sorted(groups):
                    fid = self.next_id
                    self.next_id += 1
                    frag = groups[key]
                    cells[fid] = frag
                    for u in frag:
                        cell_of[u] = fid
                    frag_ids.append(fid)
                order[pos : pos + 1] = frag_ids
                for fid in frag_ids:
                    if fid not in queued:
                        queue.append(fid)
                        queued.add(fid)


def refine_equitable(g: Graph, p: OrderedPartition | list[list[int]]) -> OrderedPartition:
    """Coarsest equitable partition finer than p, deterministically ordered.

    Equitable means every vertex of a cell sees the same multiset of
    (neighbor-cell, weight, direction) signatures; weights are compared
    after rounding to 12 significant digits.
    """
    cells = p.cells if isinstance(p, OrderedPartition) else p
    OrderedPartition(cells).check(g.n)
    part = _Partition(cells, g.n)
    part.refine(g, list(part.order))
    return OrderedPartition(part.as_cells())


def verify_automorphism(g: Graph, s: Permutation | list[int], tol: float = 0.0) -> bool:
    """True iff weight(s(i), s(j)) == weight(i, j) over the sparse entry set."""
    image = s.image if isinstance(s, Permutation) else s
    if len(image) != g.n:
        raise ContractError(f"permutation length {len(image)} != n={g.n}")
    if tol == 0.0:
        return all(g.weight(image[i], image[j]) == w for i, j, w in g.entries())
    return all(abs(g.weight(image[i], image[j]) - w) <= tol for i, j, w in g.entries())


def _is_automorphism_raw(g: Graph, image: list[int]) -> bool:
    weight = g.weight
    for i, j, w in g.entries():
        if weight(image[i], image[j]) != w:
            return False
    return True


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def find_generators(g: Graph) -> GeneratorSet:
    """Generators of Aut(g), respecting weights and directions.

    Deterministic for a fixed graph: the target cell is always the first
    smallest non-singleton cell and branch vertices are tried in increasing
    order. Asymmetric graphs yield an empty generator set.
    """
    n = g.n
    out = GeneratorSet(n)
    if n <= 1:
        return out

    root = _Partition([list(range(n))], n)
    root.refine(g, list(root.order))

    gens: list[list[int]] = []
    orbits = _UnionFind(n)
    first_leaf: list[int] | None = None
    first_shapes: dict[int, tuple[int, ...]] = {}
    ident = list(range(n))

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 3 * n + 1000))
    try:

        def descend(part: _Partition, tcid: int, v: int) -> _Partition:
            child = part.copy()
            single, rest = child.individualize(tcid, v)
            child.refine(g, [single, rest])
            return child

        def dfs(part: _Partition, depth: int, on_first_path: bool) -> bool:
            nonlocal first_leaf
            shape = part.shape()
            if on_first_path:
                first_shapes[depth] = shape
            elif first_shapes.get(depth) != shape:
                return False  # no automorphism can map the first path here
            tcid = part.target_cell()
            if tcid is None:
                lab = [part.cells[cid][0] for cid in part.order]
                if first_leaf is None:
                    first_leaf = lab
                    return False
                image = [0] * n
                for a, b in zip(first_leaf, lab):
                    image[a] = b
                if image != ident and _is_automorphism_raw(g, image):
                    gens.append(image)
                    for i, j in enumerate(image):
                        orbits.union(i, j)
                    return True
                return False
            branch = sorted(part.cells[tcid])
            if on_first_path:
                # Full exploration; later children pruned by known orbits.
                processed: list[int] = []
                for v in branch:
                    if processed:
                        r = orbits.find(v)
                        if any(orbits.find(u) == r for u in processed):
                            continue
                    dfs(descend(part, tcid, v), depth + 1, not processed)
                    processed.append(v)
                return False
            # Off the first path one coset representative suffices: stop at
            # the first automorphism found below this node.
            for v in branch:
                if dfs(descend(part, tcid, v), depth + 1, False):
                    return True
            return False

        dfs(root, 0, True)
    finally:
        sys.setrecursionlimit(old_limit)

    out.generators = [Permutation(tuple(im)) for im in gens]
    return out


def group_order(gs: GeneratorSet) -> int:
    """Exact order of the generated group as an arbitrary-precision integer.

    Generators are split into support-disjoint classes (the group is their
    internal direct product) and a Schreier-Sims chain is built per class on
    its support only, which keeps the computation local to motifs.
    """
    images = gs.images()
    total = 1
    for cls in support_classes(images):
        pts: set[int] = set()
        for idx in cls:
            pts.update(perms.support(images[idx]))
        order = sorted(pts)
        pos = {v: k for k, v in enumerate(order)}
        local = [[pos[images[idx][v]] for v in order] for idx in cls]
        total *= group_order_of(local, len(order))
    return total


def import_generators(source, n: int, graph: Graph | None = None) -> GeneratorSet:
    """Parse a generator file: one permutation per line, disjoint cycles.

    Cycle entries are original labels when ``graph`` is given (and every
    parsed permutation is verified against it), 1-based point numbers
    otherwise. Lines starting with '#' and blank lines are ignored.
    """
    if graph is not None and graph.n != n:
        raise ContractError("graph size disagrees with n")
    label_index = graph._label_index if graph is not None else None
    gens = []
    from .graph import _iter_lines

    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            image = perms.parse_cycles(line, n, label_index)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if perms.is_identity(image):
            continue
        if graph is not None and not verify_automorphism(graph, image):
            raise ContractError(f"line {lineno}: permutation is not an automorphism")
        gens.append(Permutation(tuple(image)))
    return GeneratorSet(n, gens)


def export_generators(gs: GeneratorSet, labels: list[str] | None = None) -> str:
    """Generator file text (inverse of import_generators)."""
    return "".join(g.cycles_text(labels) + "\n" for g in gs.generators)
