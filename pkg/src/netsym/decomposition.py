"""Geometric decomposition: symmetric motifs, orbits, and motif types.

The generator set is partitioned into support-disjoint classes; each class
generates the symmetry of one motif, whose vertex set is the union of the
class supports. Vertices moved by no generator form the asymmetric core of
fixed points. A motif is basic of type k when all its orbits have size k
and the induced action on every orbit is the full symmetric group;
otherwise it is complex (type 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .automorphism import GeneratorSet, Permutation, _UnionFind
from .errors import ContractError
from .perms import Perm, support_classes
from .perms import support as perm_support
from .schreier import group_order_of


def support(s: Permutation | Perm) -> set[int]:
    """Vertices moved by s."""
    image = s.as_list() if isinstance(s, Permutation) else s
    return perm_support(image)


@dataclass
class SymmetricMotif:
    """One support-disjoint symmetry class: vertex set, orbits and type.

    ``local_generators`` act on the motif's sorted vertex list (positions,
    not graph indices); the originating whole-graph generators fix every
    vertex outside the motif.
    """

    vertices: list[int]  # sorted
    orbits: list[list[int]]  # sorted cells, ordered by min member
    type: int  # k >= 1 basic, 0 complex
    local_generators: list[Perm]

    @property
    def is_basic(self) -> bool:
        return self.type > 0

    def positions(self) -> dict[int, int]:
        return {v: k for k, v in enumerate(self.vertices)}


@dataclass
class GeometricDecomposition:
    fixed_points: list[int]
    motifs: list[SymmetricMotif]

    @property
    def moved_count(self) -> int:
        return sum(len(m.vertices) for m in self.motifs)

    def motif_of(self, n: int) -> list[int]:
        """Vertex -> motif index, -1 for fixed points."""
        owner = [-1] * n
        for idx, m in enumerate(self.motifs):
            for v in m.vertices:
                owner[v] = idx
        return owner

    def orbit_cells(self, n: int) -> list[list[int]]:
        """Full orbit partition: motif orbits plus fixed-point singletons,
        in canonical order (sorted by minimum member)."""
        cells = [list(o) for m in self.motifs for o in m.orbits]
        cells.extend([v] for v in self.fixed_points)
        cells.sort(key=lambda c: c[0])
        return cells

    def basic_cells(self, n: int) -> list[list[int]]:
        """Basic-quotient partition: orbits of basic motifs; singletons for
        fixed points and for every vertex of a complex motif."""
        cells = []
        for m in self.motifs:
            if m.is_basic:
                cells.extend(list(o) for o in m.orbits)
            else:
                cells.extend([v] for v in m.vertices)
        cells.extend([v] for v in self.fixed_points)
        cells.sort(key=lambda c: c[0])
        return cells


def motif_orbits(gs: GeneratorSet) -> list[list[int]]:
    """Orbits of the generated group: union-find over generator images.

    Canonical order: orbits sorted by minimum member; singleton orbits of
    unmoved vertices are included.
    """
    uf = _UnionFind(gs.n)
    for g in gs.generators:
        for i, j in enumerate(g.image):
            uf.union(i, j)
    buckets: dict[int, list[int]] = {}
    for v in range(gs.n):
        buckets.setdefault(uf.find(v), []).append(v)
    return sorted(buckets.values(), key=lambda c: c[0])


def _restrict(image: Perm, verts: list[int], pos: dict[int, int]) -> Perm:
    return [pos[image[v]] for v in verts]


def motif_type(orbits: list[list[int]], local_generators: list[Perm]) -> int:
    """Type k if all orbits have size k and the induced action of the motif
    group on every orbit is the full symmetric group S_k; 0 otherwise."""
    sizes = {len(o) for o in orbits}
    if len(sizes) != 1:
        return 0
    k = sizes.pop()
    if k <= 2:
        # A transitive action on <= 2 points is automatically symmetric.
        return k
    target = math.factorial(k)
    for orbit in orbits:
        pos = {v: idx for idx, v in enumerate(orbit)}
        induced = [_restrict(g, orbit, pos) for g in local_generators]
        if group_order_of(induced, k) != target:
            return 0
    return k


def geometric_decomposition(gs: GeneratorSet) -> GeometricDecomposition:
    """Partition generators into support-disjoint classes and build motifs.

    Classes are the connected components of the vertex-generator incidence
    structure; each class's support union is one motif vertex set. Motifs
    are reported in canonical order (sorted by minimum vertex).
    """
    n = gs.n
    images = gs.images()
    for img in images:
        if len(img) != n:
            raise ContractError("generator length disagrees with n")
    motifs = []
    moved: set[int] = set()
    for cls in support_classes(images):
        verts: set[int] = set()
        for idx in cls:
            verts.update(perm_support(images[idx]))
        vertices = sorted(verts)
        moved.update(vertices)
        pos = {v: k for k, v in enumerate(vertices)}
        local = [_restrict(images[idx], vertices, pos) for idx in cls]
        # Orbits within the motif, via union-find over the class generators.
        uf = _UnionFind(len(vertices))
        for img in local:
            for a, b in enumerate(img):
                uf.union(a, b)
        buckets: dict[int, list[int]] = {}
        for k in range(len(vertices)):
            buckets.setdefault(uf.find(k), []).append(k)
        orbits = sorted(
            ([vertices[k] for k in cell] for cell in buckets.values()),
            key=lambda c: c[0],
        )
        local_orbits = [[pos[v] for v in o] for o in orbits]
        mtype = motif_type(local_orbits, local)
        motifs.append(SymmetricMotif(vertices, orbits, mtype, local))
    motifs.sort(key=lambda m: m.vertices[0])
    fixed = sorted(set(range(n)) - moved)
    return GeometricDecomposition(fixed, motifs)


def decomposition_to_dict(d: GeometricDecomposition, labels: list[str]) -> dict:
    """JSON-ready dump with original labels (CLI ``decompose``/``stats``)."""
    return {
        "fixed_points": [labels[v] for v in d.fixed_points],
        "motifs": [
            {
                "vertices": [labels[v] for v in m.vertices],
                "orbits": [[labels[v] for v in o] for o in m.orbits],
                "type": m.type,
            }
            for m in d.motifs
        ],
    }
