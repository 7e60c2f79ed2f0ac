"""Sparse graph representation, edge-list ingestion and basic structure ops.

A ``Graph`` stores a possibly weighted, possibly directed adjacency
structure with dense internal indices ``0..n-1`` and a bijective map to
the original external labels. It doubles as the network representation of
any sparse pairwise measure (e.g. the Laplacian), so self-loops and real
weights are allowed throughout. Graphs are immutable once built and safe
to read concurrently.
"""

from __future__ import annotations

import io
import json
from collections import deque
from typing import Iterable, Iterator

import numpy as np

from .errors import ContractError, ParseError


class Graph:
    """Sparse adjacency with stable vertex indexing.

    Invariants: internal indices are dense 0..n-1; for undirected graphs
    entry (i, j) is present iff (j, i) is, with equal weight; absent entries
    encode zero (no explicit zero weights are stored).
    """

    __slots__ = ("n", "directed", "_adj", "_pred", "labels", "_label_index")

    def __init__(
        self,
        n: int,
        entries: dict[tuple[int, int], float],
        directed: bool = False,
        labels: list[str] | None = None,
    ):
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ContractError(f"{len(labels)} labels for {n} vertices")
        self.n = n
        self.directed = directed
        self.labels = labels
        self._label_index = {lab: i for i, lab in enumerate(labels)}
        if len(self._label_index) != n:
            raise ContractError("vertex labels are not unique")
        adj: list[dict[int, float]] = [dict() for _ in range(n)]
        pred: list[dict[int, float]] | None = [dict() for _ in range(n)] if directed else None
        for (i, j), w in entries.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ContractError(f"entry ({i},{j}) out of range for n={n}")
            if w == 0.0:
                continue
            adj[i][j] = float(w)
            if directed:
                pred[j][i] = float(w)  # type: ignore[index]
            elif i != j:
                adj[j][i] = float(w)
        if not directed:
            for (i, j), w in entries.items():
                if entries.get((j, i), w) != w:
                    raise ContractError(f"undirected entries ({i},{j}) and ({j},{i}) disagree")
        self._adj = adj
        self._pred = pred

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple],
        directed: bool = False,
        labels: list[str] | None = None,
    ) -> "Graph":
        """Build from (u, v) or (u, v, w) tuples over internal indices."""
        entries: dict[tuple[int, int], float] = {}
        for e in edges:
            u, v = e[0], e[1]
            w = float(e[2]) if len(e) > 2 else 1.0
            entries[(u, v)] = w
        return cls(n, entries, directed=directed, labels=labels)

    # -- basic queries ------------------------------------------------

    def weight(self, i: int, j: int) -> float:
        return self._adj[i].get(j, 0.0)

    def neighbors(self, i: int) -> dict[int, float]:
        """Out-neighborhood of i as a {j: weight} mapping (do not mutate)."""
        return self._adj[i]

    def in_neighbors(self, i: int) -> dict[int, float]:
        return self._pred[i] if self.directed else self._adj[i]

    def entries(self) -> Iterator[tuple[int, int, float]]:
        """All stored (i, j, weight) entries; undirected yields both orders."""
        for i, nbrs in enumerate(self._adj):
            for j, w in nbrs.items():
                yield i, j, w

    @property
    def num_entries(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj)

    @property
    def num_edges(self) -> int:
        """Edge count: unordered pairs for undirected graphs, loops counted once."""
        if self.directed:
            return self.num_entries
        loops = sum(1 for i in range(self.n) if i in self._adj[i])
        return (self.num_entries - loops) // 2 + loops

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    def strength(self, i: int) -> float:
        """Weighted degree (row sum), self-loops excluded."""
        return sum(w for j, w in self._adj[i].items() if j != i)

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise ContractError(f"unknown vertex label {label!r}") from None

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i, j, w in self.entries():
            a[i, j] = w
        return a

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, m={self.num_edges}, {kind})"


# -- ingestion and serialization ---------------------------------------


def _iter_lines(source) -> Iterator[str]:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        yield from io.StringIO(source)
    elif hasattr(source, "read"):
        for line in source:
            yield line.decode("utf-8") if isinstance(line, bytes) else line
    else:
        yield from source


def load_edge_list(
    source,
    directed: bool = False,
    weighted: bool | None = None,
    comment_prefix: str = "#",
) -> Graph:
    """Parse whitespace-separated "u v" or "u v w" lines into a Graph.

    Labels are arbitrary tokens, assigned dense internal indices in order of
    first appearance. Duplicate edges collapse keeping the last weight;
    undirected input is symmetrized. ``weighted=None`` auto-detects a third
    column, ``weighted=False`` rejects one.
    """
    label_index: dict[str, int] = {}
    labels: list[str] = []
    entries: dict[tuple[int, int], float] = {}

    def intern(tok: str) -> int:
        idx = label_index.get(tok)
        if idx is None:
            idx = len(labels)
            label_index[tok] = idx
            labels.append(tok)
        return idx

    seen_any = False
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith(comment_prefix):
            continue
        seen_any = True
        fields = line.split()
        if len(fields) == 2:
            w = 1.0
        elif len(fields) == 3:
            if weighted is False:
                raise ParseError(f"line {lineno}: unexpected weight column")
            try:
                w = float(fields[2])
            except ValueError:
                raise ParseError(f"line {lineno}: non-numeric weight {fields[2]!r}") from None
        else:
            raise ParseError(f"line {lineno}: expected 'u v' or 'u v w', got {line!r}")
        u, v = intern(fields[0]), intern(fields[1])
        entries[(u, v)] = w
        if not directed and u != v:
            entries[(v, u)] = w
    if not seen_any:
        raise ParseError("empty input: no edges found")
    return Graph(len(labels), entries, directed=directed, labels=labels)


def to_edge_list_text(g: Graph) -> str:
    """Serialize with original labels; inverse of load_edge_list."""
    lines = []
    for i, j, w in g.entries():
        if not g.directed and j < i:
            continue
        tail = "" if w == 1.0 else f" {w!r}"
        lines.append(f"{g.labels[i]} {g.labels[j]}{tail}")
    return "\n".join(lines) + "\n"


def dump_json(g: Graph) -> str:
    edges = []
    for i, j, w in g.entries():
        if not g.directed and j < i:
            continue
        edges.append([g.labels[i], g.labels[j], w])
    return json.dumps(
        {"n": g.n, "directed": g.directed, "edges": edges}, sort_keys=True
    )


# -- structural utilities ----------------------------------------------


def induced_subgraph(g: Graph, verts: Iterable[int]) -> Graph:
    """Subgraph induced on ``verts``; new indices follow sorted old order.

    Original labels are preserved, which records the index remap.
    """
    vs = sorted(set(verts))
    for v in vs:
        if not 0 <= v < g.n:
            raise ContractError(f"vertex {v} out of range")
    new_of_old = {v: k for k, v in enumerate(vs)}
    entries: dict[tuple[int, int], float] = {}
    for v in vs:
        for j, w in g.neighbors(v).items():
            if j in new_of_old:
                entries[(new_of_old[v], new_of_old[j])] = w
    return Graph(
        len(vs), entries, directed=g.directed, labels=[g.labels[v] for v in vs]
    )


def connected_components(g: Graph) -> list[list[int]]:
    """Weakly connected components, each sorted, ordered by minimum vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            nbrs: Iterable[int] = g.neighbors(u)
            if g.directed:
                nbrs = list(g.neighbors(u)) + list(g.in_neighbors(u))
            for v in nbrs:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comp.sort()
        comps.append(comp)
    return comps


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest weakly connected component.

    Ties broken by the smallest minimum internal index; idempotent.
    """
    comps = connected_components(g)
    if not comps:
        return g
    best = max(comps, key=lambda c: (len(c), -c[0]))
    if len(best) == g.n:
        return g
    return induced_subgraph(g, best)
