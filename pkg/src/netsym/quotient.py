"""Characteristic maps, quotient networks and equitability checks.

The quotient collapses each partition cell to one vertex with averaged
connectivity b_kl = (1/n_k) * sum of weights from cell k into cell l. The
characteristic matrix S (vertex-by-cell membership) and the diagonal of
cell sizes are kept implicitly: S is never materialized densely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .decomposition import GeometricDecomposition
from .errors import ContractError
from .graph import Graph


@dataclass(frozen=True)
class CharacteristicMap:
    """Partition of 0..n-1 into cells, in canonical (min-member) order."""

    orbit_of: tuple[int, ...]  # vertex -> cell id
    orbit_sizes: tuple[int, ...]  # diag of the size matrix
    orbit_members: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.orbit_of)

    @property
    def m(self) -> int:
        return len(self.orbit_sizes)

    def sizes_array(self) -> np.ndarray:
        return np.asarray(self.orbit_sizes, dtype=float)

    def lift(self, w: np.ndarray) -> np.ndarray:
        """S @ w: repeat one value per cell over its members."""
        return np.asarray(w)[list(self.orbit_of)]

    def project_sum(self, v: np.ndarray) -> np.ndarray:
        """S^T @ v: per-cell sums."""
        out = np.zeros(self.m)
        np.add.at(out, list(self.orbit_of), np.asarray(v, dtype=float))
        return out


def characteristic_map(partition: Iterable[Iterable[int]], n: int) -> CharacteristicMap:
    """Validate a partition of 0..n-1 and build its characteristic map.

    Cells are put in canonical order (sorted by minimum member); overlaps or
    gaps raise a contract error.
    """
    cells = [sorted(c) for c in partition]
    for c in cells:
        if not c:
            raise ContractError("empty cell in partition")
    cells.sort(key=lambda c: c[0])
    orbit_of = [-1] * n
    for k, cell in enumerate(cells):
        for v in cell:
            if not 0 <= v < n:
                raise ContractError(f"vertex {v} out of range")
            if orbit_of[v] != -1:
                raise ContractError(f"vertex {v} appears in two cells")
            orbit_of[v] = k
    if any(o == -1 for o in orbit_of):
        missing = orbit_of.index(-1)
        raise ContractError(f"vertex {missing} not covered by the partition")
    return CharacteristicMap(
        tuple(orbit_of),
        tuple(len(c) for c in cells),
        tuple(tuple(c) for c in cells),
    )


def orbit_characteristic_map(d: GeometricDecomposition, n: int) -> CharacteristicMap:
    """Characteristic map of the full orbit partition (fixed points included)."""
    return characteristic_map(d.orbit_cells(n), n)


def basic_characteristic_map(d: GeometricDecomposition, n: int) -> CharacteristicMap:
    """Characteristic map of the basic-quotient partition."""
    return characteristic_map(d.basic_cells(n), n)


@dataclass
class QuotientNetwork:
    """Sparse m x m quotient matrix B together with its partition map."""

    rows: list[dict[int, float]]  # rows[k][l] = b_kl, zero entries absent
    cmap: CharacteristicMap
    symmetric_variant: bool = False

    @property
    def m(self) -> int:
        return len(self.rows)

    def entry(self, k: int, l: int) -> float:
        return self.rows[k].get(l, 0.0)

    def entries(self) -> Iterator[tuple[int, int, float]]:
        for k, row in enumerate(self.rows):
            for l, w in row.items():
                yield k, l, w

    def dense(self) -> np.ndarray:
        b = np.zeros((self.m, self.m))
        for k, l, w in self.entries():
            b[k, l] = w
        return b

    def out_degrees(self) -> np.ndarray:
        """Row sums of B."""
        return np.array([sum(row.values()) for row in self.rows])

    def num_edges(self) -> int:
        """Quotient edge count: nonzero upper-triangle entries plus loops.

        Directionality of B is ignored on purpose; this matches the edge
        count of the underlying undirected quotient with loops kept.
        """
        seen = set()
        for k, l, _ in self.entries():
            seen.add((k, l) if k <= l else (l, k))
        return len(seen)


def _accumulate(g: Graph, cmap: CharacteristicMap, scale_left: np.ndarray, scale_right: np.ndarray) -> list[dict[int, float]]:
    """Single sparse pass: rows[k][l] = scale_left[k]*scale_right[l]*sum a_ij."""
    if cmap.n != g.n:
        raise ContractError("characteristic map does not cover the graph")
    orbit_of = cmap.orbit_of
    rows: list[dict[int, float]] = [dict() for _ in range(cmap.m)]
    for i, j, w in g.entries():
        k, l = orbit_of[i], orbit_of[j]
        rows[k][l] = rows[k].get(l, 0.0) + w
    for k, row in enumerate(rows):
        for l in row:
            row[l] *= scale_left[k] * scale_right[l]
    return rows


def quotient(g: Graph, cmap: CharacteristicMap) -> QuotientNetwork:
    """Left quotient: b_kl = (1/n_k) * sum over i in V_k, j in V_l of a_ij."""
    sizes = cmap.sizes_array()
    rows = _accumulate(g, cmap, 1.0 / sizes, np.ones(cmap.m))
    return QuotientNetwork(rows, cmap, symmetric_variant=False)


def symmetric_quotient(g: Graph, cmap: CharacteristicMap) -> QuotientNetwork:
    """Symmetric quotient: both sides scaled by the inverse square-root sizes.

    Spectrally equivalent to the left quotient; exactly symmetric for
    undirected input.
    """
    inv_sqrt = 1.0 / np.sqrt(cmap.sizes_array())
    rows = _accumulate(g, cmap, inv_sqrt, inv_sqrt)
    return QuotientNetwork(rows, cmap, symmetric_variant=True)


def basic_quotient(g: Graph, d: GeometricDecomposition) -> QuotientNetwork:
    """Quotient over basic-motif orbits; complex motifs and fixed points
    stay as singletons."""
    return quotient(g, basic_characteristic_map(d, g.n))


def verify_equitable(g: Graph, cmap: CharacteristicMap, tol: float = 1e-9) -> bool:
    """True iff max |[A S - S B]_ik| <= tol, with B the left quotient."""
    q = quotient(g, cmap)
    orbit_of = cmap.orbit_of
    # [A S]_ik = sum of weights from i into cell k, computed sparsely.
    a_s: list[dict[int, float]] = [dict() for _ in range(g.n)]
    for i, j, w in g.entries():
        k = orbit_of[j]
        a_s[i][k] = a_s[i].get(k, 0.0) + w
    for i in range(g.n):
        row_b = q.rows[orbit_of[i]]
        for k in set(a_s[i]) | set(row_b):
            if abs(a_s[i].get(k, 0.0) - row_b.get(k, 0.0)) > tol:
                return False
    return True


def skeleton(q: QuotientNetwork) -> Graph:
    """Unweighted undirected graph on cells: edge (k,l) iff b_kl != 0, k != l.

    Loops are dropped; used for quotient shortest-path recovery.
    """
    edges = set()
    for k, l, w in q.entries():
        if k != l and w != 0.0:
            edges.add((min(k, l), max(k, l)))
    return Graph.from_edges(q.m, sorted(edges), directed=False)
