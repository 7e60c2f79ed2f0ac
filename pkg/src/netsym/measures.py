"""Quotient-accelerated structural network measures.

Pairwise measures (Laplacian, communicability, shortest-path distance,
resistance distance) and vertex measures (closeness, degree, eigenvector
centrality, eccentricity), all computed through the orbit quotient and the
geometric decomposition where the structure allows it. Every vertex measure
produced here is constant on orbits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .decomposition import GeometricDecomposition, SymmetricMotif
from .errors import ContractError
from .graph import Graph, connected_components
from .quotient import (
    CharacteristicMap,
    QuotientNetwork,
    orbit_characteristic_map,
    quotient,
    skeleton,
)
from .spectral import SymEigenDecomposition, symmetry_eig


class MeasureKind(Enum):
    FULL = "full"
    SPARSE = "sparse"


@dataclass
class MeasureNetwork:
    """Network representation of a pairwise measure F(i, j)."""

    matrix: np.ndarray | Graph
    kind: MeasureKind
    origin: Graph

    def dense(self) -> np.ndarray:
        return self.matrix.to_dense() if isinstance(self.matrix, Graph) else self.matrix


def _require_undirected(g: Graph) -> None:
    if g.directed:
        raise ContractError("operation requires an undirected graph")


def _require_connected(g: Graph) -> None:
    if len(connected_components(g)) != 1:
        raise ContractError("operation requires a connected graph")


def _symmetry(g: Graph, d: GeometricDecomposition | None):
    if d is None:
        from .automorphism import find_generators
        from .decomposition import geometric_decomposition

        d = geometric_decomposition(find_generators(g))
    return d, orbit_characteristic_map(d, g.n)


# -- Laplacian -------------------------------------------------------------


def laplacian(g: Graph) -> MeasureNetwork:
    """L = D - A as a sparse measure network: degree diagonal, -a_ij off it."""
    _require_undirected(g)
    entries: dict[tuple[int, int], float] = {}
    for i in range(g.n):
        deg = g.strength(i)
        if deg != 0.0:
            entries[(i, i)] = deg
    for i, j, w in g.entries():
        if i != j:
            entries[(i, j)] = -w
    lap = Graph(g.n, entries, directed=False, labels=list(g.labels))
    return MeasureNetwork(lap, MeasureKind.SPARSE, g)


def motif_laplacian(motif: SymmetricMotif, g: Graph) -> np.ndarray:
    """Motif-local Laplacian plus the per-orbit external-degree diagonal.

    Equals the corresponding submatrix of laplacian(g): the external degree
    of each orbit re-enters through the diagonal shift.
    """
    _require_undirected(g)
    verts = motif.vertices
    inside = set(verts)
    pos = motif.positions()
    k = len(verts)
    out = np.zeros((k, k))
    for a, v in enumerate(verts):
        internal = 0.0
        for j, w in g.neighbors(v).items():
            if j == v:
                continue
            if j in inside:
                out[a, pos[j]] = -w
                internal += w
        external = g.strength(v) - internal
        out[a, a] = internal + external
    return out


# -- communicability -------------------------------------------------------

_FUNCTIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "exp": np.exp,
}


def _resolve_function(f, sym: SymEigenDecomposition):
    """Turn a function spec into a scalar callable on eigenvalues.

    Accepts "exp", ("poly", coefficients ascending), ("resolvent", t) or any
    callable. The resolvent (I - tA)^-1 requires |t| * spectral_radius < 1.
    """
    if callable(f):
        return f
    if f == "exp":
        return np.exp
    if isinstance(f, tuple) and len(f) == 2 and f[0] == "poly":
        coeffs = list(f[1])
        return lambda x: sum(c * x**k for k, c in enumerate(coeffs))
    if isinstance(f, tuple) and len(f) == 2 and f[0] == "resolvent":
        t = float(f[1])
        rho = float(np.max(np.abs(sym.values)))
        if abs(t) * rho >= 1.0:
            raise ContractError(
                f"resolvent parameter t={t} outside the convergence region (rho={rho:.6g})"
            )
        return lambda x: 1.0 / (1.0 - t * x)
    raise ContractError(f"unknown analytic function spec: {f!r}")


def communicability(
    g: Graph,
    f="exp",
    decomposition: GeometricDecomposition | None = None,
) -> MeasureNetwork:
    """f(A) computed spectrally through the symmetry eigendecomposition.

    The path is exclusively spectral (A = U D U^T gives f(A) = U f(D) U^T)
    so the quotient/motif savings apply end to end.
    """
    _require_undirected(g)
    d, cmap = _symmetry(g, decomposition)
    sym = symmetry_eig(g, cmap, d.motifs)
    func = _resolve_function(f, sym)
    fa = sym.apply_function(func)
    fa = (fa + fa.T) / 2.0
    return MeasureNetwork(fa, MeasureKind.FULL, g)


def quotient_commutation_check(
    g: Graph,
    cmap: CharacteristicMap,
    f="exp",
    tol: float = 1e-8,
) -> bool:
    """True iff f(Q(A)) equals Q(f(A)) entrywise within tol.

    Both sides are evaluated independently: the left through the symmetric
    quotient's eigendecomposition (Q(A) is similar to it via the size
    scaling), the right by quotienting f(A) of the full matrix.
    """
    _require_undirected(g)
    a = g.to_dense()
    idx = np.asarray(cmap.orbit_of)
    sizes = cmap.sizes_array()
    inv_sqrt = 1.0 / np.sqrt(sizes)

    tmp = np.zeros((cmap.m, g.n))
    np.add.at(tmp, idx, a)
    bt = np.zeros((cmap.m, cmap.m))
    np.add.at(bt, idx, tmp.T)
    b_raw = bt.T  # S^T A S
    b_sym = b_raw * np.outer(inv_sqrt, inv_sqrt)
    w, u = np.linalg.eigh((b_sym + b_sym.T) / 2.0)

    values, vectors = np.linalg.eigh((a + a.T) / 2.0)
    func = _resolve_function(
        f, SymEigenDecomposition(values, vectors, [], [])
    )
    # f(Q(A)) via the similarity Q(A) = Lambda^(-1/2) B_sym Lambda^(1/2).
    f_bsym = (u * func(w)) @ u.T
    f_quot = f_bsym * np.outer(inv_sqrt, np.sqrt(sizes))
    # Q(f(A)) from the dense functional calculus on A.
    fa = (vectors * func(values)) @ vectors.T
    tmp2 = np.zeros((cmap.m, g.n))
    np.add.at(tmp2, idx, fa)
    bt2 = np.zeros((cmap.m, cmap.m))
    np.add.at(bt2, idx, tmp2.T)
    quot_f = bt2.T / sizes[:, None]
    return bool(np.max(np.abs(f_quot - quot_f)) <= tol)


# -- shortest paths ---------------------------------------------------------


def _bfs(g: Graph, source: int) -> np.ndarray:
    dist = np.full(g.n, -1, dtype=int)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in g.neighbors(u):
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    return dist


@dataclass
class DistanceTable:
    """All-pairs distances split into quotient and intra-motif parts.

    Inter-motif distances are read off the skeleton quotient per orbit pair;
    distances within one motif come from exact per-vertex searches in the
    full graph.
    """

    inter: np.ndarray  # orbit x orbit skeleton distances
    intra: dict[int, np.ndarray]  # motif id -> local distance block
    orbit_of: tuple[int, ...]
    motif_of: list[int]
    motif_pos: list[dict[int, int]]

    def distance(self, u: int, v: int) -> int:
        if u == v:
            return 0
        mu, mv = self.motif_of[u], self.motif_of[v]
        if mu >= 0 and mu == mv:
            block = self.intra[mu]
            pos = self.motif_pos[mu]
            return int(block[pos[u], pos[v]])
        return int(self.inter[self.orbit_of[u], self.orbit_of[v]])

    def dense(self) -> np.ndarray:
        n = len(self.orbit_of)
        out = np.empty((n, n), dtype=int)
        for u in range(n):
            for v in range(n):
                out[u, v] = self.distance(u, v)
        return out


def shortest_paths_quotient(
    g: Graph,
    d: GeometricDecomposition,
    threads: int = 1,
) -> DistanceTable:
    """Exact all-pairs distance table using the skeleton quotient.

    Valid for connected, unweighted, undirected graphs: distances between
    vertices of different motifs (fixed points included) equal skeleton
    quotient distances between their orbits; same-motif pairs are resolved
    by breadth-first search in the full graph from each motif vertex.
    """
    _require_undirected(g)
    _require_connected(g)
    cmap = orbit_characteristic_map(d, g.n)
    skel = skeleton(quotient(g, cmap))
    inter = np.vstack([_bfs(skel, k) for k in range(skel.n)])

    motif_of = d.motif_of(g.n)
    motif_pos = [m.positions() for m in d.motifs]

    def intra_block(motif: SymmetricMotif) -> np.ndarray:
        verts = motif.vertices
        block = np.empty((len(verts), len(verts)), dtype=int)
        for a, v in enumerate(verts):
            dist = _bfs(g, v)
            block[a] = dist[verts]
        return block

    if threads > 1 and len(d.motifs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(intra_block, d.motifs))
    else:
        blocks = [intra_block(m) for m in d.motifs]
    intra = dict(enumerate(blocks))
    return DistanceTable(inter, intra, cmap.orbit_of, motif_of, motif_pos)


def closeness_quotient(
    g: Graph,
    d: GeometricDecomposition,
    mode: str = "exact",
    table: DistanceTable | None = None,
) -> np.ndarray:
    """Per-vertex closeness cc(i) = (1/n) sum_j d(i, j), constant on orbits.

    Exact mode splits the sum into quotient distances to orbits outside the
    vertex's motif plus exact intra-motif distances; approximate mode keeps
    only the quotient summand (using quotient distances even for same-motif
    orbits).
    """
    if mode not in ("exact", "approximate"):
        raise ContractError(f"unknown closeness mode {mode!r}")
    if table is None:
        table = shortest_paths_quotient(g, d)
    cmap = orbit_characteristic_map(d, g.n)
    sizes = cmap.sizes_array()
    motif_of = d.motif_of(g.n)
    out = np.zeros(g.n)
    for k, members in enumerate(cmap.orbit_members):
        rep = members[0]
        mid = motif_of[rep]
        if mode == "approximate":
            total = float(np.dot(sizes, table.inter[k]))
        else:
            if mid < 0:
                total = float(np.dot(sizes, table.inter[k]))
            else:
                motif = d.motifs[mid]
                outside = np.ones(cmap.m, dtype=bool)
                for orbit in motif.orbits:
                    outside[cmap.orbit_of[orbit[0]]] = False
                total = float(np.dot(sizes[outside], table.inter[k][outside]))
                pos = table.motif_pos[mid]
                total += float(np.sum(table.intra[mid][pos[rep]]))
        out[list(members)] = total / g.n
    return out


def eccentricity_quotient(
    g: Graph,
    d: GeometricDecomposition,
    table: DistanceTable | None = None,
) -> tuple[np.ndarray, int, int]:
    """Per-vertex eccentricity plus (radius, diameter), via the exact table."""
    if table is None:
        table = shortest_paths_quotient(g, d)
    cmap = orbit_characteristic_map(d, g.n)
    motif_of = d.motif_of(g.n)
    ecc = np.zeros(g.n, dtype=int)
    for k, members in enumerate(cmap.orbit_members):
        rep = members[0]
        mid = motif_of[rep]
        if mid < 0:
            value = int(np.max(table.inter[k]))
        else:
            motif = d.motifs[mid]
            outside = np.ones(cmap.m, dtype=bool)
            for orbit in motif.orbits:
                outside[cmap.orbit_of[orbit[0]]] = False
            inter_max = int(np.max(table.inter[k][outside])) if outside.any() else 0
            pos = table.motif_pos[mid]
            intra_max = int(np.max(table.intra[mid][pos[rep]]))
            value = max(inter_max, intra_max)
        ecc[list(members)] = value
    return ecc, int(ecc.min()), int(ecc.max())


# -- vertex measures ---------------------------------------------------------


def degree_quotient(q: QuotientNetwork) -> np.ndarray:
    """Per-orbit degree as the quotient's out-degree (row sums of B).

    For an orbit partition of an undirected graph this equals the degree of
    every member vertex.
    """
    return q.out_degrees()


def eigenvector_centrality(
    g: Graph,
    cmap: CharacteristicMap,
) -> np.ndarray:
    """Perron-Frobenius eigenvector of A, computed in the symmetric quotient.

    The largest eigenvalue is simple for a connected graph, hence never
    redundant: its quotient eigenvector lifts by R = S Lambda^(-1/2). Unit
    2-norm, entrywise positive, constant on orbits.
    """
    _require_undirected(g)
    _require_connected(g)
    if any(w < 0 for _, _, w in g.entries()):
        raise ContractError("eigenvector centrality requires non-negative weights")
    idx = np.asarray(cmap.orbit_of)
    inv_sqrt = 1.0 / np.sqrt(cmap.sizes_array())
    b = np.zeros((cmap.m, cmap.m))
    for i, j, w in g.entries():
        b[cmap.orbit_of[i], cmap.orbit_of[j]] += w
    b_sym = b * np.outer(inv_sqrt, inv_sqrt)
    values, vectors = np.linalg.eigh((b_sym + b_sym.T) / 2.0)
    w_top = vectors[:, -1]
    v = (w_top * inv_sqrt)[idx]
    v /= np.linalg.norm(v)
    if v.sum() < 0:
        v = -v
    return v


def resistance_distance(
    g: Graph,
    decomposition: GeometricDecomposition | None = None,
) -> MeasureNetwork:
    """Resistance metric r(i,j) = l+_ii + l+_jj - 2 l+_ij from the Laplacian
    pseudoinverse, built through the symmetry eigendecomposition of L."""
    _require_undirected(g)
    _require_connected(g)
    d, cmap = _symmetry(g, decomposition)
    lap = laplacian(g).dense()
    sym = symmetry_eig(lap, cmap, d.motifs)
    values = sym.values
    cutoff = 1e-12 * max(1.0, float(np.max(np.abs(values))))
    inv = np.where(np.abs(values) > cutoff, 1.0 / np.where(values == 0, 1.0, values), 0.0)
    lplus = (sym.vectors * inv) @ sym.vectors.T
    diag = np.diag(lplus)
    r = diag[:, None] + diag[None, :] - 2.0 * lplus
    np.fill_diagonal(r, 0.0)
    r = (r + r.T) / 2.0
    return MeasureNetwork(r, MeasureKind.FULL, g)


def vertex_compress(
    v,
    cmap: CharacteristicMap,
    tol: float = 1e-9,
) -> np.ndarray:
    """One value per orbit for an orbit-constant vertex measure.

    Raises naming the first violating orbit when v is not constant on
    orbits within tol; the round trip with vertex_decompress is the
    identity for orbit-constant input.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (cmap.n,):
        raise ContractError("vector length disagrees with the map")
    out = np.empty(cmap.m)
    for k, members in enumerate(cmap.orbit_members):
        vals = v[list(members)]
        if np.max(vals) - np.min(vals) > tol:
            raise ContractError(
                f"measure is not constant on orbit {k} (members {list(members)}): "
                f"spread {np.max(vals) - np.min(vals):.3g} > tol {tol:.3g}"
            )
        out[k] = float(np.mean(vals))
    return out


def vertex_decompress(w, cmap: CharacteristicMap) -> np.ndarray:
    """Replicate per-orbit values over orbit members (v = S w)."""
    w = np.asarray(w, dtype=float)
    if w.shape != (cmap.m,):
        raise ContractError("vector length disagrees with the map")
    return cmap.lift(w)
