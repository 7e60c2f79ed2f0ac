"""Symmetry-aware eigendecomposition and closed-form redundant spectra.

A symmetric matrix with symmetries has an eigenbasis split into quotient
eigenpairs (eigenvectors constant on orbits, lifted from the symmetric
quotient) and redundant eigenpairs (localised on one motif, summing to zero
on each of its orbits). The redundant part is assembled motif by motif: for
each eigenvalue group of the motif submatrix, the null space of S_sm^T U
picks out the combinations orthogonal to the orbit partition.

Closed forms are provided for the redundant spectra of basic motifs with
one orbit (a uniform graph) and two orbits (a uniform join).
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .decomposition import SymmetricMotif
from .errors import ContractError, InternalError
from .graph import Graph
from .quotient import CharacteristicMap

TAG_QUOTIENT = "QUOTIENT"
TAG_REDUNDANT = "REDUNDANT"


def eig_symmetric(m: np.ndarray, sym_tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Full orthonormal eigendecomposition of a symmetric matrix.

    Values ascending; raises if the input is asymmetric beyond
    ``sym_tol * max(1, max|M|)``.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError("matrix must be square")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    if m.size and float(np.max(np.abs(m - m.T))) > sym_tol * scale:
        raise ContractError("matrix is not symmetric within tolerance")
    values, vectors = np.linalg.eigh((m + m.T) / 2.0)
    return values, vectors


@dataclass
class SymEigenDecomposition:
    """Eigenpairs of a symmetric matrix, tagged by their symmetry origin.

    Column j of ``vectors`` pairs with ``values[j]``; ``tags[j]`` is
    QUOTIENT or REDUNDANT and ``motif_ids[j]`` points into the motif list
    (-1 for quotient pairs).
    """

    values: np.ndarray
    vectors: np.ndarray
    tags: list[str]
    motif_ids: list[int]

    @property
    def n(self) -> int:
        return len(self.values)

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T

    def apply_function(self, f) -> np.ndarray:
        """U f(D) U^T for a scalar function f applied to the eigenvalues."""
        return (self.vectors * f(self.values)) @ self.vectors.T

    def grouped_values(self, round_digits: int = 8) -> list[tuple[float, int]]:
        counts = Counter(round(float(v), round_digits) for v in self.values)
        return sorted(counts.items())

    def redundant_values(self) -> np.ndarray:
        return self.values[[t == TAG_REDUNDANT for t in self.tags]]

    def quotient_values(self) -> np.ndarray:
        return self.values[[t == TAG_QUOTIENT for t in self.tags]]


def _group_slices(values: np.ndarray, rtol: float) -> list[slice]:
    """Contiguous eigenvalue groups by gap clustering on the sorted list."""
    if len(values) == 0:
        return []
    thresh = rtol * max(1.0, float(np.max(np.abs(values))))
    slices = []
    start = 0
    for i in range(1, len(values)):
        if values[i] - values[i - 1] > thresh:
            slices.append(slice(start, i))
            start = i
    slices.append(slice(start, len(values)))
    return slices


def _motif_redundant_pairs(
    a: np.ndarray,
    motif: SymmetricMotif,
    group_rtol: float,
    null_rtol: float,
) -> tuple[list[float], list[np.ndarray]]:
    """Redundant eigenpairs of one motif, localised to its vertex positions."""
    verts = motif.vertices
    a_sm = a[np.ix_(verts, verts)]
    k = len(motif.orbits)
    pos = motif.positions()
    orbit_of = np.empty(len(verts), dtype=int)
    for r, orbit in enumerate(motif.orbits):
        for v in orbit:
            orbit_of[pos[v]] = r
    values, vectors = np.linalg.eigh((a_sm + a_sm.T) / 2.0)
    out_vals: list[float] = []
    out_vecs: list[np.ndarray] = []
    for sl in _group_slices(values, group_rtol):
        u_lambda = vectors[:, sl]
        # Rows of c are per-orbit sums of the eigenvector entries.
        c = np.zeros((k, u_lambda.shape[1]))
        np.add.at(c, orbit_of, u_lambda)
        _, s, vt = np.linalg.svd(c, full_matrices=True)
        # Columns of u_lambda are unit vectors, so c has natural scale <= 1
        # per column; the cutoff must not collapse when c is numerically zero.
        cutoff = null_rtol * max(1.0, s[0] if len(s) else 0.0)
        rank = int(np.sum(s > cutoff))
        d = u_lambda.shape[1] - rank
        if d <= 0:
            continue
        z = vt[rank:].T
        red = u_lambda @ z
        lam = float(np.mean(values[sl]))
        for col in range(d):
            out_vals.append(lam)
            out_vecs.append(red[:, col])
    return out_vals, out_vecs


def symmetry_eig(
    a,
    cmap: CharacteristicMap,
    motifs: list[SymmetricMotif],
    group_rtol: float = 1e-8,
    null_rtol: float = 1e-10,
    sym_tol: float = 1e-9,
    threads: int = 1,
) -> SymEigenDecomposition:
    """Eigendecomposition via the symmetric quotient plus per-motif parts.

    Quotient eigenpairs are lifted by S scaled with the inverse square-root
    orbit sizes (orthonormal by construction, then re-normalized); redundant
    eigenpairs come from the motif submatrices. Emitting anything other than
    exactly n eigenpairs raises an internal error.
    """
    a = a.to_dense() if isinstance(a, Graph) else np.asarray(a, dtype=float)
    n = a.shape[0]
    if cmap.n != n:
        raise ContractError("characteristic map does not cover the matrix")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
    if a.size and float(np.max(np.abs(a - a.T))) > sym_tol * scale:
        raise ContractError("matrix is not symmetric within tolerance")

    idx = np.asarray(cmap.orbit_of)
    inv_sqrt = 1.0 / np.sqrt(cmap.sizes_array())
    tmp = np.zeros((cmap.m, n))
    np.add.at(tmp, idx, a)
    bt = np.zeros((cmap.m, cmap.m))
    np.add.at(bt, idx, tmp.T)
    b_sym = bt.T * np.outer(inv_sqrt, inv_sqrt)
    q_values, u_q = np.linalg.eigh((b_sym + b_sym.T) / 2.0)
    lifted = (u_q * inv_sqrt[:, None])[idx, :]
    lifted /= np.linalg.norm(lifted, axis=0)

    if threads > 1 and len(motifs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(lambda m: _motif_redundant_pairs(a, m, group_rtol, null_rtol), motifs)
            )
    else:
        parts = [_motif_redundant_pairs(a, m, group_rtol, null_rtol) for m in motifs]

    red_count = sum(len(vals) for vals, _ in parts)
    if cmap.m + red_count != n:
        raise InternalError(
            f"emitted {cmap.m} quotient + {red_count} redundant eigenpairs for n={n}; "
            "eigenvalue grouping tolerance is miscalibrated"
        )

    vectors = np.zeros((n, n))
    vectors[:, : cmap.m] = lifted
    values = np.concatenate([q_values, np.zeros(red_count)])
    tags = [TAG_QUOTIENT] * cmap.m + [TAG_REDUNDANT] * red_count
    motif_ids = [-1] * cmap.m
    col = cmap.m
    for mid, (vals, vecs) in enumerate(parts):
        verts = motifs[mid].vertices
        for lam, vec in zip(vals, vecs):
            values[col] = lam
            vectors[verts, col] = vec / np.linalg.norm(vec)
            motif_ids.append(mid)
            col += 1
    return SymEigenDecomposition(values, vectors, tags, motif_ids)


# -- closed-form redundant spectra of small basic motifs ------------------


@dataclass
class BsmSpectrum:
    """Redundant eigenvalues of a 1- or 2-orbit basic motif.

    ``eigenvalues`` holds (value, multiplicity) pairs; ``vector_basis``
    materialises the generating difference-vector patterns.
    """

    orbit_size: int
    orbits: int
    eigenvalues: list[tuple[float, int]]
    kappas: tuple[float, float] | None = None

    def vector_basis(self) -> list[np.ndarray]:
        """One matrix per eigenvalue whose columns are its eigenvectors.

        Columns follow the difference patterns e_i (entry 1 at position 0,
        -1 at position i); for two orbits the pattern is (kappa e_i | e_i).
        """
        n = self.orbit_size
        basis = []
        diffs = np.zeros((n, n - 1))
        diffs[0, :] = 1.0
        for i in range(1, n):
            diffs[i, i - 1] = -1.0
        if self.orbits == 1:
            basis.append(diffs)
        else:
            assert self.kappas is not None
            for kappa in self.kappas:
                basis.append(np.vstack([kappa * diffs, diffs]))
        return basis


def redundant_eigs_1orbit(n: int, alpha: float, beta: float) -> BsmSpectrum:
    """Uniform-graph orbit: eigenvalue beta - alpha with multiplicity n-1."""
    if n < 2:
        raise ContractError("an orbit needs at least two vertices")
    return BsmSpectrum(n, 1, [(beta - alpha, n - 1)])


def redundant_eigs_2orbit(
    n: int,
    alpha1: float,
    beta1: float,
    alpha2: float,
    beta2: float,
    gamma: float,
    delta: float,
) -> BsmSpectrum:
    """Uniform join of two orbits: two redundant eigenvalues, each n-1 fold.

    With a = alpha1-beta1, b = alpha2-beta2, c = gamma-delta, the kappas
    solve c k^2 + (b-a) k - c = 0 and the eigenvalues are -b - c*kappa with
    eigenvectors (kappa e_i | e_i). c must be nonzero: a zero c means the
    orbits are independent, i.e. two 1-orbit motifs, not one 2-orbit motif.
    """
    if n < 2:
        raise ContractError("an orbit needs at least two vertices")
    a = alpha1 - beta1
    b = alpha2 - beta2
    c = gamma - delta
    if c == 0.0:
        raise ContractError("gamma == delta: not a valid 2-orbit motif")
    disc = math.sqrt((a - b) ** 2 + 4.0 * c * c)
    kappa1 = ((a - b) + disc) / (2.0 * c)
    kappa2 = ((a - b) - disc) / (2.0 * c)
    lam1 = -b - c * kappa1
    lam2 = -b - c * kappa2
    return BsmSpectrum(n, 2, [(lam1, n - 1), (lam2, n - 1)], kappas=(kappa1, kappa2))


GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0

#: Redundant eigenvalues possible for unweighted loop-free 2-orbit motifs.
UNWEIGHTED_2ORBIT_SPECTRUM = (
    -2.0,
    -GOLDEN_RATIO,
    -1.0,
    0.0,
    GOLDEN_RATIO - 1.0,
    1.0,
)


def laplacian_redundant_1orbit(m: int, d: int, complete: bool) -> int:
    """Redundant Laplacian eigenvalue of a 1-orbit basic motif.

    ``d`` is the external degree of the orbit; the eigenvalue is d for an
    empty orbit and d + m for a complete one, always a positive integer,
    with multiplicity m - 1.
    """
    if m < 2:
        raise ContractError("an orbit needs at least two vertices")
    if d < 0:
        raise ContractError("external degree must be non-negative")
    return d + m if complete else d


def discrete_spectrum_report(
    values_full,
    values_quotient,
    round_digits: int = 8,
) -> dict:
    """High-multiplicity comparison of a spectrum against its quotient's.

    Multiplicities are counted after rounding to ``round_digits`` decimals;
    ``fraction_explained`` is the repeated-multiplicity mass of the quotient
    list over that of the full list (1.0 when the full list has no repeats).
    The histograms use bins of width 0.1 and are normalized per list.
    """
    full = [round(float(v), round_digits) for v in values_full]
    quot = [round(float(v), round_digits) for v in values_quotient]
    full_mass = sum(c for c in Counter(full).values() if c > 1)
    quot_mass = sum(c for c in Counter(quot).values() if c > 1)
    fraction = quot_mass / full_mass if full_mass else 1.0

    lo = math.floor(min(full + quot, default=0.0) * 10) / 10
    hi = math.ceil(max(full + quot, default=0.0) * 10) / 10
    nbins = max(1, int(round((hi - lo) * 10)))
    edges = [lo + 0.1 * i for i in range(nbins + 1)]

    def density(vals: list[float]) -> list[float]:
        counts = [0] * nbins
        for v in vals:
            b = min(nbins - 1, max(0, int((v - lo) * 10)))
            counts[b] += 1
        total = len(vals) if vals else 1
        return [c / total for c in counts]

    return {
        "fraction_explained": fraction,
        "full_repeated_mass": full_mass,
        "quotient_repeated_mass": quot_mass,
        "bin_edges": edges,
        "full_density": density(full),
        "quotient_density": density(quot),
    }
