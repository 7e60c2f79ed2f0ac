"""Average and lossless symmetry compression of measure matrices.

Average compression stores B = S^T A S, from which external entries (pairs
of vertices in different motifs) are recovered exactly and internal entries
as orbit-pair means. Lossless compression additionally annotates the basic
quotient: each orbit of a 1- or 2-orbit basic motif is a uniform block
determined by two numbers (diagonal beta, recovered alpha) and each orbit
pair by (delta, gamma) plus the alignment permutation; every other motif is
stored as a verbatim raw block.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .decomposition import GeometricDecomposition, SymmetricMotif
from .errors import ContractError, InternalError, ParseError
from .graph import Graph
from .quotient import CharacteristicMap, characteristic_map, orbit_characteristic_map, quotient


def _accessor(a):
    if isinstance(a, Graph):
        return a.weight, a.n
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ContractError("measure matrix must be square")
    return (lambda i, j: arr[i, j]), arr.shape[0]


def average_compress(a, cmap: CharacteristicMap) -> np.ndarray:
    """B = S^T A S (no size normalization): per-cell-pair weight sums."""
    if isinstance(a, Graph):
        if a.n != cmap.n:
            raise ContractError("characteristic map does not cover the matrix")
        b = np.zeros((cmap.m, cmap.m))
        orbit_of = cmap.orbit_of
        for i, j, w in a.entries():
            b[orbit_of[i], orbit_of[j]] += w
        return b
    arr = np.asarray(a, dtype=float)
    if arr.shape != (cmap.n, cmap.n):
        raise ContractError("characteristic map does not cover the matrix")
    idx = np.asarray(cmap.orbit_of)
    tmp = np.zeros((cmap.m, cmap.n))
    np.add.at(tmp, idx, arr)
    b = np.zeros((cmap.m, cmap.m))
    np.add.at(b, idx, tmp.T)
    return b.T


def average_decompress(b: np.ndarray, cmap: CharacteristicMap) -> np.ndarray:
    """A_avg with entries b_kl / (n_k n_l): exact for external pairs, the
    orbit-pair mean for internal pairs."""
    b = np.asarray(b, dtype=float)
    if b.shape != (cmap.m, cmap.m):
        raise ContractError("quotient matrix shape disagrees with the map")
    sizes = cmap.sizes_array()
    means = b / np.outer(sizes, sizes)
    idx = np.asarray(cmap.orbit_of)
    return means[np.ix_(idx, idx)]


@dataclass
class PairAnnotation:
    orbit1: int  # cell id in the basic map
    orbit2: int
    delta: float
    perm: tuple[int, ...]  # perm[i] = vertex of orbit2 matched to orbit1's i-th member


@dataclass
class RawBlock:
    vertices: tuple[int, ...]  # sorted
    values: np.ndarray


@dataclass
class Annotation:
    orbit_beta: dict[int, float] = field(default_factory=dict)
    pairs: list[PairAnnotation] = field(default_factory=list)
    raw_blocks: list[RawBlock] = field(default_factory=list)


@dataclass
class CompressedMeasure:
    b: np.ndarray  # S^T A S over the basic quotient, m x m
    cmap: CharacteristicMap
    annotation: Annotation


def _find_alignment(av, o1: list[int], o2: list[int], tol: float) -> tuple[float, list[int]]:
    """Find delta and the alignment permutation with A(k, perm(k)) = delta.

    The uniform-join structure guarantees each row of the cross block holds
    delta once and gamma n-1 times; candidates are tried in the canonical
    order of the second orbit, so a degenerate block (gamma == delta)
    resolves to the identity pairing.
    """
    n = len(o1)
    row = [av(o1[0], w) for w in o2]
    if max(row) - min(row) <= tol:
        return row[0], list(o2)
    tried: list[float] = []
    for w0 in range(n):
        delta = row[w0]
        if any(abs(delta - t) <= tol for t in tried):
            continue
        tried.append(delta)
        perm: list[int] = []
        used: set[int] = set()
        ok = True
        off_values: list[float] = []
        for k in o1:
            matches = [w for w in o2 if abs(av(k, w) - delta) <= tol and w not in used]
            if len(matches) != 1:
                ok = False
                break
            perm.append(matches[0])
            used.add(matches[0])
            off_values.extend(av(k, w) for w in o2 if w != matches[0])
        if not ok:
            continue
        if off_values and max(off_values) - min(off_values) > tol:
            continue
        return delta, perm
    raise InternalError(
        "no uniform-join alignment found; the motif is not basic as claimed"
    )


def lossless_compress(
    a,
    cmap_basic: CharacteristicMap,
    motifs: list[SymmetricMotif],
    tol: float | None = None,
) -> CompressedMeasure:
    """Annotated basic-quotient compression; inverse of lossless_decompress.

    ``tol`` is the value-matching tolerance for the alignment search;
    defaults to 1e-9 relative to the largest entry magnitude (exact integer
    inputs are unaffected).
    """
    av, n = _accessor(a)
    if cmap_basic.n != n:
        raise ContractError("characteristic map does not cover the matrix")
    b = average_compress(a, cmap_basic)
    if tol is None:
        scale = float(np.max(np.abs(b))) if b.size else 1.0
        tol = 1e-9 * max(1.0, scale)
    ann = Annotation()
    members = cmap_basic.orbit_members
    for motif in motifs:
        if motif.is_basic and len(motif.orbits) <= 2:
            cell_ids = []
            for orbit in motif.orbits:
                cid = cmap_basic.orbit_of[orbit[0]]
                if list(members[cid]) != sorted(orbit):
                    raise ContractError("basic map cells disagree with motif orbits")
                cell_ids.append(cid)
                rep = orbit[0]
                ann.orbit_beta[cid] = av(rep, rep)
            if len(motif.orbits) == 2:
                o1, o2 = (sorted(o) for o in motif.orbits)
                delta, perm = _find_alignment(av, o1, o2, tol)
                ann.pairs.append(PairAnnotation(cell_ids[0], cell_ids[1], delta, tuple(perm)))
        else:
            verts = motif.vertices
            block = np.array([[av(i, j) for j in verts] for i in verts])
            ann.raw_blocks.append(RawBlock(tuple(verts), block))
    return CompressedMeasure(b, cmap_basic, ann)


def lossless_decompress(c: CompressedMeasure) -> np.ndarray:
    """Reconstruct the full matrix from B plus the annotation.

    Within-orbit alpha comes from [B]_orb,orb = n((n-1) alpha + beta) and the
    cross-orbit gamma from [B]_12 = n((n-1) gamma + delta); raw blocks are
    copied verbatim.
    """
    cmap = c.cmap
    members = cmap.orbit_members
    a = average_decompress(c.b, cmap)
    for cid, beta in c.annotation.orbit_beta.items():
        orb = list(members[cid])
        nn = len(orb)
        if nn == 1:
            a[orb[0], orb[0]] = beta
            continue
        alpha = (c.b[cid, cid] / nn - beta) / (nn - 1)
        block = np.full((nn, nn), alpha)
        np.fill_diagonal(block, beta)
        a[np.ix_(orb, orb)] = block
    for pair in c.annotation.pairs:
        o1 = list(members[pair.orbit1])
        o2 = list(members[pair.orbit2])
        nn = len(o1)
        if sorted(pair.perm) != sorted(o2) or len(pair.perm) != nn:
            raise ContractError("pair annotation permutation is not an alignment")
        gamma = (c.b[pair.orbit1, pair.orbit2] / nn - pair.delta) / (nn - 1)
        block = np.full((nn, nn), gamma)
        pos2 = {v: k for k, v in enumerate(o2)}
        for i in range(nn):
            block[i, pos2[pair.perm[i]]] = pair.delta
        a[np.ix_(o1, o2)] = block
        a[np.ix_(o2, o1)] = block.T
    for raw in c.annotation.raw_blocks:
        verts = list(raw.vertices)
        if raw.values.shape != (len(verts), len(verts)):
            raise ContractError("raw block shape disagrees with its vertex set")
        a[np.ix_(verts, verts)] = raw.values
    return a


def compression_ratios(d: GeometricDecomposition, g: Graph) -> dict[str, float]:
    """Vertex and edge reduction of the orbit quotient, as ratios in (0, 1].

    ``c_full`` = (n_Q/n_G)^2 governs full measures, ``c_sparse`` = m_Q/m_G
    sparse ones. Quotient edges are counted as nonzero upper-triangle
    entries plus loops.
    """
    cmap = orbit_characteristic_map(d, g.n)
    n_ratio = cmap.m / g.n if g.n else 1.0
    m_g = g.num_edges
    m_q = quotient(g, cmap).num_edges()
    m_ratio = m_q / m_g if m_g else 1.0
    return {
        "c_full": n_ratio**2,
        "c_sparse": m_ratio,
        "n_ratio": n_ratio,
        "m_ratio": m_ratio,
    }


# -- container file ------------------------------------------------------

_FORMAT_VERSION = 1


def write_container(c: CompressedMeasure, labels: list[str]) -> str:
    """Serialize to the compressed-container JSON text.

    Floats are stored as hexadecimal literals so round trips are bit-exact.
    """
    rows, cols = np.nonzero(c.b)
    payload = {
        "format_version": _FORMAT_VERSION,
        "n": c.cmap.n,
        "m": c.cmap.m,
        "labels": list(labels),
        "cells": [list(cell) for cell in c.cmap.orbit_members],
        "b": [
            [int(r), int(col), float(c.b[r, col]).hex()]
            for r, col in zip(rows, cols)
        ],
        "annotation": {
            "orbit_beta": {str(k): v.hex() for k, v in c.annotation.orbit_beta.items()},
            "pairs": [
                {
                    "orbit1": p.orbit1,
                    "orbit2": p.orbit2,
                    "delta": p.delta.hex(),
                    "perm": list(p.perm),
                }
                for p in c.annotation.pairs
            ],
            "raw_blocks": [
                {
                    "vertices": list(rb.vertices),
                    "values": [[x.hex() for x in row] for row in rb.values.tolist()],
                }
                for rb in c.annotation.raw_blocks
            ],
        },
    }
    return json.dumps(payload, sort_keys=True)


def read_container(text: str) -> tuple[CompressedMeasure, list[str]]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"container is not valid JSON: {exc}") from None
    if payload.get("format_version") != _FORMAT_VERSION:
        raise ParseError("unsupported container format version")
    try:
        n = payload["n"]
        cmap = characteristic_map(payload["cells"], n)
        b = np.zeros((cmap.m, cmap.m))
        for r, col, hx in payload["b"]:
            b[r, col] = float.fromhex(hx)
        raw_ann = payload["annotation"]
        ann = Annotation(
            orbit_beta={int(k): float.fromhex(v) for k, v in raw_ann["orbit_beta"].items()},
            pairs=[
                PairAnnotation(
                    p["orbit1"], p["orbit2"], float.fromhex(p["delta"]), tuple(p["perm"])
                )
                for p in raw_ann["pairs"]
            ],
            raw_blocks=[
                RawBlock(
                    tuple(rb["vertices"]),
                    np.array([[float.fromhex(x) for x in row] for row in rb["values"]]),
                )
                for rb in raw_ann["raw_blocks"]
            ],
        )
        labels = list(payload["labels"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed container: {exc}") from None
    return CompressedMeasure(b, cmap, ann), labels
