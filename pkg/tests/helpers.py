"""Shared test utilities: brute-force oracles and seeded graph generators.

The oracles are deliberately independent of the library's algorithms:
automorphisms by exhaustive n! filtering, distances by plain BFS, matrix
functions via scipy, means by direct summation.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

import numpy as np

from netsym import Graph


# -- oracles ---------------------------------------------------------------


def brute_force_automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """All vertex permutations satisfying weight(p(i), p(j)) == weight(i, j)."""
    entries = list(g.entries())
    out = []
    for p in itertools.permutations(range(g.n)):
        if all(g.weight(p[i], p[j]) == w for i, j, w in entries):
            out.append(p)
    return out

def orbits_from_perms(perms, n: int) -> list[list[int]]:
    """Orbit partition of the group generated by ``perms`` (union-find)."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, j in enumerate(p):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(find(v), []).append(v)
    return sorted(cells.values(), key=lambda c: c[0])


def bfs_all_pairs(g: Graph) -> np.ndarray:
    """Plain all-pairs BFS distance matrix (-1 if unreachable)."""
    out = np.full((g.n, g.n), -1, dtype=int)
    for s in range(g.n):
        out[s, s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if out[s, v] < 0:
                    out[s, v] = out[s, u] + 1
                    queue.append(v)
    return out


def power_iteration(a: np.ndarray, iters: int = 20000, tol: float = 1e-14) -> np.ndarray:
    """Perron vector of a non-negative symmetric matrix by power iteration."""
    n = a.shape[0]
    v = np.ones(n) / np.sqrt(n)
    shift = 1.0  # keep the iteration matrix positive semidefinite-ish
    for _ in range(iters):
        w = a @ v + shift * v
        w /= np.linalg.norm(w)
        if np.linalg.norm(w - v) < tol:
            v = w
            break
        v = w
    if v.sum() < 0:
        v = -v
    return v


# -- fixtures and generators -------------------------------------------------


def fig2_fixture() -> Graph:
    """The 5-vertex motif-neighborhood graph: edges 1-3, 2-4, 3-5, 4-5."""
    return Graph.from_edges(5, [(0, 2), (1, 3), (2, 4), (3, 4)],
                            labels=["1", "2", "3", "4", "5"])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def all_graphs_up_to(n_max: int):
    """Yield every simple undirected graph with 1..n_max vertices."""
    for n in range(1, n_max + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for mask in range(1 << len(pairs)):
            edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
            yield Graph.from_edges(n, edges)


def planted_symmetric_graph(
    seed: int,
    core_n: int = 30,
    core_p: float = 0.15,
    num_motifs: int = 5,
    orbit_sizes=(2, 3, 4),
    kinds=("clone", "clique", "join"),
) -> Graph:
    """Connected graph with deliberately planted symmetric motifs.

    The core is a connected random graph; each planted motif is either a set
    of k mutually non-adjacent clones ("clone"), a clique of k clones
    ("clique"), or a matched join of two k-orbits ("join"), attached
    uniformly per orbit to randomly chosen core vertices. The actual
    automorphism group may be larger than planted (accidental core symmetry
    or merged motifs); tests must use the computed decomposition.
    """
    rng = random.Random(seed)
    edges = set()
    for i in range(core_n):
        for j in range(i + 1, core_n):
            if rng.random() < core_p:
                edges.add((i, j))
    for i in range(core_n - 1):  # guarantee connectivity
        edges.add((i, i + 1))
    nxt = core_n

    def attach_set():
        return rng.sample(range(core_n), rng.randint(1, min(3, core_n)))

    for _ in range(num_motifs):
        k = rng.choice(orbit_sizes)
        kind = rng.choice(kinds)
        if kind in ("clone", "clique"):
            verts = list(range(nxt, nxt + k))
            nxt += k
            anchors = attach_set()
            for v in verts:
                for a in anchors:
                    edges.add((a, v))
            if kind == "clique":
                for x in range(k):
                    for y in range(x + 1, k):
                        edges.add((verts[x], verts[y]))
        else:
            o1 = list(range(nxt, nxt + k))
            o2 = list(range(nxt + k, nxt + 2 * k))
            nxt += 2 * k
            anchors1, anchors2 = attach_set(), attach_set()
            for i in range(k):
                edges.add((o1[i], o2[i]))  # matched pairs: delta=1, gamma=0
            if rng.random() < 0.5:  # optionally make the first orbit a clique
                for x in range(k):
                    for y in range(x + 1, k):
                        edges.add((o1[x], o1[y]))
            for v in o1:
                for a in anchors1:
                    edges.add((a, v))
            for v in o2:
                for a in anchors2:
                    edges.add((a, v))
    return Graph.from_edges(nxt, sorted(edges))


def clone_leaf_graph(seed: int, core_n: int = 12, motif_specs=((2, 0), (3, 1), (2, 2))) -> Graph:
    """Core path plus 1-orbit clone motifs with distinct anchor sets.

    motif_specs: (orbit size, anchor offset) pairs; anchors are single core
    vertices, so every planted motif is a 1-orbit empty BSM with external
    degree 1 unless extra anchors are added by the caller.
    """
    edges = {(i, i + 1) for i in range(core_n - 1)}
    nxt = core_n
    for size, anchor in motif_specs:
        verts = list(range(nxt, nxt + size))
        nxt += size
        for v in verts:
            edges.add((anchor, v))
    return Graph.from_edges(nxt, sorted(edges))
