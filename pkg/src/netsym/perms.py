"""Permutations as image arrays, plus disjoint-cycle text notation.

A permutation on n points is a list ``p`` of length n with ``p[i]`` the
image of point ``i``; it must be a bijection on ``0..n-1``.
"""

from __future__ import annotations

import re

from .errors import ParseError

Perm = list[int]


def identity(n: int) -> Perm:
    return list(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def check_permutation(p: Perm, n: int | None = None) -> None:
    if n is not None and len(p) != n:
        raise ValueError(f"permutation has length {len(p)}, expected {n}")
    seen = [False] * len(p)
    for j in p:
        if not 0 <= j < len(p) or seen[j]:
            raise ValueError("not a permutation of 0..n-1")
        seen[j] = True


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p first, then q."""
    return [q[i] for i in p]


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return inv


def cycles(p: Perm) -> list[list[int]]:
    """Non-trivial cycles of p, each starting at its minimum, sorted."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append(cyc)
    return out


def format_cycles(p: Perm, labels: list[str] | None = None) -> str:
    """Disjoint-cycle text for p; labels default to 1-based point numbers."""
    if labels is None:
        labels = [str(i + 1) for i in range(len(p))]
    cycs = cycles(p)
    if not cycs:
        return "()"
    return "".join("(" + " ".join(labels[i] for i in c) + ")" for c in cycs)


def support(p: Perm) -> set[int]:
    """Set of points moved by p."""
    return {i for i, j in enumerate(p) if i != j}


def support_classes(perms: list[Perm]) -> list[list[int]]:
    """Group permutation indices into classes with pairwise-disjoint supports.

    Two permutations land in the same class iff they are connected through a
    chain of overlapping supports. Classes are ordered by the minimum moved
    point; permutations without support are dropped.
    """
    owner: dict[int, int] = {}  # moved point -> class root (index of a perm)
    parent = list(range(len(perms)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx, p in enumerate(perms):
        for pt in support(p):
            if pt in owner:
                parent[find(idx)] = find(owner[pt])
            else:
                owner[pt] = idx
    classes: dict[int, list[int]] = {}
    for idx, p in enumerate(perms):
        if any(i != j for i, j in enumerate(p)):
            classes.setdefault(find(idx), []).append(idx)
    out = list(classes.values())
    out.sort(key=lambda idxs: min(min(support(perms[i])) for i in idxs))
    return out


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int, label_index: dict[str, int] | None = None) -> Perm:
    """Parse one permutation in disjoint-cycle notation.

    Cycle entries are original labels looked up in ``label_index``; without a
    label map, entries are read as 1-based point numbers.
    """
    stripped = text.strip()
    if not stripped or stripped == "()":
        return identity(n)
    consumed = _CYCLE_RE.sub("", stripped).strip()
    if consumed:
        raise ParseError(f"malformed cycle notation: {text!r}")
    p = identity(n)
    used: set[int] = set()
    for match in _CYCLE_RE.finditer(stripped):
        tokens = match.group(1).replace(",", " ").split()
        if not tokens:
            continue
        points = []
        for tok in tokens:
            if label_index is not None:
                if tok not in label_index:
                    raise ParseError(f"unknown vertex label {tok!r} in permutation")
                pt = label_index[tok]
            else:
                try:
                    pt = int(tok) - 1
                except ValueError:
                    raise ParseError(f"non-integer point {tok!r} in permutation") from None
            if not 0 <= pt < n:
                raise ParseError(f"point {tok!r} out of range for n={n}")
            if pt in used:
                raise ParseError(f"point {tok!r} repeated in permutation")
            used.add(pt)
            points.append(pt)
        for a, b in zip(points, points[1:]):
            p[a] = b
        p[points[-1]] = points[0]
    return p
