"""Deterministic Schreier-Sims stabilizer chains for exact group orders.

Permutations use the array form of :mod:`netsym.perms`. One global strong
set is maintained; the level-k generators are the strong elements fixing
the first k base points, so a residue discovered deep in the chain
automatically joins every level above it. Every Schreier generator is
sifted until a fixpoint, which makes the construction complete without
randomization. Intended for the moderate degrees found inside symmetric
motifs; callers should restrict permutations to their support first.
"""

from __future__ import annotations

from .perms import Perm, compose, identity, inverse, is_identity


class StabilizerChain:
    """Base and strong generating set of a permutation group."""

    def __init__(self, n: int):
        self.n = n
        self.base: list[int] = []
        self.strong: list[Perm] = []
        # transversal[k][p] = u with u(base[k]) = p, for the level-k orbit.
        self.transversal: list[dict[int, Perm]] = []

    def order(self) -> int:
        total = 1
        for orbit in self.transversal:
            total *= len(orbit)
        return total

    def contains(self, g: Perm) -> bool:
        residue, _ = self._strip(g, 0)
        return residue is None

    def extend(self, g: Perm) -> None:
        """Add a generator and restore the strong generating property."""
        residue, level = self._strip(g, 0)
        if residue is None:
            return
        self._append_strong(residue, level)
        self._complete(0)

    # -- internals ------------------------------------------------------

    def _level_gens(self, k: int) -> list[Perm]:
        prefix = self.base[:k]
        return [g for g in self.strong if all(g[b] == b for b in prefix)]

    def _strip(self, g: Perm, start: int) -> tuple[Perm | None, int]:
        """Factor g through the transversals; (None, -1) means membership."""
        for k in range(start, len(self.base)):
            p = g[self.base[k]]
            u = self.transversal[k].get(p)
            if u is None:
                return g, k
            g = compose(g, inverse(u))
        if is_identity(g):
            return None, -1
        return g, len(self.base)

    def _append_strong(self, residue: Perm, level: int) -> None:
        if level == len(self.base):
            for i, j in enumerate(residue):
                if i != j:
                    self.base.append(i)
                    self.transversal.append({i: identity(self.n)})
                    break
        self.strong.append(residue)

    def _rebuild_orbit(self, k: int, gens: list[Perm]) -> None:
        b = self.base[k]
        orbit = {b: identity(self.n)}
        queue = [b]
        while queue:
            p = queue.pop()
            u_p = orbit[p]
            for s in gens:
                q = s[p]
                if q not in orbit:
                    orbit[q] = compose(u_p, s)
                    queue.append(q)
        self.transversal[k] = orbit

    def _complete(self, k: int) -> None:
        """Establish the SGS property at level k, recursing deeper as needed."""
        if k >= len(self.base):
            return
        while True:
            gens = self._level_gens(k)
            self._rebuild_orbit(k, gens)
            orbit = self.transversal[k]
            found = False
            for p in sorted(orbit):
                u_p = orbit[p]
                for s in gens:
                    u_sp = orbit[s[p]]
                    schreier = compose(compose(u_p, s), inverse(u_sp))
                    residue, level = self._strip(schreier, k + 1)
                    if residue is not None:
                        self._append_strong(residue, level)
                        self._complete(k + 1)
                        found = True
                        break
                if found:
                    break
            if not found:
                return


def group_order_of(perms: list[Perm], n: int) -> int:
    """Exact order of the group generated by ``perms`` on ``0..n-1``."""
    chain = StabilizerChain(n)
    for g in perms:
        if not is_identity(g):
            chain.extend(g)
    return chain.order()
