"""Permutations and permutation groups with exact order and membership.

Permutations are image tuples over 0..n-1.  Groups carry a deterministic
stabilizer chain (Schreier-Sims) so order and membership are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def identity(n: int) -> tuple:
    return tuple(range(n))


def compose(p: tuple, q: tuple) -> tuple:
    """First apply p, then q: (p*q)(i) = q(p(i))."""
    return tuple(q[p[i]] for i in range(len(p)))


def inverse(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, img in enumerate(p):
        out[img] = i
    return tuple(out)


def is_permutation(p) -> bool:
    return sorted(p) == list(range(len(p)))


def cycle_string(p: tuple) -> str:
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


class _ChainLevel:
    __slots__ = ("base_point", "transversal", "gens", "done")

    def __init__(self, base_point: int):
        self.base_point = base_point
        self.transversal: dict = {}  # point -> perm mapping base->point
        self.gens: list = []
        self.done: set = set()  # (point, gen index) pairs already closed


@dataclass
class PermutationGroup:
    """Group generated by `generators`, with a stabilizer chain for order."""

    degree: int
    generators: list = field(default_factory=list)
    _levels: list = field(default_factory=list, repr=False)

    @classmethod
    def from_generators(cls, degree: int, generators) -> "PermutationGroup":
        g = cls(degree)
        for p in generators:
            g.extend(tuple(p))
        return g

    @classmethod
    def trivial(cls, degree: int) -> "PermutationGroup":
        return cls(degree)

    @property
    def order(self) -> int:
        out = 1
        for lvl in self._levels:
            out *= len(lvl.transversal)
        return out

    def _sift(self, p: tuple):
        """Reduce p through the chain; return (residue, level_index)."""
        for i, lvl in enumerate(self._levels):
            img = p[lvl.base_point]
            rep = lvl.transversal.get(img)
            if rep is None:
                return p, i
            p = compose(p, inverse(rep))
        return p, len(self._levels)

    def __contains__(self, p) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            return False
        residue, _ = self._sift(p)
        return residue == identity(self.degree)

    def extend(self, p: tuple) -> bool:
        """Add p to the group; return True if the group grew."""
        p = tuple(p)
        if p in self:
            return False
        self.generators.append(p)
        ident = identity(self.degree)
        queue = [p]
        while queue:
            q = queue.pop()
            residue, _ = self._sift(q)
            if residue == ident:
                continue
            # insert q at the deepest level whose base prefix it fixes
            idx = 0
            while (
                idx < len(self._levels)
                and q[self._levels[idx].base_point] == self._levels[idx].base_point
            ):
                idx += 1
            if idx == len(self._levels):
                base_point = min(i for i in range(self.degree) if q[i] != i)
                lvl = _ChainLevel(base_point)
                lvl.transversal[base_point] = ident
                self._levels.append(lvl)
            lvl = self._levels[idx]
            lvl.gens.append(q)
            # the new generator can grow the orbit at its own level and at
            # every shallower level (it fixes their bases but moves other
            # orbit points), so re-close all of them
            for i in range(idx, -1, -1):
                queue.extend(self._close_level(i))
        return True

    def _close_level(self, idx: int) -> list:
        """Extend the orbit at level idx; return fresh Schreier generators.

        The orbit uses the generators of this level and of every deeper one:
        all of them fix the base prefix above this level.
        """
        lvl = self._levels[idx]
        ident = identity(self.degree)
        gens = [g for deeper in self._levels[idx:] for g in deeper.gens]
        out = []
        frontier = list(lvl.transversal)
        while frontier:
            new = []
            for pt in frontier:
                rep = lvl.transversal[pt]
                for g in gens:
                    if (pt, g) in lvl.done:
                        continue
                    lvl.done.add((pt, g))
                    word = compose(rep, g)
                    img = g[pt]
                    back = lvl.transversal.get(img)
                    if back is None:
                        lvl.transversal[img] = word
                        new.append(img)
                        continue  # the Schreier generator is trivial here
                    schreier = compose(word, inverse(back))
                    if schreier != ident:
                        out.append(schreier)
            frontier = new
        return out

    def elements(self, limit: int | None = 1_000_000):
        """Iterate all elements (products of transversal reps)."""
        if limit is not None and self.order > limit:
            raise ValueError(f"group order {self.order} exceeds limit {limit}")

        def rec(idx: int, acc: tuple):
            if idx < 0:
                yield acc
                return
            lvl = self._levels[idx]
            for rep in lvl.transversal.values():
                yield from rec(idx - 1, compose(acc, rep))

        if not self._levels:
            yield identity(self.degree)
            return
        yield from rec(len(self._levels) - 1, identity(self.degree))

    def orbit(self, point: int, extra_gens: list | None = None) -> frozenset:
        gens = self.generators + (extra_gens or [])
        return orbit_of(point, gens)


def orbit_of(point: int, gens: list) -> frozenset:
    seen = {point}
    frontier = [point]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                img = g[p]
                if img not in seen:
                    seen.add(img)
                    new.append(img)
        frontier = new
    return frozenset(seen)


def orbits_of(points, gens: list) -> list:
    """Partition `points` into orbits under gens (restricted to those points)."""
    remaining = set(points)
    out = []
    while remaining:
        p = min(remaining)
        orb = orbit_of(p, gens) & remaining
        out.append(orb)
        remaining -= orb
    return out
