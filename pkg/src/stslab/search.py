"""Exact automorphism / isomorphism engine for (partial) triple systems.

Backtracking over individualization-refinement.  The refinement invariant
colors each point by the multiset of color pairs it sees through its
triples, iterated to a fixpoint; individualized points carry their sequence
rank so refined colors are relabeling-invariant.  Everything here is exact:
refinement only prunes, it never decides.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import perm as pm
from .perm import PermutationGroup
from .system import PartialTripleSystem, TripleSystem

DEFAULT_NODE_BUDGET = 10**8
BUDGET_ENV_VAR = "STSLAB_NODE_BUDGET"


class BudgetExceededError(RuntimeError):
    """The refinement-pruned search tree passed the node limit."""


def node_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get(BUDGET_ENV_VAR, DEFAULT_NODE_BUDGET))


class _SearchData:
    """Preprocessed incidence structure for one system."""

    def __init__(self, system):
        self.system = system
        self.n = system.n
        self.triples = list(system.iter_triples())
        self.triple_set = set(self.triples)
        inc = [[] for _ in range(self.n)]
        for a, b, c in self.triples:
            inc[a].append((b, c))
            inc[b].append((a, c))
            inc[c].append((a, b))
        self.inc = inc
        self._refine_cache: dict = {}
        self.nodes = 0
        self.budget = DEFAULT_NODE_BUDGET

    def charge(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(
                f"search exceeded node budget {self.budget} "
                f"(set {BUDGET_ENV_VAR} to override)"
            )

    def refine(self, marked: tuple) -> tuple:
        """Equitable coloring with the points of `marked` individualized."""
        cached = self._refine_cache.get(marked)
        if cached is not None:
            return cached
        self.charge()
        n = self.n
        mrank = {p: i for i, p in enumerate(marked)}
        colors = [0] * n
        n_classes = 1 if n else 0
        while True:
            sigs = []
            for p in range(n):
                row = sorted(
                    (colors[q], colors[r]) if colors[q] <= colors[r] else (colors[r], colors[q])
                    for q, r in self.inc[p]
                )
                sigs.append((mrank.get(p, n), colors[p], tuple(row)))
            distinct = sorted(set(sigs))
            index = {s: i for i, s in enumerate(distinct)}
            colors = [index[s] for s in sigs]
            if len(distinct) == n_classes:
                break
            n_classes = len(distinct)
        result = tuple(colors)
        self._refine_cache[marked] = result
        return result


def _cells(colors: tuple) -> dict:
    out: dict = {}
    for p, c in enumerate(colors):
        out.setdefault(c, []).append(p)
    return out


def _target_color(colors: tuple):
    """Color of the smallest non-singleton cell (lowest color breaks ties)."""
    best = None
    for c, pts in _cells(colors).items():
        if len(pts) < 2:
            continue
        key = (len(pts), c)
        if best is None or key < best:
            best = key
    return None if best is None else best[1]


def _histogram(colors: tuple) -> tuple:
    return tuple(sorted((c, colors.count(c)) for c in set(colors)))


def _leaf_permutation(colors: tuple) -> tuple:
    """Discrete coloring -> permutation sending point p to rank colors[p]."""
    return tuple(colors)


def _maps_triples(data_a: _SearchData, data_b: _SearchData, mapping: tuple) -> bool:
    for a, b, c in data_a.triples:
        img = (mapping[a], mapping[b], mapping[c])
        im = tuple(sorted(img))
        if im not in data_b.triple_set:
            return False
    return True


def _find_map(data_a, data_b, marked_a: tuple, marked_b: tuple):
    """An isomorphism data_a -> data_b extending marked_a -> marked_b, or None."""
    ca = data_a.refine(marked_a)
    cb = data_b.refine(marked_b)
    if _histogram(ca) != _histogram(cb):
        return None
    target = _target_color(ca)
    if target is None:
        # discrete on both sides: colors define the candidate bijection
        rank_b = {c: p for p, c in enumerate(cb)}
        mapping = tuple(rank_b[c] for c in ca)
        if _maps_triples(data_a, data_b, mapping):
            return mapping
        return None
    a = min(p for p, c in enumerate(ca) if c == target)
    for b in (p for p, c in enumerate(cb) if c == target):
        found = _find_map(data_a, data_b, marked_a + (a,), marked_b + (b,))
        if found is not None:
            return found
    return None


def _aut_group(data: _SearchData, marked: tuple) -> PermutationGroup:
    """Automorphisms fixing `marked` pointwise, by orbit-stabilizer recursion."""
    colors = data.refine(marked)
    target = _target_color(colors)
    if target is None:
        return PermutationGroup.trivial(data.n)
    cell = [p for p, c in enumerate(colors) if c == target]
    base = cell[0]
    stab = _aut_group(data, marked + (base,))
    group = PermutationGroup.from_generators(data.n, stab.generators)
    for cand in cell[1:]:
        if cand in pm.orbit_of(base, group.generators):
            continue
        g = _find_map(data, data, marked + (base,), marked + (cand,))
        if g is not None:
            group.extend(g)
    orbit = pm.orbit_of(base, group.generators)
    assert group.order == stab.order * len(orbit), "orbit-stabilizer mismatch"
    return group


def automorphism_group(system, budget: int | None = None) -> PermutationGroup:
    """Exact automorphism group of a (partial) triple system."""
    data = _SearchData(system)
    data.budget = node_budget(budget)
    group = _aut_group(data, ())
    for g in group.generators:
        assert is_automorphism(system, g)
    return group


def is_automorphism(system, p) -> bool:
    """True iff p maps every triple of the system to a triple."""
    p = tuple(p)
    if len(p) != system.n or not pm.is_permutation(p):
        return False
    triples = set(system.iter_triples())
    for a, b, c in triples:
        if tuple(sorted((p[a], p[b], p[c]))) not in triples:
            return False
    return True


class _CanonState:
    __slots__ = ("best_key", "best_colors", "best_seq", "auts")

    def __init__(self):
        self.best_key = None
        self.best_colors = None
        self.best_seq = None
        self.auts = []


def _leaf_key(data: _SearchData, colors: tuple) -> tuple:
    lab = colors  # discrete: point p gets label colors[p]
    return tuple(
        sorted(tuple(sorted((lab[a], lab[b], lab[c]))) for a, b, c in data.triples)
    )


def _canon_dfs(data: _SearchData, seq: tuple, state: _CanonState) -> int:
    """Explore the individualization tree; returns unwind depth."""
    colors = data.refine(seq)
    target = _target_color(colors)
    if target is None:
        key = _leaf_key(data, colors)
        if state.best_key is None or key < state.best_key:
            state.best_key = key
            state.best_colors = colors
            state.best_seq = seq
            return len(seq)
        if key == state.best_key:
            # same canonical image: best_labeling^-1 . leaf_labeling is an
            # automorphism fixing the common prefix of the two sequences
            inv_best = pm.inverse(state.best_colors)
            g = tuple(inv_best[colors[p]] for p in range(data.n))
            if g != pm.identity(data.n) and is_automorphism(data.system, g):
                state.auts.append(g)
            common = 0
            while (
                common < len(seq)
                and common < len(state.best_seq)
                and seq[common] == state.best_seq[common]
            ):
                common += 1
            return common
        return len(seq)
    cell = [p for p, c in enumerate(colors) if c == target]
    depth = len(seq)
    explored: list = []
    for cand in cell:
        fixing = [g for g in state.auts if all(g[s] == s for s in seq)]
        if any(cand in pm.orbit_of(e, fixing) for e in explored):
            continue
        explored.append(cand)
        unwind = _canon_dfs(data, seq + (cand,), state)
        if unwind < depth:
            return unwind
    return depth


def canonical_form(system, budget: int | None = None) -> tuple:
    """Relabeling-invariant triple list; equal forms iff isomorphic systems."""
    key, _ = _canonical_labeling(system, budget)
    return key


def _canonical_labeling(system, budget: int | None = None) -> tuple:
    data = _SearchData(system)
    data.budget = node_budget(budget)
    if system.n == 0 or not data.triples:
        return (system.n, ()), tuple(range(system.n))
    state = _CanonState()
    _canon_dfs(data, (), state)
    labeling = state.best_colors  # point -> canonical index
    return (system.n, state.best_key), labeling


@dataclass(frozen=True)
class IsoCertificate:
    """Either an explicit isomorphism or a non-isomorphism verdict."""

    isomorphic: bool
    mapping: tuple | None = None
    canonical_a: tuple | None = None
    canonical_b: tuple | None = None


def are_isomorphic(a, b, budget: int | None = None) -> IsoCertificate:
    """Decide isomorphism; a returned map is verified triple-to-triple."""
    if type(a) is not type(b) or a.n != b.n or a.n_triples != b.n_triples:
        return IsoCertificate(False, canonical_a=(a.n, None), canonical_b=(b.n, None))
    form_a, lab_a = _canonical_labeling(a, budget)
    form_b, lab_b = _canonical_labeling(b, budget)
    if form_a != form_b:
        return IsoCertificate(False, canonical_a=form_a, canonical_b=form_b)
    inv_b = pm.inverse(lab_b)
    mapping = tuple(inv_b[lab_a[p]] for p in range(a.n))
    data_a, data_b = _SearchData(a), _SearchData(b)
    assert _maps_triples(data_a, data_b, mapping), "canonical labelings disagree"
    return IsoCertificate(True, mapping=mapping, canonical_a=form_a, canonical_b=form_b)
