"""Morphisms of the opposite Kleisli category of ``!_M`` over index sets.

A morphism from ``[n_src]`` to ``[n_dst]`` is an upward-closed set of pairs
``(T, a)`` with ``T ⊆ {0..M} × [n_dst]`` and ``a ∈ [n_src]``.  It is kept as
one ⊆-antichain of minimal summaries per source index.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass

from .preord import (CarrierMismatch, DcRel, bang_comult, bang_mor, bang_obj,
                     index_set, rel_compose)

Summary = frozenset  # of (priority, index) pairs


def minimize(family: Iterable[frozenset]) -> frozenset:
    """The ⊆-minimal members of ``family``."""
    uniq = sorted(set(family), key=len)
    kept: list[frozenset] = []
    for s in uniq:
        if not any(k <= s for k in kept):
            kept.append(s)
    return frozenset(kept)


def summary_key(s: frozenset) -> tuple:
    return (len(s), sorted(s))


@dataclass(frozen=True)
class SemMorphism:
    n_src: int
    n_dst: int
    max_rank: int
    antichains: tuple  # tuple[frozenset[Summary]], one per source index

    def __post_init__(self):
        if len(self.antichains) != self.n_src:
            raise ValueError("one antichain per source index is required")
        for family in self.antichains:
            for summary in family:
                for p, b in summary:
                    if not (0 <= p <= self.max_rank and 0 <= b < self.n_dst):
                        raise ValueError(f"summary entry {(p, b)} out of range")

    @classmethod
    def build(cls, n_src: int, n_dst: int, max_rank: int, families) -> "SemMorphism":
        return cls(n_src, n_dst, max_rank,
                   tuple(minimize(frozenset(s) for s in fam) for fam in families))

    def contains(self, summary: Iterable, a: int) -> bool:
        summary = frozenset(summary)
        return any(u <= summary for u in self.antichains[a])

    def universe(self) -> tuple:
        return tuple((p, b) for p in range(self.max_rank + 1) for b in range(self.n_dst))

    def denoted(self) -> frozenset:
        """The full upward-closed relation; exponential, for small carriers only."""
        return frozenset((t, a) for t in _all_summaries(self.universe())
                         for a in range(self.n_src) if self.contains(t, a))

    def sorted_antichain(self, a: int) -> list[list[tuple[int, int]]]:
        return [sorted(s) for s in sorted(self.antichains[a], key=summary_key)]

    def __repr__(self) -> str:
        body = "; ".join(f"{a}: {self.sorted_antichain(a)}" for a in range(self.n_src))
        return f"SemMorphism({self.n_src}->{self.n_dst}, M={self.max_rank}, {{{body}}})"


def _all_summaries(universe) -> Iterable[frozenset]:
    for r in range(len(universe) + 1):
        for combo in itertools.combinations(universe, r):
            yield frozenset(combo)


def _check_rank(f: SemMorphism, g: SemMorphism) -> None:
    if f.max_rank != g.max_rank:
        raise CarrierMismatch(f"maximal ranks differ: {f.max_rank} vs {g.max_rank}")


def kleisli_identity(n: int, max_rank: int) -> SemMorphism:
    return SemMorphism(n, n, max_rank,
                       tuple(frozenset([frozenset([(0, a)])]) for a in range(n)))


def empty_morphism(max_rank: int) -> SemMorphism:
    return SemMorphism(0, 0, max_rank, ())


def lift(p: int, summary: frozenset) -> frozenset:
    return frozenset((max(p, q), c) for q, c in summary)


def kleisli_compose(r: SemMorphism, s: SemMorphism) -> SemMorphism:
    """``r`` then ``s``: ``(T, a)`` iff some minimal ``U`` of ``r`` at ``a`` has,
    for each ``(p, b)`` in ``U``, a summary ``V`` of ``s`` at ``b`` with the
    ``p``-lifted ``V`` inside ``T``."""
    _check_rank(r, s)
    if r.n_dst != s.n_src:
        raise CarrierMismatch(f"cannot compose {r.n_src}->{r.n_dst} with {s.n_src}->{s.n_dst}")
    families = []
    for a in range(r.n_src):
        results = []
        for u in r.antichains[a]:
            options = []
            for p, b in sorted(u):
                opts = minimize(lift(p, v) for v in s.antichains[b])
                if not opts:
                    break
                options.append(opts)
            else:
                for choice in itertools.product(*options):
                    results.append(frozenset().union(*choice))
        families.append(results)
    return SemMorphism.build(r.n_src, s.n_dst, r.max_rank, families)


def as_dcrel(f: SemMorphism) -> DcRel:
    """The FinScottL relation ``!_M[n_dst] -+-> [n_src]`` denoted by ``f``."""
    return DcRel(bang_obj(index_set(f.n_dst), f.max_rank), index_set(f.n_src),
                 lambda t, a: f.contains(t, a),
                 lambda t: [a for a in range(f.n_src) if f.contains(t, a)])


def kleisli_compose_literal(r: SemMorphism, s: SemMorphism) -> SemMorphism:
    """Composite obtained literally as ``delta^! ; !(s) ; r`` in FinScottL.

    Exponential in the target carrier; intended as an independent check of
    :func:`kleisli_compose` on small instances.
    """
    _check_rank(r, s)
    if r.n_dst != s.n_src:
        raise CarrierMismatch("carrier mismatch")
    m = r.max_rank
    chain = rel_compose(rel_compose(bang_comult(index_set(s.n_dst), m),
                                    bang_mor(as_dcrel(s), m)),
                        as_dcrel(r))
    universe = tuple((p, c) for p in range(m + 1) for c in range(s.n_dst))
    families = [[] for _ in range(r.n_src)]
    for t in _all_summaries(universe):
        for a in range(r.n_src):
            if chain.contains(t, a):
                families[a].append(t)
    return SemMorphism.build(r.n_src, s.n_dst, m, families)


def kleisli_tensor(f: SemMorphism, g: SemMorphism) -> SemMorphism:
    """Componentwise action on ``[n] + [n']`` with the right block shifted."""
    _check_rank(f, g)
    shifted = tuple(frozenset(frozenset((p, b + f.n_dst) for p, b in s) for s in fam)
                    for fam in g.antichains)
    return SemMorphism(f.n_src + g.n_src, f.n_dst + g.n_dst, f.max_rank,
                       f.antichains + shifted)


def kleisli_permutation(perm: Iterable[int], max_rank: int) -> SemMorphism:
    """Lift of the bijection ``a -> perm[a]``."""
    perm = tuple(perm)
    return SemMorphism(len(perm), len(perm), max_rank,
                       tuple(frozenset([frozenset([(0, b)])]) for b in perm))


def kleisli_swap(m: int, n: int, max_rank: int) -> SemMorphism:
    return kleisli_permutation([n + a for a in range(m)] + list(range(n)), max_rank)


def minimal_sets(universe: Iterable, accept) -> frozenset:
    """All ⊆-minimal subsets of ``universe`` satisfying the monotone predicate
    ``accept``, by splitting on one element at a time and pruning branches
    whose largest candidate is already rejected."""
    universe = tuple(sorted(set(universe)))
    memo: dict = {}

    def ok(s: frozenset) -> bool:
        if s not in memo:
            memo[s] = accept(s)
        return memo[s]

    def rec(base: frozenset, rest: tuple) -> list:
        if not ok(base | frozenset(rest)):
            return []
        if ok(base):
            return [base]
        e, tail = rest[0], rest[1:]
        without = rec(base, tail)
        with_e = rec(base | {e}, tail)
        return without + [s for s in with_e if not any(w <= s for w in without)]

    return frozenset(rec(frozenset(), universe))


def minimal_sets_by_enumeration(universe: Iterable, accept) -> frozenset:
    """Reference version of :func:`minimal_sets` trying every subset."""
    return minimize(t for t in _all_summaries(tuple(sorted(set(universe)))) if accept(t))
