"""Finite preorders, downward-closed relations and the comonads on them.

Relations are stored intensionally: a membership predicate plus, for every
source element, a finite list of elements generating the section
``{b | (a, b) in R}`` as a down-set.  That is what lets composites through
carriers such as ``!!A`` (far too large to enumerate) be decided exactly.
When both carriers are small the relation can be materialised with
:meth:`DcRel.pairs`.
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Hashable, Iterable
from functools import cached_property
from typing import Any


class CarrierMismatch(ValueError):
    pass


class FinPreord:
    """A finite preordered set.

    ``key`` identifies the carrier structurally; two preorders with the same
    key are the same object of the category.  Elements are produced lazily,
    so nested constructions can be built without materialising them.
    """

    def __init__(self, key: Hashable, leq: Callable[[Any, Any], bool],
                 enumerate_: Callable[[], Iterable[Any]]):
        self.key = key
        self.leq = leq
        self._enumerate = enumerate_

    @cached_property
    def elements(self) -> tuple:
        return tuple(self._enumerate())

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinPreord) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"FinPreord({self.key!r})"


def finpreord(elements: Iterable[Hashable], order: Iterable[tuple] = (),
              name: Hashable = None) -> FinPreord:
    """Preorder generated by ``order`` (pairs ``(x, y)`` meaning x <= y).

    The reflexive-transitive closure is taken, so ``order`` may be any
    generating set.
    """
    elems = tuple(elements)
    if len(set(elems)) != len(elems):
        raise ValueError("preorder elements must be distinct")
    index = set(elems)
    below = {x: {x} for x in elems}
    for x, y in order:
        if x not in index or y not in index:
            raise ValueError(f"order pair {(x, y)!r} outside the carrier")
        below[y].add(x)
    changed = True
    while changed:
        changed = False
        for y in elems:
            grown = set().union(*(below[x] for x in below[y]))
            if grown != below[y]:
                below[y] = grown
                changed = True
    leq_pairs = frozenset((x, y) for y in elems for x in below[y])
    key = name if name is not None else ("preord", elems, leq_pairs)
    return FinPreord(key, lambda x, y: (x, y) in leq_pairs, lambda: elems)


def discrete(elements: Iterable[Hashable]) -> FinPreord:
    elems = tuple(elements)
    return finpreord(elems, name=("discrete", elems))


def index_set(n: int) -> FinPreord:
    """The discrete preorder ``([n], =)`` on ``0 .. n-1``."""
    return discrete(range(n))


def unit_preord() -> FinPreord:
    return discrete(["*"])


def preord_product(a: FinPreord, b: FinPreord) -> FinPreord:
    """Cartesian product of FinScottL: tagged disjoint union, componentwise order."""

    def leq(x, y):
        return x[0] == y[0] and (a.leq(x[1], y[1]) if x[0] == 0 else b.leq(x[1], y[1]))

    def elements():
        yield from ((0, x) for x in a.elements)
        yield from ((1, y) for y in b.elements)

    return FinPreord(("product", a.key, b.key), leq, elements)


def untag(x):
    """Explicit tag erasure for elements of :func:`preord_product`."""
    return x[1]


def _subsets(elems: tuple) -> Iterable[frozenset]:
    for r in range(len(elems) + 1):
        for combo in itertools.combinations(elems, r):
            yield frozenset(combo)


class DcRel:
    """A downward-closed relation ``R ⊆ |src| × |dst|`` (a FinScottL morphism).

    ``contains(a, b)`` decides membership.  ``generators(a)`` returns elements
    of the section at ``a`` whose down-closure is the whole section.
    """

    def __init__(self, src: FinPreord, dst: FinPreord,
                 contains: Callable[[Any, Any], bool],
                 generators: Callable[[Any], Iterable[Any]]):
        self.src = src
        self.dst = dst
        self._contains = contains
        self._generators = generators

    @classmethod
    def from_pairs(cls, src: FinPreord, dst: FinPreord, pairs: Iterable[tuple]) -> "DcRel":
        pairs = frozenset(pairs)
        by_src: dict = {}
        for a, b in pairs:
            by_src.setdefault(a, []).append(b)
        return cls(src, dst, lambda a, b: (a, b) in pairs, lambda a: by_src.get(a, ()))

    def contains(self, a, b) -> bool:
        return self._contains(a, b)

    def generators(self, a) -> list:
        return list(dict.fromkeys(self._generators(a)))

    def pairs(self) -> frozenset:
        return frozenset((a, b) for a in self.src.elements for b in self.dst.elements
                         if self._contains(a, b))

    def is_downward_closed(self) -> bool:
        """The closure condition checked verbatim over the materialised carriers."""
        src, dst = self.src, self.dst
        pairs = self.pairs()
        for a, b in pairs:
            for a2 in src.elements:
                if not src.leq(a, a2):
                    continue
                for b2 in dst.elements:
                    if dst.leq(b2, b) and (a2, b2) not in pairs:
                        return False
        return True

    def __repr__(self) -> str:
        return f"DcRel({self.src!r} -> {self.dst!r})"


def rel_included(r: DcRel, s: DcRel) -> bool:
    """``r ⊆ s``; exact because sections of ``s`` are down-sets."""
    _check_same_type(r, s)
    return all(s.contains(a, g) for a in r.src.elements for g in r.generators(a))


def rel_equal(r: DcRel, s: DcRel) -> bool:
    return rel_included(r, s) and rel_included(s, r)


def _check_same_type(r: DcRel, s: DcRel) -> None:
    if r.src != s.src or r.dst != s.dst:
        raise CarrierMismatch(f"{r!r} and {s!r} have different types")


def rel_identity(a: FinPreord) -> DcRel:
    """``{(a', a) | a <= a'}``."""
    return DcRel(a, a, lambda x, y: a.leq(y, x), lambda x: [x])


def rel_compose(r: DcRel, s: DcRel) -> DcRel:
    """Relational composite, ``r`` first: ``(a, c)`` iff ``a r b s c`` for some b."""
    if r.dst != s.src:
        raise CarrierMismatch(f"cannot compose {r!r} with {s!r}")

    def contains(a, c):
        return any(s.contains(b, c) for b in r.generators(a))

    def generators(a):
        return [c for b in r.generators(a) for c in s.generators(b)]

    return DcRel(r.src, s.dst, contains, generators)


# -- finite powerset comonad ------------------------------------------------

def _pfin_leq(a: FinPreord):
    def leq(xs, ys):
        return all(any(a.leq(x, y) for y in ys) for x in xs)
    return leq


def pfin_obj(a: FinPreord) -> FinPreord:
    return FinPreord(("P", a.key), _pfin_leq(a), lambda: _subsets(a.elements))


def pfin_mor(r: DcRel) -> DcRel:
    """``{(X, Y) | for all y in Y there is x in X with x r y}``."""

    def contains(xs, ys):
        return all(any(r.contains(x, y) for x in xs) for y in ys)

    def generators(xs):
        return [frozenset(y for x in xs for y in r.generators(x))]

    return DcRel(pfin_obj(r.src), pfin_obj(r.dst), contains, generators)


def pfin_counit(a: FinPreord) -> DcRel:
    """``{(X, a) | a <= x for some x in X}``."""
    return DcRel(pfin_obj(a), a,
                 lambda xs, y: any(a.leq(y, x) for x in xs),
                 lambda xs: list(xs))


def pfin_comult(a: FinPreord) -> DcRel:
    """``{(X, {Y1..Yn}) | Y1 ∪ .. ∪ Yn <= X}``."""
    pa = pfin_obj(a)

    def contains(xs, yss):
        union = frozenset().union(*yss) if yss else frozenset()
        return pa.leq(union, xs)

    return DcRel(pa, pfin_obj(pa), contains, lambda xs: [frozenset([xs])])


# -- colouring comonad ------------------------------------------------------

def box_obj(a: FinPreord, max_rank: int) -> FinPreord:
    def leq(x, y):
        return x[0] == y[0] and a.leq(x[1], y[1])

    def elements():
        return ((p, x) for p in range(max_rank + 1) for x in a.elements)

    return FinPreord(("box", max_rank, a.key), leq, elements)


def box_mor(r: DcRel, max_rank: int) -> DcRel:
    def contains(x, y):
        return x[0] == y[0] and r.contains(x[1], y[1])

    def generators(x):
        return [(x[0], y) for y in r.generators(x[1])]

    return DcRel(box_obj(r.src, max_rank), box_obj(r.dst, max_rank), contains, generators)


def box_counit(a: FinPreord, max_rank: int) -> DcRel:
    """``{((0, a), a') | a' <= a}``."""
    return DcRel(box_obj(a, max_rank), a,
                 lambda x, y: x[0] == 0 and a.leq(y, x[1]),
                 lambda x: [x[1]] if x[0] == 0 else [])


def box_comult(a: FinPreord, max_rank: int) -> DcRel:
    """``{((max(p, q), a), (p, (q, a'))) | a' <= a}``."""
    ba = box_obj(a, max_rank)
    ranks = range(max_rank + 1)

    def contains(x, y):
        p, (q, inner) = y
        return x[0] == max(p, q) and a.leq(inner, x[1])

    def generators(x):
        r, elem = x
        return [(p, (q, elem)) for p in ranks for q in ranks if max(p, q) == r]

    return DcRel(ba, box_obj(ba, max_rank), contains, generators)


# -- the comonad !_M = P_fin . box_M ---------------------------------------

def lambda_dist(a: FinPreord, max_rank: int) -> DcRel:
    """Distributive law ``P box => box P``:
    ``{(X, (p, Y)) | every y in Y is below some a with (p, a) in X}``."""

    def contains(xs, y):
        p, ys = y
        return all(any(q == p and a.leq(v, u) for q, u in xs) for v in ys)

    def generators(xs):
        return [(p, frozenset(u for q, u in xs if q == p)) for p in range(max_rank + 1)]

    return DcRel(pfin_obj(box_obj(a, max_rank)), box_obj(pfin_obj(a), max_rank),
                 contains, generators)


def bang_obj(a: FinPreord, max_rank: int) -> FinPreord:
    return pfin_obj(box_obj(a, max_rank))


def bang_mor(r: DcRel, max_rank: int) -> DcRel:
    return pfin_mor(box_mor(r, max_rank))


def bang_counit(a: FinPreord, max_rank: int) -> DcRel:
    """``eps^P . (P * eps^box)``."""
    return rel_compose(pfin_mor(box_counit(a, max_rank)), pfin_counit(a))


def bang_comult(a: FinPreord, max_rank: int) -> DcRel:
    """``(P * lambda * box) . (delta^P * delta^box)``, horizontal composites
    expanded componentwise at ``a``."""
    ba = box_obj(a, max_rank)
    delta_pb = rel_compose(pfin_mor(box_comult(a, max_rank)),
                           pfin_comult(box_obj(ba, max_rank)))
    return rel_compose(delta_pb, pfin_mor(lambda_dist(ba, max_rank)))


def bang_comult_alt(a: FinPreord, max_rank: int) -> DcRel:
    """Same as :func:`bang_comult` with the other expansion of
    ``delta^P * delta^box`` (``PP(delta^box) . delta^P``)."""
    ba = box_obj(a, max_rank)
    delta_pb = rel_compose(pfin_comult(ba), pfin_mor(pfin_mor(box_comult(a, max_rank))))
    return rel_compose(delta_pb, pfin_mor(lambda_dist(ba, max_rank)))
