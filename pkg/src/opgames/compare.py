"""Randomised agreement suites shared by the CLI and the tests.

Every case draws from its own generator seeded with ``"<seed>/<suite>/<i>"``
so a failure can be replayed on its own.
"""
from __future__ import annotations

import random
from collections.abc import Callable, Iterator
from dataclasses import dataclass

from .kleisli import SemMorphism, kleisli_compose
from .opg import (OpenParityGame, make_game, random_game, seq, trace_game,
                  validation_errors)
from .realize import realize
from .semantics import interpret_sem, tr_gm
from .terms import Par, Seq, Term, pretty, random_term, typecheck
from .winning import wr, wr_oracle

WrImpl = Callable[[OpenParityGame], SemMorphism]


@dataclass
class Failure:
    suite: str
    case: int
    seed: str
    detail: str

    def report(self) -> str:
        return f"[{self.suite}] case {self.case} (seed {self.seed!r}) failed\n{self.detail}"


def case_rng(seed: int, suite: str, i: int) -> tuple[random.Random, str]:
    key = f"{seed}/{suite}/{i}"
    return random.Random(key), key


# -- triangle ---------------------------------------------------------------

def triangle_holds(t: Term, max_rank: int, impl: WrImpl = wr) -> bool:
    game = realize(t, max_rank)
    return interpret_sem(t, max_rank).body == impl(game)


def subterms(t: Term) -> Iterator[Term]:
    if isinstance(t, Seq):
        yield from subterms(t.first)
        yield from subterms(t.second)
    elif isinstance(t, Par):
        yield from subterms(t.left)
        yield from subterms(t.right)
    yield t


def minimize_term(t: Term, fails: Callable[[Term], bool]) -> Term:
    """Smallest failing subterm, by printed length."""
    failing = [s for s in subterms(t) if fails(s)]
    return min(failing, key=lambda s: len(pretty(s))) if failing else t


def triangle_suite(seed: int, count: int, size: int, max_rank: int,
                   impl: WrImpl = wr, max_word: int = 3) -> Iterator[Failure | None]:
    for i in range(count):
        rng, key = case_rng(seed, "triangle", i)
        m = rng.randint(0, max_rank)
        t = random_term(rng, rng.randint(1, max(size, 1)), m, max_word)
        if triangle_holds(t, m, impl):
            yield None
            continue
        small = minimize_term(t, lambda s: not triangle_holds(s, m, impl))
        dom, cod = typecheck(small)
        yield Failure("triangle", i, key,
                      f"term: {pretty(small)}\ntype: {dom or 'ε'} -> {cod or 'ε'}, M={m}\n"
                      f"semantic: {interpret_sem(small, m).body}\n"
                      f"winning:  {impl(realize(small, m))}")


# -- functoriality and trace ------------------------------------------------

def minimize_game(g: OpenParityGame, fails: Callable[[OpenParityGame], bool]) -> OpenParityGame:
    """Greedy shrinking: drop optional edges and unreachable positions, lower priorities."""
    changed = True
    while changed:
        changed = False
        for e in sorted(g.edges, key=str):
            h = _replace(g, edges=g.edges - {e})
            if not validation_errors(h) and fails(h):
                g, changed = h, True
                break
        else:
            for p in g.positions:
                used = any(p.name in e for e in g.edges)
                if not used:
                    h = _replace(g, positions=tuple(x for x in g.positions if x != p))
                    if fails(h):
                        g, changed = h, True
                        break
                if p.prio > 0:
                    lowered = tuple(
                        (x.name, x.role, x.prio - 1 if x == p else x.prio) for x in g.positions)
                    h = make_game(g.interface(), g.max_rank, lowered, g.edges)
                    if fails(h):
                        g, changed = h, True
                        break
    return g


def _replace(g: OpenParityGame, **kw) -> OpenParityGame:
    fields = dict(m_r=g.m_r, m_l=g.m_l, n_r=g.n_r, n_l=g.n_l, max_rank=g.max_rank,
                  positions=g.positions, edges=g.edges)
    fields.update(kw)
    return OpenParityGame(**fields)


def functoriality_suite(seed: int, count: int, size: int, max_rank: int,
                        impl: WrImpl = wr) -> Iterator[Failure | None]:
    for i in range(count):
        rng, key = case_rng(seed, "functoriality", i)
        m = rng.randint(0, max_rank)
        a, b, c = (rng.randint(0, 3) for _ in range(3))
        ga = random_game(rng, a, b, rng.randint(1, max(size, 1)), m)
        gb = random_game(rng, b, c, rng.randint(1, max(size, 1)), m)
        l = rng.randint(0, 2)
        gc = random_game(rng, l + a, l + b, rng.randint(1, max(size, 1)), m)

        def seq_fails(x, y):
            return impl(seq(x, y)) != kleisli_compose(impl(x), impl(y))

        def trace_fails(x):
            return impl(trace_game(l, x)) != tr_gm(l, impl(x))

        if seq_fails(ga, gb):
            ga = minimize_game(ga, lambda x: seq_fails(x, gb))
            gb = minimize_game(gb, lambda y: seq_fails(ga, y))
            yield Failure("functoriality", i, key,
                          f"A = {ga}\nB = {gb}\nW(A;B) = {impl(seq(ga, gb))}\n"
                          f"W(A);W(B) = {kleisli_compose(impl(ga), impl(gb))}")
        elif trace_fails(gc):
            gc = minimize_game(gc, trace_fails)
            yield Failure("functoriality", i, key,
                          f"trace of l = {l} ends\nA = {gc}\nW(tr A) = {impl(trace_game(l, gc))}\n"
                          f"tr W(A) = {tr_gm(l, impl(gc))}")
        else:
            yield None


# -- oracle agreement -------------------------------------------------------

def oracle_suite(seed: int, count: int, size: int, max_rank: int,
                 impl: WrImpl = wr) -> Iterator[Failure | None]:
    size = min(size, 4)
    for i in range(count):
        rng, key = case_rng(seed, "oracle", i)
        m = rng.randint(0, max_rank)
        g = random_game(rng, rng.randint(0, 3), rng.randint(0, 3),
                        rng.randint(1, max(size, 1)), m, max_extra_edges=8)

        def fails(x):
            return impl(x) != wr_oracle(x)

        if fails(g):
            g = minimize_game(g, fails)
            yield Failure("oracle", i, key,
                          f"A = {g}\narena:  {impl(g)}\noracle: {wr_oracle(g)}")
        else:
            yield None


SUITES = {
    "triangle": triangle_suite,
    "functoriality": functoriality_suite,
    "oracle": oracle_suite,
}


def run_compare(seed: int, count: int, size: int, max_rank: int,
                suites=tuple(SUITES), impl: WrImpl = wr) -> tuple[dict, list[Failure]]:
    """Run the named suites; returns per-suite case counts and all failures."""
    counts, failures = {}, []
    for name in suites:
        n = 0
        for outcome in SUITES[name](seed, count, size, max_rank, impl=impl):
            n += 1
            if outcome is not None:
                failures.append(outcome)
        counts[name] = n
    return counts, failures
