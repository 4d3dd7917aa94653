"""Plays, strategies and the winning-position functor.

Strategies are memoryless over extended states ``(m, q)`` where ``m`` is the
largest priority met so far and ``q`` the current position.  Winning with
summary targets is positional on that arena, so nothing is lost for
denotations.
"""
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import networkx as nx

from .arena import Arena, has_cycle_with_max_parity, solve
from .intcat import IntMorphism, IntObject
from .kleisli import SemMorphism, kleisli_compose, minimal_sets, minimize
from .opg import In, OpenParityGame, Out, seq, trace_game
from .roles import Role
from .semantics import tr_gm


class _Lose:
    def __repr__(self) -> str:
        return "LOSE"


LOSE = _Lose()


# -- plays ------------------------------------------------------------------

@dataclass(frozen=True)
class Play:
    """A maximal play: ``stem`` followed, if nonempty, by ``cycle`` forever."""

    stem: tuple
    cycle: tuple = ()

    @property
    def is_infinite(self) -> bool:
        return bool(self.cycle)


def induced_play(g: OpenParityGame, a: int, tau_e: dict, tau_a: dict) -> Play:
    """The play from entry ``a`` when both players follow their memoryless
    tables, keyed by extended state ``("S", m, q)``.  A position whose table has
    no entry ends the play there."""
    trail = [In(a)]
    node = g.entry_target(a)
    m = g.prio(node)
    seen: dict = {}
    while not isinstance(node, Out):
        state = ("S", m, node)
        if state in seen:
            k = seen[state]
            return Play(tuple(trail[:k]), tuple(trail[k:]))
        seen[state] = len(trail)
        trail.append(node)
        table = tau_e if g.info[node].role is Role.E else tau_a
        if state not in table:
            return Play(tuple(trail))
        node = table[state]
        if node not in g.succ[trail[-1]]:
            raise ValueError(f"illegal move {trail[-1]} -> {node}")
        m = max(m, g.prio(node))
    trail.append(node)
    return Play(tuple(trail))


def deplay(g: OpenParityGame, play: Play):
    """Winner of a play, or its pending outcome ``(m, j)``."""
    if play.is_infinite:
        top = max(g.prio(x) for x in play.cycle)
        return Role.E if top % 2 == 0 else Role.A
    last = play.stem[-1]
    if isinstance(last, Out):
        return (max(g.prio(x) for x in play.stem), last.index)
    return g.info[last].role.opponent


# -- extended arena ---------------------------------------------------------

def _step(g: OpenParityGame, m: int, target):
    if isinstance(target, Out):
        return ("X", m, target.index)
    return ("S", max(m, g.prio(target)), target)


def extended_arena(g: OpenParityGame) -> tuple[Arena, list, dict]:
    """States ``("S", m, q)``; exit outcomes ``("X", m, j)`` are terminals
    to be decided per candidate summary.  Returns the arena, the start node
    of every entry, and the terminal of every reachable outcome."""
    arena = Arena()
    terminals: dict = {}
    starts = [_step(g, 0, g.entry_target(a)) for a in range(g.n_entries)]
    todo = list(starts)
    while todo:
        node = todo.pop()
        if node in arena.owner:
            continue
        if node[0] == "X":
            arena.add_node(node, Role.E, 0)
            terminals[(node[1], node[2])] = node
            continue
        _, m, q = node
        info = g.info[q]
        arena.add_node(node, info.role, info.prio)
        for t in g.succ[q]:
            nxt = _step(g, m, t)
            todo.append(nxt)
            arena.moves[node].append(nxt)
    return arena, starts, terminals


def wr_arena(g: OpenParityGame) -> SemMorphism:
    body = g.as_rightward()
    arena, starts, terminals = extended_arena(body)
    cache: dict = {}

    def winners(t: frozenset) -> dict:
        if t not in cache:
            arena.terminal = {node: (Role.E if s in t else Role.A)
                              for s, node in terminals.items()}
            cache[t] = solve(arena)
        return cache[t]

    families = [minimal_sets(terminals, lambda t, s=s: winners(t)[s] is Role.E)
                for s in starts]
    return SemMorphism(body.n_entries, body.n_exits, body.max_rank, tuple(families))


# -- brute-force oracle -----------------------------------------------------

def _reachable(g: OpenParityGame, start, tau_e: dict):
    """States reachable when ∃ follows ``tau_e`` and ∀ plays anything; also
    the first ∃-state met that ``tau_e`` leaves undecided."""
    graph = nx.DiGraph()
    graph.add_node(start)
    todo, undecided = [start], None
    while todo:
        node = todo.pop(0)
        if node[0] == "X":
            continue
        _, m, q = node
        if g.info[q].role is Role.E and g.succ[q]:
            if node not in tau_e:
                undecided = undecided or node
                continue
            targets = [tau_e[node]]
        else:
            targets = g.succ[q]
        for t in targets:
            nxt = _step(g, m, t)
            if nxt not in graph:
                todo.append(nxt)
            graph.add_edge(node, nxt)
    return graph, undecided


def destr_oracle(g: OpenParityGame, a: int, tau_e: dict):
    """Denotation of entry ``a`` under ``tau_e`` (keyed by ``("S", m, q)``
    states, values are successor positions or exits): ``LOSE`` or the set
    of reachable outcomes ``(m, j)``."""
    start = _step(g, 0, g.entry_target(a))
    graph, undecided = _reachable(g, start, tau_e)
    if undecided is not None:
        raise ValueError(f"strategy has no move at reachable state {undecided}")
    for node in graph:
        if node[0] == "S" and g.info[node[2]].role is Role.E and not g.succ[node[2]]:
            return LOSE
    prio = {v: (g.prio(v[2]) if v[0] == "S" else 0) for v in graph}
    if has_cycle_with_max_parity(graph, prio, 1):
        return LOSE
    return frozenset((v[1], v[2]) for v in graph if v[0] == "X")


def memoryless_strategies(g: OpenParityGame, a: int):
    """Every ∃-table defined exactly on the states it makes reachable from ``a``."""
    start = _step(g, 0, g.entry_target(a))
    tau: dict = {}

    def rec():
        _, undecided = _reachable(g, start, tau)
        if undecided is None:
            yield dict(tau)
            return
        for t in g.succ[undecided[2]]:
            tau[undecided] = t
            yield from rec()
        del tau[undecided]

    yield from rec()


def wr_oracle(g: OpenParityGame) -> SemMorphism:
    body = g.as_rightward()
    families = []
    for a in range(body.n_entries):
        dens = [destr_oracle(body, a, tau) for tau in memoryless_strategies(body, a)]
        families.append(minimize(d for d in dens if d is not LOSE))
    return SemMorphism(body.n_entries, body.n_exits, body.max_rank, tuple(families))


# -- the functor ------------------------------------------------------------

def wr(g: OpenParityGame, method: str = "arena") -> SemMorphism:
    if method == "arena":
        return wr_arena(g)
    if method == "oracle":
        return wr_oracle(g)
    raise ValueError(f"unknown method {method!r}")


def wm(g: OpenParityGame, method: str = "arena") -> IntMorphism:
    """Winning positions of a general game as a morphism of the Int completion."""
    return IntMorphism(IntObject(g.m_r, g.m_l), IntObject(g.n_r, g.n_l), wr(g, method))


def classify_antichain(family) -> str:
    if frozenset() in family:
        return "winning"
    if not family:
        return "losing"
    return "pending"


def classify(g: OpenParityGame, a: int, method: str = "arena") -> str:
    if not 0 <= a < g.n_entries:
        raise IndexError(f"entry {a} out of range 0..{g.n_entries - 1}")
    return classify_antichain(wr(g, method).antichains[a])


def functoriality_check(a: OpenParityGame, b: OpenParityGame,
                        impl: Callable[[OpenParityGame], SemMorphism] = wr) -> bool:
    return impl(seq(a, b)) == kleisli_compose(impl(a), impl(b))


def trace_check(l: int, g: OpenParityGame,
                impl: Callable[[OpenParityGame], SemMorphism] = wr) -> bool:
    return impl(trace_game(l, g)) == tr_gm(l, impl(g))
