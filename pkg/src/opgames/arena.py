"""Finite parity arenas and a Zielonka solver.

Max-parity convention: an infinite play is won by the existential player
iff the largest priority seen infinitely often is even.  A player who has
to move but cannot loses, and terminal nodes carry an absolute verdict.
"""
from __future__ import annotations

from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field

import networkx as nx

from .roles import Role


@dataclass
class Arena:
    owner: dict = field(default_factory=dict)
    prio: dict = field(default_factory=dict)
    moves: dict = field(default_factory=dict)
    terminal: dict = field(default_factory=dict)  # node -> winning Role

    def add_node(self, node: Hashable, owner: Role, prio: int = 0,
                 terminal: Role | None = None) -> None:
        self.owner[node] = owner
        self.prio[node] = prio
        self.moves.setdefault(node, [])
        if terminal is not None:
            self.terminal[node] = terminal

    def add_move(self, src: Hashable, dst: Hashable) -> None:
        if src in self.terminal:
            raise ValueError(f"terminal node {src!r} cannot move")
        if dst not in self.moves[src]:
            self.moves[src].append(dst)

    @property
    def nodes(self) -> list:
        return list(self.owner)

    def to_dot(self) -> str:
        ids = {v: i for i, v in enumerate(self.owner)}
        lines = ["digraph arena {"]
        for v, i in ids.items():
            shape = "diamond" if self.owner[v] is Role.E else "box"
            label = f"{v} / {self.prio[v]}"
            if v in self.terminal:
                label += f" [{self.terminal[v]} wins]"
            lines.append(f'  n{i} [shape={shape}, label="{label}"];')
        for v, succ in self.moves.items():
            lines.extend(f"  n{ids[v]} -> n{ids[w]};" for w in succ)
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Solution:
    winner: dict      # node -> Role
    strategy: dict    # node -> successor, for nodes in their owner's region

    def region(self, role: Role) -> set:
        return {v for v, w in self.winner.items() if w is role}


class _Game:
    """Total arena on integers: sinks replace terminals and dead ends."""

    def __init__(self, arena: Arena):
        self.names = arena.nodes
        index = {v: i for i, v in enumerate(self.names)}
        n = len(self.names)
        self.win_e, self.win_a = n, n + 1
        self.owner = [arena.owner[v] is Role.E for v in self.names] + [True, True]
        self.prio = [arena.prio[v] for v in self.names] + [0, 1]
        self.succ: list[list[int]] = []
        for v in self.names:
            if v in arena.terminal:
                target = self.win_e if arena.terminal[v] is Role.E else self.win_a
                self.succ.append([target])
            elif not arena.moves[v]:
                self.succ.append([self.win_a if arena.owner[v] is Role.E else self.win_e])
            else:
                self.succ.append([index[w] for w in arena.moves[v]])
        self.succ += [[self.win_e], [self.win_a]]
        self.pred: list[list[int]] = [[] for _ in self.succ]
        for v, ws in enumerate(self.succ):
            for w in ws:
                self.pred[w].append(v)

    def attractor(self, player: bool, target: set, sub: set, strat: dict) -> set:
        attr = set(target)
        count = {v: sum(1 for w in self.succ[v] if w in sub) for v in sub}
        queue = list(target)
        while queue:
            w = queue.pop()
            for v in self.pred[w]:
                if v not in sub or v in attr:
                    continue
                if self.owner[v] == player:
                    attr.add(v)
                    strat[v] = w
                    queue.append(v)
                else:
                    count[v] -= 1
                    if count[v] == 0:
                        attr.add(v)
                        queue.append(v)
        return attr

    def zielonka(self, sub: set) -> tuple[set, set, dict]:
        """Winning regions (existential, universal) of the subgame plus
        memoryless strategies for both players on their regions."""
        if not sub:
            return set(), set(), {}
        top = max(self.prio[v] for v in sub)
        player = top % 2 == 0  # True: existential
        strat: dict = {}
        attr = self.attractor(player, {v for v in sub if self.prio[v] == top}, sub, strat)
        w_e, w_a, inner = self.zielonka(sub - attr)
        theirs = w_a if player else w_e
        if not theirs:
            strat.update(inner)
            for v in sub:
                if self.owner[v] == player and v not in strat:
                    strat[v] = next(w for w in self.succ[v] if w in sub)
            return (set(sub), set(), strat) if player else (set(), set(sub), strat)
        strat = {v: inner[v] for v in theirs if v in inner}
        back = self.attractor(not player, theirs, sub, strat)
        w_e2, w_a2, inner2 = self.zielonka(sub - back)
        strat.update(inner2)
        if player:
            return w_e2, w_a2 | back, strat
        return w_e2 | back, w_a2, strat


def solve_with_strategy(arena: Arena) -> Solution:
    game = _Game(arena)
    w_e, _, strat = game.zielonka(set(range(len(game.succ))))
    winner, strategy = {}, {}
    for i, v in enumerate(game.names):
        winner[v] = Role.E if i in w_e else Role.A
        if arena.owner[v] is winner[v] and v not in arena.terminal and arena.moves[v]:
            strategy[v] = game.names[strat[i]]
    return Solution(winner, strategy)


def solve(arena: Arena) -> dict:
    """Winner of every node."""
    return solve_with_strategy(arena).winner


def verify_strategy(arena: Arena, role: Role, region: Iterable, strategy: dict) -> bool:
    """Model check that ``strategy`` wins for ``role`` from every node of
    ``region``: plays stay inside, never reach a losing end, and every cycle
    of the restricted graph has a maximum of the right parity."""
    region = set(region)
    graph = nx.DiGraph()
    for v in region:
        graph.add_node(v)
        if v in arena.terminal:
            if arena.terminal[v] is not role:
                return False
            continue
        succ = arena.moves[v]
        if arena.owner[v] is role:
            if v not in strategy or strategy[v] not in succ:
                return False
            succ = [strategy[v]]
        elif not succ:
            continue  # opponent stuck
        for w in succ:
            if w not in region:
                return False
            graph.add_edge(v, w)
    bad_parity = 1 if role is Role.E else 0
    return not has_cycle_with_max_parity(graph, arena.prio, bad_parity)


def has_cycle_with_max_parity(graph: nx.DiGraph, prio, parity: int) -> bool:
    """Whether some cycle of ``graph`` has maximal priority of the given parity."""
    for p in sorted({prio[v] for v in graph if prio[v] % 2 == parity}):
        low = graph.subgraph([v for v in graph if prio[v] <= p])
        for comp in nx.strongly_connected_components(low):
            if not any(prio[v] == p for v in comp):
                continue
            if len(comp) > 1 or any(low.has_edge(v, v) for v in comp):
                return True
    return False
