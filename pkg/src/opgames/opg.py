"""Open parity games and their traced symmetric monoidal structure.

A game with interface ``(m_r, m_l) -> (n_r, n_l)`` has entries
``In(0) .. In(m_r + n_l - 1)`` (rightward ends on the left, then leftward ends
on the right) and exits ``Out(0) .. Out(n_r + m_l - 1)`` (rightward ends on
the right, then leftward ends on the left).  Indices are 0-based here; the
text formats print them 1-based.
"""
from __future__ import annotations

import random
from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
from networkx.algorithms import isomorphism

from .roles import Role


@dataclass(frozen=True, order=True)
class In:
    index: int

    def __str__(self) -> str:
        return f"in{self.index + 1}"


@dataclass(frozen=True, order=True)
class Out:
    index: int

    def __str__(self) -> str:
        return f"out{self.index + 1}"


@dataclass(frozen=True)
class Position:
    name: Hashable
    role: Role
    prio: int


class InvalidGame(ValueError):
    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


class InterfaceMismatch(ValueError):
    pass


@dataclass(frozen=True)
class OpenParityGame:
    m_r: int
    m_l: int
    n_r: int
    n_l: int
    max_rank: int
    positions: tuple = ()
    edges: frozenset = field(default_factory=frozenset)

    @property
    def n_entries(self) -> int:
        return self.m_r + self.n_l

    @property
    def n_exits(self) -> int:
        return self.n_r + self.m_l

    @property
    def is_rightward(self) -> bool:
        return self.m_l == 0 and self.n_l == 0

    @cached_property
    def info(self) -> dict:
        return {p.name: p for p in self.positions}

    @cached_property
    def succ(self) -> dict:
        out: dict = {p.name: [] for p in self.positions}
        for i in range(self.n_entries):
            out[In(i)] = []
        for s, t in sorted(self.edges, key=_edge_key):
            out.setdefault(s, []).append(t)
        return out

    @cached_property
    def pred(self) -> dict:
        out: dict = {Out(j): [] for j in range(self.n_exits)}
        for p in self.positions:
            out[p.name] = []
        for s, t in sorted(self.edges, key=_edge_key):
            out.setdefault(t, []).append(s)
        return out

    def entry_target(self, i: int):
        return self.succ[In(i)][0]

    def exit_source(self, j: int):
        return self.pred[Out(j)][0]

    def prio(self, node) -> int:
        return self.info[node].prio if node in self.info else 0

    def as_rightward(self) -> "OpenParityGame":
        """Same graph seen as a rightward game ``m_r + n_l -> n_r + m_l``."""
        return OpenParityGame(self.n_entries, 0, self.n_exits, 0, self.max_rank,
                              self.positions, self.edges)

    def with_interface(self, m_r: int, m_l: int, n_r: int, n_l: int) -> "OpenParityGame":
        if m_r + n_l != self.n_entries or n_r + m_l != self.n_exits:
            raise InterfaceMismatch("interface does not fit the open ends")
        return OpenParityGame(m_r, m_l, n_r, n_l, self.max_rank, self.positions, self.edges)

    def with_max_rank(self, max_rank: int) -> "OpenParityGame":
        return OpenParityGame(self.m_r, self.m_l, self.n_r, self.n_l, max_rank,
                              self.positions, self.edges)

    def relabel(self, entry_perm=None, exit_perm=None) -> "OpenParityGame":
        """Rename ends: ``In(i)`` becomes ``In(entry_perm[i])``, likewise exits."""
        def ren(x):
            if isinstance(x, In) and entry_perm is not None:
                return In(entry_perm[x.index])
            if isinstance(x, Out) and exit_perm is not None:
                return Out(exit_perm[x.index])
            return x
        return OpenParityGame(self.m_r, self.m_l, self.n_r, self.n_l, self.max_rank,
                              self.positions,
                              frozenset((ren(s), ren(t)) for s, t in self.edges))

    def interface(self) -> tuple[int, int, int, int]:
        return (self.m_r, self.m_l, self.n_r, self.n_l)

    def __str__(self) -> str:
        return dumps_summary(self)


def _edge_key(e):
    return tuple(_node_key(x) for x in e)


def _node_key(x):
    if isinstance(x, In):
        return (0, x.index, "")
    if isinstance(x, Out):
        return (2, x.index, "")
    return (1, 0, repr(x))


def dumps_summary(g: OpenParityGame) -> str:
    pos = ", ".join(f"{p.name}:({p.role},{p.prio})" for p in g.positions)
    edges = ", ".join(f"{s}->{t}" for s, t in sorted(g.edges, key=_edge_key))
    return f"OPG({g.interface()}, M={g.max_rank}, [{pos}], {{{edges}}})"


def make_game(interface: tuple[int, int, int, int], max_rank: int,
              positions: Iterable[tuple], edges: Iterable[tuple]) -> OpenParityGame:
    """Convenience constructor; positions are ``(name, role, prio)`` triples
    and edges ``(src, dst)`` pairs using :class:`In`/:class:`Out` for ends."""
    ps = tuple(Position(n, Role(r), p) for n, r, p in positions)
    return OpenParityGame(*interface, max_rank, ps, frozenset(edges))


def validation_errors(g: OpenParityGame) -> list[str]:
    errors = []
    names = [p.name for p in g.positions]
    if len(set(names)) != len(names):
        errors.append("duplicate position names")
    internal = set(names)
    for p in g.positions:
        if isinstance(p.name, (In, Out)):
            errors.append(f"position name {p.name} clashes with an open end")
        if not 0 <= p.prio <= g.max_rank:
            errors.append(f"priority overflow at {p.name}: {p.prio} not in 0..{g.max_rank}")
    out_count = {i: 0 for i in range(g.n_entries)}
    in_count = {j: 0 for j in range(g.n_exits)}
    for s, t in g.edges:
        if isinstance(s, In) and s.index in out_count:
            out_count[s.index] += 1
        elif s not in internal:
            errors.append(f"dangling edge endpoint: source {s}")
        if isinstance(t, Out) and t.index in in_count:
            in_count[t.index] += 1
        elif t not in internal:
            errors.append(f"dangling edge endpoint: target {t}")
    for i, c in out_count.items():
        if c != 1:
            errors.append(f"entry uniqueness: {In(i)} has {c} outgoing edges")
    for j, c in in_count.items():
        if c != 1:
            errors.append(f"exit uniqueness: {Out(j)} has {c} incoming edges")
    return errors


def validate(g: OpenParityGame) -> OpenParityGame:
    errors = validation_errors(g)
    if errors:
        raise InvalidGame(errors)
    return g


# -- traced symmetric monoidal structure on rightward games -----------------

def _renumbered(g: OpenParityGame, offset: int) -> tuple[dict, list[Position]]:
    names = {p.name: offset + k for k, p in enumerate(g.positions)}
    return names, [Position(names[p.name], p.role, p.prio) for p in g.positions]


def _check_rank(a: OpenParityGame, b: OpenParityGame) -> None:
    if a.max_rank != b.max_rank:
        raise InterfaceMismatch(f"maximal ranks differ: {a.max_rank} vs {b.max_rank}")


def identity_game(n: int, max_rank: int = 0) -> OpenParityGame:
    return OpenParityGame(n, 0, n, 0, max_rank, (),
                          frozenset((In(a), Out(a)) for a in range(n)))


def permutation_game(perm: Iterable[int], max_rank: int = 0) -> OpenParityGame:
    """Wires ``In(a) -> Out(perm[a])``."""
    perm = list(perm)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a permutation: {perm}")
    return OpenParityGame(len(perm), 0, len(perm), 0, max_rank, (),
                          frozenset((In(a), Out(b)) for a, b in enumerate(perm)))


def swap_game(m: int, n: int, max_rank: int = 0) -> OpenParityGame:
    return permutation_game([n + a for a in range(m)] + list(range(n)), max_rank)


def seq(a: OpenParityGame, b: OpenParityGame) -> OpenParityGame:
    """``a`` then ``b``: each exit of ``a`` is spliced with the matching entry of ``b``."""
    _check_rank(a, b)
    if not (a.is_rightward and b.is_rightward):
        raise InterfaceMismatch("seq expects rightward games")
    if a.n_r != b.m_r:
        raise InterfaceMismatch(f"cannot compose {a.m_r}->{a.n_r} with {b.m_r}->{b.n_r}")
    na, pa = _renumbered(a, 0)
    nb, pb = _renumbered(b, len(pa))

    def src_a(s):
        return s if isinstance(s, In) else na[s]

    def dst_b(t):
        return t if isinstance(t, Out) else nb[t]

    edges = set()
    for s, t in a.edges:
        if not isinstance(t, Out):
            edges.add((src_a(s), na[t]))
    for s, t in b.edges:
        if not isinstance(s, In):
            edges.add((nb[s], dst_b(t)))
    for j in range(a.n_r):
        edges.add((src_a(a.exit_source(j)), dst_b(b.entry_target(j))))
    return OpenParityGame(a.m_r, 0, b.n_r, 0, a.max_rank, tuple(pa + pb), frozenset(edges))


def par(a: OpenParityGame, b: OpenParityGame) -> OpenParityGame:
    _check_rank(a, b)
    if not (a.is_rightward and b.is_rightward):
        raise InterfaceMismatch("par expects rightward games")
    na, pa = _renumbered(a, 0)
    nb, pb = _renumbered(b, len(pa))

    def ren_b(x):
        if isinstance(x, In):
            return In(x.index + a.m_r)
        if isinstance(x, Out):
            return Out(x.index + a.n_r)
        return nb[x]

    edges = {(na.get(s, s), na.get(t, t)) for s, t in a.edges}
    edges |= {(ren_b(s), ren_b(t)) for s, t in b.edges}
    return OpenParityGame(a.m_r + b.m_r, 0, a.n_r + b.n_r, 0, a.max_rank,
                          tuple(pa + pb), frozenset(edges))


def trace_game(l: int, g: OpenParityGame) -> OpenParityGame:
    """Feed exits ``0..l-1`` back into entries ``0..l-1``."""
    if not g.is_rightward or g.m_r < l or g.n_r < l:
        raise InterfaceMismatch(f"cannot trace {l} ends of a {g.m_r}->{g.n_r} game")

    def resolve(t):
        seen = set()
        while isinstance(t, Out) and t.index < l:
            if t.index in seen:
                return None  # closed feedback loop
            seen.add(t.index)
            t = g.entry_target(t.index)
        return t

    def shift(x):
        if isinstance(x, In):
            return In(x.index - l)
        if isinstance(x, Out):
            return Out(x.index - l)
        return x

    edges = set()
    for s, t in g.edges:
        if isinstance(s, In) and s.index < l:
            continue
        t2 = resolve(t)
        if t2 is not None:
            edges.add((shift(s), shift(t2)))
    return OpenParityGame(g.m_r - l, 0, g.n_r - l, 0, g.max_rank, g.positions,
                          frozenset(edges))


def is_equivalent(a: OpenParityGame, b: OpenParityGame) -> bool:
    """``a ∼ b``: a bijection of internal positions preserving roles,
    priorities and edges while fixing every open end."""
    if a.interface() != b.interface() or a.max_rank != b.max_rank:
        return False
    if len(a.positions) != len(b.positions) or len(a.edges) != len(b.edges):
        return False
    ga, gb = _labelled_graph(a), _labelled_graph(b)
    matcher = isomorphism.DiGraphMatcher(
        ga, gb, node_match=lambda x, y: x["label"] == y["label"])
    return matcher.is_isomorphic()


def _labelled_graph(g: OpenParityGame) -> nx.DiGraph:
    graph = nx.DiGraph()
    for i in range(g.n_entries):
        graph.add_node(In(i), label=("in", i))
    for j in range(g.n_exits):
        graph.add_node(Out(j), label=("out", j))
    for p in g.positions:
        graph.add_node(("q", p.name), label=(p.role.value, p.prio))

    def node(x):
        return x if isinstance(x, (In, Out)) else ("q", x)

    graph.add_edges_from((node(s), node(t)) for s, t in g.edges)
    return graph


# -- the category instances -------------------------------------------------

class OPGCategory:
    """Rightward games with maximal rank ``max_rank`` as a strict traced
    symmetric monoidal category; objects are natural numbers."""

    def __init__(self, max_rank: int):
        self.max_rank = max_rank

    def dom(self, f: OpenParityGame) -> int:
        return f.m_r

    def cod(self, f: OpenParityGame) -> int:
        return f.n_r

    def identity(self, n: int) -> OpenParityGame:
        return identity_game(n, self.max_rank)

    def compose(self, f, g):
        return seq(f, g)

    def tensor(self, f, g):
        return par(f, g)

    def swap(self, m: int, n: int):
        return swap_game(m, n, self.max_rank)

    def trace(self, l: int, f):
        return trace_game(l, f)

    def equal(self, f, g) -> bool:
        return is_equivalent(f, g)


def opg_category(max_rank: int) -> OPGCategory:
    return OPGCategory(max_rank)


def opg_int(max_rank: int):
    from .intcat import IntCategory
    return IntCategory(OPGCategory(max_rank))


def as_int_morphism(g: OpenParityGame):
    """View a general game as a morphism of Int over rightward games."""
    from .intcat import IntMorphism, IntObject
    return IntMorphism(IntObject(g.m_r, g.m_l), IntObject(g.n_r, g.n_l), g.as_rightward())


def from_int_morphism(f) -> OpenParityGame:
    return f.body.with_interface(f.dom.pos, f.dom.neg, f.cod.pos, f.cod.neg)


def embed_classical(positions: Iterable[tuple], edges: Iterable[tuple], x: Hashable,
                    max_rank: int) -> OpenParityGame:
    """Closed parity game plus a start position, as a game with one entry wired to ``x``."""
    positions = list(positions)
    if x not in {p[0] for p in positions}:
        raise ValueError(f"{x!r} is not a position of the game")
    return validate(make_game((1, 0, 0, 0), max_rank, positions,
                              list(edges) + [(In(0), x)]))


# -- random generation and export -------------------------------------------

def random_game(rng: random.Random, n_entries: int, n_exits: int, n_positions: int,
                max_rank: int, max_extra_edges: int | None = None) -> OpenParityGame:
    """Random valid rightward game.  Every open end is wired to a random
    position (or straight across), plus some internal edges."""
    if n_positions == 0:
        if n_entries != n_exits:
            raise ValueError("a game without positions needs as many entries as exits")
        perm = list(range(n_exits))
        rng.shuffle(perm)
        return permutation_game(perm, max_rank)
    names = list(range(n_positions))
    positions = [(q, rng.choice("EA"), rng.randint(0, max_rank)) for q in names]
    edges = set()
    pool = list(range(n_exits))
    rng.shuffle(pool)
    entry_targets = []
    for _ in range(n_entries):
        if pool and rng.random() < 0.2:
            entry_targets.append(Out(pool.pop()))
        else:
            entry_targets.append(rng.choice(names))
    used_exits = {t.index for t in entry_targets if isinstance(t, Out)}
    for i, t in enumerate(entry_targets):
        edges.add((In(i), t))
    for j in range(n_exits):
        if j not in used_exits:
            edges.add((rng.choice(names), Out(j)))
    budget = max_extra_edges if max_extra_edges is not None else 2 * n_positions
    for _ in range(rng.randint(0, budget)):
        edges.add((rng.choice(names), rng.choice(names)))
    return validate(make_game((n_entries, 0, n_exits, 0), max_rank, positions, edges))


def random_general_game(rng: random.Random, interface: tuple[int, int, int, int],
                        n_positions: int, max_rank: int,
                        max_extra_edges: int | None = None) -> OpenParityGame:
    m_r, m_l, n_r, n_l = interface
    body = random_game(rng, m_r + n_l, n_r + m_l, n_positions, max_rank, max_extra_edges)
    return body.with_interface(m_r, m_l, n_r, n_l)


def random_closed_game(rng: random.Random, n_positions: int, max_rank: int,
                       edge_prob: float = 0.3) -> tuple[list, list]:
    """Positions ``(name, role, prio)`` and edges of a closed game; dead ends allowed."""
    positions = [(q, rng.choice("EA"), rng.randint(0, max_rank)) for q in range(n_positions)]
    edges = [(p, q) for p in range(n_positions) for q in range(n_positions)
             if rng.random() < edge_prob]
    return positions, edges


def to_dot(g: OpenParityGame, name: str = "opg") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    ids = {}
    for i in range(g.n_entries):
        ids[In(i)] = f"in{i + 1}"
        lines.append(f'  in{i + 1} [shape=point, xlabel="{In(i)}"];')
    for j in range(g.n_exits):
        ids[Out(j)] = f"out{j + 1}"
        lines.append(f'  out{j + 1} [shape=point, xlabel="{Out(j)}"];')
    for k, p in enumerate(g.positions):
        ids[p.name] = f"q{k}"
        shape = "diamond" if p.role is Role.E else "box"
        lines.append(f'  q{k} [shape={shape}, label="{p.name} ({p.role},{p.prio})"];')
    for s, t in sorted(g.edges, key=_edge_key):
        lines.append(f"  {ids[s]} -> {ids[t]};")
    lines.append("}")
    return "\n".join(lines)
