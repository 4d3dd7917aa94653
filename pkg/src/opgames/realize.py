"""Realization of terms as open parity games, and the converse encoder."""
from __future__ import annotations

from functools import lru_cache

from .intcat import IntMorphism, IntObject
from .opg import (In, OpenParityGame, Out, from_int_morphism, make_game, opg_int,
                  validate)
from .roles import Role
from .terms import (Cap, Cup, Gen, Id, Term, Valuation, block_swap_term, interpret,
                    max_priority, par_all, permutation_term, seq_all, typecheck)


def generator_game(n_in: int, n_out: int, role: Role, prio: int, max_rank: int,
                   interface: tuple[int, int, int, int] | None = None) -> OpenParityGame:
    """One position fed by every entry and leading to every exit."""
    interface = interface or (n_in, 0, n_out, 0)
    edges = [(In(i), 0) for i in range(n_in)] + [(0, Out(j)) for j in range(n_out)]
    return make_game(interface, max_rank, [(0, role, prio)], edges)


def opg_valuation(max_rank: int) -> Valuation:
    cat = opg_int(max_rank)

    def gen(w: str, u: str, role: Role, prio: int) -> IntMorphism:
        dom = IntObject(w.count("r"), w.count("l"))
        cod = IntObject(u.count("r"), u.count("l"))
        body = generator_game(dom.pos + cod.neg, cod.pos + dom.neg, role, prio, max_rank)
        return IntMorphism(dom, cod, body)

    return Valuation(cat, IntObject(1, 0), gen)


def realize(t: Term, max_rank: int | None = None) -> OpenParityGame:
    m = max_priority(t) if max_rank is None else max_rank
    typecheck(t, m)
    return validate(from_int_morphism(interpret(t, opg_valuation(m))))


# -- encoding ---------------------------------------------------------------

def _probe(n_in: int, n_out: int) -> Term:
    """``r^n_in -> r^n_out``: entry ``i`` dead-ends in a node of priority
    ``i``; exit ``j`` is fed by a node of priority ``n_in + j``."""
    parts = [Gen("r", "", Role.E, i) for i in range(n_in)]
    parts += [Gen("", "r", Role.E, n_in + j) for j in range(n_out)]
    return par_all(*parts) if parts else Id("")


def _read_probe(g: OpenParityGame, n_in: int) -> tuple[list[int], list[int]]:
    """For each end of ``g``, the probe wire it is attached to."""
    entry_map = [g.prio(g.entry_target(e)) for e in range(g.n_entries)]
    exit_map = [g.prio(g.exit_source(e)) - n_in for e in range(g.n_exits)]
    return entry_map, exit_map


def trace_term(k: int, n_in: int, n_out: int, body: Term) -> Term:
    """Trace of ``body : r^k r^n_in -> r^k r^n_out`` over the first ``k``
    wires, written with cups and caps."""
    if k == 0:
        return body
    rk, lk = "r" * k, "l" * k
    return seq_all(par_all(Cup(lk), Id("r" * n_in)),
                   par_all(Id(lk), body),
                   par_all(Cap(rk), Id("r" * n_out)))


@lru_cache(maxsize=None)
def _feedback_perm(k: int) -> tuple[int, ...]:
    """Where :func:`trace_term` sends output wire ``j``: back into input ``rho[j]``."""
    g = realize(trace_term(k, 0, 0, _probe(k, k)), 2 * k)
    rho = [0] * k
    for s, t in g.edges:
        rho[g.prio(s) - k] = g.prio(t)
    return tuple(rho)


def _bend(n_in: int, n_out: int, ifc: tuple[int, int, int, int], f: Term) -> Term:
    """Wrap ``f : r^n_in -> r^n_out`` into ``r^m_r l^m_l -> r^n_r l^n_l``."""
    m_r, m_l, n_r, n_l = ifc
    return seq_all(
        par_all(Cup("l" * n_l), Id("r" * m_r), Id("l" * m_l)),
        par_all(Id("l" * n_l), block_swap_term("r" * n_l, "r" * m_r), Id("l" * m_l)),
        par_all(Id("l" * n_l), f, Id("l" * m_l)),
        par_all(Id("l" * n_l), Id("r" * n_r), Cap("l" * m_l)),
        block_swap_term("l" * n_l, "r" * n_r),
    )


@lru_cache(maxsize=None)
def _bend_maps(ifc: tuple[int, int, int, int]) -> tuple[tuple, tuple]:
    m_r, m_l, n_r, n_l = ifc
    n_in, n_out = m_r + n_l, n_r + m_l
    g = realize(_bend(n_in, n_out, ifc, _probe(n_in, n_out)), n_in + n_out)
    entry_map, exit_map = _read_probe(g, n_in)
    return tuple(entry_map), tuple(exit_map)


def encode_rightward(g: OpenParityGame) -> Term:
    """Term ``r^n_in -> r^n_out`` whose realization is ``g``: one generator
    per position and one traced strand per edge."""
    if not g.is_rightward:
        raise ValueError("encode_rightward expects a rightward game")
    n_in, n_out = g.n_entries, g.n_exits
    names = [p.name for p in g.positions]
    edges = sorted(g.edges, key=lambda e: (_order(e[0], names), _order(e[1], names)))
    k = len(edges)
    if k == 0:
        return Id("")
    eid = {e: i for i, e in enumerate(edges)}
    in_edges = {q: [e for e in edges if e[1] == q] for q in names}
    out_edges = {q: [e for e in edges if e[0] == q] for q in names}

    # wires after the first permutation: generator inputs, exits, entries
    slot_in = {}
    for q in names:
        for e in in_edges[q]:
            slot_in[e] = len(slot_in)
    n_gen_in = len(slot_in)
    rho = _feedback_perm(k)
    perm_a = [0] * (k + n_in)
    for e in edges:  # fed-back strand of edge e carries the move along e
        if isinstance(e[1], Out):
            perm_a[rho[eid[e]]] = n_gen_in + e[1].index
        else:
            perm_a[rho[eid[e]]] = slot_in[e]
    for i in range(n_in):
        perm_a[k + i] = n_gen_in + n_out + i

    # wires after the generators: generator outputs, exits, entries
    perm_b = [0] * (k + n_out)
    pos = 0
    for q in names:
        for e in out_edges[q]:
            perm_b[pos] = eid[e]
            pos += 1
    for j in range(n_out):
        perm_b[pos + j] = k + j
    for i in range(n_in):
        perm_b[pos + n_out + i] = eid[(In(i), g.entry_target(i))]

    gens = [Gen("r" * len(in_edges[p.name]), "r" * len(out_edges[p.name]), p.role, p.prio)
            for p in g.positions]
    body = seq_all(permutation_term("r" * (k + n_in), perm_a),
                   par_all(*gens, Id("r" * (n_out + n_in))),
                   permutation_term("r" * (k + n_out), perm_b))
    return trace_term(k, n_in, n_out, body)


def _order(x, names):
    if isinstance(x, In):
        return (0, x.index)
    if isinstance(x, Out):
        return (2, x.index)
    return (1, names.index(x))


def encode(g: OpenParityGame) -> Term:
    """A term realizing ``g`` up to renaming of positions."""
    validate(g)
    if g.is_rightward:
        return encode_rightward(g)
    ifc = g.interface()
    entry_map, exit_map = _bend_maps(ifc)
    body = g.as_rightward().relabel(entry_map, exit_map)
    return _bend(g.n_entries, g.n_exits, ifc, encode_rightward(body))
