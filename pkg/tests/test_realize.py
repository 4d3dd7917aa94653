import random

import pytest

from opgames.opg import (In, Out, embed_classical, identity_game, is_equivalent, make_game,
                         random_general_game, swap_game, trace_game)
from opgames.realize import encode, generator_game, realize, trace_term
from opgames.roles import Role
from opgames.semantics import interpret_sem
from opgames.terms import (Id, block_swap_term, generators, parse, random_term, snake_terms,
                           typecheck)
from opgames.winning import wr
from support import (WORKED_RANK, WORKED_TERMS, bounce_game, chain_game, fan_in_game,
                     fan_out_game, looped_chain_game)

CHAIN_TERM = "n[rrr,r]{A,3} ; n[r,rr]{E,2}"
BENT_TERM = "cup(l) || id(r) ; id(l) || n[rr,lr]{E,2} ; id(l) || cap(r)"


def interface_of(t):
    dom, cod = typecheck(t)
    return (dom.count("r"), dom.count("l"), cod.count("r"), cod.count("l"))


# -- realization ------------------------------------------------------------

def test_generator_game():
    g = generator_game(2, 1, Role.A, 1, 2)
    assert is_equivalent(g, make_game((2, 0, 1, 0), 2, [("x", "A", 1)],
                                      [(In(0), "x"), (In(1), "x"), ("x", Out(0))]))


def test_identity_term():
    assert is_equivalent(realize(parse("id(r)")), identity_game(1))
    assert is_equivalent(realize(parse("id(rr)")), identity_game(2))


def test_symmetry_term():
    assert is_equivalent(realize(parse("sym(r,r)")), swap_game(1, 1))
    assert is_equivalent(realize(block_swap_term("rr", "r")), swap_game(2, 1))


def test_fan_generators():
    assert is_equivalent(realize(parse("n[rrr,r]{A,3}")), fan_in_game())
    assert is_equivalent(realize(parse("n[r,rr]{E,2}"), 3), fan_out_game())


def test_chain_term():
    assert is_equivalent(realize(parse(CHAIN_TERM)), chain_game())


def test_traced_term_gives_the_looped_chain():
    g = realize(trace_term(1, 2, 1, parse(CHAIN_TERM)))
    assert is_equivalent(g, looped_chain_game())
    assert is_equivalent(g, trace_game(1, chain_game()))


def test_bent_term():
    expected = make_game((1, 0, 0, 1), 2, [("q", "E", 2)],
                         [(In(0), "q"), (In(1), "q"), ("q", "q")])
    assert is_equivalent(realize(parse(BENT_TERM)), expected)


def test_worked_example_has_three_positions():
    g = realize(parse(WORKED_TERMS["A"]), WORKED_RANK)
    assert g.interface() == (1, 0, 0, 0)
    assert len(g.positions) == 3
    assert wr(g).sorted_antichain(0) == [[]]


@pytest.mark.parametrize("w", ["", "r", "l", "rl", "lr", "rr", "ll", "rrl", "lrl", "lll"])
def test_snakes_realize_to_identities(w):
    for t in snake_terms(w):
        g = realize(t, 0)
        assert g.interface() == interface_of(t)
        assert not g.positions
        assert is_equivalent(g.as_rightward(), identity_game(len(w)))


@pytest.mark.parametrize("seed", range(40))
def test_realization_has_the_term_interface(seed):
    rng = random.Random(seed)
    t = random_term(rng, rng.randint(0, 5), 2, 3)
    g = realize(t, 2)
    assert g.interface() == interface_of(t)
    assert len(g.positions) == len(generators(t))


@pytest.mark.parametrize("seed", range(30))
def test_realize_then_solve_matches_semantics(seed):
    rng = random.Random(seed)
    t = random_term(rng, rng.randint(1, 4), 2, 2)
    assert wr(realize(t, 2)) == interpret_sem(t, 2).body


# -- encoding ---------------------------------------------------------------

def round_trips(g) -> bool:
    return is_equivalent(realize(encode(g), g.max_rank), g)


def test_encode_identity():
    assert round_trips(identity_game(1))
    assert round_trips(identity_game(0))


def test_encode_bounce_game():
    t = encode(bounce_game())
    assert len(generators(t)) == 2
    assert interface_of(t) == (1, 1, 1, 0)
    assert round_trips(bounce_game())


@pytest.mark.parametrize("build", [fan_in_game, fan_out_game, chain_game, looped_chain_game])
def test_encode_small_games(build):
    assert round_trips(build())


def test_encode_a_classical_loop():
    g = embed_classical([("v", "A", 1)], [("v", "v")], "v", 1)
    assert round_trips(g)


def test_encode_a_plain_wire_and_a_swap():
    assert round_trips(swap_game(1, 2))
    assert round_trips(identity_game(2).with_interface(1, 1, 1, 1))


def test_encode_ignores_position_names():
    g = bounce_game()
    renamed = make_game((1, 1, 1, 0), 2, [("x", "E", 1), ("y", "A", 2)],
                        [(In(0), "x"), ("x", Out(1)), ("x", "y"), ("y", "x"), ("y", Out(0))])
    assert encode(g) == encode(renamed)


@pytest.mark.parametrize("seed", range(40))
def test_encode_random_general_games(seed):
    rng = random.Random(seed)
    ifc = tuple(rng.randint(0, 2) for _ in range(4))
    m = rng.randint(0, 2)
    n = rng.randint(0 if ifc[0] + ifc[3] == ifc[1] + ifc[2] else 1, 4)
    assert round_trips(random_general_game(rng, ifc, n, m))


def test_encoded_term_is_the_identity_of_nothing_for_an_empty_game():
    assert encode(identity_game(0)) == Id("")
