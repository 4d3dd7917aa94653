import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opgames import gamefile
from opgames.intcat import IntObject
from opgames.opg import (In, InterfaceMismatch, InvalidGame, Out, as_int_morphism,
                         embed_classical, from_int_morphism, identity_game, is_equivalent,
                         make_game, opg_int, par, permutation_game, random_game,
                         random_general_game, seq, swap_game, to_dot, trace_game, validate,
                         validation_errors)
from support import bounce_game, chain_game, fan_in_game, fan_out_game, looped_chain_game


def rgame(rng, a, b, m, n_max=4):
    return random_game(rng, a, b, rng.randint(1, n_max), m)


# -- validation ---------------------------------------------------------------

def test_bounce_game_is_valid():
    g = validate(bounce_game())
    assert (g.n_entries, g.n_exits) == (1, 2)


def test_identity_game_is_valid():
    g = validate(identity_game(3))
    assert g.edges == {(In(a), Out(a)) for a in range(3)}
    assert identity_game(0).edges == frozenset()


def test_two_edges_out_of_an_entry():
    g = make_game((1, 0, 1, 0), 1, [("a", "E", 0), ("b", "E", 0)],
                  [(In(0), "a"), (In(0), "b"), ("a", Out(0))])
    with pytest.raises(InvalidGame) as exc:
        validate(g)
    assert any("entry uniqueness" in e for e in exc.value.errors)


def test_missing_exit_edge():
    g = make_game((1, 0, 1, 0), 1, [("a", "E", 0)], [(In(0), "a")])
    assert any("exit uniqueness" in e for e in validation_errors(g))


def test_priority_overflow():
    g = make_game((1, 0, 1, 0), 1, [("a", "E", 2)], [(In(0), "a"), ("a", Out(0))])
    assert any("priority overflow" in e for e in validation_errors(g))


def test_dangling_endpoint():
    g = make_game((1, 0, 1, 0), 1, [("a", "E", 0)],
                  [(In(0), "a"), ("a", Out(0)), ("a", "ghost")])
    assert any("dangling edge endpoint" in e for e in validation_errors(g))


# -- equivalence ----------------------------------------------------------------

def test_game_is_equivalent_to_itself():
    assert is_equivalent(bounce_game(), bounce_game())


def test_renamed_copy_is_equivalent():
    renamed = make_game((1, 1, 1, 0), 2, [("y", "A", 2), ("x", "E", 1)],
                        [(In(0), "x"), ("x", Out(1)), ("x", "y"), ("y", "x"), ("y", Out(0))])
    assert is_equivalent(bounce_game(), renamed)


def test_swapped_priorities_are_not_equivalent():
    swapped = make_game((1, 1, 1, 0), 2, [("a", "E", 2), ("b", "A", 1)],
                        [(In(0), "a"), ("a", Out(1)), ("a", "b"), ("b", "a"), ("b", Out(0))])
    assert not is_equivalent(bounce_game(), swapped)


def test_open_ends_are_fixed_by_equivalence():
    assert not is_equivalent(bounce_game(), bounce_game().relabel(exit_perm=[1, 0]))


# -- the monoidal structure -------------------------------------------------

def test_fan_in_then_fan_out():
    assert is_equivalent(seq(fan_in_game(), fan_out_game()), chain_game())


def test_swap_2_1_wiring():
    assert swap_game(2, 1).edges == {(In(0), Out(1)), (In(1), Out(2)), (In(2), Out(0))}


def test_looped_chain_is_a_trace_of_the_chain():
    assert is_equivalent(trace_game(1, chain_game()), looped_chain_game())


def test_parallel_composition_of_chains():
    # the upper game keeps 1, 2, 3 and 1', 2'; the lower one gets 4, 5 and 3'
    expected = make_game((5, 0, 3, 0), 3,
                         [("a", "A", 3), ("b", "E", 2), ("c", "A", 3), ("d", "E", 2)],
                         [(In(0), "a"), (In(1), "a"), (In(2), "a"), ("a", "b"),
                          ("b", Out(0)), ("b", Out(1)),
                          (In(3), "c"), (In(4), "c"), ("c", "d"), ("d", "c"), ("d", Out(2))])
    assert is_equivalent(par(chain_game(), looped_chain_game()), expected)


def test_seq_rejects_mismatched_interfaces():
    with pytest.raises(InterfaceMismatch):
        seq(identity_game(2), identity_game(3))
    with pytest.raises(InterfaceMismatch):
        seq(identity_game(1, 1), identity_game(1, 2))


@pytest.mark.parametrize("seed", range(40))
def test_category_laws(seed):
    rng = random.Random(seed)
    m = rng.randint(0, 2)
    a, b, c, d = (rng.randint(0, 3) for _ in range(4))
    f, g, h = rgame(rng, a, b, m), rgame(rng, b, c, m), rgame(rng, c, d, m)
    assert is_equivalent(seq(identity_game(a, m), f), f)
    assert is_equivalent(seq(f, identity_game(b, m)), f)
    assert is_equivalent(seq(seq(f, g), h), seq(f, seq(g, h)))
    for x in (seq(f, g), seq(seq(f, g), h)):
        assert validation_errors(x) == []


@pytest.mark.parametrize("seed", range(40))
def test_monoidal_laws(seed):
    rng = random.Random(seed)
    m = rng.randint(0, 2)
    a, b, c, d = (rng.randint(0, 2) for _ in range(4))
    f, g = rgame(rng, a, b, m), rgame(rng, b, c, m)
    h, k = rgame(rng, c, d, m), rgame(rng, d, a, m)
    empty = identity_game(0, m)
    assert is_equivalent(par(f, empty), f)
    assert is_equivalent(par(empty, f), f)
    assert is_equivalent(par(par(f, g), h), par(f, par(g, h)))
    assert is_equivalent(par(seq(f, g), seq(h, k)), seq(par(f, h), par(g, k)))
    assert is_equivalent(par(identity_game(a, m), identity_game(b, m)), identity_game(a + b, m))


@pytest.mark.parametrize("seed", range(40))
def test_symmetry(seed):
    rng = random.Random(seed)
    m = rng.randint(0, 2)
    a, b, c, d = (rng.randint(0, 2) for _ in range(4))
    f, g = rgame(rng, a, b, m), rgame(rng, c, d, m)
    assert is_equivalent(seq(swap_game(a, c, m), swap_game(c, a, m)), identity_game(a + c, m))
    # naturality of the swap
    assert is_equivalent(seq(par(f, g), swap_game(b, d, m)),
                         seq(swap_game(a, c, m), par(g, f)))
    # the hexagon, in its strict form
    assert is_equivalent(swap_game(a, c + d, m),
                         seq(par(swap_game(a, c, m), identity_game(d, m)),
                             par(identity_game(c, m), swap_game(a, d, m))))


def test_degenerate_swaps_are_identities():
    assert is_equivalent(swap_game(0, 3), identity_game(3))
    assert is_equivalent(swap_game(2, 0), identity_game(2))


# -- trace axioms -----------------------------------------------------------

@pytest.mark.parametrize("n", range(4))
def test_yanking(n):
    assert is_equivalent(trace_game(n, swap_game(n, n)), identity_game(n))


@pytest.mark.parametrize("seed", range(40))
def test_trace_axioms(seed):
    rng = random.Random(seed)
    m = rng.randint(0, 2)
    l, l2, a, b = (rng.randint(0, 2) for _ in range(4))
    f = rgame(rng, l + a, l + b, m)
    # vanishing
    assert is_equivalent(trace_game(0, f), f)
    h = rgame(rng, l2 + l + a, l2 + l + b, m)
    assert is_equivalent(trace_game(l2 + l, h), trace_game(l, trace_game(l2, h)))
    # superposing
    g = rgame(rng, b, a, m)
    assert is_equivalent(par(trace_game(l, f), g), trace_game(l, par(f, g)))
    # naturality in the open ends
    pre, post = rgame(rng, a, a, m), rgame(rng, b, b, m)
    lhs = trace_game(l, seq(seq(par(identity_game(l, m), pre), f),
                            par(identity_game(l, m), post)))
    assert is_equivalent(lhs, seq(seq(pre, trace_game(l, f)), post))
    # sliding through the fed-back wires
    f2 = rgame(rng, l + a, l2 + b, m)
    k = rgame(rng, l2, l, m) if l2 or l else identity_game(0, m)
    assert is_equivalent(trace_game(l, seq(f2, par(k, identity_game(b, m)))),
                         trace_game(l2, seq(par(k, identity_game(a, m)), f2)))
    for x in (trace_game(l, f), trace_game(l2 + l, h)):
        assert validation_errors(x) == []


def test_trace_interface_check():
    with pytest.raises(InterfaceMismatch):
        trace_game(2, identity_game(1))


def test_closed_feedback_loop_is_dropped():
    t = trace_game(1, identity_game(1))
    assert t.edges == frozenset() and (t.m_r, t.n_r) == (0, 0)
    # a position fed only through the traced wire becomes a self-loop
    g = make_game((2, 0, 2, 0), 1, [("a", "E", 1)],
                  [(In(0), "a"), ("a", Out(0)), (In(1), Out(1))])
    assert trace_game(1, g).edges == {("a", "a"), (In(0), Out(0))}


# -- the compact closed category OPG_M --------------------------------------

def test_general_game_round_trips_through_int_view():
    g = bounce_game()
    f = as_int_morphism(g)
    assert (f.dom, f.cod) == (IntObject(1, 1), IntObject(1, 0))
    assert (f.body.m_r, f.body.n_r) == (1, 2)
    assert from_int_morphism(f) == g


def test_int_unit_at_r_is_identity():
    cat = opg_int(1)
    unit = cat.cup(IntObject(1, 0))
    assert (unit.dom, unit.cod) == (IntObject(0, 0), IntObject(1, 1))
    assert is_equivalent(unit.body, identity_game(1, 1))


@given(st.randoms(use_true_random=False), st.integers(0, 2))
@settings(max_examples=30, deadline=None)
def test_int_composition_is_associative_and_unital(rng, m):
    cat = opg_int(m)
    objs = [IntObject(rng.randint(0, 1), rng.randint(0, 1)) for _ in range(4)]

    def morph(x, y):
        body = random_game(rng, x.pos + y.neg, y.pos + x.neg, rng.randint(1, 3), m)
        return cat.check(type(cat.identity(x))(x, y, body))

    f, g, h = (morph(objs[i], objs[i + 1]) for i in range(3))
    assert cat.equal(cat.compose(cat.compose(f, g), h), cat.compose(f, cat.compose(g, h)))
    assert cat.equal(cat.compose(cat.identity(objs[0]), f), f)
    assert cat.equal(cat.compose(f, cat.identity(objs[1])), f)


# -- classical games --------------------------------------------------------

def test_embed_single_loop():
    g = embed_classical([("v", "E", 0)], [("v", "v")], "v", 0)
    assert (g.m_r, g.m_l, g.n_r, g.n_l) == (1, 0, 0, 0)
    assert g.n_exits == 0
    assert g.edges == {(In(0), "v"), ("v", "v")}


def test_embed_unknown_position():
    with pytest.raises(ValueError):
        embed_classical([("v", "E", 0)], [], "w", 0)


# -- random generation and export -------------------------------------------

@given(st.randoms(use_true_random=False), st.integers(0, 3), st.integers(0, 3),
       st.integers(0, 6), st.integers(0, 3))
def test_random_games_are_valid(rng, a, b, n, m):
    if n == 0 and a != b:
        n = 1
    g = random_game(rng, a, b, n, m)
    assert validation_errors(g) == []
    assert (g.m_r, g.n_r, len(g.positions)) == (a, b, n)


@given(st.randoms(use_true_random=False))
def test_random_general_games_keep_their_interface(rng):
    ifc = tuple(rng.randint(0, 2) for _ in range(4))
    g = random_general_game(rng, ifc, rng.randint(1, 4), 2)
    assert g.interface() == ifc
    assert validation_errors(g) == []


def test_permutation_game_rejects_non_permutations():
    with pytest.raises(ValueError):
        permutation_game([0, 0])


def test_dot_export():
    dot = to_dot(bounce_game())
    assert dot.startswith("digraph opg {")
    assert "in1" in dot and "out2" in dot


@given(st.randoms(use_true_random=False))
def test_game_file_round_trip(rng):
    ifc = tuple(rng.randint(0, 2) for _ in range(4))
    g = random_general_game(rng, ifc, rng.randint(1, 5), 3)
    assert is_equivalent(gamefile.loads(gamefile.dumps(g)), g)
