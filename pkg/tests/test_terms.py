import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opgames.roles import Role
from opgames.terms import (Cap, Cup, Empty, Gen, Id, Par, Seq, Sym, TermSyntaxError,
                           TermTypeError, block_swap_term, derived_cap, derived_cup, dlf, drf,
                           dual, generators, parse, permutation_term, pretty, random_term,
                           snake_terms, typecheck)

BENT_TERM = "cup(l) || id(r) ; id(l) || n[rr,lr]{E,2} ; id(l) || cap(r)"


def test_word_helpers():
    assert dual("rrl") == "rll"
    assert (drf("rlr"), dlf("rlr")) == (2, 1)
    assert dual("") == ""


# -- typing -----------------------------------------------------------------

def test_bent_term_goes_from_r_to_l():
    assert typecheck(parse(BENT_TERM)) == ("r", "l")


def test_identity_type():
    assert typecheck(Id("rl")) == ("rl", "rl")
    assert typecheck(parse("id(r)")) == ("r", "r")


def test_colour_mismatch_in_composition():
    t = Seq(Gen("r", "r", Role.E, 0), Gen("l", "l", Role.E, 0))
    with pytest.raises(TermTypeError, match="composition mismatch"):
        typecheck(t)


def test_priority_above_max_rank():
    with pytest.raises(TermTypeError, match="priority"):
        typecheck(Gen("r", "r", Role.A, 3), max_rank=2)


def test_cup_and_cap_types():
    assert typecheck(Cup("r")) == ("", "rl")
    assert typecheck(Cap("r")) == ("lr", "")
    assert typecheck(Cup("rl")) == ("", "rlrl")
    assert typecheck(Sym("r", "l")) == ("rl", "lr")


# -- parsing and printing ---------------------------------------------------

def test_parse_generator():
    assert parse("n[rr,lr]{E,2}") == Gen("rr", "lr", Role.E, 2)


def test_parse_structural_atoms():
    assert parse("empty") == Empty()
    assert parse("sym(r,l)") == Sym("r", "l")
    assert parse("id()") == Id("")
    assert parse("cup(r) ; cap(l)") == Seq(Cup("r"), Cap("l"))


def test_semicolon_binds_looser_than_bars():
    t = parse("id(r) || id(l) ; id(rl)")
    assert t == Seq(Par(Id("r"), Id("l")), Id("rl"))


def test_both_operators_associate_left():
    assert parse("id(r) ; id(r) ; id(r)") == Seq(Seq(Id("r"), Id("r")), Id("r"))
    assert parse("id(r) || id(l) || id(r)") == Par(Par(Id("r"), Id("l")), Id("r"))


def test_whitespace_is_ignored():
    assert parse("  n[ r , r ] { A , 1 }\n ;\tid( r )") == parse("n[r,r]{A,1};id(r)")


def test_snake_round_trips():
    first, _ = snake_terms("r")
    assert parse(pretty(first)) == first


def test_missing_priority_is_a_syntax_error():
    with pytest.raises(TermSyntaxError) as exc:
        parse("n[rr,lr]{E}")
    assert exc.value.line == 1 and exc.value.column > 1


@pytest.mark.parametrize("text", ["id(x)", "sym(r)", "(id(r)", "id(r) ;", "cup(r) cap(r)",
                                  "n[r,r]{Q,1}", ""])
def test_malformed_inputs(text):
    with pytest.raises(TermSyntaxError):
        parse(text)


def test_error_position_on_a_later_line():
    with pytest.raises(TermSyntaxError) as exc:
        parse("id(r) ;\n  id(q)")
    assert exc.value.line == 2


@given(st.integers(0, 10**6), st.integers(0, 6), st.integers(0, 2), st.integers(0, 3))
@settings(max_examples=200)
def test_parse_inverts_print(seed, size, m, w):
    t = random_term(seed, size, m, w)
    assert parse(pretty(t)) == t


# -- random terms -----------------------------------------------------------

def test_size_zero_is_an_identity():
    assert isinstance(random_term(7, 0, 2, 3), Id)


@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(0, 2), st.integers(1, 3))
@settings(max_examples=200)
def test_random_terms_are_well_typed_and_bounded(seed, size, m, w):
    t = random_term(seed, size, m, w)
    typecheck(t, m)
    gens = generators(t)
    assert len(gens) == size
    assert all(len(g.dom) <= w and len(g.cod) <= w for g in gens)


def test_random_terms_are_deterministic_per_seed():
    assert random_term(11, 4, 2, 3) == random_term(11, 4, 2, 3)
    assert random_term(random.Random(11), 4, 2, 3) == random_term(11, 4, 2, 3)


def test_random_terms_cover_the_syntax():
    seen = Counter()
    for seed in range(300):
        text = pretty(random_term(seed, random.Random(seed).randint(1, 6), 2, 3))
        for key in ("{E", "{A", "cup(", "cap(", "sym(", "||", ";"):
            seen[key] += key in text
    assert all(seen[k] > 0 for k in ("{E", "{A", "cup(", "cap(", "sym(", "||", ";")), seen


# -- derived structure ------------------------------------------------------

def test_derived_cup_of_empty_word():
    assert derived_cup("") == Empty()
    assert derived_cap("") == Empty()


def test_derived_cup_of_l_is_a_swapped_cup():
    assert derived_cup("l") == Seq(Cup("r"), Sym("r", "l"))


@pytest.mark.parametrize("w", ["", "r", "l", "rl", "lr", "rr", "ll", "rrl", "lrl", "lll"])
def test_derived_cups_and_caps_have_the_right_type(w):
    assert typecheck(derived_cup(w)) == ("", w + dual(w))
    assert typecheck(derived_cap(w)) == (dual(w) + w, "")
    first, second = snake_terms(w)
    assert typecheck(first) == (w, w)
    assert typecheck(second) == (dual(w), dual(w))


def test_permutation_term_typing():
    t = permutation_term("rrl", [2, 0, 1])
    assert typecheck(t) == ("rrl", "rlr")
    assert permutation_term("rl", [0, 1]) == Id("rl")
    assert typecheck(block_swap_term("rr", "l")) == ("rrl", "lrr")
    with pytest.raises(ValueError):
        permutation_term("rr", [0, 0])
