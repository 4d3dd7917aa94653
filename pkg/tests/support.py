"""Small helpers shared by the test modules."""
from __future__ import annotations

from opgames.kleisli import SemMorphism
from opgames.opg import In, Out, make_game

# filled by test_acceptance, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def prop_labels(dom: str, cod: str) -> tuple[list[str], list[str]]:
    """Names of the ends of a ``dom -> cod`` morphism as drawn in a string
    diagram: ``"L<i>"`` for the i-th wire on the left boundary and
    ``"R<j>"`` for the j-th wire on the right.  Returned in the order the
    package indexes entries and exits."""
    entries = [f"L{i}" for i, c in enumerate(dom, 1) if c == "r"]
    entries += [f"R{j}" for j, c in enumerate(cod, 1) if c == "l"]
    exits = [f"R{j}" for j, c in enumerate(cod, 1) if c == "r"]
    exits += [f"L{i}" for i, c in enumerate(dom, 1) if c == "l"]
    return entries, exits


def labelled(dom: str, cod: str, max_rank: int, families: dict) -> SemMorphism:
    """Build a SemMorphism from antichains written with boundary labels,
    e.g. ``{"L1": [{(0, "R3")}]}``.  Unlisted entries get the empty family."""
    entries, exits = prop_labels(dom, cod)
    unknown = set(families) - set(entries)
    assert not unknown, f"not entries of {dom} -> {cod}: {unknown}"
    fams = []
    for e in entries:
        fams.append([frozenset((p, exits.index(x)) for p, x in s)
                     for s in families.get(e, [])])
    return SemMorphism.build(len(entries), len(exits), max_rank, fams)


# -- the worked example -----------------------------------------------------
# A = A1 ; A2 ; A3 is a term r -> ε.  Expected values use boundary labels.

WORKED_TERMS = {
    "A1": "cup(l) || id(r)",
    "A2": "n[lrr,rl]{E,1}",
    "A3": "n[r,r]{A,1} || n[l,l]{E,2} ; cap(l)",
}
WORKED_TERMS["A2A1"] = f"{WORKED_TERMS['A1']} ; {WORKED_TERMS['A2']}"
WORKED_TERMS["A"] = f"{WORKED_TERMS['A2A1']} ; ({WORKED_TERMS['A3']})"
WORKED_RANK = 2

WORKED_VALUES = {
    "A1": ("r", "lrr", {"L1": [{(0, "R3")}], "R1": [{(0, "R2")}]}),
    "A2": ("lrr", "rl", {i: [{(1, "L1")}, {(1, "R1")}] for i in ("L2", "L3", "R2")}),
    "A3": ("rl", "", {"L1": [{(2, "L2")}]}),
    "A2A1": ("r", "rl", {"L1": [{(1, "R1")}], "R2": [{(1, "R1")}]}),
    "A": ("r", "", {"L1": [set()]}),
}


def worked_expected(name: str) -> SemMorphism:
    dom, cod, fams = WORKED_VALUES[name]
    return labelled(dom, cod, WORKED_RANK, fams)


# -- small games used across the tests --------------------------------------

def bounce_game():
    # a:(E,1) leaves by the left exit out2 or hands over to b:(A,2), which may
    # bounce back or leave by the right exit out1
    return make_game((1, 1, 1, 0), 2, [("a", "E", 1), ("b", "A", 2)],
                     [(In(0), "a"), ("a", Out(1)), ("a", "b"), ("b", "a"), ("b", Out(0))])


def fan_in_game():
    return make_game((3, 0, 1, 0), 3, [("a", "A", 3)],
                     [(In(0), "a"), (In(1), "a"), (In(2), "a"), ("a", Out(0))])


def fan_out_game():
    return make_game((1, 0, 2, 0), 3, [("b", "E", 2)],
                     [(In(0), "b"), ("b", Out(0)), ("b", Out(1))])


def chain_game():
    return make_game((3, 0, 2, 0), 3, [("a", "A", 3), ("b", "E", 2)],
                     [(In(0), "a"), (In(1), "a"), (In(2), "a"), ("a", "b"),
                      ("b", Out(0)), ("b", Out(1))])


def looped_chain_game():
    # the composite with its top exit fed back into its top entry
    return make_game((2, 0, 1, 0), 3, [("a", "A", 3), ("b", "E", 2)],
                     [(In(0), "a"), (In(1), "a"), ("a", "b"), ("b", "a"), ("b", Out(0))])
