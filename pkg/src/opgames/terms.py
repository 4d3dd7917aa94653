"""String-diagram terms over the colours ``r`` and ``l``.

Grammar (whitespace-insensitive)::

    term := par (";" par)*
    par  := atom ("||" atom)*
    atom := "n[" word "," word "]{" role "," nat "}" | "id(" word ")"
          | "sym(" colour "," colour ")" | "cup(" word ")" | "cap(" word ")"
          | "empty" | "(" term ")"

``;`` is diagrammatic composition (left operand first) and binds looser
than ``||``.  Both are left-associative.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Any, Callable

from .roles import Role

COLOURS = "rl"


def dual(w: str) -> str:
    return "".join("l" if c == "r" else "r" for c in reversed(w))


def drf(w: str) -> int:
    return w.count("r")


def dlf(w: str) -> int:
    return w.count("l")


def _check_word(w: str) -> str:
    if any(c not in COLOURS for c in w):
        raise ValueError(f"not a word over r/l: {w!r}")
    return w


# -- syntax -----------------------------------------------------------------

class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Gen(Term):
    dom: str
    cod: str
    role: Role
    prio: int


@dataclass(frozen=True)
class Id(Term):
    word: str


@dataclass(frozen=True)
class Sym(Term):
    left: str
    right: str


@dataclass(frozen=True)
class Cup(Term):
    word: str


@dataclass(frozen=True)
class Cap(Term):
    word: str


@dataclass(frozen=True)
class Empty(Term):
    pass


@dataclass(frozen=True)
class Seq(Term):
    first: Term
    second: Term


@dataclass(frozen=True)
class Par(Term):
    left: Term
    right: Term


def seq_all(*ts: Term) -> Term:
    out = ts[0]
    for t in ts[1:]:
        out = Seq(out, t)
    return out


def par_all(*ts: Term) -> Term:
    """Left-nested parallel composite; empty identities are dropped."""
    kept = [t for t in ts if t != Id("")]
    if not kept:
        return Id("")
    out = kept[0]
    for t in kept[1:]:
        out = Par(out, t)
    return out


class TermTypeError(TypeError):
    pass


def typecheck(t: Term, max_rank: int | None = None) -> tuple[str, str]:
    """Domain and codomain words of ``t``."""
    if isinstance(t, Gen):
        _check_word(t.dom), _check_word(t.cod)
        if t.prio < 0 or (max_rank is not None and t.prio > max_rank):
            raise TermTypeError(f"priority {t.prio} outside 0..{max_rank} in {pretty(t)}")
        return t.dom, t.cod
    if isinstance(t, Id):
        return _check_word(t.word), t.word
    if isinstance(t, Sym):
        if t.left not in ("r", "l") or t.right not in ("r", "l"):
            raise TermTypeError(f"sym expects two colours, got {pretty(t)}")
        return t.left + t.right, t.right + t.left
    if isinstance(t, Cup):
        _check_word(t.word)
        return "", t.word + dual(t.word)
    if isinstance(t, Cap):
        _check_word(t.word)
        return dual(t.word) + t.word, ""
    if isinstance(t, Empty):
        return "", ""
    if isinstance(t, Seq):
        d1, c1 = typecheck(t.first, max_rank)
        d2, c2 = typecheck(t.second, max_rank)
        if c1 != d2:
            raise TermTypeError(
                f"composition mismatch: {pretty(t.first)!s} ends in {c1 or 'ε'} "
                f"but {pretty(t.second)} starts at {d2 or 'ε'}")
        return d1, c2
    if isinstance(t, Par):
        d1, c1 = typecheck(t.left, max_rank)
        d2, c2 = typecheck(t.right, max_rank)
        return d1 + d2, c1 + c2
    raise TermTypeError(f"not a term: {t!r}")


def generators(t: Term) -> list[Gen]:
    if isinstance(t, Gen):
        return [t]
    if isinstance(t, Seq):
        return generators(t.first) + generators(t.second)
    if isinstance(t, Par):
        return generators(t.left) + generators(t.right)
    return []


def max_priority(t: Term) -> int:
    return max((g.prio for g in generators(t)), default=0)


# -- printing ---------------------------------------------------------------

def pretty(t: Term) -> str:
    return _pp_seq(t)


def _pp_seq(t: Term) -> str:
    if isinstance(t, Seq):
        return f"{_pp_seq(t.first)} ; {_pp_par(t.second)}"
    return _pp_par(t)


def _pp_par(t: Term) -> str:
    if isinstance(t, Par):
        return f"{_pp_par(t.left)} || {_pp_atom(t.right)}"
    return _pp_atom(t)


def _pp_atom(t: Term) -> str:
    if isinstance(t, (Seq, Par)):
        return f"({_pp_seq(t)})"
    if isinstance(t, Gen):
        return f"n[{t.dom},{t.cod}]{{{t.role.value},{t.prio}}}"
    if isinstance(t, Id):
        return f"id({t.word})"
    if isinstance(t, Sym):
        return f"sym({t.left},{t.right})"
    if isinstance(t, Cup):
        return f"cup({t.word})"
    if isinstance(t, Cap):
        return f"cap({t.word})"
    if isinstance(t, Empty):
        return "empty"
    raise TermTypeError(f"not a term: {t!r}")


# -- parsing ----------------------------------------------------------------

class TermSyntaxError(SyntaxError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


_TOKEN = re.compile(r"(\|\|)|([;()\[\]{},])|([A-Za-z]+)|(\d+)|(\S)")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, int]] = []
        for m in _TOKEN.finditer(text):
            if m.group(5):
                self._fail(f"unexpected character {m.group(5)!r}", m.start())
            self.tokens.append((m.group(0), m.start()))
        self.i = 0

    def _fail(self, message: str, offset: int):
        line = self.text.count("\n", 0, offset) + 1
        column = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        raise TermSyntaxError(message, line, column)

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def offset(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            self._fail("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        here = self.offset()
        got = self.peek()
        if got != tok:
            self._fail(f"expected {tok!r} but found {got if got is not None else 'end of input'!r}",
                       here)
        self.i += 1

    def word(self) -> str:
        tok = self.peek()
        if tok is not None and re.fullmatch(r"[rl]+", tok):
            self.i += 1
            return tok
        return ""

    def colour(self) -> str:
        here = self.offset()
        tok = self.take()
        if tok not in ("r", "l"):
            self._fail(f"expected a colour r or l, found {tok!r}", here)
        return tok

    def term(self) -> Term:
        t = self.par()
        while self.peek() == ";":
            self.i += 1
            t = Seq(t, self.par())
        return t

    def par(self) -> Term:
        t = self.atom()
        while self.peek() == "||":
            self.i += 1
            t = Par(t, self.atom())
        return t

    def atom(self) -> Term:
        here = self.offset()
        tok = self.take()
        if tok == "(":
            t = self.term()
            self.expect(")")
            return t
        if tok == "empty":
            return Empty()
        if tok == "n":
            self.expect("[")
            w = self.word()
            self.expect(",")
            u = self.word()
            self.expect("]")
            self.expect("{")
            role_at = self.offset()
            role = self.take()
            if role not in ("E", "A"):
                self._fail(f"expected role E or A, found {role!r}", role_at)
            self.expect(",")
            prio_at = self.offset()
            prio = self.take()
            if not prio.isdigit():
                self._fail(f"expected a priority, found {prio!r}", prio_at)
            self.expect("}")
            return Gen(w, u, Role(role), int(prio))
        if tok in ("id", "cup", "cap"):
            self.expect("(")
            w = self.word()
            self.expect(")")
            return {"id": Id, "cup": Cup, "cap": Cap}[tok](w)
        if tok == "sym":
            self.expect("(")
            c1 = self.colour()
            self.expect(",")
            c2 = self.colour()
            self.expect(")")
            return Sym(c1, c2)
        self._fail(f"unexpected token {tok!r}", here)


def parse(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek() is not None:
        p._fail(f"unexpected token {p.peek()!r}", p.offset())
    return t


# -- derived units and counits ----------------------------------------------

def derived_cup(w: str) -> Term:
    """``ε -> w · dual(w)`` from the primitive ``cup(r)``, symmetries and identities."""
    if w == "":
        return Empty()
    if w == "r":
        return Cup("r")
    if w == "l":
        return Seq(Cup("r"), Sym("r", "l"))
    c, rest = w[0], w[1:]
    return Seq(derived_cup(c), par_all(Id(c), derived_cup(rest), Id(dual(c))))


def derived_cap(w: str) -> Term:
    """``dual(w) · w -> ε`` from the primitive ``cap(r)``."""
    if w == "":
        return Empty()
    if w == "r":
        return Cap("r")
    if w == "l":
        return Seq(Sym("r", "l"), Cap("r"))
    c, rest = w[0], w[1:]
    return Seq(par_all(Id(dual(rest)), derived_cap(c), Id(rest)), derived_cap(rest))


def permutation_term(word: str, perm: list[int]) -> Term:
    """Term ``word -> permuted word`` moving wire ``a`` to position ``perm[a]``,
    built from adjacent symmetries by bubble sort."""
    if sorted(perm) != list(range(len(word))):
        raise ValueError(f"{perm} is not a permutation of {len(word)} wires")
    wires = list(zip(perm, word))
    layers = []
    changed = True
    while changed:
        changed = False
        for i in range(len(wires) - 1):
            if wires[i][0] > wires[i + 1][0]:
                letters = "".join(c for _, c in wires)
                layers.append(par_all(Id(letters[:i]), Sym(letters[i], letters[i + 1]),
                                      Id(letters[i + 2:])))
                wires[i], wires[i + 1] = wires[i + 1], wires[i]
                changed = True
    return seq_all(*layers) if layers else Id(word)


def block_swap_term(a: str, b: str) -> Term:
    """``a · b -> b · a``."""
    return permutation_term(a + b, [len(b) + i for i in range(len(a))] + list(range(len(b))))


def snake_terms(w: str) -> tuple[Term, Term]:
    """The two zig-zag composites that should equal ``id(w)`` and ``id(dual(w))``."""
    dw = dual(w)
    first = Seq(par_all(derived_cup(w), Id(w)), par_all(Id(w), derived_cap(w)))
    second = Seq(par_all(Id(dw), derived_cup(w)), par_all(derived_cap(w), Id(dw)))
    return first, second


# -- interpretation ---------------------------------------------------------

@dataclass(frozen=True)
class Valuation:
    """Where ``r`` goes, where each generator goes, and the compact closed
    target (``identity``, ``compose``, ``tensor``, ``swap``, ``cup``, ``cap``,
    ``unit``, ``dual``, ``tensor_obj``)."""

    category: Any
    colour_r: Any
    generator: Callable[[str, str, Role, int], Any]

    def colour(self, c: str):
        return self.colour_r if c == "r" else self.category.dual(self.colour_r)

    def word(self, w: str):
        obj = self.category.unit()
        for c in w:
            obj = self.category.tensor_obj(obj, self.colour(c))
        return obj


def interpret(t: Term, v: Valuation):
    """Structural interpretation of a well-typed term in ``v``'s category."""
    typecheck(t)
    return _interpret(t, v)


def _interpret(t: Term, v: Valuation):
    cat = v.category
    if isinstance(t, Gen):
        return v.generator(t.dom, t.cod, t.role, t.prio)
    if isinstance(t, Id):
        return cat.identity(v.word(t.word))
    if isinstance(t, Empty):
        return cat.identity(cat.unit())
    if isinstance(t, Sym):
        return cat.swap(v.colour(t.left), v.colour(t.right))
    if isinstance(t, Cup):
        if t.word == "r":
            return cat.cup(v.colour_r)
        return _interpret(derived_cup(t.word), v)
    if isinstance(t, Cap):
        if t.word == "r":
            return cat.cap(v.colour_r)
        return _interpret(derived_cap(t.word), v)
    if isinstance(t, Seq):
        return cat.compose(_interpret(t.first, v), _interpret(t.second, v))
    if isinstance(t, Par):
        return cat.tensor(_interpret(t.left, v), _interpret(t.right, v))
    raise TermTypeError(f"not a term: {t!r}")


# -- random terms -----------------------------------------------------------

def random_word(rng: random.Random, max_len: int, min_len: int = 0) -> str:
    return "".join(rng.choice(COLOURS) for _ in range(rng.randint(min_len, max_len)))


def _max_width(t: Term) -> int:
    d, c = typecheck(t)
    width = max(len(d), len(c))
    if isinstance(t, Seq):
        return max(width, _max_width(t.first), _max_width(t.second))
    if isinstance(t, Par):
        return max(width, _max_width(t.left), _max_width(t.right))
    return width


class _TermGen:
    def __init__(self, rng: random.Random, max_rank: int, max_word: int):
        self.rng = rng
        self.max_rank = max_rank
        self.max_word = max_word

    def gen(self, dom: str) -> Gen:
        rng = self.rng
        return Gen(dom, random_word(rng, self.max_word), Role(rng.choice("EA")),
                   rng.randint(0, self.max_rank))

    def structural(self, w: str) -> Term:
        """A generator-free term with domain ``w``."""
        rng = self.rng
        options = [lambda: Id(w)]
        if len(w) == 2:
            options.append(lambda: Sym(w[0], w[1]))
        if w == "":
            options.append(lambda: Empty())
            options += [lambda: Cup(random_word(rng, max(1, min(2, self.max_word)), 1))] * 2
        if len(w) % 2 == 0 and w and dual(w[len(w) // 2:]) == w[:len(w) // 2]:
            options += [lambda: Cap(w[len(w) // 2:])] * 2
        return rng.choice(options)()

    def from_dom(self, w: str, gens: int, fuel: int) -> Term:
        rng = self.rng
        if fuel <= 0:
            if gens > 0:
                return self.spread(w, gens)
            return self.structural(w)
        kinds = ["seq", "par"]
        if gens == 0:
            kinds += ["leaf"] * 2
        if gens == 1 and len(w) <= self.max_word:
            kinds += ["gen"] * 2
        kind = rng.choice(kinds)
        if kind == "leaf":
            return self.structural(w)
        if kind == "gen":
            return self.gen(w)
        if kind == "par":
            cut = rng.randint(0, len(w))
            g1 = rng.randint(0, gens)
            return Par(self.from_dom(w[:cut], g1, fuel - 1),
                       self.from_dom(w[cut:], gens - g1, fuel - 1))
        g1 = rng.randint(0, gens)
        first = self.from_dom(w, g1, fuel - 1)
        _, mid = typecheck(first)
        return Seq(first, self.from_dom(mid, gens - g1, fuel - 1))

    def spread(self, w: str, gens: int) -> Term:
        """Place exactly ``gens`` generators once fuel is exhausted."""
        if gens == 1 and len(w) <= self.max_word:
            return self.gen(w)
        first = self.gen(w[:self.max_word]) if w else self.gen("")
        rest = Id(w[self.max_word:]) if w else Id("")
        head = par_all(first, rest) if rest != Id("") else first
        if gens == 1:
            return head
        _, mid = typecheck(head)
        return Seq(head, self.spread(mid, gens - 1))


def random_term(rng: random.Random | int, size: int, max_rank: int, max_word: int,
                max_width: int | None = None, fuel: int = 6) -> Term:
    """Random well-typed term with exactly ``min(size, ...)`` generators
    (``size`` of them whenever possible), priorities ``<= max_rank`` and
    generator words of length ``<= max_word``.  Intermediate interfaces are
    kept within ``max_width`` letters (default ``2 * max_word``)."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if size == 0:
        return Id(random_word(rng, max_word))
    width = max_width if max_width is not None else max(2 * max_word, 2)
    builder = _TermGen(rng, max_rank, max_word)
    for _ in range(1000):
        dom = random_word(rng, max_word)
        t = builder.from_dom(dom, size, rng.randint(1, fuel))
        if _max_width(t) <= width:
            return t
    raise RuntimeError("could not generate a term within the width bound")
