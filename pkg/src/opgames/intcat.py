"""The Int construction over a strict traced symmetric monoidal category.

A morphism ``(X+, X-) -> (Y+, Y-)`` is a base morphism
``X+ ⊗ Y- -> Y+ ⊗ X-``.  Base objects are assumed to form a strict monoid
(natural numbers under addition for both bases used here), so associators
and unitors never appear.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Protocol


class TracedCategory(Protocol):
    def dom(self, f) -> Any: ...
    def cod(self, f) -> Any: ...
    def identity(self, x) -> Any: ...
    def compose(self, f, g) -> Any: ...      # f then g
    def tensor(self, f, g) -> Any: ...
    def swap(self, x, y) -> Any: ...
    def trace(self, x, f) -> Any: ...        # over the leftmost factor x
    def equal(self, f, g) -> bool: ...


class IntTypeError(TypeError):
    pass


@dataclass(frozen=True)
class IntObject:
    pos: Any
    neg: Any

    def dual(self) -> "IntObject":
        return IntObject(self.neg, self.pos)

    def __str__(self) -> str:
        return f"({self.pos},{self.neg})"


@dataclass(frozen=True)
class IntMorphism:
    dom: IntObject
    cod: IntObject
    body: Any


class IntCategory:
    """Compact closed category built from a traced base category."""

    def __init__(self, base: TracedCategory, unit_object: Any = 0):
        self.base = base
        self.unit_object = unit_object

    # base helpers; objects combine with ``+``
    def _id(self, *xs):
        return self.base.identity(self._sum(xs))

    def _sum(self, xs):
        total = self.unit_object
        for x in xs:
            total = total + x
        return total

    def _par(self, *fs):
        out = fs[0]
        for f in fs[1:]:
            out = self.base.tensor(out, f)
        return out

    def _seq(self, *fs):
        out = fs[0]
        for f in fs[1:]:
            out = self.base.compose(out, f)
        return out

    def unit(self) -> IntObject:
        return IntObject(self.unit_object, self.unit_object)

    def tensor_obj(self, x: IntObject, y: IntObject) -> IntObject:
        return IntObject(x.pos + y.pos, y.neg + x.neg)

    def identity(self, x: IntObject) -> IntMorphism:
        return IntMorphism(x, x, self._id(x.pos, x.neg))

    def check(self, f: IntMorphism) -> IntMorphism:
        b = self.base
        if b.dom(f.body) != f.dom.pos + f.cod.neg or b.cod(f.body) != f.cod.pos + f.dom.neg:
            raise IntTypeError(f"body does not fit {f.dom} -> {f.cod}")
        return f

    def compose(self, f: IntMorphism, g: IntMorphism) -> IntMorphism:
        """``f`` then ``g``, via a trace over ``Y-``."""
        if f.cod != g.dom:
            raise IntTypeError(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
        b = self.base
        xp, xn = f.dom.pos, f.dom.neg
        yp, yn = f.cod.pos, f.cod.neg
        zp, zn = g.cod.pos, g.cod.neg
        inner = self._seq(
            self._par(b.swap(yn, xp), self._id(zn)),
            self._par(f.body, self._id(zn)),
            self._par(self._id(yp), b.swap(xn, zn)),
            self._par(g.body, self._id(xn)),
            self._par(b.swap(zp, yn), self._id(xn)),
        )
        return IntMorphism(f.dom, g.cod, b.trace(yn, inner))

    def tensor(self, f: IntMorphism, g: IntMorphism) -> IntMorphism:
        b = self.base
        xp, xn, yp, yn = f.dom.pos, f.dom.neg, f.cod.pos, f.cod.neg
        xp2, yn2 = g.dom.pos, g.cod.neg
        body = self._seq(
            self._par(b.swap(xp, xp2), b.swap(yn2, yn)),
            self._par(self._id(xp2), f.body, self._id(yn2)),
            self._par(b.swap(xp2, yp), b.swap(xn, yn2)),
            self._par(self._id(yp), g.body, self._id(xn)),
        )
        return IntMorphism(self.tensor_obj(f.dom, g.dom), self.tensor_obj(f.cod, g.cod), body)

    def swap(self, x: IntObject, y: IntObject) -> IntMorphism:
        body = self._par(self.base.swap(x.pos, y.pos), self.base.swap(x.neg, y.neg))
        return IntMorphism(self.tensor_obj(x, y), self.tensor_obj(y, x), body)

    def dual(self, x: IntObject) -> IntObject:
        return x.dual()

    def cup(self, x: IntObject) -> IntMorphism:
        """Unit ``I -> X ⊗ X*``."""
        return IntMorphism(self.unit(), self.tensor_obj(x, x.dual()), self._id(x.pos, x.neg))

    def cap(self, x: IntObject) -> IntMorphism:
        """Counit ``X* ⊗ X -> I``."""
        return IntMorphism(self.tensor_obj(x.dual(), x), self.unit(), self._id(x.neg, x.pos))

    def lift(self, f) -> IntMorphism:
        """The unit of the construction: ``f : A -> B`` to ``(A, I) -> (B, I)``."""
        return IntMorphism(IntObject(self.base.dom(f), self.unit_object),
                           IntObject(self.base.cod(f), self.unit_object), f)

    def equal(self, f: IntMorphism, g: IntMorphism) -> bool:
        return f.dom == g.dom and f.cod == g.cod and self.base.equal(f.body, g.body)


def int_of(functor: Callable[[Any], Any],
           on_objects: Callable[[Any], Any] = lambda x: x) -> Callable[[IntMorphism], IntMorphism]:
    """Lift a strict traced monoidal functor on the base to the Int categories."""

    def lifted(f: IntMorphism) -> IntMorphism:
        return IntMorphism(IntObject(on_objects(f.dom.pos), on_objects(f.dom.neg)),
                           IntObject(on_objects(f.cod.pos), on_objects(f.cod.neg)),
                           functor(f.body))

    return lifted
