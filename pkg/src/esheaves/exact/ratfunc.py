"""Fractions of polynomials over F_p."""

from __future__ import annotations

from .fields import Field
from .poly import Poly


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.p, num.nvars, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Poly.const(num.p, num.nvars, 1)
        elif num.nvars == 1:
            g = num.ugcd(den)
            if not g.is_const():
                num, den = num.exact_div(g), den.exact_div(g)
        else:
            cm = tuple(min(a, b) for a, b in zip(num.content_monomial(), den.content_monomial()))
            if any(cm):
                mono = Poly.monomial(num.p, cm)
                num, den = num.exact_div(mono), den.exact_div(mono)
        _, lc = den.leading()
        if lc != 1:
            inv = pow(lc, num.p - 2, num.p)
            num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def p(self) -> int:
        return self.num.p

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        return RatFunc(Poly.const(self.num.p, self.num.nvars, int(other)))

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc is not hashable; equality is by cross-multiplication")

    def evaluate(self, field: Field, point) -> int:
        d = self.den.evaluate(field, point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return int(field.mul(self.num.evaluate(field, point), field.inv(d)))

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"
