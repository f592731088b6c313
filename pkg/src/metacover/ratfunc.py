"""Univariate polynomials and rational functions in y over Q(zeta_N)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import OrderMismatch
from .exactnum import Cyclotomic, lift_to_order

__all__ = ["YPoly", "RatFunc"]


def _as_cyc(order: int, c) -> Cyclotomic:
    if isinstance(c, Cyclotomic):
        if c.order != order:
            raise OrderMismatch(f"coefficient of order {c.order} in a ring of order {order}")
        return c
    return Cyclotomic.from_rational(order, Fraction(c))


class YPoly:
    """Polynomial in y with Cyclotomic coefficients, lowest degree first."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        cs = [_as_cyc(order, c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, order: int, c) -> "YPoly":
        return cls(order, [c])

    @classmethod
    def y(cls, order: int) -> "YPoly":
        return cls(order, [0, 1])

    # -- basic queries --

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Cyclotomic:
        return self.coeffs[-1] if self.coeffs else Cyclotomic.zero(self.order)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        if isinstance(other, YPoly):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    # -- arithmetic --

    def _check(self, other: "YPoly") -> None:
        if other.order != self.order:
            raise OrderMismatch(f"polynomial orders differ ({self.order} vs {other.order})")

    def __add__(self, other: "YPoly") -> "YPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return YPoly(self.order, [x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self) -> "YPoly":
        return YPoly(self.order, [-c for c in self.coeffs])

    def __sub__(self, other: "YPoly") -> "YPoly":
        return self + (-other)

    def __mul__(self, other: "YPoly") -> "YPoly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return YPoly(self.order)
        out = [Cyclotomic.zero(self.order)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return YPoly(self.order, out)

    def scale(self, c) -> "YPoly":
        c = _as_cyc(self.order, c)
        return YPoly(self.order, [c * x for x in self.coeffs])

    def __pow__(self, e: int) -> "YPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = YPoly.constant(self.order, 1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "YPoly") -> tuple["YPoly", "YPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead_inv = other.leading().inv()
        quot = [Cyclotomic.zero(self.order)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c.is_zero():
                continue
            q = c * lead_inv
            quot[i - dd] = q
            for j, d in enumerate(other.coeffs):
                if not d.is_zero():
                    rem[i - dd + j] = rem[i - dd + j] - q * d
        return YPoly(self.order, quot), YPoly(self.order, rem[:dd] if dd > 0 else [])

    def monic(self) -> "YPoly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.leading().inv())

    def gcd(self, other: "YPoly") -> "YPoly":
        a, b = self.monic(), other.monic()
        while not b.is_zero():
            a, b = b, a.divmod(b)[1].monic()
        return a

    def derivative(self) -> "YPoly":
        return YPoly(self.order, [c * i for i, c in enumerate(self.coeffs)][1:])

    def lift(self, order: int) -> "YPoly":
        return YPoly(order, [lift_to_order(c, order) for c in self.coeffs])

    # -- display --

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            text = str(c)
            negative = False
            if c.is_rational():
                q = c.to_rational()
                negative = q < 0
                text = str(abs(q))
                if i and abs(q) == 1:
                    text = ""
            elif i:
                text = f"({text})"
            body = "*".join(x for x in (text, mono) if x)
            terms.append(("-" if negative else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"YPoly({self.order}, {str(self)!r})"


class RatFunc:
    """num/den in lowest terms with den monic."""

    __slots__ = ("order", "num", "den")

    def __init__(self, num: YPoly, den: YPoly | None = None, *, reduced: bool = False):
        if den is None:
            den = YPoly.constant(num.order, 1)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = num, YPoly.constant(num.order, 1)
        elif not reduced and not den.is_constant():
            g = num.gcd(den)
            if not g.is_constant():
                num, den = num.divmod(g)[0], den.divmod(g)[0]
        if not den.is_monic():
            inv = den.leading().inv()
            num, den = num.scale(inv), den.scale(inv)
        self.order = num.order
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, order: int, c) -> "RatFunc":
        return cls(YPoly.constant(order, c), reduced=True)

    @classmethod
    def zero(cls, order: int) -> "RatFunc":
        return cls(YPoly(order), reduced=True)

    @classmethod
    def one(cls, order: int) -> "RatFunc":
        return cls.constant(order, 1)

    @classmethod
    def y(cls, order: int) -> "RatFunc":
        return cls(YPoly.y(order), reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_constant() and self.num.degree == 0 and self.num.coeffs[0] == 1

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def constant_value(self) -> Cyclotomic:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeffs[0] if self.num.coeffs else Cyclotomic.zero(self.order)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.order == other.order and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatFunc.constant(self.order, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.order != self.order:
                raise OrderMismatch(f"rational function orders differ ({self.order} vs {other.order})")
            return other
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return RatFunc.constant(self.order, other)
        return NotImplemented

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            if self.den.is_constant():
                return RatFunc(self.num + other.num, self.den, reduced=True)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.order)
        if self.den.is_constant() and other.den.is_constant():
            return RatFunc(self.num * other.num, reduced=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num, reduced=True)

    def __truediv__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other) -> "RatFunc":
        return self.inv() * other

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inv() ** (-e)
        return RatFunc(self.num ** e, self.den ** e, reduced=True)

    def lift(self, order: int) -> "RatFunc":
        return RatFunc(self.num.lift(order), self.den.lift(order), reduced=True)

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self.order}, {str(self)!r})"
