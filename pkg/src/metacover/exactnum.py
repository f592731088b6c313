"""Exact rational and cyclotomic arithmetic.

Rationals are :class:`fractions.Fraction`.  An element of the N-th cyclotomic
field is stored in the power basis ``1, z, ..., z^(phi(N)-1)`` of
``Q[z]/(Phi_N)`` as integer numerators over one positive common denominator.

Values that are known to be roots of unity additionally remember their
exponent, so products and powers of roots of unity are table lookups.  The
coefficient vector is still the canonical form: equality and hashing only look
at it.
"""

from __future__ import annotations

import cmath
import functools
import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import numpy as np

from .errors import NotDivisible, OrderMismatch

__all__ = [
    "Rational",
    "Cyclotomic",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "lift_to_order",
    "common_order",
    "multiplicative_order",
    "mat_identity",
    "mat_mul",
    "mat_pow",
    "mat_eq",
    "mat_trace",
    "is_diagonal",
]

Rational = Fraction


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (low-to-high), ``den`` monic."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@functools.lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(poly: list[int], n: int) -> list[int]:
    """Reduce an integer (or rational) polynomial modulo Phi_n in place."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    for i in range(len(poly) - 1, deg - 1, -1):
        c = poly[i]
        if c:
            base = i - deg
            for j in range(deg):
                pj = phi[j]
                if pj:
                    poly[base + j] -= c * pj
    if len(poly) < deg:
        poly.extend([0] * (deg - len(poly)))
    del poly[deg:]
    return poly


class Cyclotomic:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("order", "_num", "_den", "_root", "_nz")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in coeffs]
        self._set(order, _reduce(num, order), den, None)

    def _set(self, order, num, den, root):
        g = math.gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.order = order
        self._num = tuple(num)
        self._den = den
        self._root = root
        self._nz = any(num)
        if not self._nz:
            self._den = 1

    @classmethod
    def _raw(cls, order, num, den=1, root=None) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj._set(order, num, den, root)
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, order: int, q) -> "Cyclotomic":
        q = Fraction(q)
        num = [0] * euler_phi(order)
        num[0] = q.numerator
        return cls._raw(order, num, q.denominator)

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return _zero(order)

    @classmethod
    def one(cls, order: int) -> "Cyclotomic":
        return root_of_unity(order, 0)

    @classmethod
    def from_root_counts(cls, order: int, counts: Sequence[int]) -> "Cyclotomic":
        """Sum of ``counts[e] * zeta^e`` for a length-``order`` count vector."""
        if len(counts) != order:
            raise ValueError("need one count per exponent")
        coeffs = np.asarray(counts, dtype=np.int64) @ _root_matrix(order)
        return cls._raw(order, coeffs.tolist(), 1)

    # -- accessors --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def root_exponent(self) -> int | None:
        """Exponent ``e`` with ``self == zeta_N^e`` when known from construction."""
        return self._root

    def is_zero(self) -> bool:
        return not self._nz

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise OrderMismatch(
                    f"cyclotomic orders differ ({self.order} vs {other.order}); lift first"
                )
            return other
        if isinstance(other, (int, _RationalABC)):
            return Cyclotomic.from_rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._nz:
            return self
        if not self._nz:
            return other
        a, b = self._den, other._den
        num = [x * b + y * a for x, y in zip(self._num, other._num)]
        return Cyclotomic._raw(self.order, num, a * b)

    __radd__ = __add__

    def __neg__(self):
        root = None
        if self._root is not None and self.order % 2 == 0:
            root = (self._root + self.order // 2) % self.order
        return Cyclotomic._raw(self.order, [-c for c in self._num], self._den, root)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise OrderMismatch(
                    f"cyclotomic orders differ ({self.order} vs {other.order}); lift first"
                )
            if self._root is not None and other._root is not None:
                return root_of_unity(self.order, self._root + other._root)
            if not (self._nz and other._nz):
                return _zero(self.order)
            if other.is_rational():
                return self._scale(other._num[0], other._den)
            if self.is_rational():
                return other._scale(self._num[0], self._den)
            a, b = self._num, other._num
            prod = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            prod[i + j] += x * y
            return Cyclotomic._raw(self.order, _reduce(prod, self.order), self._den * other._den)
        if isinstance(other, (int, _RationalABC)):
            q = Fraction(other)
            return self._scale(q.numerator, q.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def _scale(self, p: int, q: int) -> "Cyclotomic":
        if p == q:
            return self
        return Cyclotomic._raw(self.order, [c * p for c in self._num], self._den * q)

    def inv(self) -> "Cyclotomic":
        if not self._nz:
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if self._root is not None:
            return root_of_unity(self.order, -self._root)
        if self.is_rational():
            return Cyclotomic.from_rational(self.order, 1 / self.to_rational())
        # Extended Euclid on (self, Phi_N) over Q.
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, [Fraction(c, self._den) for c in self._num]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        r1 = _trim(r1)
        while len(r1) > 1:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        # r1 is a nonzero constant since gcd(self, Phi_N) = 1
        c = r1[0]
        return Cyclotomic(self.order, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            return self * other.inv()
        if isinstance(other, (int, _RationalABC)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self._scale(q.denominator, q.numerator)
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if self._root is not None:
            return root_of_unity(self.order, self._root * e)
        if e < 0:
            return self.inv() ** (-e)
        result = root_of_unity(self.order, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conj(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^-1."""
        if self._root is not None:
            return root_of_unity(self.order, -self._root)
        n = self.order
        poly = [0] * n
        for i, c in enumerate(self._num):
            poly[(-i) % n] += c
        return Cyclotomic._raw(n, _reduce(poly, n), self._den)

    def lift(self, m: int) -> "Cyclotomic":
        return lift_to_order(self, m)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return (
                self.order == other.order
                and self._den == other._den
                and self._num == other._num
            )
        if isinstance(other, (int, _RationalABC)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self._num[0], self._den))
        return hash((self.order, self._num, self._den))

    def __bool__(self):
        return self._nz

    # -- display ----------------------------------------------------------

    def approx(self) -> complex:
        """Complex value under zeta_N -> exp(2 pi i / N); display only."""
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                z = f"zeta({self.order})" + (f"^{i}" if i > 1 else "")
                body = z if abs(c) == 1 else f"{abs(c)}*{z}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Cyclotomic({self.order}, {str(self)!r})"


# Rational polynomial helpers for the extended Euclid in ``inv``.

def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _qdivmod(a, b):
    a = list(a)
    b = _trim(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, x in enumerate(b):
                a[i + j] -= c * x
    return _trim(q), _trim(a[: len(b) - 1] or [Fraction(0)])


def _qmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _qsub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


@functools.lru_cache(maxsize=None)
def _zero(order: int) -> Cyclotomic:
    return Cyclotomic._raw(order, [0] * euler_phi(order), 1)


@functools.lru_cache(maxsize=None)
def _root_table(n: int) -> tuple[Cyclotomic, ...]:
    table = []
    for e in range(n):
        poly = [0] * max(e + 1, euler_phi(n))
        poly[e] = 1
        table.append(Cyclotomic._raw(n, _reduce(poly, n), 1, e))
    return tuple(table)


@functools.lru_cache(maxsize=None)
def _root_matrix(n: int) -> np.ndarray:
    # row e holds the power-basis coefficients of zeta_n^e (always integers)
    return np.array([x._num for x in _root_table(n)], dtype=np.int64).reshape(n, euler_phi(n))


def root_of_unity(n: int, k: int) -> Cyclotomic:
    """zeta_n^k reduced modulo Phi_n."""
    if n < 1:
        raise ValueError("n must be positive")
    return _root_table(n)[k % n]


def lift_to_order(x: Cyclotomic, m: int) -> Cyclotomic:
    """Re-express ``x`` in Q(zeta_m) using zeta_N = zeta_m^(m/N)."""
    n = x.order
    if m % n:
        raise NotDivisible(f"order {n} does not divide {m}")
    if m == n:
        return x
    step = m // n
    if x._root is not None:
        return root_of_unity(m, x._root * step)
    poly = [0] * (step * (len(x._num) - 1) + 1)
    for i, c in enumerate(x._num):
        poly[i * step] = c
    return Cyclotomic._raw(m, _reduce(poly, m), x._den)


def common_order(*orders: int) -> int:
    return math.lcm(*orders) if orders else 1


def multiplicative_order(x: Cyclotomic) -> int | None:
    """Smallest e >= 1 with x^e = 1, or None if x is not a root of unity.

    The roots of unity in Q(zeta_N) are exactly +-zeta_N^j, so x is compared
    against that finite list rather than raised to successive powers.
    """
    if x.is_zero():
        raise ZeroDivisionError("zero has no multiplicative order")
    n = x.order
    if x._root is not None:
        return n // math.gcd(x._root, n)
    n2 = n if n % 2 == 0 else 2 * n
    y = lift_to_order(x, n2)
    for e in range(n2):
        if y == root_of_unity(n2, e):
            return n2 // math.gcd(e, n2)
    return None


# -- dense matrices over one cyclotomic order --------------------------------
# A matrix is a tuple of row tuples of Cyclotomic, all of the same order.

Matrix = tuple  # tuple[tuple[Cyclotomic, ...], ...]


def mat_identity(d: int, order: int) -> Matrix:
    one, zero = root_of_unity(order, 0), _zero(order)
    return tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    order = a[0][0].order
    zero = _zero(order)
    ncols = len(b[0])
    rows = []
    for arow in a:
        acc = [None] * ncols
        for l, x in enumerate(arow):
            if not x._nz:
                continue
            for j, y in enumerate(b[l]):
                if not y._nz:
                    continue
                p = x * y
                acc[j] = p if acc[j] is None else acc[j] + p
        rows.append(tuple(zero if v is None else v for v in acc))
    return tuple(rows)


def is_diagonal(a: Matrix) -> bool:
    return all(not x._nz for i, row in enumerate(a) for j, x in enumerate(row) if i != j)


def mat_pow(a: Matrix, e: int) -> Matrix:
    if e < 0:
        raise ValueError("negative matrix powers are not supported")
    d = len(a)
    if is_diagonal(a):
        zero = _zero(a[0][0].order)
        return tuple(
            tuple(a[i][i] ** e if i == j else zero for j in range(d)) for i in range(d)
        )
    result = mat_identity(d, a[0][0].order)
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def mat_trace(a: Matrix) -> Cyclotomic:
    total = _zero(a[0][0].order)
    for i, row in enumerate(a):
        total = total + row[i]
    return total
