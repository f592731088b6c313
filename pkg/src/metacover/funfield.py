"""Kummer towers C(Y) c C(Z) c C(X) as explicit quotient algebras.

The algebra is C(Y)[w]/(w^t - f)[v]/(v^m - g) with C(Y) the rational functions
in y over Q(zeta_N), f in C(Y) and g in the middle level C(Y)[w].  Elements are
m x t coefficient arrays on the basis v^i w^j.  The algebra need not be a
field; inversion reports a zero divisor when it fails.

Automorphisms are C(Y)-linear and given by the images of v and w.
Composition is ``(phi o psi)(x) = phi(psi(x))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    ConstraintViolated,
    IdentityViolation,
    InvalidParams,
    NonInvertible,
    NotInvariant,
    NotInZLevel,
    ZeroModulus,
)
from .exactnum import lift_to_order, root_of_unity
from .groups import MetacyclicParams, validate_metacyclic
from .ratfunc import RatFunc

__all__ = [
    "TowerSpec",
    "TowerAlgebra",
    "TowerElement",
    "TowerAuto",
    "ActionReport",
    "tower_build",
    "define_sigma",
    "define_tau",
    "verify_group_action",
    "alpha_of",
    "norm_alpha",
    "norm_alpha_identity",
    "norm_to_base",
    "p_power_descent",
    "t2_build",
    "dicyclic_build",
    "irreducibility_probe",
]


# -- linear algebra over C(Y) ----------------------------------------------


def _rref(rows: list[list[RatFunc]]) -> tuple[list[list[RatFunc]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in rows]
    n_rows, n_cols = len(rows), len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(n_rows):
            if i != rank and not rows[i][col].is_zero():
                c = rows[i][col]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == n_rows:
            break
    return rows, pivots


def _solve(matrix: list[list[RatFunc]], rhs: list[RatFunc]):
    """Solve matrix * x = rhs for square invertible ``matrix``.

    Returns (solution, None) or (None, kernel_vector) when singular.
    """
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = _rref(aug)
    if len(pivots) == n and pivots[-1] < n:
        return [red[i][n] for i in range(n)], None
    square = [row[:n] for row in red]
    free = next(c for c in range(n) if c not in pivots)
    order = matrix[0][0].order
    vec = [RatFunc.zero(order) for _ in range(n)]
    vec[free] = RatFunc.one(order)
    for i, pc in enumerate(p for p in pivots if p < n):
        vec[pc] = -square[i][free]
    return None, vec


# -- tower spec and algebra --------------------------------------------------


@dataclass(frozen=True)
class TowerSpec:
    N: int
    t: int
    f: RatFunc
    m: int
    g: tuple[RatFunc, ...]  # middle-level element sum g_j w^j
    r: int
    k: int

    def __post_init__(self):
        if self.N % math.lcm(self.m, self.t):
            raise InvalidParams(f"cyclotomic order N={self.N} is not divisible by lcm(m, t)")
        if len(self.g) != self.t:
            raise InvalidParams(f"g needs {self.t} coefficients in powers of w")
        if any(c.order != self.N for c in (self.f, *self.g)):
            raise InvalidParams("all coefficients must live in order N")
        report = validate_metacyclic(MetacyclicParams(self.m, self.k, self.t, self.r))
        if not report.valid:
            raise InvalidParams("; ".join(c.symbol for c in report.failures))
        if self.f.is_zero():
            raise ZeroModulus("w^t = f needs f ≠ 0")
        if all(c.is_zero() for c in self.g):
            raise ZeroModulus("v^m = g needs g ≠ 0")

    @property
    def params(self) -> MetacyclicParams:
        return MetacyclicParams(self.m, self.k, self.t, self.r)


class TowerAlgebra:
    def __init__(self, spec: TowerSpec):
        self.spec = spec
        self.N, self.m, self.t = spec.N, spec.m, spec.t
        self._zero = RatFunc.zero(self.N)
        self._one = RatFunc.one(self.N)

    # -- middle level: tuples of t RatFuncs --

    def zmul(self, a: Sequence[RatFunc], b: Sequence[RatFunc]) -> tuple[RatFunc, ...]:
        t = self.t
        acc = [self._zero] * (2 * t - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    acc[i + j] = acc[i + j] + x * y
        for i in range(2 * t - 2, t - 1, -1):
            if not acc[i].is_zero():
                acc[i - t] = acc[i - t] + acc[i] * self.spec.f
        return tuple(acc[:t])

    def zadd(self, a, b) -> tuple[RatFunc, ...]:
        return tuple(x + y for x, y in zip(a, b))

    def zzero(self) -> tuple[RatFunc, ...]:
        return (self._zero,) * self.t

    # -- element constructors --

    def element(self, rows) -> "TowerElement":
        return TowerElement(self, rows)

    def zero(self) -> "TowerElement":
        return TowerElement(self, [self.zzero()] * self.m)

    def base(self, value) -> "TowerElement":
        if not isinstance(value, RatFunc):
            value = RatFunc.constant(self.N, value)
        rows = [self.zzero() for _ in range(self.m)]
        rows[0] = (value,) + (self._zero,) * (self.t - 1)
        return TowerElement(self, rows)

    def one(self) -> "TowerElement":
        return self.base(self._one)

    def zlevel(self, coeffs: Sequence[RatFunc]) -> "TowerElement":
        rows = [self.zzero() for _ in range(self.m)]
        rows[0] = tuple(coeffs)
        return TowerElement(self, rows)

    def root(self, n: int, e: int = 1) -> "TowerElement":
        """zeta_n^e as a constant."""
        return self.base(RatFunc.constant(self.N, lift_to_order(root_of_unity(n, e), self.N)))

    @property
    def v(self) -> "TowerElement":
        rows = [self.zzero() for _ in range(self.m)]
        if self.m == 1:
            rows[0] = self.spec.g
        else:
            rows[1] = (self._one,) + (self._zero,) * (self.t - 1)
        return TowerElement(self, rows)

    @property
    def w(self) -> "TowerElement":
        if self.t == 1:
            return self.base(self.spec.f)
        return self.zlevel((self._zero, self._one) + (self._zero,) * (self.t - 2))

    @property
    def g(self) -> "TowerElement":
        return self.zlevel(self.spec.g)

    @property
    def f(self) -> "TowerElement":
        return self.base(self.spec.f)

    @property
    def dimension(self) -> int:
        return self.m * self.t

    # -- arithmetic --

    def mul(self, x: "TowerElement", y: "TowerElement") -> "TowerElement":
        m = self.m
        acc = [self.zzero() for _ in range(2 * m - 1)]
        for i, a in enumerate(x.rows):
            if all(c.is_zero() for c in a):
                continue
            for j, b in enumerate(y.rows):
                if all(c.is_zero() for c in b):
                    continue
                acc[i + j] = self.zadd(acc[i + j], self.zmul(a, b))
        for i in range(2 * m - 2, m - 1, -1):
            if any(not c.is_zero() for c in acc[i]):
                acc[i - m] = self.zadd(acc[i - m], self.zmul(acc[i], self.spec.g))
        return TowerElement(self, acc[:m])

    def _coords(self, x: "TowerElement") -> list[RatFunc]:
        return [c for row in x.rows for c in row]

    def _from_coords(self, coords: Sequence[RatFunc]) -> "TowerElement":
        t = self.t
        return TowerElement(self, [tuple(coords[i * t:(i + 1) * t]) for i in range(self.m)])

    def basis(self) -> list["TowerElement"]:
        n = self.dimension
        out = []
        for idx in range(n):
            coords = [self._zero] * n
            coords[idx] = self._one
            out.append(self._from_coords(coords))
        return out

    def inv(self, x: "TowerElement") -> "TowerElement":
        if x.is_zero():
            raise NonInvertible("the zero element is not invertible", x, self.one())
        if x.is_base():
            return self.base(x.base_value().inv())
        if x.is_zlevel() and self.m > 1:
            z = self._zinv(x.rows[0], x)
            return self.zlevel(z)
        return self._general_inv(x)

    def _zinv(self, a: Sequence[RatFunc], x: "TowerElement") -> tuple[RatFunc, ...]:
        t = self.t
        cols = []
        for j in range(t):
            e = [self._zero] * t
            e[j] = self._one
            cols.append(self.zmul(a, e))
        matrix = [[cols[j][i] for j in range(t)] for i in range(t)]
        rhs = [self._one] + [self._zero] * (t - 1)
        sol, kern = _solve(matrix, rhs)
        if sol is None:
            witness = self.zlevel(kern)
            raise NonInvertible(f"{x} is a zero divisor", x, witness)
        return tuple(sol)

    def _general_inv(self, x: "TowerElement") -> "TowerElement":
        n = self.dimension
        cols = [self._coords(self.mul(x, b)) for b in self.basis()]
        matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
        rhs = self._coords(self.one())
        sol, kern = _solve(matrix, rhs)
        if sol is None:
            witness = self._from_coords(kern)
            raise NonInvertible(f"{x} is a zero divisor", x, witness)
        return self._from_coords(sol)


class TowerElement:
    """sum_(i,j) rows[i][j] v^i w^j."""

    __slots__ = ("algebra", "rows")

    def __init__(self, algebra: TowerAlgebra, rows):
        rows = [tuple(r) for r in rows]
        if len(rows) != algebra.m or any(len(r) != algebra.t for r in rows):
            raise ValueError(f"expected a {algebra.m} x {algebra.t} coefficient array")
        self.algebra = algebra
        self.rows = tuple(rows)

    def _coerce(self, other) -> "TowerElement":
        if isinstance(other, TowerElement):
            if other.algebra is not self.algebra:
                raise ValueError("elements belong to different tower algebras")
            return other
        return self.algebra.base(other)

    def __add__(self, other):
        other = self._coerce(other)
        return TowerElement(
            self.algebra, [self.algebra.zadd(a, b) for a, b in zip(self.rows, other.rows)]
        )

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.algebra, [tuple(-c for c in row) for row in self.rows])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self.algebra.mul(self, self._coerce(other))

    __rmul__ = __mul__

    def inv(self) -> "TowerElement":
        return self.algebra.inv(self)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __pow__(self, e: int) -> "TowerElement":
        base = self
        if e < 0:
            base, e = self.inv(), -e
        result = self.algebra.one()
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, TowerElement):
            return self.algebra is other.algebra and self.rows == other.rows
        if isinstance(other, (int, RatFunc)):
            return self == self.algebra.base(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.rows for c in row)

    def is_zlevel(self) -> bool:
        return all(c.is_zero() for row in self.rows[1:] for c in row)

    def is_base(self) -> bool:
        return self.is_zlevel() and all(c.is_zero() for c in self.rows[0][1:])

    def base_value(self) -> RatFunc:
        if not self.is_base():
            raise ValueError(f"{self} is not in the base field")
        return self.rows[0][0]

    def zlevel_part(self) -> tuple[RatFunc, ...]:
        if not self.is_zlevel():
            raise NotInZLevel(f"{self} has components along v")
        return self.rows[0]

    def to_json(self) -> list:
        return [[str(c) for c in row] for row in self.rows]

    def __str__(self):
        terms = []
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if c.is_zero():
                    continue
                mono = "*".join(
                    x
                    for x in (("v" if i == 1 else f"v^{i}") if i else "", ("w" if j == 1 else f"w^{j}") if j else "")
                    if x
                )
                coeff = str(c)
                if mono:
                    terms.append(mono if c.is_one() else f"({coeff})*{mono}")
                else:
                    terms.append(f"({coeff})")
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


def tower_build(spec: TowerSpec) -> TowerAlgebra:
    return TowerAlgebra(spec)


# -- automorphisms ----------------------------------------------------------


class TowerAuto:
    """C(Y)-linear endomorphism determined by the images of v and w."""

    def __init__(self, image_v: TowerElement, image_w: TowerElement, name: str = ""):
        if image_v.algebra is not image_w.algebra:
            raise ValueError("images live in different algebras")
        self.algebra = image_v.algebra
        self.image_v = image_v
        self.image_w = image_w
        self.name = name

    @classmethod
    def identity(cls, algebra: TowerAlgebra) -> "TowerAuto":
        return cls(algebra.v if algebra.m > 1 else _v_symbol(algebra), algebra.w, "id")

    def apply(self, x: TowerElement) -> TowerElement:
        alg = self.algebra
        vp = [alg.one()]
        for _ in range(1, alg.m):
            vp.append(vp[-1] * self.image_v)
        wp = [alg.one()]
        for _ in range(1, alg.t):
            wp.append(wp[-1] * self.image_w)
        out = alg.zero()
        for i, row in enumerate(x.rows):
            for j, c in enumerate(row):
                if not c.is_zero():
                    out = out + (vp[i] * wp[j]) * c
        return out

    def __call__(self, x: TowerElement) -> TowerElement:
        return self.apply(x)

    def compose(self, other: "TowerAuto") -> "TowerAuto":
        """self o other."""
        return TowerAuto(self.apply(other.image_v), self.apply(other.image_w))

    def __pow__(self, e: int) -> "TowerAuto":
        if e < 0:
            raise ValueError("negative powers of automorphisms are not supported")
        result = TowerAuto.identity(self.algebra)
        for _ in range(e):
            result = self.compose(result)
        return result

    def __eq__(self, other):
        if isinstance(other, TowerAuto):
            return self.image_v == other.image_v and self.image_w == other.image_w
        return NotImplemented

    def __hash__(self):
        return hash((self.image_v, self.image_w))

    def well_defined(self) -> list[str]:
        """Failures of image(w)^t = f and image(v)^m = image(g)."""
        alg = self.algebra
        out = []
        if self.image_w ** alg.t != alg.f:
            out.append("image(w)^t ≠ f")
        if self.image_v ** alg.m != self.apply(alg.g):
            out.append("image(v)^m ≠ image(g)")
        return out


def _v_symbol(algebra: TowerAlgebra) -> TowerElement:
    # with m = 1 the generator v equals g itself
    return algebra.g


def _as_element(alg: TowerAlgebra, x) -> TowerElement:
    if isinstance(x, TowerElement):
        return x
    if isinstance(x, RatFunc):
        return alg.base(x)
    if isinstance(x, (tuple, list)):
        return alg.zlevel(x)
    return alg.base(RatFunc.constant(alg.N, x))


def define_sigma(alg: TowerAlgebra) -> TowerAuto:
    """v -> zeta_m v, w -> w."""
    return TowerAuto(alg.root(alg.m) * alg.v, alg.w, "sigma")


def define_tau(alg: TowerAlgebra, alpha=None, P=None) -> TowerAuto:
    """w -> zeta_t w and either v -> alpha v^r or v -> P / v."""
    if (alpha is None) == (P is None):
        raise ValueError("give exactly one of alpha or P")
    if alpha is not None:
        image_v = _as_element(alg, alpha) * alg.v ** alg.spec.r
    else:
        image_v = _as_element(alg, P) * alg.v.inv()
    return TowerAuto(image_v, alg.root(alg.t) * alg.w, "tau")


# -- group action -------------------------------------------------------------


@dataclass
class ActionReport:
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(ok for _, ok in self.checks)

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]

    def to_json(self) -> dict:
        return {"valid": self.valid, "checks": [{"relation": n, "holds": ok} for n, ok in self.checks]}


def verify_group_action(
    alg: TowerAlgebra, sigma: TowerAuto, tau: TowerAuto, p: MetacyclicParams | None = None
) -> ActionReport:
    p = p or alg.spec.params
    report = ActionReport()
    for auto, label in ((sigma, "σ"), (tau, "τ")):
        bad = auto.well_defined()
        report.checks.append((f"{label} respects w^t = f and v^m = g", not bad))
    ident = TowerAuto.identity(alg)
    sigma_pows = [ident]
    for _ in range(max(p.m, p.k, p.r)):
        sigma_pows.append(sigma.compose(sigma_pows[-1]))
    report.checks.append(("σ^m = 1", sigma_pows[p.m] == ident))
    report.checks.append(("τ^t = σ^k", tau ** p.t == sigma_pows[p.k]))
    report.checks.append(("στ = τσ^r", sigma.compose(tau) == tau.compose(sigma_pows[p.r])))
    return report


def alpha_of(alg: TowerAlgebra, tau: TowerAuto, sigma: TowerAuto | None = None) -> TowerElement:
    """alpha = tau(v) v^-r, required to be fixed by sigma."""
    sigma = sigma or define_sigma(alg)
    alpha = tau.image_v * alg.v ** (-alg.spec.r)
    if sigma.apply(alpha) != alpha:
        raise NotInvariant(f"α = τ(v)·v^-r = {alpha} is not fixed by σ")
    return alpha


def norm_alpha(alg: TowerAlgebra, tau: TowerAuto, alpha: TowerElement) -> TowerElement:
    """prod_(i<t) tau^i(alpha)^(r^(t-1-i))."""
    r, t = alg.spec.r, alg.t
    out = alg.one()
    cur = alpha
    for i in range(t):
        out = out * cur ** (r ** (t - 1 - i))
        cur = tau.apply(cur)
    return out


def norm_alpha_identity(alg: TowerAlgebra, tau: TowerAuto, alpha: TowerElement) -> bool:
    """N(alpha) g^c = zeta_m^k with c = (r^t - 1)/m.

    The derivation-level form tau^t(v) = N(alpha) g^c v is asserted as well.
    """
    spec = alg.spec
    c, rem = divmod(spec.r ** spec.t - 1, spec.m)
    assert rem == 0
    lhs = norm_alpha(alg, tau, alpha) * alg.g ** c
    tau_t_v = (tau ** spec.t).image_v
    if tau_t_v != lhs * alg.v:
        raise IdentityViolation("τ^t(v) ≠ N(α)·g^c·v")
    return lhs == alg.root(spec.m, spec.k)


def norm_to_base(alg: TowerAlgebra, tau: TowerAuto, h: TowerElement) -> TowerElement:
    """F = h tau(h) ... tau^(t-1)(h), which lies in C(Y) for h in the middle level."""
    h.zlevel_part()
    out, cur = alg.one(), h
    for _ in range(alg.t):
        out = out * cur
        cur = tau.apply(cur)
    if not out.is_base():
        raise IdentityViolation(f"norm of {h} is not in the base field")
    return out


@dataclass(frozen=True)
class Descent:
    P: TowerElement
    u: int


def p_power_descent(alg: TowerAlgebra, tau: TowerAuto) -> Descent:
    """P = v tau(v) ... tau^(t-1)(v) and the least u with P^u in C(Y)."""
    spec = alg.spec
    P, cur = alg.one(), alg.v
    for _ in range(alg.t):
        P = P * cur
        cur = tau.apply(cur)
    if not (P ** spec.m).is_base():
        raise IdentityViolation("P^m is not in the base field")
    power, u = P, 1
    while not power.is_base():
        power, u = power * P, u + 1
    bound = math.gcd(spec.r - 1, spec.m)
    if bound % u:
        raise IdentityViolation(f"u = {u} does not divide gcd(r-1, m) = {bound}")
    return Descent(P, u)


# -- named constructions ----------------------------------------------------


def _order_of(*items) -> int:
    orders = []
    for x in items:
        if isinstance(x, RatFunc):
            orders.append(x.order)
        elif isinstance(x, (tuple, list)):
            orders.extend(c.order for c in x)
    return math.lcm(1, *orders)


def _lift_all(x, order: int):
    if isinstance(x, RatFunc):
        return x.lift(order) if x.order != order else x
    return tuple(_lift_all(c, order) for c in x)


@dataclass
class Construction:
    algebra: TowerAlgebra
    sigma: TowerAuto
    tau: TowerAuto
    report: ActionReport
    relation: TowerElement  # should be zero
    relation_text: str

    @property
    def relation_holds(self) -> bool:
        return self.relation.is_zero()

    @property
    def valid(self) -> bool:
        return self.report.valid and self.relation_holds

    def to_json(self) -> dict:
        spec = self.algebra.spec
        return {
            "tower": {
                "N": spec.N,
                "m": spec.m,
                "t": spec.t,
                "k": spec.k,
                "r": spec.r,
                "f": str(spec.f),
                "g": [str(c) for c in spec.g],
            },
            "sigma": {"v": str(self.sigma.image_v), "w": str(self.sigma.image_w)},
            "tau": {"v": str(self.tau.image_v), "w": str(self.tau.image_w)},
            "action": self.report.to_json(),
            "relation": self.relation_text,
            "relation_holds": self.relation_holds,
        }


def t2_build(m: int, k: int, r: int, a: RatFunc, P, f: RatFunc | None = None) -> Construction:
    """Tower with w^2 = f, v^m = a + w and tau(v) = P / v.

    With P in C(Y) the modulus is f = a^2 - P^m.  P may also be a middle-level
    element (p0, p1) = p0 + p1 w, in which case f must be supplied and
    P^m = a^2 - f is checked.
    """
    p = MetacyclicParams(m, k, 2, r)
    report = validate_metacyclic(p)
    if not report.valid:
        raise InvalidParams("; ".join(c.symbol for c in report.failures))
    if (r + 1) % m:
        raise InvalidParams(f"m ∤ r+1 (m={m}, r={r}): τ(x) = P/x needs m | r+1")
    n = math.lcm(m, 2, _order_of(a, P, f))
    a = _lift_all(a, n)
    P = _lift_all(P, n) if isinstance(P, (RatFunc, tuple, list)) else RatFunc.constant(n, P)
    if isinstance(P, RatFunc):
        computed = a * a - P ** m
        if f is not None and _lift_all(f, n) != computed:
            raise ConstraintViolated("f ≠ a^2 - P^m")
        f = computed
    elif f is None:
        raise InvalidParams("f is required when P has a w-component")
    else:
        f = _lift_all(f, n)
    zero, one = RatFunc.zero(n), RatFunc.one(n)
    spec = TowerSpec(n, 2, f, m, (a, one), r, k)
    alg = tower_build(spec)
    p_elem = _as_element(alg, P)
    if not isinstance(P, RatFunc) and p_elem ** m != alg.base(a * a - f):
        raise ConstraintViolated("P^m ≠ a^2 - f")
    sigma = define_sigma(alg)
    tau = define_tau(alg, P=p_elem)
    action = verify_group_action(alg, sigma, tau, p)
    x = alg.v
    relation = x ** (2 * m) - alg.base(a) * 2 * x ** m + p_elem ** m
    return Construction(alg, sigma, tau, action, relation, f"x^{2 * m} - 2*a*x^{m} + P^{m} = 0")


def dicyclic_build(n: int, c: RatFunc, d: RatFunc, f: RatFunc) -> Construction:
    """G(2n, n, 2, 2n-1): w^2 = f, v^(2n) = c + d w, tau(v) = w / v.

    Requires f^n = c^2 - d^2 f.
    """
    if n < 1:
        raise InvalidParams("n must be ≥ 1")
    order = math.lcm(2 * n, _order_of(c, d, f))
    c, d, f = (_lift_all(x, order) for x in (c, d, f))
    if f ** n != c * c - d * d * f:
        raise ConstraintViolated("f^n ≠ c^2 - d^2·f")
    m = 2 * n
    r = (2 * n - 1) % m or m
    spec = TowerSpec(order, 2, f, m, (c, d), r, n)
    alg = tower_build(spec)
    sigma = define_sigma(alg)
    tau = define_tau(alg, P=alg.w)
    action = verify_group_action(alg, sigma, tau, spec.params)
    x = alg.v
    relation = x ** (2 * m) - alg.base(c) * 2 * x ** m + alg.base(f ** n)
    return Construction(alg, sigma, tau, action, relation, f"x^{2 * m} - 2*c*x^{m} + f^{n} = 0")


# -- irreducibility probe ---------------------------------------------------


def _xpoly_trim(p: list[RatFunc]) -> list[RatFunc]:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _xpoly_rem(a: list[RatFunc], b: list[RatFunc]) -> list[RatFunc]:
    a = _xpoly_trim(a)
    b = _xpoly_trim(b)
    lead = b[-1].inv()
    while len(a) >= len(b):
        q = a[-1] * lead
        shift = len(a) - len(b)
        for j, c in enumerate(b):
            a[shift + j] = a[shift + j] - q * c
        a = _xpoly_trim(a)
    return a


def _xpoly_gcd(a, b):
    a, b = _xpoly_trim(a), _xpoly_trim(b)
    while b:
        a, b = b, _xpoly_rem(a, b)
    return a


def _xpoly_eval(p: Sequence[RatFunc], x: RatFunc) -> RatFunc:
    acc = RatFunc.zero(x.order)
    for c in reversed(p):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class ProbeResult:
    verdict: str  # "has-root", "not-squarefree" or "unknown"
    squarefree: bool
    root: RatFunc | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "squarefree": self.squarefree,
            "root": None if self.root is None else str(self.root),
        }


def irreducibility_probe(coeffs: Sequence[RatFunc], max_degree: int | None = None) -> ProbeResult:
    """Look for cheap obstructions to irreducibility of sum coeffs[i] x^i.

    Never certifies irreducibility: "unknown" means no obstruction was found.
    Candidate roots are zeta_N^j y^e for |e| up to the largest y-degree.
    """
    poly = _xpoly_trim(list(coeffs))
    if len(poly) < 2:
        raise InvalidParams("need a polynomial of positive degree in x")
    order = poly[0].order
    deriv = [c * i for i, c in enumerate(poly)][1:]
    common = _xpoly_gcd(poly, deriv)
    squarefree = len(common) <= 1
    if max_degree is None:
        max_degree = max(max(c.num.degree, c.den.degree) for c in poly if not c.is_zero())
    y = RatFunc.y(order)
    units = {root_of_unity(order, j) for j in range(order)}
    units |= {-u for u in units}
    candidates = [RatFunc.zero(order)] + [
        y ** e * RatFunc.constant(order, u)
        for e in range(-max_degree, max_degree + 1)
        for u in sorted(units, key=str)
    ]
    for cand in candidates:
        if _xpoly_eval(poly, cand).is_zero():
            return ProbeResult("has-root", squarefree, cand)
    if not squarefree:
        return ProbeResult("not-squarefree", False)
    return ProbeResult("unknown", True)
