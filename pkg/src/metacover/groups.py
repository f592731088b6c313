"""Metacyclic groups G(m,k,t,r) and finite metabelian presentations.

Elements are kept in the normal form ``sigma^a tau^b``.  Multiplication is
collected from the defining relation ``sigma tau = tau sigma^r``, which gives
``tau^b sigma^a = sigma^(a r^-b) tau^b``; the overflow ``tau^t = sigma^k``
deposits ``k`` into the sigma exponent.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import BoundExceeded, InconsistentPresentation, InvalidParams, OrderMismatch

DEFAULT_BOUND = 4096


# -- metacyclic ----------------------------------------------------------------


@dataclass(frozen=True)
class MetacyclicParams:
    m: int
    k: int
    t: int
    r: int

    @property
    def order(self) -> int:
        return self.m * self.t

    @functools.cached_property
    def r_inv(self) -> int:
        return pow(self.r, -1, self.m)

    @functools.cached_property
    def _rinv_powers(self) -> tuple[int, ...]:
        return tuple(pow(self.r_inv, b, self.m) for b in range(self.t))

    def to_json(self) -> dict:
        return {"m": self.m, "k": self.k, "t": self.t, "r": self.r}

    @classmethod
    def from_json(cls, data: dict) -> "MetacyclicParams":
        return cls(int(data["m"]), int(data["k"]), int(data["t"]), int(data["r"]))

    def __str__(self):
        return f"G({self.m},{self.k},{self.t},{self.r})"


class Element(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class Condition:
    name: str
    symbol: str  # how the violation reads, e.g. "r^t ≢ 1 (mod m)"
    passed: bool


@dataclass
class MetacyclicReport:
    params: MetacyclicParams
    conditions: list[Condition]
    split: bool = False
    abelian: bool = False
    cyclic: bool = False
    t_minimal_heuristic: bool = True

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def failures(self) -> list[Condition]:
        return [c for c in self.conditions if not c.passed]

    @property
    def tau_order(self) -> int | None:
        if not self.valid:
            return None
        p = self.params
        return p.m * p.t // math.gcd(p.k, p.m)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "valid": self.valid,
            "conditions": [
                {"name": c.name, "symbol": c.symbol, "passed": c.passed} for c in self.conditions
            ],
            "order": self.params.order if self.valid else None,
            "tau_order": self.tau_order,
            "split": self.split,
            "abelian": self.abelian,
            "cyclic_by_gcd": self.cyclic,
            "t_minimal_heuristic": self.t_minimal_heuristic,
        }


def validate_metacyclic(p: MetacyclicParams) -> MetacyclicReport:
    """Check the defining congruences and report structural flags.

    ``t_minimal_heuristic`` is False when a proper divisor t' of t also has
    r^t' = 1 (mod m).  It is advisory only; it does not affect validity.
    """
    m, k, t, r = p.m, p.k, p.t, p.r
    in_range = m >= 1 and t >= 1 and 1 <= k <= m and 1 <= r <= m
    conditions = [Condition("range", "require m,t >= 1, 1 <= k <= m, 1 <= r <= m", in_range)]
    if not (m >= 1 and t >= 1):
        return MetacyclicReport(p, conditions)
    conditions += [
        Condition("r^t = 1 mod m", "r^t ≢ 1 (mod m)", pow(r, t, m) == 1 % m),
        Condition("k r = k mod m", "k·r ≢ k (mod m)", (k * r - k) % m == 0),
        Condition("gcd(r, m) = 1", "gcd(r, m) ≠ 1", math.gcd(r, m) == 1),
    ]
    minimal = not any(t % d == 0 and pow(r, d, m) == 1 % m for d in range(1, t))
    return MetacyclicReport(
        p,
        conditions,
        split=(k == m),
        abelian=(r % m == 1 % m),
        cyclic=(math.gcd(k, m) == 1),
        t_minimal_heuristic=minimal,
    )


def require_valid(p: MetacyclicParams) -> None:
    report = validate_metacyclic(p)
    if not report.valid:
        raise InvalidParams("; ".join(c.symbol for c in report.failures) + f" for {p}")


def mc_mul(p: MetacyclicParams, g: Element, h: Element) -> Element:
    m, t = p.m, p.t
    b = g[1] + h[1]
    a = g[0] + h[0] * p._rinv_powers[g[1]] + p.k * (b // t)
    return Element(a % m, b % t)


def mc_identity(p: MetacyclicParams) -> Element:
    return Element(0, 0)


def mc_elements(p: MetacyclicParams) -> Iterator[Element]:
    for a in range(p.m):
        for b in range(p.t):
            yield Element(a, b)


def mc_inv(p: MetacyclicParams, g: Element) -> Element:
    # g has finite order, so g^-1 = g^(ord g - 1).
    x = g
    prev = Element(0, 0)
    while x != (0, 0):
        prev = x
        x = mc_mul(p, x, g)
    return prev


def mc_pow(p: MetacyclicParams, g: Element, e: int) -> Element:
    if e < 0:
        g, e = mc_inv(p, g), -e
    result = Element(0, 0)
    while e:
        if e & 1:
            result = mc_mul(p, result, g)
        g = mc_mul(p, g, g)
        e >>= 1
    return result


def mc_order(p: MetacyclicParams, g: Element) -> int:
    n, x = 1, g
    while x != (0, 0):
        x = mc_mul(p, x, g)
        n += 1
    return n


def _check_bound(n: int, bound: int) -> None:
    if n > bound:
        raise BoundExceeded(f"group order {n} exceeds bound {bound}")


def conjugacy_classes(p: MetacyclicParams, bound: int = DEFAULT_BOUND) -> list[list[Element]]:
    """Partition G into conjugacy classes.

    Each class is the orbit of an element under conjugation by the two
    generators, which generate the full conjugation action.  Classes are sorted
    internally and listed by their smallest element.
    """
    _check_bound(p.order, bound)
    gens = [Element(1 % p.m, 0), Element(0, 1 % p.t)]
    gens = [(g, mc_inv(p, g)) for g in gens]
    seen: set[Element] = set()
    classes = []
    for x in mc_elements(p):
        if x in seen:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g, gi in gens:
                z = mc_mul(p, mc_mul(p, gi, y), g)
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        seen |= orbit
        classes.append(sorted(orbit))
    return classes


def order_histogram(p: MetacyclicParams) -> Counter:
    return Counter(mc_order(p, g) for g in mc_elements(p))


def _generated(p: MetacyclicParams, gens: Sequence[Element]) -> set[Element]:
    group = {Element(0, 0)}
    frontier = [Element(0, 0)]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = mc_mul(p, x, g)
            if y not in group:
                group.add(y)
                frontier.append(y)
    return group


def iso_check(p1: MetacyclicParams, p2: MetacyclicParams, bound: int = 64) -> bool:
    """Decide whether G(p1) and G(p2) are isomorphic by generator search.

    G(p1) is the group presented by its relations and has exactly m*t
    elements, so any pair (x, y) in G(p2) obeying the relations defines a
    homomorphism; it is an isomorphism when x and y generate G(p2).
    """
    require_valid(p1)
    require_valid(p2)
    if p1.order != p2.order:
        raise OrderMismatch(f"orders differ: {p1.order} vs {p2.order}")
    _check_bound(p1.order, bound)
    if order_histogram(p1) != order_histogram(p2):
        return False
    m, k, t, r = p1.m, p1.k, p1.t, p1.r
    elems = list(mc_elements(p2))
    sigma_candidates = [x for x in elems if mc_order(p2, x) == m]
    for x in sigma_candidates:
        xk = mc_pow(p2, x, k)
        xr = mc_pow(p2, x, r)
        for y in elems:
            if mc_pow(p2, y, t) != xk:
                continue
            if mc_mul(p2, x, y) != mc_mul(p2, y, xr):
                continue
            if len(_generated(p2, [x, y])) == p2.order:
                return True
    return False


# -- metabelian ---------------------------------------------------------------


class MetaElement(NamedTuple):
    avec: tuple[int, ...]
    bvec: tuple[int, ...]


@dataclass(frozen=True)
class MetabelianPresentation:
    """<sigma_i, tau_j> with tau_j^-1 sigma_i tau_j = prod_u sigma_u^(M_j[u][i])
    and tau_j^(a_j) = prod_u sigma_u^(K_j[u])."""

    sigma_orders: tuple[int, ...]
    tau_orders: tuple[int, ...]
    action_matrices: tuple[tuple[tuple[int, ...], ...], ...]
    k_vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma_orders", tuple(int(x) for x in self.sigma_orders))
        object.__setattr__(self, "tau_orders", tuple(int(x) for x in self.tau_orders))
        object.__setattr__(
            self,
            "action_matrices",
            tuple(tuple(tuple(int(x) for x in row) for row in mat) for mat in self.action_matrices),
        )
        object.__setattr__(
            self, "k_vectors", tuple(tuple(int(x) for x in v) for v in self.k_vectors)
        )

    @property
    def s(self) -> int:
        return len(self.sigma_orders)

    @property
    def l(self) -> int:
        return len(self.tau_orders)

    @property
    def order(self) -> int:
        return math.prod(self.sigma_orders) * math.prod(self.tau_orders)

    @classmethod
    def from_metacyclic(cls, p: MetacyclicParams) -> "MetabelianPresentation":
        return cls((p.m,), (p.t,), (((p.r % p.m,),),), ((p.k % p.m,),))

    def to_json(self) -> dict:
        return {
            "sigma_orders": list(self.sigma_orders),
            "tau_orders": list(self.tau_orders),
            "action_matrices": [[list(row) for row in mat] for mat in self.action_matrices],
            "k_vectors": [list(v) for v in self.k_vectors],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MetabelianPresentation":
        return cls(
            data["sigma_orders"], data["tau_orders"], data["action_matrices"], data["k_vectors"]
        )

    # -- automorphism helpers on A = prod Z/m_u --

    def apply(self, j: int, vec: Sequence[int], power: int = 1) -> tuple[int, ...]:
        """Image of sigma^vec under conjugation by tau_j^power (power >= 0)."""
        mat = self.action_matrices[j]
        v = tuple(vec)
        for _ in range(power):
            v = tuple(
                sum(mat[u][i] * v[i] for i in range(self.s)) % self.sigma_orders[u]
                for u in range(self.s)
            )
        return v

    def a_elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(n) for n in self.sigma_orders))

    def elements(self) -> Iterator[MetaElement]:
        for a in self.a_elements():
            for b in itertools.product(*(range(n) for n in self.tau_orders)):
                yield MetaElement(a, b)

    def identity(self) -> MetaElement:
        return MetaElement((0,) * self.s, (0,) * self.l)


def mb_mul(pres: MetabelianPresentation, g: MetaElement, h: MetaElement) -> MetaElement:
    """Normal-form product.

    ``tau_j sigma^y = sigma^(M_j^-1 y) tau_j`` and ``M_j^-1 = M_j^(a_j - 1)`` on a
    valid presentation, so the sigma block of h is pushed left through tau^b1.
    """
    y = h.avec
    for j, bj in enumerate(g.bvec):
        if bj:
            y = pres.apply(j, y, (pres.tau_orders[j] - 1) * bj)
    a = [x + z for x, z in zip(g.avec, y)]
    b = []
    for j, (b1, b2) in enumerate(zip(g.bvec, h.bvec)):
        s = b1 + b2
        if s >= pres.tau_orders[j]:
            s -= pres.tau_orders[j]
            a = [x + kx for x, kx in zip(a, pres.k_vectors[j])]
        b.append(s)
    return MetaElement(tuple(x % n for x, n in zip(a, pres.sigma_orders)), tuple(b))


@dataclass
class MetabelianReport:
    presentation: MetabelianPresentation
    violations: list[str] = field(default_factory=list)
    associativity: str = "not checked"

    @property
    def valid(self) -> bool:
        return not self.violations

    def raise_if_invalid(self) -> None:
        if self.violations:
            raise InconsistentPresentation("; ".join(self.violations))

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation.to_json(),
            "valid": self.valid,
            "violations": list(self.violations),
            "associativity": self.associativity,
            "order": self.presentation.order,
        }


def _shape_violations(pres: MetabelianPresentation) -> list[str]:
    s, l = pres.s, pres.l
    out = []
    if any(n < 1 for n in pres.sigma_orders + pres.tau_orders):
        out.append("orders must be positive")
    if len(pres.action_matrices) != l or len(pres.k_vectors) != l:
        out.append("need one action matrix and one k-vector per tau generator")
    for j, mat in enumerate(pres.action_matrices):
        if len(mat) != s or any(len(row) != s for row in mat):
            out.append(f"M_{j + 1} must be {s}x{s}")
    for j, vec in enumerate(pres.k_vectors):
        if len(vec) != s:
            out.append(f"k-vector {j + 1} must have length {s}")
    return out


def _is_automorphism(pres: MetabelianPresentation, j: int) -> str | None:
    mat = pres.action_matrices[j]
    for i, mi in enumerate(pres.sigma_orders):
        for u, mu in enumerate(pres.sigma_orders):
            if (mat[u][i] * mi) % mu:
                return (
                    f"M_{j + 1} is not well defined on A: "
                    f"sigma_{i + 1}^{mi} = 1 is not preserved"
                )
    images = {pres.apply(j, v) for v in pres.a_elements()}
    if len(images) != math.prod(pres.sigma_orders):
        if pres.s == 1:
            return (
                f"M_{j + 1} = ({mat[0][0]}) is not a unit mod {pres.sigma_orders[0]}"
            )
        return f"M_{j + 1} is not invertible mod the sigma orders"
    return None


def validate_metabelian(
    pres: MetabelianPresentation,
    exhaustive_limit: int = 512,
    samples: int = 100_000,
    seed: int = 0,
) -> MetabelianReport:
    report = MetabelianReport(pres)
    report.violations = _shape_violations(pres)
    if report.violations:
        return report
    v = report.violations
    for j in range(pres.l):
        problem = _is_automorphism(pres, j)
        if problem:
            v.append(problem)
    if v:
        return report
    basis = [tuple(int(i == u) for u in range(pres.s)) for i in range(pres.s)]
    for j, aj in enumerate(pres.tau_orders):
        for e in basis:
            if pres.apply(j, e, aj) != tuple(x % n for x, n in zip(e, pres.sigma_orders)):
                v.append(f"M_{j + 1}^{aj} ≠ id on A")
                break
    for i, j in itertools.combinations(range(pres.l), 2):
        for e in basis:
            if pres.apply(i, pres.apply(j, e)) != pres.apply(j, pres.apply(i, e)):
                v.append(f"M_{i + 1} and M_{j + 1} do not commute")
                break
    for i in range(pres.l):
        for j in range(pres.l):
            kv = tuple(x % n for x, n in zip(pres.k_vectors[j], pres.sigma_orders))
            if pres.apply(i, kv) != kv:
                v.append(f"M_{i + 1} does not fix k-vector {j + 1} (tau_{j + 1}^a_{j + 1} not central in tau block)")
    if v:
        return report
    n = pres.order
    if n <= exhaustive_limit:
        elems = list(pres.elements())
        index = {g: i for i, g in enumerate(elems)}
        table = np.array(
            [[index[mb_mul(pres, g, h)] for h in elems] for g in elems], dtype=np.int64
        )
        for a in range(n):
            if not np.array_equal(table[table[a, :], :], table[a, table]):
                v.append(f"associativity fails for left factor {elems[a]}")
                break
        for row in table:
            if len(set(row.tolist())) != n:
                v.append("multiplication table is not a Latin square")
                break
        report.associativity = f"exhaustive over {n}^3 triples"
    else:
        rng = random.Random(seed)
        elems = list(pres.elements())
        for _ in range(samples):
            x, y, z = (rng.choice(elems) for _ in range(3))
            if mb_mul(pres, mb_mul(pres, x, y), z) != mb_mul(pres, x, mb_mul(pres, y, z)):
                v.append(f"associativity fails at ({x}, {y}, {z})")
                break
        report.associativity = f"sampled {samples} triples"
    return report
