"""Complex irreducible representations of G(m,k,t,r).

An irrep is indexed by an orbit of ``l -> r*l (mod m)`` on exponents of
``zeta_m`` and by ``theta = zeta_(mt)^j`` solving
``theta^(t/s) = zeta^k`` with ``s`` the orbit size.  All matrices live in
Q(zeta_(mt)).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BoundExceeded, InvalidParams
from .exactnum import (
    Cyclotomic,
    lift_to_order,
    mat_eq,
    mat_identity,
    mat_mul,
    mat_pow,
    root_of_unity,
)
from .groups import (
    DEFAULT_BOUND,
    Element,
    MetacyclicParams,
    conjugacy_classes,
    mc_elements,
    require_valid,
)


@dataclass(frozen=True)
class OrbitData:
    rep_exponent: int
    size: int
    elements: tuple[int, ...]

    def to_json(self) -> dict:
        return {"rep": self.rep_exponent, "size": self.size, "elements": list(self.elements)}

    @classmethod
    def from_json(cls, data: dict) -> "OrbitData":
        return cls(int(data["rep"]), int(data["size"]), tuple(int(x) for x in data["elements"]))


@dataclass(frozen=True)
class Irrep:
    orbit: OrbitData
    theta_exponent: int  # theta = zeta_(mt)^theta_exponent

    @property
    def dim(self) -> int:
        return self.orbit.size

    def to_json(self) -> dict:
        return {"orbit": self.orbit.to_json(), "theta_exponent": self.theta_exponent, "dim": self.dim}


@dataclass(frozen=True)
class RepMatrices:
    sigma: tuple
    tau: tuple

    @property
    def order(self) -> int:
        return self.sigma[0][0].order


def orbits(m: int, r: int) -> list[OrbitData]:
    if m < 1 or math.gcd(r, m) != 1:
        raise InvalidParams(f"gcd(r, m) ≠ 1 for m={m}, r={r}")
    seen = [False] * m
    out = []
    for l in range(m):
        if seen[l]:
            continue
        elems = []
        x = l
        while not seen[x]:
            seen[x] = True
            elems.append(x)
            x = x * r % m
        out.append(OrbitData(l, len(elems), tuple(sorted(elems))))
    return out


def thetas(p: MetacyclicParams, orbit: OrbitData) -> list[int]:
    """All j mod mt with j*(t/s) = k*l*t (mod mt).

    With d = t/s dividing mt, the solutions are k*l*s + i*(mt/d), i < d.
    """
    n = p.m * p.t
    d = p.t // orbit.size
    base = p.k * orbit.rep_exponent * orbit.size
    step = n // d
    sols = sorted({(base + i * step) % n for i in range(d)})
    assert len(sols) == d and all((j * d - p.k * orbit.rep_exponent * p.t) % n == 0 for j in sols)
    return sols


def irreps(p: MetacyclicParams) -> list[Irrep]:
    require_valid(p)
    out = []
    for orb in orbits(p.m, p.r):
        if p.t % orb.size:
            raise InvalidParams(f"orbit size {orb.size} does not divide t={p.t}")
        out.extend(Irrep(orb, j) for j in thetas(p, orb))
    return out


def nu_formula(p: MetacyclicParams) -> int:
    """t * sum over orbits of 1/t(zeta)."""
    nu = p.t * sum(Fraction(1, o.size) for o in orbits(p.m, p.r))
    assert nu.denominator == 1
    return int(nu)


def rep_matrices(p: MetacyclicParams, irrep: Irrep) -> RepMatrices:
    n = p.m * p.t
    d = irrep.dim
    zero = Cyclotomic.zero(n)
    one = root_of_unity(n, 0)
    l = irrep.orbit.rep_exponent
    # zeta_m^(l r^i) = zeta_(mt)^(l r^i t)
    diag = [root_of_unity(n, l * pow(p.r, i, p.m) * p.t) for i in range(d)]
    sigma = tuple(tuple(diag[i] if i == j else zero for j in range(d)) for i in range(d))
    theta = root_of_unity(n, irrep.theta_exponent)
    rows = []
    for i in range(d):
        row = [zero] * d
        if i == 0:
            row[d - 1] = theta
        else:
            row[i - 1] = one
        rows.append(tuple(row))
    return RepMatrices(sigma, tuple(rows))


def verify_rep(p: MetacyclicParams, mats: RepMatrices) -> bool:
    """Check T(s)^m = I, T(t)^t = T(s)^k and T(s)T(t) = T(t)T(s)^r exactly."""
    s, t = mats.sigma, mats.tau
    d = len(s)
    if len(t) != d or any(len(row) != d for row in s + t):
        return False
    ident = mat_identity(d, mats.order)
    if not mat_eq(mat_pow(s, p.m), ident):
        return False
    if not mat_eq(mat_pow(t, p.t), mat_pow(s, p.k)):
        return False
    return mat_eq(mat_mul(s, t), mat_mul(t, mat_pow(s, p.r)))


def element_matrix(mats: RepMatrices, g: Element) -> tuple:
    return mat_mul(mat_pow(mats.sigma, g.a), mat_pow(mats.tau, g.b))


@functools.lru_cache(maxsize=4096)
def character_root_counts(p: MetacyclicParams, irrep: Irrep) -> tuple[tuple[int, ...], ...]:
    """For each element (a, b) in ``mc_elements`` order, the diagonal of T(g)
    as a list of root exponents in order mt (zeros omitted).

    Every T(g) is monomial with root-of-unity entries, so the trace is a sum
    of roots of unity.
    """
    mats = rep_matrices(p, irrep)
    n = p.m * p.t
    out = []
    sig_pows = [mat_pow(mats.sigma, a) for a in range(p.m)]
    tau_pows = [mat_pow(mats.tau, b) for b in range(p.t)]
    for a in range(p.m):
        for b in range(p.t):
            mat = mat_mul(sig_pows[a], tau_pows[b])
            exps = []
            for i, row in enumerate(mat):
                x = row[i]
                if x.is_zero():
                    continue
                e = x.root_exponent
                if e is None:
                    raise AssertionError("non-monomial representation matrix")
                exps.append(e % n)
            out.append(tuple(exps))
    return tuple(out)


@functools.lru_cache(maxsize=4096)
def _linear_exponents(p: MetacyclicParams, irrep: Irrep) -> np.ndarray:
    # a 1-dimensional character takes exactly one root value per element
    return np.array([e for (e,) in character_root_counts(p, irrep)], dtype=np.int64)


def character(p: MetacyclicParams, irrep: Irrep) -> list[Cyclotomic]:
    n = p.m * p.t
    values = []
    for exps in character_root_counts(p, irrep):
        counts = [0] * n
        for e in exps:
            counts[e] += 1
        values.append(Cyclotomic.from_root_counts(n, counts))
    return values


def char_inner(
    p: MetacyclicParams, irrep1: Irrep, irrep2: Irrep, bound: int = DEFAULT_BOUND
) -> Fraction:
    """(1/|G|) sum_g tr T1(g) * conj(tr T2(g)), summed over every element.

    The products of diagonal roots are accumulated as exponent counts in
    Z[x]/(x^N - 1) and reduced modulo Phi_N once at the end.
    """
    n = p.m * p.t
    if n > bound:
        raise BoundExceeded(f"group order {n} exceeds bound {bound}")
    if irrep1.dim == 1 and irrep2.dim == 1:
        diff = (_linear_exponents(p, irrep1) - _linear_exponents(p, irrep2)) % n
        counts = np.bincount(diff, minlength=n)
    else:
        counts = [0] * n
        for e1s, e2s in zip(character_root_counts(p, irrep1), character_root_counts(p, irrep2)):
            for e1 in e1s:
                for e2 in e2s:
                    counts[(e1 - e2) % n] += 1
    total = Cyclotomic.from_root_counts(n, counts)
    if not total.is_rational():
        raise AssertionError(f"inner product is not rational: {total}")
    return total.to_rational() / n


@dataclass
class CharacterTable:
    params: MetacyclicParams
    irreps: list[Irrep]
    classes: list[list[Element]]
    values: list[list[Cyclotomic]]  # values[irrep][class]

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "classes": [
                {"representative": list(c[0]), "size": len(c)} for c in self.classes
            ],
            "rows": [
                {
                    "orbit_rep": ir.orbit.rep_exponent,
                    "theta_exponent": ir.theta_exponent,
                    "dim": ir.dim,
                    "values": [str(v) for v in row],
                }
                for ir, row in zip(self.irreps, self.values)
            ],
        }

    def render(self, approx: bool = False) -> str:
        header = ["irrep"] + [f"({c[0].a},{c[0].b})x{len(c)}" for c in self.classes]
        lines = ["\t".join(header)]
        for ir, row in zip(self.irreps, self.values):
            label = f"l={ir.orbit.rep_exponent},j={ir.theta_exponent},dim={ir.dim}"
            cells = [_fmt_approx(v) if approx else str(v) for v in row]
            lines.append("\t".join([label] + cells))
        return "\n".join(lines)


def _fmt_approx(v: Cyclotomic) -> str:
    z = v.approx()
    return f"{z.real:.4f}{z.imag:+.4f}i"


def character_table(p: MetacyclicParams, bound: int = DEFAULT_BOUND) -> CharacterTable:
    classes = conjugacy_classes(p, bound)
    irr = irreps(p)
    index = {g: i for i, g in enumerate(mc_elements(p))}
    values = []
    for ir in irr:
        chi = character(p, ir)
        values.append([chi[index[c[0]]] for c in classes])
    return CharacterTable(p, irr, classes, values)


def theta_value(p: MetacyclicParams, irrep: Irrep) -> Cyclotomic:
    return root_of_unity(p.m * p.t, irrep.theta_exponent)


def zeta_value(p: MetacyclicParams, orbit: OrbitData) -> Cyclotomic:
    return lift_to_order(root_of_unity(p.m, orbit.rep_exponent), p.m * p.t)
