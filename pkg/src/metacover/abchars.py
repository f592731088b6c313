"""Finite abelian groups, their characters, twists, and Kummer subgroups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .errors import InvalidData
from .exactnum import Cyclotomic, root_of_unity
from .groups import MetabelianPresentation

__all__ = [
    "FiniteAbelianGroup",
    "AbChar",
    "FactoredElement",
    "char_eval",
    "char_mul",
    "char_inv",
    "twist_char",
    "kummer_subgroup",
]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/m_1 x ... x Z/m_s; elements and characters are exponent vectors."""

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(x) for x in self.factors))
        if any(m < 1 for m in self.factors):
            raise InvalidData(f"cyclic factor orders must be ≥ 1, got {list(self.factors)}")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.factors) if self.factors else 1

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.rank:
            raise InvalidData(f"expected {self.rank} coordinates, got {len(vec)}")
        return tuple(int(x) % m for x, m in zip(vec, self.factors))

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All exponent vectors in lexicographic order."""
        vec = [0] * self.rank
        for _ in range(self.order):
            yield tuple(vec)
            for u in range(self.rank - 1, -1, -1):
                vec[u] += 1
                if vec[u] < self.factors[u]:
                    break
                vec[u] = 0

    def characters(self) -> Iterator["AbChar"]:
        for vec in self.elements():
            yield AbChar(vec)

    def add(self, g, h) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(g, h, self.factors))

    def scale(self, g, c: int) -> tuple[int, ...]:
        return tuple((x * c) % m for x, m in zip(g, self.factors))

    def element_order(self, g) -> int:
        return math.lcm(1, *(m // math.gcd(x, m) for x, m in zip(g, self.factors)))

    def to_json(self) -> dict:
        return {"factors": list(self.factors)}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteAbelianGroup":
        return cls(data["factors"])


@dataclass(frozen=True, order=True)
class AbChar:
    """chi(sigma_u) = zeta_(m_u)^(exponents[u])."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(x) for x in self.exponents))

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def to_json(self) -> dict:
        return {"exponents": list(self.exponents)}

    @classmethod
    def from_json(cls, data: dict) -> "AbChar":
        return cls(data["exponents"])

    def __str__(self):
        return "chi(" + ",".join(map(str, self.exponents)) + ")"


def trivial_char(group: FiniteAbelianGroup) -> AbChar:
    return AbChar((0,) * group.rank)


def _check_char(group: FiniteAbelianGroup, chi: AbChar) -> None:
    if len(chi.exponents) != group.rank or any(
        not 0 <= e < m for e, m in zip(chi.exponents, group.factors)
    ):
        raise InvalidData(f"{chi} is not a reduced character of Z/{list(group.factors)}")


def char_value_exponent(group: FiniteAbelianGroup, chi: AbChar, g: Sequence[int]) -> int:
    """e with chi(g) = zeta_L^e, L the exponent of the group."""
    big = group.exponent
    return sum(e * x * (big // m) for e, x, m in zip(chi.exponents, g, group.factors)) % big


def char_eval(group: FiniteAbelianGroup, chi: AbChar, g: Sequence[int]) -> Cyclotomic:
    _check_char(group, chi)
    g = group.reduce(g)
    return root_of_unity(group.exponent, char_value_exponent(group, chi, g))


def char_mul(group: FiniteAbelianGroup, chi1: AbChar, chi2: AbChar) -> AbChar:
    _check_char(group, chi1)
    _check_char(group, chi2)
    return AbChar(group.add(chi1.exponents, chi2.exponents))


def char_inv(group: FiniteAbelianGroup, chi: AbChar) -> AbChar:
    _check_char(group, chi)
    return AbChar(group.scale(chi.exponents, -1))


def twist_char(pres: MetabelianPresentation, chi: AbChar, j: int, gamma: int) -> AbChar:
    """The character sigma_u -> chi(tau_j^-gamma sigma_u tau_j^gamma)."""
    group = FiniteAbelianGroup(pres.sigma_orders)
    _check_char(group, chi)
    if not 0 <= j < pres.l:
        raise InvalidData(f"no generator tau_{j + 1} in a presentation with {pres.l} of them")
    gamma %= pres.tau_orders[j]
    big = group.exponent
    out = []
    for u, m_u in enumerate(group.factors):
        unit = tuple(1 if v == u else 0 for v in range(group.rank))
        image = pres.apply(j, unit, gamma)
        e = char_value_exponent(group, chi, image)
        step = big // m_u
        if e % step:
            raise InvalidData(f"twisted value at sigma_{u + 1} is not an m_{u + 1}-th root")
        out.append((e // step) % m_u)
    return AbChar(out)


# -- Kummer theory ----------------------------------------------------------


@dataclass(frozen=True)
class FactoredElement:
    """prod label^exponent; constants are omitted since they are n-th powers."""

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        merged: dict[str, int] = {}
        for label, e in self.factors:
            merged[str(label)] = merged.get(str(label), 0) + int(e)
        object.__setattr__(
            self, "factors", tuple(sorted((k, v) for k, v in merged.items() if v))
        )

    def labels(self) -> list[str]:
        return [lab for lab, _ in self.factors]

    def exponent_of(self, label: str) -> int:
        return dict(self.factors).get(label, 0)

    def to_json(self) -> list:
        return [[lab, e] for lab, e in self.factors]

    @classmethod
    def from_json(cls, data: Sequence) -> "FactoredElement":
        return cls(tuple((lab, e) for lab, e in data))


def kummer_subgroup(elements: Sequence[FactoredElement], n: int) -> list[int]:
    """Invariant factors of the subgroup of K*/(K*)^n generated by ``elements``.

    The exponent vectors span a lattice in Z^labels; together with n*Z^labels it
    has Smith invariants d_i, and the generated subgroup is the sum of Z/(n/d_i).
    """
    if n < 2:
        raise InvalidData(f"n must be ≥ 2, got {n}")
    labels = sorted({lab for el in elements for lab in el.labels()})
    if not labels or not elements:
        return []
    rows = [[el.exponent_of(lab) % n for lab in labels] for el in elements]
    rows += [[n if i == j else 0 for j in range(len(labels))] for i in range(len(labels))]
    diag = invariant_factors(Matrix(rows), domain=ZZ)
    return sorted(n // int(d) for d in diag if n // int(d) > 1)
