"""Building data of abelian covers over an abstract Picard group.

Everything here is lattice bookkeeping: classes are integer vectors in
Z^rank x prod Z/torsion and the fundamental relations are checked as exact
vector identities.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .abchars import (
    AbChar,
    FiniteAbelianGroup,
    char_mul,
    char_value_exponent,
    trivial_char,
)
from .errors import InvalidData, PathDependence

__all__ = [
    "PicardModel",
    "PicClass",
    "BranchLabel",
    "BuildingData",
    "ReducedBuildingData",
    "Violation",
    "CanonicalClasses",
    "a_coeff",
    "epsilon",
    "d_class",
    "check_fundamental",
    "complete_reduced",
    "extend_along_generators",
    "a_identity_check",
    "associativity_check",
    "inertia_injection_check",
    "cover_equations",
    "canonical_classes",
    "pushforward_canonical_plan",
]


# -- Picard model -----------------------------------------------------------


@dataclass(frozen=True)
class PicardModel:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(x) for x in self.torsion))
        if self.rank < 0 or any(x < 1 for x in self.torsion):
            raise InvalidData("Picard rank must be ≥ 0 and torsion orders ≥ 1")

    @property
    def dim(self) -> int:
        return self.rank + len(self.torsion)

    def cls(self, coords: Sequence[int]) -> "PicClass":
        return PicClass(tuple(coords), self)

    def zero(self) -> "PicClass":
        return PicClass((0,) * self.dim, self)

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: Mapping) -> "PicardModel":
        return cls(int(data["rank"]), tuple(data.get("torsion", ())))


@dataclass(frozen=True)
class PicClass:
    coords: tuple[int, ...]
    model: PicardModel

    def __post_init__(self):
        coords = tuple(int(x) for x in self.coords)
        if len(coords) != self.model.dim:
            raise InvalidData(
                f"class has {len(coords)} coordinates, Picard model needs {self.model.dim}"
            )
        rank = self.model.rank
        coords = coords[:rank] + tuple(
            x % n for x, n in zip(coords[rank:], self.model.torsion)
        )
        object.__setattr__(self, "coords", coords)

    def _check(self, other: "PicClass") -> None:
        if other.model != self.model:
            raise InvalidData("classes live in different Picard models")

    def __add__(self, other: "PicClass") -> "PicClass":
        self._check(other)
        return PicClass(tuple(x + y for x, y in zip(self.coords, other.coords)), self.model)

    def __sub__(self, other: "PicClass") -> "PicClass":
        self._check(other)
        return PicClass(tuple(x - y for x, y in zip(self.coords, other.coords)), self.model)

    def __neg__(self) -> "PicClass":
        return PicClass(tuple(-x for x in self.coords), self.model)

    def __mul__(self, c: int) -> "PicClass":
        return PicClass(tuple(c * x for x in self.coords), self.model)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def degree(self) -> int:
        """First free coordinate; the degree when Pic is Z (e.g. the line)."""
        if self.model.rank < 1:
            raise InvalidData("degree needs a free Picard coordinate")
        return self.coords[0]

    def to_json(self) -> list[int]:
        return list(self.coords)

    def __str__(self):
        return "[" + ",".join(map(str, self.coords)) + "]"


# -- building data ----------------------------------------------------------


@dataclass(frozen=True)
class BranchLabel:
    """Branch component D_i with class ``divisor_class`` and inertia generator ``g``."""

    divisor_class: PicClass
    g: tuple[int, ...]
    section_name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(int(x) for x in self.g))

    def order(self, group: FiniteAbelianGroup) -> int:
        return group.element_order(self.g)


def _check_labels(group: FiniteAbelianGroup, labels: Sequence[BranchLabel]) -> None:
    for i, lab in enumerate(labels):
        if len(lab.g) != group.rank:
            raise InvalidData(f"label {i + 1}: g has {len(lab.g)} coordinates, need {group.rank}")
        if not any(x % m for x, m in zip(lab.g, group.factors)):
            raise InvalidData(f"label {i + 1}: g_{i + 1} = identity")


def section_names(labels: Sequence[BranchLabel]) -> list[str]:
    return [lab.section_name or f"s_{i + 1}" for i, lab in enumerate(labels)]


@dataclass
class BuildingData:
    group: FiniteAbelianGroup
    model: PicardModel
    labels: list[BranchLabel]
    L: dict[AbChar, PicClass]

    def __post_init__(self):
        _check_labels(self.group, self.labels)
        for lab in self.labels:
            if lab.divisor_class.model != self.model:
                raise InvalidData("divisor class outside the Picard model")
        missing = [chi for chi in self.group.characters() if chi not in self.L]
        if missing:
            raise InvalidData(f"L is not defined at {missing[0]}")
        if not self.L[trivial_char(self.group)].is_zero():
            raise InvalidData("L at the trivial character must be 0")

    def to_json(self) -> dict:
        return {
            "picard": self.model.to_json(),
            "group": self.group.to_json(),
            "labels": _labels_json(self.labels),
            "L": [{"chi": list(chi.exponents), "class": self.L[chi].to_json()} for chi in sorted(self.L)],
        }


@dataclass
class ReducedBuildingData:
    """Classes L_j for a generating set chi_1..chi_s of the character group."""

    group: FiniteAbelianGroup
    model: PicardModel
    labels: list[BranchLabel]
    generators: list[AbChar]
    classes: list[PicClass]

    def __post_init__(self):
        _check_labels(self.group, self.labels)
        if len(self.generators) != len(self.classes):
            raise InvalidData("one class is needed per generator character")

    def to_json(self) -> dict:
        return {
            "picard": self.model.to_json(),
            "group": self.group.to_json(),
            "labels": _labels_json(self.labels),
            "L": [
                {"chi": list(chi.exponents), "class": c.to_json()}
                for chi, c in zip(self.generators, self.classes)
            ],
        }


def _labels_json(labels):
    out = []
    for lab in labels:
        item = {"class": lab.divisor_class.to_json(), "g": list(lab.g)}
        if lab.section_name:
            item["name"] = lab.section_name
        out.append(item)
    return out


def parse_building_json(data: Mapping):
    """Split a building-data document into (group, model, labels, L entries, K_W)."""
    model = PicardModel.from_json(data["picard"])
    group = FiniteAbelianGroup.from_json(data["group"])
    labels = [
        BranchLabel(model.cls(item["class"]), tuple(item["g"]), item.get("name", ""))
        for item in data.get("labels", [])
    ]
    entries = [
        (AbChar(group.reduce(item["chi"])), model.cls(item["class"])) for item in data.get("L", [])
    ]
    k_w = model.cls(data["K_W"]) if data.get("K_W") is not None else None
    return group, model, labels, entries, k_w


# -- a and epsilon ----------------------------------------------------------


def a_coeff(group: FiniteAbelianGroup, labels: Sequence[BranchLabel], chi: AbChar, i: int) -> int:
    """The a in [0, m_i) with chi(g_i) = zeta_(m_i)^a."""
    g = labels[i].g
    m_i = group.element_order(g)
    e = char_value_exponent(group, chi, g)
    step = group.exponent // m_i
    assert e % step == 0
    return (e // step) % m_i


def epsilon(group, labels, chi1: AbChar, chi2: AbChar, i: int) -> int:
    m_i = labels[i].order(group)
    return (a_coeff(group, labels, chi1, i) + a_coeff(group, labels, chi2, i)) // m_i


def _d_class(group, model, labels, chi1, chi2) -> PicClass:
    total = model.zero()
    for i, lab in enumerate(labels):
        if epsilon(group, labels, chi1, chi2, i):
            total = total + lab.divisor_class
    return total


def d_class(bd: BuildingData, chi1: AbChar, chi2: AbChar) -> PicClass:
    """D_(chi1,chi2) = sum_i eps^i D_i."""
    return _d_class(bd.group, bd.model, bd.labels, chi1, chi2)


@dataclass(frozen=True)
class Violation:
    chi1: AbChar
    chi2: AbChar
    lhs: PicClass
    rhs: PicClass

    def __str__(self):
        return (
            f"L_{self.chi1} + L_{self.chi2} = {self.lhs} ≢ "
            f"L_(chi chi') + D_(chi,chi') = {self.rhs}"
        )

    def to_json(self) -> dict:
        return {
            "chi": list(self.chi1.exponents),
            "chi_prime": list(self.chi2.exponents),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        }


def check_fundamental(bd: BuildingData) -> list[Violation]:
    """All unordered pairs where L_chi + L_chi' differs from L_(chi chi') + D_(chi,chi')."""
    chars = sorted(bd.L)
    out = []
    for x, chi1 in enumerate(chars):
        for chi2 in chars[x:]:
            lhs = bd.L[chi1] + bd.L[chi2]
            rhs = bd.L[char_mul(bd.group, chi1, chi2)] + d_class(bd, chi1, chi2)
            if lhs != rhs:
                out.append(Violation(chi1, chi2, lhs, rhs))
    return out


def _extend(rbd: ReducedBuildingData, order: Sequence[int]) -> dict[AbChar, PicClass]:
    group, model, labels = rbd.group, rbd.model, rbd.labels
    start = trivial_char(group)
    L = {start: model.zero()}
    queue = deque([start])
    while queue:
        chi = queue.popleft()
        for j in order:
            gen = rbd.generators[j]
            nxt = char_mul(group, chi, gen)
            if nxt not in L:
                L[nxt] = L[chi] + rbd.classes[j] - _d_class(group, model, labels, chi, gen)
                queue.append(nxt)
    if len(L) != group.order:
        raise InvalidData(
            f"generator characters span only {len(L)} of {group.order} characters"
        )
    return L


def extend_along_generators(rbd: ReducedBuildingData) -> BuildingData:
    """Breadth-first extension of L without any consistency check."""
    return BuildingData(rbd.group, rbd.model, list(rbd.labels), _extend(rbd, range(len(rbd.generators))))


def _complete(rbd: ReducedBuildingData, order: Sequence[int]) -> dict[AbChar, PicClass]:
    L = _extend(rbd, order)
    group, model, labels = rbd.group, rbd.model, rbd.labels
    for chi in L:
        for j in order:
            gen = rbd.generators[j]
            expected = L[chi] + rbd.classes[j] - _d_class(group, model, labels, chi, gen)
            nxt = char_mul(group, chi, gen)
            if L[nxt] != expected:
                raise PathDependence(
                    f"L_{nxt} is {L[nxt]} along one path and {expected} via {chi}·{gen}"
                )
    return L


def complete_reduced(rbd: ReducedBuildingData) -> BuildingData:
    """Extend L to every character by L(chi chi_j) = L(chi) + L_j - D_(chi,chi_j)."""
    for gen in rbd.generators:
        if gen.exponents != rbd.group.reduce(gen.exponents):
            raise InvalidData(f"{gen} is not reduced")
    forward = list(range(len(rbd.generators)))
    L = _complete(rbd, forward)
    if _complete(rbd, forward[::-1]) != L:
        raise PathDependence("completion depends on the generator order")
    return BuildingData(rbd.group, rbd.model, list(rbd.labels), L)


# -- group-side checks ------------------------------------------------------


def _tables(group: FiniteAbelianGroup, labels: Sequence[BranchLabel]):
    chars = list(group.characters())
    index = {chi: x for x, chi in enumerate(chars)}
    prod = np.array(
        [[index[char_mul(group, c1, c2)] for c2 in chars] for c1 in chars], dtype=np.int64
    )
    a = np.array(
        [[a_coeff(group, labels, chi, i) for chi in chars] for i in range(len(labels))],
        dtype=np.int64,
    ).reshape(len(labels), len(chars))
    orders = np.array([lab.order(group) for lab in labels], dtype=np.int64)
    return prod, a, orders


def a_identity_check(group: FiniteAbelianGroup, labels: Sequence[BranchLabel]) -> bool:
    """a_chi + a_chi' = a_(chi chi') + m_i eps for every pair and label."""
    _check_labels(group, labels)
    prod, a, orders = _tables(group, labels)
    for i in range(len(labels)):
        lhs = a[i][:, None] + a[i][None, :]
        eps = lhs // orders[i]
        if not np.array_equal(lhs, a[i][prod] + orders[i] * eps):
            return False
        if not np.all((eps == 0) | (eps == 1)):
            return False
    return True


def associativity_check(group: FiniteAbelianGroup, labels: Sequence[BranchLabel]) -> bool:
    """eps(x,y) + eps(xy,z) = eps(y,z) + eps(x,yz) for all triples and labels."""
    _check_labels(group, labels)
    prod, a, orders = _tables(group, labels)
    for i in range(len(labels)):
        eps = (a[i][:, None] + a[i][None, :]) // orders[i]
        left = eps[:, :, None] + eps[prod]
        right = eps[None, :, :] + eps[np.arange(len(eps))[:, None, None], prod[None, :, :]]
        if not np.array_equal(left, right):
            return False
    return True


def inertia_injection_check(
    group: FiniteAbelianGroup, labels: Sequence[BranchLabel], subset: Sequence[int]
) -> bool:
    """True iff H_(i_1) + ... + H_(i_l) is a direct sum inside the group."""
    if not subset:
        raise InvalidData("subset of labels must be nonempty")
    span = {(0,) * group.rank}
    expected = 1
    for i in subset:
        g = labels[i].g
        m_i = group.element_order(g)
        expected *= m_i
        span = {group.add(x, group.scale(g, c)) for x in span for c in range(m_i)}
    return len(span) == expected


# -- equations and canonical classes ----------------------------------------


def _zname(chi: AbChar) -> str:
    return "z[" + ",".join(map(str, chi.exponents)) + "]"


def cover_equations(bd: BuildingData) -> list[str]:
    """z_chi z_chi' = (prod_i s_i^eps) z_(chi chi') for unordered nontrivial pairs."""
    bad = check_fundamental(bd)
    if bad:
        raise InvalidData(f"fundamental relation fails: {bad[0]}")
    names = section_names(bd.labels)
    chars = [chi for chi in sorted(bd.L) if not chi.is_trivial()]
    out = []
    for x, chi1 in enumerate(chars):
        for chi2 in chars[x:]:
            left = f"{_zname(chi1)}^2" if chi1 == chi2 else f"{_zname(chi1)}*{_zname(chi2)}"
            factors = [
                names[i]
                for i in range(len(bd.labels))
                if epsilon(bd.group, bd.labels, chi1, chi2, i)
            ]
            prod = char_mul(bd.group, chi1, chi2)
            if not prod.is_trivial():
                factors.append(_zname(prod))
            out.append(f"{left} = {'*'.join(factors) or '1'}")
    return out


@dataclass(frozen=True)
class CanonicalClasses:
    c1_Lprime: PicClass
    K_V_descent: PicClass
    branch_total: PicClass
    totally_ramified: bool  # every inertia group is all of G, as f^*D = n R_red needs
    pullback_rule: str = "f^*D = n*R_red"

    def to_json(self) -> dict:
        return {
            "c1_Lprime": self.c1_Lprime.to_json(),
            "K_V_descent": self.K_V_descent.to_json(),
            "branch_total": self.branch_total.to_json(),
            "pullback_rule": self.pullback_rule,
            "totally_ramified": self.totally_ramified,
        }


def canonical_classes(rbd: ReducedBuildingData, k_w: PicClass, n: int) -> CanonicalClasses:
    """c1(L') = sum L_j; K_V is the pullback of K_W + (n-1) c1(L').

    The formula presumes f^*D = n R_red, i.e. every label generates the whole
    group; ``totally_ramified`` records whether the data satisfy that.
    """
    if n < 1:
        raise InvalidData("group order must be positive")
    c1 = rbd.model.zero()
    for c in rbd.classes:
        c1 = c1 + c
    branch = rbd.model.zero()
    for lab in rbd.labels:
        branch = branch + lab.divisor_class
    total = all(lab.order(rbd.group) == n for lab in rbd.labels)
    return CanonicalClasses(c1, k_w + (n - 1) * c1, branch, total)


@dataclass(frozen=True)
class SummandDescriptor:
    index: int
    cls: PicClass
    factor: str

    def to_json(self) -> dict:
        return {"index": self.index, "class": self.cls.to_json(), "factor": self.factor}


def pushforward_canonical_plan(
    t: int, c1_lprime_q: PicClass, omega_y: PicClass, u_indices: Sequence[int]
) -> list[SummandDescriptor]:
    """One summand omega_Y + (t-1) c1(L'_q), tensored with U_i, per index."""
    cls = omega_y + (t - 1) * c1_lprime_q
    return [SummandDescriptor(i, cls, f"U_{i}") for i in u_indices]
