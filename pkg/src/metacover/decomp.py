"""Block plans for the pushforward of the structure sheaf of a metacyclic cover.

A plan has one block per orbit of ``l -> r l`` on Z/m.  Orbits of full size t
give a single irreducible summand made of the t eigenspaces U_l, U_(rl), ...;
shorter orbits give summands whose representations all have a nontrivial
kernel, so those sections come from an intermediate cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from sympy import isprime

from .abchars import AbChar, FiniteAbelianGroup, twist_char
from .errors import BoundExceeded, NotPrime
from .exactnum import Cyclotomic, common_order, lift_to_order, multiplicative_order, root_of_unity
from .groups import (
    DEFAULT_BOUND,
    Element,
    MetabelianPresentation,
    MetacyclicParams,
    mc_elements,
    mc_inv,
    mc_mul,
    require_valid,
    validate_metabelian,
)
from .pardini import (
    BranchLabel,
    PicardModel,
    PicClass,
    ReducedBuildingData,
    Violation,
    check_fundamental,
    extend_along_generators,
)
from .reps import Irrep, OrbitData, character_root_counts, irreps, orbits, thetas

__all__ = [
    "Block",
    "DecompPlan",
    "UTwist",
    "decomposition_plan",
    "rep_kernel",
    "corollary_counts",
    "u_twist",
    "MetabelianCoverData",
    "check_metabelian_cover_data",
    "q_level_check",
    "q_level_check_cyclic",
]


def _scalar_json(order: int, exponent: int) -> dict:
    return {"zeta_order": order, "exponent": exponent % order}


def rep_kernel(p: MetacyclicParams, irrep: Irrep, bound: int = DEFAULT_BOUND) -> list[Element]:
    """All g with T(g) = I, in normal-form order; normality is asserted."""
    if p.order > bound:
        raise BoundExceeded(f"group order {p.order} exceeds bound {bound}")
    identity_diag = (0,) * irrep.dim
    # T(g) is monomial, so a diagonal of d ones means T(g) = I.
    kernel = [
        g
        for g, diag in zip(mc_elements(p), character_root_counts(p, irrep))
        if diag == identity_diag
    ]
    members = set(kernel)
    gens = (Element(1 % p.m, 0), Element(0, 1 % p.t))
    for x in kernel:
        for y in kernel:
            assert mc_mul(p, x, y) in members
        for s in gens:
            assert mc_mul(p, mc_mul(p, mc_inv(p, s), x), s) in members
    return kernel


@dataclass(frozen=True)
class Block:
    orbit: OrbitData
    kind: str  # "full" or "descends"
    u_indices: tuple[int, ...] = ()
    theta_exponent: int | None = None
    irrep_kernels: tuple[tuple[int, tuple[Element, ...]], ...] = ()
    kernel: tuple[Element, ...] = ()
    quotient_order: int | None = None

    @property
    def rank(self) -> int:
        """Rank of the summand: dim^2 summed over the irreps of this orbit."""
        if self.kind == "full":
            return self.orbit.size ** 2
        return self.orbit.size ** 2 * len(self.irrep_kernels)

    def to_json(self) -> dict:
        out = {"orbit": self.orbit.to_json(), "kind": self.kind}
        if self.kind == "full":
            out["u_indices"] = list(self.u_indices)
            out["theta_exponent"] = self.theta_exponent
        else:
            out["irreps"] = [
                {"theta_exponent": j, "kernel": [list(g) for g in ker]}
                for j, ker in self.irrep_kernels
            ]
            out["kernel"] = [list(g) for g in self.kernel]
            out["quotient_order"] = self.quotient_order
        return out


@dataclass(frozen=True)
class DecompPlan:
    params: MetacyclicParams
    blocks: tuple[Block, ...]

    @property
    def full_blocks(self) -> list[Block]:
        return [b for b in self.blocks if b.kind == "full"]

    @property
    def descends_blocks(self) -> list[Block]:
        return [b for b in self.blocks if b.kind == "descends"]

    @property
    def rank(self) -> int:
        return sum(b.rank for b in self.blocks)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "rank": self.rank,
            "full": len(self.full_blocks),
            "descends": len(self.descends_blocks),
            "blocks": [b.to_json() for b in self.blocks],
        }

    def render(self) -> str:
        lines = [f"{self.params}: {len(self.full_blocks)} full, {len(self.descends_blocks)} descends, rank {self.rank}"]
        for b in self.blocks:
            elems = "{" + ",".join(map(str, b.orbit.elements)) + "}"
            if b.kind == "full":
                us = " + ".join(f"U_{i}" for i in b.u_indices)
                lines.append(f"  full     orbit {elems}: {us}  theta=zeta({self.params.m * self.params.t})^{b.theta_exponent}")
            else:
                lines.append(
                    f"  descends orbit {elems}: kernel order {len(b.kernel)}, quotient order {b.quotient_order}"
                )
        return "\n".join(lines)


def _kernel_intersection(kernels: Sequence[Sequence[Element]]) -> tuple[Element, ...]:
    common = set(kernels[0])
    for ker in kernels[1:]:
        common &= set(ker)
    return tuple(sorted(common))


def decomposition_plan(p: MetacyclicParams, bound: int = DEFAULT_BOUND) -> DecompPlan:
    require_valid(p)
    n = p.m * p.t
    by_orbit: dict[int, list[Irrep]] = {}
    for ir in irreps(p):
        by_orbit.setdefault(ir.orbit.rep_exponent, []).append(ir)
    blocks = []
    for orb in orbits(p.m, p.r):
        if orb.size == p.t:
            l = orb.rep_exponent
            u = tuple(l * pow(p.r, i, p.m) % p.m for i in range(p.t))
            # theta = zeta_l^k, i.e. zeta_(mt)^(k l t)
            theta = p.k * l * p.t % n
            assert thetas(p, orb) == [theta]
            blocks.append(Block(orb, "full", u_indices=u, theta_exponent=theta))
        else:
            kernels = tuple(
                (ir.theta_exponent, tuple(rep_kernel(p, ir, bound))) for ir in by_orbit[orb.rep_exponent]
            )
            common = _kernel_intersection([k for _, k in kernels])
            blocks.append(
                Block(
                    orb,
                    "descends",
                    irrep_kernels=kernels,
                    kernel=common,
                    quotient_order=n // len(common),
                )
            )
    plan = DecompPlan(p, tuple(blocks))
    assert plan.rank == n
    return plan


@dataclass(frozen=True)
class CorollaryCounts:
    b: int
    h: int
    singleton_orbits: int
    full_orbits: int

    def to_json(self) -> dict:
        return {"b": self.b, "h": self.h}


def corollary_counts(p: MetacyclicParams) -> CorollaryCounts:
    """For t prime: b = gcd(r-1, m) fixed exponents and h = (m-b)/t orbits of size t."""
    require_valid(p)
    if not isprime(p.t):
        raise NotPrime(f"t = {p.t} is not prime")
    b = math.gcd(p.r - 1, p.m)
    assert (p.m - b) % p.t == 0
    h = (p.m - b) // p.t
    sizes = [o.size for o in orbits(p.m, p.r)]
    singles, full = sizes.count(1), sizes.count(p.t)
    assert singles == b and full == h and singles + full == len(sizes)
    return CorollaryCounts(b, h, singles, full)


@dataclass(frozen=True)
class UTwist:
    source: int
    image: int
    scalar: Cyclotomic  # zeta_m^k, the action of tau^t on U_source

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "image": self.image,
            "scalar": _scalar_json(self.scalar.order, self.scalar.root_exponent),
        }


def u_twist(p: MetacyclicParams, i: int) -> UTwist:
    require_valid(p)
    return UTwist(i % p.m, p.r * i % p.m, root_of_unity(p.m, p.k))


# -- structure-theorem data checks -----------------------------------------


@dataclass
class MetabelianCoverData:
    """Per-generator permutations of the character-indexed labels plus scalars.

    ``scalars[i][j]`` is the declared action of tau_j^(a_j) on the sheaf
    labelled by the i-th generator character, as ``(zeta_order, exponent)``.
    """

    presentation: MetabelianPresentation
    divisor_perms: list[dict[tuple[int, ...], tuple[int, ...]]]
    sheaf_perms: list[dict[tuple[int, ...], tuple[int, ...]]]
    scalars: list[list[tuple[int, int]]]

    @classmethod
    def from_json(cls, data: Mapping) -> "MetabelianCoverData":
        pres = MetabelianPresentation.from_json(data["presentation"])

        def perms(key):
            return [
                {tuple(src): tuple(dst) for src, dst in pairs} for pairs in data.get(key, [])
            ]

        scalars = [
            [(int(x["zeta_order"]), int(x["exponent"])) for x in row] for row in data.get("scalars", [])
        ]
        return cls(pres, perms("divisor_permutations"), perms("sheaf_permutations"), scalars)

    def to_json(self) -> dict:
        def dump(perms):
            return [[[list(src), list(dst)] for src, dst in sorted(p.items())] for p in perms]

        return {
            "presentation": self.presentation.to_json(),
            "divisor_permutations": dump(self.divisor_perms),
            "sheaf_permutations": dump(self.sheaf_perms),
            "scalars": [[_scalar_json(n, e) for n, e in row] for row in self.scalars],
        }


@dataclass(frozen=True)
class Mismatch:
    item: int  # 2: permutations, 3: scalars
    generator: int
    detail: str

    def __str__(self):
        return f"item ({self.item}), tau_{self.generator + 1}: {self.detail}"


@dataclass
class CoverDataReport:
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"valid": self.valid, "mismatches": [str(x) for x in self.mismatches]}


def check_metabelian_cover_data(data: MetabelianCoverData) -> CoverDataReport:
    pres = data.presentation
    validate_metabelian(pres).raise_if_invalid()
    group = FiniteAbelianGroup(pres.sigma_orders)
    chars = list(group.characters())
    report = CoverDataReport()
    bad = report.mismatches
    for name, perms in (("divisor", data.divisor_perms), ("sheaf", data.sheaf_perms)):
        if len(perms) != pres.l:
            bad.append(Mismatch(2, 0, f"expected {pres.l} {name} permutations, got {len(perms)}"))
    for j in range(min(pres.l, len(data.divisor_perms))):
        perm = data.divisor_perms[j]
        for chi in chars:
            want = twist_char(pres, chi, j, 1).exponents
            got = perm.get(chi.exponents)
            if got != want:
                shown = AbChar(got) if got is not None else "(missing)"
                bad.append(Mismatch(2, j, f"D_{chi} ↦ D_{shown}, expected D_{AbChar(want)}"))
    for j in range(min(pres.l, len(data.sheaf_perms))):
        perm = data.sheaf_perms[j]
        if sorted(perm.values()) != sorted(perm.keys()) or set(perm) != {c.exponents for c in chars}:
            bad.append(Mismatch(2, j, "sheaf permutation is not a bijection of the characters"))
            continue
        a_j = pres.tau_orders[j]
        for chi in chars:
            cur = chi.exponents
            for gamma in range(1, a_j + 1):
                cur = perm[cur]
                want = twist_char(pres, chi, j, gamma).exponents
                if cur != want:
                    bad.append(
                        Mismatch(2, j, f"F_{chi} after {gamma} steps is F_{AbChar(cur)}, expected F_{AbChar(want)}")
                    )
                    break
            else:
                if cur != chi.exponents:
                    bad.append(Mismatch(3, j, f"F_{chi} does not return after a_j = {a_j} steps"))
    if len(data.scalars) != pres.s or any(len(row) != pres.l for row in data.scalars):
        bad.append(Mismatch(3, 0, f"expected a {pres.s} x {pres.l} table of scalars"))
        return report
    for i, m_i in enumerate(pres.sigma_orders):
        for j in range(pres.l):
            order, exponent = data.scalars[i][j]
            declared = root_of_unity(order, exponent)
            k_ij = pres.k_vectors[j][i]
            expected = root_of_unity(m_i, k_ij)
            n = common_order(declared.order, expected.order)
            if lift_to_order(declared, n) != lift_to_order(expected, n):
                bad.append(
                    Mismatch(3, j, f"scalar on F_(chi_{i + 1}) is zeta({order})^{exponent}, expected zeta({m_i})^{k_ij % m_i}")
                )
            elif multiplicative_order(expected) != m_i // math.gcd(k_ij, m_i):
                bad.append(Mismatch(3, j, f"scalar on F_(chi_{i + 1}) has the wrong multiplicative order"))
    return report


def q_level_check(
    group: FiniteAbelianGroup,
    model: PicardModel,
    generators: Sequence[AbChar],
    classes: Sequence[PicClass],
    labels: Sequence[BranchLabel],
) -> list[Violation]:
    """Fundamental relations for the quotient-group cover, extended from generators."""
    if group.order == 1:
        return []
    rbd = ReducedBuildingData(group, model, list(labels), list(generators), list(classes))
    return check_fundamental(extend_along_generators(rbd))


def q_level_check_cyclic(t: int, l_class: Sequence[int], b_class: Sequence[int], rank: int = 1) -> list[Violation]:
    """The cyclic case: one generator eta of Z/t with class L and one label of class B."""
    model = PicardModel(rank)
    group = FiniteAbelianGroup((t,))
    if t == 1:
        return []
    label = BranchLabel(model.cls(b_class), (1,), "s_q")
    return q_level_check(group, model, [AbChar((1,))], [model.cls(l_class)], [label])
