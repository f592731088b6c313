import pytest
from hypothesis import given, settings, strategies as st

from metacover.abchars import AbChar, FiniteAbelianGroup
from metacover.decomp import (
    MetabelianCoverData,
    check_metabelian_cover_data,
    corollary_counts,
    decomposition_plan,
    q_level_check,
    q_level_check_cyclic,
    rep_kernel,
    u_twist,
)
from metacover.errors import NotPrime
from metacover.exactnum import root_of_unity
from metacover.groups import Element, MetabelianPresentation, MetacyclicParams, mc_elements
from metacover.pardini import BranchLabel, PicardModel
from metacover.reps import irreps, nu_formula
from support import load_fixture, valid_params

Q8 = MetacyclicParams(4, 2, 2, 3)
G8423 = MetacyclicParams(8, 4, 2, 3)


def dihedral(n):
    return MetacyclicParams(n, n, 2, n - 1)


def orbit_sets(blocks):
    return sorted(b.orbit.elements for b in blocks)


@pytest.mark.parametrize("n", range(3, 21))
def test_dihedral_census(n):
    plan = decomposition_plan(dihedral(n))
    assert plan.rank == 2 * n
    if n % 2:
        assert orbit_sets(plan.descends_blocks) == [(0,)]
        assert len(plan.full_blocks) == (n - 1) // 2
    else:
        assert orbit_sets(plan.descends_blocks) == [(0,), (n // 2,)]
        assert len(plan.full_blocks) == (n - 2) // 2


def test_q8_plan():
    plan = decomposition_plan(Q8)
    assert orbit_sets(plan.descends_blocks) == [(0,), (2,)]
    assert orbit_sets(plan.full_blocks) == [(1, 3)]
    assert plan.full_blocks[0].u_indices == (1, 3)
    assert plan.full_blocks[0].theta_exponent == 4


def test_d6_kernel_contains_the_dihedral_subgroup():
    plan = decomposition_plan(dihedral(6))
    block = [b for b in plan.descends_blocks if b.orbit.elements == (3,)][0]
    theta_one = dict(block.irrep_kernels)[0]
    h = {Element(a, b) for a in (0, 2, 4) for b in (0, 1)}  # <sigma^2, tau>
    assert set(theta_one) == h
    assert {Element(2, 0), Element(4, 0)} <= set(block.kernel)


def test_kernels():
    trivial = [ir for ir in irreps(Q8) if ir.orbit.elements == (0,) and ir.theta_exponent == 0][0]
    assert rep_kernel(Q8, trivial) == list(mc_elements(Q8))
    faithful = [ir for ir in irreps(Q8) if ir.dim == 2][0]
    assert rep_kernel(Q8, faithful) == [Element(0, 0)]


def test_descends_kernel_can_be_trivial():
    # abelian and non-minimal-t presentations give faithful irreps on singleton orbits
    for p in (MetacyclicParams(3, 3, 2, 1), MetacyclicParams(7, 7, 6, 2)):
        plan = decomposition_plan(p)
        assert any(len(b.kernel) == 1 for b in plan.descends_blocks)


def test_corollary_counts():
    q8 = corollary_counts(Q8)
    assert (q8.b, q8.h) == (2, 1) and nu_formula(Q8) == 5
    g = corollary_counts(G8423)
    assert (g.b, g.h) == (2, 3) and nu_formula(G8423) == 7
    d7 = corollary_counts(dihedral(7))
    assert (d7.b, d7.h) == (1, 3)
    with pytest.raises(NotPrime):
        corollary_counts(MetacyclicParams(5, 5, 4, 2))


def test_u_twist():
    assert u_twist(MetacyclicParams(5, 5, 1, 1), 2).scalar == 1
    tw = u_twist(Q8, 1)
    assert (tw.image, tw.scalar) == (3, -1)
    tw = u_twist(G8423, 2)
    assert (tw.image, tw.scalar) == (6, root_of_unity(8, 4))
    assert tw.to_json() == {"source": 2, "image": 6, "scalar": {"zeta_order": 8, "exponent": 4}}


@pytest.mark.parametrize("p", valid_params(36), ids=str)
def test_plan_invariants(p):
    plan = decomposition_plan(p)
    assert plan.rank == p.order
    covered = sorted(x for b in plan.blocks for x in b.orbit.elements)
    assert covered == list(range(p.m))
    for b in plan.full_blocks:
        assert b.orbit.size == p.t
    for b in plan.descends_blocks:
        assert b.orbit.size < p.t
        assert b.quotient_order * len(b.kernel) == p.order


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([q for q in valid_params(60) if q.t in (2, 3, 5)]))
def test_corollary_matches_orbits(p):
    counts = corollary_counts(p)
    assert counts.b + counts.h * p.t == p.m
    assert nu_formula(p) == p.t * counts.b + counts.h


def test_cover_data_fixtures():
    good = MetabelianCoverData.from_json(load_fixture("cover_d3.json"))
    assert check_metabelian_cover_data(good).valid
    assert MetabelianCoverData.from_json(good.to_json()) == good
    bad = check_metabelian_cover_data(MetabelianCoverData.from_json(load_fixture("cover_d3_bad.json")))
    items = sorted({(x.item, x.generator) for x in bad.mismatches})
    assert items == [(2, 0), (3, 0)]
    assert any("D_chi(1)" in str(x) for x in bad.mismatches)


def test_cover_data_from_wreath():
    pres = MetabelianPresentation((2, 2), (2,), (((0, 1), (1, 0)),), ((0, 0),))
    swap = {(a, b): (b, a) for a in range(2) for b in range(2)}
    data = MetabelianCoverData(pres, [swap], [swap], [[(2, 0)], [(1, 0)]])
    assert check_metabelian_cover_data(data).valid


def test_q_level():
    assert q_level_check_cyclic(2, [1], [2]) == []
    assert q_level_check_cyclic(3, [1], [2])
    assert q_level_check_cyclic(1, [5], [7]) == []
    model = PicardModel(1)
    v4 = FiniteAbelianGroup((2, 2))
    labels = [BranchLabel(model.cls([2]), g) for g in [(1, 0), (0, 1), (1, 1)]]
    gens = [AbChar((1, 0)), AbChar((0, 1))]
    assert q_level_check(v4, model, gens, [model.cls([2])] * 2, labels) == []
    assert q_level_check(v4, model, gens, [model.cls([2]), model.cls([3])], labels)
