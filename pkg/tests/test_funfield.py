import pytest
from hypothesis import given, settings, strategies as st

from metacover.errors import (
    ConstraintViolated,
    InvalidParams,
    NonInvertible,
    NotInvariant,
    NotInZLevel,
    ZeroModulus,
)
from metacover.funfield import (
    TowerAuto,
    TowerSpec,
    alpha_of,
    define_sigma,
    define_tau,
    dicyclic_build,
    irreducibility_probe,
    norm_alpha_identity,
    norm_to_base,
    p_power_descent,
    t2_build,
    tower_build,
    verify_group_action,
)
from metacover.parser import parse_ratfunc
from metacover.ratfunc import RatFunc


def rf(text, order=1):
    return parse_ratfunc(text, order)


Q8_F = rf("y^2/(1-2*y)")
Q8_C = rf("y*(1-y)/(1-2*y)")


def d3():
    return t2_build(3, 3, 2, rf("y"), 1)


def q8():
    return t2_build(4, 2, 3, Q8_C, (RatFunc.zero(1), RatFunc.one(1)), Q8_F)


def test_base_field_tower():
    spec = TowerSpec(1, 1, rf("y"), 1, (rf("y"),), 1, 1)
    alg = tower_build(spec)
    assert alg.dimension == 1
    assert alg.v == alg.base(rf("y"))


def test_d3_algebra_dimension():
    assert d3().algebra.dimension == 6


def test_d3_tower():
    con = d3()
    alg, sigma, tau = con.algebra, con.sigma, con.tau
    assert con.report.valid and con.relation_holds
    assert tau.image_v == alg.v ** 2 * alg.g.inv()
    z3 = alg.root(3)
    assert sigma(tau(alg.v)) == z3.inv() * alg.v.inv()
    assert sigma(tau(alg.v)) == tau((sigma ** 2)(alg.v))
    alpha = alpha_of(alg, tau)
    assert alpha == alg.g.inv()
    assert norm_alpha_identity(alg, tau, alpha)
    descent = p_power_descent(alg, tau)
    assert descent.P == alg.one() and descent.u == 1
    assert norm_to_base(alg, tau, alg.g) == alg.one()  # (y + w)(y - w) = y^2 - f


def test_d3_wrong_tau_fails():
    alg = d3().algebra
    wrong = TowerAuto(alg.v, alg.root(2) * alg.w, "tau")
    report = verify_group_action(alg, define_sigma(alg), wrong)
    assert "στ = τσ^r" in report.failures


def test_q8_tower():
    con = q8()
    alg, tau = con.algebra, con.tau
    assert con.report.valid and con.relation_holds
    assert (tau ** 2)(alg.v) == -alg.v
    alpha = alpha_of(alg, tau)
    assert alpha == alg.w * alg.g.inv()
    assert norm_alpha_identity(alg, tau, alpha)
    descent = p_power_descent(alg, tau)
    assert descent.P == alg.w and descent.u == 2
    assert Q8_C * Q8_C - Q8_F * Q8_F == Q8_F


def test_d5_tower():
    con = t2_build(5, 5, 4, rf("y"), 1)
    alg = con.algebra
    assert con.valid
    alpha = alpha_of(alg, con.tau)
    assert norm_alpha_identity(alg, con.tau, alpha)
    assert p_power_descent(alg, con.tau).u == 1


def test_abelian_edge_case():
    con = t2_build(2, 2, 1, rf("y"), 1)
    assert con.valid


def test_t2_requires_divisibility():
    with pytest.raises(InvalidParams):
        t2_build(5, 5, 2, rf("y"), 1)
    with pytest.raises(ConstraintViolated):
        t2_build(3, 3, 2, rf("y"), 1, f=rf("y"))


def test_dicyclic():
    con = dicyclic_build(2, Q8_C, rf("1"), Q8_F)
    assert con.valid
    alg = con.algebra
    assert con.tau.image_v == alg.w * alg.v.inv()
    trivial = dicyclic_build(1, rf("y"), rf("0"), rf("y^2"))
    assert trivial.valid
    with pytest.raises(ConstraintViolated):
        dicyclic_build(2, rf("y"), rf("1"), rf("y"))


def test_trivial_tau_alpha():
    spec = TowerSpec(2, 2, rf("y", 2), 2, (rf("y+1", 2), rf("0", 2)), 1, 2)
    alg = tower_build(spec)
    tau = define_tau(alg, alpha=alg.root(2))
    assert verify_group_action(alg, define_sigma(alg), tau).valid
    assert alpha_of(alg, tau) == alg.root(2)
    assert norm_alpha_identity(alg, tau, alg.root(2))


def test_cyclic_descent():
    spec = TowerSpec(3, 1, rf("y", 3), 3, (rf("y+1", 3),), 1, 3)
    alg = tower_build(spec)
    tau = define_tau(alg, alpha=alg.one())
    assert verify_group_action(alg, define_sigma(alg), tau).valid
    descent = p_power_descent(alg, tau)
    assert descent.P == alg.v and descent.u == 3


def test_norms():
    con = d3()
    alg, tau = con.algebra, con.tau
    assert norm_to_base(alg, tau, alg.w) == alg.base(-alg.spec.f)
    h = alg.zlevel([rf("y", 6), RatFunc.one(6)])
    assert norm_to_base(alg, tau, h) == alg.base(rf("y^2", 6) - alg.spec.f)
    assert norm_to_base(alg, tau, alg.base(rf("y+1", 6))) == alg.base(rf("(y+1)^2", 6))
    with pytest.raises(NotInZLevel):
        norm_to_base(alg, tau, alg.v)


def test_alpha_must_be_invariant():
    alg = d3().algebra
    tau = define_tau(alg, alpha=alg.v)
    with pytest.raises(NotInvariant):
        alpha_of(alg, tau)


def test_zero_moduli():
    with pytest.raises(ZeroModulus):
        TowerSpec(2, 2, rf("0", 2), 1, (rf("1", 2), rf("0", 2)), 1, 1)
    with pytest.raises(ZeroModulus):
        TowerSpec(2, 2, rf("y", 2), 1, (rf("0", 2), rf("0", 2)), 1, 1)


def test_zero_divisor_has_witness():
    # w^2 = y^2 splits, so y - w is a zero divisor
    spec = TowerSpec(2, 2, rf("y^2", 2), 1, (rf("1", 2), rf("0", 2)), 1, 1)
    alg = tower_build(spec)
    x = alg.base(rf("y", 2)) - alg.w
    with pytest.raises(NonInvertible) as info:
        x.inv()
    witness = info.value.witness
    assert not witness.is_zero() and (x * witness).is_zero()


def test_probe():
    assert irreducibility_probe([rf("-y"), rf("0"), rf("1")]).verdict == "unknown"
    reducible = irreducibility_probe([rf("-y^2"), rf("0"), rf("1")])
    assert reducible.verdict == "has-root" and reducible.root ** 2 == rf("y^2")
    sextic = irreducibility_probe([rf("1"), rf("0"), rf("0"), rf("-2*y"), rf("0"), rf("0"), rf("1")])
    assert sextic.squarefree and sextic.verdict == "unknown"
    double = irreducibility_probe([rf("y^2"), rf("-2*y"), rf("1")])
    assert not double.squarefree


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=-3, max_value=3))
def test_dihedral_towers(half, shift):
    m = 2 * half + 1
    a = rf("y") + shift
    con = t2_build(m, m, m - 1, a, 1)
    alg = con.algebra
    assert con.valid
    assert norm_alpha_identity(alg, con.tau, alpha_of(alg, con.tau))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4))
def test_inverse_in_tower(coeffs):
    alg = d3().algebra
    x = alg.zlevel([rf("y", 6) * coeffs[0] + coeffs[1], rf("1", 6) * coeffs[2]]) + alg.v * coeffs[3]
    if x.is_zero():
        return
    assert x * x.inv() == alg.one()
