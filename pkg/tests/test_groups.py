import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from metacover.errors import BoundExceeded, InconsistentPresentation, InvalidParams, OrderMismatch
from metacover.groups import (
    Element,
    MetabelianPresentation,
    MetaElement,
    MetacyclicParams,
    conjugacy_classes,
    iso_check,
    mb_mul,
    mc_elements,
    mc_inv,
    mc_mul,
    mc_order,
    mc_pow,
    require_valid,
    validate_metabelian,
    validate_metacyclic,
)
from support import valid_params

D3 = MetacyclicParams(3, 3, 2, 2)
Q8 = MetacyclicParams(4, 2, 2, 3)
G8423 = MetacyclicParams(8, 4, 2, 3)


def brute_force_class_count(p):
    elems = list(mc_elements(p))
    seen, count = set(), 0
    for y in elems:
        if y in seen:
            continue
        count += 1
        seen |= {mc_mul(p, mc_mul(p, mc_inv(p, x), y), x) for x in elems}
    return count


def test_validation_examples():
    d3 = validate_metacyclic(D3)
    assert d3.valid and d3.split and not d3.abelian
    q8 = validate_metacyclic(Q8)
    assert q8.valid and not q8.split and not q8.abelian
    assert q8.tau_order == 4
    bad = validate_metacyclic(MetacyclicParams(5, 5, 2, 3))
    assert not bad.valid
    assert [c.symbol for c in bad.failures] == ["r^t ≢ 1 (mod m)"]
    with pytest.raises(InvalidParams, match="r\\^t"):
        require_valid(MetacyclicParams(5, 5, 2, 3))


def test_report_json():
    data = validate_metacyclic(Q8).to_json()
    assert data["order"] == 8 and data["tau_order"] == 4 and data["split"] is False
    assert MetacyclicParams.from_json(data["params"]) == Q8


def test_products():
    assert mc_mul(D3, Element(0, 0), Element(2, 1)) == (2, 1)
    assert mc_mul(D3, Element(0, 1), Element(1, 0)) == (2, 1)
    assert mc_mul(Q8, Element(0, 1), Element(0, 1)) == (2, 0)


def test_orders():
    assert mc_order(D3, Element(0, 0)) == 1
    assert mc_order(Q8, Element(0, 1)) == 4
    assert mc_order(G8423, Element(1, 0)) == 8


@pytest.mark.parametrize("p, count", [(D3, 3), (Q8, 5), (G8423, 7)])
def test_class_counts(p, count):
    assert len(conjugacy_classes(p)) == count


def test_class_bound():
    with pytest.raises(BoundExceeded):
        conjugacy_classes(MetacyclicParams(64, 64, 2, 63), bound=100)


def test_iso():
    assert iso_check(MetacyclicParams(3, 3, 2, 2), MetacyclicParams(3, 3, 2, 2))
    assert not iso_check(MetacyclicParams(3, 3, 2, 2), MetacyclicParams(6, 6, 1, 1))
    assert not iso_check(Q8, MetacyclicParams(4, 4, 2, 3))
    # the dicyclic group of order 12, presented two ways
    assert iso_check(MetacyclicParams(6, 3, 2, 5), MetacyclicParams(3, 3, 4, 2))
    with pytest.raises(OrderMismatch):
        iso_check(D3, Q8)


@pytest.mark.parametrize("p", valid_params(32), ids=str)
def test_relations_and_classes(p):
    sigma = Element(1 % p.m, 0)
    tau = Element(0, 1) if p.t > 1 else Element(p.k % p.m, 0)  # t = 1 means tau = sigma^k
    one = Element(0, 0)
    assert mc_pow(p, sigma, p.m) == one
    assert mc_pow(p, tau, p.t) == mc_pow(p, sigma, p.k)
    assert mc_mul(p, sigma, tau) == mc_mul(p, tau, mc_pow(p, sigma, p.r))
    assert len(conjugacy_classes(p)) == brute_force_class_count(p)
    classes = conjugacy_classes(p)
    assert sorted(x for c in classes for x in c) == sorted(mc_elements(p))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(valid_params(40)), st.data())
def test_associativity_and_inverse(p, data):
    elem = st.builds(Element, st.integers(0, p.m - 1), st.integers(0, p.t - 1))
    x, y, z = data.draw(elem), data.draw(elem), data.draw(elem)
    assert mc_mul(p, mc_mul(p, x, y), z) == mc_mul(p, x, mc_mul(p, y, z))
    assert mc_mul(p, x, mc_inv(p, x)) == (0, 0)
    assert math.lcm(*(mc_order(p, g) for g in mc_elements(p))) % mc_order(p, x) == 0


# -- metabelian ----------------------------------------------------------------

D3_META = MetabelianPresentation((3,), (2,), (((2,),),), ((0,),))
WREATH = MetabelianPresentation((2, 2), (2,), (((0, 1), (1, 0)),), ((0, 0),))


def test_metabelian_valid_examples():
    assert validate_metabelian(D3_META).valid
    report = validate_metabelian(WREATH)
    assert report.valid and report.associativity.startswith("exhaustive")
    assert WREATH.order == 8


def test_metabelian_invalid_unit():
    report = validate_metabelian(MetabelianPresentation((4,), (2,), (((2,),),), ((0,),)))
    assert not report.valid
    with pytest.raises(InconsistentPresentation):
        report.raise_if_invalid()


def test_metabelian_products():
    g = MetaElement((1,), (1,))
    assert mb_mul(D3_META, D3_META.identity(), g) == g
    assert mb_mul(D3_META, MetaElement((0,), (1,)), MetaElement((1,), (0,))) == ((2,), (1,))
    assert mb_mul(WREATH, MetaElement((0, 0), (1,)), MetaElement((1, 0), (0,))) == ((0, 1), (1,))


@pytest.mark.parametrize("p", valid_params(24), ids=str)
def test_metabelian_agrees_with_metacyclic(p):
    pres = MetabelianPresentation.from_metacyclic(p)
    assert validate_metabelian(pres).valid
    for (a1, b1), (a2, b2) in itertools.product(mc_elements(p), repeat=2):
        prod = mb_mul(pres, MetaElement((a1,), (b1,)), MetaElement((a2,), (b2,)))
        expected = mc_mul(p, Element(a1, b1), Element(a2, b2))
        assert prod == ((expected.a,), (expected.b,))


def test_metabelian_json_round_trip():
    assert MetabelianPresentation.from_json(WREATH.to_json()) == WREATH
