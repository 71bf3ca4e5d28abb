from fractions import Fraction

import pytest
from hypothesis import given, settings

from _strategies import family_pairs
from abcf.attractor import LOWER, UPPER, build_domain, named_params
from abcf.coding import closed_geodesic, geodesic, reduce
from abcf.core import params
from abcf.duality import dual_params, dual_report, has_dual, juxtaposition_check, periodic_reversal_check, verify_duality
from abcf.errors import NoDual
from abcf.surd import parse_number
from abcf.verify import check_juxtaposition, check_mutual_dual, check_self_dual

F = Fraction
HURWITZ = named_params("hurwitz")
HURWITZ_DUAL = named_params("hurwitz-dual")
CATALOG = ["minus", "alternating", "hurwitz", "hurwitz-dual", "golden-self-dual", "rational-self-dual"]


def test_has_dual_examples():
    assert has_dual(HURWITZ)
    assert has_dual(named_params("minus"))
    assert not has_dual(params(F(-4, 5), F(2, 5)))


def test_dual_param_examples():
    q = dual_params(HURWITZ)
    assert (q.a, q.b) == (parse_number("(1-sqrt(5))/2"), parse_number("(-1+sqrt(5))/2"))
    for name in ("golden-self-dual", "rational-self-dual", "minus", "alternating"):
        p = named_params(name)
        assert dual_params(p) == p


@pytest.mark.parametrize("name", CATALOG)
def test_duality_is_an_involution(name):
    p = named_params(name)
    q = dual_params(p)
    assert dual_params(q) == p


@pytest.mark.parametrize("name", CATALOG)
def test_dual_pairs_sit_in_the_unit_square_and_have_no_inner_levels(name):
    p = named_params(name)
    assert -1 <= p.a <= 0 <= p.b <= 1
    d = build_domain(p)
    for r in d.component(LOWER):
        assert not (p.a < r.w_hi < 0)
    for r in d.component(UPPER):
        assert not (0 < r.w_lo < p.b)


def test_strong_cycle_has_no_dual():
    p = params(F(-4, 5), F(2, 5))
    with pytest.raises(NoDual):
        dual_params(p)
    rep = dual_report(p)
    assert not rep.has_dual and rep.witness in ("a", "b")


@given(family_pairs(mirror=False))
@settings(max_examples=25)
def test_dual_implies_unit_square(p):
    if has_dual(p):
        assert -1 <= p.a <= 0 <= p.b <= 1


@pytest.mark.parametrize("name", ["minus", "alternating", "golden-self-dual", "rational-self-dual"])
def test_self_dual(name):
    assert check_self_dual(name).ok


def test_mutual_dual_both_ways():
    assert check_mutual_dual().ok
    assert verify_duality(HURWITZ, HURWITZ_DUAL).ok
    assert verify_duality(HURWITZ_DUAL, HURWITZ).ok


def test_perturbed_dual_fails_with_witness():
    bad = params(HURWITZ_DUAL.a + F(1, 1000), HURWITZ_DUAL.b)
    res = verify_duality(HURWITZ, bad)
    assert not res.ok
    assert res.counterexample is not None


def test_juxtaposition_small():
    assert check_juxtaposition("hurwitz", count=40, seed=3).ok


def test_juxtaposition_vacuous():
    g = geodesic(F(-1, 3), 3)
    assert juxtaposition_check(g, HURWITZ, HURWITZ_DUAL, 0)


def test_periodic_reversal():
    done = 0
    for text in ["(3+sqrt(5))/2", "2+sqrt(5)", "(5+sqrt(5))/2", "(7+3*sqrt(5))/2", "(9+sqrt(5))/4"]:
        g = closed_geodesic(parse_number(text))
        g0, _ = reduce(g, HURWITZ)
        assert periodic_reversal_check(g0, HURWITZ, HURWITZ_DUAL)
        done += 1
    assert done == 5
