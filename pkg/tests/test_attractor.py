from fractions import Fraction

import pytest
from hypothesis import given, settings

from _strategies import family_pairs
from abcf.attractor import (
    LOWER,
    UPPER,
    NAMED_EXAMPLES,
    StepDomain,
    approx_domain,
    build_domain,
    detect_cycle,
    hat_lambda_of,
    hausdorff_hat,
    inverse_step,
    is_step_monotone,
    lambda_of,
    map_domain,
    named_params,
    natural_extension_step,
    family_K,
    family_case,
)
from abcf.core import params
from abcf.errors import FinitenessUndetected, UnsupportedParameters
from abcf.moebius import apply_word
from abcf.surd import INF, Surd
from abcf.verify import check_bijectivity, check_trapping

REF = params(Fraction(-4, 5), Fraction(2, 5))
F = Fraction


def test_step_examples():
    assert natural_extension_step(5, -2, REF) == (6, -1)
    assert natural_extension_step(2, 0, REF) == (Surd(-1, 0, 2), INF)
    assert natural_extension_step(-3, 1, REF) == (-4, 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7])
def test_weak_cycles_on_the_diagonal_family(n):
    ca, cb = detect_cycle(params(F(-1, n), 1 - F(1, n)))
    assert ca.status == "weak-cycle" and cb.status == "weak-cycle"


def test_reference_pair_cycles_quickly():
    for c in detect_cycle(REF, max_steps=50):
        assert c.status in ("weak-cycle", "strong-cycle")


def test_float_pair_without_cycle_detection():
    a = -0.3141592653589793
    with pytest.raises(FinitenessUndetected):
        detect_cycle(params(a, a + 1), max_steps=300)


@pytest.mark.parametrize("name", sorted(NAMED_EXAMPLES))
def test_cycle_words_reproduce_cycle_end(name):
    p = named_params(name)
    for c in detect_cycle(p):
        if c.cycle_end is None:
            continue
        x = p.a if c.endpoint == "a" else p.b
        assert apply_word(c.upper_word, x) == c.cycle_end
        assert apply_word(c.lower_word, x) == c.cycle_end


def test_reference_pair_corners():
    d = build_domain(REF)
    up = d.boundary_steps(UPPER)
    lo = d.boundary_steps(LOWER)
    upper_corners = {(u1, lvl) for u0, u1, lvl in up}
    lower_corners = {(u0, lvl) for u0, u1, lvl in lo}
    for c in [(-2, F(-3, 5)), (F(-3, 2), F(-1, 3)), (-1, F(1, 4))]:
        assert tuple(map(Surd.from_rational, c)) in upper_corners
    for c in [(2, F(-1, 2)), (3, F(1, 5))]:
        assert tuple(map(Surd.from_rational, c)) in lower_corners
    assert family_case(REF) == 2


def test_reference_pair_hat_lambda():
    hat = hat_lambda_of(build_domain(REF), REF)
    got = {tuple(r.as_floats()) for r in hat.rects}
    want = {
        (-3 / 5, -1 / 3, 0.0, 1 / 2),
        (-1 / 3, 1 / 4, 0.0, 2 / 3),
        (1 / 4, 2 / 5, 0.0, 1.0),
        (-4 / 5, -1 / 2, -1 / 2, 0.0),
        (-1 / 2, 1 / 5, -1 / 3, 0.0),
    }
    assert got == want
    assert all(isinstance(v, Surd) for r in hat.rects for v in (r.u_lo, r.u_hi, r.w_lo, r.w_hi))


def test_lambda_extent():
    lam = lambda_of(build_domain(REF), REF)
    assert all(-1 <= r.u_lo and r.u_hi <= 1 for r in lam.rects)


def _containment_ok(lam, p):
    a, b = p.a, p.b
    for r in lam.rects:
        if r.component == UPPER:
            if r.u_lo < 0 and r.w_lo < -1 / a:
                return False
            if r.u_hi > 0 and (b >= 1 or r.w_lo < 1 / (1 - b)):
                return False
        else:
            if r.u_lo < 0 and (a <= -1 or r.w_hi > -1 / (a + 1)):
                return False
            if r.u_hi > 0 and r.w_hi > -1 / b:
                return False
        if r.u_lo < -1 or r.u_hi > 1:
            return False
    return True


@pytest.mark.parametrize("name", ["hurwitz", "hurwitz-dual", "golden-self-dual", "rational-self-dual", "wide-right", "wide-left"])
def test_lambda_containment_named(name):
    p = named_params(name)
    assert _containment_ok(lambda_of(build_domain(p), p), p)


@given(family_pairs())
@settings(max_examples=40)
def test_family_domain_properties(p):
    d = build_domain(p)
    assert is_step_monotone(d)
    assert map_domain(d, p).equals(d)
    assert _containment_ok(lambda_of(d, p), p)


@pytest.mark.parametrize("name", sorted(NAMED_EXAMPLES))
def test_named_domains_are_invariant(name):
    p = named_params(name)
    d = build_domain(p)
    assert is_step_monotone(d)
    assert map_domain(d, p).equals(d)


def test_contains_conventions():
    d = build_domain(REF)
    for r in d.rects:
        assert d.contains(*r.center())
    assert not d.contains(Surd(0), Surd(0))
    assert not d.contains(Surd(1000), Surd(1000))
    assert d.contains(Surd(-2), F(-3, 5))


def test_empty_inputs():
    empty = StepDomain((), kind="D", params=REF)
    assert lambda_of(empty, REF).is_empty()
    assert hat_lambda_of(empty, REF).is_empty()
    assert approx_domain(REF, samples=0).is_empty()


@pytest.mark.parametrize("name, tol", [("minus", 2e-2), ("alternating", 2e-2), ("hurwitz", 2e-2)])
def test_oracle_matches_catalog(name, tol):
    p = named_params(name)
    sim = approx_domain(p, samples=100_000, seed=1)
    assert hausdorff_hat(sim, build_domain(p), p) <= tol


def test_oracle_matches_reference_pair():
    sim = approx_domain(REF, samples=100_000, seed=0)
    assert hausdorff_hat(sim, build_domain(REF), REF) <= 1e-2


def test_unsupported_pair_needs_oracle():
    with pytest.raises(UnsupportedParameters):
        build_domain(params(F(-1, 3), F(2, 3)))
    with pytest.raises(UnsupportedParameters):
        build_domain(params(-0.8, 0.4))


@pytest.mark.parametrize("name", ["hurwitz", "wide-right", "rational-self-dual"])
def test_trapping_and_bijectivity_elsewhere(name):
    p = named_params(name)
    assert check_trapping(p, count=2000).ok
    assert check_bijectivity(p, count=300).ok


def test_inverse_branch_is_unique_inside():
    d = build_domain(REF)
    z = (Surd(-3), Surd(1, 0, 3))
    assert d.contains(*z)
    w = natural_extension_step(*z, REF)
    assert inverse_step(*w, REF, d) == [z]


def test_closed_form_K_mirror_symmetry():
    p = params(F(-3, 4), F(1, 2))
    assert family_K(p) == pytest.approx(family_K(params(F(-1, 2), F(3, 4))))


def test_plain_steps_cannot_reach_from_far_out():
    # w near 10**3 needs hundreds of unit translations before any inversion
    p = params("-4/5", "2/5")
    assert not check_trapping(p, count=2000, accelerated=False).ok
    assert check_trapping(p, count=2000, window=100.0, accelerated=False).ok
