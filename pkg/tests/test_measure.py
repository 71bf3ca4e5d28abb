import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from _strategies import family_pairs
from abcf.attractor import build_domain, hat_lambda_of, named_params
from abcf.core import floor_ab, params
from abcf.errors import DomainError, InfiniteMeasure, RationalInput, UnsupportedCase, UseIterateCheck
from abcf.measure import (
    MINUS,
    PLUS,
    abramov_estimate,
    branch_partition,
    closed_form_K,
    density,
    density_from_hat,
    entropy,
    hat_image_rect,
    interior_samples,
    iterate_expansion,
    marginal_density,
    normalizer_K,
    qn_growth,
    qn_limit,
    random_branch_rect,
    rect_mass,
    rokhlin_entropy,
    transfer_check,
    transfer_residual,
)
from abcf.surd import Surd

F = Fraction
REF = params(F(-4, 5), F(2, 5))
K_REF = math.log(14 / 5)


def test_rect_mass_unit_square():
    assert rect_mass(0, 1, 0, 1) == pytest.approx(math.log(2), abs=1e-15)
    quad, _ = integrate.dblquad(lambda y, x: 1 / (1 + x * y) ** 2, 0, 1, 0, 1, epsabs=1e-13)
    assert abs(quad - math.log(2)) < 1e-10


def test_rect_mass_degenerate():
    assert rect_mass(0.1, 0.7, 0.3, 0.3) == 0


coords = st.floats(-0.9, 0.9, allow_nan=False)


@given(coords, coords, coords, coords)
def test_rect_mass_symmetry(x1, x2, y1, y2):
    x1, x2 = sorted((x1, x2))
    y1, y2 = sorted((y1, y2))
    assert rect_mass(x1, x2, y1, y2) == pytest.approx(rect_mass(y1, y2, x1, x2), abs=1e-12)


def test_normalizer_examples():
    assert abs(normalizer_K(REF) - K_REF) < 1e-10
    with pytest.raises(InfiniteMeasure):
        normalizer_K(params(-1, 0))


@given(family_pairs())
@settings(max_examples=30)
def test_rectangle_sum_equals_closed_form_on_family(p):
    assert abs(normalizer_K(p, check=False) - closed_form_K(p)) < 1e-10


def test_reference_pair_density_pieces():
    d = density(REF)
    got = [(p.lo, p.hi, p.form, p.c) for p in d.pieces]
    want = [
        (F(-3, 5), F(-1, 3), PLUS, 2),
        (F(-1, 3), F(1, 4), PLUS, F(3, 2)),
        (F(1, 4), F(2, 5), PLUS, 1),
        (F(-4, 5), F(-1, 2), MINUS, 2),
        (F(-1, 2), F(1, 5), MINUS, 3),
    ]
    assert got == [tuple(Surd.from_rational(v) if not isinstance(v, str) else v for v in w) for w in want]
    assert d(-0.7) == pytest.approx(1 / 2.7, abs=1e-15)
    assert d.total_mass() / d.K == pytest.approx(1.0, abs=1e-9)
    quad, _ = integrate.quad(d, -0.8, 0.4, points=d.breakpoints(), limit=200, epsabs=1e-13)
    assert abs(quad - d.K) < 1e-9


def test_density_outside_family():
    with pytest.raises(UnsupportedCase):
        density(named_params("hurwitz"))


@given(family_pairs())
@settings(max_examples=25)
def test_closed_form_density_matches_hat_route(p):
    d1, d2 = density(p), density_from_hat(p)
    a, b = p.as_floats()
    for x in np.linspace(a, b, 203)[1:-1]:
        assert d1(x) == pytest.approx(d2(x), abs=1e-12)


def test_marginal_density_matches_pieces():
    hat = hat_lambda_of(build_domain(REF), REF)
    d = density(REF)
    rng = random.Random(0)
    for _ in range(200):
        x = rng.uniform(-0.8, 0.4)
        assert abs(marginal_density(hat, x) - d(x)) < 1e-9


def test_transfer_operator_invariance():
    d = density(REF)
    xs = interior_samples(d, REF, 1000)
    assert transfer_check(d, REF, xs) < 1e-9
    assert transfer_check(d.perturbed(0, 1e-3), REF, xs) >= 1e-4


@given(family_pairs())
@settings(max_examples=20)
def test_transfer_invariance_on_family(p):
    d = density(p)
    assert transfer_check(d, p, interior_samples(d, p, 50)) < 1e-9


@pytest.mark.parametrize("name", ["hurwitz", "alternating", "rational-self-dual", "wide-right"])
def test_transfer_invariance_from_hat(name):
    p = named_params(name)
    d = density_from_hat(p)
    assert transfer_check(d, p, interior_samples(d, p, 100)) < 1e-9


def test_transfer_outside_interval():
    with pytest.raises(DomainError):
        transfer_residual(density(REF), REF, 0.5)


def test_entropy_values():
    assert entropy(REF) == pytest.approx(math.pi ** 2 / (3 * K_REF), rel=1e-12)
    assert round(entropy(REF), 3) == 3.195
    assert entropy(REF, K=2.0) < entropy(REF, K=1.0)


def test_rokhlin_formula():
    assert abs(rokhlin_entropy(density(REF)) - entropy(REF)) < 1e-6


@given(family_pairs())
@settings(max_examples=20)
def test_rokhlin_on_family(p):
    assert abs(rokhlin_entropy(density(p)) - entropy(p)) < 1e-6


def test_qn_growth_single_point():
    x = math.pi - 3
    assert abs(qn_growth(REF, x, 10_000) / qn_limit(REF) - 1) < 0.02
    assert qn_limit(REF) == pytest.approx(math.pi ** 2 / (6 * K_REF))


def test_qn_growth_edge_cases():
    x = 0.3
    n0 = floor_ab(x, REF)
    y = -1 / (x - n0)
    assert qn_growth(REF, x, 1) == pytest.approx(math.log(abs(floor_ab(y, REF))))
    with pytest.raises(RationalInput):
        qn_growth(REF, Surd(1, 0, 3), 100)


def test_two_dimensional_invariance():
    hat = hat_lambda_of(build_domain(REF), REF)
    rng = random.Random(3)
    for _ in range(500):
        q = random_branch_rect(hat, REF, rng)
        assert abs(rect_mass(*q) - rect_mass(*hat_image_rect(*q, REF))) < 1e-8


def test_image_rect_rejects_crossing():
    with pytest.raises(DomainError):
        hat_image_rect(-0.1, 0.1, 0.0, 0.2, REF)


def test_abramov_soft_check():
    est = abramov_estimate(REF, orbits=30, steps=1500, seed=2)
    assert abs(est / (math.pi ** 2 / 3) - 1) < 0.05


def test_branch_partition_hurwitz():
    p = named_params("hurwitz")
    bp = branch_partition(p)
    res = bp.check(samples=10_000)
    assert res["tau"] == 4 and res["expanding"] and res["bounded_distortion"] and res["finite_images"]
    rng = random.Random(0)
    fp = params(-0.5, 0.5)
    for _ in range(2000):
        x = rng.uniform(-0.5, 0.5)
        i = bp.index_of(x)
        if i is None:
            continue
        assert bp.digit(i) == floor_ab(-1 / x, fp)


@given(family_pairs())
@settings(max_examples=25)
def test_branch_partition_digits_on_family(p):
    bp = branch_partition(p)
    a, b = p.as_floats()
    fp = params(a, b)
    for x in np.linspace(a, b, 301)[1:-1]:
        i = bp.index_of(float(x))
        if i is not None:
            assert bp.digit(i) == floor_ab(-1 / float(x), fp)
            lo, hi = bp.image(i)
            assert a - 1e-12 <= float(lo) and float(hi) <= b + 1e-12


@pytest.mark.parametrize("name", ["wide-right", "wide-left"])
def test_iterate_expansion(name):
    p = named_params(name)
    with pytest.raises(UseIterateCheck):
        branch_partition(p)
    K, gamma = iterate_expansion(p, samples=10_000)
    assert K >= 1 and gamma > 1
