import math
import random
from fractions import Fraction

import pytest

from abcf.attractor import named_params
from abcf.coding import (
    ARC_C,
    closed_geodesic,
    coding_window,
    cross_section_point,
    geodesic,
    lambda_domain,
    past_digit,
    period_of,
    reduce,
    reduction_orbit,
    reduction_step,
    return_time,
)
from abcf.core import evaluate_minus_cf, params
from abcf.errors import AmbiguousBoundary, DegenerateGeodesic, ReductionFailed
from abcf.surd import Surd
from abcf.verify import (
    check_cross_sections,
    check_return_time,
    check_shift_conjugacy,
    check_tail_property,
    periodic_geodesics,
    random_exact_geodesic,
    random_reduced_floats,
)

F = Fraction
MINUS = params(-1, 0)
HURWITZ = params(F(-1, 2), F(1, 2))
REF = params(F(-4, 5), F(2, 5))
SQRT2 = Surd.sqrt(2)


def reduced_exact(p, count, seed=0):
    rng = random.Random(seed)
    lam = lambda_domain(p)
    out = []
    while len(out) < count:
        g, _ = reduce(random_exact_geodesic(rng), p, lam)
        if not lam.on_edge(g.u, g.w):
            out.append(g)
    return out


def test_reduction_step_examples():
    g1, n = reduction_step(geodesic(5, SQRT2), MINUS)
    assert n == 2
    assert g1 == geodesic(F(-1, 3), (2 + SQRT2) / 2)
    g2, n = reduction_step(g1, MINUS)
    assert n == 2
    assert g2.w == 2 + SQRT2


def test_zero_digit_is_pure_inversion():
    g = geodesic(3, F(1, 5))
    h, n = reduction_step(g, HURWITZ)
    assert n == 0 and h == geodesic(F(-1, 3), -5)


def test_reduce_conventions():
    g = reduced_exact(REF, 1)[0]
    assert reduce(g, REF)[1] == 0
    with pytest.raises(ReductionFailed):
        reduce(geodesic(50, Surd(101, 1, 7, 5)), REF, budget=0)
    with pytest.raises(DegenerateGeodesic):
        geodesic(2, 2)


@pytest.mark.parametrize("p", [REF, HURWITZ, named_params("wide-right"), named_params("golden-self-dual")])
def test_past_digit_inverts_reduction(p):
    lam = lambda_domain(p)
    for g in reduced_exact(p, 150, seed=3):
        try:
            n, prev = past_digit(g, p, lam)
        except AmbiguousBoundary:
            continue
        nxt, m = reduction_step(prev, p)
        assert (nxt, m) == (g, n)


def test_two_past_digits_recover_the_start():
    lam = lambda_domain(REF)
    for g0 in reduced_exact(REF, 100, seed=5):
        g1, n0 = reduction_step(g0, REF)
        g2, n1 = reduction_step(g1, REF)
        if not (lam.contains(g1.u, g1.w) and lam.contains(g2.u, g2.w)):
            continue
        m1, h1 = past_digit(g2, REF, lam)
        m0, h0 = past_digit(h1, REF, lam)
        assert (m1, m0) == (n1, n0) and h0 == g0


def test_sign_alternation_in_windows():
    for g in reduced_exact(REF, 60, seed=9):
        seq = coding_window(g, REF, 10).sequence()
        for x, y in zip(seq, seq[1:]):
            assert not (x == 1 and y > 0)
            assert not (x == -1 and y < 0)


def test_periodic_window():
    w = Surd(3, 1, 2, 5)
    g = closed_geodesic(w)
    win = coding_window(g, MINUS, 12)
    assert set(win.sequence()) == {3}
    assert period_of(win.anchor, MINUS) == 1


def test_window_with_zero_width():
    g = reduced_exact(REF, 1)[0]
    win = coding_window(g, REF, 0)
    assert win.past == () and len(win.future) == 1


@pytest.mark.parametrize("K", [5, 10, 20, 40])
def test_past_digits_converge_to_inverse_u(K):
    rng = random.Random(K)
    lam = lambda_domain(HURWITZ)
    u, w = random_reduced_floats(lam, rng, 50)
    for ui, wi in zip(u, w):
        win = coding_window(geodesic(float(ui), float(wi)), HURWITZ, K, lam)
        approx = evaluate_minus_cf(list(win.past))
        assert abs(float(approx) - 1 / float(win.anchor.u)) < 2 / K


def test_intermediate_translates_are_not_reduced():
    lam = lambda_domain(REF)
    for g in reduced_exact(REF, 100, seed=11):
        n = reduction_step(g, REF)[1]
        step = 1 if n > 0 else -1
        for s in range(1, abs(n)):
            assert not lam.contains(g.u - step * s, g.w - step * s)


def test_continuity_modulus():
    rng = random.Random(4)
    lam = lambda_domain(HURWITZ)
    u, w = random_reduced_floats(lam, rng, 100)
    for ui, wi in zip(u, w):
        g = geodesic(float(ui), float(wi))
        base = coding_window(g, HURWITZ, 12, lam)
        for eps in (1e-2, 1e-4, 1e-6):
            h = geodesic(float(ui) + eps * rng.uniform(-1, 1), float(wi) + eps * rng.uniform(-1, 1))
            try:
                other = coding_window(h, HURWITZ, 12, lam, budget=0)
            except ReductionFailed:
                continue
            m = 0
            while m < 12 and base.digit(m + 1) == other.digit(m + 1) and base.digit(-m - 1) == other.digit(-m - 1):
                m += 1
            if m >= 1 and base.digit(0) == other.digit(0):
                d = max(abs(base.anchor.u - other.anchor.u), abs(base.anchor.w - other.anchor.w))
                assert d < 2 / m


def test_cross_section_examples():
    pt = cross_section_point(geodesic(F(-1, 2), 3))
    assert pt.arc == ARC_C
    assert pt.x == pytest.approx(-1 / 5, abs=1e-15)
    assert pt.y == pytest.approx(math.sqrt(24) / 5, abs=1e-15)
    pt = cross_section_point(geodesic(F(-2, 3), F(3, 2)))
    assert pt.arc == ARC_C and pt.x == pytest.approx(0.0, abs=1e-15) and pt.y == pytest.approx(1.0)


@pytest.mark.parametrize("name", ["hurwitz", "wide-right", "wide-left", "alternating"])
def test_cross_section_regimes(name):
    assert check_cross_sections(named_params(name), count=1000, seed=2).ok


def test_return_time_telescopes():
    assert check_return_time(HURWITZ, count=20).ok
    assert check_return_time(REF, count=20, seed=1).ok


def test_periodic_sum_matches_log_w():
    for g, k in periodic_geodesics(REF, 5, seed=3):
        orbit = reduction_orbit(g, REF, k)
        assert orbit[-1] == g
        total = sum(return_time(orbit[i], REF, orbit[i + 1]) for i in range(k))
        assert total == pytest.approx(sum(2 * math.log(abs(float(h.w))) for h in orbit[:-1]), abs=1e-10)


def test_return_time_positive():
    rng = random.Random(0)
    lam = lambda_domain(HURWITZ)
    u, w = random_reduced_floats(lam, rng, 1000)
    for ui, wi in zip(u, w):
        if abs(wi) > 1 and abs(ui) < 1:
            assert return_time(geodesic(float(ui), float(wi)), HURWITZ) > 0


def test_shift_and_tail_small():
    assert check_shift_conjugacy(HURWITZ, count=100, seed=1).ok
    assert check_tail_property(REF, count=20, seed=1).ok
