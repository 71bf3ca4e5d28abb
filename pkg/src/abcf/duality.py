"""Dual expansions: detection, dual parameters, and the reflection test.

The reflection ``psi(u, w) = (-w, -u)`` conjugates the inverse of ``F_ab`` on
``D_ab`` to ``F_a'b'``; the dual parameters are read off the levels where
``D_ab`` meets the lines ``w = b`` and ``w = a``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .attractor import (
    LOWER,
    UPPER,
    StepDomain,
    build_domain,
    detect_cycle,
    get_domain,
    hausdorff_hat,
    inverse_step,
    natural_extension_step,
)
from .coding import GeodesicEndpoints, coding_window, reduction_step
from .core import ParamPair, expand
from .errors import InconsistentDomain, NoDual, UnsupportedParameters
from .surd import Surd


@dataclass(frozen=True)
class DualReport:
    """Whether ``(a, b)`` has a dual, and how that was decided.

    ``witness`` is the endpoint with a strong cycle when there is no dual,
    otherwise the levels ``(x_a, x_b)`` read from the domain.  ``certified``
    is false when the levels came from the simulation oracle.
    """

    has_dual: bool
    dual_params: ParamPair | None = None
    self_dual: bool = False
    witness: object = None
    certified: bool = True


def has_dual(p: ParamPair, cycles=None) -> bool:
    """True iff neither endpoint has a strong cycle."""
    if cycles is None:
        cycles = detect_cycle(p)
    return not any(c.is_strong for c in cycles)


def boundary_levels(domain: StepDomain, p: ParamPair):
    """``(x_a, x_b)`` where ``D_ab`` meets the edges of the strip ``a <= w <= b``.

    ``x_b`` is the right end of the upper part just below ``w = b``; ``x_a``
    is the left end of the lower part just above ``w = a``.  A missing part
    gives an infinite level.
    """
    at_b = [r.u_hi for r in domain.component(UPPER) if r.w_lo < p.b <= r.w_hi]
    at_a = [r.u_lo for r in domain.component(LOWER) if r.w_lo <= p.a < r.w_hi]
    x_b = max(at_b) if at_b else -math.inf
    x_a = min(at_a) if at_a else math.inf
    return x_a, x_b


def _recip(x):
    if isinstance(x, float) and math.isinf(x):
        return Surd(0)
    if isinstance(x, Surd):
        return x.inverse()
    return 1.0 / x


def dual_params(p: ParamPair, domain: StepDomain | None = None) -> ParamPair:
    """``(a', b') = (1/x_b, 1/x_a)``, cross-checked against the vertical sides ``1 - b'`` and ``-1 - a'``."""
    if not has_dual(p):
        raise NoDual(f"{p} has a strong cycle")
    domain = domain if domain is not None else build_domain(p)
    x_a, x_b = boundary_levels(domain, p)
    a2, b2 = _recip(x_b), _recip(x_a)
    uppers, lowers = domain.component(UPPER), domain.component(LOWER)
    checks = []
    if uppers:
        checks.append((max(r.u_hi for r in uppers), 1 - b2))
    if lowers:
        checks.append((min(r.u_lo for r in lowers), -1 - a2))
    tol = 0.0 if domain.exact else 2 * (domain.resolution or 1e-2)
    for side, expected in checks:
        if (side != expected) if domain.exact else abs(float(side) - float(expected)) > tol:
            raise InconsistentDomain(f"vertical side {side} disagrees with {expected}")
    return ParamPair(a2, b2)


def dual_report(p: ParamPair, simulate: bool = False) -> DualReport:
    cycles = detect_cycle(p)
    strong = [c.endpoint for c in cycles if c.is_strong]
    if strong:
        return DualReport(False, witness=strong[0])
    domain = get_domain(p, simulate=simulate)
    q = dual_params(p, domain)
    return DualReport(
        True,
        q,
        self_dual=(q.a == p.a and q.b == p.b) if domain.exact else False,
        witness=boundary_levels(domain, p),
        certified=domain.exact,
    )


@dataclass(frozen=True)
class DualityCheck:
    ok: bool
    method: str
    counterexample: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _psi(u, w):
    return -w, -u


def _random_point(rect, rng: random.Random, window: float, band=None):
    u0, u1, w0, w1 = rect.as_floats()
    u0, u1 = max(u0, -window), min(u1, window)
    w0, w1 = max(w0, -window), min(w1, window)
    if band is not None:
        w0, w1 = max(w0, band[0]), min(w1, band[1])
    if not (u0 < u1 and w0 < w1):
        return None
    u = Fraction(rng.uniform(u0, u1)).limit_denominator(10**6)
    w = Fraction(rng.uniform(w0, w1)).limit_denominator(10**6)
    return Surd.from_rational(u), Surd.from_rational(w)


def conjugation_counterexample(p: ParamPair, q: ParamPair, domain: StepDomain, samples: int = 2000, seed: int = 0):
    """Search for ``z`` in ``psi(D_ab)`` with ``F_a'b'(z) != psi(F_ab^-1(psi z))``.

    Half of the samples are drawn near the lines ``w = a'`` and ``w = b'``,
    where a wrong dual pair first shows.
    """
    rng = random.Random(seed)
    image = domain.reflect()
    rects = [r for r in image.rects]
    if not rects:
        return None
    qa, qb = q.as_floats()
    bands = [None, (qa - 0.01, qa + 0.01), (qb - 0.01, qb + 0.01)]
    for i in range(samples):
        band = bands[0] if i % 2 == 0 else bands[1 + (i // 2) % 2]
        pt = None
        for _ in range(20):
            pt = _random_point(rng.choice(rects), rng, 10.0, band)
            if pt is not None and image.contains(*pt):
                break
            pt = None
        if pt is None:
            continue
        z = pt
        pre = inverse_step(*_psi(*z), p, domain)
        if len(pre) != 1:
            continue  # boundary of D_ab; not informative
        expected = _psi(*pre[0])
        try:
            got = natural_extension_step(z[0], z[1], q)
        except Exception:
            return z
        if got != expected:
            return z
    return None


def verify_duality(p: ParamPair, q: ParamPair, samples: int = 2000, seed: int = 0, tol: float = 1e-2) -> DualityCheck:
    """Check ``psi(D_ab) = D_a'b'`` and the pointwise conjugation identity."""
    try:
        d1 = build_domain(p)
    except UnsupportedParameters:
        d1 = get_domain(p, simulate=True, seed=seed)
    try:
        d2 = build_domain(q)
        exact = d1.exact
    except UnsupportedParameters:
        d2 = get_domain(q, simulate=True, seed=seed)
        exact = False
    if exact:
        if not d1.reflect().equals(d2):
            pts = [r.center() for r in d2.rects if not d1.reflect().contains(*r.center())]
            pts += [_psi(*r.center()) for r in d1.rects if not d2.contains(*_psi(*r.center()))]
            return DualityCheck(False, "exact", pts[0] if pts else None, "reflected domain differs")
        method = "exact"
    else:
        dist = hausdorff_hat(d1.reflect(), d2, q)
        if dist > tol:
            z = conjugation_counterexample(p, q, d1, samples, seed) if d1.exact else None
            return DualityCheck(False, "hausdorff", z, f"hat distance {dist:.3g}")
        method = "hausdorff"
    if d1.exact:
        z = conjugation_counterexample(p, q, d1, samples, seed)
        if z is not None:
            return DualityCheck(False, method + "+pointwise", z, "conjugation identity fails")
    return DualityCheck(True, method + "+pointwise" if d1.exact else method)


def juxtaposition_check(g: GeodesicEndpoints, p: ParamPair, q: ParamPair, K: int, lam=None) -> bool:
    """Past digits of the coding window equal the ``(a', b')``-digits of ``1/u``."""
    if K <= 0:
        return True
    w = coding_window(g, p, K, lam)
    u0 = w.anchor.u
    inv = u0.inverse() if isinstance(u0, Surd) else 1.0 / u0
    digits = tuple(expand(inv, q, max_digits=K).digits(K))
    return digits == w.past[: len(digits)] and len(digits) == K


def periodic_reversal_check(g: GeodesicEndpoints, p: ParamPair, q: ParamPair, max_period: int = 500) -> bool:
    """For a purely periodic reduced ``g``, ``1/u`` has the reversed period in the dual expansion."""
    period = []
    h = g
    for _ in range(max_period):
        h, n = reduction_step(h, p)
        period.append(n)
        if h == g:
            break
    else:
        raise ValueError("geodesic is not periodic within the budget")
    u = g.u
    e = expand(u.inverse(), q, max_digits=4 * len(period) + 4)
    if e.tail != "periodic" or e.head:
        return False
    rev = list(reversed(period))
    per = list(e.period)
    if len(per) != len(rev) and len(rev) % len(per) == 0:
        per = per * (len(rev) // len(per))
    return per == rev
