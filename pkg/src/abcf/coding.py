"""Reduction of geodesics to ``Lambda_ab``, coding sequences, cross sections and return times.

A geodesic is the pair of its endpoints ``(u, w)``: ``u`` repelling, ``w``
attracting.  Index 0 of a coding window is the first reduced iterate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .attractor import StepDomain, get_domain, lambda_of
from .core import ParamPair, expand, floor_ab
from .errors import (
    AmbiguousBoundary,
    DegenerateGeodesic,
    ExpansionExhausted,
    FormulaDomainError,
    InversionFailed,
    NotReduced,
    ReductionFailed,
)
from .surd import INF, ExtendedReal, Surd, as_real, is_inf, neg_inv


@dataclass(frozen=True)
class GeodesicEndpoints:
    u: ExtendedReal
    w: ExtendedReal

    def __post_init__(self):
        u, w = as_real(self.u), as_real(self.w)
        if u == w:
            raise DegenerateGeodesic(f"u = w = {u}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "w", w)

    def as_floats(self) -> tuple[float, float]:
        return float(self.u), float(self.w)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.u, Surd) and isinstance(self.w, Surd)


def geodesic(u, w) -> GeodesicEndpoints:
    return GeodesicEndpoints(as_real(u), as_real(w))


@lru_cache(maxsize=64)
def lambda_domain(p: ParamPair, simulate: bool = False) -> StepDomain:
    """``Lambda_ab`` from the exact domain, or from the simulation oracle."""
    return lambda_of(get_domain(p, simulate=simulate), p)


def _resolve_lambda(p: ParamPair, lam: StepDomain | None) -> StepDomain:
    return lam if lam is not None else lambda_domain(p)


def is_reduced(g: GeodesicEndpoints, p: ParamPair, lam: StepDomain | None = None) -> bool:
    return _resolve_lambda(p, lam).contains(g.u, g.w)


def _shift_invert(x, n: int):
    if is_inf(x):
        return Surd(0) if not isinstance(x, float) else 0.0
    return neg_inv(x - n)


def reduction_step(g: GeodesicEndpoints, p: ParamPair) -> tuple[GeodesicEndpoints, int]:
    """``R_ab(u, w) = (S T^-n u, S T^-n w)`` with ``n`` the first digit of ``w``."""
    if is_inf(g.w):
        raise ExpansionExhausted("w is infinite")
    n = floor_ab(g.w, p)
    return GeodesicEndpoints(_shift_invert(g.u, n), _shift_invert(g.w, n)), n


def reduce(g: GeodesicEndpoints, p: ParamPair, lam: StepDomain | None = None, budget: int = 100):
    """First iterate of ``g`` under ``R_ab`` lying in ``Lambda_ab``, with the number of steps."""
    lam = _resolve_lambda(p, lam)
    for steps in range(budget + 1):
        if lam.contains(g.u, g.w):
            return g, steps
        if steps == budget:
            break
        g, _ = reduction_step(g, p)
    raise ReductionFailed(f"not reduced after {budget} steps")


def _u_extent(lam: StepDomain):
    return min(r.u_lo for r in lam.rects), max(r.u_hi for r in lam.rects)


def past_digit(g: GeodesicEndpoints, p: ParamPair, lam: StepDomain | None = None) -> tuple[int, GeodesicEndpoints]:
    """The digit ``n_-1`` and the reduced predecessor ``(T^n S u, T^n S w)``.

    Since ``Lambda_ab`` lies in ``|u| <= 1``, the candidates are the integers
    ``n`` with ``n - 1/u`` inside the ``u``-extent of ``Lambda_ab``; a candidate
    is accepted when the predecessor is reduced and its first digit is ``n``.
    """
    lam = _resolve_lambda(p, lam)
    if is_inf(g.u) or not g.u:
        raise InversionFailed("u must be finite and nonzero")
    su, sw = neg_inv(g.u), neg_inv(g.w)
    lo, hi = _u_extent(lam)
    exact = g.is_exact and lam.exact
    slack = 0 if exact else 1
    found = []
    for n in range(math.floor(lo - su) - slack, math.ceil(hi - su) + slack + 1):
        if n == 0:
            continue
        cu = su + n
        cw = INF if is_inf(sw) else sw + n
        if is_inf(cw) or not lam.contains(cu, cw):
            continue
        if floor_ab(cw, p) != n:
            continue
        found.append((n, GeodesicEndpoints(cu, cw)))
    if not found:
        raise InversionFailed(f"no admissible past digit for {g}")
    if len(found) > 1:
        if exact:
            raise AmbiguousBoundary(f"past digits {[n for n, _ in found]} all admissible")
        # floating ties on a shared edge: prefer a candidate inside without tolerance
        strict = [t for t in found if lam.contains(t[1].u, t[1].w, tol=0.0)]
        found = strict or found
    return found[0]


@dataclass(frozen=True)
class CodingWindow:
    """Digits ``n_k`` for ``-K <= k <= K`` of a reduced geodesic ``anchor`` at index 0.

    ``future`` holds ``n_0 .. n_K`` and ``past`` holds ``n_-1 .. n_-K``.  Fewer
    future digits appear when the expansion of ``w`` terminates.
    """

    anchor: GeodesicEndpoints
    future: tuple
    past: tuple
    steps_to_reduce: int = 0

    @property
    def K(self) -> int:
        return max(len(self.future) - 1, len(self.past))

    def digit(self, k: int) -> int:
        return self.future[k] if k >= 0 else self.past[-k - 1]

    def as_dict(self) -> dict:
        """``{index: digit}`` over the whole window."""
        out = {-(i + 1): n for i, n in enumerate(self.past)}
        out.update({i: n for i, n in enumerate(self.future)})
        return dict(sorted(out.items()))

    def sequence(self) -> list[int]:
        return list(reversed(self.past)) + list(self.future)


def future_digits(w, p: ParamPair, count: int) -> tuple:
    if count <= 0:
        return ()
    e = expand(w, p, max_digits=count)
    return tuple(e.digits(count))


def past_digits(g: GeodesicEndpoints, p: ParamPair, count: int, lam: StepDomain | None = None) -> tuple:
    lam = _resolve_lambda(p, lam)
    out = []
    for _ in range(count):
        n, g = past_digit(g, p, lam)
        out.append(n)
    return tuple(out)


def coding_window(
    g: GeodesicEndpoints,
    p: ParamPair,
    K: int,
    lam: StepDomain | None = None,
    budget: int = 100,
) -> CodingWindow:
    """Reduce ``g`` and read ``K`` future and ``K`` past digits around the reduced iterate."""
    lam = _resolve_lambda(p, lam)
    g0, steps = reduce(g, p, lam, budget)
    fut = future_digits(g0.w, p, K + 1)
    past = past_digits(g0, p, K, lam)
    return CodingWindow(g0, fut, past, steps)


# -- cross sections ------------------------------------------------------------

ARC_C, ARC_MINUS, ARC_PLUS = "C", "C-", "C+"


@dataclass(frozen=True)
class CrossSectionPoint:
    """Point ``x + iy`` where a reduced geodesic crosses the cross section.

    ``arc`` names the arc hit; when the geodesic misses ``C`` it crosses both
    ``C-`` and ``C+`` and ``second`` names the arc crossed later.
    """

    x: float
    y: float
    arc: str
    second: str | None = None


def _circle_hit(u: float, w: float, center: float, x: float):
    """Height of the geodesic above ``x`` if ``x`` lies strictly between the endpoints."""
    lo, hi = min(u, w), max(u, w)
    if not lo <= x <= hi:
        return None
    c, rho = (u + w) / 2, abs(w - u) / 2
    y2 = rho * rho - (x - c) ** 2
    if y2 < 0:
        return None
    return math.sqrt(y2)


def arc_intersections(u: float, w: float) -> dict:
    """Intersections with ``C: |z| = 1``, ``C-: |z+1| = 1`` and ``C+: |z-1| = 1`` on their ranges."""
    hits = {}
    s = u + w
    if s != 0:
        x = (1 + u * w) / s
        if -1 <= x <= 1:
            y = _circle_hit(u, w, 0.0, x)
            if y is not None:
                hits[ARC_C] = (x, y)
    elif abs(abs(u) - 1) < 1e-15:
        hits[ARC_C] = (0.0, 1.0)
    if 2 + s != 0:
        x = u * w / (2 + s)
        if -0.5 <= x <= 0:
            y = _circle_hit(u, w, -1.0, x)
            if y is not None:
                hits[ARC_MINUS] = (x, y)
    if s - 2 != 0:
        x = u * w / (s - 2)
        if 0 <= x <= 0.5:
            y = _circle_hit(u, w, 1.0, x)
            if y is not None:
                hits[ARC_PLUS] = (x, y)
    return hits


def cross_section_point(g: GeodesicEndpoints) -> CrossSectionPoint:
    """Where the reduced geodesic ``g`` crosses ``C``, or else its first crossing of ``C-`` or ``C+``."""
    if is_inf(g.u) or is_inf(g.w):
        raise NotReduced("endpoints must be finite")
    u, w = g.as_floats()
    hits = arc_intersections(u, w)
    if ARC_C in hits:
        x, y = hits[ARC_C]
        return CrossSectionPoint(x, y, ARC_C)
    if ARC_MINUS in hits and ARC_PLUS in hits:
        xm, xp = hits[ARC_MINUS][0], hits[ARC_PLUS][0]
        # travelling from u to w, x moves monotonically toward w
        minus_first = (xm <= xp) == (u < w)
        first, second = (ARC_MINUS, ARC_PLUS) if minus_first else (ARC_PLUS, ARC_MINUS)
        x, y = hits[first]
        return CrossSectionPoint(x, y, first, second)
    raise NotReduced(f"geodesic ({u}, {w}) meets neither C nor both of C-, C+")


# -- return time -----------------------------------------------------------

def _h(u: float, w: float) -> float:
    a2, b2 = w * w - 1, 1 - u * u
    if a2 <= 0 or b2 <= 0:
        raise FormulaDomainError(f"need |w| > 1 and |u| < 1, got u={u}, w={w}")
    return abs(w - u) * math.sqrt(a2) / (w * w * math.sqrt(b2))


def return_time(g: GeodesicEndpoints, p: ParamPair, g_next: GeodesicEndpoints | None = None) -> float:
    """First-return time to the cross section, ``2 log|w| + log h(g) - log h(R g)``."""
    a, b = p.as_floats()
    if not (-1 <= a <= 0 <= b <= 1):
        raise FormulaDomainError("return time formula needs -1 <= a <= 0 <= b <= 1")
    if g_next is None:
        g_next, _ = reduction_step(g, p)
    u, w = g.as_floats()
    u1, w1 = g_next.as_floats()
    return 2 * math.log(abs(w)) + math.log(_h(u, w)) - math.log(_h(u1, w1))


def reduction_orbit(g: GeodesicEndpoints, p: ParamPair, steps: int) -> list[GeodesicEndpoints]:
    out = [g]
    for _ in range(steps):
        g, _ = reduction_step(g, p)
        out.append(g)
    return out


def period_of(g: GeodesicEndpoints, p: ParamPair, max_period: int = 1000) -> int:
    """Least ``k >= 1`` with ``R^k g = g`` (exact input), else raise."""
    h = g
    for k in range(1, max_period + 1):
        h, _ = reduction_step(h, p)
        if h == g:
            return k
    raise ReductionFailed(f"no period up to {max_period}")


def closed_geodesic(w: Surd) -> GeodesicEndpoints:
    """The geodesic joining a quadratic irrational to its Galois conjugate."""
    if not isinstance(w, Surd) or w.is_rational:
        raise ValueError("need an irrational quadratic surd")
    return GeodesicEndpoints(w.conjugate(), w)
