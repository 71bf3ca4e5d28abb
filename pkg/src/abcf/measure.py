"""Invariant measures of the Gauss-type map and of its natural extension.

The natural extension on ``hat Lambda`` preserves ``dx dy / (1 + x y)^2``; its
total mass is the normalizer ``K``.  Projecting onto ``x`` gives the density of
the one-dimensional map, piecewise of the forms ``1/(x + c)`` and ``1/(c - x)``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import digamma, spence

from .attractor import (
    StepDomain,
    get_domain,
    hat_lambda_of,
    hat_steps_of,
    lambda_of,
    family_case,
    family_K,
)
from .coding import GeodesicEndpoints, _h, reduction_step
from .core import ParamPair, convergent_denominators, floor_ab
from .errors import (
    CaseMismatch,
    DomainError,
    FormulaDomainError,
    IllConditionedPoint,
    InconsistentDomain,
    InfiniteMeasure,
    RationalInput,
    SingularRectangle,
    UnsupportedCase,
    UseIterateCheck,
)
from .surd import Surd, is_inf

PLUS, MINUS = "plus", "minus"


# -- rectangles ----------------------------------------------------------------

def _corner_factors(x1, x2, y1, y2):
    return 1 + x2 * y2, 1 + x1 * y1, 1 + x1 * y2, 1 + x2 * y1


def rect_mass(x1, x2, y1, y2) -> float:
    """``nu([x1, x2] x [y1, y2])`` for ``d nu = dx dy / (1 + x y)^2``.

    Exact (surd) corners are combined exactly and only the final ratio is
    passed to ``log``.
    """
    if any(is_inf(v) for v in (x1, x2, y1, y2)):
        raise SingularRectangle("rectangle must be bounded")
    if x1 == x2 or y1 == y2:
        return 0.0
    fs = _corner_factors(x1, x2, y1, y2)
    signs = {(f > 0) - (f < 0) for f in fs}
    # 1 + xy is bilinear, so it keeps one sign iff it does so at the corners
    if 0 in signs or len(signs) > 1:
        raise SingularRectangle(f"1 + xy vanishes on [{x1}, {x2}] x [{y1}, {y2}]")
    num, den = fs[0] * fs[1], fs[2] * fs[3]
    if all(isinstance(v, Surd) for v in (x1, x2, y1, y2)):
        return math.log(float(num / den))
    return math.log(float(num) / float(den))


def rect_mass_ratio(x1, x2, y1, y2):
    """``exp(rect_mass)`` kept exact for surd corners."""
    fs = _corner_factors(x1, x2, y1, y2)
    return (fs[0] * fs[1]) / (fs[2] * fs[3])


def _hat_for(p: ParamPair, simulate: bool = False) -> StepDomain:
    return hat_lambda_of(get_domain(p, simulate=simulate), p)


def closed_form_K(p: ParamPair) -> float:
    """``log[(m - a)(1 + b)^(2 - m)]`` for the explicit family; raises :class:`CaseMismatch` outside it."""
    return family_K(p)


def normalizer_K(p: ParamPair, hat: StepDomain | None = None, check: bool = True) -> float:
    """Total ``nu``-mass of ``hat Lambda``.

    For exact domains the product of the rectangle ratios is formed exactly and
    ``K`` is its logarithm.  Inside the explicit family the result is compared
    with the closed form to 1e-10.
    """
    if not p.a or not p.b:
        raise InfiniteMeasure("the invariant measure is infinite when a = 0 or b = 0")
    hat = hat if hat is not None else _hat_for(p)
    if hat.exact:
        prod = Surd(1)
        for r in hat.rects:
            prod = prod * rect_mass_ratio(r.u_lo, r.u_hi, r.w_lo, r.w_hi)
        K = math.log(float(prod))
    else:
        K = math.fsum(rect_mass(*r.as_floats()) for r in hat.rects)
    if check and hat.exact:
        try:
            ref = closed_form_K(p)
        except CaseMismatch:
            return K
        if abs(ref - K) > 1e-10:
            raise InconsistentDomain(f"rectangle sum {K!r} disagrees with closed form {ref!r}")
    return K


# -- densities -------------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    """``1/(x + c)`` (``plus``) or ``1/(c - x)`` (``minus``) on ``[lo, hi)``.

    ``branch`` is ``"+"`` for pieces coming from the upper part of ``hat Lambda``
    and ``"-"`` for the lower part.
    """

    lo: object
    hi: object
    form: str
    c: object
    branch: str

    def __call__(self, x):
        c = float(self.c)
        return 1.0 / (x + c) if self.form == PLUS else 1.0 / (c - x)

    def covers(self, x) -> bool:
        return float(self.lo) <= x < float(self.hi)

    def mass(self) -> float:
        lo, hi, c = float(self.lo), float(self.hi), float(self.c)
        if self.form == PLUS:
            return math.log((hi + c) / (lo + c))
        return math.log((c - lo) / (c - hi))


@dataclass(frozen=True)
class PiecewiseDensity:
    """Unnormalized invariant density ``h``; ``h / K`` is the probability density."""

    params: ParamPair
    pieces: tuple
    K: float
    source: str = ""

    def __post_init__(self):
        table = tuple((float(pc.lo), float(pc.hi), pc.form == PLUS, float(pc.c)) for pc in self.pieces)
        object.__setattr__(self, "_table", table)

    def __call__(self, x: float) -> float:
        total = 0.0
        for lo, hi, plus, c in self._table:
            if lo <= x < hi:
                total += 1.0 / (x + c) if plus else 1.0 / (c - x)
        return total

    def evaluate(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        out = np.zeros_like(xs)
        for pc in self.pieces:
            lo, hi, c = float(pc.lo), float(pc.hi), float(pc.c)
            m = (xs >= lo) & (xs < hi)
            out[m] += 1.0 / (xs[m] + c) if pc.form == PLUS else 1.0 / (c - xs[m])
        return out

    def branch(self, sign: str) -> tuple:
        return tuple(pc for pc in self.pieces if pc.branch == sign)

    def breakpoints(self) -> list[float]:
        pts = {float(pc.lo) for pc in self.pieces} | {float(pc.hi) for pc in self.pieces}
        return sorted(pts)

    def total_mass(self) -> float:
        return math.fsum(pc.mass() for pc in self.pieces)

    def perturbed(self, index: int, dc: float) -> "PiecewiseDensity":
        pcs = list(self.pieces)
        pc = pcs[index]
        pcs[index] = Piece(pc.lo, pc.hi, pc.form, float(pc.c) + dc, pc.branch)
        return PiecewiseDensity(self.params, tuple(pcs), self.K, self.source + "+perturbed")


def _mirror_pieces(pieces) -> tuple:
    out = []
    for pc in pieces:
        form = MINUS if pc.form == PLUS else PLUS
        branch = "-" if pc.branch == "+" else "+"
        out.append(Piece(-pc.hi, -pc.lo, form, pc.c, branch))
    return tuple(out)


def _family_pieces(p: ParamPair) -> tuple:
    """The displayed density for ``a <= -b``: constants ``(k+1)/k`` on the ``T^-2 S`` orbit of ``b - 1``."""
    m = family_case(p)
    a, b = p.a, p.b
    one = Surd(1) if isinstance(a, Surd) else 1.0
    knots = [b - 1]
    for _ in range(m - 1):
        knots.append(-1 / knots[-1] - 2)
    knots.append(-1 / a - 1)
    plus = [Piece(knots[k - 1], knots[k], PLUS, one * (k + 1) / k, "+") for k in range(1, m + 1)]
    plus.append(Piece(knots[m], b, PLUS, one, "+"))
    t = -1 / b + m
    minus = [
        Piece(a, t, MINUS, one * m, "-"),
        Piece(t, a + 1, MINUS, one * (m + 1), "-"),
    ]
    return tuple(plus + minus)


def density(p: ParamPair) -> PiecewiseDensity:
    """The invariant density of the explicit family, piece by piece.

    Pairs with ``a > -b`` are handled through the reflection ``x -> -x`` which
    conjugates the map for ``(a, b)`` to the one for ``(-b, -a)``.
    """
    try:
        if p.a <= -p.b:
            pieces = _family_pieces(p)
        else:
            pieces = _mirror_pieces(_family_pieces(ParamPair(-p.b, -p.a)))
    except CaseMismatch as exc:
        raise UnsupportedCase(f"{p} is outside the explicit family ({exc}); use density_from_hat") from None
    return PiecewiseDensity(p, pieces, closed_form_K(p), "closed-form")


def density_from_hat(p: ParamPair, hat: StepDomain | None = None) -> PiecewiseDensity:
    """Density read off any ``hat Lambda``: a step ``[0, h]`` contributes ``1/(x + 1/h)``, a step ``[-d, 0]`` contributes ``1/(1/d - x)``."""
    hat = hat if hat is not None else _hat_for(p)
    steps = hat_steps_of(hat)
    pieces = [Piece(x0, x1, PLUS, 1 / h, "+") for x0, x1, h in steps.upper if h]
    pieces += [Piece(x0, x1, MINUS, 1 / d, "-") for x0, x1, d in steps.lower if d]
    K = normalizer_K(p, hat, check=False) if p.a and p.b else math.inf
    return PiecewiseDensity(p, tuple(pieces), K, "hat")


def marginal_density(hat: StepDomain, x: float) -> float:
    """``integral of dy / (1 + x y)^2`` over the ``y``-section of ``hat Lambda`` at ``x``, by quadrature."""
    from scipy.integrate import quad

    total = 0.0
    for r in hat.rects:
        x0, x1, y0, y1 = r.as_floats()
        if x0 <= x < x1:
            val, _ = quad(lambda y: 1.0 / (1.0 + x * y) ** 2, y0, y1, epsabs=1e-13, epsrel=1e-13)
            total += val
    return total


# -- transfer operator ---------------------------------------------------------

def _tail_sum(pc: Piece, t0: float, positive: bool) -> float:
    """Sum of ``h_pc(y) y^2`` over the tail ``y = -1/(x + n)``, in closed form by digamma.

    ``positive``: ``n >= N`` with ``t0 = x + N``; otherwise ``n <= -N`` with
    ``t0 = N - x``.
    """
    k = 1.0 / float(pc.c)
    if positive:
        if pc.form == PLUS:
            return float(digamma(t0) - digamma(t0 - k))
        return float(digamma(t0 + k) - digamma(t0))
    if pc.form == PLUS:
        return float(digamma(t0 + k) - digamma(t0))
    return float(digamma(t0) - digamma(t0 - k))


def _near_zero_pieces(dens: PiecewiseDensity, side: int) -> list:
    if side < 0:
        return [pc for pc in dens.pieces if float(pc.lo) < 0 <= float(pc.hi)]
    return [pc for pc in dens.pieces if float(pc.lo) <= 0 < float(pc.hi)]


def singular_points(p: ParamPair, dens: PiecewiseDensity) -> list[float]:
    """Points where the transfer residual is not smooth: piece ends and branch image ends."""
    a, b = p.as_floats()
    pts = set(dens.breakpoints()) | {a, b, a + 1, b - 1, 0.0}
    if b:
        pts.add((-1 / b) - math.floor(-1 / b - a))
    if a:
        pts.add((-1 / a) - (math.floor(-1 / a - b) + 1))
    return sorted(pts)


def _transfer_setup(dens: PiecewiseDensity, p: ParamPair, cutoff: int):
    a, b = p.as_floats()
    nonzero = [abs(v) for v in dens.breakpoints() if v]
    gap = min(nonzero) if nonzero else 1.0
    N = max(cutoff, int(math.ceil(1.0 / gap + 2 + abs(a) + abs(b))))
    return ParamPair(a, b), singular_points(p, dens), N


def _residual(dens, fp: ParamPair, sing, N: int, x: float, guard: float) -> float:
    a, b = fp.a, fp.b
    if not a <= x < b:
        raise DomainError(f"{x} is not in [{a}, {b})")
    if any(abs(x - s) < guard for s in sing):
        raise IllConditionedPoint(f"{x} lies on a piece or branch boundary")
    total = 0.0
    for n in range(-N + 1, N):
        if n == 0 or x + n == 0:
            continue
        if floor_ab(x + n, fp) != n:
            continue
        y = -1.0 / (x + n)
        if a <= y < b:
            total += dens(y) * y * y
    if b - 1 <= x < b:
        total += sum(_tail_sum(pc, x + N, True) for pc in _near_zero_pieces(dens, -1))
    if a <= x < a + 1:
        total += sum(_tail_sum(pc, N - x, False) for pc in _near_zero_pieces(dens, +1))
    return abs(total - dens(x))


def transfer_residual(dens: PiecewiseDensity, p: ParamPair, x: float, cutoff: int = 64, guard: float = 1e-9) -> float:
    """``|sum_y h(y) y^2 - h(x)|`` over the preimages ``y = -1/(x + n)`` in ``[a, b)``.

    Digits with ``|n| >= cutoff`` are summed in closed form.
    """
    fp, sing, N = _transfer_setup(dens, p, cutoff)
    return _residual(dens, fp, sing, N, float(x), guard)


def transfer_check(dens: PiecewiseDensity, p: ParamPair, xs: Sequence[float] | float, cutoff: int = 64) -> float:
    """Largest transfer residual over the sample points ``xs``."""
    if isinstance(xs, (int, float)):
        xs = [xs]
    fp, sing, N = _transfer_setup(dens, p, cutoff)
    return max(_residual(dens, fp, sing, N, float(x), 1e-9) for x in xs)


def interior_samples(dens: PiecewiseDensity, p: ParamPair, count: int, seed: int = 0, guard: float = 1e-6) -> list[float]:
    """Uniform points of ``[a, b)`` kept away from every singular point."""
    rng = random.Random(seed)
    a, b = p.as_floats()
    sing = singular_points(p, dens)
    out = []
    while len(out) < count:
        x = rng.uniform(a, b)
        if all(abs(x - s) > guard for s in sing):
            out.append(x)
    return out


# -- entropy -------------------------------------------------------------------

def entropy(p: ParamPair, K: float | None = None) -> float:
    """``pi^2 / (3 K)``, the entropy of both the map and its natural extension."""
    K = normalizer_K(p) if K is None else K
    if not math.isfinite(K):
        raise InfiniteMeasure("entropy needs a finite normalizer")
    return math.pi ** 2 / (3 * K)


def _re_li2(z: float) -> float:
    if z <= 1:
        return float(spence(1.0 - z))
    return math.pi ** 2 / 3 - 0.5 * math.log(z) ** 2 - float(spence(1.0 - 1.0 / z))


def _log_antiderivative(pc: Piece, x: float) -> float:
    """A primitive of ``log|x| * h_pc(x)`` vanishing at ``x = 0``."""
    if x == 0:
        return 0.0
    c = float(pc.c)
    if c == 0:
        raise SingularRectangle("piece with c = 0")
    if pc.form == PLUS:
        return math.log(abs(x)) * math.log(abs(1 + x / c)) + _re_li2(-x / c)
    return -(math.log(abs(x)) * math.log(abs(1 - x / c)) + _re_li2(x / c))


def log_moment(dens: PiecewiseDensity) -> float:
    """``integral of log|x| h(x) dx`` over ``[a, b)`` via dilogarithms."""
    total = []
    for pc in dens.pieces:
        lo, hi = float(pc.lo), float(pc.hi)
        total.append(_log_antiderivative(pc, hi) - _log_antiderivative(pc, lo))
    return math.fsum(total)


def rokhlin_entropy(dens: PiecewiseDensity) -> float:
    """``-2 integral of log|x| d mu`` with ``d mu = h dx / K``."""
    return -2.0 * log_moment(dens) / dens.K


# -- growth of denominators -----------------------------------------------------

def float_digits(x: float, p: ParamPair, count: int) -> list[int]:
    """The first ``count`` digits of a float, iterating in double precision."""
    a, b = p.as_floats()
    fp = ParamPair(a, b)
    out = []
    xk = float(x)
    for _ in range(count):
        n = floor_ab(xk, fp)
        out.append(n)
        rem = xk - n
        if rem == 0:
            break
        xk = -1.0 / rem
    return out


def qn_growth(p: ParamPair, x, N: int) -> float:
    """``log|q_N(x)| / N`` with exact integer denominators."""
    if N < 1:
        raise ValueError("N must be positive")
    if isinstance(x, Surd):
        from .core import iter_digits

        digits = []
        for n in iter_digits(x, p):
            digits.append(n)
            if len(digits) > N:
                break
    else:
        digits = float_digits(x, p, N + 1)
    if len(digits) < N + 1:
        raise RationalInput(f"expansion terminated after {len(digits)} digits")
    q = 0
    for q in convergent_denominators(digits):
        pass
    return math.log(q) / N


def qn_limit(p: ParamPair, K: float | None = None) -> float:
    K = normalizer_K(p) if K is None else K
    return math.pi ** 2 / (6 * K)


# -- two-dimensional invariance -------------------------------------------------

def hat_step(x: float, y: float, p: ParamPair):
    """The first return of the natural extension to the strip, in ``hat Lambda`` coordinates."""
    n = floor_ab(-1.0 / x, ParamPair(*p.as_floats()))
    return -1.0 / x - n, -1.0 / (y - n), n


def hat_image_rect(x1, x2, y1, y2, p: ParamPair):
    """Image of a rectangle inside one branch; raises if it crosses a branch boundary."""
    fp = ParamPair(*p.as_floats())
    if x1 < 0 < x2:
        raise DomainError("rectangle straddles x = 0")
    n1, n2 = floor_ab(-1.0 / x1, fp), floor_ab(-1.0 / x2, fp)
    if n1 != n2:
        raise DomainError("rectangle crosses a branch boundary")
    n = n1
    X = sorted((-1.0 / x1 - n, -1.0 / x2 - n))
    Y = sorted((-1.0 / (y1 - n), -1.0 / (y2 - n)))
    return X[0], X[1], Y[0], Y[1]


def random_branch_rect(hat: StepDomain, p: ParamPair, rng: random.Random, size: float = 0.05):
    """A small rectangle inside ``hat Lambda`` and inside one branch of the map."""
    fp = ParamPair(*p.as_floats())
    rects = hat.rects
    while True:
        r = rng.choice(rects)
        x0, x1, y0, y1 = r.as_floats()
        xa = rng.uniform(x0, x1)
        xb = min(x1, xa + rng.uniform(0, size) * (x1 - x0))
        ya = rng.uniform(y0, y1)
        yb = min(y1, ya + rng.uniform(0, size) * (y1 - y0))
        if not (xa < xb and ya < yb) or xa < 0 < xb or xa == 0 or xb == 0:
            continue
        if floor_ab(-1.0 / xa, fp) != floor_ab(-1.0 / xb, fp):
            continue
        return xa, xb, ya, yb


# -- return times and the Abramov identity --------------------------------------

def _sample_lambda(lam: StepDomain, rng: random.Random):
    rects = [r for r in lam.rects]
    weights = []
    for r in rects:
        u0, u1, w0, w1 = r.as_floats()
        weights.append((min(u1, 50) - max(u0, -50)) * (min(w1, 50) - max(w0, -50)))
    while True:
        r = rng.choices(rects, weights)[0]
        u0, u1, w0, w1 = r.as_floats()
        u = rng.uniform(max(u0, -50), min(u1, 50))
        w = rng.uniform(max(w0, -50), min(w1, 50))
        if abs(u) < 1 and abs(w) > 1:
            return u, w


def abramov_estimate(p: ParamPair, orbits: int = 50, steps: int = 2000, seed: int = 0) -> float:
    """Birkhoff estimate of ``K * integral of g d rho``; the identity predicts ``pi^2 / 3``.

    The return time ``g`` telescopes along an orbit, so the sum over ``steps``
    iterates is ``2 sum log|w_k|`` plus two boundary terms.
    """
    a, b = p.as_floats()
    if not (-1 <= a <= 0 <= b <= 1):
        raise FormulaDomainError("return time formula needs -1 <= a <= 0 <= b <= 1")
    K = normalizer_K(p)
    lam = lambda_of(get_domain(p), p)
    fp = ParamPair(a, b)
    rng = random.Random(seed)
    means = []
    while len(means) < orbits:
        u, w = _sample_lambda(lam, rng)
        g = GeodesicEndpoints(u, w)
        acc = 0.0
        try:
            h0 = _h(u, w)
            for _ in range(steps):
                acc += 2 * math.log(abs(g.w))
                g, _ = reduction_step(g, fp)
            acc += math.log(h0) - math.log(_h(g.u, g.w))
        except (FormulaDomainError, ArithmeticError, ValueError):
            continue
        means.append(acc / steps)
    return K * float(np.mean(means))


# -- branch partition ------------------------------------------------------------

@dataclass(frozen=True)
class BranchPartition:
    """The intervals ``X_i`` (``i != 0``) on which the map is a single Moebius branch.

    ``X_1`` and ``X_-1`` are the two branches next to ``b`` and ``a`` that need
    not be full; every other ``X_i`` maps onto ``(b-1, b)`` or ``(a, a+1)``.
    """

    params: ParamPair
    m: int
    n: int

    def interval(self, i: int) -> tuple:
        if i == 0:
            raise ValueError("no X_0")
        a, b, m, n = self.params.a, self.params.b, self.m, self.n
        if i == 1:
            return -1 / (a - m - 1), b
        if i >= 2:
            return -1 / (a - m - i), -1 / (a - m - i + 1)
        if i == -1:
            return a, -1 / (b + n + 1)
        j = -i
        return -1 / (b + n + j - 1), -1 / (b + n + j)

    def digit(self, i: int) -> int:
        """The digit of ``-1/x`` on ``X_i``."""
        return -(self.m + i) if i > 0 else self.n - i

    def image(self, i: int) -> tuple:
        lo, hi = self.interval(i)
        d = self.digit(i)
        ends = sorted((-1 / lo - d, -1 / hi - d))
        return tuple(ends)

    def images(self, count: int = 50) -> set:
        idx = [i for i in range(-count, count + 1) if i]
        return {tuple(float(v) for v in self.image(i)) for i in idx}

    def index_of(self, x: float) -> int | None:
        """``i`` with ``x`` in ``X_i``, or None at the endpoints and at 0."""
        if x == 0:
            return None
        a, b = self.params.as_floats()
        y = -1.0 / x
        if x > 0:
            k = math.floor(y - a)
            if y - a == k:
                return None
            i = -k - self.m
        else:
            k = math.floor(y - b) + 1
            if y - b == k - 1:
                return None
            i = -(k - self.n)
        lo, hi = (float(v) for v in self.interval(i))
        return i if lo < x < hi else None

    def check(self, samples: int = 10_000, seed: int = 0) -> dict:
        """Sampled expansion and distortion bounds, and the number of distinct images."""
        a, b = self.params.as_floats()
        rng = np.random.default_rng(seed)
        xs = rng.uniform(a, b, samples)
        xs = xs[xs != 0]
        deriv = 1.0 / xs ** 2
        distortion = np.abs(-2.0 / xs ** 3) / deriv ** 2
        tau = min(1 / a ** 2, 1 / b ** 2)
        imgs = {tuple(round(v, 12) for v in im) for im in self.images()}
        return {
            "tau": tau,
            "min_derivative": float(deriv.min()),
            "max_distortion": float(distortion.max()),
            "expanding": bool(deriv.min() >= tau - 1e-12 and tau > 1),
            "bounded_distortion": bool(distortion.max() <= 2 + 1e-12),
            "images": len(imgs),
            "finite_images": len(imgs) <= 4,
        }


def branch_partition(p: ParamPair) -> BranchPartition:
    """The partition for ``-1 < a < 0 < b < 1``; other pairs need :func:`iterate_expansion`."""
    a, b = p.a, p.b
    if not (-1 < a < 0 < b < 1):
        raise UseIterateCheck(f"{p} is outside -1 < a < 0 < b < 1")
    m = math.floor(a + 1 / b)
    n = math.floor(-1 / a - b)
    if m < 0 or n < 0:
        raise UseIterateCheck("the branch counts must be non-negative")
    return BranchPartition(p, m, n)


def iterate_bound(p: ParamPair) -> int:
    """Smallest ``K > 0`` with ``b (a+1)^K < 1`` (or the mirrored bound when ``a <= -1``)."""
    a, b = p.as_floats()
    if b < 1 and a > -1:
        return 0
    if b >= 1:
        s, t = b, a + 1
    else:
        s, t = -a, 1 - b
    K = 1
    while s * t ** K >= 1:
        K += 1
        if K > 10_000:
            raise UseIterateCheck("no iterate bound found")
    return K


def iterate_expansion(p: ParamPair, samples: int = 10_000, seed: int = 0) -> tuple[int, float]:
    """``(K, gamma)`` with ``gamma`` the smallest sampled ``max_{n <= K+1} |(f^n)'(x)|``."""
    K = iterate_bound(p)
    a, b = p.as_floats()
    fp = ParamPair(a, b)
    rng = random.Random(seed)
    gamma = math.inf
    for _ in range(samples):
        x = rng.uniform(a, b)
        prod, best = 1.0, 0.0
        for _ in range(K + 1):
            if x == 0:
                break
            prod *= x
            best = max(best, 1.0 / (prod * prod))
            y = -1.0 / x
            x = y - floor_ab(y, fp)
        gamma = min(gamma, best)
    return K, gamma
