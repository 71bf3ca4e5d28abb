"""The natural extension ``F_ab``, boundary orbits and attracting domains.

Domains are finite unions of closed axis-parallel rectangles whose corners
are exact surds where known, with ``±inf`` floats for unbounded sides.  The
attractor ``D_ab`` is stored in ``(u, w)`` coordinates, ``Lambda_ab`` likewise,
and ``hat Lambda_ab`` in the compact coordinates ``x = w, y = -1/u``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import ParamPair
from .errors import (
    CaseMismatch,
    DegenerateGeodesic,
    FinitenessUndetected,
    InconsistentDomain,
    UnsupportedParameters,
)
from .moebius import word_to_matrix
from .surd import INF, ExtendedReal, Surd, as_real, is_inf, neg_inv, parse_number

NEG_INF = -math.inf
POS_INF = math.inf
UPPER, LOWER = "upper", "lower"


# -- the two-dimensional map ---------------------------------------------------

def natural_extension_step(u, w, p: ParamPair):
    """One step of ``F_ab``: translate both coordinates, or invert both, by the branch of ``w``."""
    u, w = as_real(u), as_real(w)
    if u == w and not (is_inf(u) and is_inf(w)):
        raise DegenerateGeodesic(f"u = w = {u}")
    if is_inf(u) and is_inf(w):
        raise DegenerateGeodesic("u = w = oo")
    if is_inf(w):
        return (INF if is_inf(u) else u - 1), INF
    if w < p.a:
        return (INF if is_inf(u) else u + 1), w + 1
    if w < p.b:
        return neg_inv(u), neg_inv(w)
    return (INF if is_inf(u) else u - 1), w - 1


def inverse_step(u, w, p: ParamPair, domain: "StepDomain"):
    """The preimages of ``(u, w)`` under ``F_ab`` that lie in ``domain``.

    A preimage counts only if it satisfies the branch condition of the map
    that sends it to ``(u, w)``.
    """
    out = []
    if not is_inf(w):
        cu, cw = (INF if is_inf(u) else u + 1), w + 1
        if cw >= p.b and domain.contains(cu, cw):
            out.append((cu, cw))
        cu, cw = (INF if is_inf(u) else u - 1), w - 1
        if cw < p.a and domain.contains(cu, cw):
            out.append((cu, cw))
    cu, cw = neg_inv(u), neg_inv(w)
    if not is_inf(cw) and p.a <= cw < p.b and domain.contains(cu, cw):
        out.append((cu, cw))
    return out


def step_arrays(u: np.ndarray, w: np.ndarray, a: float, b: float):
    """Vectorized ``F_ab`` on float arrays."""
    below, above = w < a, w >= b
    mid = ~(below | above)
    shift = np.where(below, 1.0, np.where(above, -1.0, 0.0))
    with np.errstate(divide="ignore"):
        u2 = np.where(mid, -1.0 / u, u + shift)
        w2 = np.where(mid, -1.0 / w, w + shift)
    return u2, w2


def floor_ab_array(x: np.ndarray, a: float, b: float) -> np.ndarray:
    return np.where(x < a, np.floor(x - a), np.where(x < b, 0.0, np.floor(x - b) + 1.0))


def accelerated_step_arrays(u, w, a, b):
    """Collapse a run of translations into one step; invert when ``w`` is in ``[a, b)``."""
    n = floor_ab_array(w, a, b)
    inside = n == 0
    with np.errstate(divide="ignore"):
        u2 = np.where(inside, -1.0 / u, u - n)
        w2 = np.where(inside, -1.0 / w, w - n)
    return u2, w2


# -- boundary orbits and the cycle property -----------------------------------

ORBIT_KINDS = ("upper-of-a", "lower-of-a", "upper-of-b", "lower-of-b")


@dataclass(frozen=True)
class OrbitTrace:
    """A one-sided forward orbit of ``a`` or ``b``.

    ``sides[i]`` records whether ``points[i]`` is approached from the right (+1)
    or the left (-1); the side decides the branch when a point hits ``a`` or
    ``b`` exactly.  ``letters[i]`` is the generator taking ``points[i]`` to
    ``points[i+1]``.
    """

    seed: ExtendedReal
    kind: str
    points: tuple
    letters: tuple
    sides: tuple


def _sided_step(x, side: int, p: ParamPair):
    if x is INF:
        return INF, side, "T^-1"
    if x == p.a:
        branch = "T" if side < 0 else "S"
    elif x == p.b:
        branch = "S" if side < 0 else "T^-1"
    elif x < p.a:
        branch = "T"
    elif x < p.b:
        branch = "S"
    else:
        branch = "T^-1"
    if branch == "T":
        return x + 1, side, branch
    if branch == "T^-1":
        return x - 1, side, branch
    return neg_inv(x), side, branch


def _seed(kind: str, p: ParamPair):
    """Seed value, side, and the generator that produced it from the endpoint."""
    if kind == "upper-of-a":
        return neg_inv(p.a), 1, "S"
    if kind == "lower-of-a":
        return p.a + 1, -1, "T"
    if kind == "upper-of-b":
        return p.b - 1, 1, "T^-1"
    if kind == "lower-of-b":
        return neg_inv(p.b), -1, "S"
    raise ValueError(kind)


def orbit(p: ParamPair, kind: str, steps: int) -> OrbitTrace:
    x, side, _ = _seed(kind, p)
    seed = x
    pts, sides, letters = [x], [side], []
    for _ in range(steps):
        x, side, letter = _sided_step(x, side, p)
        letters.append(letter)
        pts.append(x)
        sides.append(side)
    return OrbitTrace(seed, kind, tuple(pts), tuple(letters), tuple(sides))


@dataclass(frozen=True)
class CycleInfo:
    """Outcome of following the upper and lower orbits of one endpoint.

    ``upper_word``/``lower_word`` are in composition order (rightmost letter
    applied first) and include the seeding generator, so
    ``apply_word(upper_word, endpoint) == cycle_end``.
    """

    endpoint: str
    status: str  # "weak-cycle" | "strong-cycle" | "eventually-periodic"
    meet_indices: tuple | None = None
    cycle_end: ExtendedReal | None = None
    upper_word: tuple = ()
    lower_word: tuple = ()
    upper_orbit: tuple = ()
    lower_orbit: tuple = ()

    @property
    def is_strong(self) -> bool:
        return self.status == "strong-cycle"

    def levels(self) -> tuple:
        """Values visited by the two orbits before they close up."""
        return tuple(dict.fromkeys(self.upper_orbit + self.lower_orbit))


def _follow(p: ParamPair, endpoint: str, max_steps: int) -> CycleInfo:
    kinds = ("upper-of-a", "lower-of-a") if endpoint == "a" else ("upper-of-b", "lower-of-b")
    value = p.a if endpoint == "a" else p.b
    states, letters, index, periodic = [], [], [], [False, False]
    for kind in kinds:
        x, side, first = _seed(kind, p)
        states.append([(x, side)])
        letters.append([first])
        index.append({x: 0})
    seen = [{states[0][0]: 0}, {states[1][0]: 0}]

    def meet(m, k):
        x = states[0][m][0]
        up = tuple(reversed(letters[0][: m + 1]))
        lo = tuple(reversed(letters[1][: k + 1]))
        strong = word_to_matrix(up) == word_to_matrix(lo)
        return CycleInfo(
            endpoint,
            "strong-cycle" if strong else "weak-cycle",
            (m, k),
            x,
            up,
            lo,
            tuple(s[0] for s in states[0][: m + 1]),
            tuple(s[0] for s in states[1][: k + 1]),
        )

    x0, x1 = states[0][0][0], states[1][0][0]
    if x0 == x1:
        return meet(0, 0)
    for _ in range(max_steps):
        for j in (0, 1):
            if periodic[j]:
                continue
            x, side = states[j][-1]
            nx, nside, letter = _sided_step(x, side, p)
            states[j].append((nx, nside))
            letters[j].append(letter)
            i = len(states[j]) - 1
            other = index[1 - j].get(nx)
            if other is not None:
                return meet(i, other) if j == 0 else meet(other, i)
            index[j].setdefault(nx, i)
            if (nx, nside) in seen[j]:
                periodic[j] = True
            else:
                seen[j][(nx, nside)] = i
        if all(periodic):
            return CycleInfo(
                endpoint,
                "eventually-periodic",
                upper_orbit=tuple(s[0] for s in states[0]),
                lower_orbit=tuple(s[0] for s in states[1]),
            )
    raise FinitenessUndetected(
        f"orbits of {endpoint}={value} neither met nor repeated within {max_steps} steps"
    )


def detect_cycle(p: ParamPair, max_steps: int = 10_000) -> tuple[CycleInfo, CycleInfo]:
    """Cycle structure of the boundary orbits of ``a`` and of ``b``."""
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    return _follow(p, "a", max_steps), _follow(p, "b", max_steps)


# -- rectangles and step domains ---------------------------------------------

@dataclass(frozen=True)
class Rect:
    """Closed rectangle ``[u_lo, u_hi] x [w_lo, w_hi]`` tagged with its component.

    For ``hat Lambda`` domains the two coordinates are ``(x, y)`` instead.
    """

    component: str
    u_lo: object
    u_hi: object
    w_lo: object
    w_hi: object

    def is_degenerate(self) -> bool:
        return not (self.u_lo < self.u_hi and self.w_lo < self.w_hi)

    def contains(self, u, w, tol: float = 0.0) -> bool:
        if tol:
            u, w = float(u), float(w)
            return (
                float(self.u_lo) - tol <= u <= float(self.u_hi) + tol
                and float(self.w_lo) - tol <= w <= float(self.w_hi) + tol
            )
        return self.u_lo <= u <= self.u_hi and self.w_lo <= w <= self.w_hi

    def as_floats(self) -> tuple[float, float, float, float]:
        return float(self.u_lo), float(self.u_hi), float(self.w_lo), float(self.w_hi)

    def translate(self, k) -> "Rect":
        return Rect(self.component, self.u_lo + k, self.u_hi + k, self.w_lo + k, self.w_hi + k)

    def center(self) -> tuple:
        """A finite interior point (unbounded sides are stepped in by one unit)."""
        def mid(lo, hi):
            if math.isinf(float(lo)) and math.isinf(float(hi)):
                return Surd(0)
            if math.isinf(float(lo)):
                return hi - 1
            if math.isinf(float(hi)):
                return lo + 1
            return (lo + hi) / 2
        return mid(self.u_lo, self.u_hi), mid(self.w_lo, self.w_hi)


def _is_exact_bound(x) -> bool:
    return isinstance(x, Surd) or (isinstance(x, float) and math.isinf(x))


def _component_of(u_lo, u_hi, w_lo, w_hi) -> str:
    if w_lo >= u_hi:
        return UPPER
    if w_hi <= u_lo:
        return LOWER
    raise InconsistentDomain("rectangle meets the diagonal")


@dataclass(frozen=True)
class StepDomain:
    """A finite union of rectangles, kept in canonical vertical-slab form.

    ``kind`` is ``"D"``, ``"Lambda"`` or ``"hat"``.  ``exact`` is true when all
    finite corners are surds.  ``resolution`` is the fitting scale of domains
    produced by the simulation oracle.
    """

    rects: tuple
    kind: str = "D"
    exact: bool = True
    params: ParamPair | None = None
    resolution: float | None = None
    source: str = ""

    @classmethod
    def build(cls, rects: Iterable[Rect], **kw) -> "StepDomain":
        return cls(tuple(canonical_rects(rects)), **kw)

    def __len__(self):
        return len(self.rects)

    def __iter__(self):
        return iter(self.rects)

    def component(self, name: str) -> list[Rect]:
        return [r for r in self.rects if r.component == name]

    def is_empty(self) -> bool:
        return not self.rects

    def contains(self, u, w, tol: float | None = None) -> bool:
        """Closed membership; exact for surd input, within 1e-12 otherwise."""
        if is_inf(u) or is_inf(w):
            return self._contains_infinite(u, w)
        exact = isinstance(u, Surd) and isinstance(w, Surd) and self.exact
        if tol is None:
            tol = 0.0 if exact else 1e-12
        return any(r.contains(u, w, tol) for r in self.rects)

    def on_edge(self, u, w) -> bool:
        """True when ``(u, w)`` lies on a side of a rectangle containing it."""
        for r in self.rects:
            if r.contains(u, w) and (u in (r.u_lo, r.u_hi) or w in (r.w_lo, r.w_hi)):
                return True
        return False

    def _contains_infinite(self, u, w) -> bool:
        for r in self.rects:
            ok_u = (math.isinf(float(r.u_lo)) or math.isinf(float(r.u_hi))) if is_inf(u) else r.u_lo <= u <= r.u_hi
            ok_w = (math.isinf(float(r.w_lo)) or math.isinf(float(r.w_hi))) if is_inf(w) else r.w_lo <= w <= r.w_hi
            if ok_u and ok_w:
                return True
        return False

    def bounds_array(self) -> np.ndarray:
        return np.array([r.as_floats() for r in self.rects], dtype=float).reshape(-1, 4)

    def contains_array(self, u: np.ndarray, w: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        """Vectorized closed membership for float arrays."""
        u = np.asarray(u, dtype=float)[..., None]
        w = np.asarray(w, dtype=float)[..., None]
        bnd = self.bounds_array()
        if not len(bnd):
            return np.zeros(u.shape[:-1], dtype=bool)
        inside = (
            (u >= bnd[:, 0] - tol) & (u <= bnd[:, 1] + tol) & (w >= bnd[:, 2] - tol) & (w <= bnd[:, 3] + tol)
        )
        return inside.any(axis=-1)

    def boundary_steps(self, name: str) -> list[tuple]:
        """``(u_lo, u_hi, level)`` for a component whose slabs are half-infinite in ``w``.

        The level is the finite end of the slab: the lower edge for the upper
        component, the upper edge for the lower one.
        """
        out = []
        for r in self.component(name):
            level = r.w_lo if name == UPPER else r.w_hi
            out.append((r.u_lo, r.u_hi, level))
        return sorted(out, key=lambda t: t[0])

    def levels(self) -> list:
        """Distinct finite horizontal levels of each component (as a sorted list)."""
        lv = set()
        for r in self.rects:
            for y in (r.w_lo, r.w_hi):
                if not math.isinf(float(y)):
                    lv.add(y)
        return sorted(lv)

    def equals(self, other: "StepDomain") -> bool:
        return self.rects == other.rects

    def reflect(self) -> "StepDomain":
        """Image under ``psi(u, w) = (-w, -u)``."""
        rects = [Rect(r.component, -r.w_hi, -r.w_lo, -r.u_hi, -r.u_lo) for r in self.rects]
        return StepDomain.build(rects, kind=self.kind, exact=self.exact, source=f"psi({self.source})")

    def negate(self) -> "StepDomain":
        """Image under ``(u, w) -> (-u, -w)``; swaps the components."""
        swap = {UPPER: LOWER, LOWER: UPPER}
        rects = [Rect(swap[r.component], -r.u_hi, -r.u_lo, -r.w_hi, -r.w_lo) for r in self.rects]
        return StepDomain.build(rects, kind=self.kind, exact=self.exact)


def canonical_rects(rects: Iterable[Rect]) -> list[Rect]:
    """Disjoint-interior canonical decomposition, component by component.

    The union is cut into maximal vertical slabs on which the ``w``-sections
    are constant; each slab contributes one rectangle per section interval.
    Equal unions give equal outputs.
    """
    out = []
    rects = [r for r in rects if not r.is_degenerate()]
    for comp in (UPPER, LOWER):
        rs = [r for r in rects if r.component == comp]
        if not rs:
            continue
        xs = sorted(set([r.u_lo for r in rs] + [r.u_hi for r in rs]))
        slabs = []
        for x0, x1 in zip(xs, xs[1:]):
            ivs = sorted(((r.w_lo, r.w_hi) for r in rs if r.u_lo <= x0 and r.u_hi >= x1), key=lambda t: t[0])
            merged = []
            for lo, hi in ivs:
                if merged and lo <= merged[-1][1]:
                    if hi > merged[-1][1]:
                        merged[-1][1] = hi
                else:
                    merged.append([lo, hi])
            key = tuple((lo, hi) for lo, hi in merged)
            if slabs and slabs[-1][2] == key and slabs[-1][1] == x0:
                slabs[-1][1] = x1
            else:
                slabs.append([x0, x1, key])
        for x0, x1, key in slabs:
            for lo, hi in key:
                out.append(Rect(comp, x0, x1, lo, hi))
    return out


# -- maps on intervals and rectangles --------------------------------------

def _s_lo(x):
    """Lower end of S([x, .]) for an interval not crossing 0."""
    if isinstance(x, float) and math.isinf(x):
        return Surd(0) if x < 0 else 0.0
    if not x:
        return NEG_INF
    return -1 / x if isinstance(x, float) else -x.inverse()


def _s_hi(x):
    if isinstance(x, float) and math.isinf(x):
        return Surd(0) if x > 0 else 0.0
    if not x:
        return POS_INF
    return -1 / x if isinstance(x, float) else -x.inverse()


def _split_at_zero(lo, hi):
    zero = Surd(0) if _is_exact_bound(lo) and _is_exact_bound(hi) else 0.0
    if lo < 0 < hi:
        return [(lo, zero), (zero, hi)]
    return [(lo, hi)]


def s_image(r: Rect) -> list[Rect]:
    """``S`` applied coordinatewise to a rectangle, split where a side crosses 0."""
    out = []
    for u0, u1 in _split_at_zero(r.u_lo, r.u_hi):
        for w0, w1 in _split_at_zero(r.w_lo, r.w_hi):
            nu0, nu1, nw0, nw1 = _s_lo(u0), _s_hi(u1), _s_lo(w0), _s_hi(w1)
            if not (nu0 < nu1 and nw0 < nw1):
                continue
            out.append(Rect(_component_of(nu0, nu1, nw0, nw1), nu0, nu1, nw0, nw1))
    return out


def clip_w(r: Rect, lo, hi) -> Rect | None:
    w0, w1 = max(r.w_lo, lo), min(r.w_hi, hi)
    if not w0 < w1:
        return None
    return Rect(r.component, r.u_lo, r.u_hi, w0, w1)


def map_domain(domain: StepDomain, p: ParamPair) -> StepDomain:
    """Image ``F_ab(domain)`` computed rectangle by rectangle (closures)."""
    out = []
    for r in domain.rects:
        below = clip_w(r, NEG_INF, p.a)
        if below is not None:
            out.append(below.translate(1))
        mid = clip_w(r, p.a, p.b)
        if mid is not None:
            out.extend(s_image(mid))
        above = clip_w(r, p.b, POS_INF)
        if above is not None:
            out.append(above.translate(-1))
    return StepDomain.build(out, kind=domain.kind, exact=domain.exact, params=p, source=f"F({domain.source})")


# -- from hat-Lambda steps to the whole attractor --------------------------

@dataclass(frozen=True)
class HatSteps:
    """``hat Lambda`` as two step functions over ``[a, b]``.

    ``upper`` holds ``(x_lo, x_hi, height)`` meaning ``[x_lo, x_hi] x [0, height]``;
    ``lower`` holds ``(x_lo, x_hi, depth)`` meaning ``[x_lo, x_hi] x [-depth, 0]``.
    """

    upper: tuple
    lower: tuple

    def rects(self) -> list[Rect]:
        zero = lambda v: Surd(0) if isinstance(v, Surd) else 0.0  # noqa: E731
        out = [Rect(UPPER, x0, x1, zero(h), h) for x0, x1, h in self.upper if h]
        out += [Rect(LOWER, x0, x1, -d, zero(d)) for x0, x1, d in self.lower if d]
        return out

    def negate(self) -> "HatSteps":
        return HatSteps(
            tuple((-x1, -x0, d) for x0, x1, d in self.lower),
            tuple((-x1, -x0, h) for x0, x1, h in self.upper),
        )


def _strip_rects(steps: HatSteps) -> list[Rect]:
    out = []
    for x0, x1, h in steps.upper:
        if h:
            out.append(Rect(UPPER, NEG_INF, -1 / h, x0, x1))
    for x0, x1, d in steps.lower:
        if d:
            out.append(Rect(LOWER, 1 / d, POS_INF, x0, x1))
    return out


def _ceil(x) -> int:
    return math.ceil(x)


def _translates(lam: list[Rect], p: ParamPair, up: bool, tol: float = 1e-12) -> list[Rect]:
    """All pieces ``T^{-j}`` (``up``) or ``T^{j}`` of Lambda outside the strip."""
    a, b = p.a, p.b
    sgn = -1 if up else 1
    inf_side = POS_INF if up else NEG_INF
    pieces, tails = [], []
    for r in lam:
        if up and r.w_lo < b:
            continue
        if not up and r.w_hi > a:
            continue
        far = r.w_hi if up else r.w_lo
        near = r.w_lo if up else r.w_hi
        if far == inf_side:
            j0 = max(0, _ceil(near - b)) if up else max(0, _ceil(a - near))
            tails.append((r, j0))
            continue
        j = 0
        while True:
            t = r.translate(sgn * j)
            t = clip_w(t, b, POS_INF) if up else clip_w(t, NEG_INF, a)
            if t is None:
                break
            pieces.append(t)
            j += 1
    if not tails:
        return pieces
    # Translates of unbounded pieces eventually repeat with period 1 in u;
    # list them explicitly down to a cut-off and cover the rest by one
    # half-infinite block, which is valid when the pieces cover a full period.
    if up:
        cut = math.floor(min(float(r.u_lo) - j0 for r, j0 in tails)) - 1
    else:
        cut = math.ceil(max(float(r.u_hi) + j0 for r, j0 in tails)) + 1
    cover = []
    for r, j0 in tails:
        width_to_cut = (float(r.u_hi) - cut) if up else (cut - float(r.u_lo))
        jmax = j0 + math.ceil(width_to_cut) + 1
        for j in range(jmax + 1):
            t = r.translate(sgn * j)
            t = clip_w(t, b, POS_INF) if up else clip_w(t, NEG_INF, a)
            if t is not None:
                pieces.append(t)
                if j >= j0:
                    cover.append((float(t.u_lo), float(t.u_hi)))
    lo, hi = (cut - 1, cut) if up else (cut, cut + 1)
    if tol < 1e-9 and not _covers(cover, lo, hi, tol):
        raise InconsistentDomain("translates of Lambda leave gaps far from the strip")
    exact = isinstance(a, Surd)
    c = Surd(cut) if exact else float(cut)
    if up:
        pieces.append(Rect(UPPER, NEG_INF, c, b, POS_INF))
    else:
        pieces.append(Rect(LOWER, c, POS_INF, NEG_INF, a))
    return pieces


def _covers(intervals, lo: float, hi: float, tol: float = 1e-12) -> bool:
    pos = lo
    for s, e in sorted(intervals):
        if s > pos + tol:
            break
        pos = max(pos, e)
        if pos >= hi - tol:
            return True
    return pos >= hi - tol


def domain_from_hat(steps: HatSteps, p: ParamPair, exact: bool = True, source: str = "", resolution=None) -> StepDomain:
    """Rebuild ``D_ab`` from its strip ``D ∩ {a <= w <= b}`` given in hat coordinates."""
    strip = _strip_rects(steps)
    lam = [q for r in strip for q in s_image(r)]
    tol = 1e-12 if exact else (resolution or 1e-2)
    rects = strip + lam + _translates(lam, p, True, tol) + _translates(lam, p, False, tol)
    return StepDomain.build(rects, kind="D", exact=exact, params=p, source=source, resolution=resolution)


# -- exact domains for supported parameters --------------------------------

def _sq5(p, q, r):
    return Surd(p, q, r, 5)


def _catalog() -> dict:
    g = _sq5(-1, 1, 2)  # (sqrt5 - 1)/2
    g2 = _sq5(3, -1, 2)  # (3 - sqrt5)/2 = g^2
    half, third = Surd(1, 0, 2), Surd(1, 0, 3)
    zero, one = Surd(0), Surd(1)
    q = Surd.from_rational
    return {
        (q(-1), q(0)): HatSteps(((q(-1), zero, one),), ()),
        (q(-1), q(1)): HatSteps(((zero, one, one),), ((q(-1), zero, one),)),
        (-half, half): HatSteps(((-half, zero, g2), (zero, half, g)), ((-half, zero, g), (zero, half, g2))),
        (-g, g): HatSteps(((-g2, g, half),), ((-g, g2, half),)),
        (-g, g2): HatSteps(((-g, -g2, g2), (-g2, g2, g)), ((-g, g2, g2),)),
        (-half, q(3) / 2): HatSteps(
            ((half, one, half), (one, q(3) / 2, one)),
            ((-half, third, one), (third, half, half)),
        ),
        (q(-3) / 8, q(2) / 3): HatSteps(
            ((-third, zero, third), (zero, q(2) / 3, q(3) / 8)),
            (
                (q(-3) / 8, zero, q(2) / 3),
                (zero, q(2) / 5, q(5) / 8),
                (q(2) / 5, half, half),
                (half, q(5) / 8, q(2) / 5),
            ),
        ),
    }


NAMED_EXAMPLES = {
    "minus": ("-1", "0"),
    "alternating": ("-1", "1"),
    "hurwitz": ("-1/2", "1/2"),
    "hurwitz-dual": ("(1-sqrt(5))/2", "(-1+sqrt(5))/2"),
    "golden-self-dual": ("(1-sqrt(5))/2", "(3-sqrt(5))/2"),
    "rational-self-dual": ("-3/8", "2/3"),
    "wide-right": ("-1/2", "3/2"),
    "wide-left": ("-3/2", "1/2"),
}


def named_params(name: str) -> ParamPair:
    a, b = NAMED_EXAMPLES[name]
    return ParamPair(parse_number(a), parse_number(b))


def family_case(p: ParamPair) -> int:
    """Return ``m`` when ``1 <= -1/a <= b+1`` and ``a <= -1/b + m <= a+1`` hold strictly.

    Boundary equalities raise :class:`CaseMismatch` as well; the closed forms
    are not asserted there.
    """
    a, b = p.a, p.b
    if not (a < 0 < b):
        raise CaseMismatch("needs a < 0 < b")
    if not (-1 < a and a <= -b):
        raise CaseMismatch("needs -1 < a <= -b")
    ia = -1 / a
    if not (1 < ia < b + 1):
        raise CaseMismatch("needs 1 < -1/a < b+1")
    m = math.ceil(a + 1 / b)
    if m < 1:
        raise CaseMismatch("needs m >= 1")
    t = -1 / b + m
    if not (a < t < a + 1):
        raise CaseMismatch("a <= -1/b + m <= a+1 only holds with equality")
    return m


def _t2s(x):
    return -1 / x - 2


def family_hat(p: ParamPair) -> HatSteps:
    """The printed ``hat Lambda`` for the explicit family (requires ``a <= -b``)."""
    m = family_case(p)
    a, b = p.a, p.b
    one = Surd(1) if isinstance(b, Surd) else 1.0
    pts = [b - 1]
    for _ in range(m - 1):
        pts.append(_t2s(pts[-1]))
    knot = -1 / a - 1
    upper = []
    for i in range(1, m):
        upper.append((pts[i - 1], pts[i], one * i / (i + 1)))
    upper.append((pts[m - 1], knot, one * m / (m + 1)))
    upper.append((knot, b, one))
    xs = [pts[0]] + [u[1] for u in upper]
    if any(not x0 < x1 for x0, x1 in zip(xs, xs[1:])):
        raise CaseMismatch("corner sequence is not increasing")
    t = -1 / b + m
    lower = ((a, t, one / m), (t, a + 1, one / (m + 1)))
    return HatSteps(tuple(upper), lower)


def family_K(p: ParamPair):
    """``log[(m - a)(1 + b)^(2 - m)]`` (on the mirrored pair when ``a > -b``)."""
    q = p if p.a <= -p.b else ParamPair(-p.b, -p.a)
    m = family_case(q)
    return math.log(float(m - q.a)) + (2 - m) * math.log(float(1 + q.b))


def exact_hat_steps(p: ParamPair) -> tuple[HatSteps, str]:
    """Exact ``hat Lambda`` steps for supported parameters, with a source tag."""
    cat = _catalog()
    key = (p.a, p.b)
    if key in cat:
        return cat[key], "catalog"
    if (-p.b, -p.a) in cat:
        return cat[(-p.b, -p.a)].negate(), "catalog-mirror"
    try:
        if p.a <= -p.b:
            return family_hat(p), "family"
        return family_hat(ParamPair(-p.b, -p.a)).negate(), "family-mirror"
    except CaseMismatch as exc:
        raise UnsupportedParameters(
            f"no exact attractor known for {p} ({exc}); use approx_domain"
        ) from None


def build_domain(p: ParamPair) -> StepDomain:
    """Exact ``D_ab`` for the catalogued pairs and the explicit family."""
    if not p.is_exact:
        raise UnsupportedParameters("exact domains need exact parameters")
    steps, source = exact_hat_steps(p)
    return domain_from_hat(steps, p, exact=True, source=source)


# -- simulation oracle ---------------------------------------------------------

def approx_hat_steps(
    p: ParamPair,
    samples: int = 100_000,
    iterations: int = 100,
    resolution: float = 1e-2,
    seed: int = 0,
    record: int = 30,
    window: float = 1e3,
) -> HatSteps:
    """Estimate ``hat Lambda`` by iterating ``F_ab`` from random geodesics.

    Each orbit runs ``iterations`` accelerated steps, then ``record`` further
    returns to the strip are collected in hat coordinates.  Heights are the
    maxima over bins of width ``resolution/2``; neighbouring bins whose heights
    differ by less than ``resolution/2`` are merged.
    """
    a, b = p.as_floats()
    if samples <= 0:
        return HatSteps((), ())
    rng = np.random.default_rng(seed)
    u = rng.uniform(-window, window, samples)
    w = rng.uniform(-window, window, samples)
    for _ in range(iterations):
        u, w = accelerated_step_arrays(u, w, a, b)
    xs, ys = [], []
    for _ in range(record):
        u, w = accelerated_step_arrays(u, w, a, b)
        strip = (w >= a) & (w < b)
        with np.errstate(divide="ignore"):
            xs.append(w[strip])
            ys.append(-1.0 / u[strip])
    x = np.concatenate(xs)
    y = np.concatenate(ys)
    ok = np.isfinite(x) & np.isfinite(y)
    x, y = x[ok], y[ok]
    nbins = max(1, math.ceil((b - a) / (resolution / 2)))
    edges = np.linspace(a, b, nbins + 1)
    # S is singular at 0, so 0 is always a breakpoint of the true steps
    if a < 0 < b:
        edges[np.argmin(np.abs(edges))] = 0.0
    idx = np.clip(np.searchsorted(edges, x, side="right") - 1, 0, nbins - 1)
    top = np.zeros(nbins)
    bot = np.zeros(nbins)
    np.maximum.at(top, idx, np.clip(y, 0, None))
    np.maximum.at(bot, idx, np.clip(-y, 0, None))

    def steps(h):
        out = []
        start = 0
        for i in range(1, nbins + 1):
            if i == nbins or abs(h[i] - h[start]) >= resolution / 2:
                level = float(h[start:i].max())
                if level > resolution / 2:
                    out.append((float(edges[start]), float(edges[i]), level))
                start = i
        return tuple(out)

    return HatSteps(steps(top), steps(bot))


def approx_domain(
    p: ParamPair,
    samples: int = 100_000,
    iterations: int = 100,
    resolution: float = 1e-2,
    seed: int = 0,
) -> StepDomain:
    """Simulation oracle for ``D_ab`` (floating corners, ``exact=False``)."""
    fp = ParamPair(*p.as_floats())
    steps = approx_hat_steps(fp, samples, iterations, resolution, seed)
    if not steps.upper and not steps.lower:
        return StepDomain((), kind="D", exact=False, params=p, resolution=resolution, source="simulation")
    return domain_from_hat(steps, fp, exact=False, source="simulation", resolution=resolution)


def get_domain(p: ParamPair, simulate: bool = False, **kw) -> StepDomain:
    """Exact domain when available, else the simulation oracle (with a warning)."""
    if not simulate:
        try:
            return build_domain(p)
        except UnsupportedParameters as exc:
            warnings.warn(f"{exc}; falling back to simulation", stacklevel=2)
    return approx_domain(p, **kw)


# -- derived sets --------------------------------------------------------------

def lambda_of(domain: StepDomain, p: ParamPair | None = None) -> StepDomain:
    """``Lambda_ab = S(D_ab ∩ {a <= w <= b})``."""
    p = p or domain.params
    out = []
    for r in domain.rects:
        c = clip_w(r, p.a, p.b)
        if c is not None:
            out.extend(s_image(c))
    return StepDomain.build(out, kind="Lambda", exact=domain.exact, params=p, resolution=domain.resolution, source=f"Lambda({domain.source})")


def hat_lambda_of(domain: StepDomain, p: ParamPair | None = None) -> StepDomain:
    """``hat Lambda`` in ``(x, y) = (w, -1/u)`` coordinates on the strip of ``D``.

    Rectangles with ``y >= 0`` are tagged ``upper``, those with ``y <= 0``
    ``lower``.
    """
    p = p or domain.params
    out = []
    for r in domain.rects:
        c = clip_w(r, p.a, p.b)
        if c is None:
            continue
        for u0, u1 in _split_at_zero(c.u_lo, c.u_hi):
            y0, y1 = _s_lo(u0), _s_hi(u1)
            if not y0 < y1:
                continue
            comp = UPPER if y0 >= 0 else LOWER
            out.append(Rect(comp, c.w_lo, c.w_hi, y0, y1))
    return StepDomain.build(out, kind="hat", exact=domain.exact, params=p, resolution=domain.resolution, source=f"hat({domain.source})")


def hat_steps_of(hat: StepDomain) -> HatSteps:
    up = tuple((r.u_lo, r.u_hi, r.w_hi) for r in hat.component(UPPER))
    lo = tuple((r.u_lo, r.u_hi, -r.w_lo) for r in hat.component(LOWER))
    return HatSteps(up, lo)


def is_step_monotone(domain: StepDomain) -> bool:
    """Both components are bounded by non-decreasing step functions."""
    for comp in (UPPER, LOWER):
        rs = domain.component(comp)
        # each u-slab must carry one interval reaching to infinity on the outer side
        slabs = {}
        for r in rs:
            slabs.setdefault((r.u_lo, r.u_hi), []).append(r)
        levels = []
        for key in sorted(slabs, key=lambda k: k[0]):
            group = slabs[key]
            if len(group) != 1:
                return False
            r = group[0]
            if comp == UPPER and not (isinstance(r.w_hi, float) and r.w_hi == POS_INF):
                return False
            if comp == LOWER and not (isinstance(r.w_lo, float) and r.w_lo == NEG_INF):
                return False
            levels.append(r.w_lo if comp == UPPER else r.w_hi)
        if any(l1 < l0 for l0, l1 in zip(levels, levels[1:])):
            return False
    return True


def hausdorff_hat(d1: StepDomain, d2: StepDomain, p: ParamPair, n: int = 400) -> float:
    """Hausdorff distance between the ``hat Lambda`` sets of two domains.

    Both sets lie in ``[a, b] x [-1, 1]``; they are rasterized on an ``n x n``
    grid of rectangle points and compared with a k-d tree.
    """
    from scipy.spatial import cKDTree

    def cloud(dom):
        hat = hat_lambda_of(dom, p)
        pts = []
        for r in hat.rects:
            x0, x1, y0, y1 = r.as_floats()
            nx = max(2, int(n * (x1 - x0)) + 2)
            ny = max(2, int(n * (y1 - y0)) + 2)
            gx, gy = np.meshgrid(np.linspace(x0, x1, nx), np.linspace(y0, y1, ny))
            pts.append(np.column_stack([gx.ravel(), gy.ravel()]))
        return np.concatenate(pts) if pts else np.zeros((0, 2))

    c1, c2 = cloud(d1), cloud(d2)
    if not len(c1) or not len(c2):
        return 0.0 if len(c1) == len(c2) else math.inf
    return float(max(cKDTree(c2).query(c1)[0].max(), cKDTree(c1).query(c2)[0].max()))
