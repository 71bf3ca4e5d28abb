"""Parameterized consistency checks shared by the ``verify`` command and the test suite.

Each check returns a :class:`CheckResult`; none of them raises on a failed
comparison.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .attractor import accelerated_step_arrays, build_domain, inverse_step, named_params, natural_extension_step, step_arrays
from .coding import (
    ARC_C,
    ARC_MINUS,
    ARC_PLUS,
    closed_geodesic,
    coding_window,
    cross_section_point,
    geodesic,
    lambda_domain,
    period_of,
    reduce,
    reduction_step,
    return_time,
)
from .core import ParamPair, expand
from .duality import dual_params, dual_report, juxtaposition_check, verify_duality
from .errors import ABCFError, AmbiguousBoundary, NotMarkov
from .measure import (
    abramov_estimate,
    closed_form_K,
    density,
    entropy,
    interior_samples,
    normalizer_K,
    qn_growth,
    qn_limit,
    rokhlin_entropy,
    transfer_check,
)
from .moebius import apply_word
from .sofic import is_admissible, label_path, partition_for, path_follows, transition_matrix
from .surd import Surd


@dataclass
class CheckResult:
    name: str
    ok: bool
    value: object = None
    detail: str = ""
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.detail} ({self.seconds:.2f} s)"

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail, "seconds": round(self.seconds, 3)}


def _timed(name, fn, *args, **kw) -> CheckResult:
    t0 = time.perf_counter()
    try:
        res = fn(*args, **kw)
    except ABCFError as exc:
        res = CheckResult(name, False, detail=f"{exc.code}: {exc}")
    res.name = name
    res.seconds = time.perf_counter() - t0
    return res


# -- samplers ------------------------------------------------------------------

def random_surd(rng: random.Random, d: int = 5) -> Surd:
    """A random element of Q(sqrt d), kept away from the golden-ratio orbit."""
    q = rng.choice([-5, -4, -3, -2, 2, 3, 4, 5])
    return Surd(rng.randint(-300, 300), q, rng.randint(2, 50), d)


def random_exact_geodesic(rng: random.Random, d: int = 5):
    while True:
        u, w = random_surd(rng, d), random_surd(rng, d)
        if u != w:
            return geodesic(u, w)


def random_reduced_floats(lam, rng: random.Random, count: int, window: float = 50.0):
    """Uniform float points of ``Lambda`` clipped to a window, as ``(u, w)`` arrays."""
    b = lam.bounds_array()
    b = np.clip(b, -window, window)
    area = (b[:, 1] - b[:, 0]) * (b[:, 3] - b[:, 2])
    nprng = np.random.default_rng(rng.randrange(2**32))
    idx = nprng.choice(len(b), size=count, p=area / area.sum())
    u = nprng.uniform(b[idx, 0], b[idx, 1])
    w = nprng.uniform(b[idx, 2], b[idx, 3])
    return u, w


# -- measure -------------------------------------------------------------------

def check_normalizer(p: ParamPair) -> CheckResult:
    K = normalizer_K(p, check=False)
    ref = closed_form_K(p)
    err = abs(K - ref)
    return CheckResult("normalizer", err <= 1e-10, K, f"K={K:.15f} closed form {ref:.15f} diff {err:.1e}")


def check_transfer(p: ParamPair, count: int = 1000, seed: int = 0) -> CheckResult:
    dens = density(p)
    xs = interior_samples(dens, p, count, seed)
    res = transfer_check(dens, p, xs)
    bad = transfer_check(dens.perturbed(0, 1e-3), p, xs)
    ok = res < 1e-9 and bad >= 1e-4
    return CheckResult("transfer", ok, res, f"max residual {res:.1e}; perturbed {bad:.1e}")


def check_rokhlin(p: ParamPair) -> CheckResult:
    dens = density(p)
    r, h = rokhlin_entropy(dens), entropy(p)
    return CheckResult("rokhlin", abs(r - h) <= 1e-6, r, f"-2 int log|x| dmu = {r:.12f}, pi^2/(3K) = {h:.12f}")


def check_qn_growth(p: ParamPair, count: int = 100, N: int = 10_000, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    a, b = p.as_floats()
    vals = [qn_growth(p, rng.uniform(a, b), N) for _ in range(count)]
    mean, lim = float(np.mean(vals)), qn_limit(p)
    rel = abs(mean - lim) / lim
    return CheckResult("qn-growth", rel <= 0.01, mean, f"mean {mean:.5f} vs {lim:.5f} ({100 * rel:.2f}%)")


def check_abramov(p: ParamPair, seed: int = 0) -> CheckResult:
    est = abramov_estimate(p, seed=seed)
    rel = abs(est - math.pi ** 2 / 3) / (math.pi ** 2 / 3)
    return CheckResult("abramov", rel <= 0.05, est, f"K * mean g = {est:.4f} vs pi^2/3 ({100 * rel:.2f}%)")


# -- attractor -----------------------------------------------------------------

def check_trapping(
    p: ParamPair, count: int = 10_000, steps: int = 200, window: float = 1000.0, seed: int = 0, accelerated: bool = True
) -> CheckResult:
    """A run of translations counts as one step unless ``accelerated`` is off."""
    D = build_domain(p)
    a, b = p.as_floats()
    advance = accelerated_step_arrays if accelerated else step_arrays
    rng = np.random.default_rng(seed)
    u, w = rng.uniform(-window, window, count), rng.uniform(-window, window, count)
    landed = np.zeros(count, dtype=bool)
    for _ in range(steps):
        landed |= D.contains_array(u, w)
        u, w = advance(u, w, a, b)
    landed |= D.contains_array(u, w)
    frac = float(landed.mean())
    return CheckResult("trapping", frac >= 0.999, frac, f"{frac:.4%} of {count} land within {steps} steps")


def _exact_point(D, rng: random.Random):
    r = rng.choice(D.rects)
    u0, u1, w0, w1 = (max(min(v, 20.0), -20.0) for v in r.as_floats())
    u = Surd.from_rational(Fraction(rng.uniform(u0, u1)).limit_denominator(10**6))
    w = Surd.from_rational(Fraction(rng.uniform(w0, w1)).limit_denominator(10**6))
    return u, w


def check_bijectivity(p: ParamPair, count: int = 2000, seed: int = 0) -> CheckResult:
    """Forward then backward, and backward then forward, return exactly for points off the edges."""
    D = build_domain(p)
    rng = random.Random(seed)
    tested = bad = 0
    while tested < count:
        u, w = _exact_point(D, rng)
        if u == w or not D.contains(u, w) or D.on_edge(u, w):
            continue
        fu, fw = natural_extension_step(u, w, p)
        if D.on_edge(fu, fw):
            continue
        tested += 1
        pre = inverse_step(u, w, p, D)
        back = inverse_step(fu, fw, p, D)
        ok = back == [(u, w)] and len(pre) == 1 and natural_extension_step(*pre[0], p) == (u, w)
        bad += not ok
    return CheckResult("bijectivity", bad == 0, bad, f"{count - bad}/{count} exact round trips")


# -- coding ----------------------------------------------------------------------

def common_tail(d1, d2, budget: int, length: int):
    """Offsets ``(i, j)`` up to ``budget`` after which the digit lists agree to the end."""
    for i in range(budget + 1):
        for j in range(budget + 1):
            t1 = d1[i:]
            if len(t1) >= length and t1 == d2[j:]:
                return i, j
    return None


def check_tail_property(p: ParamPair, count: int = 200, budget: int = 100, length: int = 30, seed: int = 0) -> CheckResult:
    """``x`` and ``A x`` for random words ``A`` of length at most 8 share their tail.

    ``x`` is a random rational with a 100-digit denominator, so both expansions
    are exact and long.
    """
    rng = random.Random(seed)
    a, b = p.as_floats()
    letters = ["T", "T^-1", "S"]
    worst, fails = 0, 0
    done = 0
    while done < count:
        lo, hi = int(a * 10**100), int(b * 10**100)
        x = Surd.from_rational(Fraction(rng.randrange(lo, hi), 10**100))
        word = [rng.choice(letters) for _ in range(rng.randint(1, 8))]
        y = apply_word(word, x)
        if not isinstance(y, Surd):
            continue
        done += 1
        d1 = expand(x, p, max_digits=10_000).digits()
        d2 = expand(y, p, max_digits=10_000).digits()
        off = common_tail(d1, d2, budget, length)
        if off is None:
            fails += 1
        else:
            worst = max(worst, *off)
    return CheckResult("tail-property", fails == 0, fails, f"{count - fails}/{count} share a tail of >= {length}; largest offset {worst}")


def _windows(p: ParamPair, rng: random.Random, K: int, lam):
    """Coding windows of random exact geodesics, skipping orbits that hit an edge of ``Lambda``."""
    skipped = 0
    while True:
        try:
            w0 = coding_window(random_exact_geodesic(rng), p, K, lam)
            g1, _ = reduction_step(w0.anchor, p)
            w1 = coding_window(g1, p, K, lam)
        except AmbiguousBoundary:
            skipped += 1
            continue
        yield w0, w1, skipped


def check_shift_conjugacy(p: ParamPair, count: int = 1000, K: int = 6, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    lam = lambda_domain(p)
    bad = skipped = 0
    source = _windows(p, rng, K, lam)
    for _ in range(count):
        w0, w1, skipped = next(source)
        if w1.steps_to_reduce != 0:
            bad += 1
            continue
        fut_ok = w1.future[: len(w0.future) - 1] == w0.future[1:]
        past_ok = w1.past == (w0.future[0],) + w0.past[:-1]
        bad += not (fut_ok and past_ok)
    return CheckResult("shift-conjugacy", bad == 0, bad, f"{count - bad}/{count} windows shift exactly ({skipped} boundary orbits skipped)")


def check_cross_sections(p: ParamPair, count: int = 10_000, seed: int = 0) -> CheckResult:
    a, b = p.as_floats()
    if b > 1:
        allowed = {(ARC_C, None), (ARC_PLUS, ARC_MINUS)}
    elif a < -1:
        allowed = {(ARC_C, None), (ARC_MINUS, ARC_PLUS)}
    else:
        allowed = {(ARC_C, None)}
    rng = random.Random(seed)
    us, ws = random_reduced_floats(lambda_domain(p), rng, count)
    seen, bad = {}, 0
    for u, w in zip(us, ws):
        if u == w:
            continue
        try:
            pt = cross_section_point(geodesic(float(u), float(w)))
        except ABCFError:
            bad += 1
            continue
        key = (pt.arc, pt.second)
        seen[key] = seen.get(key, 0) + 1
        bad += key not in allowed
    summary = ", ".join(f"{k[0]}{'->' + k[1] if k[1] else ''}: {v}" for k, v in sorted(seen.items(), key=str))
    return CheckResult("cross-sections", bad == 0, bad, f"{bad} failures; {summary}")


def periodic_geodesics(p: ParamPair, count: int, seed: int = 0, max_period: int = 400):
    """Reduced closed geodesics ``(w', w)`` for random quadratic irrationals ``w``."""
    rng = random.Random(seed)
    lam = lambda_domain(p)
    out = []
    while len(out) < count:
        w = Surd(rng.randint(-40, 40), rng.choice([-3, -2, 2, 3]), rng.randint(2, 12), 5)
        try:
            g, _ = reduce(closed_geodesic(w), p, lam)
            k = period_of(g, p, max_period)
        except ABCFError:
            continue
        out.append((g, k))
    return out


def check_return_time(p: ParamPair, count: int = 100, seed: int = 0) -> CheckResult:
    worst = 0.0
    for g, k in periodic_geodesics(p, count, seed):
        total, logs = [], []
        h = g
        for _ in range(k):
            nxt, _ = reduction_step(h, p)
            total.append(return_time(h, p, nxt))
            logs.append(2 * math.log(abs(float(h.w))))
            h = nxt
        worst = max(worst, abs(math.fsum(total) - math.fsum(logs)))
    return CheckResult("return-time", worst <= 1e-10, worst, f"largest |sum g - 2 sum log|w|| = {worst:.1e} over {count} closed geodesics")


# -- duality -------------------------------------------------------------------

SELF_DUAL = ("minus", "alternating", "golden-self-dual", "rational-self-dual")


def check_self_dual(name: str) -> CheckResult:
    p = named_params(name)
    rep = dual_report(p)
    chk = verify_duality(p, p)
    ok = rep.has_dual and rep.self_dual and chk.ok and chk.method.startswith("exact")
    return CheckResult(f"self-dual {name}", ok, rep.dual_params, f"dual {rep.dual_params}; {chk.method}")


def check_mutual_dual(first: str = "hurwitz", second: str = "hurwitz-dual") -> CheckResult:
    p, q = named_params(first), named_params(second)
    d1, d2 = dual_params(p), dual_params(q)
    c1, c2 = verify_duality(p, q), verify_duality(q, p)
    ok = d1 == q and d2 == p and c1.ok and c2.ok and c1.method.startswith("exact") and c2.method.startswith("exact")
    return CheckResult(f"mutual-dual {first}/{second}", ok, (d1, d2), f"{p} -> {d1}, {q} -> {d2}; {c1.method}")


def check_juxtaposition(name: str = "hurwitz", count: int = 200, K: int = 15, seed: int = 0) -> CheckResult:
    p = named_params(name)
    q = dual_params(p)
    lam = lambda_domain(p)
    rng = random.Random(seed)
    bad = skipped = done = 0
    while done < count:
        g = random_exact_geodesic(rng)
        try:
            bad += not juxtaposition_check(g, p, q, K, lam)
        except AmbiguousBoundary:
            skipped += 1
            continue
        done += 1
    return CheckResult("juxtaposition", bad == 0, bad, f"{count - bad}/{count} past windows equal the dual digits of 1/u (K={K}; {skipped} boundary orbits skipped)")


def check_duality(p: ParamPair) -> CheckResult:
    rep = dual_report(p)
    if not rep.has_dual:
        return CheckResult("duality", True, None, f"no dual: strong cycle at {rep.witness}")
    chk = verify_duality(p, rep.dual_params)
    return CheckResult("duality", chk.ok, rep.dual_params, f"dual {rep.dual_params}; {chk.method} {chk.detail}".strip())


# -- sofic -------------------------------------------------------------------------

def check_markov(p: ParamPair) -> CheckResult:
    try:
        part = partition_for(p)
        tm = transition_matrix(part, p)
    except NotMarkov as exc:
        return CheckResult("markov", False, None, f"not-markov: {exc}")
    return CheckResult("markov", True, tm, f"{len(part.cells)} explicit cells, {len(tm.symbols)} symbols, all intersections empty or transversal")


def check_paths(p: ParamPair, count: int = 10_000, steps: int = 8, seed: int = 0) -> CheckResult:
    """Cell paths of reduced geodesics follow the matrix, and their digit windows are admissible."""
    part = partition_for(p)
    tm = transition_matrix(part, p)
    lam = lambda_domain(p)
    rng = random.Random(seed)
    us, ws = random_reduced_floats(lam, rng, 3 * count, window=30.0)
    tested = bad = 0
    for u, w in zip(us, ws):
        if tested == count:
            break
        u = Surd.from_rational(Fraction(float(u)).limit_denominator(10**9))
        w = Surd.from_rational(Fraction(float(w)).limit_denominator(10**9))
        if u == w or not lam.contains(u, w) or lam.on_edge(u, w):
            continue
        g = geodesic(u, w)
        try:
            path = label_path(g, p, part, steps)
            digits = expand(w, p, max_digits=steps + 1).digits(steps + 1)
        except ABCFError:
            continue
        if len(digits) < steps + 1:
            continue
        tested += 1
        bad += not (path_follows(path, tm) and is_admissible(digits, tm, part))
    return CheckResult("paths", bad == 0 and tested == count, bad, f"{tested - bad}/{tested} paths follow the matrix")


def check_minus_full_shift() -> CheckResult:
    p = named_params("minus")
    part = partition_for(p)
    tm = transition_matrix(part, p)
    syms = set(tm.symbols)
    digits = {c.digit for c in part.cells}
    full = all(tm.edges[s] == syms for s in syms)
    ok = full and min(digits) >= 2 and part.n_plus <= 3 and part.minus_u is None
    seqs_ok = is_admissible([2, 5, 3, 2, 9, 2], tm) and not is_admissible([3, 1, 4], tm)
    return CheckResult("minus full shift", ok and seqs_ok, sorted(syms), f"symbols {sorted(syms)}; full={full}")


# -- suites ----------------------------------------------------------------------

def suite(name: str, p: ParamPair, seed: int = 0) -> list[CheckResult]:
    """Checks for one parameter pair; ``name`` is one of ``SUITES``."""
    out = []
    a, b = p.as_floats()
    if name in ("measure", "all"):
        out += [_timed("normalizer", check_normalizer, p), _timed("transfer", check_transfer, p, seed=seed)]
        out += [_timed("rokhlin", check_rokhlin, p), _timed("qn-growth", check_qn_growth, p, count=20, seed=seed)]
        out.append(_timed("abramov", check_abramov, p, seed=seed))
    if name in ("attractor", "all"):
        out += [_timed("trapping", check_trapping, p, seed=seed), _timed("bijectivity", check_bijectivity, p, count=500, seed=seed)]
    if name in ("coding", "all"):
        out += [
            _timed("tail-property", check_tail_property, p, count=50, seed=seed),
            _timed("shift-conjugacy", check_shift_conjugacy, p, count=200, seed=seed),
            _timed("cross-sections", check_cross_sections, p, count=2000, seed=seed),
        ]
        if -1 <= a and b <= 1:
            out.append(_timed("return-time", check_return_time, p, count=20, seed=seed))
    if name in ("duality", "all"):
        out.append(_timed("duality", check_duality, p))
    if name in ("sofic", "all"):
        out += [_timed("markov", check_markov, p), _timed("paths", check_paths, p, count=500, seed=seed)]
    return out


SUITES = ("measure", "attractor", "coding", "duality", "sofic", "all")
