"""Command line front end: ``abcf <command> --a A --b B [options]``.

Exit status: 0 on success, 1 on a domain error raised by the library, 2 when
a ``verify`` check fails, 64 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

from .attractor import (
    LOWER,
    UPPER,
    StepDomain,
    approx_domain,
    build_domain,
    detect_cycle,
    hat_lambda_of,
    hausdorff_hat,
)
from .coding import (
    coding_window,
    cross_section_point,
    geodesic,
    lambda_domain,
    reduction_step,
    return_time,
)
from .core import ParamPair, convergents, expand
from .duality import dual_report, verify_duality
from .errors import ABCFError, FormulaDomainError, UnsupportedCase, UnsupportedParameters
from .measure import (
    density,
    density_from_hat,
    entropy,
    normalizer_K,
    qn_growth,
    qn_limit,
    rokhlin_entropy,
)
from .sofic import is_admissible, partition_for, transition_matrix
from .surd import format_number, parse_number
from .verify import SUITES, suite

EX_USAGE = 64
VALUE_FLAGS = {"--a", "--b", "--x", "--u", "--w", "--seed", "--budget"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _num(x) -> str:
    return format_number(x)


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        for k in sorted(obj):
            out.write(f"{k}: {obj[k]}\n")


def _write_csv(path: str, header: list[str], rows, meta: dict) -> None:
    buf = io.StringIO()
    buf.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(buf.getvalue())


def _params(ns) -> ParamPair:
    if ns.a is None or ns.b is None:
        raise UsageError("--a and --b are required")
    return ParamPair(parse_number(ns.a), parse_number(ns.b))


def _meta(ns, p: ParamPair) -> dict:
    return {"a": _num(p.a), "b": _num(p.b), "seed": ns.seed}


def _rects_json(domain: StepDomain) -> list[dict]:
    return [
        {"component": r.component, "u": [_num(r.u_lo), _num(r.u_hi)], "w": [_num(r.w_lo), _num(r.w_hi)]}
        for r in domain.rects
    ]


# -- svg --------------------------------------------------------------------------

def domain_svg(domain: StepDomain, view: float = 4.0, size: int = 480) -> str:
    """Rectangles of the domain in the ``(u, w)`` plane, clipped to ``[-view, view]^2`` for drawing only."""
    scale = size / (2 * view)

    def sx(u):
        return (min(max(u, -view), view) + view) * scale

    def sy(w):
        return size - (min(max(w, -view), view) + view) * scale

    colors = {UPPER: "#4a78b5", LOWER: "#c7693d"}
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="{sx(-view):.2f}" y1="{sy(-view):.2f}" x2="{sx(view):.2f}" y2="{sy(view):.2f}" stroke="#bbb" stroke-dasharray="4 3"/>',
        f'<line x1="{sx(0):.2f}" y1="0" x2="{sx(0):.2f}" y2="{size}" stroke="#ddd"/>',
        f'<line x1="0" y1="{sy(0):.2f}" x2="{size}" y2="{sy(0):.2f}" stroke="#ddd"/>',
    ]
    for r in domain.rects:
        u0, u1, w0, w1 = r.as_floats()
        x, y = sx(u0), sy(w1)
        wdt, hgt = sx(u1) - sx(u0), sy(w0) - sy(w1)
        if wdt <= 0 or hgt <= 0:
            continue
        lines.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{wdt:.2f}" height="{hgt:.2f}" '
            f'fill="{colors[r.component]}" fill-opacity="0.55" stroke="black" stroke-width="0.6"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# -- commands --------------------------------------------------------------------

def cmd_expand(ns, out) -> int:
    p = _params(ns)
    if ns.x is None:
        raise UsageError("--x is required")
    x = parse_number(ns.x)
    e = expand(x, p, max_digits=ns.digits)
    k = min(len(e.head) + len(e.period), ns.digits) - 1
    conv = [f"{c.p}/{c.q}" for c in convergents(e, k)] if k >= 0 else []
    obj = {"params": [_num(p.a), _num(p.b)], "x": _num(x), **e.to_dict(), "convergents": conv}
    if ns.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "digit"])
        w.writerows(enumerate(e.digits(ns.digits) if e.tail == "periodic" else e.head))
    else:
        _emit(obj, ns.format, out)
    return 0


def cmd_domain(ns, out) -> int:
    p = _params(ns)
    if ns.simulate:
        d = approx_domain(p, samples=ns.samples, resolution=ns.resolution, seed=ns.seed)
    else:
        d = build_domain(p)
    cycles = []
    if p.is_exact:
        for c in detect_cycle(p):
            cycles.append({"endpoint": c.endpoint, "status": c.status, "cycle_end": None if c.cycle_end is None else _num(c.cycle_end)})
    if ns.svg:
        with open(ns.svg, "w", encoding="utf-8") as fh:
            fh.write(domain_svg(d))
    if ns.csv:
        rows = [(r.component, _num(r.u_lo), _num(r.u_hi), _num(r.w_lo), _num(r.w_hi)) for r in d.rects]
        _write_csv(ns.csv, ["component", "u_lo", "u_hi", "w_lo", "w_hi"], rows, _meta(ns, p))
    obj = {
        "params": [_num(p.a), _num(p.b)],
        "seed": ns.seed,
        "exact": d.exact,
        "source": d.source,
        "rectangles": _rects_json(d),
        "cycles": cycles,
    }
    _emit(obj, "json" if ns.format == "csv" else ns.format, out)
    return 0


def cmd_code(ns, out) -> int:
    p = _params(ns)
    if ns.u is None or ns.w is None:
        raise UsageError("--u and --w are required")
    g = geodesic(parse_number(ns.u), parse_number(ns.w))
    lam = lambda_domain(p)
    win = coding_window(g, p, ns.window, lam, budget=ns.budget)
    a0 = win.anchor
    obj = {
        "params": [_num(p.a), _num(p.b)],
        "anchor": [_num(a0.u), _num(a0.w)],
        "steps_to_reduce": win.steps_to_reduce,
        "digits": {str(k): v for k, v in win.as_dict().items()},
    }
    try:
        pt = cross_section_point(a0)
        obj["cross_section"] = {"x": pt.x, "y": pt.y, "arc": pt.arc, "second": pt.second}
    except ABCFError as exc:
        obj["cross_section"] = {"error": exc.code}
    times = []
    h = a0
    try:
        for _ in range(ns.window):
            nxt, _ = reduction_step(h, p)
            times.append(return_time(h, p, nxt))
            h = nxt
    except FormulaDomainError:
        times = None
    except ABCFError:
        pass
    obj["return_times"] = times
    _emit(obj, "json" if ns.format == "csv" else ns.format, out)
    return 0


def cmd_dual(ns, out) -> int:
    p = _params(ns)
    rep = dual_report(p, simulate=ns.simulate)
    obj = {
        "params": [_num(p.a), _num(p.b)],
        "has_dual": rep.has_dual,
        "dual": None if rep.dual_params is None else [_num(rep.dual_params.a), _num(rep.dual_params.b)],
        "self_dual": rep.self_dual,
        "certified": rep.certified,
        "witness": rep.witness if isinstance(rep.witness, str) else (None if rep.witness is None else [_num(v) for v in rep.witness]),
    }
    status = 0
    if ns.check and rep.has_dual:
        chk = verify_duality(p, rep.dual_params, seed=ns.seed)
        obj["check"] = {"ok": chk.ok, "method": chk.method, "detail": chk.detail}
        status = 0 if chk.ok else 2
    _emit(obj, "json" if ns.format == "csv" else ns.format, out)
    return status


def cmd_sofic(ns, out) -> int:
    p = _params(ns)
    part = partition_for(p)
    tm = transition_matrix(part, p)
    obj = {
        "params": [_num(p.a), _num(p.b)],
        "cells": [
            {"label": c.label, "digit": c.digit, "u": [_num(c.rect.u_lo), _num(c.rect.u_hi)], "w": [_num(c.rect.w_lo), _num(c.rect.w_hi)]}
            for c in part.cells
        ],
        "tail_families": {"+": part.n_plus if part.plus_u is not None else None, "-": part.n_minus if part.minus_u is not None else None},
        "edges": {s: sorted(tm.edges[s]) for s in tm.symbols},
    }
    if ns.matrix:
        rows = [[s] + [int(tm.allows(s, t)) for t in tm.symbols] for s in tm.symbols]
        _write_csv(ns.matrix, ["from"] + list(tm.symbols), rows, _meta(ns, p))
    if ns.check is not None:
        digits = [int(t) for t in ns.check.replace(",", " ").split()]
        obj["check"] = {"digits": digits, "admissible": is_admissible(digits, tm, part)}
    _emit(obj, "json" if ns.format == "csv" else ns.format, out)
    return 0


def cmd_measure(ns, out) -> int:
    p = _params(ns)
    obj = {"params": [_num(p.a), _num(p.b)], "seed": ns.seed}
    K = normalizer_K(p)
    obj["K"] = K
    try:
        dens = density(p)
    except UnsupportedCase:
        dens = density_from_hat(p)
    obj["density_source"] = dens.source
    if ns.entropy:
        obj["entropy"] = entropy(p, K)
    if ns.rokhlin:
        obj["rokhlin"] = rokhlin_entropy(dens)
    if ns.qn:
        import random

        rng = random.Random(ns.seed)
        a, b = p.as_floats()
        vals = [qn_growth(p, rng.uniform(a, b), ns.qn) for _ in range(ns.samples)]
        obj["qn_growth"] = {"N": ns.qn, "samples": ns.samples, "mean": sum(vals) / len(vals), "limit": qn_limit(p, K)}
    if ns.density:
        rows = [(_num(pc.lo), _num(pc.hi), pc.form, _num(pc.c), pc.branch) for pc in dens.pieces]
        _write_csv(ns.density, ["lo", "hi", "form", "c", "branch"], rows, {**_meta(ns, p), "K": repr(dens.K)})
    _emit(obj, "json" if ns.format == "csv" else ns.format, out)
    return 0


def cmd_verify(ns, out) -> int:
    p = _params(ns)
    results = suite(ns.suite, p, seed=ns.seed)
    if ns.format == "json":
        _emit({"params": [_num(p.a), _num(p.b)], "suite": ns.suite, "seed": ns.seed, "checks": [r.as_dict() for r in results]}, "json", out)
    else:
        for r in results:
            out.write(r.line() + "\n")
    return 0 if all(r.ok for r in results) else 2


def cmd_simulate(ns, out) -> int:
    p = _params(ns)
    d = approx_domain(p, samples=ns.samples, resolution=ns.resolution, seed=ns.seed)
    obj = {
        "params": [_num(p.a), _num(p.b)],
        "seed": ns.seed,
        "samples": ns.samples,
        "resolution": ns.resolution,
        "rectangles": _rects_json(d),
    }
    try:
        exact = build_domain(p)
        obj["hausdorff_to_exact"] = hausdorff_hat(d, exact, p)
    except UnsupportedParameters:
        obj["hausdorff_to_exact"] = None
    if ns.csv:
        hat = hat_lambda_of(d, p)
        rows = [(r.component, repr(float(r.u_lo)), repr(float(r.u_hi)), repr(float(r.w_lo)), repr(float(r.w_hi))) for r in hat.rects]
        _write_csv(ns.csv, ["component", "x_lo", "x_hi", "y_lo", "y_hi"], rows, _meta(ns, p))
    _emit(obj, "json" if ns.format == "csv" else ns.format, out)
    return 0


COMMANDS = {
    "expand": cmd_expand,
    "domain": cmd_domain,
    "code": cmd_code,
    "dual": cmd_dual,
    "sofic": cmd_sofic,
    "measure": cmd_measure,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--a", help="left endpoint a (exact syntax such as -4/5 or (1-sqrt(5))/2)")
    common.add_argument("--b", help="right endpoint b")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=100, help="reduction step budget")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")

    parser = _Parser(prog="abcf", description="(a,b)-continued fractions and their natural extensions")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    sp = sub.add_parser("expand", parents=[common], help="digits and convergents of a number")
    sp.add_argument("--x")
    sp.add_argument("--digits", type=int, default=64)

    sp = sub.add_parser("domain", parents=[common], help="the attracting domain")
    sp.add_argument("--svg")
    sp.add_argument("--csv")
    sp.add_argument("--simulate", action="store_true")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--resolution", type=float, default=1e-2)

    sp = sub.add_parser("code", parents=[common], help="coding window of a geodesic")
    sp.add_argument("--u")
    sp.add_argument("--w")
    sp.add_argument("--window", type=int, default=8)

    sp = sub.add_parser("dual", parents=[common], help="dual parameters")
    sp.add_argument("--check", action="store_true", help="verify the reflection and conjugation")
    sp.add_argument("--simulate", action="store_true")

    sp = sub.add_parser("sofic", parents=[common], help="Markov partition and transition matrix")
    sp.add_argument("--matrix")
    sp.add_argument("--check")

    sp = sub.add_parser("measure", parents=[common], help="normalizer, density, entropy")
    sp.add_argument("--density")
    sp.add_argument("--entropy", action="store_true")
    sp.add_argument("--rokhlin", action="store_true")
    sp.add_argument("--qn", type=int)
    sp.add_argument("--samples", type=int, default=20)

    sp = sub.add_parser("verify", parents=[common], help="run a consistency suite")
    sp.add_argument("--suite", choices=SUITES, default="all")

    sp = sub.add_parser("simulate", parents=[common], help="simulation estimate of the domain")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--resolution", type=float, default=1e-2)
    sp.add_argument("--csv")
    return parser


def _join_values(argv: list[str]) -> list[str]:
    """``--a -4/5`` becomes ``--a=-4/5`` so that negative values are not read as flags."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_join_values(argv))
        if ns.command is None:
            raise UsageError(parser.format_usage().strip())
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return COMMANDS[ns.command](ns, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n{parser.format_usage()}")
        return EX_USAGE
    except ABCFError as exc:
        sys.stderr.write(f"abcf: {exc.code}: {exc}\n")
        return 1


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
