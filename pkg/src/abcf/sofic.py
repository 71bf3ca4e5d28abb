"""Markov refinement of ``Lambda_ab`` and admissibility of digit sequences.

``Lambda_ab`` is cut by the first digit of ``w`` into horizontal bands
``Lambda_n``; bands crossing a horizontal level of the domain are split
there, giving cells ``M_n`` (labelled ``n`` or ``n_1, n_2, ...``).  For ``|n|``
beyond the levels every band is a full square, so all such digits share one
row and one column of the transition matrix: the tail families.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .attractor import LOWER, UPPER, Rect, StepDomain, s_image
from .coding import GeodesicEndpoints, lambda_domain
from .core import ParamPair, floor_ab
from .errors import MalformedSequence, NotMarkov
from .surd import is_inf

PLUS, MINUS = "+", "-"

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cell:
    label: str
    digit: int
    rect: Rect


def digit_band(n: int, p: ParamPair):
    """The half-open interval of ``w`` whose first digit is ``n``."""
    if n > 0:
        return p.b + n - 1, p.b + n
    if n < 0:
        return p.a + n, p.a + n + 1
    return p.a, p.b


@dataclass(frozen=True)
class RefinedPartition:
    """Cells for the digits strictly between the two tail thresholds.

    Digits ``n >= n_plus`` (``n <= n_minus``) have the single full cell
    ``plus_u x band(n)`` (``minus_u x band(n)``).
    """

    params: ParamPair
    cells: tuple
    n_plus: int
    n_minus: int
    plus_u: tuple | None
    minus_u: tuple | None
    exact: bool = True

    def family_cell(self, n: int) -> Cell:
        lo, hi = digit_band(n, self.params)
        if n >= self.n_plus and self.plus_u is not None:
            return Cell(str(n), n, Rect(UPPER, self.plus_u[0], self.plus_u[1], lo, hi))
        if n <= self.n_minus and self.minus_u is not None:
            return Cell(str(n), n, Rect(LOWER, self.minus_u[0], self.minus_u[1], lo, hi))
        raise KeyError(n)

    def family_of(self, n: int) -> str | None:
        if n >= self.n_plus and self.plus_u is not None:
            return PLUS
        if n <= self.n_minus and self.minus_u is not None:
            return MINUS
        return None

    def cells_for_digit(self, n: int) -> list[Cell]:
        if self.family_of(n):
            return [self.family_cell(n)]
        return [c for c in self.cells if c.digit == n]

    def digits(self) -> list[int]:
        return sorted({c.digit for c in self.cells})

    def locate(self, u, w) -> Cell | None:
        """The cell containing a reduced point, bands taken half-open in ``w``."""
        if is_inf(w):
            return None
        n = floor_ab(w, self.params)
        for c in self.cells_for_digit(n):
            r = c.rect
            if r.u_lo <= u <= r.u_hi and r.w_lo <= w and (w < r.w_hi or (w == r.w_hi and r.w_hi == digit_band(n, self.params)[1])):
                return c
        return None

    def symbol(self, cell: Cell) -> str:
        fam = self.family_of(cell.digit)
        return fam if fam else cell.label


def _levels(lam: StepDomain, lo, hi) -> list:
    lv = set()
    for r in lam.rects:
        for y in (r.w_lo, r.w_hi):
            if not (isinstance(y, float) and math.isinf(y)) and lo < y < hi:
                lv.add(y)
    return sorted(lv)


def _u_section(lam: StepDomain, w0, w1) -> list[tuple]:
    """Maximal ``u``-intervals of the rectangles covering the band ``w0 <= w <= w1``."""
    ivs = sorted(((r.u_lo, r.u_hi) for r in lam.rects if r.w_lo <= w0 and r.w_hi >= w1), key=lambda t: t[0])
    out = []
    for lo, hi in ivs:
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [tuple(x) for x in out]


def _finite(y) -> bool:
    return not (isinstance(y, float) and math.isinf(y))


def build_partition(lam: StepDomain, p: ParamPair) -> RefinedPartition:
    """Cut ``Lambda_ab`` into the cells ``M_n``."""
    if not lam.exact:
        warnings.warn("partition built from an approximate domain", stacklevel=2)
    if not lam.rects:
        return RefinedPartition(p, (), 1, -1, None, None, lam.exact)
    pos = [y for r in lam.rects if r.w_lo >= 0 for y in (r.w_lo, r.w_hi) if _finite(y)]
    neg = [y for r in lam.rects if r.w_hi <= 0 for y in (r.w_lo, r.w_hi) if _finite(y)]
    top = max(pos) if pos else None
    bot = min(neg) if neg else None
    n_plus = 1
    if top is not None:
        while digit_band(n_plus, p)[0] < top:
            n_plus += 1
    n_minus = -1
    if bot is not None:
        while digit_band(n_minus, p)[1] > bot:
            n_minus -= 1
    plus_u = minus_u = None
    if any(isinstance(r.w_hi, float) and r.w_hi == math.inf for r in lam.rects):
        sec = _u_section(lam, digit_band(n_plus, p)[0], digit_band(n_plus, p)[1])
        if len(sec) != 1:
            raise NotMarkov("tail band is not a single rectangle")
        plus_u = sec[0]
    if any(isinstance(r.w_lo, float) and r.w_lo == -math.inf for r in lam.rects):
        sec = _u_section(lam, digit_band(n_minus, p)[0], digit_band(n_minus, p)[1])
        if len(sec) != 1:
            raise NotMarkov("tail band is not a single rectangle")
        minus_u = sec[0]
    # push the thresholds out until tail images only meet cells through u near 0
    bounds = [abs(x) for r in lam.rects for x in (r.u_lo, r.u_hi) if _finite(x) and x != 0]
    delta = min(bounds) if bounds else 1
    if plus_u is not None:
        while 1 / (n_plus - float(plus_u[1])) >= float(delta):
            n_plus += 1
    if minus_u is not None:
        while 1 / (float(minus_u[0]) - n_minus) >= float(delta):
            n_minus -= 1

    cells = []
    for n in range(n_minus + 1, n_plus):
        if n == 0:
            continue
        lo, hi = digit_band(n, p)
        cuts = [lo] + _levels(lam, lo, hi) + [hi]
        pieces = []
        for w0, w1 in zip(cuts, cuts[1:]):
            sec = _u_section(lam, w0, w1)
            for u0, u1 in sec:
                if u0 < u1:
                    if pieces and pieces[-1][:2] == (u0, u1) and pieces[-1][3] == w0:
                        pieces[-1] = (u0, u1, pieces[-1][2], w1)
                    else:
                        pieces.append((u0, u1, w0, w1))
        comp = UPPER if n > 0 else LOWER
        for i, (u0, u1, w0, w1) in enumerate(pieces):
            label = str(n) if len(pieces) == 1 else f"{n}_{i + 1}"
            cells.append(Cell(label, n, Rect(comp, u0, u1, w0, w1)))
    return RefinedPartition(p, tuple(cells), n_plus, n_minus, plus_u, minus_u, lam.exact)


def partition_for(p: ParamPair) -> RefinedPartition:
    return build_partition(lambda_domain(p), p)


# -- transitions -----------------------------------------------------------

def cell_image(cell: Cell) -> list[Rect]:
    """``R(M_n) = S T^{-n}(M_n)`` as rectangles."""
    n = cell.digit
    r = cell.rect
    return s_image(Rect(r.component, r.u_lo - n, r.u_hi - n, r.w_lo - n, r.w_hi - n))


def classify(image: Rect, target: Rect) -> str:
    """``"empty"`` (including edge contact) or ``"transversal"``; raise otherwise."""
    u0, u1 = max(image.u_lo, target.u_lo), min(image.u_hi, target.u_hi)
    w0, w1 = max(image.w_lo, target.w_lo), min(image.w_hi, target.w_hi)
    if not (u0 < u1 and w0 < w1):
        if u0 <= u1 and w0 <= w1:
            log.debug("image %s touches cell %s along an edge", image, target)
        return "empty"
    if (
        image.u_lo >= target.u_lo
        and image.u_hi <= target.u_hi
        and image.w_lo <= target.w_lo
        and image.w_hi >= target.w_hi
    ):
        return "transversal"
    raise NotMarkov(f"image {image} meets cell {target} without crossing it")


def _meets(images: Iterable[Rect], target: Rect) -> bool:
    return any(classify(im, target) == "transversal" for im in images)


@dataclass(frozen=True)
class TransitionMatrix:
    """Allowed transitions between symbols.

    Symbols are the explicit cell labels plus ``"+"`` and ``"-"`` for the two
    tail families.  ``edges[s]`` is the set of symbols reachable from ``s``.
    """

    symbols: tuple
    edges: dict
    partition: RefinedPartition

    def allows(self, s: str, t: str) -> bool:
        return t in self.edges.get(s, ())

    def rows(self) -> list[tuple[str, str, bool]]:
        return [(s, t, self.allows(s, t)) for s in self.symbols for t in self.symbols]


def _row(images: list[Rect], part: RefinedPartition, reps: int) -> frozenset:
    out = set()
    for c in part.cells:
        if _meets(images, c.rect):
            out.add(c.label)
    for fam, start, step in ((PLUS, part.n_plus, 1), (MINUS, part.n_minus, -1)):
        if (part.plus_u if fam == PLUS else part.minus_u) is None:
            continue
        hits = [_meets(images, part.family_cell(start + step * k).rect) for k in range(reps)]
        if any(hits) != all(hits):
            raise NotMarkov(f"tail family {fam} is not uniform")
        if all(hits):
            # the hit must persist for every larger |m|: an image reaching to infinity
            lim = math.inf if fam == PLUS else -math.inf
            reach = any((im.w_hi == lim if fam == PLUS else im.w_lo == lim) for im in images)
            if not reach:
                raise NotMarkov(f"tail family {fam} is only partly reached")
            out.add(fam)
    return frozenset(out)


def transition_matrix(part: RefinedPartition, p: ParamPair | None = None, reps: int = 4) -> TransitionMatrix:
    """Transitions ``M_n -> M_m`` with ``R(M_n)`` crossing ``M_m``; raises ``NotMarkov`` on partial overlap."""
    edges = {}
    for c in part.cells:
        edges[c.label] = _row(cell_image(c), part, reps)
    symbols = [c.label for c in part.cells]
    for fam, start, step in ((PLUS, part.n_plus, 1), (MINUS, part.n_minus, -1)):
        if (part.plus_u if fam == PLUS else part.minus_u) is None:
            continue
        rows = {_row(cell_image(part.family_cell(start + step * k)), part, reps) for k in range(reps)}
        if len(rows) != 1:
            raise NotMarkov(f"rows of tail family {fam} differ")
        edges[fam] = rows.pop()
        symbols.append(fam)
    return TransitionMatrix(tuple(symbols), edges, part)


def symbols_for_digit(n: int, part: RefinedPartition) -> list[str]:
    fam = part.family_of(n)
    if fam:
        return [fam]
    return [c.label for c in part.cells if c.digit == n]


def is_admissible(digits: Sequence[int], tm: TransitionMatrix, part: RefinedPartition | None = None) -> bool:
    """Whether some path of the chain erases to ``digits``."""
    part = part or tm.partition
    digits = list(digits)
    for i, n in enumerate(digits):
        if i >= 1 and n == 0:
            raise MalformedSequence(f"digit 0 at index {i}")
    if not digits:
        return True
    states = set(symbols_for_digit(digits[0], part))
    for n in digits[1:]:
        allowed = set(symbols_for_digit(n, part))
        states = {t for s in states for t in tm.edges.get(s, ()) if t in allowed}
        if not states:
            return False
    return bool(states)


def label_path(g: GeodesicEndpoints, p: ParamPair, part: RefinedPartition, steps: int) -> list[str]:
    """Symbols of the cells visited by ``g, R g, ..., R^steps g``."""
    from .coding import reduction_step

    out = []
    for _ in range(steps + 1):
        c = part.locate(g.u, g.w)
        if c is None:
            raise NotMarkov(f"reduced point {g} lies in no cell")
        out.append(part.symbol(c))
        g, _ = reduction_step(g, p)
    return out


def path_follows(path: Sequence[str], tm: TransitionMatrix) -> bool:
    return all(tm.allows(s, t) for s, t in zip(path, path[1:]))
