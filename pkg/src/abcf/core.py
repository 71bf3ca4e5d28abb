"""One-dimensional (a,b)-continued fractions.

The generalized integral part, the map ``f_ab`` and its first return
(Gauss-type) map to ``[a, b)``, digit expansions, convergents, and evaluation
of minus continued fractions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    DigitUnderflow,
    DomainError,
    InvalidParameters,
    NonconvergentSequence,
    UndefinedFloor,
)
from .moebius import IDENTITY, UnimodularMap, t_power, S
from .surd import INF, ExtendedReal, Surd, as_real, common_field, format_number, is_inf, neg_inv

FLOAT_EPS = 1e-12


@dataclass(frozen=True)
class ParamPair:
    """A point ``(a, b)`` of the parameter set ``a <= 0 <= b, b - a >= 1, -ab <= 1``."""

    a: ExtendedReal
    b: ExtendedReal

    def __post_init__(self):
        a, b = as_real(self.a), as_real(self.b)
        if is_inf(a) or is_inf(b):
            raise InvalidParameters("parameters must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not (a <= 0 <= b):
            raise InvalidParameters(f"need a <= 0 <= b, got a={a}, b={b}")
        if b - a < 1:
            raise InvalidParameters(f"need b - a >= 1, got a={a}, b={b}")
        if -(a * b) > 1:
            raise InvalidParameters(f"need -ab <= 1, got a={a}, b={b}")

    @property
    def is_exact(self) -> bool:
        return isinstance(self.a, Surd) and isinstance(self.b, Surd)

    @property
    def field(self) -> int:
        return common_field(self.a, self.b)

    def as_floats(self) -> tuple[float, float]:
        return float(self.a), float(self.b)

    def __str__(self):
        return f"({format_number(self.a)}, {format_number(self.b)})"


def params(a, b) -> ParamPair:
    return ParamPair(as_real(a), as_real(b))


def floor_ab(x: ExtendedReal, p: ParamPair) -> int:
    """The generalized integral part: floor(x-a) below a, 0 on [a,b), floor(x-b)+1 above."""
    if is_inf(x):
        raise UndefinedFloor("integral part of infinity")
    if x < p.a:
        return math.floor(x - p.a)
    if x < p.b:
        return 0
    return math.floor(x - p.b) + 1


def f_ab(x: ExtendedReal, p: ParamPair) -> ExtendedReal:
    """x+1 below a, -1/x on [a,b), x-1 from b on; infinity is fixed."""
    if is_inf(x):
        return INF
    if x < p.a:
        return x + 1
    if x < p.b:
        return neg_inv(x)
    return x - 1


def gauss_map(x: ExtendedReal, p: ParamPair) -> ExtendedReal:
    """First return of ``f_ab`` to ``[a, b)``; zero is mapped to zero."""
    if is_inf(x) or not (p.a <= x < p.b):
        raise DomainError(f"{x} is not in [{p.a}, {p.b})")
    if not x:
        return x
    y = neg_inv(x)
    return y - floor_ab(y, p)


@dataclass(frozen=True)
class Expansion:
    """Digits ``n0, n1, ...`` of an (a,b)-expansion.

    ``tail`` is ``"none"`` for a terminating expansion, ``"periodic"`` when the
    digits after ``head`` repeat ``period`` forever, and ``"truncated"`` when the
    computation stopped early (``reason`` says why).
    """

    head: tuple[int, ...]
    tail: str = "none"
    period: tuple[int, ...] = ()
    reason: str = ""

    def digits(self, n: int | None = None) -> list[int]:
        """The first ``n`` digits, unrolling a periodic tail as needed."""
        if n is None:
            if self.tail == "periodic":
                raise ValueError("periodic expansion has infinitely many digits")
            return list(self.head)
        out = list(self.head[:n])
        while len(out) < n and self.tail == "periodic":
            out.extend(self.period[: n - len(out)])
        return out

    def available(self) -> float:
        return math.inf if self.tail == "periodic" else len(self.head)

    def __iter__(self) -> Iterator[int]:
        yield from self.head
        while self.tail == "periodic":
            yield from self.period

    def value(self) -> ExtendedReal:
        """Exact value for terminating or periodic expansions, else the last convergent."""
        if self.tail == "periodic":
            xi = _periodic_value(self.period)
            return _digits_matrix(self.head)(xi)
        return _digits_matrix(self.head)(INF)

    def to_dict(self) -> dict:
        return {"head": list(self.head), "tail": self.tail, "period": list(self.period), "reason": self.reason}


@dataclass(frozen=True)
class ConvergentPair:
    p: int
    q: int

    def value(self) -> ExtendedReal:
        return INF if self.q == 0 else Surd(self.p, 0, self.q)


def expand(x, p: ParamPair, max_digits: int = 64) -> Expansion:
    """The (a,b)-expansion of ``x``.

    Exact input terminates (rationals with ``b != 0``), closes a period as soon
    as an iterate repeats, or is cut at ``max_digits``.  Floating input stops
    once the remainder drops below 1e-12.
    """
    x = as_real(x)
    if is_inf(x):
        raise UndefinedFloor("cannot expand infinity")
    exact = isinstance(x, Surd)
    digits: list[int] = []
    seen: dict = {}
    xk = x
    while len(digits) < max_digits:
        if exact:
            j = seen.get(xk)
            if j is not None:
                return Expansion(tuple(digits[:j]), "periodic", tuple(digits[j:]))
            seen[xk] = len(digits)
        n = floor_ab(xk, p)
        digits.append(n)
        rem = xk - n
        if exact and not rem:
            return Expansion(tuple(digits))
        if not exact and abs(rem) < FLOAT_EPS:
            return Expansion(tuple(digits), "truncated", reason="precision")
        xk = neg_inv(rem)
    return Expansion(tuple(digits), "truncated", reason="max-digits")


def iter_digits(x, p: ParamPair) -> Iterator[int]:
    """Unbounded digit stream; stops only when an exact remainder vanishes."""
    xk = as_real(x)
    while True:
        n = floor_ab(xk, p)
        yield n
        rem = xk - n
        if not rem:
            return
        xk = neg_inv(rem)


def _digits_matrix(digits: Iterable[int]) -> UnimodularMap:
    m = IDENTITY
    for n in digits:
        m = m @ t_power(n) @ S
    return m


def _periodic_value(period: Sequence[int]) -> ExtendedReal:
    return _digits_matrix(period).attracting_fixed_point()


def convergents(e, k: int) -> list[ConvergentPair]:
    """Partial fractions ``r_0 .. r_k`` in lowest terms with non-negative denominators."""
    digits = e.digits(k + 1) if isinstance(e, Expansion) else list(e)[: k + 1]
    if len(digits) < k + 1:
        raise DigitUnderflow(f"need {k + 1} digits, have {len(digits)}")
    out = []
    p1, p2, q1, q2 = 1, 0, 0, -1
    for n in digits:
        p1, p2 = n * p1 - p2, p1
        q1, q2 = n * q1 - q2, q1
        sgn = -1 if q1 < 0 or (q1 == 0 and p1 < 0) else 1
        out.append(ConvergentPair(sgn * p1, sgn * q1))
    return out


def convergent_denominators(digits: Iterable[int]) -> Iterator[int]:
    """``|q_n|`` for the digit stream, by the exact integer recurrence."""
    q1, q2 = 0, -1
    for n in digits:
        q1, q2 = n * q1 - q2, q1
        yield abs(q1)


def check_minus_cf_rule(digits: Sequence[int], cyclic: bool = False) -> None:
    """Raise unless every 1 is followed by a negative and every -1 by a positive digit."""
    n = len(digits)
    pairs = range(n if cyclic else n - 1)
    for i in pairs:
        cur, nxt = digits[i], digits[(i + 1) % n]
        if cur == 0 or nxt == 0:
            raise NonconvergentSequence(f"zero digit at position {i if cur == 0 else i + 1}")
        if (cur == 1 and nxt > 0) or (cur == -1 and nxt < 0):
            raise NonconvergentSequence(f"digit {cur} followed by {nxt} at position {i}")
    if n and digits[-1] == 0:
        raise NonconvergentSequence("zero digit")


def evaluate_minus_cf(digits, period: Sequence[int] = ()) -> ExtendedReal:
    """Value of the minus continued fraction ``n1 - 1/(n2 - 1/(n3 - ...))``.

    ``digits`` is a finite list (evaluated exactly) optionally followed by a
    repeating ``period``; an :class:`Expansion` is also accepted.  Periodic input
    yields the exact attracting fixed point.
    """
    if isinstance(digits, Expansion):
        period = digits.period if digits.tail == "periodic" else ()
        digits = digits.head
    head, period = list(digits), list(period)
    if period:
        check_minus_cf_rule(period, cyclic=True)
        check_minus_cf_rule(head + period[:1])
        return _digits_matrix(head)(_periodic_value(period))
    if not head:
        raise NonconvergentSequence("empty digit sequence")
    check_minus_cf_rule(head)
    if all(isinstance(n, int) for n in head):
        return _digits_matrix(head)(INF)
    acc = float(head[-1])
    for n in reversed(head[:-1]):
        acc = n - 1.0 / acc
    return acc
