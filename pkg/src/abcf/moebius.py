"""PSL(2,Z) acting on the extended real line by Moebius transformations."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DomainError, ParseError
from .surd import INF, ExtendedReal, Surd


@dataclass(frozen=True)
class UnimodularMap:
    """The projective class of the matrix ``(p q; r s)`` with ``ps - qr = 1``.

    The sign is normalized so that ``r > 0``, or ``r == 0`` and ``s > 0``;
    equality of instances is therefore equality in PSL(2,Z).
    """

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.p * self.s - self.q * self.r != 1:
            raise DomainError(f"determinant of ({self.p} {self.q}; {self.r} {self.s}) is not 1")
        if self.r < 0 or (self.r == 0 and self.s < 0):
            for name in "pqrs":
                object.__setattr__(self, name, -getattr(self, name))

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(self.s, -self.q, -self.r, self.p)

    def trace(self) -> int:
        return self.p + self.s

    def __call__(self, x: ExtendedReal) -> ExtendedReal:
        return moebius_apply(self, x)

    def fixed_points(self) -> list:
        """Real fixed points as exact surds (or ``INF``); empty for elliptic maps."""
        p, r, s = self.p, self.r, self.s
        if r == 0:
            # translation x -> x + q/s (s = +-1)
            return [INF]
        disc = (p + s) ** 2 - 4
        if disc < 0:
            return []
        if disc == 0:
            return [Surd(p - s, 0, 2 * r)]
        return [Surd(p - s, -1, 2 * r, disc), Surd(p - s, 1, 2 * r, disc)]

    def attracting_fixed_point(self) -> ExtendedReal:
        """The fixed point approached by ``self^n(x)`` for generic ``x``."""
        pts = self.fixed_points()
        if not pts:
            raise DomainError("elliptic map has no real fixed point")
        if len(pts) == 1:
            return pts[0]
        for xi in pts:
            if abs(self.r * xi + self.s) > 1:
                return xi
        raise DomainError("no attracting fixed point")  # pragma: no cover


IDENTITY = UnimodularMap(1, 0, 0, 1)
S = UnimodularMap(0, -1, 1, 0)
T = UnimodularMap(1, 1, 0, 1)
T_INV = UnimodularMap(1, -1, 0, 1)


def t_power(k: int) -> UnimodularMap:
    return UnimodularMap(1, k, 0, 1)


def moebius_apply(m: UnimodularMap, x: ExtendedReal) -> ExtendedReal:
    """``(p x + q)/(r x + s)`` with the conventions ``oo -> p/r`` and ``-s/r -> oo``."""
    p, q, r, s = m.p, m.q, m.r, m.s
    if isinstance(x, (int, Fraction)):
        x = Surd.from_rational(x)
    if x is INF or (isinstance(x, float) and math.isinf(x)):
        if r == 0:
            return INF
        return Surd(p, 0, r) if not isinstance(x, float) else p / r
    den = r * x + s
    if not den:
        return INF
    return (p * x + q) / den


_LETTER = re.compile(r"^T(?:\^?\(?([+-]?\d+)\)?)?$")

Letter = Union[str, UnimodularMap]


def letter_matrix(letter: Letter) -> UnimodularMap:
    """Matrix of a generator letter: ``"S"``, ``"T"``, ``"T^-1"``, ``"T^k"``."""
    if isinstance(letter, UnimodularMap):
        return letter
    letter = letter.strip()
    if letter == "S":
        return S
    m = _LETTER.match(letter)
    if not m:
        raise ParseError(f"unknown generator letter {letter!r}")
    return t_power(int(m.group(1)) if m.group(1) is not None else 1)


def t_letter(k: int) -> str:
    return "T" if k == 1 else f"T^{k}"


def word_to_matrix(word: Iterable[Letter]) -> UnimodularMap:
    """Product of a word read left to right, so ``[A, B]`` is the map ``A∘B``."""
    out = IDENTITY
    for letter in word:
        out = out @ letter_matrix(letter)
    return out


def apply_word(word: Iterable[Letter], x: ExtendedReal) -> ExtendedReal:
    return moebius_apply(word_to_matrix(word), x)
