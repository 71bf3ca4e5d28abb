"""Exact arithmetic in real quadratic fields and the extended real line.

A :class:`Surd` is the number ``(p + q*sqrt(d)) / r`` kept in canonical form.
Rationals are surds with ``d == 0``.  Points of the extended real line are
represented by surds, Python floats, or the single projective point
:data:`INF`.
"""
from __future__ import annotations

import ast
import math
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import InvalidDenominator, ParseError, UnsupportedField


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m`` and ``m`` square-free."""
    k, m = 1, n
    f = 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            k *= f
        f += 1 if f == 2 else 2
    return k, m


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


class Surd:
    """Exact element ``(p + q*sqrt(d))/r`` of Q(sqrt d).

    Canonical form: ``r > 0``, ``gcd(p, q, r) == 1``, ``d`` square-free and
    ``d == 0`` exactly when ``q == 0``.  Instances are immutable and hashable;
    rational surds hash like the equal :class:`fractions.Fraction`.
    """

    __slots__ = ("p", "q", "r", "d")

    def __init__(self, p: int, q: int = 0, r: int = 1, d: int = 0):
        p, q, r, d = int(p), int(q), int(r), int(d)
        if r == 0:
            raise InvalidDenominator("surd with zero denominator")
        if d < 0:
            raise UnsupportedField(f"negative radicand {d}")
        if d == 0 or q == 0:
            q, d = 0, 0
        else:
            k, d = _squarefree_split(d)
            q *= k
            if d == 1:
                p, q, d = p + q, 0, 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(p, q), r)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)
        object.__setattr__(self, "r", r // g)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    # -- construction -----------------------------------------------------
    @classmethod
    def from_rational(cls, x) -> "Surd":
        x = Fraction(x)
        return cls(x.numerator, 0, x.denominator)

    @classmethod
    def sqrt(cls, x) -> "Surd":
        """Exact square root of a non-negative rational."""
        x = Fraction(x)
        if x < 0:
            raise UnsupportedField("square root of a negative number")
        # sqrt(n/m) = sqrt(n*m)/m
        return cls(0, 1, x.denominator, x.numerator * x.denominator)

    @staticmethod
    def coerce(x) -> "Surd":
        if isinstance(x, Surd):
            return x
        if isinstance(x, (int, Rational)):
            return Surd.from_rational(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Surd")

    # -- predicates -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def as_fraction(self) -> Fraction:
        if self.d:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p, self.r)

    def conjugate(self) -> "Surd":
        return Surd(self.p, -self.q, self.r, self.d)

    def sign(self) -> int:
        sp, sq = _sign(self.p), _sign(self.q)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        return sp if self.p * self.p > self.q * self.q * self.d else sq

    # -- arithmetic -------------------------------------------------------
    def _field(self, other: "Surd") -> int:
        if self.d and other.d and self.d != other.d:
            raise UnsupportedField(f"mixed fields sqrt({self.d}) and sqrt({other.d})")
        return self.d or other.d

    def __add__(self, other):
        if isinstance(other, float):
            return float(self) + other
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return Surd(self.p * o.r + o.p * self.r, self.q * o.r + o.q * self.r, self.r * o.r, d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.r, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, float):
            return float(self) - other
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        if isinstance(other, float):
            return other - float(self)
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, float):
            return float(self) * other
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return Surd(self.p * o.p + self.q * o.q * d, self.p * o.q + self.q * o.p, self.r * o.r, d)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        norm = self.p * self.p - self.q * self.q * self.d
        if norm == 0:
            raise InvalidDenominator("division by zero surd")
        return Surd(self.r * self.p, -self.r * self.q, norm, self.d)

    def __truediv__(self, other):
        if isinstance(other, float):
            return float(self) / other
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        return Surd.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = Surd(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison -------------------------------------------------------
    def _cmp(self, other) -> int:
        if isinstance(other, float):
            if math.isinf(other):
                return -1 if other > 0 else 1
            f = float(self)
            return (f > other) - (f < other)
        return (self - Surd.coerce(other)).sign()

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.p, self.q, self.r, self.d) == (other.p, other.q, other.r, other.d)
        if isinstance(other, (int, Rational)):
            return self.d == 0 and Fraction(self.p, self.r) == other
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        if self.d == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.r, self.d))

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    # -- rounding and conversion -----------------------------------------
    def __floor__(self) -> int:
        if self.q == 0:
            return self.p // self.r
        root = math.isqrt(self.q * self.q * self.d)
        num_floor = self.p + root if self.q > 0 else self.p - root - 1
        return num_floor // self.r

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __float__(self) -> float:
        if self.q == 0:
            return float(Fraction(self.p, self.r))
        # scaled integer square root keeps full relative precision even
        # when p and q*sqrt(d) nearly cancel
        k = 64 + (abs(self.p) + abs(self.q) * (math.isqrt(self.d) + 1)).bit_length()
        root = math.isqrt(self.q * self.q * self.d << (2 * k))
        num = (self.p << k) + (root if self.q > 0 else -root)
        return float(Fraction(num, self.r << k))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def __repr__(self):
        return f"Surd({self.p}, {self.q}, {self.r}, {self.d})"

    def __str__(self):
        return format_number(self)


class _Infinity:
    """The point at infinity of the projective real line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "oo"

    def __float__(self):
        return math.inf

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ExtendedReal = Union[Surd, float, _Infinity]
Number = Union[Surd, float]


def is_inf(x) -> bool:
    return x is INF or (isinstance(x, float) and math.isinf(x))


def is_exact(x) -> bool:
    return isinstance(x, Surd) or x is INF


def as_real(x) -> ExtendedReal:
    """Normalize user input (int, Fraction, float, str, Surd) to an extended real."""
    if isinstance(x, Surd) or x is INF:
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a number")
    if isinstance(x, (int, Rational)):
        return Surd.from_rational(x)
    if isinstance(x, float):
        return INF if math.isinf(x) else x
    if isinstance(x, str):
        return parse_number(x)
    if hasattr(x, "__float__"):
        return as_real(float(x))
    raise TypeError(f"cannot interpret {x!r} as a real number")


def to_float(x) -> float:
    if x is INF:
        return math.inf
    return float(x)


def common_field(*xs) -> int:
    """The radicand shared by all exact arguments (0 if all rational)."""
    d = 0
    for x in xs:
        if isinstance(x, Surd) and x.d:
            if d and x.d != d:
                raise UnsupportedField(f"mixed fields sqrt({d}) and sqrt({x.d})")
            d = x.d
    return d


def neg_inv(x: ExtendedReal) -> ExtendedReal:
    """The generator S(x) = -1/x on the extended real line."""
    if x is INF:
        return Surd(0)
    if isinstance(x, float):
        if math.isinf(x):
            return 0.0
        return INF if x == 0.0 else -1.0 / x
    if not x:
        return INF
    return -x.inverse()


# -- parsing and formatting --------------------------------------------------

_NAMES = {"oo": INF, "inf": INF, "infinity": INF}


def parse_number(text: str) -> ExtendedReal:
    """Parse ``p/q``, ``(p+q*sqrt(d))/r``, decimals and simple arithmetic.

    Decimal literals are read exactly (``"0.4"`` is 2/5).  Write a trailing
    ``f`` (``"0.4f"``) to request a floating value instead.
    """
    src = text.strip()
    if not src:
        raise ParseError("empty number")
    as_float = src.endswith("f") and not src.endswith("inf")
    if as_float:
        src = src[:-1]
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse number {text!r}") from exc
    try:
        value = _eval_node(tree.body, src)
    except (InvalidDenominator, UnsupportedField):
        raise
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse number {text!r}: {exc}") from exc
    if as_float and value is not INF:
        return float(value)
    return value


def _eval_node(node, src):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ParseError(f"unexpected literal {node.value!r}")
        literal = ast.get_source_segment(src, node) or repr(node.value)
        return Surd.from_rational(Fraction(literal))
    if isinstance(node, ast.Name):
        if node.id.lower() in _NAMES:
            return _NAMES[node.id.lower()]
        raise ParseError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        v = _eval_node(node.operand, src)
        if isinstance(node.op, ast.USub):
            return INF if v is INF else -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        left, right = _eval_node(node.left, src), _eval_node(node.right, src)
        if left is INF or right is INF:
            raise ParseError("arithmetic with infinity")
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
        if isinstance(node.op, ast.Pow) and right.is_rational and right.r == 1:
            return left ** right.p
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt":
        if len(node.args) != 1:
            raise ParseError("sqrt takes one argument")
        arg = _eval_node(node.args[0], src)
        if arg is INF or not arg.is_rational:
            raise ParseError("sqrt of an irrational argument")
        return Surd.sqrt(arg.as_fraction())
    raise ParseError(f"unsupported syntax in {src!r}")


def format_number(x) -> str:
    """Round-trippable text for exact values; ``repr`` for floats."""
    if x is INF:
        return "oo"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    if isinstance(x, (int, Rational)):
        x = Surd.coerce(x)
    if x.q == 0:
        return str(x.p) if x.r == 1 else f"{x.p}/{x.r}"
    if abs(x.q) == 1:
        rad = f"sqrt({x.d})"
    else:
        rad = f"{abs(x.q)}*sqrt({x.d})"
    if x.p == 0:
        num = rad if x.q > 0 else f"-{rad}"
        return num if x.r == 1 else f"{num}/{x.r}"
    num = f"{x.p}{'+' if x.q > 0 else '-'}{rad}"
    return num if x.r == 1 else f"({num})/{x.r}"


def surd_normalize(p: int, q: int, r: int, d: int) -> Surd:
    """Canonical form of ``(p + q*sqrt(d))/r``."""
    return Surd(p, q, r, d)


def surd_compare(x, y) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    x, y = Surd.coerce(x), Surd.coerce(y)
    return (x - y).sign()
