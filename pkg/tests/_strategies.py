"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from abcf.attractor import family_case
from abcf.core import params
from abcf.errors import CaseMismatch


@st.composite
def family_pairs(draw, mirror=True):
    """Rational pairs of the explicit family, optionally mirrored to ``(-b, -a)``."""
    den = draw(st.integers(20, 400))
    a = Fraction(-draw(st.integers(int(0.62 * den) + 1, den - 1)), den)
    lo, hi = -1 / a - 1, -a
    assume(lo < hi)
    t = Fraction(draw(st.integers(1, 999)), 1000)
    b = (lo + (hi - lo) * t).limit_denominator(1000)
    assume(lo < b <= hi)
    p = params(a, b)
    try:
        family_case(p)
    except CaseMismatch:
        assume(False)
    if mirror and draw(st.booleans()):
        p = params(-b, -a)
    return p
