"""Digits, convergents and periodic tails of (a,b)-expansions."""
from abcf.core import convergents, evaluate_minus_cf, expand, params
from abcf.surd import format_number, parse_number

minus = params(-1, 0)
hurwitz = params("-1/2", "1/2")
pair = params("-4/5", "2/5")

print("sqrt(2) in the minus expansion:")
e = expand(parse_number("sqrt(2)"), minus)
print("  head", e.head, "period", e.period)
print("  convergents", [f"{c.p}/{c.q}" for c in convergents(e, 5)])
print("  value recovered exactly:", format_number(e.value()))

print("\nRationals terminate unless b = 0, where they end in a tail of 2's:")
for p in (hurwitz, pair, minus):
    e = expand(parse_number("17/12"), p)
    print(f"  {p}: head {e.head} tail {e.tail} period {e.period}")

print("\nThe same quadratic irrational under several parameter pairs:")
x = parse_number("(1+sqrt(13))/3")
for p in (minus, hurwitz, pair, params(-1, 1)):
    e = expand(x, p)
    print(f"  {p}: head {e.head} period {e.period}")

print("\nMinus continued fractions with constant digits:")
for n in (2, 3, 4):
    print(f"  ({n}, {n}, ...) = {format_number(evaluate_minus_cf([], period=[n]))}")
