"""Invariant density, normalizer, entropy and the growth of convergent denominators."""
import math
import random

from abcf.core import params
from abcf.measure import abramov_estimate, closed_form_K, density, entropy, interior_samples, normalizer_K, qn_growth, qn_limit, rokhlin_entropy, transfer_check
from abcf.surd import format_number as fmt

p = params("-4/5", "2/5")
K = normalizer_K(p)
print(f"K from rectangles {K:.15f}, closed form {closed_form_K(p):.15f}, log(14/5) {math.log(14 / 5):.15f}")

d = density(p)
print("\ndensity pieces:")
for pc in d.pieces:
    sign = "+" if pc.form == "plus" else "-"
    print(f"  [{fmt(pc.lo)}, {fmt(pc.hi)}): 1/({'x + ' if sign == '+' else ''}{fmt(pc.c)}{' - x' if sign == '-' else ''})  ({pc.branch})")
xs = interior_samples(d, p, 1000)
print(f"transfer-operator residual {transfer_check(d, p, xs):.1e}; perturbed {transfer_check(d.perturbed(0, 1e-3), p, xs):.1e}")

print(f"\nentropy pi^2/(3K) = {entropy(p):.12f}")
print(f"Rokhlin integral  = {rokhlin_entropy(d):.12f}")

rng = random.Random(0)
vals = [qn_growth(p, rng.uniform(-0.8, 0.4), 5000) for _ in range(20)]
print(f"\nlog q_n / n over 20 points: {sum(vals) / len(vals):.4f} (limit {qn_limit(p):.4f})")
print(f"K * mean return time: {abramov_estimate(p):.4f} (pi^2/3 = {math.pi ** 2 / 3:.4f})")
