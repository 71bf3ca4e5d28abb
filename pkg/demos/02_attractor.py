"""The attracting domain for (a,b) = (-4/5, 2/5): exact construction against simulation."""
import sys

from abcf.attractor import approx_domain, build_domain, detect_cycle, hat_lambda_of, hausdorff_hat, is_step_monotone, map_domain
from abcf.cli import domain_svg
from abcf.core import params
from abcf.surd import format_number as fmt

p = params("-4/5", "2/5")
for c in detect_cycle(p):
    print(f"endpoint {c.endpoint}: {c.status}, orbits meet at {fmt(c.cycle_end)}")

d = build_domain(p)
print(f"\nD has {len(d)} rectangles ({d.source}); step monotone: {is_step_monotone(d)}")
print("invariant under the natural extension:", map_domain(d, p).equals(d))
print("\nhat Lambda (x = w, y = -1/u):")
for r in hat_lambda_of(d, p).rects:
    print(f"  [{fmt(r.u_lo)}, {fmt(r.u_hi)}] x [{fmt(r.w_lo)}, {fmt(r.w_hi)}]")

sim = approx_domain(p, samples=50_000, seed=0)
print(f"\nsimulation oracle: {len(sim)} rectangles, hat distance to exact {hausdorff_hat(sim, d, p):.4f}")

out = sys.argv[1] if len(sys.argv) > 1 else "attractor.svg"
with open(out, "w", encoding="utf-8") as fh:
    fh.write(domain_svg(d))
print(f"picture written to {out}")
