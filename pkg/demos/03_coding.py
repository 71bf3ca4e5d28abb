"""Reducing a geodesic, reading its coding sequence, and where it crosses the cross section."""
import random
from collections import Counter

from abcf.attractor import named_params
from abcf.coding import coding_window, cross_section_point, geodesic, lambda_domain, reduction_step, return_time
from abcf.core import params
from abcf.surd import format_number as fmt, parse_number
from abcf.verify import random_reduced_floats

p = params("-1/2", "1/2")
g = geodesic(parse_number("7/3+sqrt(5)"), parse_number("(5+sqrt(5))/3"))
win = coding_window(g, p, 6)
print(f"reduced after {win.steps_to_reduce} steps at ({fmt(win.anchor.u)}, {fmt(win.anchor.w)})")
print("window n_-6 .. n_6:", win.sequence())

nxt, n0 = reduction_step(win.anchor, p)
shifted = coding_window(nxt, p, 6)
print("after one reduction step:", shifted.sequence())
print("left shift holds:", win.sequence()[1:] == shifted.sequence()[:-1])

pt = cross_section_point(win.anchor)
print(f"\ncrosses arc {pt.arc} at {pt.x:.6f} + {pt.y:.6f} i")
times = []
h = win.anchor
for _ in range(5):
    h2, _ = reduction_step(h, p)
    times.append(return_time(h, p, h2))
    h = h2
print("first five return times:", [round(t, 6) for t in times])

print("\nWhich arcs random reduced geodesics cross first, by regime:")
for name in ("hurwitz", "wide-right", "wide-left"):
    q = named_params(name)
    lam = lambda_domain(q)
    u, w = random_reduced_floats(lam, random.Random(0), 5000)
    tally = Counter()
    for ui, wi in zip(u, w):
        pt = cross_section_point(geodesic(float(ui), float(wi)))
        tally[pt.arc if pt.second is None else f"{pt.arc} then {pt.second}"] += 1
    print(f"  {name} {q}: {dict(tally)}")
