"""Dual parameters, the juxtaposition of digit sequences, and the Markov refinement."""
from abcf.attractor import named_params
from abcf.coding import closed_geodesic, reduce
from abcf.core import expand, params
from abcf.duality import dual_report, periodic_reversal_check, verify_duality
from abcf.errors import NotMarkov
from abcf.sofic import is_admissible, partition_for, transition_matrix
from abcf.surd import format_number as fmt, parse_number

hurwitz = named_params("hurwitz")
rep = dual_report(hurwitz)
q = rep.dual_params
print(f"dual of {hurwitz} is {q}")
print("reflection and conjugation:", verify_duality(hurwitz, q).method)

g, _ = reduce(closed_geodesic(parse_number("(7+3*sqrt(5))/2")), hurwitz)
print(f"\nclosed geodesic ({fmt(g.u)}, {fmt(g.w)})")
print("  period of w:", expand(g.w, hurwitz).period)
print("  dual period of 1/u:", expand(g.u.inverse(), q).period)
print("  reversed:", periodic_reversal_check(g, hurwitz, q))

for name in ("minus", "hurwitz", "rational-self-dual"):
    p = named_params(name)
    part = partition_for(p)
    tm = transition_matrix(part, p)
    print(f"\n{name}: cells {[c.label for c in part.cells]} plus tail families")
    for s in tm.symbols:
        print(f"  {s:>5} -> {sorted(tm.edges[s])}")
tm = transition_matrix(partition_for(hurwitz), hurwitz)
print("\n[2, 2] admissible for Hurwitz:", is_admissible([2, 2], tm), "  [2, -3]:", is_admissible([2, -3], tm))

p = params("-5/7", "3/7")
print(f"\n{p}: dual exists: {dual_report(p).has_dual}")
try:
    transition_matrix(partition_for(p), p)
except NotMarkov as exc:
    print("refinement is not Markov:", exc)
