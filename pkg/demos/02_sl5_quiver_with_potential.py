"""The SL5 quiver of (1,2,1,3,2,1,4,3,2,1) and its face potential.

Faces of the planar embedding give the potential, clockwise faces with a plus
sign.  Mutating along random words never produces a 2-cycle, and the
potential at each frozen vertex comes out the same from the chart and the
F-polynomial side.
"""

import random

from qpc.cluster import lg_potential_chart, lg_potential_via_fpoly
from qpc.qp import check_2_acyclic_along, mutate_qp
from qpc.typea import gamma_qp

word = (1, 2, 1, 3, 2, 1, 4, 3, 2, 1)
qp = gamma_qp(word)
Q = qp.quiver
print("vertices (word positions):", Q.labels)
print("frozen:", Q.frozen())
for a in Q.arrows:
    print(f"  {a.id:6} {a.t:>2} -> {a.h}")
print("S =", qp.potential.to_string())

rng = random.Random(1)
for _ in range(5):
    w = [rng.randint(1, Q.n) for _ in range(4)]
    print("mutation word", w, "first 2-cycle at:", check_2_acyclic_along(qp, w))

m = mutate_qp(qp, 5)
print("\nafter mutation at 5:", m.potential.to_string())

print()
for ell in Q.frozen():
    chart = lg_potential_chart(Q, ell)
    fpoly = lg_potential_via_fpoly(qp, ell)
    print(f"W_{ell} = {chart.to_string('X')}   (F-polynomial route agrees: {chart == fpoly})")
