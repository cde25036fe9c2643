"""SL3 from end to end.

The reduced word (1,2,1) gives a three-vertex ice quiver with one mutable
vertex.  We mutate it, build the projective at each frozen vertex, read off the
Landau-Ginzburg potential in three independent ways and finish with the string
cone.
"""

from qpc.cluster import ell_subquiver, find_optimized_seed, lg_potential_chart, lg_potential_via_fpoly
from qpc.qp import restrict_potential
from qpc.quiver import b_matrix, mutate_quiver
from qpc.rep import build_projective, enumerate_thin_quotients
from qpc.typea import (
    gamma_qp,
    string_cone_fpoly,
    string_cone_gp,
    string_cone_sigma,
    varsigma,
    w_via_paths,
    wiring_diagram,
)

word = (1, 2, 1)
print("wiring diagram of", word)
print(wiring_diagram(3, word).ascii())

qp = gamma_qp(word)
Q = qp.quiver
print("arrows:", [(a.id, a.t, a.h) for a in Q.arrows], "frozen:", Q.frozen())
print("B =", b_matrix(Q).entries)
print("after mutation at 1:", [(a.id, a.t, a.h) for a in mutate_quiver(Q, 1).arrows])

for ell in Q.frozen():
    seed = find_optimized_seed(Q, ell)
    sub = ell_subquiver(Q, ell)
    P = build_projective(restrict_potential(qp, sub), sub.m)
    print(f"\nfrozen vertex {ell}: optimized after mutation word {seed.word}")
    print("  projective dims:", P.dims, " quotients:", enumerate_thin_quotients(P))
    print("  W via chart  :", lg_potential_chart(Q, ell).to_string("X"))
    print("  W via F-poly :", lg_potential_via_fpoly(qp, ell).to_string("X"))

for d in (1, 2):
    print(f"\nDynkin index {d}:")
    print("  W via paths  :", w_via_paths(3, word, d).to_string("X"))
    print("  varsigma     :", varsigma(3, word, d).to_string("x"))

print("\nstring cone normals")
for name, cone in [("gp", string_cone_gp(3, word)), ("fpoly", string_cone_fpoly(3, word)), ("sigma", string_cone_sigma(3, word))]:
    print(f"  {name:6}", cone.normals)
