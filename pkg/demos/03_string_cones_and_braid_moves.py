"""String cones for every reduced word of w_0 in S_4.

For each word the three cone constructions agree.  Braid moves transport
points between cones through the tropical transition map; we sample the box
[0,10]^6 and check that membership is preserved.
"""

import random

from qpc.typea import (
    braid_chain,
    braid_transition_trop,
    reduced_words,
    string_cone_fpoly,
    string_cone_gp,
    string_cone_sigma,
)

words = reduced_words(4)
for w in words:
    gp, fp, sg = string_cone_gp(4, w), string_cone_fpoly(4, w), string_cone_sigma(4, w)
    status = "agree" if gp == fp == sg else "DISAGREE"
    print(w, len(gp.normals), "inequalities,", status)

rng = random.Random(0)
w1, w2 = words[0], words[-1]
chain = braid_chain(w1, w2)
print(f"\nbraid chain {w1} -> {w2}:")
for kind, p, before, after in chain:
    print(f"  {kind}-term move at {p}: {before} -> {after}")
C1, C2 = string_cone_gp(4, w1), string_cone_gp(4, w2)
hits = 0
for _ in range(2000):
    x = [rng.randint(0, 10) for _ in range(6)]
    inside = C1.contains(x)
    assert inside == C2.contains(braid_transition_trop(x, chain))
    hits += inside
print(f"sampled 2000 points, {hits} inside; membership preserved for all")
