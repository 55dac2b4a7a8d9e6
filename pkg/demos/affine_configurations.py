"""Point configurations in the affine plane over small fields.

AGL(2, q) acts on the q^2 points of F_q^2.  Orbits of m-subsets are
configurations of m points up to affine maps.
"""
from orbitbound import ActionKind, make_AGL, minimal_degree_group, orbit_count
from orbitbound.bounds import thm51_bound
from orbitbound.invariants import ln_exact

for q in (2, 3, 4):
    G = make_AGL(2, q)
    print(f"AGL(2,{q}): |G|={G.order}  minimal degree={minimal_degree_group(G)} (q^2 - q = {q * q - q})")

# %% number of affine classes of m-point sets in the plane over F_3
G = make_AGL(2, 3)
print([orbit_count(G, m, ActionKind.SUBSETS).orbit_count for m in range(10)])

# %% the closed-form bound on ln(<Stab> - 1) against the exact value
print(" m   exact    bound(q^(d^2+d))  bound(|G|)")
for m in range(1, 9):
    exact = ln_exact(orbit_count(G, m, ActionKind.SUBSETS).delta)
    loose = thm51_bound(2, 3, m, ActionKind.SUBSETS)
    tight = thm51_bound(2, 3, m, ActionKind.SUBSETS, order=G.order)
    print(f"{m:2d}  {exact:7.3f}  {loose:16.3f}  {tight:10.3f}")
