"""From coarse to fine: bounds on <Stab> - 1 for S_6 acting on pairs (graphs on 6 vertices).

Each bound uses more information about the group than the one before:
just |G| and the minimal degree, then a chain of Hamming balls, then the
full distribution of support sizes.
"""
import math

from orbitbound import ActionKind, make_induced_symmetric, sphere_profile
from orbitbound.ladder import bound_ladder

G = make_induced_symmetric(6, 2)
print("support-size profile:", sphere_profile(G).f)

names = ["group_order", "pair_chain", "chain", "spheres"]
print(f"{'m':>2} {'exact':>8} " + " ".join(f"{x:>12}" for x in names))
for m in range(1, G.n):
    row = bound_ladder(G, m, ActionKind.SUBSETS, pair_base=6)
    rep = row.reports["delta"]
    print(f"{m:2d} {rep.exact_ln:8.3f} " + " ".join(f"{rep.bounds[x]:12.3f}" for x in names))
    assert not row.violations()

# %% multisets: the same ladder with the multiset parameter
for m in (3, 10, 20):
    rep = bound_ladder(G, m, ActionKind.MULTISETS).reports["delta"]
    print(f"multisets m={m}: exact {rep.exact_ln:.3f}, spheres {rep.bounds['spheres']:.3f}, "
          f"gap factor e^{rep.bounds['spheres'] - rep.exact_ln:.2f} = {math.exp(rep.bounds['spheres'] - rep.exact_ln):.1f}")
