"""Counting unlabeled graphs by edge count.

S_n permuting vertices acts on the C(n, 2) vertex pairs; an orbit of
m-subsets of pairs is an isomorphism class of graphs with m edges.
"""
import numpy as np

from orbitbound import ActionKind, brute_force_orbits, make_induced_symmetric, orbit_count

# %% exact counts from cycle types: no graph is ever built
for n in range(3, 9):
    G = make_induced_symmetric(n, 2)
    nu = [orbit_count(G, m, ActionKind.SUBSETS).orbit_count for m in range(G.n + 1)]
    print(f"n={n}  total={sum(nu):>6}  by edges: {nu}")

# %% the same numbers by brute force, for small n
G = make_induced_symmetric(5, 2)
brute = [brute_force_orbits(G, m, ActionKind.SUBSETS).orbit_count for m in range(11)]
print("brute force n=5:", brute)

# %% how far is the orbit count from the naive |S|/|G|?
# delta = <Stab> - 1 shrinks as the graphs get larger and less symmetric
n = 8
G = make_induced_symmetric(n, 2)
ms = np.arange(1, G.n)
delta = np.array([float(orbit_count(G, int(m), ActionKind.SUBSETS).delta) for m in ms])
for m, d in zip(ms[::3], delta[::3]):
    print(f"m={m:2d}  delta={d:.4g}")
print("smallest delta at m =", ms[delta.argmin()])
