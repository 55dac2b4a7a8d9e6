"""Orbit counting for induced actions on m-subsets and m-multisets.

Two independent routes:

* :func:`orbit_count` sums fixed-point counts over the group's cycle-type
  distribution (Burnside) and never looks at individual subsets;
* :func:`brute_force_orbits` lists every m-(multi)set, applies the
  generators and labels connected components.

They must agree exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Mapping

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .invariants import alpha_m, alpha_multi
from .perm import CycleType, FiniteGroup, Permutation, cycle_type

DEFAULT_CARRIER_CAP = 2 * 10**6


class ActionKind(enum.Enum):
    SUBSETS = "subsets"
    MULTISETS = "multisets"


class CarrierTooLarge(ValueError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"carrier of size {size} exceeds the carrier cap {cap}")
        self.size = size
        self.cap = cap


def carrier_size(n: int, m: int, kind: ActionKind) -> int:
    """``C(n, m)`` for subsets, ``C(n + m - 1, m)`` for multisets."""
    _check_m(n, m, kind)
    if kind is ActionKind.SUBSETS:
        return math.comb(n, m)
    if n == 0:
        return int(m == 0)
    return math.comb(n + m - 1, m)


def _check_m(n: int, m: int, kind: ActionKind) -> None:
    if m < 0 or (kind is ActionKind.SUBSETS and m > n):
        raise ValueError(f"m={m} invalid for {kind.value} of an {n}-set")


def _alpha(ct: CycleType, m: int, kind: ActionKind) -> int:
    return alpha_m(ct, m) if kind is ActionKind.SUBSETS else alpha_multi(ct, m)


@dataclass(frozen=True)
class OrbitSummary:
    orbit_count: int
    carrier_size: int
    group_order: int
    avg_stabilizer: Fraction
    regular_orbit_count: int | None = None

    def __post_init__(self):
        if self.avg_stabilizer != Fraction(self.orbit_count * self.group_order, self.carrier_size):
            raise AssertionError("average stabilizer inconsistent with orbit count")
        if not (Fraction(self.carrier_size, self.group_order) <= self.orbit_count <= self.carrier_size):
            raise AssertionError("orbit count outside |S|/|G| <= |S/G| <= |S|")

    @property
    def delta(self) -> Fraction:
        return self.avg_stabilizer - 1

    @property
    def regular_orbit_fraction(self) -> Fraction | None:
        if self.regular_orbit_count is None:
            return None
        return Fraction(self.regular_orbit_count, self.orbit_count)

    @property
    def rigid_point_fraction(self) -> Fraction | None:
        """Share of points whose stabilizer is trivial (they lie in regular orbits)."""
        if self.regular_orbit_count is None:
            return None
        return Fraction(self.regular_orbit_count * self.group_order, self.carrier_size)


def _weights_of(K: Iterable[Permutation]) -> dict[CycleType, int]:
    weights: dict[CycleType, int] = {}
    for p in K:
        ct = cycle_type(p)
        weights[ct] = weights.get(ct, 0) + 1
    return weights


def passive_pairs_weighted(weights: Mapping[CycleType, int], m: int, kind: ActionKind) -> int:
    return sum(w * _alpha(ct, m, kind) for ct, w in weights.items())


def passive_pair_count(K: Iterable[Permutation], m: int, kind: ActionKind) -> int:
    """Number of pairs ``(sigma, x)`` with ``sigma`` in ``K`` and ``sigma(x) = x``."""
    return passive_pairs_weighted(_weights_of(K), m, kind)


def orbit_count(G: FiniteGroup, m: int, kind: ActionKind) -> OrbitSummary:
    _check_m(G.n, m, kind)
    u = passive_pairs_weighted(G.cycle_type_weights, m, kind)
    orbits, rem = divmod(u, G.order)
    if rem:
        raise AssertionError(f"Burnside sum {u} not divisible by |G|={G.order}")
    size = carrier_size(G.n, m, kind)
    return OrbitSummary(orbits, size, G.order, Fraction(u, size))


def _nonempty(K: Iterable[Permutation]) -> list[Permutation]:
    K = list(K)
    if not K:
        raise ValueError("empty set of permutations")
    return K


def minimal_degree_subset(K: Iterable[Permutation]) -> int:
    return min(cycle_type(p).support for p in _nonempty(K))


def minimal_degree_group(G: FiniteGroup) -> int:
    """Smallest support size among non-identity elements."""
    if G.order < 2:
        raise ValueError("trivial group has no minimal degree")
    return min(ct.support for ct in G.cycle_type_weights if ct.support)


@dataclass(frozen=True)
class FixedDegreePolynomial:
    """``f[k]`` counts the permutations in a set that move exactly ``k`` points."""

    n: int
    f: tuple[int, ...]

    def __post_init__(self):
        if len(self.f) != self.n + 1:
            raise ValueError("need one coefficient per support size 0..n")
        if self.n >= 1 and self.f[1]:
            raise ValueError("no permutation moves exactly one point")

    def __getitem__(self, k: int) -> int:
        return self.f[k] if 0 <= k <= self.n else 0

    @property
    def size(self) -> int:
        return sum(self.f)

    def ball(self, r: int) -> int:
        """Number of elements moving at most ``r`` points."""
        return sum(self.f[: max(r, -1) + 1])

    def min_degree_outside(self, r: int) -> int | None:
        """Smallest support size strictly above ``r``; None if the ball is everything."""
        return next((k for k in range(max(r + 1, 0), self.n + 1) if self.f[k]), None)

    def radii(self) -> list[int]:
        return [k for k, c in enumerate(self.f) if c]


def _profile(n: int, supports: Iterable[tuple[int, int]]) -> FixedDegreePolynomial:
    f = [0] * (n + 1)
    for k, w in supports:
        f[k] += w
    return FixedDegreePolynomial(n, tuple(f))


def fixed_degree_poly(K: Iterable[Permutation]) -> FixedDegreePolynomial:
    K = _nonempty(K)
    n = K[0].n
    if any(p.n != n for p in K):
        raise ValueError("permutations of different degrees")
    return _profile(n, ((cycle_type(p).support, 1) for p in K))


def sphere_profile(G: FiniteGroup) -> FixedDegreePolynomial:
    """Hamming sphere sizes around the identity: ``f[r] = |dB(r)|``."""
    return _profile(G.n, ((ct.support, w) for ct, w in G.cycle_type_weights.items()))


def regular_fraction_bounds(delta: Fraction) -> tuple[Fraction, Fraction]:
    """Lower bounds on the share of regular orbits and of points in regular orbits."""
    delta = Fraction(delta)
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    orbit_lb = (1 - delta) / (1 + delta)
    return max(orbit_lb, Fraction(0)), max(1 - delta, Fraction(0))


# -- brute-force oracle -------------------------------------------------------


def _binomial_table(top: int, width: int) -> np.ndarray:
    table = np.zeros((top + 1, width + 1), dtype=np.int64)
    for a in range(top + 1):
        for b in range(min(a, width) + 1):
            table[a, b] = math.comb(a, b)
    return table


def _colex_rank(rows: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Rank of each strictly increasing row among all combinations (colex order)."""
    rank = np.zeros(len(rows), dtype=np.int64)
    for i in range(rows.shape[1]):
        rank += table[rows[:, i], i + 1]
    return rank


def _enumerate(n: int, m: int, kind: ActionKind) -> np.ndarray:
    gen = combinations(range(n), m) if kind is ActionKind.SUBSETS else combinations_with_replacement(range(n), m)
    size = carrier_size(n, m, kind)
    flat = np.fromiter((x for c in gen for x in c), dtype=np.int64, count=size * m)
    return flat.reshape(size, m)


def brute_force_orbits(
    G: FiniteGroup, m: int, kind: ActionKind, carrier_cap: int = DEFAULT_CARRIER_CAP
) -> OrbitSummary:
    """Orbits found by listing the carrier and joining each point to its generator images.

    Multisets are sorted tuples; the group acts by mapping entries and
    re-sorting.  Both kinds are indexed by their colex rank (multisets via
    ``c_i + i``), and components of the generator graph are the orbits.
    """
    n = G.n
    size = carrier_size(n, m, kind)
    if size > carrier_cap:
        raise CarrierTooLarge(size, carrier_cap)
    if m == 0 or size == 1:
        regular = 1 if G.order == 1 else 0
        return OrbitSummary(1, size, G.order, Fraction(G.order, size), regular)

    rows = _enumerate(n, m, kind)
    shift = np.arange(m) if kind is ActionKind.MULTISETS else np.zeros(m, dtype=np.int64)
    table = _binomial_table(n + m, m)
    base = _colex_rank(rows + shift, table)
    srcs, dsts = [], []
    for g in G.generators:
        img = np.sort(np.asarray(g.image, dtype=np.int64)[rows], axis=1)
        srcs.append(base)
        dsts.append(_colex_rank(img + shift, table))
    if srcs:
        src = np.concatenate(srcs)
        dst = np.concatenate(dsts)
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size))
    count, labels = connected_components(graph, directed=True, connection="weak")
    orbit_sizes = np.bincount(labels, minlength=count)
    regular = int(np.count_nonzero(orbit_sizes == G.order))
    return OrbitSummary(int(count), size, G.order, Fraction(int(count) * G.order, size), regular)
