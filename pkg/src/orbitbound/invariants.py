"""Counts of subsets and multisets left invariant by a single permutation.

Everything here depends on the permutation only through its cycle type:
a subset is invariant iff it is a union of cycles, so

    sum_m alpha_m t^m      = prod_k (1 + t^k)^{j_k}
    sum_m alpha_(m) t^m    = prod_k (1 - t^k)^{-j_k}

Series are expanded exactly with Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .perm import CycleType


@dataclass(frozen=True)
class TruncatedIntSeries:
    """Power series with nonnegative integer coefficients, ``coeffs[m]`` at ``t^m``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("series needs at least the constant coefficient")
        if any(c < 0 for c in self.coeffs):
            raise ValueError("coefficients must be nonnegative")

    @classmethod
    def one(cls, cap: int) -> TruncatedIntSeries:
        return cls((1,) + (0,) * cap)

    @property
    def degree_cap(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m: int) -> int:
        return self.coeffs[m] if 0 <= m < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: TruncatedIntSeries) -> TruncatedIntSeries:
        cap = min(self.degree_cap, other.degree_cap)
        out = [0] * (cap + 1)
        for i, a in enumerate(self.coeffs[: cap + 1]):
            if a:
                for j, b in enumerate(other.coeffs[: cap + 1 - i]):
                    out[i + j] += a * b
        return TruncatedIntSeries(tuple(out))

    def total(self) -> int:
        return sum(self.coeffs)


def _sparse_factor(k: int, cap: int, coeff) -> TruncatedIntSeries:
    out = [0] * (cap + 1)
    for q in range(cap // k + 1):
        out[k * q] = coeff(q)
    return TruncatedIntSeries(tuple(out))


@lru_cache(maxsize=None)
def subset_gf(ct: CycleType, cap: int | None = None) -> TruncatedIntSeries:
    """Invariant m-subset counts for every ``m <= cap`` (default ``cap = n``)."""
    if cap is None:
        cap = ct.n
    if not 0 <= cap <= ct.n:
        raise ValueError(f"cap {cap} outside 0..{ct.n}")
    series = TruncatedIntSeries.one(cap)
    for k, j in ct.parts:
        series = series * _sparse_factor(k, cap, lambda q, j=j: math.comb(j, q))
    return series


@lru_cache(maxsize=None)
def multiset_gf(ct: CycleType, cap: int | None = None) -> TruncatedIntSeries:
    """Invariant m-multiset counts for every ``m <= cap`` (default ``cap = 2n``)."""
    if cap is None:
        cap = 2 * ct.n
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    series = TruncatedIntSeries.one(cap)
    for k, j in ct.parts:
        series = series * _sparse_factor(k, cap, lambda q, j=j: math.comb(j - 1 + q, q))
    return series


def alpha_m(ct: CycleType, m: int) -> int:
    """Number of m-subsets fixed by a permutation of cycle type ``ct``."""
    if not 0 <= m <= ct.n:
        raise ValueError(f"m={m} outside 0..{ct.n}")
    return subset_gf(ct)[m]


def alpha_multi(ct: CycleType, m: int) -> int:
    """Number of m-multisets fixed by a permutation of cycle type ``ct``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return multiset_gf(ct, max(m, 2 * ct.n))[m]


def total_invariant_subsets(ct: CycleType) -> int:
    return 2**ct.num_cycles


def laborde_bound(ct: CycleType) -> float:
    """log2 of Laborde's bound ``2^(n - beta/2)`` on the number of invariant subsets."""
    return ct.n - ct.support / 2


def ln_exact(x: int | Fraction) -> float:
    """Natural log of a nonnegative integer or rational; ``-inf`` at zero.

    ``math.log`` reads big integers through their bit length and leading
    mantissa, so the result is accurate to double precision at any size.
    """
    if x < 0:
        raise ValueError("logarithm of a negative number")
    if x == 0:
        return -math.inf
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)
