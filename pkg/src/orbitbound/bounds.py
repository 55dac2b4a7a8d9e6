"""Closed-form upper bounds on fixed-point counts, passive pairs and the
excess ``delta = <Stab> - 1`` of the average stabilizer, all returned as
natural logarithms so that nothing overflows.

Notation: for subsets ``lam = m/n`` and ``xi = xi1(lam)``, for multisets
``eta = m/(n+m)`` and ``xi = xi2(eta)``; the entropy exponent is
``n h(lam)`` resp. ``(n+m) h(eta)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .catalog import _prime_power
from .invariants import ln_exact
from .orbits import ActionKind, FixedDegreePolynomial

DOMINANCE_TOL = 1e-9
LN3 = math.log(3)


@dataclass(frozen=True)
class BoundParams:
    n: int
    m: int
    kind: ActionKind = ActionKind.SUBSETS

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.kind is ActionKind.SUBSETS and not 0 < self.m < self.n:
            raise ValueError(f"out of theorem range: need 0 < m < n, got m={self.m}, n={self.n}")
        if self.kind is ActionKind.MULTISETS and self.m <= 0:
            raise ValueError(f"out of theorem range: need m > 0, got m={self.m}")

    @property
    def lam(self) -> Fraction:
        return Fraction(self.m, self.n)

    @property
    def eta(self) -> Fraction:
        return Fraction(self.m, self.n + self.m)

    @property
    def ln_xi(self) -> float:
        if self.kind is ActionKind.SUBSETS:
            return math.log(xi1(self.lam))
        return math.log(xi2(self.eta))

    @property
    def entropy_exponent(self) -> float:
        if self.kind is ActionKind.SUBSETS:
            return self.n * entropy(self.lam)
        return (self.n + self.m) * entropy(self.eta)

    @property
    def ln_prefactor(self) -> float:
        """``ln(3 sqrt(m(n -+ m)/n))``, the factor in front of the delta bounds."""
        other = self.n - self.m if self.kind is ActionKind.SUBSETS else self.n + self.m
        return LN3 + 0.5 * math.log(self.m * other / self.n)


def _unit_interval(p) -> float:
    p = Fraction(p) if not isinstance(p, float) else p
    if not 0 <= p <= 1:
        raise ValueError(f"{p} outside [0, 1]")
    return float(p)


def entropy(p) -> float:
    """Binary entropy in nats, with ``h(0) = h(1) = 0``."""
    p = _unit_interval(p)
    return -sum(x * math.log(x) for x in (p, 1 - p) if x > 0)


def xi1(lam) -> float:
    lam = _unit_interval(lam)
    return math.sqrt(1 - 2 * lam * (1 - lam))


def xi2(eta) -> float:
    eta = _unit_interval(eta)
    return math.sqrt((1 - eta) / (1 + eta))


def _logsumexp(terms: Sequence[float]) -> float:
    terms = [t for t in terms if t != -math.inf]
    if not terms:
        return -math.inf
    top = max(terms)
    return top + math.log(sum(math.exp(t - top) for t in terms))


def ln_poly_at(coeffs: Sequence[int], ln_x: float) -> float:
    """``ln sum_k coeffs[k] x^k`` for nonnegative integer coefficients."""
    return _logsumexp([ln_exact(c) + k * ln_x for k, c in enumerate(coeffs) if c])


def carrier_lower_bound(params: BoundParams) -> float:
    """Stirling-type lower bound on ``ln C(n, m)`` resp. ``ln C(n+m-1, m)``."""
    n, m = params.n, params.m
    if params.kind is ActionKind.SUBSETS:
        lam = float(params.lam)
        return params.entropy_exponent - 0.5 * math.log(2 * math.pi * n * lam * (1 - lam)) - 1 / 6
    eta = float(params.eta)
    return (params.entropy_exponent - 0.5 * math.log(2 * math.pi * (n + m))
            + 0.5 * math.log((1 - eta) / eta) - 1 / 6)


def thm21_bound(beta: int, params: BoundParams) -> float:
    """Bound on the invariant (multi)sets of one permutation moving ``beta`` points."""
    if not 0 <= beta <= params.n:
        raise ValueError(f"beta={beta} outside 0..{params.n}")
    return beta * params.ln_xi + params.entropy_exponent


def thm31_bound(F: FixedDegreePolynomial, params: BoundParams) -> float:
    """Passive-pair bound from the support-size distribution of the set."""
    if F.n != params.n:
        raise ValueError(f"support profile has degree {F.n}, params have n={params.n}")
    return params.entropy_exponent + ln_poly_at(F.f, params.ln_xi)


def thm32_bound(size_K: int, mu: int, params: BoundParams) -> float:
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    return ln_exact(size_K) + params.entropy_exponent + mu * params.ln_xi


def cor33_bound(size_K: int, size_B: int, mu: int, mu_star: int, params: BoundParams) -> float:
    """Passive-pair bound splitting off a small set ``B`` of low-support elements."""
    if not 0 <= size_B < size_K:
        raise ValueError("need 0 <= |B| < |K|")
    if mu_star < mu:
        raise ValueError("need mu_star >= mu")
    x = params.ln_xi
    return params.entropy_exponent + _logsumexp(
        [ln_exact(size_K - size_B) + mu_star * x, ln_exact(size_B) + mu * x])


def thm41_bound(order_G: int, mu: int, params: BoundParams) -> float:
    """Bound on ``ln delta`` from the group order and minimal degree."""
    return params.ln_prefactor + mu * params.ln_xi + ln_exact(order_G)


def _normalize_chain(order_G: int, chain: Sequence[tuple[int, int | None]]) -> list[tuple[int, int]]:
    chain = list(chain)
    if chain and chain[-1][0] == order_G:
        chain.pop()
    out = []
    for size, mu_i in chain:
        if mu_i is None:
            raise ValueError("every proper chain member needs the minimal degree of its complement")
        out.append((int(size), int(mu_i)))
    return out


def thm43_bound(
    order_G: int,
    chain: Sequence[tuple[int, int | None]],
    mu: int,
    params: BoundParams,
    *,
    sizes_are_upper_bounds: bool = False,
) -> float:
    """Bound on ``ln delta`` from a nested chain ``B_1 < ... < B_p = G``.

    ``chain`` lists ``(|B_i|, mu_i)`` for the proper members, ``mu_i`` being
    (a lower bound for) the minimal support outside ``B_i``; a trailing entry
    of size ``order_G`` is accepted and ignored.  An empty chain gives the
    single-degree bound.

    With ``sizes_are_upper_bounds`` the sum is rearranged as
    ``|B_1|(xi^mu - xi^mu_1) + sum |B_i|(xi^mu_{i-1} - xi^mu_i) + |G| xi^mu_{p-1}``,
    which is monotone in every ``|B_i|`` and so stays valid when only upper
    bounds on the ball sizes are known.
    """
    links = _normalize_chain(order_G, chain)
    degrees = [mu] + [m_i for _, m_i in links]
    if any(a > b for a, b in zip(degrees, degrees[1:])):
        raise ValueError("complement minimal degrees must be nondecreasing and >= mu")
    sizes = [s for s, _ in links] + [order_G]
    if any(s < 0 or s > order_G for s in sizes):
        raise ValueError("chain sizes must lie in 0..|G|")
    x = params.ln_xi
    if not sizes_are_upper_bounds:
        if any(a > b for a, b in zip(sizes, sizes[1:])):
            raise ValueError("chain sizes must be nondecreasing")
        terms = [ln_exact(sizes[0]) + mu * x]
        terms += [ln_exact(sizes[i + 1] - sizes[i]) + links[i][1] * x for i in range(len(links))]
    else:
        terms = []
        for i, size in enumerate(sizes):
            hi = degrees[i]
            if i + 1 < len(degrees):
                gap = degrees[i + 1] - hi
                if gap == 0:
                    continue
                terms.append(ln_exact(size) + hi * x + math.log1p(-math.exp(gap * x)))
            else:
                terms.append(ln_exact(size) + hi * x)
    return params.ln_prefactor + _logsumexp(terms)


def ball_chain(
    profile: FixedDegreePolynomial, radii: Sequence[int], *, drop_identity: bool = False
) -> tuple[int, list[tuple[int, int]]]:
    """``(order, chain)`` for Hamming balls ``B(r)`` of the given radii.

    With ``drop_identity`` the identity is removed from every member and
    from the group, which is the set actually summed over for ``delta``.
    """
    shift = 1 if drop_identity else 0
    order = profile.size - shift
    chain = []
    for r in sorted(set(radii)):
        nxt = profile.min_degree_outside(r)
        if nxt is None:
            break
        chain.append((profile.ball(r) - shift, nxt))
    return order, chain


def sphere_chain(profile: FixedDegreePolynomial, *, drop_identity: bool = True):
    """Chain through every nonempty sphere; with the identity dropped its
    bound coincides with :func:`cor44_bound`."""
    return ball_chain(profile, profile.radii(), drop_identity=drop_identity)


def cor44_bound(profile: FixedDegreePolynomial, params: BoundParams) -> float:
    """Bound on ``ln delta`` from the full Hamming sphere profile; ``-inf`` for the trivial group."""
    if profile.n != params.n:
        raise ValueError(f"profile has degree {profile.n}, params have n={params.n}")
    return params.ln_prefactor + ln_poly_at((0,) + profile.f[1:], params.ln_xi)


def prop42_check(c: float, n: int, m: int, eps: float, kind: ActionKind) -> bool | None:
    """Is ``sqrt(m(n -+ m)/n) * xi^(sqrt(n)/2) < eps``?  ``None`` when (m, n) is
    outside the region where the comparison is claimed to hold eventually."""
    threshold = c * math.sqrt(n) * math.log(n) if n > 1 else math.inf
    if kind is ActionKind.SUBSETS:
        if not min(m, n - m) > threshold:
            return None
    elif not (m > threshold and n > 16):
        return None
    params = BoundParams(n, m, kind)
    lhs = params.ln_prefactor - LN3 + math.sqrt(n) / 2 * params.ln_xi
    return lhs < math.log(eps)


def affine_group_order_bound_ln(d: int, q: int) -> float:
    """``ln q^(d^2 + d)``, an overestimate of ``ln |AGL(d, q)|``."""
    return (d * d + d) * math.log(q)


def thm51_bound(d: int, q: int, m: int, kind: ActionKind, order: int | None = None) -> float:
    """Bound on ``ln delta`` for AGL(d, q) (or any subgroup) acting on F_q^d.

    The group order enters as ``q^(d^2 + d)`` unless ``order`` is given.
    """
    if d < 1 or _prime_power(q) is None:
        raise ValueError(f"invalid (d, q) = ({d}, {q})")
    n = q**d
    params = BoundParams(n, m, kind)
    ln_order = affine_group_order_bound_ln(d, q) if order is None else ln_exact(order)
    return params.ln_prefactor + n * (1 - 1 / q) * params.ln_xi + ln_order


def ball_size_bound(n: int, r: int) -> float:
    """``ln min(C(n, r) r!, n^r)``, bounding the number of permutations moving at most r points."""
    if not 0 <= r <= n:
        raise ValueError(f"r={r} outside 0..{n}")
    return min(ln_exact(math.comb(n, r) * math.factorial(r)), r * math.log(n) if r else 0.0)


def pair_action_mu_bound(n: int, r: int) -> Fraction:
    """``r(2n - r - 2)/2``; every sigma moving more than r vertices moves more than this many pairs."""
    if not 1 <= r <= n - 1:
        raise ValueError(f"r={r} outside 1..{n - 1}")
    return Fraction(r * (2 * n - r - 2), 2)


def pair_action_mu_lower(n: int, r: int) -> int:
    """Valid lower bound on the pair support of any sigma moving more than r vertices.

    Each such sigma moves at least ``beta(2n - beta - 2)/2`` pairs, beta being
    its vertex support.  That function of beta peaks at ``n - 1`` and falls
    again at ``beta = n``, so the minimum is taken over all of ``r+1..n``
    rather than read off at ``r``; it differs from
    :func:`pair_action_mu_bound` only for ``r >= n - 2``.
    """
    if not 1 <= r <= n - 1:
        raise ValueError(f"r={r} outside 1..{n - 1}")
    return min(-(-(b * (2 * n - b - 2)) // 2) for b in range(r + 1, n + 1))


def pair_action_chain(n: int, radii: Sequence[int]) -> list[tuple[int, int]]:
    """Chain ``(|B(r)| upper bound, minimal pair-support lower bound)`` for S_n on pairs."""
    chain = []
    cap = math.factorial(n)
    for r in radii:
        size = min(math.comb(n, r) * math.factorial(r), n**r, cap)
        chain.append((size, pair_action_mu_lower(n, r)))
    return chain


@dataclass(frozen=True)
class ChainResult:
    kappa: Fraction
    n: int
    radii: tuple[int, ...]
    stalled: bool

    @property
    def length_over_ln_n(self) -> float:
        """Empirical constant C in ``len(radii) <= C ln n``."""
        return len(self.radii) / math.log(self.n)


def thm53_next_radius(kappa: Fraction, n: int, prev: int) -> int:
    """Largest integer r with ``r + 1/2 < kappa * prev * (2 - prev/n)``."""
    target = Fraction(kappa) * prev * (2 - Fraction(prev, n)) - Fraction(1, 2)
    return math.ceil(target) - 1


def thm53_chain(kappa, n: int) -> ChainResult:
    """Radii ``2 = r_1 < r_2 < ... < n`` for the graph-counting ball chain.

    A chain that fails to grow (``r_2 < 3``, or any later non-increase) is
    reported with ``stalled=True`` rather than raised.
    """
    kappa = Fraction(str(kappa)) if isinstance(kappa, float) else Fraction(kappa)
    if kappa <= 1:
        raise ValueError("kappa must exceed 1")
    if n < 3:
        raise ValueError("n must be at least 3")
    radii = [2]
    while True:
        r = thm53_next_radius(kappa, n, radii[-1])
        if r >= n:
            return ChainResult(kappa, n, tuple(radii), False)
        if r <= radii[-1] or (len(radii) == 1 and r < 3):
            return ChainResult(kappa, n, tuple(radii), True)
        radii.append(r)


class GroupClass(enum.Enum):
    UNIPRIMITIVE = "uniprimitive"
    TWO_TRANSITIVE = "2-transitive"


def babai_bochert_pyber(n: int, group_class: GroupClass) -> tuple[float, float]:
    """Classical ``(minimal degree lower bound, ln |G| upper bound)`` for the class.

    Uniprimitive: Babai.  2-transitive (not Alt or Sym): Bochert and Pyber.
    The class is taken on trust.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    ln_n = math.log(n)
    if group_class is GroupClass.UNIPRIMITIVE:
        return math.sqrt(n) / 2, 4 * math.sqrt(n) * ln_n**2
    return n / 3 - 2 / 3 * math.sqrt(n), 72 * ln_n**3


@dataclass(frozen=True)
class Thm54Quantities:
    regular_orbit_size_lb_ln: float
    stab_minus_one_ub_ln: float
    in_window: bool | None


def thm54_quantities(n: int, m: int, kind: ActionKind, delta: float, eps: float | None = None) -> Thm54Quantities:
    """Finite-n values of the large-orbit exponent and the 2-transitive delta bound.

    The orbit-size exponent plugs Babai's order bound in for ``ln |G|``.
    ``in_window`` reports whether m lies in the eps-window of the limit
    statement (``None`` when ``eps`` is not given).
    """
    if not 0 < delta < 1 / 8:
        raise ValueError("delta must lie in (0, 1/8)")
    params = BoundParams(n, m, kind)
    ln_xi = params.ln_xi
    ln_order = babai_bochert_pyber(n, GroupClass.UNIPRIMITIVE)[1]
    A = (1 / 8 - delta) * abs(ln_xi)
    orbit_ln = A * ln_order / math.log(ln_order) ** 2
    stab_ln = (n / 3 - (2 / 3 + delta) * math.sqrt(n)) * ln_xi
    window = None
    if eps is not None:
        if kind is ActionKind.SUBSETS:
            window = n * eps < m < n * (1 - eps)
        else:
            window = n * eps / (1 - eps) < m < n * (1 - eps) / eps
    return Thm54Quantities(orbit_ln, stab_ln, window)


@dataclass
class BoundReport:
    """An exact quantity (as a log) next to the bounds claimed for it.

    ``bounds`` are upper bounds; ``lower_bounds`` are claimed to lie below
    the exact value.  Slack is always oriented so that negative means broken.
    """

    quantity: str
    exact_ln: float | None
    bounds: dict[str, float] = field(default_factory=dict)
    lower_bounds: dict[str, float] = field(default_factory=dict)

    @property
    def slack(self) -> dict[str, float]:
        if self.exact_ln is None:
            return {}
        out = {name: (math.inf if self.exact_ln == -math.inf else b - self.exact_ln)
               for name, b in self.bounds.items()}
        out.update({name: self.exact_ln - b for name, b in self.lower_bounds.items()})
        return out

    def violations(self, tol: float = DOMINANCE_TOL) -> list[str]:
        return [name for name, s in self.slack.items() if s < -tol]
