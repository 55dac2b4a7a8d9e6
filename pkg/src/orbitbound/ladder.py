"""Every bound for one group and one size m, next to the exact value it bounds.

A :class:`LadderRow` carries three kinds of check:

* dominance: each bound lies above the exact quantity (``BoundReport.violations``);
* ordering: the finer bounds sit below the coarser ones
  (spheres <= chain <= group order, support profile <= minimal degree, ...);
* the carrier lower bound lies below the exact carrier size.

Bound names used in reports::

    per_element        invariant (multi)sets of the worst-case single element
    halved_support     total invariant subsets <= 2^(n - beta/2), per element
    support_profile    passive pairs from the support-size distribution
    min_degree         passive pairs from |K| and the minimal degree
    split              passive pairs after splitting off the lowest sphere
    group_order        delta from |G| and the minimal degree
    chain              delta from a chain of Hamming balls
    spheres            delta from the full sphere profile
    pair_chain         delta for S_n on pairs from the ball-size/degree estimates
    affine             delta for subgroups of AGL(d, q), order as q^(d^2+d)
    affine_exact_order the same with the actual group order
    stirling           lower bound on the carrier size
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .bounds import (
    DOMINANCE_TOL,
    BoundParams,
    BoundReport,
    ball_chain,
    carrier_lower_bound,
    cor33_bound,
    cor44_bound,
    pair_action_chain,
    thm21_bound,
    thm31_bound,
    thm32_bound,
    thm41_bound,
    thm43_bound,
    thm51_bound,
    thm53_chain,
)
from .invariants import ln_exact, total_invariant_subsets
from .orbits import (
    ActionKind,
    FixedDegreePolynomial,
    OrbitSummary,
    _alpha,
    minimal_degree_group,
    orbit_count,
    sphere_profile,
)
from .perm import FiniteGroup

# (coarser, finer) pairs within one report: finer must not exceed coarser
ORDERINGS = {
    "passive_pairs": [("min_degree", "support_profile"), ("min_degree", "split")],
    "delta": [("group_order", "chain"), ("chain", "spheres"), ("group_order", "spheres"),
              ("affine", "affine_exact_order")],
}


@dataclass
class LadderRow:
    m: int
    kind: ActionKind
    summary: OrbitSummary
    reports: dict[str, BoundReport] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    def dominance_violations(self, tol: float = DOMINANCE_TOL) -> list[str]:
        return [f"{q}:{name}" for q, rep in self.reports.items() for name in rep.violations(tol)]

    def ordering_violations(self, tol: float = DOMINANCE_TOL) -> list[str]:
        out = []
        for q, pairs in ORDERINGS.items():
            rep = self.reports.get(q)
            if rep is None:
                continue
            for coarse, fine in pairs:
                if coarse in rep.bounds and fine in rep.bounds and rep.bounds[fine] > rep.bounds[coarse] + tol:
                    out.append(f"{q}:{fine}>{coarse}")
        return out

    def violations(self, tol: float = DOMINANCE_TOL) -> list[str]:
        return self.dominance_violations(tol) + self.ordering_violations(tol)


def _worst_element_report(G: FiniteGroup, m: int, kind: ActionKind, params: BoundParams) -> BoundReport:
    worst = None
    for ct in G.cycle_type_weights:
        exact = ln_exact(_alpha(ct, m, kind))
        bound = thm21_bound(ct.support, params)
        slack = math.inf if exact == -math.inf else bound - exact
        if worst is None or slack < worst[0]:
            worst = (slack, exact, bound, ct)
    _, exact, bound, ct = worst
    return BoundReport(f"fixed_points[{ct}]", exact, {"per_element": bound})


def _halved_support_report(G: FiniteGroup) -> BoundReport:
    ln2 = math.log(2)
    worst = min(G.cycle_type_weights,
                key=lambda ct: (G.n - ct.support / 2) - ct.num_cycles)
    return BoundReport(f"invariant_subsets[{worst}]", ln_exact(total_invariant_subsets(worst)),
                       {"halved_support": (G.n - worst.support / 2) * ln2})


def pair_chain_bound(base_n: int, order_G: int, mu: int, params: BoundParams, kappa=2) -> tuple[float, tuple[int, ...]]:
    """Chain bound for S_n on pairs, using only the size and degree estimates,
    with radii from :func:`thm53_chain` (truncated to ``r <= n - 1``)."""
    radii = tuple(r for r in thm53_chain(kappa, base_n).radii if r <= base_n - 1)
    chain = pair_action_chain(base_n, radii)
    return thm43_bound(order_G, chain, mu, params, sizes_are_upper_bounds=True), radii


def bound_ladder(
    G: FiniteGroup,
    m: int,
    kind: ActionKind,
    *,
    chain_radii: Sequence[int] | None = None,
    affine: tuple[int, int] | None = None,
    pair_base: int | None = None,
    summary: OrbitSummary | None = None,
) -> LadderRow:
    """Evaluate all applicable bounds at (G, m, kind).

    ``chain_radii`` picks the Hamming balls for the chain bound (default: the
    single ball of radius mu).  ``affine=(d, q)`` adds the affine-group bounds
    and must only be passed for subgroups of AGL(d, q) acting on F_q^d.
    ``pair_base=n`` adds the pair-action chain bound and must only be passed
    for S_n acting on 2-subsets.

    Raises ``ValueError`` when m is outside the range where the bounds are stated.
    """
    params = BoundParams(G.n, m, kind)
    summary = summary or orbit_count(G, m, kind)
    row = LadderRow(m, kind, summary)
    ln_carrier = ln_exact(summary.carrier_size)
    row.reports["carrier"] = BoundReport("carrier", ln_carrier, lower_bounds={"stirling": carrier_lower_bound(params)})
    row.reports["per_element"] = _worst_element_report(G, m, kind, params)
    row.reports["halved_support"] = _halved_support_report(G)

    profile = sphere_profile(G)
    if G.order == 1:
        row.reports["delta"] = BoundReport("delta", ln_exact(summary.delta), {"spheres": cor44_bound(profile, params)})
        row.notes["mu"] = "undefined for the trivial group"
        return row

    mu = minimal_degree_group(G)
    # passive pairs of the non-identity elements
    u_moving = summary.avg_stabilizer * summary.carrier_size - summary.carrier_size
    moving = FixedDegreePolynomial(G.n, (0,) + profile.f[1:])
    pp = BoundReport("passive_pairs", ln_exact(int(u_moving)), {
        "support_profile": thm31_bound(moving, params),
        "min_degree": thm32_bound(G.order - 1, mu, params),
    })
    mu_star = profile.min_degree_outside(mu)
    if mu_star is not None:
        pp.bounds["split"] = cor33_bound(G.order - 1, profile[mu], mu, mu_star, params)
    row.reports["passive_pairs"] = pp

    order, chain = ball_chain(profile, chain_radii if chain_radii is not None else [mu])
    delta = BoundReport("delta", ln_exact(summary.delta), {
        "group_order": thm41_bound(G.order, mu, params),
        "chain": thm43_bound(order, chain, mu, params),
        "spheres": cor44_bound(profile, params),
    })
    if affine is not None:
        d, q = affine
        delta.bounds["affine"] = thm51_bound(d, q, m, kind)
        delta.bounds["affine_exact_order"] = thm51_bound(d, q, m, kind, order=G.order)
    if pair_base is not None and pair_base >= 3:
        value, radii = pair_chain_bound(pair_base, G.order, mu, params)
        delta.bounds["pair_chain"] = value
        row.notes["pair_chain_radii"] = ",".join(map(str, radii))
    row.reports["delta"] = delta
    return row
