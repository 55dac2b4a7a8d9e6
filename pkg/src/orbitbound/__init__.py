"""Exact orbit counting and stabilizer bounds for permutation groups acting
on m-subsets and m-multisets."""

from .perm import (
    CycleType,
    FiniteGroup,
    GroupTooLarge,
    Permutation,
    compose,
    cycle_type,
    generate_group,
    hamming_distance,
    inverse,
    support_size,
    symmetric_class_reps,
)
from .invariants import (
    TruncatedIntSeries,
    alpha_m,
    alpha_multi,
    laborde_bound,
    multiset_gf,
    subset_gf,
    total_invariant_subsets,
)
from .orbits import (
    ActionKind,
    CarrierTooLarge,
    FixedDegreePolynomial,
    OrbitSummary,
    brute_force_orbits,
    fixed_degree_poly,
    minimal_degree_group,
    minimal_degree_subset,
    orbit_count,
    passive_pair_count,
    regular_fraction_bounds,
    sphere_profile,
)
from .catalog import (
    induced_on_ksubsets,
    make_AGL,
    make_GL,
    make_alternating,
    make_cyclic,
    make_dihedral,
    make_induced_symmetric,
    make_symmetric,
    parse_group_spec,
)

SUBSETS = ActionKind.SUBSETS
MULTISETS = ActionKind.MULTISETS

__version__ = "0.1.0"
