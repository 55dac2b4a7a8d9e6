import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitbound.invariants import (
    TruncatedIntSeries,
    alpha_m,
    alpha_multi,
    laborde_bound,
    ln_exact,
    multiset_gf,
    subset_gf,
    total_invariant_subsets,
)
from orbitbound.perm import CycleType, Permutation, class_representative, cycle_type, symmetric_class_reps

from .oracles import all_perms, invariant_multisets, invariant_subsets

IDENT4 = CycleType.from_counts({1: 4})
TRANSP3 = CycleType.from_counts({1: 1, 2: 1})
CYCLE3 = CycleType.from_counts({3: 1})


def all_cycle_types(max_n):
    for n in range(1, max_n + 1):
        for ct, _ in symmetric_class_reps(n):
            yield ct


def test_series_rejects_negative():
    with pytest.raises(ValueError):
        TruncatedIntSeries((1, -1))


def test_series_product_truncates():
    a = TruncatedIntSeries((1, 1, 0))
    assert (a * a).coeffs == (1, 2, 1)
    assert (a * TruncatedIntSeries((1, 1))).coeffs == (1, 2)


def test_subset_gf_examples():
    assert subset_gf(IDENT4, 4).coeffs == (1, 4, 6, 4, 1)
    assert subset_gf(TRANSP3, 3).coeffs == (1, 1, 1, 1)
    assert subset_gf(CYCLE3, 3).coeffs == (1, 0, 0, 1)


def test_subset_gf_cap_above_n_rejected():
    with pytest.raises(ValueError):
        subset_gf(TRANSP3, 4)


def test_multiset_gf_examples():
    assert multiset_gf(CycleType.from_counts({1: 2}), 3).coeffs == (1, 2, 3, 4)
    assert multiset_gf(TRANSP3, 2).coeffs == (1, 1, 2)
    # only the weight-one-everywhere multiset survives the 3-cycle at m=3
    assert multiset_gf(CYCLE3, 3).coeffs == (1, 0, 0, 1)


def test_multiset_default_cap():
    assert multiset_gf(TRANSP3).degree_cap == 6


def test_alpha_examples():
    assert alpha_m(CycleType.from_counts({1: 5}), 2) == 10
    assert alpha_m(TRANSP3, 2) == 1
    with pytest.raises(ValueError):
        alpha_m(TRANSP3, 4)


@pytest.mark.parametrize("j1,j2", [(0, 3), (2, 2), (5, 1), (4, 0), (1, 4)])
def test_alpha_two_for_involutions(j1, j2):
    ct = CycleType.from_counts({1: j1, 2: j2})
    assert alpha_m(ct, 2) == math.comb(j1, 2) + j2


@pytest.mark.parametrize("ct", list(all_cycle_types(10)), ids=str)
def test_subset_counts_match_enumeration(ct):
    image = class_representative(ct).image
    assert subset_gf(ct).coeffs == tuple(invariant_subsets(image, m) for m in range(ct.n + 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_subset_counts_every_permutation(n):
    for img in all_perms(n):
        ct = cycle_type(Permutation(img))
        for m in range(n + 1):
            assert alpha_m(ct, m) == invariant_subsets(img, m)


@pytest.mark.parametrize("ct", list(all_cycle_types(6)), ids=str)
def test_multiset_counts_match_enumeration(ct):
    image = class_representative(ct).image
    got = multiset_gf(ct, 8).coeffs
    assert got == tuple(invariant_multisets(image, m) for m in range(9))
    assert all(alpha_multi(ct, m) == got[m] for m in range(9))


@given(st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(n)))), st.integers(0, 8))
def test_multiset_counts_random_perms(image, m):
    assert alpha_multi(cycle_type(Permutation(tuple(image))), m) == invariant_multisets(tuple(image), m)


def test_total_invariant_examples():
    assert total_invariant_subsets(IDENT4) == 16
    assert total_invariant_subsets(TRANSP3) == 4
    assert total_invariant_subsets(CycleType.from_counts({6: 1})) == 2


@pytest.mark.parametrize("ct", list(all_cycle_types(12)), ids=str)
def test_totals_palindrome_and_laborde(ct):
    coeffs = subset_gf(ct).coeffs
    assert sum(coeffs) == total_invariant_subsets(ct) == 2**ct.num_cycles
    assert coeffs == coeffs[::-1]
    assert math.log2(total_invariant_subsets(ct)) <= laborde_bound(ct) + 1e-12


def test_laborde_examples():
    assert laborde_bound(IDENT4) == 4.0 == math.log2(16)
    assert laborde_bound(TRANSP3) == 2.0 == math.log2(4)
    assert laborde_bound(CycleType.from_counts({6: 1})) == 3.0


def test_ln_exact():
    assert ln_exact(0) == -math.inf
    assert ln_exact(1) == 0.0
    big = 10**400
    assert ln_exact(big) == pytest.approx(400 * math.log(10), rel=1e-14)
    assert ln_exact(Fraction(big + 1, big)) == pytest.approx(0.0, abs=1e-12)
    assert ln_exact(Fraction(1, 3)) == pytest.approx(-math.log(3), rel=1e-15)
    with pytest.raises(ValueError):
        ln_exact(-1)
