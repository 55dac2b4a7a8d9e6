import math

import pytest

from orbitbound.catalog import (
    FieldSpec,
    LabeledDomain,
    agl_order,
    field,
    gl_order,
    induced_on_ksubsets,
    induced_permutation,
    ksubset_domain,
    make_AGL,
    make_GL,
    make_alternating,
    make_cyclic,
    make_dihedral,
    make_induced_symmetric,
    make_symmetric,
    parse_group_spec,
    vector_domain,
)
from orbitbound.orbits import minimal_degree_group
from orbitbound.perm import GroupTooLarge, Permutation, cycle_type

from .oracles import all_perms


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_fields_construct(q):
    F = field(q)
    assert F.p ** F.e == q
    seen, x = set(), 1
    for _ in range(q - 1):
        seen.add(x)
        x = F.mul[x][F.primitive]
    assert seen == set(range(1, q))


@pytest.mark.parametrize("q", [1, 6, 10, 12, 25, 32])
def test_unsupported_fields(q):
    with pytest.raises(ValueError):
        FieldSpec(q)


def test_gf4_multiplication():
    F = field(4)
    # x * x = x + 1 modulo x^2 + x + 1; encoded 2 * 2 = 3
    assert F.mul[2][2] == 3
    assert F.add[2][3] == 1


def test_vector_order_least_significant_first():
    assert vector_domain(2, 3).labels[:4] == ("(0,0)", "(1,0)", "(2,0)", "(0,1)")


def test_labeled_domain():
    D = ksubset_domain(4, 2)
    assert D.size == 6
    assert D.labels[0] == "{0,1}"
    assert D.index("{2,3}") == 5
    with pytest.raises(ValueError):
        LabeledDomain(("a", "a"))


def test_basic_orders():
    assert make_symmetric(4).order == 24
    assert make_alternating(4).order == 12
    assert make_dihedral(5).order == 10
    assert make_cyclic(7).order == 7
    for n in range(1, 7):
        assert make_symmetric(n).order == len(make_symmetric(n).elements) == math.factorial(n)
        assert make_alternating(n).order == len(make_alternating(n).elements) == max(math.factorial(n) // 2, 1)


def test_class_weights_match_materialized():
    for G in (make_symmetric(5), make_alternating(5)):
        counted = {}
        for g in G.elements:
            ct = cycle_type(g)
            counted[ct] = counted.get(ct, 0) + 1
        assert counted == G.cycle_type_weights


def test_gl_agl_orders():
    assert gl_order(2, 2) == 6 and make_GL(2, 2).order == 6
    assert agl_order(2, 2) == 24 and make_AGL(2, 2).order == 24
    assert agl_order(2, 3) == 9 * 8 * 6 == 432
    assert make_AGL(2, 3).order == 432


@pytest.mark.parametrize("d,q", [(1, 2), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2), (1, 16), (2, 5)])
def test_agl_closure_matches_formula(d, q):
    assert make_AGL(d, q).order == agl_order(d, q)
    assert make_GL(d, q).order == gl_order(d, q)


@pytest.mark.parametrize("d,q", [(2, 2), (2, 3), (3, 2)])
def test_agl_minimal_degree(d, q):
    assert minimal_degree_group(make_AGL(d, q)) == q**d - q ** (d - 1)


def test_induced_examples():
    G = make_induced_symmetric(4, 2)
    assert (G.n, G.order) == (6, 24)
    assert induced_permutation(Permutation.identity(5), 2).is_identity()
    assert induced_permutation(Permutation.identity(5), 3) == Permutation.identity(10)


@pytest.mark.parametrize("n", range(4, 8))
def test_pair_action_minimal_degree(n):
    assert minimal_degree_group(make_induced_symmetric(n, 2)) == 2 * n - 4


def test_induced_from_materialized_base():
    base = make_dihedral(6)
    G = induced_on_ksubsets(base, 3)
    assert (G.n, G.order) == (20, 12)
    assert len(set(G.elements)) == 12


def test_induced_range_checked():
    with pytest.raises(ValueError):
        induced_on_ksubsets(make_symmetric(4), 4)
    with pytest.raises(ValueError):
        induced_on_ksubsets(make_symmetric(4), 1)


@pytest.mark.parametrize("n", range(3, 9))
def test_induced_fixed_points_all_elements(n):
    from orbitbound.invariants import alpha_m

    for ell in range(2, min(n, 4)):
        for img in all_perms(n) if n <= 6 else all_perms(n)[::97]:
            sigma = Permutation(img)
            ct = cycle_type(sigma)
            fixed = cycle_type(induced_permutation(sigma, ell)).fixed_points
            assert fixed == alpha_m(ct, ell)
            if ell == 2:
                assert fixed == math.comb(ct.fixed_points, 2) + ct.j(2)


def test_domain_cap():
    with pytest.raises(GroupTooLarge):
        make_AGL(4, 16, cap=1000)


@pytest.mark.parametrize("text,order,n", [
    ("S:5", 120, 5), ("A:5", 60, 5), ("C:8", 8, 8), ("D:6", 12, 6), ("S:5^2", 120, 10),
    ("S:5^3", 120, 10), ("GL:2,3", 48, 9), ("AGL:2,2", 24, 4), ("gens:(0 1);(0 1 2 3)", 24, 4),
    ("gens@6:(0 1 2)", 3, 6), (" AGL: 2, 3 ", 432, 9),
])
def test_group_spec_parsing(text, order, n):
    G = parse_group_spec(text).build()
    assert (G.order, G.n) == (order, n)


def test_group_spec_affine_flag():
    assert parse_group_spec("AGL:2,3").affine == (2, 3)
    assert parse_group_spec("GL:2,2").affine == (2, 2)
    assert parse_group_spec("S:4").affine is None


@pytest.mark.parametrize("bad", ["X:3", "S:", "A:4^2", "GL:2", "gens@2:(0 1 2)", "S:4,2"])
def test_group_spec_errors(bad):
    with pytest.raises(ValueError):
        parse_group_spec(bad)
