from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelcovers.cover import basis_forms, char_table, eigen_dim, genus, validate
from abelcovers.errors import (
    PreconditionError,
    RamifiedAtInfinityError,
    StructuralError,
    UnramifiedColumnError,
    ValidationError,
)
from abelcovers.groupmod import ambient_group, apply_automorphism, automorphism_group, vneg

from .strategies import covers


def _dims(cover):
    return {c.row: d for c, d in char_table(cover)}


def test_z2z4_dims(z2z4_cover):
    assert genus(z2z4_cover) == 13
    assert z2z4_cover.group.order == 8
    dims = _dims(z2z4_cover)
    # g1, g2, g1+g2, g1+2g2, g1+3g2, 2g2, 3g2
    rows = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (0, 2), (0, 3)]
    assert [dims[r] for r in rows] == [1, 2, 4, 3, 2, 1, 0]


def test_reference_genera(klein_cover, z4z4_cover):
    assert genus(klein_cover) == 5
    assert genus(z4z4_cover) == 33


@pytest.mark.parametrize("r,g", [(4, 1), (6, 2), (8, 3), (10, 4)])
def test_hyperelliptic_genus(r, g):
    assert genus(validate(2, [[1] * r])) == g


def test_fermat_quartic():
    # w^4 = x(x-1), branched at 0, 1, infinity with local monodromy (1, 1, 2)
    cover = validate(4, [[1, 1, 2]])
    assert genus(cover) == 1
    assert sum(d for _, d in char_table(cover)) == 1


def test_validation_errors():
    with pytest.raises(StructuralError):
        validate(1, [[1, 1, 0]])
    with pytest.raises(StructuralError):
        validate(2, [[1, 1], [1]])
    with pytest.raises(StructuralError):
        validate(2, [])
    with pytest.raises(StructuralError):
        validate(2, [["a", 1, 1]])
    with pytest.raises(PreconditionError):
        validate(2, [[1, 1]])
    with pytest.raises(UnramifiedColumnError):
        validate(2, [[1, 0, 1]])
    with pytest.raises(RamifiedAtInfinityError):
        validate(2, [[1, 1, 1]])
    assert issubclass(UnramifiedColumnError, ValidationError)


def test_entries_reduced_mod_n():
    assert validate(4, [[5, -1, 0, 0], [0, 0, 1, 3]]).rows == ((1, 3, 0, 0), (0, 0, 1, 3))


def test_basis_forms_exponents(klein_cover):
    cls = klein_cover.class_of_row((0, 1))
    forms = basis_forms(klein_cover, cls)
    assert [f.nu for f in forms] == [0, 1, 2]
    assert all(f.exponents == (-1,) * 8 for f in forms)
    assert eigen_dim(klein_cover, cls) == 3


def test_trivial_class_has_zero_dim(z4z4_cover):
    triv = z4z4_cover.class_of_row((0, 0))
    assert triv.is_trivial and eigen_dim(z4z4_cover, triv) == 0


@settings(max_examples=150, deadline=None)
@given(covers())
def test_dims_sum_to_genus(cover):
    assert sum(d for _, d in char_table(cover)) == genus(cover)


@settings(max_examples=150, deadline=None)
@given(covers())
def test_opposite_dims_sum(cover):
    # d_n + d_-n = #{j : alpha_j != 0} - 2 for nontrivial n
    for c, d in char_table(cover):
        if c.is_trivial:
            continue
        dneg = eigen_dim(cover, cover.negative(c))
        assert d + dneg == sum(1 for a in c.alpha if a) - 2


@lru_cache(maxsize=None)
def _ambient_automorphisms(N, m):
    amb = ambient_group(N, m)
    return amb, automorphism_group(amb)


@settings(max_examples=60, deadline=None)
@given(covers(max_N=6, max_m=2, max_r=8), st.randoms(use_true_random=False))
def test_genus_invariant_under_permutation_and_automorphism(cover, rnd):
    cols = list(cover.columns)
    rnd.shuffle(cols)
    amb, perms = _ambient_automorphisms(cover.N, cover.m)
    perm = perms[rnd.randrange(len(perms))]
    image = [apply_automorphism(amb, perm, c) for c in cols]
    other = validate(cover.N, [list(r) for r in zip(*image)])
    assert genus(other) == genus(cover)
    assert sorted(_dims(other).values()) == sorted(_dims(cover).values())


@settings(max_examples=60, deadline=None)
@given(covers())
def test_negated_matrix_swaps_dims(cover):
    neg = validate(cover.N, [list(vneg(r, cover.N)) for r in cover.rows])
    for c in cover.classes:
        assert eigen_dim(neg, neg.class_of_row(c.row)) == eigen_dim(cover, cover.negative(c))


@settings(max_examples=100, deadline=None)
@given(covers())
def test_eigen_dim_matches_fractional_formula(cover):
    from fractions import Fraction

    for n in cover.classes:
        alpha = n.alpha
        expected = 0 if not any(alpha) else sum(Fraction(-a % cover.N, cover.N) for a in alpha) - 1
        assert eigen_dim(cover, n) == expected
