import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelcovers.errors import AutomorphismCapExceeded
from abelcovers.groupmod import (
    ambient_group,
    apply_automorphism,
    automorphism_group,
    element_order,
    involutions,
    minimal_generators,
    modvec,
    subgroup_closure,
    vadd,
    vneg,
    vscale,
)


def test_vector_arithmetic():
    assert modvec([5, -1], 4) == (1, 3)
    assert vadd((1, 3), (3, 3), 4) == (0, 2)
    assert vneg((1, 0, 2), 4) == (3, 0, 2)
    assert vscale(3, (1, 2), 4) == (3, 2)
    assert element_order((0, 0), 4) == 1
    assert element_order((2, 0), 4) == 2
    assert element_order((1, 2), 4) == 4
    assert element_order((2, 3), 6) == 6


def test_involutions_of_z4_squared():
    assert involutions(ambient_group(4, 2)) == [(0, 2), (2, 0), (2, 2)]


def test_odd_modulus_has_no_involution():
    assert involutions(ambient_group(3, 2)) == []


@pytest.mark.parametrize("N,m,count", [(2, 1, 1), (2, 2, 6), (4, 1, 2), (3, 1, 2), (5, 1, 4), (3, 2, 48),
                                       (2, 3, 168), (4, 2, 96)])
def test_automorphism_counts_match_gl(N, m, count):
    # |GL_m(Z/N)| for the listed cases
    perms = automorphism_group(ambient_group(N, m))
    assert len(perms) == count
    assert perms[0] == tuple(range(N**m))


def test_automorphisms_are_homomorphisms():
    g = ambient_group(4, 2)
    for perm in automorphism_group(g):
        for u, v in itertools.product(g.elements, repeat=2):
            lhs = apply_automorphism(g, perm, vadd(u, v, 4))
            rhs = vadd(apply_automorphism(g, perm, u), apply_automorphism(g, perm, v), 4)
            assert lhs == rhs


def test_automorphism_cap():
    with pytest.raises(AutomorphismCapExceeded):
        automorphism_group(ambient_group(2, 3), cap=4)
    with pytest.raises(AutomorphismCapExceeded):
        automorphism_group(ambient_group(2, 3), max_count=10)


def test_subgroup_closure_of_z2z4_columns():
    g = subgroup_closure([(2, 0), (0, 1)], 4)
    assert g.order == 8
    assert (2, 3) in g.elements and (1, 0) not in g.elements
    assert not g.is_full
    assert subgroup_closure([(1, 0), (0, 1)], 4).is_full


def test_minimal_generators_span():
    g = subgroup_closure([(2, 0), (0, 1)], 4)
    gens = minimal_generators(g)
    assert subgroup_closure(gens, 4).order == g.order


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), min_size=1, max_size=4))
def test_closure_is_a_subgroup_whose_order_divides(N, cols):
    g = subgroup_closure([modvec(c, N) for c in cols], N)
    assert (N * N) % g.order == 0
    for u in g.elements:
        assert vneg(u, N) in g.elements
        for v in g.elements:
            assert vadd(u, v, N) in g.elements
