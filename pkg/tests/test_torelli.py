import pytest
from hypothesis import given, settings

from abelcovers.cover import char_table, genus, validate
from abelcovers.errors import PreconditionError, UnsupportedInputError
from abelcovers.torelli import (
    Status,
    WitnessCase,
    bound_report,
    classify_torelli,
    condition_star,
    find_witnesses,
    sym2_invariant_dim,
    torelli_witness,
)

from .strategies import covers


def test_z2z4_classification(z2z4_cover):
    cls = classify_torelli(z2z4_cover)
    assert cls.status is Status.NOT_TOTALLY_GEODESIC
    assert (cls.sym2_dim, cls.quadratic_dim) == (16, 5)
    assert not cls.star
    ws = find_witnesses(char_table(z2z4_cover))
    ones = [w for w in ws if w.case is WitnessCase.ONE]
    twos = [w for w in ws if w.case is WitnessCase.TWO]
    assert [(w.cls.row, w.paired.row, w.dim, w.paired_dim) for w in ones] == [((1, 1), (1, 3), 4, 2)]
    assert [(w.cls.row, w.dim) for w in twos] == [((1, 2), 3)]
    assert cls.witness == ones[0]


def test_genus_two_family_satisfies_star():
    cover = validate(2, [[1] * 6])
    assert genus(cover) == 2
    cls = classify_torelli(cover)
    assert cls.status is Status.SHIMURA_CANDIDATE
    assert (cls.sym2_dim, cls.quadratic_dim) == (3, 3)
    assert condition_star(cover)


def test_hyperelliptic_genus_four_has_case_two_witness():
    cover = validate(2, [[1] * 10])
    w = torelli_witness(cover)
    assert w.case is WitnessCase.TWO and w.dim == 4
    assert classify_torelli(cover).status is Status.NOT_TOTALLY_GEODESIC


def test_undetermined_family():
    # counts (4, 2, 2) over the nonzero elements (0,1), (1,0), (1,1) of (Z/2)^2
    cover = validate(2, [[0, 0, 0, 0, 1, 1, 1, 1], [1, 1, 1, 1, 0, 0, 1, 1]])
    assert genus(cover) == 5
    cls = classify_torelli(cover)
    assert cls.status is Status.UNDETERMINED
    assert cls.witness is None
    assert (cls.sym2_dim, cls.quadratic_dim) == (7, 5)


def test_witness_needs_genus_four():
    with pytest.raises(UnsupportedInputError):
        torelli_witness(validate(2, [[1] * 8]))
    with pytest.raises(UnsupportedInputError):
        classify_torelli(validate(2, [[1] * 4]))


def test_low_genus_never_reports_a_witness():
    cls = classify_torelli(validate(2, [[1] * 8]))  # genus 3
    assert cls.witness is None


def test_bound_tables():
    z2 = bound_report(2, 3)
    assert (z2.source, z2.r_max, z2.g_max) == ("Z2", 18, 29)
    assert (z2.m_max, z2.r_max_global, z2.g_max_global) == (6, 36, 513)
    assert bound_report(2, 6).g_max == 513
    gen = bound_report(4, 2)
    assert (gen.source, gen.r_max, gen.g_max) == ("general", 16, 16 * 5 + 1)
    assert bound_report(4, 2, d=8).g_max == 1 + 8 * 5
    zp = bound_report(3, 2, p=3)
    assert (zp.r_max, zp.g_max) == (12, 1 + 9 * 3)
    assert (zp.m_max, zp.r_max_global, zp.g_max_global) == (6, 36, 1 + 3**6 * 11)
    with pytest.raises(PreconditionError):
        bound_report(4, 2, p=4)


@settings(max_examples=150, deadline=None)
@given(covers())
def test_witness_and_star_are_exclusive(cover):
    if genus(cover) < 2:
        return
    cls = classify_torelli(cover)
    if cls.witness is not None:
        assert not cls.star
        assert cls.status is Status.NOT_TOTALLY_GEODESIC


@settings(max_examples=60, deadline=None)
@given(covers(max_r=10))
def test_sym2_dim_matches_direct_count(cover):
    # count unordered pairs of basis forms whose characters cancel
    table = char_table(cover)
    forms = [(c.alpha, k) for c, d in table for k in range(d)]
    count = 0
    for i, (a, _) in enumerate(forms):
        for b, _ in forms[i:]:
            if all((x + y) % cover.N == 0 for x, y in zip(a, b)):
                count += 1
    assert sym2_invariant_dim(table) == count
