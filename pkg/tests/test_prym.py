import pytest
from hypothesis import given, settings

from abelcovers.cover import genus, validate
from abelcovers.errors import PreconditionError, UnsupportedInputError
from abelcovers.exactalg import RankOracle
from abelcovers.groupmod import involutions
from abelcovers.prym import (
    Evidence,
    branch_count,
    classify_prym,
    minus_dims,
    normalize_sigma,
    prym_bound_report,
    prym_spec,
    prym_witness,
    quotient_genus,
)
from abelcovers.torelli import Status, WitnessCase, sym2_invariant_dim

from .strategies import covers


def test_klein_data(klein_cover):
    spec = prym_spec(klein_cover, (1, 1))
    assert (spec.cover_genus, spec.b, spec.g, spec.prym_dim) == (5, 8, 1, 4)
    md = {c.row: d for c, d in minus_dims(klein_cover, (1, 1))}
    assert (md[(1, 0)], md[(0, 1)]) == (1, 3)
    assert md[(1, 1)] == 0
    assert sym2_invariant_dim(minus_dims(klein_cover, (1, 1))) == 7
    w = prym_witness(klein_cover, (1, 1))
    assert w.case is WitnessCase.TWO and w.cls.row == (0, 1)


def test_z4z4_data(z4z4_cover):
    spec = prym_spec(z4z4_cover, (2, 2))
    assert (spec.cover_genus, spec.b, spec.g) == (33, 0, 17)
    md = {c.row: d for c, d in minus_dims(z4z4_cover, (2, 2))}
    assert md[(1, 0)] == 2 and md[(0, 1)] == 2
    assert md[(3, 0)] == 0
    assert md[(1, 2)] == 4 and md[(3, 2)] == 2
    assert md[(2, 1)] == 4 and md[(2, 3)] == 2
    assert sym2_invariant_dim(minus_dims(z4z4_cover, (2, 2))) == 16
    w = prym_witness(z4z4_cover, (2, 2))
    assert w.case is WitnessCase.ONE


def test_sigma_preconditions(z4z4_cover):
    with pytest.raises(PreconditionError):
        prym_spec(z4z4_cover, (1, 1))
    with pytest.raises(PreconditionError):
        prym_spec(z4z4_cover, (2,))
    z2z4 = validate(4, [[2, 2, 2, 2, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1, 1]])
    with pytest.raises(PreconditionError):
        prym_spec(z2z4, (0, 0))
    # (2, 2) has order two but is a valid element; (1, 0) is not in G
    assert prym_spec(z2z4, (2, 2)).cover_genus == 13


def test_witness_needs_genus_four():
    with pytest.raises(UnsupportedInputError):
        prym_witness(validate(2, [[1] * 8]), (1,))


def test_quotient_genus_rejects_inconsistent_data():
    with pytest.raises(AssertionError):
        quotient_genus(5, 3)


def test_classification_evidence(klein_cover, z4z4_cover):
    c1 = classify_prym(klein_cover, (1, 1))
    assert c1.evidence is Evidence.B_AT_LEAST_6
    assert c1.status is Status.NOT_TOTALLY_GEODESIC
    c2 = classify_prym(z4z4_cover, (2, 2))
    assert c2.evidence is Evidence.UNVERIFIED and c2.status is Status.UNDETERMINED
    c2 = classify_prym(z4z4_cover, (2, 2), RankOracle())
    assert c2.evidence is Evidence.EXACT_RANK_CERTIFIED
    assert c2.status is Status.NOT_TOTALLY_GEODESIC
    assert (c2.rank.rank, c2.target_dim) == (5, 5)


def test_normalize_sigma(z4z4_cover):
    cover, s = normalize_sigma(validate(4, [[1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1, 1]]), (2, 0))
    assert s == (2, 2)
    assert genus(cover) == 33
    assert prym_spec(cover, s).b == prym_spec(z4z4_cover, (2, 0)).b


def test_prym_bounds():
    assert prym_bound_report(2, 2).to_json() == {"source": "Z2prym", "r_max": 12, "g_max": 9}
    b = prym_bound_report(4, 1)
    assert (b.r_max, b.g_max) == (8, 1 + 4 * 2)
    with pytest.raises(PreconditionError):
        prym_bound_report(3, 1)


@settings(max_examples=200, deadline=None)
@given(covers())
def test_prym_identities(cover):
    gt = genus(cover)
    for s in involutions(cover.group):
        spec = prym_spec(cover, s)
        b = branch_count(cover, s)
        assert 2 * gt - 2 == 2 * (2 * spec.g - 2) + b
        assert sum(d for _, d in minus_dims(cover, s)) == gt - spec.g == spec.g - 1 + b // 2
