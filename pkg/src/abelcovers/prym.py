"""Prym data for the double cover C~ -> C~/<sigma> inside an abelian cover."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .cover import CoverSpec, char_table, genus
from .errors import PreconditionError, UnsupportedInputError
from .groupmod import (
    CharacterClass,
    Vector,
    automorphism_group,
    apply_automorphism,
    ambient_group,
    dot,
    element_order,
    vscale,
)
from .torelli import Status, Witness, first_witness, sym2_invariant_dim


class Evidence(str, enum.Enum):
    B_AT_LEAST_6 = "B_AT_LEAST_6"
    EXACT_RANK_CERTIFIED = "EXACT_RANK_CERTIFIED"
    UNVERIFIED = "UNVERIFIED"


def _check_sigma(cover: CoverSpec, sigma: Sequence[int]) -> Vector:
    if len(sigma) != cover.m:
        raise PreconditionError(f"sigma must have length m = {cover.m}")
    s = tuple(int(x) % cover.N for x in sigma)
    if element_order(s, cover.N) != 2:
        raise PreconditionError(f"sigma = {s} does not have order 2")
    if s not in cover.group:
        raise PreconditionError(f"sigma = {s} is not in the group generated by the columns")
    return s


def branch_count(cover: CoverSpec, sigma: Sequence[int]) -> int:
    """Number of sigma-fixed points: sum of d/m_j over columns whose cyclic group contains sigma."""
    s = _check_sigma(cover, sigma)
    d, N = cover.group.order, cover.N
    b = 0
    for col in cover.columns:
        mj = element_order(col, N)
        if any(vscale(k, col, N) == s for k in range(1, mj)):
            b += d // mj
    return b


def quotient_genus(cover_genus: int, b: int) -> int:
    """Invert 2g~ - 2 = 2(2g - 2) + b."""
    num = 2 * cover_genus + 2 - b
    if b < 0 or b % 2 or num % 4:
        raise AssertionError(f"inconsistent double cover data: g~ = {cover_genus}, b = {b}")
    return num // 4


@dataclass(frozen=True)
class PrymSpec:
    cover: CoverSpec
    sigma: Vector
    cover_genus: int
    b: int
    g: int

    @property
    def prym_dim(self) -> int:
        return self.g - 1 + self.b // 2


def prym_spec(cover: CoverSpec, sigma: Sequence[int]) -> PrymSpec:
    s = _check_sigma(cover, sigma)
    gt = genus(cover)
    b = branch_count(cover, s)
    g = quotient_genus(gt, b)
    spec = PrymSpec(cover, s, gt, b, g)
    if spec.prym_dim != gt - g:
        raise AssertionError("Prym dimension mismatch")
    return spec


def is_anti_invariant(cls: CharacterClass, sigma: Vector) -> bool:
    """True when the character takes the value -1 on sigma."""
    return dot(cls.row, sigma) % cls.N == cls.N // 2


def minus_dims(cover: CoverSpec, sigma: Sequence[int]) -> List[Tuple[CharacterClass, int]]:
    """dim (V_-)_n per class: d_n when the character is -1 on sigma, else 0."""
    s = _check_sigma(cover, sigma)
    return [(c, d if is_anti_invariant(c, s) else 0) for c, d in char_table(cover)]


def prym_witness(cover: CoverSpec, sigma: Sequence[int]) -> Optional[Witness]:
    if genus(cover) < 4:
        raise UnsupportedInputError("theorem hypothesis g~ >= 4 not met")
    return first_witness(minus_dims(cover, sigma))


def normalize_sigma(cover: CoverSpec, sigma: Sequence[int]):
    """Map sigma to (N/2, ..., N/2) by an automorphism of (Z/NZ)^m when possible.

    Returns (new cover, new sigma) or None when the cover's group is not
    the full ambient group or no such automorphism exists.
    """
    from .cover import validate

    s = _check_sigma(cover, sigma)
    target = (cover.N // 2,) * cover.m
    if s == target:
        return cover, s
    amb = ambient_group(cover.N, cover.m)
    if cover.group.order != amb.order:
        return None
    for perm in automorphism_group(amb):
        if apply_automorphism(amb, perm, s) == target:
            cols = [apply_automorphism(amb, perm, c) for c in cover.columns]
            return validate(cover.N, [list(r) for r in zip(*cols)]), target
    return None


@dataclass(frozen=True)
class PrymClassification:
    status: Status
    witness: Optional[Witness]
    evidence: Evidence
    sym2_minus_dim: int
    target_dim: int
    rank: Optional[object] = None


def classify_prym(cover: CoverSpec, sigma: Sequence[int], oracle=None) -> PrymClassification:
    """Combine the witness search with surjectivity evidence.

    ``oracle`` is an :class:`abelcovers.exactalg.RankOracle` or None.
    """
    spec = prym_spec(cover, sigma)
    mdims = minus_dims(cover, spec.sigma)
    s2 = sym2_invariant_dim(mdims)
    target = cover.r - 3
    witness = first_witness(mdims) if spec.cover_genus >= 4 else None

    rank = None
    if oracle is not None and (spec.b < 6 or s2 == target):
        rank = oracle.rank(cover, "minus", spec.sigma)
    if spec.b >= 6:
        evidence = Evidence.B_AT_LEAST_6
    elif rank is not None and rank.rank == target:
        evidence = Evidence.EXACT_RANK_CERTIFIED
    else:
        evidence = Evidence.UNVERIFIED

    iso = s2 == target and rank is not None and rank.rank == target and rank.kernel == 0
    if witness is not None and iso:
        raise AssertionError("witness quadric contradicts an injective multiplication map")
    if witness is not None and evidence is not Evidence.UNVERIFIED:
        status = Status.NOT_TOTALLY_GEODESIC
    elif iso:
        status = Status.SHIMURA_CANDIDATE
    else:
        status = Status.UNDETERMINED
    return PrymClassification(status, witness, evidence, s2, target, rank)


@dataclass(frozen=True)
class PrymBoundReport:
    source: str
    r_max: int
    g_max: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def prym_bound_report(N: int, m: int, d: Optional[int] = None) -> PrymBoundReport:
    """Bounds on r and g~ for witness-free Prym families with sigma = (N/2, ..., N/2)."""
    if N % 2:
        raise PreconditionError(f"N = {N} is odd: no involution in (Z/NZ)^m")
    if m < 1:
        raise PreconditionError("m must be >= 1")
    if N == 2:
        return PrymBoundReport("Z2prym", 6 * m, 1 + 2 ** (m - 1) * (3 * m - 2))
    if d is None:
        d = N**m
    return PrymBoundReport("general-prym", 2 * N * m, 1 + d * (-1 + m * (N - 1)))
