"""Condition (*) and the non-totally-geodesic criteria for the Torelli image."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .cover import CoverSpec, char_table, genus
from .errors import PreconditionError, UnsupportedInputError
from .groupmod import CharacterClass


class Status(str, enum.Enum):
    SHIMURA_CANDIDATE = "SHIMURA_CANDIDATE"
    NOT_TOTALLY_GEODESIC = "NOT_TOTALLY_GEODESIC"
    UNDETERMINED = "UNDETERMINED"


class WitnessCase(str, enum.Enum):
    ONE = "ONE"  # n != -n, d_n >= 2, d_-n >= 2
    TWO = "TWO"  # n of order 2, d_n >= 3


@dataclass(frozen=True)
class Witness:
    case: WitnessCase
    cls: CharacterClass
    dim: int
    paired: Optional[CharacterClass] = None
    paired_dim: Optional[int] = None

    def to_json(self) -> dict:
        out = {"case": self.case.value, "row": list(self.cls.row), "alpha": list(self.cls.alpha),
               "dim": self.dim}
        if self.paired is not None:
            out["paired_row"] = list(self.paired.row)
            out["paired_dim"] = self.paired_dim
        return out


@dataclass(frozen=True)
class Classification:
    status: Status
    witness: Optional[Witness]
    sym2_dim: int
    quadratic_dim: int

    @property
    def star(self) -> bool:
        return self.sym2_dim == self.quadratic_dim


DimTable = Sequence[Tuple[CharacterClass, int]]


def sym2_invariant_dim(table: DimTable) -> int:
    """dim (S^2 V)^G from eigenspace dims.

    Pairs {n, -n} with n != -n contribute d_n d_-n, self-inverse
    classes contribute d_n (d_n + 1) / 2.
    """
    dims = {c.alpha: d for c, d in table}
    total = 0
    for c, d in table:
        if c.is_trivial or d == 0:
            continue
        if c.self_inverse:
            total += d * (d + 1) // 2
        elif c.alpha < c.neg_alpha:
            total += d * dims.get(c.neg_alpha, 0)
    return total


def invariant_quadratic_dim(cover: CoverSpec) -> int:
    """dim H^0(K^2)^G, which equals r - 3."""
    if genus(cover) < 2:
        raise UnsupportedInputError("genus < 2: invariant quadratic differentials not supported")
    return cover.r - 3


def condition_star(cover: CoverSpec) -> bool:
    return sym2_invariant_dim(char_table(cover)) == invariant_quadratic_dim(cover)


def find_witnesses(table: DimTable) -> List[Witness]:
    """Every witness in table order, case ONE entries before case TWO.

    A case ONE pair {n, -n} is listed once, under whichever class comes first.
    """
    dims = {c.alpha: d for c, d in table}
    classes = {c.alpha: c for c, _ in table}
    ones, twos = [], []
    paired = set()
    for c, d in table:
        if c.is_trivial:
            continue
        if not c.self_inverse:
            dneg = dims.get(c.neg_alpha, 0)
            if d >= 2 and dneg >= 2 and c.alpha not in paired:
                paired.add(c.neg_alpha)
                ones.append(Witness(WitnessCase.ONE, c, d, classes[c.neg_alpha], dneg))
        elif d >= 3:
            twos.append(Witness(WitnessCase.TWO, c, d))
    return ones + twos


def first_witness(table: DimTable) -> Optional[Witness]:
    found = find_witnesses(table)
    return found[0] if found else None


def torelli_witness(cover: CoverSpec) -> Optional[Witness]:
    if genus(cover) < 4:
        raise UnsupportedInputError("theorem hypothesis g >= 4 not met")
    return first_witness(char_table(cover))


def classify_torelli(cover: CoverSpec) -> Classification:
    g = genus(cover)
    if g < 2:
        raise UnsupportedInputError(f"genus {g} < 2")
    table = char_table(cover)
    s2 = sym2_invariant_dim(table)
    q = cover.r - 3
    witness = first_witness(table) if g >= 4 else None
    star = s2 == q
    if witness is not None and star:
        raise AssertionError(f"witness and condition (*) both hold for {cover.rows}")
    if witness is not None:
        status = Status.NOT_TOTALLY_GEODESIC
    elif star:
        status = Status.SHIMURA_CANDIDATE
    else:
        status = Status.UNDETERMINED
    return Classification(status, witness, s2, q)


@dataclass(frozen=True)
class BoundReport:
    """Upper bounds on (m, r, g) for totally geodesic families."""

    source: str
    r_max: int
    g_max: int
    m_max: Optional[int] = None
    r_max_global: Optional[int] = None
    g_max_global: Optional[int] = None

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def bound_report(N: int, m: int, d: Optional[int] = None, p: Optional[int] = None) -> BoundReport:
    """Bounds a witness-free family must satisfy.

    ``N == 2`` gives the (Z/2)^m bounds; ``p`` (an odd prime, with G = (Z/p)^m)
    adds the global m <= 2p bounds; otherwise the general G in (Z/N)^m bound
    with ``d = |G|`` (default N^m) is used.
    """
    if N < 2 or m < 1:
        raise PreconditionError("need N >= 2 and m >= 1")
    if p is not None:
        if not _is_prime(p) or p < 3:
            raise PreconditionError(f"p must be an odd prime, got {p}")
        return BoundReport(
            source="Zp",
            r_max=2 * p * m,
            g_max=1 + p**m * (m * (p - 1) - 1),
            m_max=2 * p,
            r_max_global=4 * p * p,
            g_max_global=1 + p ** (2 * p) * (2 * p * (p - 1) - 1),
        )
    if N == 2:
        return BoundReport(
            source="Z2",
            r_max=6 * m,
            g_max=1 + 2 ** (m - 1) * (3 * m - 2),
            m_max=6,
            r_max_global=36,
            g_max_global=1 + 2**5 * 16,
        )
    if d is None:
        d = N**m
    return BoundReport(source="general", r_max=2 * N * m, g_max=1 + d * (m * (N - 1) - 1))


def table_rows(cover: CoverSpec) -> Iterable[dict]:
    """Char-table rows in report form."""
    for c, d in char_table(cover):
        yield {
            "row": list(c.row),
            "alpha": list(c.alpha),
            "order": c.order,
            "dim": d,
            "neg_row": list(cover.negative(c).row),
        }
