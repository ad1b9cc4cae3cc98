"""Abelian covers of P^1 given by a monodromy matrix.

A cover is the normalization of ``w_i^N = prod_j (x - t_j)^{r_ij}``; the
branch points stay symbolic here.  Everything below depends only on the
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import List, Sequence, Tuple

from .errors import (
    PreconditionError,
    RamifiedAtInfinityError,
    StructuralError,
    UnramifiedColumnError,
)
from .groupmod import (
    CharacterClass,
    GroupData,
    Vector,
    character_classes,
    element_order,
    subgroup_closure,
)


@dataclass(frozen=True)
class CoverSpec:
    N: int
    rows: Tuple[Vector, ...]
    group: GroupData = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def r(self) -> int:
        return len(self.rows[0])

    @property
    def columns(self) -> Tuple[Vector, ...]:
        return tuple(zip(*self.rows))

    def column_order(self, j: int) -> int:
        return element_order(self.columns[j], self.N)

    @cached_property
    def classes(self) -> Tuple[CharacterClass, ...]:
        return tuple(character_classes(self))

    @cached_property
    def class_by_alpha(self):
        return {c.alpha: c for c in self.classes}

    def class_of_row(self, n: Sequence[int]) -> CharacterClass:
        cols = self.columns
        alpha = tuple(sum(a * b for a, b in zip(n, c)) % self.N for c in cols)
        return self.class_by_alpha[alpha]

    def negative(self, cls: CharacterClass) -> CharacterClass:
        return self.class_by_alpha[cls.neg_alpha]

    def to_json(self) -> dict:
        return {"N": self.N, "rows": [list(row) for row in self.rows]}


@dataclass(frozen=True)
class FormSpec:
    """The holomorphic form x^nu w^row prod_j (x - t_j)^exponents[j] dx.

    ``lifted`` holds the integer products sum_i n_i r_ij for the stored
    row; ``scale`` is a constant multiplier (1 for basis forms).
    """

    nu: int
    row: Vector
    exponents: Tuple[int, ...]
    alpha: Vector
    lifted: Tuple[int, ...]
    N: int
    scale: Fraction = Fraction(1)

    def scaled(self, c) -> "FormSpec":
        return FormSpec(self.nu, self.row, self.exponents, self.alpha, self.lifted, self.N,
                        self.scale * Fraction(c))


def validate(N: int, rows: Sequence[Sequence[int]]) -> CoverSpec:
    """Build a :class:`CoverSpec`, reducing entries mod N and checking admissibility."""
    if not isinstance(N, int) or isinstance(N, bool) or N < 2:
        raise StructuralError(f"modulus N must be an integer >= 2, got {N!r}")
    if not rows or not all(isinstance(row, (list, tuple)) for row in rows):
        raise StructuralError("rows must be a nonempty list of integer lists")
    r = len(rows[0])
    if r == 0 or any(len(row) != r for row in rows):
        raise StructuralError("rows must be rectangular and nonempty")
    try:
        reduced = tuple(tuple(int(e) % N for e in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise StructuralError(f"matrix entries must be integers: {exc}") from None
    if any(isinstance(e, bool) or not isinstance(e, int) for row in rows for e in row):
        raise StructuralError("matrix entries must be integers")
    if r < 3:
        raise PreconditionError(f"need at least three branch points, got r = {r}")
    cols = list(zip(*reduced))
    for j, col in enumerate(cols):
        if not any(col):
            raise UnramifiedColumnError(f"column {j + 1} is zero: the cover is unramified at t_{j + 1}")
    sums = [sum(row) % N for row in reduced]
    if any(sums):
        raise RamifiedAtInfinityError(
            f"columns sum to {tuple(sums)} != 0 mod {N}: cover ramified at infinity"
        )
    return CoverSpec(N=N, rows=reduced, group=subgroup_closure(cols, N))


def genus(cover: CoverSpec) -> int:
    """Riemann-Hurwitz: g = 1 + d((r-2)/2 - (1/2N) sum_j gcd(N, column j))."""
    N, d, r = cover.N, cover.group.order, cover.r
    s = sum(gcd(N, *col) for col in cover.columns)
    g = 1 + d * (Fraction(r - 2, 2) - Fraction(s, 2 * N))
    if g.denominator != 1:
        raise AssertionError(f"non-integral genus {g} for {cover.rows}")
    return int(g)


def eigen_dim(cover: CoverSpec, cls: CharacterClass) -> int:
    """d_n = -1 + sum_j <-alpha_j/N> (0 for the trivial class)."""
    if cls.alpha not in cover.class_by_alpha:
        raise PreconditionError("character class does not belong to this cover")
    return cover.class_by_alpha[cls.alpha].dim


def char_table(cover: CoverSpec) -> List[Tuple[CharacterClass, int]]:
    """(class, d_n) for every character, ordered by representative row."""
    return [(c, c.dim) for c in cover.classes]


def basis_forms(cover: CoverSpec, cls: CharacterClass) -> List[FormSpec]:
    """The d_n forms x^nu w^n prod (x - t_j)^floor(-lifted_j / N) dx."""
    d = eigen_dim(cover, cls)
    N = cover.N
    exps = tuple((-a) // N for a in cls.lifted)
    return [FormSpec(nu, cls.row, exps, cls.alpha, cls.lifted, N) for nu in range(d)]
