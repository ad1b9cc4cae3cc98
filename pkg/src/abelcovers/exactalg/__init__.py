"""Exact computations with basis forms at rational specializations of the branch points.

Products of eigenforms with opposite characters are rational quadratic
differentials ``x^a prod_j (x - t_j)^{E_j} dx^2``.  Placing a family of
such products over a common denominator turns the multiplication map into
a matrix over Q, whose rank at any specialization bounds the generic rank
from below.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..cover import CoverSpec, FormSpec, basis_forms, char_table
from ..errors import PreconditionError
from ..groupmod import CharacterClass, Vector, dot
from .linalg import bareiss_rank, nullspace
from .poly import Poly, RationalFunction

__all__ = [
    "Poly",
    "RationalFunction",
    "SpecializationAssignment",
    "random_specialization",
    "QuadricSpec",
    "product_exponents",
    "product_polynomial",
    "selected_pairs",
    "multiplication_matrix",
    "mult_map_rank",
    "kernel_basis",
    "is_kernel_member",
    "RankResult",
    "RankOracle",
    "wronskian_certificate",
    "case_two_certificate",
]

RationalFunctionRep = RationalFunction

DEFAULT_SEED = 20240601
DEFAULT_SPECIALIZATIONS = 3
VALUE_BOUND = 10**4


@dataclass(frozen=True)
class SpecializationAssignment:
    values: Tuple[Fraction, ...]
    seed: Optional[int] = None

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(set(vals)) != len(vals):
            raise PreconditionError("branch point specialization values must be pairwise distinct")

    def __len__(self):
        return len(self.values)

    def to_json(self) -> list:
        return [str(v) for v in self.values]


def random_specialization(
    r: int,
    seed: int = DEFAULT_SEED,
    pinned: Optional[Dict[int, object]] = None,
    bound: int = VALUE_BOUND,
) -> SpecializationAssignment:
    """Distinct rationals p/q with |p| <= bound, 1 <= q <= 16, drawn from ``seed``.

    ``pinned`` maps 0-based branch indices to fixed values.
    """
    rng = random.Random(seed)
    pinned = {k: Fraction(v) for k, v in (pinned or {}).items()}
    used = set(pinned.values())
    if len(used) != len(pinned):
        raise PreconditionError("pinned values collide")
    values = []
    for j in range(r):
        if j in pinned:
            values.append(pinned[j])
            continue
        while True:
            v = Fraction(rng.randint(-bound, bound), rng.randint(1, 16))
            if v not in used:
                break
        used.add(v)
        values.append(v)
    return SpecializationAssignment(tuple(values), seed)


def _coerce_t(t) -> SpecializationAssignment:
    return t if isinstance(t, SpecializationAssignment) else SpecializationAssignment(tuple(t))


def _opposite(f: FormSpec, g: FormSpec) -> bool:
    return all((a + b) % f.N == 0 for a, b in zip(f.alpha, g.alpha))


def product_exponents(f: FormSpec, g: FormSpec) -> Tuple[int, Tuple[int, ...]]:
    """(x-power, branch exponents E_j) of the rational quadratic differential f*g.

    The w-monomial w^(n_f + n_g) is invariant when the characters cancel
    and equals prod_j (x - t_j)^((lifted_f + lifted_g)_j / N).
    """
    if f.N != g.N or len(f.exponents) != len(g.exponents):
        raise PreconditionError("forms come from different covers")
    if not _opposite(f, g):
        raise PreconditionError("non-invariant product: characters do not cancel")
    N = f.N
    exps = []
    for ef, eg, lf, lg in zip(f.exponents, g.exponents, f.lifted, g.lifted):
        q, rem = divmod(lf + lg, N)
        if rem:
            raise AssertionError("non-integral branch exponent in product")
        exps.append(ef + eg + q)
    return f.nu + g.nu, tuple(exps)


def _monomial_rf(a: int, exps: Sequence[int], t: SpecializationAssignment, scale) -> RationalFunction:
    num = Poly.monomial(a, scale)
    den = Poly.const(1)
    for e, tj in zip(exps, t.values):
        if e > 0:
            num = num * Poly.linear_root(tj) ** e
        elif e < 0:
            den = den * Poly.linear_root(tj) ** (-e)
    return RationalFunction(num, den)


def product_polynomial(f: FormSpec, g: FormSpec, t) -> RationalFunction:
    """Coefficient function of the quadratic differential f*g after specialization."""
    t = _coerce_t(t)
    a, exps = product_exponents(f, g)
    if len(exps) != len(t):
        raise PreconditionError("specialization length does not match branch count")
    return _monomial_rf(a, exps, t, f.scale * g.scale)


@dataclass(frozen=True)
class QuadricSpec:
    """A symmetric 2-tensor sum c_ab f_a (.) f_b over an indexed list of forms."""

    terms: Tuple[Tuple[Fraction, Tuple[int, int]], ...]
    basis: Tuple[FormSpec, ...] = field(repr=False)

    @classmethod
    def from_terms(cls, basis: Sequence[FormSpec], terms) -> "QuadricSpec":
        acc: Dict[Tuple[int, int], Fraction] = {}
        for c, (a, b) in terms:
            key = (min(a, b), max(a, b))
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        basis = tuple(basis)
        for a, b in acc:
            if not _opposite(basis[a], basis[b]):
                raise PreconditionError(f"pair ({a}, {b}) is not G-invariant")
        kept = tuple((c, k) for k, c in sorted(acc.items()) if c != 0)
        return cls(kept, basis)

    def coefficient(self, a: int, b: int) -> Fraction:
        key = (min(a, b), max(a, b))
        return next((c for c, k in self.terms if k == key), Fraction(0))

    def evaluate(self, t) -> RationalFunction:
        """Image under multiplication: sum c_ab f_a f_b as a rational function."""
        total = RationalFunction(Poly())
        for c, (a, b) in self.terms:
            total = total + product_polynomial(self.basis[a], self.basis[b], t) * c
        return total


def _selected_classes(cover: CoverSpec, sigma: Optional[Vector]) -> List[Tuple[CharacterClass, int]]:
    table = char_table(cover)
    if sigma is None:
        return table
    half = cover.N // 2
    return [(c, d) for c, d in table if dot(c.row, sigma) % cover.N == half and cover.N % 2 == 0]


Selection = Union[str, Sequence[Tuple[Sequence[int], Sequence[int]]]]


def selected_pairs(cover: CoverSpec, selection: Selection = "full", sigma: Optional[Vector] = None):
    """Basis context and index pairs spanning the selected invariant quadrics.

    ``selection`` is ``"full"`` (all of (S^2 V)^G, or (S^2 V_-)^G when
    ``sigma`` is given) or an explicit list of (row, row') class pairs
    whose characters cancel.  Pairs are ordered by class, then (a, b).
    """
    if isinstance(selection, str):
        if selection not in ("full", "minus"):
            raise PreconditionError(f"unknown selection {selection!r}")
        if selection == "minus" and sigma is None:
            raise PreconditionError("selection 'minus' needs sigma")
        classes = _selected_classes(cover, sigma)
        class_pairs = []
        for c, d in classes:
            if d == 0:
                continue
            neg = cover.negative(c)
            if c.self_inverse:
                class_pairs.append((c, c))
            elif c.alpha < neg.alpha:
                class_pairs.append((c, neg))
    else:
        class_pairs = []
        for u, v in selection:
            cu, cv = cover.class_of_row(u), cover.class_of_row(v)
            if cv.alpha != cu.neg_alpha:
                raise PreconditionError(f"classes of {tuple(u)} and {tuple(v)} are not opposite")
            class_pairs.append((cu, cv))

    basis: List[FormSpec] = []
    offsets: Dict[Vector, int] = {}

    def forms_of(c):
        if c.alpha not in offsets:
            offsets[c.alpha] = len(basis)
            basis.extend(basis_forms(cover, c))
        start = offsets[c.alpha]
        return list(range(start, start + len(basis_forms(cover, c))))

    pairs = []
    for cu, cv in class_pairs:
        iu, iv = forms_of(cu), forms_of(cv)
        if cu.alpha == cv.alpha:
            pairs.extend((a, b) for k, a in enumerate(iu) for b in iu[k:])
        else:
            pairs.extend((a, b) for a in iu for b in iv)
    return basis, pairs


def multiplication_matrix(basis, pairs, t) -> List[List[Fraction]]:
    """Numerator coefficient matrix (degrees x pairs) over a common denominator."""
    t = _coerce_t(t)
    prods = [product_exponents(basis[a], basis[b]) + (basis[a].scale * basis[b].scale,)
             for a, b in pairs]
    if not prods:
        return []
    r = len(t)
    shift = [max(0, max(-e[j] for _, e, _ in prods)) for j in range(r)]
    factors = [Poly.linear_root(tj) for tj in t.values]
    columns = []
    for a, exps, scale in prods:
        p = Poly.monomial(a, scale)
        for j in range(r):
            k = exps[j] + shift[j]
            if k:
                p = p * factors[j] ** k
        columns.append(p.coeffs)
    height = max(len(c) for c in columns)
    return [[c[i] if i < len(c) else Fraction(0) for c in columns] for i in range(height)]


def mult_map_rank(cover: CoverSpec, selection: Selection = "full", sigma=None, t=None) -> Tuple[int, int]:
    """(rank, kernel dimension) of the multiplication map at one specialization."""
    t = _coerce_t(t) if t is not None else random_specialization(cover.r)
    if len(t) != cover.r:
        raise PreconditionError("specialization length does not match branch count")
    basis, pairs = selected_pairs(cover, selection, sigma)
    mat = multiplication_matrix(basis, pairs, t)
    rank = bareiss_rank(mat) if mat else 0
    return rank, len(pairs) - rank


def kernel_basis(cover: CoverSpec, selection: Selection = "full", sigma=None, t=None) -> List[QuadricSpec]:
    """Reduced-echelon basis of the kernel, one quadric per free pair."""
    t = _coerce_t(t) if t is not None else random_specialization(cover.r)
    basis, pairs = selected_pairs(cover, selection, sigma)
    mat = multiplication_matrix(basis, pairs, t)
    vecs = nullspace(mat, ncols=len(pairs)) if pairs else []
    return [QuadricSpec.from_terms(basis, [(c, pairs[i]) for i, c in enumerate(v) if c]) for v in vecs]


def is_kernel_member(q: QuadricSpec, t) -> bool:
    """Exact test that the quadric multiplies to the zero differential."""
    return q.evaluate(t).is_zero()


@dataclass(frozen=True)
class RankResult:
    rank: int
    kernel: int
    pairs: int
    seeds: Tuple[Optional[int], ...]
    ranks: Tuple[int, ...]
    assignments: Tuple[SpecializationAssignment, ...] = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {"rank": self.rank, "kernel": self.kernel, "pairs": self.pairs,
                "seeds": list(self.seeds), "ranks_per_specialization": list(self.ranks),
                "specializations": [t.to_json() for t in self.assignments]}


class RankOracle:
    """Repeats :func:`mult_map_rank` at independent specializations.

    The reported rank is the maximum seen, so it is a certified lower bound
    for the generic rank.  Specializations are drawn from ``seed``,
    ``seed + 1``, ... unless fixed ``assignments`` are supplied.  Instances
    keep no state between calls.
    """

    def __init__(self, seed: int = DEFAULT_SEED, specializations: int = DEFAULT_SPECIALIZATIONS,
                 pinned: Optional[Dict[int, object]] = None,
                 assignments: Optional[Sequence[SpecializationAssignment]] = None):
        if specializations < 1:
            raise PreconditionError("need at least one specialization")
        self.seed = seed
        self.specializations = specializations
        self.pinned = pinned
        self.assignments = tuple(_coerce_t(t) for t in assignments) if assignments else None

    def assignments_for(self, r: int) -> Tuple[SpecializationAssignment, ...]:
        if self.assignments is not None:
            if any(len(t) != r for t in self.assignments):
                raise PreconditionError("specialization length does not match branch count")
            return self.assignments
        return tuple(random_specialization(r, self.seed + k, self.pinned)
                     for k in range(self.specializations))

    def rank(self, cover: CoverSpec, selection: Selection = "full", sigma=None) -> RankResult:
        specs = self.assignments_for(cover.r)
        ranks, npairs = [], 0
        for t in specs:
            rk, ker = mult_map_rank(cover, selection, sigma, t)
            ranks.append(rk)
            npairs = rk + ker
        best = max(ranks)
        return RankResult(best, npairs - best, npairs, tuple(t.seed for t in specs), tuple(ranks), specs)


def _log_derivative(f: FormSpec, t: SpecializationAssignment) -> RationalFunction:
    """nu/x + sum_j (lifted_j/N + e_j)/(x - t_j)."""
    total = RationalFunction(Poly())
    if f.nu:
        total = total + RationalFunction(Poly.const(f.nu), Poly.x())
    for lj, ej, tj in zip(f.lifted, f.exponents, t.values):
        c = Fraction(lj, f.N) + ej
        if c:
            total = total + RationalFunction(Poly.const(c), Poly.linear_root(tj))
    return total


def wronskian_certificate(f1: FormSpec, f3: FormSpec, t) -> RationalFunction:
    """f1 f3 (L3 - L1) with L the logarithmic derivative in x.

    Its numerator is not identically zero exactly when the pencil <f1, f3>
    is non-constant, which is what makes the witness quadric's second
    Gaussian map nonzero at a general point.
    """
    t = _coerce_t(t)
    diff = _log_derivative(f3, t) - _log_derivative(f1, t)
    if diff.is_zero() or f1.scale == 0 or f3.scale == 0:
        return RationalFunction(Poly())
    if not _opposite(f1, f3):
        raise PreconditionError("wronskian certificate needs forms with opposite characters")
    return product_polynomial(f1, f3, t) * diff


def case_two_certificate(f1: FormSpec) -> bool:
    """For Q = f1*x^2f1 - (x f1)^2 the second Gaussian map is -(x')^2 f1^2, never zero."""
    if f1.scale == 0:
        raise PreconditionError("case-two certificate needs a nonzero form")
    return True
