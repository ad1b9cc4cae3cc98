"""Finite subgroups of (Z/NZ)^m and the characters induced by a monodromy matrix.

Group elements and rows are plain tuples of ints reduced into ``[0, N)``;
the modulus travels with the containing :class:`GroupData` or cover.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Sequence, Tuple

from .errors import AutomorphismCapExceeded, StructuralError

Vector = Tuple[int, ...]

DEFAULT_AUT_ORDER_CAP = 256
DEFAULT_AUT_COUNT_CAP = 200_000


def modvec(entries: Sequence[int], N: int) -> Vector:
    """Reduce ``entries`` into a canonical vector mod ``N``."""
    if N < 2:
        raise StructuralError(f"modulus must be >= 2, got {N}")
    return tuple(int(e) % N for e in entries)


def vadd(u: Vector, v: Vector, N: int) -> Vector:
    return tuple((a + b) % N for a, b in zip(u, v))


def vneg(u: Vector, N: int) -> Vector:
    return tuple((-a) % N for a in u)


def vscale(k: int, u: Vector, N: int) -> Vector:
    return tuple((k * a) % N for a in u)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def element_order(v: Sequence[int], N: int) -> int:
    """Smallest k >= 1 with k*v = 0 mod N."""
    return N // gcd(N, *v) if len(v) else 1


@dataclass(frozen=True)
class GroupData:
    N: int
    m: int
    elements: Tuple[Vector, ...]
    generators: Tuple[Vector, ...]
    _index: Dict[Vector, int] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def zero(self) -> Vector:
        return (0,) * self.m

    def index(self, v: Vector) -> int:
        return self._index[v]

    def __contains__(self, v) -> bool:
        return tuple(v) in self._index

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_full(self) -> bool:
        return self.order == self.N**self.m


def subgroup_closure(columns: Sequence[Sequence[int]], N: int) -> GroupData:
    """Smallest subgroup of (Z/NZ)^m containing ``columns``.

    Elements are stored in lexicographic order.
    """
    if N < 2:
        raise StructuralError(f"modulus must be >= 2, got {N}")
    if not columns:
        raise StructuralError("at least one column is required")
    m = len(columns[0])
    if m == 0 or any(len(c) != m for c in columns):
        raise StructuralError("columns must share a common nonzero length")
    gens = tuple(modvec(c, N) for c in columns)
    zero = (0,) * m
    seen = {zero}
    frontier = [zero]
    distinct = sorted(set(g for g in gens if g != zero))
    while frontier:
        nxt = []
        for x in frontier:
            for g in distinct:
                y = vadd(x, g, N)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return GroupData(N=N, m=m, elements=tuple(sorted(seen)), generators=gens)


def ambient_group(N: int, m: int) -> GroupData:
    """The full group (Z/NZ)^m."""
    units = [tuple(int(i == k) for i in range(m)) for k in range(m)]
    return subgroup_closure(units, N)


def involutions(g: GroupData) -> List[Vector]:
    """Elements of order exactly 2, in lexicographic order."""
    return [v for v in g.elements if element_order(v, g.N) == 2]


def minimal_generators(g: GroupData) -> List[Vector]:
    """A greedy generating set: each element is outside the span of the previous ones."""
    gens: List[Vector] = []
    span = {g.zero}
    # larger orders first keeps the list short
    for v in sorted(g.elements, key=lambda e: (-element_order(e, g.N), e)):
        if v in span:
            continue
        gens.append(v)
        span = set(subgroup_closure(gens, g.N).elements)
        if len(span) == g.order:
            break
    return gens


def automorphism_group(
    g: GroupData,
    cap: int = DEFAULT_AUT_ORDER_CAP,
    max_count: int = DEFAULT_AUT_COUNT_CAP,
) -> List[Tuple[int, ...]]:
    """All automorphisms of ``g`` as permutations of ``g.elements`` indices.

    Brute force over images of a greedy generating set.  Raises
    :class:`AutomorphismCapExceeded` if ``|G| > cap`` or more than
    ``max_count`` automorphisms are found.
    """
    if g.order > cap:
        raise AutomorphismCapExceeded(
            f"automorphism enumeration aborted: |G| = {g.order} exceeds cap {cap}"
        )
    N = g.N
    gens = minimal_generators(g)
    if not gens:
        return [tuple(range(g.order))]
    by_order: Dict[int, List[Vector]] = {}
    for v in g.elements:
        by_order.setdefault(element_order(v, N), []).append(v)

    # every element written once as a combination of the generators
    coords: Dict[Vector, Tuple[int, ...]] = {g.zero: (0,) * len(gens)}
    frontier = [g.zero]
    while frontier:
        nxt = []
        for x in frontier:
            cx = coords[x]
            for k, h in enumerate(gens):
                y = vadd(x, h, N)
                if y not in coords:
                    c = list(cx)
                    c[k] += 1
                    coords[y] = tuple(c)
                    nxt.append(y)
        frontier = nxt

    def extend(images):
        perm = [0] * g.order
        hit = set()
        for x, cx in coords.items():
            y = g.zero
            for c, im in zip(cx, images):
                if c:
                    y = vadd(y, vscale(c, im, N), N)
            perm[g.index(x)] = g.index(y)
            hit.add(y)
        if len(hit) != g.order:
            return None
        # homomorphism check on generators against every element
        for x in g.elements:
            px = g.elements[perm[g.index(x)]]
            for h, im in zip(gens, images):
                if g.elements[perm[g.index(vadd(x, h, N))]] != vadd(px, im, N):
                    return None
        return tuple(perm)

    result: List[Tuple[int, ...]] = []

    def search(k, images, span):
        if k == len(gens):
            perm = extend(images)
            if perm is not None:
                result.append(perm)
                if len(result) > max_count:
                    raise AutomorphismCapExceeded(
                        f"automorphism enumeration aborted: more than {max_count} automorphisms"
                    )
            return
        for cand in by_order[element_order(gens[k], N)]:
            if cand in span:
                continue
            new = images + [cand]
            search(k + 1, new, set(subgroup_closure(new, N).elements))

    search(0, [], {g.zero})
    identity = tuple(range(g.order))
    result.sort(key=lambda p: p != identity)
    return result


def apply_automorphism(g: GroupData, perm: Sequence[int], v: Vector) -> Vector:
    return g.elements[perm[g.index(v)]]


@dataclass(frozen=True)
class CharacterClass:
    """One character of the Galois group, keyed by its alpha vector n*A mod N."""

    N: int
    row: Vector
    alpha: Vector
    lifted: Tuple[int, ...]
    dim: int
    order: int

    @property
    def is_trivial(self) -> bool:
        return not any(self.alpha)

    @property
    def neg_alpha(self) -> Vector:
        return vneg(self.alpha, self.N)

    @property
    def self_inverse(self) -> bool:
        return self.alpha == self.neg_alpha


def eigen_dim_from_alpha(alpha: Sequence[int], N: int) -> int:
    """-1 + sum <-alpha_j/N>, with 0 for the trivial character."""
    if not any(alpha):
        return 0
    q, rem = divmod(sum(N - a for a in alpha if a), N)
    if rem:
        raise AssertionError(f"non-integral eigenspace dimension for alpha={alpha}")
    return q - 1


def character_classes(cover) -> List[CharacterClass]:
    """One class per distinct alpha = n*A over all rows n in (Z/NZ)^m.

    The representative is the lexicographically first row producing the
    class, and classes are returned in order of their representatives.
    """
    N, rows = cover.N, cover.rows
    m = len(rows)
    cols = list(zip(*rows))
    found: Dict[Vector, CharacterClass] = {}
    target = cover.group.order
    for n in itertools.product(range(N), repeat=m):
        lifted = tuple(dot(n, c) for c in cols)
        alpha = tuple(a % N for a in lifted)
        if alpha in found:
            continue
        found[alpha] = CharacterClass(
            N=N,
            row=n,
            alpha=alpha,
            lifted=lifted,
            dim=eigen_dim_from_alpha(alpha, N),
            order=element_order(alpha, N),
        )
        if len(found) == target:
            break
    if len(found) != target:
        raise AssertionError(f"found {len(found)} characters for a group of order {target}")
    return list(found.values())
