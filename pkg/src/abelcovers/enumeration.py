"""Exhaustive enumeration of monodromy matrices up to equivalence, and bound sweeps.

Two matrices are equivalent when they differ by a permutation of columns
composed with an automorphism of the ambient group (Z/NZ)^m (restricted to
automorphisms fixing sigma in Prym sweeps).  A matrix is stored as a count
vector over the nonzero elements of (Z/NZ)^m in lexicographic order; the
lexicographically smallest sorted column tuple of an orbit corresponds to
the lexicographically largest count vector, which is the representative.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from operator import itemgetter
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .cover import CoverSpec, char_table, genus, validate
from .errors import AutomorphismCapExceeded, EnumerationCapExceeded, PreconditionError
from .groupmod import (
    DEFAULT_AUT_ORDER_CAP,
    ambient_group,
    automorphism_group,
    involutions,
    subgroup_closure,
)
from .prym import classify_prym, minus_dims, prym_bound_report
from .torelli import WitnessCase, bound_report, classify_torelli, find_witnesses, sym2_invariant_dim

log = logging.getLogger(__name__)

DEFAULT_CAP = 5_000_000


class Canonicalization(str, enum.Enum):
    PERMUTATION_ONLY = "PERMUTATION_ONLY"
    PERMUTATION_AND_AUTOMORPHISM = "PERMUTATION_AND_AUTOMORPHISM"


class SweepMode(str, enum.Enum):
    TORELLI = "TORELLI"
    PRYM = "PRYM"


@dataclass(frozen=True)
class EnumerationTask:
    N: int
    m: int
    r_min: int
    r_max: int
    genus_min: Optional[int] = None
    genus_max: Optional[int] = None
    require_involution: bool = False
    canonicalization: Canonicalization = Canonicalization.PERMUTATION_AND_AUTOMORPHISM
    full_group: bool = True
    sigma: Optional[Tuple[int, ...]] = None
    cap: int = DEFAULT_CAP
    aut_cap: int = DEFAULT_AUT_ORDER_CAP

    def __post_init__(self):
        if self.N < 2:
            raise PreconditionError("N must be >= 2")
        if self.m < 1:
            raise PreconditionError("m must be >= 1")
        if self.r_min < 3 or self.r_max < self.r_min:
            raise PreconditionError("need 3 <= r_min <= r_max")
        if self.sigma is not None:
            object.__setattr__(self, "sigma", tuple(int(x) % self.N for x in self.sigma))

    @classmethod
    def single(cls, N: int, m: int, r: int, **kw) -> "EnumerationTask":
        return cls(N, m, r, r, **kw)

    def to_json(self) -> dict:
        return {
            "N": self.N, "m": self.m, "r_min": self.r_min, "r_max": self.r_max,
            "genus_min": self.genus_min, "genus_max": self.genus_max,
            "require_involution": self.require_involution,
            "canonicalization": self.canonicalization.value, "full_group": self.full_group,
            "sigma": list(self.sigma) if self.sigma is not None else None, "cap": self.cap,
        }


class _Space:
    """Nonzero ambient elements and the permutation action used for canonical forms."""

    def __init__(self, task: EnumerationTask):
        self.task = task
        amb = ambient_group(task.N, task.m)
        self.ambient = amb
        self.elems = [e for e in amb.elements if any(e)]
        self.pos = {e: i for i, e in enumerate(self.elems)}
        self.aut_reduced = False
        perms = [tuple(range(len(self.elems)))]
        if task.canonicalization is Canonicalization.PERMUTATION_AND_AUTOMORPHISM:
            try:
                auts = automorphism_group(amb, cap=task.aut_cap)
                if task.sigma is not None:
                    si = amb.index(task.sigma)
                    auts = [p for p in auts if p[si] == si]
                perms = []
                for p in auts:
                    # p acts on ambient indices; restrict to nonzero elements
                    perms.append(tuple(self.pos[amb.elements[p[amb.index(e)]]] for e in self.elems))
                self.aut_reduced = True
            except AutomorphismCapExceeded:
                log.warning("automorphism enumeration aborted; canonicalizing by permutations only")
        # image count vector c' has c'[p[i]] = c[i], i.e. c' = c[p^-1]
        self.getters = []
        for p in perms:
            inv = [0] * len(p)
            for i, j in enumerate(p):
                inv[j] = i
            if inv != list(range(len(p))):
                self.getters.append(itemgetter(*inv) if len(inv) > 1 else (lambda c, k=inv[0]: (c[k],)))
        self._gen_cache: Dict[int, bool] = {}

    def generates(self, counts) -> bool:
        mask = 0
        for i, c in enumerate(counts):
            if c:
                mask |= 1 << i
        hit = self._gen_cache.get(mask)
        if hit is None:
            cols = [self.elems[i] for i, c in enumerate(counts) if c]
            hit = subgroup_closure(cols, self.task.N).order == self.ambient.order
            self._gen_cache[mask] = hit
        return hit

    def is_canonical(self, counts: tuple) -> bool:
        for g in self.getters:
            if g(counts) > counts:
                return False
        return True

    def canonical_form(self, counts: tuple) -> tuple:
        best = counts
        for g in self.getters:
            img = g(counts)
            if img > best:
                best = img
        return best

    def to_rows(self, counts) -> List[List[int]]:
        cols = []
        for i, c in enumerate(counts):
            cols.extend([self.elems[i]] * c)
        return [list(row) for row in zip(*cols)]

    def counts_of(self, columns) -> tuple:
        c = [0] * len(self.elems)
        for col in columns:
            c[self.pos[tuple(col)]] += 1
        return tuple(c)


def _raw_multisets(M: int, r: int, N: int, elems, first: Optional[int] = None):
    """Count vectors of size r over M elements with zero column sum.

    Yields (raw_index, counts) in descending lexicographic order of counts,
    i.e. ascending order of sorted column tuples.  ``raw_index`` counts all
    multisets visited, including those rejected by the sum filter.
    ``first`` restricts to the partition whose smallest present element is
    ``first``.
    """
    m = len(elems[0])
    counts = [0] * M
    raw = [0]

    def rec(i, remaining, acc):
        if i == M - 1:
            counts[i] = remaining
            total = [(acc[k] + remaining * elems[i][k]) % N for k in range(m)]
            raw[0] += 1
            if not any(total):
                yield raw[0] - 1, tuple(counts)
            counts[i] = 0
            return
        lo = 0
        hi = remaining
        if first is not None:
            if i < first:
                hi = 0
            elif i == first:
                lo = 1
        for c in range(hi, lo - 1, -1):
            counts[i] = c
            nacc = [(acc[k] + c * elems[i][k]) % N for k in range(m)] if c else acc
            yield from rec(i + 1, remaining - c, nacc)
        counts[i] = 0

    yield from rec(0, r, [0] * m)


def _accept(space: _Space, counts) -> bool:
    t = space.task
    if t.full_group and not space.generates(counts):
        return False
    return space.is_canonical(counts)


def _post_filter(task: EnumerationTask, cover: CoverSpec) -> bool:
    if task.genus_min is not None or task.genus_max is not None:
        g = genus(cover)
        if task.genus_min is not None and g < task.genus_min:
            return False
        if task.genus_max is not None and g > task.genus_max:
            return False
    if task.require_involution and not involutions(cover.group):
        return False
    if task.sigma is not None and task.sigma not in cover.group:
        return False
    return True


def _partition_size(M: int, r: int, first: int) -> int:
    """Raw multisets of size r whose smallest present element has index ``first``."""
    rest = M - first
    return comb(r - 1 + rest - 1, rest - 1)


def _partition_job(args):
    task, r, first = args
    space = _Space(task)
    M = len(space.elems)
    reps = [c for _, c in _raw_multisets(M, r, task.N, space.elems, first) if _accept(space, c)]
    return reps, _partition_size(M, r, first)


def _parse_token(token: Optional[str]):
    if not token:
        return None
    try:
        r_s, off_s = token.split(":")
        return int(r_s), int(off_s)
    except ValueError:
        raise PreconditionError(f"malformed resume token {token!r}") from None


def enumerate_families(task: EnumerationTask, resume: Optional[str] = None, workers: int = 1,
                       progress: Optional[Callable[[str], None]] = None) -> Iterator[CoverSpec]:
    """One representative per equivalence class, by r then sorted columns.

    Raises :class:`EnumerationCapExceeded` once more than ``task.cap`` raw
    multisets have been visited; its ``resume_token`` restarts the stream
    where it stopped.
    """
    space = _Space(task)
    M = len(space.elems)
    start = _parse_token(resume)
    visited = 0
    emitted: List[CoverSpec] = []
    for r in range(task.r_min, task.r_max + 1):
        if start is not None and r < start[0]:
            continue
        skip = start[1] if start is not None and r == start[0] else 0
        if progress:
            progress(f"r = {r}")
        if workers > 1:
            yield from _enumerate_parallel(task, space, r, skip, visited, workers, emitted)
            visited += comb(r + M - 1, M - 1) - skip
            continue
        for raw, counts in _raw_multisets(M, r, task.N, space.elems):
            if raw < skip:
                continue
            if visited + (raw - skip) >= task.cap:
                raise EnumerationCapExceeded(
                    f"candidate cap {task.cap} exceeded", emitted, f"{r}:{raw}"
                )
            if _accept(space, counts):
                cover = validate(task.N, space.to_rows(counts))
                if _post_filter(task, cover):
                    emitted.append(cover)
                    yield cover
        visited += comb(r + M - 1, M - 1) - skip


def _enumerate_parallel(task, space, r, skip, visited, workers, emitted):
    M = len(space.elems)
    jobs = [(task, r, k) for k in range(M)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_partition_job, jobs))
    offset = 0
    for reps, raw_total in results:
        part_start = offset
        offset += raw_total
        if offset <= skip:
            continue
        if visited + offset - skip > task.cap:
            raise EnumerationCapExceeded(
                f"candidate cap {task.cap} exceeded", emitted, f"{r}:{max(part_start, skip)}"
            )
        for counts in reps:
            cover = validate(task.N, space.to_rows(counts))
            if _post_filter(task, cover):
                emitted.append(cover)
                yield cover


def orbit(task: EnumerationTask, cover: CoverSpec) -> List[CoverSpec]:
    """All matrices (as sorted column multisets) equivalent to ``cover``."""
    space = _Space(task)
    c = space.counts_of(cover.columns)
    seen = {c}
    for g in space.getters:
        seen.add(g(c))
    return [validate(task.N, space.to_rows(x)) for x in sorted(seen, reverse=True)]


@dataclass
class SweepReport:
    task: dict
    mode: str
    total_candidates: int = 0
    classes: int = 0
    status_counts: Dict[str, int] = field(default_factory=dict)
    out_of_theorem: int = 0
    below_genus_2: int = 0
    max_r_witness_free: Optional[int] = None
    max_genus_witness_free: Optional[int] = None
    beta_max: List[int] = field(default_factory=list)
    beta_histogram: Dict[int, int] = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    aut_reduced: bool = True
    violations: List[dict] = field(default_factory=list)
    witnesses: List[tuple] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "witnesses"}
        out["beta_histogram"] = {str(k): v for k, v in sorted(self.beta_histogram.items())}
        out["witness_count"] = len(self.witnesses)
        return out


def _default_sigma(task: EnumerationTask) -> Tuple[int, ...]:
    if task.N % 2:
        raise PreconditionError(f"N = {task.N} is odd: Prym sweeps need an involution")
    return task.sigma if task.sigma is not None else (task.N // 2,) * task.m


def verify_bounds(task: EnumerationTask, mode: SweepMode = SweepMode.TORELLI, oracle=None,
                  collect_witnesses: bool = False, workers: int = 1,
                  progress: Optional[Callable[[str], None]] = None) -> SweepReport:
    """Classify every class and check witness-free families against the bound tables.

    Only families of genus >= 4 are checked (the theorems' hypothesis);
    smaller genera are counted as out-of-theorem.
    """
    mode = SweepMode(mode)
    if mode is SweepMode.PRYM:
        sigma = _default_sigma(task)
        if task.sigma != sigma:
            task = EnumerationTask(**{**task.__dict__, "sigma": sigma})
    report = SweepReport(task=task.to_json(), mode=mode.value)

    M = task.N**task.m - 1
    report.total_candidates = sum(comb(r + M - 1, M - 1) for r in range(task.r_min, task.r_max + 1))
    report.beta_max = [0] * task.m
    report.aut_reduced = _Space(task).aut_reduced

    for cover in enumerate_families(task, workers=workers, progress=progress):
        report.classes += 1
        g = genus(cover)
        d = cover.group.order
        if mode is SweepMode.TORELLI:
            bounds = bound_report(task.N, task.m, d=d)
            if g < 2:
                report.below_genus_2 += 1
                continue
            cls = classify_torelli(cover)
            status = cls.status
            table = char_table(cover)
            witnesses = find_witnesses(table) if g >= 4 else []
        else:
            bounds = prym_bound_report(task.N, task.m, d=d)
            pcls = classify_prym(cover, task.sigma, oracle)
            status = pcls.status
            witnesses = find_witnesses(minus_dims(cover, task.sigma)) if g >= 4 else []
        report.status_counts[status.value] = report.status_counts.get(status.value, 0) + 1
        report.bounds = bounds.to_json()
        if collect_witnesses:
            for w in witnesses:
                if w.case is WitnessCase.ONE:
                    report.witnesses.append((cover, w))
        if g < 4:
            report.out_of_theorem += 1
            continue
        if witnesses:
            continue
        if report.max_r_witness_free is None or cover.r > report.max_r_witness_free:
            report.max_r_witness_free = cover.r
        if report.max_genus_witness_free is None or g > report.max_genus_witness_free:
            report.max_genus_witness_free = g
        for i, row in enumerate(cover.rows):
            beta = sum(1 for e in row if e)
            report.beta_max[i] = max(report.beta_max[i], beta)
            report.beta_histogram[beta] = report.beta_histogram.get(beta, 0) + 1
        if cover.r > bounds.r_max or g > bounds.g_max:
            report.violations.append({
                "rows": [list(r) for r in cover.rows], "r": cover.r, "genus": g,
                "r_max": bounds.r_max, "g_max": bounds.g_max,
            })
    return report


@dataclass(frozen=True)
class StarRecord:
    cover: CoverSpec
    genus: int
    sym2_dim: int
    quadratic_dim: int

    def to_json(self) -> dict:
        return {**self.cover.to_json(), "genus": self.genus, "sym2_dim": self.sym2_dim,
                "quadratic_dim": self.quadratic_dim}


def star_scan(task: EnumerationTask, workers: int = 1) -> List[StarRecord]:
    """Representatives (genus >= 2) satisfying condition (*)."""
    out = []
    for cover in enumerate_families(task, workers=workers):
        g = genus(cover)
        if g < 2:
            continue
        s2 = sym2_invariant_dim(char_table(cover))
        if s2 == cover.r - 3:
            out.append(StarRecord(cover, g, s2, cover.r - 3))
    return out
