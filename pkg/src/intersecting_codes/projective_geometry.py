"""Projective systems in PG(k-1, q): hyperplane incidence, cohyperplanarity, avoidance.

Points and hyperplane normals are normalized vectors (first nonzero entry 1).
Hyperplanes are indexed in the same lexicographic order as
:func:`codes.normalized_vectors`. Covering questions are decided on the set of
distinct points; multiplicities only enter distance computations.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import _masks
from .linalg_codes import LinearCode, as_matrix, normalized_vectors, projective_count, rank
from .errors import BudgetExceeded, DegenerateCode
from .finite_field import FieldCtx

COVER_BUDGET = 10**9
SUBSPACE_BUDGET = 10**7


@dataclass(frozen=True, eq=False)
class ProjectiveSystem:
    """Distinct normalized points (rows, lexicographically sorted) with multiplicities."""

    ctx: FieldCtx
    points: np.ndarray = dc_field(repr=False)
    multiplicity: np.ndarray = dc_field(repr=False)

    @property
    def k(self) -> int:
        return self.points.shape[1]

    @property
    def n(self) -> int:
        return int(self.multiplicity.sum())

    @property
    def size(self) -> int:
        """Number of distinct points."""
        return self.points.shape[0]

    def __repr__(self):
        return f"ProjectiveSystem(k={self.k}, q={self.ctx.q}, n={self.n}, distinct={self.size})"

    def point_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in p) for p in self.points]

    def spans(self) -> bool:
        return rank(self.ctx, self.points) == self.k

    def generator(self) -> np.ndarray:
        """A generator matrix whose columns are the points repeated by multiplicity."""
        return np.repeat(self.points, self.multiplicity, axis=0).T.copy()

    def to_code(self) -> LinearCode:
        return LinearCode(self.ctx, self.generator())

    @cached_property
    def incidence(self) -> np.ndarray:
        """Boolean (hyperplanes x distinct points): entry true when the point lies on the hyperplane."""
        _check_enumerable(self.ctx.q, self.k)
        normals = normalized_vectors(self.ctx.q, self.k)
        return self.ctx.matmul(normals, self.points.T) == 0

    def hyperplane_counts(self) -> np.ndarray:
        """Points (with multiplicity) on each hyperplane."""
        return self.incidence.astype(np.int64) @ self.multiplicity

    def min_distance(self) -> int:
        return self.n - int(self.hyperplane_counts().max())

    def off_hyperplane_count(self, normal) -> int:
        """Points (with multiplicity) not on the hyperplane with the given normal."""
        on = self.ctx.matmul(np.asarray(normal, dtype=np.int64).reshape(1, -1), self.points.T)[0] == 0
        return int(self.multiplicity[~on].sum())

    def with_point(self, point) -> "ProjectiveSystem":
        pts = np.vstack([np.repeat(self.points, self.multiplicity, axis=0), np.asarray(point, dtype=np.int64)])
        return system_from_points(self.ctx, pts)


def _check_enumerable(q: int, k: int, budget: int = 2**24) -> None:
    if projective_count(q, k) > budget:
        raise BudgetExceeded("hyperplane enumeration", projective_count(q, k), budget)


def system_from_points(ctx: FieldCtx, points) -> ProjectiveSystem:
    """Projective system from a list of nonzero vectors (rows); proportional rows merge."""
    pts = as_matrix(ctx, points)
    if not pts.any(axis=1).all():
        raise DegenerateCode("the zero vector is not a projective point")
    normed = ctx.normalize(pts)
    uniq, counts = np.unique(normed, axis=0, return_counts=True)
    uniq.setflags(write=False)
    counts.setflags(write=False)
    return ProjectiveSystem(ctx, uniq, counts.astype(np.int64))


def system_from_generator(ctx: FieldCtx, g) -> ProjectiveSystem:
    g = as_matrix(ctx, g)
    zero = np.flatnonzero(~g.any(axis=0))
    if zero.size:
        raise DegenerateCode(f"column {int(zero[0])} of the generator is zero")
    if rank(ctx, g) != g.shape[0]:
        raise ValueError("generator matrix is not of full row rank")
    return system_from_points(ctx, g.T)


def system_of_code(code: LinearCode) -> ProjectiveSystem:
    return system_from_generator(code.ctx, code.gen)


@dataclass(frozen=True)
class CoverResult:
    covered: bool
    hyperplanes: tuple[tuple[int, ...], ...] = ()
    work: int = 0


def _distinct_patterns(s: ProjectiveSystem) -> tuple[np.ndarray, np.ndarray]:
    """Packed on-patterns of distinct hyperplane classes, ordered by first hyperplane index."""
    inc = s.incidence
    packed = _masks.pack_rows(inc)
    _, first = np.unique(packed, axis=0, return_index=True)
    first = np.sort(first)
    return packed[first], first


def is_t_cohyperplanar(s: ProjectiveSystem, t: int, budget: int = COVER_BUDGET) -> CoverResult:
    """Whether the distinct points of ``s`` lie in a union of ``t`` hyperplanes.

    A positive answer carries the lexicographically first covering tuple of hyperplane normals.
    """
    if t < 1:
        raise ValueError("t must be positive")
    q, k = s.ctx.q, s.k
    normals = normalized_vectors(q, k)
    patterns, first = _distinct_patterns(s)
    full = _masks.full_mask(s.size)
    d = patterns.shape[0]
    if t == 1:
        hit = np.flatnonzero(np.all(patterns == full, axis=1))
        if hit.size:
            return CoverResult(True, (tuple(int(x) for x in normals[first[hit[0]]]),), int(hit[0]) + 1)
        return CoverResult(False, (), d)
    if t == 2:
        needed = d * (d + 1) // 2
        if needed > budget:
            raise BudgetExceeded("hyperplane pairs", needed, budget)
        pair, work = _masks.first_covering_pair(patterns, full)
        if pair is None:
            return CoverResult(False, (), work)
        hs = tuple(tuple(int(x) for x in normals[first[i]]) for i in pair)
        return CoverResult(True, hs, work)
    # a union of fewer hyperplanes is padded by repeats
    needed = comb(d + t - 1, t)
    if needed > budget:
        raise BudgetExceeded("hyperplane tuples", needed, budget)
    as_int = [int.from_bytes(row.tobytes(), "little") for row in patterns]
    target = (1 << s.size) - 1
    work = 0
    for combo in itertools.combinations_with_replacement(range(d), t):
        work += 1
        acc = 0
        for i in combo:
            acc |= as_int[i]
        if acc == target:
            hs = tuple(tuple(int(x) for x in normals[first[i]]) for i in combo)
            return CoverResult(True, hs, work)
    return CoverResult(False, (), work)


def is_non_2_cohyperplanar(s: ProjectiveSystem, budget: int = COVER_BUDGET) -> bool:
    return not is_t_cohyperplanar(s, 2, budget).covered


@dataclass(frozen=True)
class MinimalityResult:
    minimal: bool
    point: tuple[int, ...] | None = None
    hyperplanes: tuple[tuple[int, ...], ...] = ()


def _removal_witness(s: ProjectiveSystem, idx: int, patterns: np.ndarray, first: np.ndarray, normals: np.ndarray):
    keep = np.ones(s.size, dtype=bool)
    keep[idx] = False
    inc = s.incidence[first][:, keep]
    packed = _masks.pack_rows(inc)
    pair, _ = _masks.first_covering_pair(packed, _masks.full_mask(int(keep.sum())))
    if pair is None:
        return None
    return tuple(tuple(int(x) for x in normals[first[i]]) for i in pair)


def removable_points(s: ProjectiveSystem) -> list[int]:
    """Indices of simple points whose removal leaves a 2-cohyperplanar set."""
    normals = normalized_vectors(s.ctx.q, s.k)
    patterns, first = _distinct_patterns(s)
    return [
        i
        for i in range(s.size)
        if s.multiplicity[i] == 1 and _removal_witness(s, i, patterns, first, normals) is not None
    ]


def is_minimal_n2c(s: ProjectiveSystem, budget: int = COVER_BUDGET) -> MinimalityResult:
    """Some point P and hyperplanes H1, H2 with S minus P inside H1 union H2.

    Points of multiplicity above one survive removal of a single copy and never qualify.
    """
    if is_t_cohyperplanar(s, 2, budget).covered:
        raise ValueError("the set is already 2-cohyperplanar")
    normals = normalized_vectors(s.ctx.q, s.k)
    patterns, first = _distinct_patterns(s)
    for i in range(s.size):
        if s.multiplicity[i] != 1:
            continue
        hs = _removal_witness(s, i, patterns, first, normals)
        if hs is not None:
            return MinimalityResult(True, tuple(int(x) for x in s.points[i]), hs)
    return MinimalityResult(False)


def is_inclusion_minimal_n2c(s: ProjectiveSystem) -> bool:
    """Every single-point deletion yields a 2-cohyperplanar set."""
    if is_t_cohyperplanar(s, 2).covered:
        raise ValueError("the set is already 2-cohyperplanar")
    return len(removable_points(s)) == s.size


# ---------- lines and the avoidance property ----------

Line = tuple[tuple[int, ...], tuple[int, ...]]


def make_line(ctx: FieldCtx, p1, p2) -> Line:
    a = tuple(int(x) for x in ctx.normalize(p1))
    b = tuple(int(x) for x in ctx.normalize(p2))
    if a == b:
        raise ValueError("a line needs two distinct points")
    return (a, b) if a < b else (b, a)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def codim2_subspaces(ctx: FieldCtx, k: int) -> np.ndarray:
    """All 2 x k matrices in reduced row-echelon form of rank 2, shape (count, 2, k)."""
    q = ctx.q
    blocks = []
    for i, j in itertools.combinations(range(k), 2):
        free1 = [c for c in range(i + 1, k) if c != j]
        free2 = list(range(j + 1, k))
        nf = len(free1) + len(free2)
        count = q**nf
        vals = np.zeros((count, nf), dtype=np.int64)
        idx = np.arange(count)
        for c in range(nf - 1, -1, -1):
            idx, vals[:, c] = np.divmod(idx, q)
        m = np.zeros((count, 2, k), dtype=np.int64)
        m[:, 0, i] = 1
        m[:, 1, j] = 1
        if free1:
            m[:, 0, free1] = vals[:, : len(free1)]
        if free2:
            m[:, 1, free2] = vals[:, len(free1) :]
        blocks.append(m)
    return np.concatenate(blocks, axis=0)


def meets_all_lines(ctx: FieldCtx, subspaces: np.ndarray, lines: Sequence[Line]) -> np.ndarray:
    """For each codim-2 subspace {x : M x = 0}, whether it meets every line."""
    p1 = np.array([ln[0] for ln in lines], dtype=np.int64)
    p2 = np.array([ln[1] for ln in lines], dtype=np.int64)
    b = subspaces.shape[0]
    flat = subspaces.reshape(2 * b, -1)
    a = ctx.matmul(flat, p1.T).reshape(b, 2, -1)
    c = ctx.matmul(flat, p2.T).reshape(b, 2, -1)
    det = ctx.vsub(ctx.vmul(a[:, 0], c[:, 1]), ctx.vmul(a[:, 1], c[:, 0]))
    return np.all(det == 0, axis=1)


def has_avoidance_property(ctx: FieldCtx, lines: Sequence[Line], k: int, budget: int = SUBSPACE_BUDGET) -> bool:
    """No codimension-2 subspace of PG(k-1, q) meets every line; false for an empty line set."""
    if not lines:
        return False
    if k < 2:
        raise ValueError("lines need k >= 2")
    count = gaussian_binomial(k, 2, ctx.q)
    if count > budget:
        raise BudgetExceeded("codimension-2 subspaces", count, budget)
    subs = codim2_subspaces(ctx, k)
    step = max(1, (1 << 20) // max(1, len(lines)))
    for start in range(0, subs.shape[0], step):
        if meets_all_lines(ctx, subs[start : start + step], lines).any():
            return False
    return True


def line_points(ctx: FieldCtx, line: Line) -> np.ndarray:
    """All q + 1 points of a line."""
    a = np.array(line[0], dtype=np.int64)
    b = np.array(line[1], dtype=np.int64)
    lam = np.arange(ctx.q, dtype=np.int64)
    pts = ctx.vadd(a[None, :], ctx.vmul(lam[:, None], b[None, :]))
    return np.vstack([ctx.normalize(pts), b[None, :]])


def three_points_per_line(
    ctx: FieldCtx, lines: Sequence[Line], chooser: Callable[[int, Line], int] | None = None
) -> ProjectiveSystem:
    """Both defining points of each line plus P1 + c * P2, with c = chooser(index, line) (default 1)."""
    if not lines:
        raise ValueError("no lines given")
    pts = []
    for idx, ln in enumerate(lines):
        c = 1 if chooser is None else int(chooser(idx, ln))
        if c == 0 or not 0 < c < ctx.q:
            raise ValueError(f"third-point coefficient {c} must be a nonzero field element")
        a = np.array(ln[0], dtype=np.int64)
        b = np.array(ln[1], dtype=np.int64)
        third = ctx.vadd(a, ctx.vmul(b, c))
        pts.extend([a, b, ctx.normalize(third)])
    sys = system_from_points(ctx, np.array(pts))
    return ProjectiveSystem(ctx, sys.points, np.ones(sys.size, dtype=np.int64))
