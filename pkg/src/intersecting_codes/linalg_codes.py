"""Matrices and linear codes over GF(q).

Matrices are plain 2-D int64 numpy arrays of canonical field elements; every
routine takes the ``FieldCtx`` it should compute in.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded, DegenerateCode
from .finite_field import FieldCtx

DISTANCE_BUDGET = 2**24
CHUNK = 1 << 14


def as_matrix(ctx: FieldCtx, rows) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else m.reshape(0, 0)
    if m.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    if m.size and (m.min() < 0 or m.max() >= ctx.q):
        raise ValueError(f"matrix entries must lie in [0, {ctx.q})")
    return m


def rank_and_rref(ctx: FieldCtx, m) -> tuple[int, np.ndarray, list[int]]:
    """Gauss-Jordan elimination; returns (rank, reduced row-echelon form, pivot columns)."""
    a = as_matrix(ctx, m).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = ctx.vmul(a[r], ctx.inv(int(a[r, c])))
        factors = a[:, c].copy()
        factors[r] = 0
        if factors.any():
            a = ctx.vsub(a, ctx.vmul(factors[:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return r, a, pivots


def rank(ctx: FieldCtx, m) -> int:
    return rank_and_rref(ctx, m)[0]


def null_space(ctx: FieldCtx, m) -> np.ndarray:
    """Basis (as rows) of {x : m x^T = 0}."""
    m = as_matrix(ctx, m)
    cols = m.shape[1]
    r, red, pivots = rank_and_rref(ctx, m)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = ctx.neg(int(red[row, f]))
    return basis


def projective_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def _tails(q: int, m: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, m), dtype=np.int64)
    for j in range(m - 1, -1, -1):
        idx, out[:, j] = np.divmod(idx, q)
    return out


def iter_normalized_blocks(q: int, k: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """All vectors of GF(q)^k whose first nonzero entry is 1, in increasing lexicographic order, in blocks."""
    for lead in range(k - 1, -1, -1):
        m = k - lead - 1
        total = q**m
        for start in range(0, total, chunk):
            stop = min(total, start + chunk)
            block = np.zeros((stop - start, k), dtype=np.int64)
            block[:, lead] = 1
            if m:
                block[:, lead + 1 :] = _tails(q, m, start, stop)
            yield block


def normalized_vectors(q: int, k: int) -> np.ndarray:
    """Every projective point of PG(k-1, q) as its normalized representative, lexicographically sorted."""
    return np.concatenate(list(iter_normalized_blocks(q, k)), axis=0)


def normalized_index(q: int, v) -> int:
    """Position of a normalized vector in :func:`normalized_vectors` order."""
    v = [int(x) for x in v]
    k = len(v)
    lead = next(i for i, x in enumerate(v) if x)
    if v[lead] != 1:
        raise ValueError("vector is not normalized")
    tail = 0
    for x in v[lead + 1 :]:
        tail = tail * q + x
    return projective_count(q, k - lead - 1) + tail


@dataclass(frozen=True)
class Codeword:
    values: tuple[int, ...]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.values) if x)

    @property
    def weight(self) -> int:
        return sum(1 for x in self.values if x)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A linear [n, k] code given by a full-row-rank generator matrix."""

    ctx: FieldCtx
    gen: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        g = as_matrix(self.ctx, self.gen)
        if g.shape[0] < 1 or g.shape[1] < g.shape[0]:
            raise ValueError(f"generator must be k x n with 1 <= k <= n, got {g.shape}")
        if rank(self.ctx, g) != g.shape[0]:
            raise ValueError("generator matrix is not of full row rank")
        g.setflags(write=False)
        object.__setattr__(self, "gen", g)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}]_{self.q})"

    def is_nondegenerate(self) -> bool:
        return bool(np.all(self.gen.any(axis=0)))

    def require_nondegenerate(self) -> None:
        zero = np.flatnonzero(~self.gen.any(axis=0))
        if zero.size:
            raise DegenerateCode(f"column {int(zero[0])} of the generator is zero")

    def encode(self, msg) -> np.ndarray:
        msg = np.asarray(msg, dtype=np.int64)
        return self.ctx.matmul(msg.reshape(-1, self.k), self.gen).reshape(msg.shape[:-1] + (self.n,))

    def projective_codeword_blocks(self, budget: int = DISTANCE_BUDGET) -> Iterator[np.ndarray]:
        """Codewords for each normalized message, in message order, in blocks."""
        if self.q**self.k > budget:
            raise BudgetExceeded("codeword enumeration", self.q**self.k, budget)
        for msgs in iter_normalized_blocks(self.q, self.k):
            yield self.ctx.matmul(msgs, self.gen)

    def projective_codewords(self, budget: int = DISTANCE_BUDGET) -> np.ndarray:
        return np.concatenate(list(self.projective_codeword_blocks(budget)), axis=0)

    def enumerate_projective_codewords(self, budget: int = DISTANCE_BUDGET) -> Iterator[Codeword]:
        for block in self.projective_codeword_blocks(budget):
            for row in block:
                yield Codeword(tuple(int(x) for x in row))

    @cached_property
    def weight_distribution(self) -> np.ndarray:
        """``dist[w]`` = number of codewords of weight w (all q^k words, including zero)."""
        counts = np.zeros(self.n + 1, dtype=np.int64)
        for block in self.projective_codeword_blocks():
            counts += np.bincount((block != 0).sum(axis=1), minlength=self.n + 1)
        counts *= self.q - 1
        counts[0] = 1
        return counts

    @cached_property
    def min_distance(self) -> int:
        best = self.n
        for block in self.projective_codeword_blocks():
            best = min(best, int((block != 0).sum(axis=1).min()))
        return best

    @property
    def d(self) -> int:
        return self.min_distance

    def parity_check(self) -> np.ndarray:
        """(n - k) x n matrix H with G H^T = 0 and full row rank."""
        return null_space(self.ctx, self.gen)

    def dual(self) -> "LinearCode | None":
        h = self.parity_check()
        return LinearCode(self.ctx, h) if h.shape[0] else None

    def same_row_space(self, other: "LinearCode") -> bool:
        if self.ctx != other.ctx or self.gen.shape != other.gen.shape:
            return False
        return rank(self.ctx, np.vstack([self.gen, other.gen])) == self.k

    def rref(self) -> np.ndarray:
        return rank_and_rref(self.ctx, self.gen)[1]

    def systematic_encoder(self) -> np.ndarray:
        """Generator whose pivot columns form the identity."""
        return self.rref()
