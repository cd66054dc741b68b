"""Intersecting, minimal and outer-minimal predicates for linear codes.

Two independent routes decide the intersecting property: disjoint supports of
codeword pairs, and covers of the projective system by hyperplane pairs. Every
negative verdict carries a witness that is re-checked with scalar arithmetic
before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from . import _masks
from .linalg_codes import DISTANCE_BUDGET, LinearCode, normalized_vectors
from .errors import BudgetExceeded, FieldMismatch
from .projective_geometry import COVER_BUDGET, is_t_cohyperplanar, system_of_code

PAIR_BUDGET = 10**9
SUBMASK_MAX_N = 22

SUPPORT_PAIRS = "support-pairs"
HYPERPLANE_PAIRS = "hyperplane-pairs"


@dataclass(frozen=True)
class CheckReport:
    verdict: bool
    method: str
    witness: Any = None
    work: int = 0

    def __bool__(self):
        return self.verdict


def _scalar_encode(code: LinearCode, msg) -> tuple[int, ...]:
    f = code.ctx
    out = []
    for col in range(code.n):
        acc = 0
        for r, m in enumerate(msg):
            acc = f.add(acc, f.mul(int(m), int(code.gen[r, col])))
        out.append(acc)
    return tuple(out)


def _support(word) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(word) if x)


def _distinct_supports(code: LinearCode, budget: int):
    words = code.projective_codewords(budget)
    packed = _masks.pack_rows(words != 0)
    _, first = np.unique(packed, axis=0, return_index=True)
    first = np.sort(first)
    return words, packed, first


def _disjoint_pair_via_submasks(supports: np.ndarray, n: int) -> tuple[tuple[int, int] | None, int]:
    ints = (supports.astype(np.int64) << np.arange(n, dtype=np.int64)).sum(axis=1)
    lookup = _masks.submask_min_index(ints, n)
    full = (1 << n) - 1
    partner = lookup[full ^ ints]
    has = np.flatnonzero(partner < len(ints))
    if not has.size:
        return None, len(ints)
    i = int(has[0])
    return (i, int(partner[i])), i + 1


def is_intersecting_supports(code: LinearCode, budget: int = PAIR_BUDGET) -> CheckReport:
    """Every two nonzero codewords share a nonzero coordinate, decided on projective representatives."""
    if code.k == 1:
        return CheckReport(True, SUPPORT_PAIRS, None, 0)
    words, packed, first = _distinct_supports(code, DISTANCE_BUDGET)
    reps = packed[first]
    d = len(first)
    if code.n <= SUBMASK_MAX_N and d * d > (code.n << code.n):
        pair, work = _disjoint_pair_via_submasks(words[first] != 0, code.n)
    else:
        needed = d * (d - 1) // 2
        if needed > budget:
            raise BudgetExceeded("codeword pairs", needed, budget)
        pair, work = _masks.first_disjoint_pair(reps)
    if pair is None:
        return CheckReport(True, SUPPORT_PAIRS, None, work)
    msgs = normalized_vectors(code.q, code.k)
    a, b = (tuple(int(x) for x in msgs[first[i]]) for i in pair)
    wa, wb = _scalar_encode(code, a), _scalar_encode(code, b)
    if not (any(wa) and any(wb)) or _support(wa) & _support(wb):
        raise AssertionError("disjoint-support witness failed re-verification")
    return CheckReport(False, SUPPORT_PAIRS, (wa, wb), work)


def is_intersecting_geometric(code: LinearCode, budget: int = COVER_BUDGET) -> CheckReport:
    """Intersecting iff the columns of the generator are not covered by two hyperplanes."""
    code.require_nondegenerate()
    res = is_t_cohyperplanar(system_of_code(code), 2, budget)
    if not res.covered:
        return CheckReport(True, HYPERPLANE_PAIRS, None, res.work)
    f = code.ctx
    for col in code.gen.T:
        on = []
        for h in res.hyperplanes:
            acc = 0
            for a, b in zip(h, col):
                acc = f.add(acc, f.mul(int(a), int(b)))
            on.append(acc == 0)
        if not any(on):
            raise AssertionError("hyperplane-pair witness failed re-verification")
    return CheckReport(False, HYPERPLANE_PAIRS, res.hyperplanes, res.work)


def is_intersecting(code: LinearCode) -> bool:
    return is_intersecting_supports(code).verdict


def is_minimal_code(code: LinearCode, budget: int = PAIR_BUDGET) -> CheckReport:
    """No two non-proportional nonzero codewords have nested supports.

    A negative witness is (smaller, larger) with support(smaller) inside support(larger).
    """
    words = code.projective_codewords(DISTANCE_BUDGET)
    packed = _masks.pack_rows(words != 0)
    m = len(words)
    if m * (m - 1) > budget:
        raise BudgetExceeded("codeword pairs", m * (m - 1), budget)
    pair, work = _masks.first_nested_pair(packed)
    if pair is None:
        return CheckReport(True, SUPPORT_PAIRS, None, work)
    msgs = normalized_vectors(code.q, code.k)
    small, large = (_scalar_encode(code, msgs[i]) for i in pair)
    if not _support(small) <= _support(large):
        raise AssertionError("nested-support witness failed re-verification")
    return CheckReport(False, SUPPORT_PAIRS, (small, large), work)


def is_outer_minimal_base2(code: LinearCode, budget: int = PAIR_BUDGET) -> CheckReport:
    """Outer minimality with coefficients in GF(2).

    Fails when some codeword c' outside {0, c} satisfies c'_i in {0, c_i} at every coordinate.
    The witness is (c, c').
    """
    if code.ctx.p != 2:
        raise FieldMismatch(f"{code.ctx} is not of characteristic 2")
    total = code.q**code.k
    if total > DISTANCE_BUDGET or (total - 1) ** 2 > budget:
        raise BudgetExceeded("codeword pairs", (total - 1) ** 2, budget)
    f = code.ctx
    idx = np.arange(1, total, dtype=np.int64)
    msgs = np.empty((total - 1, code.k), dtype=np.int64)
    for j in range(code.k - 1, -1, -1):
        idx, msgs[:, j] = np.divmod(idx, code.q)
    words = f.matmul(msgs, code.gen)
    m = len(words)
    step = max(1, (1 << 22) // max(1, m * code.n))
    work = 0
    for start in range(0, m, step):
        c = words[start : start + step]
        below = np.all((words[None, :, :] == 0) | (words[None, :, :] == c[:, None, :]), axis=2)
        below[np.arange(len(c)), np.arange(start, start + len(c))] = False
        hits = np.flatnonzero(below.any(axis=1))
        if hits.size:
            i = int(hits[0])
            j = int(np.flatnonzero(below[i])[0])
            work += i * m + j + 1
            wc = _scalar_encode(code, msgs[start + i])
            wp = _scalar_encode(code, msgs[j])
            if not any(wp) or wp == wc or any(b not in (0, a) for a, b in zip(wc, wp)):
                raise AssertionError("outer-minimal witness failed re-verification")
            return CheckReport(False, SUPPORT_PAIRS, (wc, wp), work)
        work += len(c) * m
    return CheckReport(True, SUPPORT_PAIRS, None, work)


def sufficient_2d_gt_n(code: LinearCode) -> bool:
    return 2 * code.min_distance > code.n
