"""2-wise weighted Davenport constants of elementary abelian groups.

The group is GF(q)^r with q = p^h and the weights are the nonzero scalars of GF(q).
The constant equals the least m >= r + 1 with m < i(m - r, q): a sequence without two
disjoint weighted zero-sum subsequences is the parity-check matrix of an intersecting code.
The sequence-level oracle recomputes the constant without going through codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .bounds import ag_ratio, asymptotic_lower_ratio, formula_lower_bounds, prob_ratio
from .intersecting_checks import is_intersecting_supports
from .linalg_codes import LinearCode, null_space
from .errors import BudgetExceeded, InsufficientCoverage
from .finite_field import FieldCtx, is_prime, make_field, prime_power

ENUMERATION_BUDGET = 2**24
ORACLE_MAX_GROUP = 256


@dataclass(frozen=True)
class GroupSpec:
    p: int
    h: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.h < 1 or self.r < 1:
            raise ValueError("h and r must be positive")

    @property
    def q(self) -> int:
        return self.p**self.h

    @property
    def order(self) -> int:
        return self.q**self.r

    @property
    def ctx(self) -> FieldCtx:
        return make_field(self.p, self.h)


@dataclass
class DavenportResult:
    spec: GroupSpec
    lower: int
    upper: int
    consumed: list[dict[str, Any]] = field(default_factory=list)
    oracle_checked: bool = False
    extremal: tuple[tuple[int, ...], ...] | None = None

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | tuple[int, int]:
        return self.lower if self.exact else (self.lower, self.upper)

    def as_dict(self) -> dict[str, Any]:
        return {
            "p": self.spec.p,
            "h": self.spec.h,
            "r": self.spec.r,
            "value": self.lower if self.exact else None,
            "interval": [self.lower, self.upper],
            "exact": self.exact,
            "provenance": self.consumed,
            "oracle_checked": self.oracle_checked,
        }


def _i_interval(k: int, q: int, itable) -> tuple[int, int | None, str]:
    if k == 1:
        return 1, 1, "single point"
    entry = itable.get((k, q)) if itable is not None else None
    if entry is None:
        return max(formula_lower_bounds(k, q).values()), None, "formula lower bound only"
    src = entry.lower_source if entry.exact else f"{entry.lower_source} / {entry.upper_source}"
    return entry.lower, entry.upper, src


def d2_weighted(spec: GroupSpec, itable) -> DavenportResult:
    """min {m >= r + 1 : m < i(m - r, q)}, as an interval when consumed i-values are intervals."""
    q, r = spec.q, spec.r
    lower = upper = None
    consumed = []
    k = 1
    while upper is None:
        m = k + r
        lo, hi, src = _i_interval(k, q, itable)
        consumed.append({"k": k, "q": q, "lower": lo, "upper": hi, "source": src})
        if lower is None:
            if hi is None:
                raise InsufficientCoverage(f"i({k}, {q}) is needed but not in the table")
            if m < hi:
                lower = m
        if m < lo:
            upper = m
        k += 1
    return DavenportResult(spec, lower, upper, consumed)


# ---------- sequence-level oracle ----------


def _group_tables(spec: GroupSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectors of GF(q)^r coded as base-q integers: (vectors, add table, scalar table [c, v])."""
    f, q, r = spec.ctx, spec.q, spec.r
    n = spec.order
    idx = np.arange(n, dtype=np.int64)
    vecs = np.empty((n, r), dtype=np.int64)
    rest = idx.copy()
    for j in range(r - 1, -1, -1):
        rest, vecs[:, j] = np.divmod(rest, q)
    weights = q ** np.arange(r - 1, -1, -1, dtype=np.int64)
    add = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        add[a] = f.vadd(vecs[a][None, :], vecs) @ weights
    scal = np.empty((q, n), dtype=np.int64)
    for c in range(q):
        scal[c] = f.vmul(vecs, c) @ weights
    return vecs, add, scal


def encode_vector(spec: GroupSpec, v) -> int:
    out = 0
    for x in v:
        out = out * spec.q + int(x)
    return out


class _Reach:
    """Reachable (support mask, weighted sum) pairs, extended one sequence term at a time."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.vecs, self.add, self.scal = _group_tables(spec)
        self.neg = np.array([int(np.flatnonzero(self.add[a] == 0)[0]) for a in range(spec.order)])

    def start(self) -> np.ndarray:
        z = np.zeros((1, self.spec.order), dtype=bool)
        z[0, 0] = True
        return z

    def extend(self, reach: np.ndarray, a: int) -> np.ndarray:
        top = np.zeros_like(reach)
        for c in range(1, self.spec.q):
            ca = self.scal[c, a]
            # new sum t comes from old sum t - c a
            top |= reach[:, self.add[np.arange(self.spec.order), self.neg[ca]]]
        return np.vstack([reach, top])

    @staticmethod
    def has_two_disjoint(reach: np.ndarray) -> bool:
        zs = np.flatnonzero(reach[:, 0])
        zs = zs[zs != 0]
        if len(zs) < 2:
            return False
        return bool(((zs[:, None] & zs[None, :]) == 0).any())


def sequence_has_two_disjoint_direct(spec: GroupSpec, sequence) -> bool:
    """Dynamic programme over (support, sum); no code machinery involved."""
    reach_ops = _Reach(spec)
    reach = reach_ops.start()
    for v in sequence:
        reach = reach_ops.extend(reach, encode_vector(spec, v))
    return _Reach.has_two_disjoint(reach)


def sequence_has_two_disjoint_code(spec: GroupSpec, sequence) -> bool:
    """Two nonzero codewords with disjoint supports in the code whose parity-check columns are the sequence."""
    f = spec.ctx
    n = len(sequence)
    if n == 0:
        return False
    h = np.array(sequence, dtype=np.int64).reshape(n, spec.r).T
    if spec.q**n > ENUMERATION_BUDGET:
        raise BudgetExceeded("coefficient vectors", spec.q**n, ENUMERATION_BUDGET)
    kernel = null_space(f, h)
    if kernel.shape[0] < 2:
        return False
    return not is_intersecting_supports(LinearCode(f, kernel)).verdict


def sequence_oracle(spec: GroupSpec, sequence) -> bool:
    """Whether the sequence has two disjoint weighted zero-sum subsequences; both routes must agree."""
    by_code = sequence_has_two_disjoint_code(spec, sequence)
    direct = sequence_has_two_disjoint_direct(spec, sequence)
    if by_code != direct:
        raise AssertionError(f"oracle routes disagree on {sequence}: code={by_code}, direct={direct}")
    return by_code


@dataclass(frozen=True)
class SequenceSearch:
    value: int | None
    longest_bad: int
    extremal: frozenset[tuple[int, ...]]
    nodes: int


def d2_by_sequences(spec: GroupSpec, max_n: int = 8) -> SequenceSearch:
    """Exhaustive search over multisets of group elements for the longest sequence lacking two
    disjoint weighted zero-sum subsequences. ``value`` is None when that length reaches max_n.
    """
    if spec.order > ORACLE_MAX_GROUP:
        raise BudgetExceeded("group order", spec.order, ORACLE_MAX_GROUP)
    ops = _Reach(spec)
    best = 0
    extremal: set[tuple[int, ...]] = set()
    nodes = 0
    stack = [((), ops.start(), 0)]
    # bad sequences are closed under deletion, so only bad prefixes are extended
    while stack:
        seq, reach, low = stack.pop()
        nodes += 1
        if len(seq) > best:
            best, extremal = len(seq), set()
        if len(seq) == best:
            extremal.add(seq)
        if len(seq) == max_n:
            continue
        for a in range(low, spec.order):
            nxt = ops.extend(reach, a)
            if not _Reach.has_two_disjoint(nxt):
                stack.append((seq + (a,), nxt, a))
    value = best + 1 if best < max_n else None
    return SequenceSearch(value, best, frozenset(extremal), nodes)


def extremal_sequence_from_code(spec: GroupSpec, code: LinearCode, length: int) -> tuple[int, ...]:
    """Parity-check columns of ``code`` padded to ``length`` by repeating its first coordinate.

    Repeating a coordinate keeps the code intersecting; with length - dim = r the columns lie in GF(q)^r.
    """
    g = code.gen
    while g.shape[1] < length:
        g = np.hstack([g, g[:, :1]])
    padded = LinearCode(code.ctx, g)
    if padded.n - padded.k != spec.r:
        raise ValueError("code has the wrong redundancy for this group")
    h = padded.parity_check()
    return tuple(sorted(encode_vector(spec, col) for col in h.T))


def cross_check(spec: GroupSpec, itable, max_n: int = 8) -> DavenportResult:
    """d2_weighted with the sequence oracle run alongside; raises when the two disagree."""
    res = d2_weighted(spec, itable)
    if not res.exact:
        raise InsufficientCoverage("reduction did not give an exact value")
    search = d2_by_sequences(spec, max_n)
    if search.value != res.lower:
        raise AssertionError(f"reduction gives {res.lower}, sequence search gives {search.value}")
    length = res.lower - 1
    k = length - spec.r
    entry = itable[(k, spec.q)] if k > 1 else None
    if entry is not None and entry.witness is not None:
        code = LinearCode(spec.ctx, entry.witness)
    else:
        code = LinearCode(spec.ctx, np.ones((1, 1), dtype=np.int64)) if k == 1 else None
    if code is not None:
        seq = extremal_sequence_from_code(spec, code, length)
        if seq not in search.extremal:
            raise AssertionError(f"code-derived sequence {seq} is not extremal in the search")
        res.extremal = tuple(sorted(search.extremal))
    res.oracle_checked = True
    return res


# ---------- asymptotic tables ----------


def davenport_upper_ratio(q: int) -> float:
    """alpha / (alpha - 1) with alpha the best asymptotic lower ratio for i(k, q)/k."""
    a = asymptotic_lower_ratio(q)
    return a / (a - 1)


def davenport_lower_ratios(q: int) -> dict[str, float]:
    """beta / (beta - 1) for the probabilistic and the constructive AG ratio."""
    out = {}
    b = prob_ratio(q)
    out["probabilistic"] = b / (b - 1)
    try:
        a = ag_ratio(q)[0]
        out["ag"] = a / (a - 1)
    except ValueError:
        pass
    return out


def asymptotic_tables(qset) -> list[dict[str, Any]]:
    rows = []
    for q in qset:
        p, h = prime_power(q)
        lows = davenport_lower_ratios(q)
        rows.append(
            {
                "p": p,
                "h": h,
                "q": q,
                "upper": davenport_upper_ratio(q),
                "upper_plotkin": 2 - 1 / q,
                "lower_ag": lows.get("ag"),
                "lower_probabilistic": lows["probabilistic"],
            }
        )
    return rows
