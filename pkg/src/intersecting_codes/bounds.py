"""Closed-form and numeric bounds on i(k, q) and on its asymptotic ratio i(k, q)/k.

Integer-valued bounds use exact integer/rational arithmetic; floats appear only in
entropy-based and asymptotic ratio computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import NotConverged
from .finite_field import prime_power

BRACKET_EPS = 1e-6


# ---------- lower bounds ----------


def plotkin_terms(k: int, q: int) -> dict[int, int]:
    """t -> ceil(k + (q^t - 1)/(q^t - q^(t-1)) * (k - t)) for t = 1..k."""
    if k < 1:
        raise ValueError("k must be positive")
    out = {}
    for t in range(1, k + 1):
        val = k + Fraction(q**t - 1, q**t - q ** (t - 1)) * (k - t)
        out[t] = math.ceil(val)
    return out


def plotkin_like(k: int, q: int) -> int:
    return max(plotkin_terms(k, q).values())


def arc_lower_bound(k: int) -> int:
    return 2 * k - 1


def plotkin_ratio(q: int) -> float:
    """Asymptotic lower bound 2 + 1/(q - 1) on i(k, q)/k."""
    return 2 + 1 / (q - 1)


# ---------- entropy and the MRRW function ----------


def entropy_q(q: int, x: float) -> float:
    if not 0 <= x <= 1 - 1 / q + 1e-12:
        raise ValueError(f"entropy argument {x} outside [0, 1 - 1/{q}]")
    if x == 0:
        return 0.0
    lq = math.log(q)
    val = -x * math.log(x / (q - 1)) / lq
    if x < 1:
        val -= (1 - x) * math.log(1 - x) / lq
    return val


def mrrw_q(q: int, x: float) -> float:
    if not 0 <= x <= 1 - 1 / q:
        raise ValueError(f"MRRW argument {x} outside [0, 1 - 1/{q}]")
    inner = (q - 1 - (q - 2) * x - 2 * math.sqrt((q - 1) * x * (1 - x))) / q
    return entropy_q(q, min(max(inner, 0.0), 1 - 1 / q))


def mrrw_crossing(q: int, tol: float = 1e-9) -> tuple[float, float]:
    """Fixed point x* of the MRRW function by bisection; returns (x*, 1/x*)."""
    lo, hi = BRACKET_EPS, 1 - 1 / q - BRACKET_EPS
    f = lambda x: mrrw_q(q, x) - x  # noqa: E731
    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        raise NotConverged(f"no sign change of M_q(x) - x for q={q}")
    for _ in range(200):
        mid = (lo + hi) / 2
        fm = f(mid)
        if abs(fm) < tol and hi - lo < tol:
            break
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    x = (lo + hi) / 2
    if abs(f(x)) >= tol:
        raise NotConverged(f"bisection residual {abs(f(x))} for q={q}")
    return x, 1 / x


MRRW_BETTER = "MRRW_better"
PLOTKIN_BETTER = "Plotkin_better"


def mrrw_vs_plotkin(q: int, guard: float = 1e-9) -> str:
    """Compare the MRRW function with the RATE = DELTA line at the Plotkin crossing."""
    x0 = (q - 1) / (2 * q - 1)
    return PLOTKIN_BETTER if mrrw_q(q, x0) >= x0 - guard else MRRW_BETTER


def asymptotic_lower_ratio(q: int) -> float:
    """Best lower bound on liminf i(k, q)/k from the MRRW and Plotkin arguments."""
    if mrrw_vs_plotkin(q) == MRRW_BETTER:
        return max(mrrw_crossing(q)[1], plotkin_ratio(q))
    return plotkin_ratio(q)


# ---------- probabilistic existence ----------


def gaussian_coefficient(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q**n - q**i
        den *= q**k - q**i
    return num // den


def prob_ratio(q: int) -> float:
    return 2 / math.log(q * q / (2 * q - 1), q)


def prob_threshold(k: int, q: int) -> int:
    """Closed-form length ceil(2k / log_q(q^2 / (2q - 1))) guaranteeing an intersecting code."""
    return math.ceil(prob_ratio(q) * k - 1e-12)


def prob_threshold_exact(k: int, q: int) -> int:
    """Least n >= k with (2q-1)^n (q^k-1)(q^(k-1)-1) <= (q^n-1)(q^(n-1)-1)."""
    if k == 1:
        return 1
    lhs_k = (q**k - 1) * (q ** (k - 1) - 1)
    n = k
    while (2 * q - 1) ** n * lhs_k > (q**n - 1) * (q ** (n - 1) - 1):
        n += 1
    return n


# ---------- AG-code constructive bounds ----------


@dataclass(frozen=True)
class IharaBound:
    """A lower bound on the Ihara constant A(Q)."""

    Q: int
    value: float
    formula: str


def ihara_square(Q: int) -> IharaBound:
    r = math.isqrt(Q)
    if r * r != Q:
        raise ValueError(f"{Q} is not a square")
    return IharaBound(Q, r - 1.0, f"sqrt({Q}) - 1")


def ihara_odd_power(base: int, m: int) -> IharaBound:
    """Q = base^(2m+1): A(Q) >= 2 / (1/(base^m - 1) + 1/(base^(m+1) - 1))."""
    if m < 1:
        raise ValueError("m must be at least 1")
    val = 2 / (1 / (base**m - 1) + 1 / (base ** (m + 1) - 1))
    return IharaBound(base ** (2 * m + 1), val, f"tower over GF({base}), exponent {2 * m + 1}")


def intersecting_ag_rate(a: float) -> float:
    """Rate 1/2 - 1/(2A) of explicit intersecting AG codes when A >= 4."""
    return 0.5 - 1 / (2 * a)


@dataclass(frozen=True)
class ExceptionalRecipe:
    q: int
    inner_n: int
    inner_k: int
    ihara: IharaBound

    @property
    def outer_field(self) -> int:
        return self.q**self.inner_k

    @property
    def ratio(self) -> float:
        return (self.inner_n / self.inner_k) / intersecting_ag_rate(self.ihara.value)


# Inner code and Ihara bound used for each field not covered by a closed form.
EXCEPTIONAL_RECIPES: dict[int, ExceptionalRecipe] = {
    2: ExceptionalRecipe(2, 15, 6, ihara_square(64)),
    3: ExceptionalRecipe(3, 10, 5, ihara_odd_power(3, 2)),
    4: ExceptionalRecipe(4, 5, 3, ihara_odd_power(4, 1)),
    5: ExceptionalRecipe(5, 5, 3, ihara_odd_power(5, 1)),
    7: ExceptionalRecipe(7, 7, 4, ihara_square(2401)),
    8: ExceptionalRecipe(8, 3, 2, ihara_square(64)),
    9: ExceptionalRecipe(9, 3, 2, ihara_square(81)),
    16: ExceptionalRecipe(16, 3, 2, ihara_square(256)),
    27: ExceptionalRecipe(27, 3, 2, ihara_square(729)),
}


def ag_ratio(q: int) -> tuple[float, str]:
    """Constructive upper bound on limsup i(k, q)/k from (concatenated) AG codes."""
    ph = prime_power(q)
    if ph is None:
        raise ValueError(f"{q} is not a prime power")
    p, h = ph
    if q in EXCEPTIONAL_RECIPES:
        r = EXCEPTIONAL_RECIPES[q]
        return r.ratio, f"inner [{r.inner_n},{r.inner_k}]_{q}, outer over GF({r.outer_field}), A >= {r.ihara.value:.4f}"
    if h % 2 == 0:
        if q < 25:  # pragma: no cover - squares below 25 are all exceptional
            raise ValueError(f"no AG bound for {q}")
        return 2 + 2 / (math.isqrt(q) - 2), "square field: 2 + 2/(sqrt(q) - 2)"
    if h == 1:
        if q < 11:  # pragma: no cover - primes below 11 are all exceptional
            raise ValueError(f"no AG bound for {q}")
        return 3 + 3 / (q - 2), "prime field: 3 + 3/(q - 2)"
    m = (h - 1) // 2
    val = 4 / (2 - 1 / (p**m - 1) - 1 / (p ** (m + 1) - 1))
    return val, f"odd power p^{h}: 4/(2 - 1/(p^m - 1) - 1/(p^(m+1) - 1)), m={m}"


def singleton_defect(n: int, k: int, d: int) -> Fraction:
    return 1 - Fraction(k + d, n + 1)


def singleton_defect_of(code) -> Fraction:
    return singleton_defect(code.n, code.k, code.min_distance)


# ---------- aggregate report ----------


@dataclass
class BoundReport:
    k: int
    q: int
    lower: int
    lower_breakdown: dict[str, int]
    upper: int | None
    upper_breakdown: dict[str, int]
    asymptotic: dict[str, float] = field(default_factory=dict)
    exact: int | None = None

    def as_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "q": self.q,
            "lower": self.lower,
            "lower_breakdown": dict(sorted(self.lower_breakdown.items())),
            "upper": self.upper,
            "upper_breakdown": dict(sorted(self.upper_breakdown.items())),
            "asymptotic": dict(sorted(self.asymptotic.items())),
            "exact": self.exact,
        }


def formula_lower_bounds(k: int, q: int) -> dict[str, int]:
    out = {"arc 2k-1": arc_lower_bound(k)}
    for t, v in plotkin_terms(k, q).items():
        out[f"plotkin t={t}"] = v
    return out


def formula_upper_bounds(k: int, q: int) -> dict[str, int]:
    out = {"probabilistic": prob_threshold_exact(k, q)}
    if k >= 2:
        out["sparse tetrahedron"] = k * (k + 1) // 2
    else:
        out["single point"] = 1
    if 2 * k - 1 <= q + 1:
        out["reed-solomon arc"] = 2 * k - 1
    return out


def bound_report(k: int, q: int, itable=None) -> BoundReport:
    lower_bd = formula_lower_bounds(k, q)
    upper_bd = formula_upper_bounds(k, q)
    exact = None
    if itable is not None and (k, q) in itable:
        entry = itable[(k, q)]
        lower_bd["table"] = entry.lower
        upper_bd["table"] = entry.upper
        if entry.exact:
            exact = entry.lower
    lower = max(lower_bd.values())
    upper = min(upper_bd.values())
    if lower > upper:
        raise AssertionError(f"inconsistent bounds for (k={k}, q={q}): {lower} > {upper}")
    asym = {"plotkin": plotkin_ratio(q), "probabilistic": prob_ratio(q)}
    if mrrw_vs_plotkin(q) == MRRW_BETTER:
        asym["mrrw"] = mrrw_crossing(q)[1]
    try:
        asym["ag"] = ag_ratio(q)[0]
    except ValueError:
        pass
    return BoundReport(k, q, lower, lower_bd, upper, upper_bd, asym, exact)
