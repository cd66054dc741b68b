"""Row generators for the tabulated quantities: asymptotic ratios, i(k, q), AG bounds,
Davenport ratios and the expander alpha values. Each row names how its cells were obtained.
"""

from __future__ import annotations

from typing import Any

from . import bounds, davenport, expander
from .finite_field import prime_power
from .search import build_itable

TABLE1_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17)
TABLE2_Q = (2, 3, 4, 5, 7, 8, 9)
TABLE3_Q = (2, 3, 4, 5, 7, 8, 9, 16, 27)
TABLE4_Q = (2, 4, 8, 16, 3, 9, 5, 7, 11, 13, 17)
TABLE5_Q = (2, 3, 4, 5, 7, 8, 9, 16, 27)
EXPANDER_BASES = (3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64, 67, 71, 73, 79, 81, 83, 89)


def table1() -> list[dict[str, Any]]:
    rows = []
    for q in TABLE1_Q:
        x, ratio = bounds.mrrw_crossing(q)
        rows.append(
            {
                "q": q,
                "mrrw_crossing": x,
                "ratio": ratio,
                "plotkin_ratio": bounds.plotkin_ratio(q),
                "better": bounds.mrrw_vs_plotkin(q),
                "source": "bisection on M_q(x) = x",
            }
        )
    return rows


def table2(kmax: int = 5, qset=TABLE2_Q, budget: int = 2 * 10**5, reported: bool = False, threads: int = 1) -> list[dict[str, Any]]:
    table = build_itable(kmax, qset, budget=budget, reported=reported, threads=threads)
    rows = []
    for q in qset:
        for k in range(2, kmax + 1):
            e = table[(k, q)]
            rows.append(
                {
                    "q": q,
                    "k": k,
                    "lower": e.lower,
                    "upper": e.upper,
                    "exact": e.exact,
                    "certified": e.certified,
                    "lower_source": e.lower_source,
                    "upper_source": e.upper_source,
                }
            )
    return rows


def table3() -> list[dict[str, Any]]:
    rows = []
    for q in TABLE3_Q:
        ratio, recipe = bounds.ag_ratio(q)
        r = bounds.EXCEPTIONAL_RECIPES[q]
        rows.append(
            {
                "q": q,
                "inner_code": f"[{r.inner_n},{r.inner_k}]_{q}",
                "ag_ratio": ratio,
                "probabilistic_ratio": bounds.prob_ratio(q),
                "source": recipe,
            }
        )
    return rows


def table4() -> list[dict[str, Any]]:
    rows = []
    for q in TABLE4_Q:
        p, h = prime_power(q)
        rows.append(
            {
                "p": p,
                "h": h,
                "upper": davenport.davenport_upper_ratio(q),
                "source": f"alpha/(alpha-1), alpha = {bounds.asymptotic_lower_ratio(q):.5f} ({bounds.mrrw_vs_plotkin(q)})",
            }
        )
    return rows


def table5() -> list[dict[str, Any]]:
    rows = []
    for q in TABLE5_Q:
        p, h = prime_power(q)
        lows = davenport.davenport_lower_ratios(q)
        rows.append(
            {
                "p": p,
                "h": h,
                "ell": lows["ag"],
                "probabilistic": lows["probabilistic"],
                "source": "beta/(beta-1), beta from the AG and probabilistic ratios",
            }
        )
    return rows


def expander_table(bases=EXPANDER_BASES) -> list[dict[str, Any]]:
    rows = []
    for b in bases:
        t, a = expander.alpha_optimizer(b * b)
        rows.append({"q": b * b, "base": b, "t": t, "alpha": a, "source": "integer search over t"})
    rows.append({"q": None, "base": None, "t": 10, "alpha": expander.alpha_limit(10), "source": "limit q -> infinity"})
    return rows


TABLES = {
    "1": table1,
    "2": table2,
    "3": table3,
    "4": table4,
    "5": table5,
    "expander": expander_table,
}
