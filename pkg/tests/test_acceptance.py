"""One test per acceptance criterion, each at its stated tolerance."""

import math
import time

import numpy as np

from intersecting_codes.bounds import (
    MRRW_BETTER,
    PLOTKIN_BETTER,
    ag_ratio,
    formula_lower_bounds,
    mrrw_crossing,
    mrrw_vs_plotkin,
    plotkin_ratio,
    prob_ratio,
    prob_threshold_exact,
)
from intersecting_codes.constructions import catalogue, rs_code, sparse_tetrahedron
from intersecting_codes.davenport import (
    GroupSpec,
    cross_check,
    d2_weighted,
    davenport_lower_ratios,
    davenport_upper_ratio,
)
from intersecting_codes.expander import (
    alpha_optimizer,
    complete_graph,
    cycle_graph,
    integrity,
    lines_from_graph,
    path_graph,
    petersen_graph,
    spectral_integrity_lower_bound,
    spectrum,
)
from intersecting_codes.finite_field import gf, prime_power
from intersecting_codes.intersecting_checks import is_intersecting_geometric, is_intersecting_supports
from intersecting_codes.linalg_codes import LinearCode, rank
from intersecting_codes.projective_geometry import (
    has_avoidance_property,
    is_non_2_cohyperplanar,
    system_of_code,
    three_points_per_line,
)
from intersecting_codes.search import build_itable

TABLE1 = {2: 3.5276, 3: 2.8272, 4: 2.5713, 5: 2.4342, 7: 2.2862, 8: 2.2411, 9: 2.2060, 11: 2.1547, 13: 2.1185, 16: 2.0802, 17: 2.0703}
TABLE3 = {
    2: (5.8334, 4.8189), 3: (4.3561, 3.7382), 4: (4.1667, 3.3539), 5: (3.9025, 3.1507), 7: (3.5745, 2.9331),
    8: (3.5, 2.8666), 9: (3.4286, 2.8148), 16: (3.2143, 2.6266), 27: (3.12, 2.5146),
}
TABLE4 = {(2, 1): 1.3956, (2, 2): 1.6364, (2, 3): 1.8057, (2, 4): 1.9257, (3, 1): 1.5472, (3, 2): 1.8291, (5, 1): 1.6972, (7, 1): 1.7774, (11, 1): 1.8660, (13, 1): 1.8940, (17, 1): 1.9343}
TABLE5_ELL = {(2, 1): 1.206, (3, 1): 1.297, (2, 2): 1.315, (5, 1): 1.344, (7, 1): 1.388, (2, 3): 1.4, (3, 2): 1.411, (2, 4): 1.451, (3, 3): 1.471}
ALPHA_ROWS = [(3, 86, 299.5378), (4, 39, 110.0490), (5, 27, 71.8927), (7, 20, 48.6300), (8, 18, 43.7121), (9, 17, 40.4255), (11, 15, 36.2747), (13, 14, 33.7937), (16, 13, 31.5103)]

# exact cells named by criterion 2, then every k = 5 cell
TABLE2_EXACT = {(2, q): 3 for q in (2, 3, 4, 5, 7, 8, 9)}
TABLE2_EXACT.update({(3, 2): 6, (4, 2): 9, (3, 3): 6, (3, 4): 5, (4, 4): 8, (4, 5): 8, (4, 7): 7})
TABLE2_EXACT.update({(5, 2): 13, (5, 3): 10, (5, 4): 10, (5, 5): 10, (5, 7): 10, (5, 8): 9, (5, 9): 9})

RANDOM_CODES_PER_CELL = 1000
HYPERPLANES_PER_SET = 100

# every intersecting code and non-2-cohyperplanar set met below, for criterion 4
_SEEN_CODES: list[LinearCode] = []


def _random_nondegenerate(rng, f, k, n):
    while True:
        g = rng.integers(0, f.q, size=(k, n))
        if g.any(axis=0).all() and rank(f, g) == k:
            return LinearCode(f, g)


def test_criterion_01_catalogue(criterion_report):
    t0 = time.perf_counter()
    bad = []
    entries = catalogue()
    for e in entries:
        code = e.code()
        ok = (code.n, code.k, code.min_distance) == (e.n, e.k, e.d)
        ok = ok and is_intersecting_supports(code).verdict and is_intersecting_geometric(code).verdict
        if ok:
            _SEEN_CODES.append(code)
        else:
            bad.append(e.name)
    dt = time.perf_counter() - t0
    passed = not bad and dt < 10
    criterion_report(1, passed, f"{len(entries)} catalogue matrices, failures {bad}, {dt:.2f} s (< 10 s)")
    assert passed


def test_criterion_02_table2_exact_region(criterion_report):
    t0 = time.perf_counter()
    qs = sorted({q for _, q in TABLE2_EXACT})
    table = build_itable(5, qs, budget=2 * 10**5)
    problems = []
    for (k, q), value in sorted(TABLE2_EXACT.items()):
        e = table[(k, q)]
        code = LinearCode(gf(q), e.witness) if e.witness else None
        if not (e.certified and e.lower == value and code is not None and code.n == value):
            problems.append((k, q, e.lower, e.upper))
            continue
        if not (is_intersecting_supports(code).verdict and is_intersecting_geometric(code).verdict):
            problems.append((k, q, "witness"))
            continue
        # the budget bounds the work done; the nominal q^(k(n-k)) count is recorded alongside
        if e.nonexistence.nodes > 2**34 or e.nonexistence.nominal_space != q ** (k * (value - 1 - k)):
            problems.append((k, q, "certificate size"))
        _SEEN_CODES.append(code)
    cell42 = table[(4, 2)].nonexistence
    quick = cell42.nominal_space == 2**16 and cell42.wall_clock < 1
    cell43 = table[(4, 3)].nonexistence
    dt = time.perf_counter() - t0
    passed = not problems and quick and cell43.n == 8
    criterion_report(
        2,
        passed,
        f"{len(TABLE2_EXACT)} cells certified, problems {problems}; (4,2) n=8 over {cell42.nominal_space} candidates "
        f"in {cell42.wall_clock:.4f} s; (4,3) n=8 refuted with {cell43.nodes} nodes; {dt:.1f} s",
    )
    assert passed


def test_criterion_03_verifier_cross_validation(criterion_report):
    t0 = time.perf_counter()
    cells = [(q, k) for q in range(2, 65) if prime_power(q) for k in range(2, 13) if q**k <= 4096]
    disagreements = []
    positives = 0
    for q, k in cells:
        f = gf(q)
        rng = np.random.default_rng(1000 * q + k)
        # lengths span from below the arc bound to the probabilistic threshold
        hi = max(2 * k, prob_threshold_exact(k, q))
        for _ in range(RANDOM_CODES_PER_CELL):
            code = _random_nondegenerate(rng, f, k, int(rng.integers(2 * k - 2, hi + 1)))
            a = is_intersecting_supports(code).verdict
            b = is_intersecting_geometric(code).verdict
            if a != b:
                disagreements.append((q, k, code.gen.tolist()))
            if a:
                positives += 1
                if len(_SEEN_CODES) < 5000:
                    _SEEN_CODES.append(code)
    dt = time.perf_counter() - t0
    passed = not disagreements
    criterion_report(
        3,
        passed,
        f"{len(cells)} (q,k) cells x {RANDOM_CODES_PER_CELL} codes, {positives} intersecting, "
        f"{len(disagreements)} disagreements, {dt:.0f} s",
    )
    assert passed


def _off_counts(sys, rng, count):
    f = sys.ctx
    pts = np.repeat(sys.points, sys.multiplicity, axis=0)
    out = []
    for _ in range(count):
        h = rng.integers(0, f.q, size=sys.k)
        while not h.any():
            h = rng.integers(0, f.q, size=sys.k)
        h = f.normalize(h)
        on = f.matmul(pts, h[:, None]).reshape(-1) == 0
        out.append(int((~on).sum()))
    return out


def test_criterion_04_distance_at_least_dimension(criterion_report):
    rng = np.random.default_rng(4)
    codes = list(_SEEN_CODES)
    for k, q in [(3, 2), (4, 3), (5, 4)]:
        codes.append(sparse_tetrahedron(k, q))
    sys7 = system_of_code(rs_code(gf(7), 7, 3))
    pipeline = three_points_per_line(sys7.ctx, lines_from_graph(sys7, complete_graph(7)))
    low_distance = [(c.q, c.k, c.n) for c in codes if c.min_distance < c.k]
    sets = [system_of_code(c) for c in codes if c.is_nondegenerate()] + [pipeline]
    low_off = []
    for s in sets:
        if not is_non_2_cohyperplanar(s):
            low_off.append(("not n2c", s.ctx.q, s.k))
        elif min(_off_counts(s, rng, HYPERPLANES_PER_SET)) < s.k:
            low_off.append((s.ctx.q, s.k, s.n))
    passed = bool(codes) and not low_distance and not low_off
    criterion_report(
        4,
        passed,
        f"{len(codes)} intersecting codes with d >= k (violations {low_distance}); {len(sets)} sets x "
        f"{HYPERPLANES_PER_SET} random hyperplanes (violations {low_off})",
    )
    assert passed


def test_criterion_05_table1(criterion_report):
    t0 = time.perf_counter()
    errs = {q: abs(mrrw_crossing(q)[1] - v) for q, v in TABLE1.items()}
    flip = [q for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17) if mrrw_vs_plotkin(q) != MRRW_BETTER]
    flip += [q for q in (19, 23, 25, 27, 29, 31, 32, 37, 49, 64) if mrrw_vs_plotkin(q) != PLOTKIN_BETTER]
    dt = time.perf_counter() - t0
    worst = max(errs.values())
    passed = worst < 1e-3 and not flip and dt < 1
    criterion_report(5, passed, f"11 rows, max error {worst:.2e} (< 1e-3), misclassified {flip}, {dt:.3f} s (< 1 s)")
    assert passed


def test_criterion_06_table3(criterion_report):
    ag_err = max(abs(ag_ratio(q)[0] - v[0]) for q, v in TABLE3.items())
    prob_err = max(abs(prob_ratio(q) - v[1]) for q, v in TABLE3.items())
    passed = ag_err < 2e-3 and prob_err < 1e-3
    criterion_report(6, passed, f"9 rows, AG max error {ag_err:.2e} (< 2e-3), probabilistic max error {prob_err:.2e} (< 1e-3)")
    assert passed


def test_criterion_07_alpha_table(criterion_report):
    bad = []
    worst = 0.0
    for base, t, alpha in ALPHA_ROWS:
        got_t, got_a = alpha_optimizer(base * base)
        worst = max(worst, abs(got_a - alpha))
        if got_t != t or abs(got_a - alpha) >= 1e-3:
            bad.append((base, got_t, got_a))
    large = [b for b in (89, 97, 101, 127, 256, 1009, 4096) if alpha_optimizer(b * b)[0] != 10]
    passed = not bad and not large
    criterion_report(7, passed, f"9 rows, max alpha error {worst:.2e} (< 1e-3), row failures {bad}; t != 10 above 89^2 at {large}")
    assert passed


def test_criterion_08_expander_pipeline(criterion_report):
    t0 = time.perf_counter()
    sys = system_of_code(rs_code(gf(7), 7, 3))
    lines = lines_from_graph(sys, complete_graph(7))
    avoid = has_avoidance_property(sys.ctx, lines, 3)
    pts = three_points_per_line(sys.ctx, lines)
    n2c = is_non_2_cohyperplanar(pts)
    graphs = {"K4": complete_graph(4), "C4": cycle_graph(4), "C5": cycle_graph(5), "P3": path_graph(3), "Petersen": petersen_graph()}
    expected = {"K4": 4, "C4": 3, "C5": 4, "P3": 2, "Petersen": 6}
    invariant_failures = []
    for name, g in graphs.items():
        val = integrity(g)[0]
        if val != expected[name]:
            invariant_failures.append((name, "integrity", val))
        t = g.regular_degree()
        if t is not None:
            if abs(spectrum(g).top - t) >= 1e-8:
                invariant_failures.append((name, "top eigenvalue"))
            if val < spectral_integrity_lower_bound(g):
                invariant_failures.append((name, "spectral bound"))
    dt = time.perf_counter() - t0
    passed = avoid and n2c and len(lines) == 21 and not invariant_failures and dt < 5
    criterion_report(
        8,
        passed,
        f"21 secant lines avoidance={avoid}, {pts.size}-point set non-2-cohyperplanar={n2c}, "
        f"graph invariant failures {invariant_failures}, {dt:.2f} s (< 5 s)",
    )
    assert passed


def test_criterion_09_davenport(criterion_report, small_itable):
    d16 = d2_weighted(GroupSpec(2, 1, 4), small_itable).value
    d16h2 = d2_weighted(GroupSpec(2, 2, 2), small_itable).value
    specs = [(p, h, r) for p in (2, 3, 5, 7, 11, 13) for h in (1, 2, 3, 4) for r in (1, 2, 3, 4) if (p**h) ** r <= 16]
    checked = {}
    failures = []
    for spec in specs:
        try:
            res = cross_check(GroupSpec(*spec), small_itable, max_n=8)
            checked[spec] = res.value
        except AssertionError as exc:
            failures.append((spec, str(exc)))
    t4 = max(abs(davenport_upper_ratio(p**h) - v) for (p, h), v in TABLE4.items())
    t5 = max(abs(davenport_lower_ratios(p**h)["ag"] - v) for (p, h), v in TABLE5_ELL.items())
    passed = (
        d16 == 8 and d16h2 == 6 and checked.get((2, 1, 2)) == 5 and checked.get((2, 1, 3)) == 7
        and not failures and t4 < 1e-3 and t5 < 2e-3
    )
    criterion_report(
        9,
        passed,
        f"D2(E16)={d16}, D2^2(E16)={d16h2}, D2(E4)={checked.get((2, 1, 2))}, D2(E8)={checked.get((2, 1, 3))}; "
        f"{len(checked)} groups oracle-checked, failures {failures}; upper-ratio rows max error {t4:.2e}, ell rows max error {t5:.2e}",
    )
    assert passed


def test_criterion_10_formula_evaluations(criterion_report):
    # asymptotic statements are checked only as formula evaluations against tabulated values
    problems = []
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25):
        if not math.isclose(plotkin_ratio(q), 2 + 1 / (q - 1)):
            problems.append(("plotkin", q))
        if prob_ratio(q) < plotkin_ratio(q):
            problems.append(("probabilistic below lower bound", q))
    for q in (25, 49, 121, 11, 13, 32, 128):
        if ag_ratio(q)[0] < plotkin_ratio(q):
            problems.append(("AG below lower bound", q))
    for k in range(2, 12):
        for q in (2, 3, 4):
            if max(formula_lower_bounds(k, q).values()) > prob_threshold_exact(k, q):
                problems.append(("bounds cross", k, q))
    passed = not problems
    criterion_report(10, passed, f"formula-level checks of the asymptotic ratios, problems {problems}")
    assert passed
