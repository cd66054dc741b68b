import numpy as np
import pytest

from intersecting_codes.constructions import catalogue_entry
from intersecting_codes.errors import BudgetExceeded
from intersecting_codes.finite_field import gf
from intersecting_codes.intersecting_checks import is_intersecting_geometric, is_intersecting_supports
from intersecting_codes.linalg_codes import LinearCode
from intersecting_codes.search import (
    EXHAUSTIVE,
    INTERVAL,
    REPORTED_TABLE,
    WITNESS,
    build_entry,
    build_itable,
    exhaustive_exists,
    explicit_witnesses,
    randomized_extend,
    systematic_scan,
)


def check_witness(cert, n, k, q):
    code = LinearCode(gf(q), cert.witness)
    assert (code.n, code.k) == (n, k)
    assert is_intersecting_supports(code).verdict
    # the systematic scan may return a code with a zero column
    if code.is_nondegenerate():
        assert is_intersecting_geometric(code).verdict
    assert code.min_distance >= k


def test_no_intersecting_5_3_3():
    exists, cert = exhaustive_exists(5, 3, 3)
    assert not exists and cert.kind == EXHAUSTIVE
    assert cert.nominal_space == 3**6


def test_intersecting_6_3_3_witness_matches_scan_order():
    exists, cert = exhaustive_exists(6, 3, 3)
    assert exists and cert.kind == WITNESS
    check_witness(cert, 6, 3, 3)
    expected = [[1, 0, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1], [0, 0, 1, 1, 1, 0]]
    assert cert.witness == expected
    assert systematic_scan(6, 3, 3)[1].witness == expected


def test_three_points_of_binary_plane():
    exists, cert = exhaustive_exists(3, 2, 2)
    assert exists
    check_witness(cert, 3, 2, 2)


def test_root_prune_below_arc_bound():
    exists, cert = exhaustive_exists(6, 4, 5)
    assert not exists and cert.note == "root pruned"


@pytest.mark.parametrize(
    "n, k, q",
    [(3, 2, 2), (4, 2, 3), (4, 3, 2), (5, 3, 2), (6, 3, 2), (4, 3, 3), (5, 3, 3), (6, 3, 3), (5, 3, 4), (5, 4, 2), (6, 4, 2), (7, 4, 2)],
)
def test_point_search_agrees_with_systematic_scan(n, k, q):
    fast, fcert = exhaustive_exists(n, k, q)
    slow, scert = systematic_scan(n, k, q)
    assert fast == slow
    if fast:
        check_witness(fcert, n, k, q)
        check_witness(scert, n, k, q)


def test_binary_k4_nonexistence_at_8_by_both_routes():
    assert not exhaustive_exists(8, 4, 2)[0]
    exists, cert = systematic_scan(8, 4, 2)
    assert not exists and cert.nodes == 2**16


@pytest.mark.parametrize("threads", [1, 3])
def test_threads_do_not_change_the_answer(threads):
    for n in (8, 9):
        base = exhaustive_exists(n, 4, 3)
        par = exhaustive_exists(n, 4, 3, threads=threads)
        assert base[0] == par[0]
        assert base[1].witness == par[1].witness


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        exhaustive_exists(12, 5, 3, budget=10)
    with pytest.raises(BudgetExceeded):
        systematic_scan(8, 4, 3, budget=10**6)


def test_degenerate_sizes():
    assert exhaustive_exists(4, 1, 5)[0]
    exists, cert = exhaustive_exists(7, 3, 2)
    assert exists and cert.note == "whole space"
    with pytest.raises(ValueError):
        exhaustive_exists(2, 3, 2)


def test_certificate_dict_omits_time_by_default():
    cert = exhaustive_exists(5, 3, 3)[1]
    assert "wall_clock" not in cert.as_dict()
    assert cert.as_dict(include_time=True)["wall_clock"] >= 0


def test_randomized_extend_is_deterministic():
    base = catalogue_entry(3, 3).code()
    a, ca = randomized_extend(base, 9, trials=20000, seed=1)
    b, cb = randomized_extend(base, 9, trials=20000, seed=1)
    assert a is not None and ca.witness == cb.witness and ca.nodes == cb.nodes
    check_witness(ca, 9, 4, 3)
    assert np.array_equal(np.array(ca.witness)[:3, :6], base.gen)


def test_randomized_extend_failure_is_reported():
    base = catalogue_entry(3, 3).code()
    code, cert = randomized_extend(base, 8, trials=500, seed=3)
    assert code is None and cert.kind == INTERVAL and cert.nodes == 500 and cert.seed == 3


def test_reported_table_cells():
    assert REPORTED_TABLE[(2, 7)] == (3, 3)
    assert REPORTED_TABLE[(8, 3)] == (19, 21)
    assert REPORTED_TABLE[(9, 2)] == (26, 26)
    assert REPORTED_TABLE[(7, 5)] == (15, 17)


# computed by build_itable with budget 2*10^5
EXACT_SMALL = {
    (2, 2): 3, (3, 2): 6, (4, 2): 9, (5, 2): 13,
    (2, 3): 3, (3, 3): 6, (4, 3): 9, (5, 3): 10,
    (2, 4): 3, (3, 4): 5, (4, 4): 8, (5, 4): 10,
    (2, 5): 3, (3, 5): 5, (4, 5): 8, (5, 5): 10,
    (2, 7): 3, (3, 7): 5, (4, 7): 7, (5, 7): 10,
    (2, 8): 3, (3, 8): 5, (4, 8): 7, (5, 8): 9,
    (2, 9): 3, (3, 9): 5, (4, 9): 7, (5, 9): 9,
}


def test_computed_values_match_reported_table(small_itable):
    for (k, q), entry in small_itable.items():
        if (k, q) in EXACT_SMALL:
            assert entry.certified, (k, q)
            assert entry.lower == EXACT_SMALL[(k, q)]
            assert REPORTED_TABLE[(k, q)] == (entry.lower, entry.upper)


def test_certified_entry_has_witness_and_nonexistence(small_itable):
    e = small_itable[(4, 3)]
    assert e.exact and e.certified
    assert e.nonexistence.kind == EXHAUSTIVE and e.nonexistence.n == 8
    code = LinearCode(gf(3), e.witness)
    assert code.n == 9 and is_intersecting_supports(code).verdict


def test_entries_respect_formula_bounds(small_itable):
    from intersecting_codes.bounds import formula_lower_bounds

    for (k, q), e in small_itable.items():
        assert e.lower <= e.upper
        assert e.lower >= max(formula_lower_bounds(k, q).values())


def test_k5_cells_exact():
    table = build_itable(5, [2, 3], budget=2 * 10**5)
    assert table[(5, 2)].lower == table[(5, 2)].upper == 13
    assert table[(5, 3)].lower == table[(5, 3)].upper == 10
    assert table[(5, 2)].certified and table[(5, 3)].certified


def test_large_cell_interval_with_reported_values():
    e = build_entry(8, 3, budget=10**4, reported=True)
    assert (e.lower, e.upper) == (19, 21)
    assert e.lower_source == "reported"
    assert e.upper_source.startswith("concatenation")


def test_large_cell_without_reported_values_stays_computed():
    e = build_entry(8, 3, budget=10**4)
    assert e.lower_source != "reported" and e.upper_source != "reported"
    assert e.lower <= 19 and e.upper >= 21


def test_explicit_witnesses_sorted_and_valid():
    ws = explicit_witnesses(4, 3)
    assert [w[0] for w in ws] == sorted(w[0] for w in ws)
    for length, _, build in ws:
        code = build()
        assert code.n == length and code.k == 4
        assert is_intersecting_supports(code).verdict


@pytest.mark.slow
def test_ternary_k4_nonexistence_at_8_by_literal_scan():
    # 3^16 systematic generators; hours of runtime
    exists, cert = systematic_scan(8, 4, 3)
    assert not exists and cert.nodes == 3**16
