import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intersecting_codes.constructions import catalogue_entry, rs_arc_code, sparse_tetrahedron
from intersecting_codes.errors import BudgetExceeded, DegenerateCode
from intersecting_codes.finite_field import gf
from intersecting_codes.linalg_codes import normalized_vectors, rank
from intersecting_codes.projective_geometry import (
    codim2_subspaces,
    gaussian_binomial,
    has_avoidance_property,
    is_inclusion_minimal_n2c,
    is_minimal_n2c,
    is_non_2_cohyperplanar,
    is_t_cohyperplanar,
    line_points,
    make_line,
    system_from_generator,
    system_from_points,
    system_of_code,
    three_points_per_line,
)


def on(f, normal, point):
    acc = 0
    for a, b in zip(normal, point):
        acc = f.add(acc, f.mul(int(a), int(b)))
    return acc == 0


def brute_2_cohyperplanar(f, points, k):
    normals = [tuple(r) for r in normalized_vectors(f.q, k).tolist()]
    for h1, h2 in itertools.combinations_with_replacement(normals, 2):
        if all(on(f, h1, p) or on(f, h2, p) for p in points):
            return True
    return False


def plane_lines_gf2():
    f = gf(2)
    pts = normalized_vectors(2, 3)
    lines = {}
    for a, b in itertools.combinations(pts, 2):
        ln = make_line(f, a, b)
        lines.setdefault(frozenset(map(tuple, line_points(f, ln).tolist())), ln)
    return f, sorted(lines.values())


def test_frame_system():
    s = system_from_generator(gf(2), np.eye(3, dtype=int))
    assert s.size == 3 and s.n == 3


def test_catalogue_q3k3_has_six_distinct_points():
    s = system_of_code(catalogue_entry(3, 3).code())
    assert s.size == 6 and (s.multiplicity == 1).all()


def test_proportional_columns_merge():
    s = system_from_generator(gf(3), [[1, 2, 0], [0, 0, 1]])
    assert s.size == 2
    assert sorted(s.multiplicity.tolist()) == [1, 2]
    assert s.n == 3


def test_generator_errors():
    with pytest.raises(DegenerateCode):
        system_from_generator(gf(3), [[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        system_from_generator(gf(3), [[1, 2], [2, 1]])


@pytest.mark.parametrize("k, q", [(3, 2), (3, 3), (4, 3), (4, 4), (3, 7)])
def test_2k_minus_2_points_are_2_cohyperplanar(k, q):
    rng = np.random.default_rng(k * 10 + q)
    f = gf(q)
    for _ in range(10):
        pts = rng.integers(0, q, size=(2 * k - 2, k))
        pts = pts[pts.any(axis=1)]
        if not len(pts):
            continue
        assert is_t_cohyperplanar(system_from_points(f, pts), 2).covered


def test_sparse_tetrahedron_pg33_is_non_2_cohyperplanar():
    s = system_of_code(sparse_tetrahedron(4, 3))
    assert not is_t_cohyperplanar(s, 2).covered
    assert is_minimal_n2c(s).minimal
    assert is_inclusion_minimal_n2c(s)


def test_rs_arc_is_non_2_cohyperplanar_and_minimal():
    s = system_of_code(rs_arc_code(3, 7))
    assert not is_t_cohyperplanar(s, 2).covered
    res = is_minimal_n2c(s)
    assert res.minimal and res.point is not None and len(res.hyperplanes) == 2
    assert is_inclusion_minimal_n2c(s)


def test_minimality_witness_covers_remaining_points():
    s = system_of_code(rs_arc_code(4, 7))
    res = is_minimal_n2c(s)
    f = s.ctx
    rest = [p for p in s.point_tuples() if p != res.point]
    assert all(on(f, res.hyperplanes[0], p) or on(f, res.hyperplanes[1], p) for p in rest)


def test_minimality_rejects_covered_input():
    s = system_from_points(gf(3), np.eye(3, dtype=int))
    with pytest.raises(ValueError):
        is_minimal_n2c(s)


def test_one_cohyperplanar_iff_not_spanning():
    f = gf(3)
    flat = system_from_points(f, [[1, 0, 0], [0, 1, 0], [1, 1, 0]])
    assert is_t_cohyperplanar(flat, 1).covered and not flat.spans()
    frame = system_from_points(f, np.eye(3, dtype=int))
    assert not is_t_cohyperplanar(frame, 1).covered and frame.spans()


def test_cover_witness_is_valid():
    f = gf(5)
    s = system_from_points(f, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]])
    res = is_t_cohyperplanar(s, 2)
    assert res.covered
    assert all(any(on(f, h, p) for h in res.hyperplanes) for p in s.point_tuples())


def test_three_cohyperplanar_general_t():
    s = system_of_code(catalogue_entry(3, 3).code())
    assert not is_t_cohyperplanar(s, 2).covered
    res = is_t_cohyperplanar(s, 3)
    assert res.covered and len(res.hyperplanes) == 3


def test_cover_budget():
    s = system_of_code(catalogue_entry(4, 4).code())
    with pytest.raises(BudgetExceeded):
        is_t_cohyperplanar(s, 3, budget=100)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 3), (3, 3), (4, 3), (2, 4), (5, 3)]), st.integers(0, 2**32 - 1))
def test_pair_cover_matches_brute_force(qk, seed):
    q, k = qk
    f = gf(q)
    rng = np.random.default_rng(seed)
    pts = rng.integers(0, q, size=(int(rng.integers(1, 9)), k))
    pts = pts[pts.any(axis=1)]
    if not len(pts):
        return
    s = system_from_points(f, pts)
    assert is_t_cohyperplanar(s, 2).covered == brute_2_cohyperplanar(f, s.point_tuples(), k)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(0, 2**32 - 1))
def test_adding_points_preserves_non_2_cohyperplanarity(q, seed):
    rng = np.random.default_rng(seed)
    s = system_of_code(sparse_tetrahedron(3, q))
    for _ in range(3):
        p = rng.integers(0, q, size=3)
        if not p.any():
            continue
        s = s.with_point(p)
        assert is_non_2_cohyperplanar(s)


@pytest.mark.parametrize("q, k", [(3, 3), (4, 3), (5, 4), (7, 5)])
def test_distance_from_hyperplane_counts(q, k):
    code = rs_arc_code(k, q) if 2 * k - 1 <= q + 1 else sparse_tetrahedron(k, q)
    s = system_of_code(code)
    assert s.min_distance() == code.min_distance


def test_gaussian_binomial_and_subspace_enumeration():
    assert gaussian_binomial(4, 2, 2) == 35
    subs = codim2_subspaces(gf(7), 3)
    assert len(subs) == gaussian_binomial(3, 2, 7) == 57
    for m in subs[:20]:
        assert rank(gf(7), m) == 2


def test_avoidance_on_the_fano_plane():
    f, lines = plane_lines_gf2()
    assert len(lines) == 7
    assert has_avoidance_property(f, lines, 3)
    assert not has_avoidance_property(f, lines[:1], 3)
    assert not has_avoidance_property(f, lines[:2], 3)


def test_empty_line_set_has_no_avoidance():
    assert not has_avoidance_property(gf(3), [], 3)


def test_three_points_per_line_on_fano_plane_is_whole_plane():
    f, lines = plane_lines_gf2()
    s = three_points_per_line(f, lines)
    assert s.size == 7
    assert is_non_2_cohyperplanar(s)


def test_line_points_count():
    f = gf(5)
    ln = make_line(f, [1, 0, 0], [0, 1, 2])
    pts = line_points(f, ln)
    assert len({tuple(p) for p in pts.tolist()}) == 6


def test_make_line_rejects_equal_points():
    with pytest.raises(ValueError):
        make_line(gf(3), [1, 2, 0], [2, 1, 0])
