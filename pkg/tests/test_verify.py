"""Oracle layer: line enumeration, coverage reports, nesting scan."""

import json

import numpy as np
import pytest

from ucycle.gf import field_from_order, field_make
from ucycle.geometry import Direction, affine, fiber, infinity
from ucycle.cycles import Cycle
from ucycle.constructions import triple_base_cycle, two_fiber_cycle, universal_cycle
from ucycle.grassmann import GrassCycle, embed_cycle, nested_cycles, singer_cycle
from ucycle.verify import (
    MAX_REPORT_ITEMS,
    all_2subspaces,
    all_affine_lines,
    _all_line_keys,
    _unpack_line_key,
    _verify_affine_np,
    affine_line_count,
    gaussian_binomial_2,
    verify_affine,
    verify_grassmann,
    verify_nesting,
    verify_subset,
)


def plane_cycle_22():
    F = field_make(2)
    verts = [
        affine((0, 0)),
        infinity((1, 0)),
        affine((1, 1)),
        infinity((1, 1)),
        affine((1, 0)),
        infinity((0, 1)),
    ]
    return Cycle(verts, F), F


def test_line_counts():
    assert len(all_affine_lines(2, field_make(2))) == 6
    assert len(all_affine_lines(2, field_make(3))) == 12
    assert len(all_affine_lines(3, field_make(2))) == 28


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4)])
def test_line_count_formula(n, q):
    F = field_from_order(q)
    assert len(all_affine_lines(n, F)) == affine_line_count(n, q)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (3, 3), (2, 5), (2, 4)])
def test_vectorized_keys_match_pure_pairs(n, q):
    F = field_from_order(q)
    pure = all_affine_lines(n, F)
    keys = _all_line_keys(n, F)
    assert len(keys) == len(np.unique(keys)) == len(pure)
    assert {_unpack_line_key(int(k), n, F) for k in keys} == pure


def test_vectorized_report_matches_pure_report():
    F = field_make(3)
    c = universal_cycle(3, F)
    pure = verify_affine(c, 3, F)
    fast = _verify_affine_np(c, 3, F)
    assert pure.passed and fast.passed
    assert (pure.expected_count, pure.found_count) == (fast.expected_count, fast.found_count)
    # and on a tampered cycle both report the same failure counts
    broken = Cycle(c.vertices[:-1], F)
    pure = verify_subset(broken, all_affine_lines(3, F))
    fast = _verify_affine_np(broken, 3, F)
    assert not pure.passed and not fast.passed
    assert pure.missing_total == fast.missing_total
    assert pure.duplicated_total == fast.duplicated_total
    assert set(pure.missing) == set(fast.missing)


def test_plane_cycle_passes():
    c, F = plane_cycle_22()
    rep = verify_affine(c, 2, F)
    assert rep.passed
    assert rep.expected_count == rep.found_count == 6


def test_vertex_deleted_cycle_fails_with_missing():
    c, F = plane_cycle_22()
    broken = Cycle(c.vertices[:-1], F)
    rep = verify_affine(broken, 2, F)
    assert not rep.passed
    assert rep.missing_total > 0
    assert rep.found_count == 5


def test_universal_33_117_lines():
    F = field_make(3)
    rep = verify_affine(universal_cycle(3, F), 3, F)
    assert rep.passed
    assert rep.expected_count == 117


def test_verify_affine_rejects_wrong_frame():
    c, F = plane_cycle_22()
    with pytest.raises(ValueError):
        verify_affine(c, 3, F)
    with pytest.raises(ValueError):
        verify_affine(c, 2, field_make(3))


def test_verify_subset_two_fiber():
    F = field_from_order(4)
    d1, d2 = Direction((0, 1)), Direction((1, 3))
    c = two_fiber_cycle(d1, d2, 2, F)
    expected = set(fiber(d1, 2, F)) | set(fiber(d2, 2, F))
    assert verify_subset(c, expected).passed
    # a wrong target set fails with unexpected lines
    rep = verify_subset(c, set(fiber(d1, 2, F)))
    assert not rep.passed
    assert rep.unexpected_total == 4


def test_verify_subset_triple_q5():
    F = field_make(5)
    c = triple_base_cycle(F)
    expected = set()
    for d in (Direction((0, 1)), Direction((1, 0)), Direction((1, 1))):
        expected |= set(fiber(d, 2, F))
    rep = verify_subset(c, expected)
    assert rep.passed and rep.expected_count == 15


def test_verify_subset_empty_trivially_passes():
    rep = verify_subset([], [])
    assert rep.passed
    assert rep.expected_count == rep.found_count == 0


def test_verify_subset_reports_degenerate_windows():
    F = field_make(3)
    vs = [affine((0, 0)), infinity((0, 1)), infinity((1, 0)), affine((1, 0))]
    rep = verify_subset(vs, [], F)
    assert not rep.passed
    assert rep.degenerate_windows == [1]


def test_all_2subspaces_counts():
    assert len(all_2subspaces(3, field_make(2))) == 7
    assert len(all_2subspaces(4, field_make(2))) == 35
    assert len(all_2subspaces(4, field_make(3))) == 130
    assert gaussian_binomial_2(4, 2) == 35
    assert gaussian_binomial_2(4, 3) == 130


def test_verify_grassmann_singer_q3():
    F = field_make(3)
    rep = verify_grassmann(singer_cycle(F), 3, F)
    assert rep.passed
    assert rep.expected_count == 13


def test_verify_nesting_basic():
    F = field_make(2)
    u3, u4 = nested_cycles(4, F)
    assert verify_nesting(embed_cycle(u3, 4), u4)
    assert verify_nesting(u4, u4)  # a rotated copy of outer within itself
    rot = GrassCycle(u4.vertices[5:] + u4.vertices[:5], F)
    assert verify_nesting(rot, u4)
    unrelated = GrassCycle([(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0)], F)
    assert not verify_nesting(unrelated, u4)
    with pytest.raises(ValueError):
        verify_nesting(u3, u4)  # dimension mismatch


def test_report_truncation_at_32():
    F = field_make(3)
    c = two_fiber_cycle(Direction((0, 0, 1)), Direction((0, 1, 0)), 3, F)
    rep = verify_subset(c, all_affine_lines(3, F))
    assert rep.missing_total == 117 - 18
    assert len(rep.missing) == MAX_REPORT_ITEMS
    assert not rep.passed


def test_report_json_serializable():
    c, F = plane_cycle_22()
    rep = verify_affine(Cycle(c.vertices[:-1], F), 2, F)
    text = json.dumps(rep.to_json_obj(), sort_keys=True)
    back = json.loads(text)
    assert back["passed"] is False
    assert back["missing_total"] == rep.missing_total

    F2 = field_make(2)
    grep = verify_grassmann(singer_cycle(F2), 3, F2)
    json.dumps(grep.to_json_obj())
