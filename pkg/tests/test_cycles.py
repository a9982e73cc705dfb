"""Cycle/segment structures, window extraction, gluing, and vertex maps."""

import json
import random

import pytest

from ucycle.gf import field_make
from ucycle.geometry import DegenerateWindowError, Direction, affine, infinity
from ucycle.cycles import (
    Cycle,
    GluingError,
    Segment,
    cycle_from_json_obj,
    cycle_from_text,
    cycle_to_json_obj,
    cycle_to_text,
    equal_up_to_rotation,
    glue_cycles,
    glue_segments,
    is_transversal,
    is_valid,
    map_linear,
    rotate,
    same_windows,
    translate,
)
from ucycle.constructions import two_fiber_cycle
from ucycle.verify import all_affine_lines


def plane_cycle_22():
    # 0 -> [l1] -> u1+u2 -> [l3] -> u1 -> [l2] -> wrap, with u1=(1,0), u2=(0,1)
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


def test_plane_cycle_covers_all_six_lines():
    c, F = plane_cycle_22()
    w = c.windows()
    assert sum(w.values()) == 6
    assert all(cnt == 1 for cnt in w.values())
    assert set(w) == all_affine_lines(2, F)
    assert is_valid(c)


def test_two_vertex_cycle_duplicates_its_line():
    F = field_make(3)
    c = Cycle([affine((1, 1)), infinity((0, 1))], F)
    w = c.windows()
    assert list(w.values()) == [2]  # both windows decode to the same line
    assert not is_valid(c)


def test_degenerate_segment_rejected():
    F = field_make(3)
    with pytest.raises(ValueError):
        Segment([affine((0, 0)), affine((0, 0))], F)


def test_windows_reports_failing_index():
    F = field_make(3)
    c = Cycle([affine((0, 0)), affine((0, 1)), infinity((1, 0)), infinity((0, 1))], F)
    with pytest.raises(DegenerateWindowError) as err:
        c.windows()
    assert err.value.index == 2


def test_cycle_shape_validation():
    F = field_make(3)
    with pytest.raises(ValueError):
        Cycle([affine((0, 0))], F)
    with pytest.raises(ValueError):
        Cycle([affine((0, 0)), affine((0, 1, 2))], F)
    with pytest.raises(ValueError):
        Cycle([affine((0, 0)), infinity((2, 1))], F)  # not normalized


def test_windows_rotation_invariant():
    c, _ = plane_cycle_22()
    for k in range(len(c.vertices)):
        assert rotate(c, k).windows() == c.windows()
    assert equal_up_to_rotation(c, rotate(c, 3))


def test_transversality():
    F = field_make(3)
    c1 = two_fiber_cycle(Direction((0, 1)), Direction((1, 0)), 2, F)
    c2 = two_fiber_cycle(Direction((1, 1)), Direction((1, 2)), 2, F)
    assert is_transversal(c1, c2)
    assert not is_transversal(c1, c1)


def test_glue_single_cycle_is_rotation():
    c, _ = plane_cycle_22()
    g = glue_cycles([c], affine((1, 0)))
    assert g.vertices[0] == affine((1, 0))
    assert equal_up_to_rotation(g, c)
    assert same_windows(g, c)


def test_glue_two_triple_blocks_at_shared_infinity():
    # two 6-window blocks of the standard-plane triple construction over GF(4)
    F = field_make(2, 2)
    i1, i2, i3 = infinity((0, 1)), infinity((1, 0)), infinity((1, 1))
    blocks = []
    for u, v in ((0, 1), (2, 3)):
        blocks.append(
            Cycle([affine((u, v)), i1, affine((v, 0)), i3, affine((0, u)), i2], F)
        )
    g = glue_cycles(blocks, i1)
    assert len(g.vertices) == 12
    assert g.windows() == blocks[0].windows() + blocks[1].windows()


def test_glue_three_cycles_through_origin():
    F = field_make(5)
    dirs = [Direction((0, 1)), Direction((1, 0)), Direction((1, 1)),
            Direction((1, 2)), Direction((1, 3)), Direction((1, 4))]
    parts = [two_fiber_cycle(dirs[i], dirs[i + 1], 2, F) for i in (0, 2, 4)]
    g = glue_cycles(parts, affine((0, 0)))
    assert sum(g.windows().values()) == sum(len(p.vertices) for p in parts)
    assert g.windows() == parts[0].windows() + parts[1].windows() + parts[2].windows()


def test_glue_missing_anchor_and_overlap_rejected():
    c, F = plane_cycle_22()
    with pytest.raises(GluingError):
        glue_cycles([c], affine((0, 1)))  # vertex not on the cycle
    with pytest.raises(GluingError):
        glue_cycles([c, c], affine((0, 0)))  # self-overlap violates transversality


def cut_cycle(c, positions):
    """Split a cycle at the given sorted vertex positions into segments."""
    vs = list(c.vertices)
    segs = []
    for a, b in zip(positions, positions[1:]):
        segs.append(Segment(vs[a : b + 1], c.field))
    segs.append(Segment(vs[positions[-1] :] + vs[: positions[0] + 1], c.field))
    return segs


def test_glue_two_segments_identical_endpoints():
    F = field_make(3)
    c = two_fiber_cycle(Direction((0, 1)), Direction((1, 0)), 2, F)
    s1, s2 = cut_cycle(c, [0, 3])
    assert {s1.vertices[0], s1.vertices[-1]} == {s2.vertices[0], s2.vertices[-1]}
    g = glue_segments([s1, s2])
    assert same_windows(g, c)


def test_glue_four_segments_cycle_on_endpoints():
    F = field_make(5)
    c = two_fiber_cycle(Direction((0, 1)), Direction((1, 0)), 2, F)
    segs = cut_cycle(c, [0, 2, 5, 7])
    assert len(segs) == 4
    g = glue_segments(segs)
    assert same_windows(g, c)


def test_glue_segments_reversal_needed():
    F = field_make(3)
    c = two_fiber_cycle(Direction((0, 1)), Direction((1, 0)), 2, F)
    s1, s2 = cut_cycle(c, [0, 3])
    g = glue_segments([s1, s2.reversed()])
    assert same_windows(g, c)


def test_glue_segments_odd_multiplicity_rejected():
    F = field_make(3)
    c = two_fiber_cycle(Direction((0, 1)), Direction((1, 0)), 2, F)
    s1, s2 = cut_cycle(c, [0, 3])
    with pytest.raises(GluingError, match="odd"):
        glue_segments([s1])
    with pytest.raises(GluingError, match="odd"):
        glue_segments([s1, s2, Segment(s2.vertices[:2], F)])


def test_glue_segments_disconnected_rejected():
    F = field_make(3)
    c1 = two_fiber_cycle(Direction((0, 1)), Direction((1, 0)), 2, F)
    c2 = two_fiber_cycle(Direction((1, 1)), Direction((1, 2)), 2, F)
    # cut both cycles away from their shared vertex 0 so the endpoint graphs
    # cannot touch
    segs1 = cut_cycle(c1, [1, 3])
    segs2 = cut_cycle(c2, [1, 3])
    assert not set(s.vertices[0] for s in segs1) & set(s.vertices[0] for s in segs2)
    with pytest.raises(GluingError, match="disconnected"):
        glue_segments(segs1 + segs2)


def test_translate_identity_and_conservation():
    c, F = plane_cycle_22()
    assert translate(c, (0, 0)).vertices == c.vertices
    t = (1, 0)
    moved = translate(c, t)
    assert is_valid(moved)
    # translation permutes the full line set of the plane
    assert set(moved.windows()) == set(c.windows())
    with pytest.raises(ValueError):
        translate(c, (1, 0, 0))


def test_translate_window_property():
    F = field_make(3)
    c = two_fiber_cycle(Direction((0, 1)), Direction((1, 1)), 2, F)
    from ucycle.geometry import line_from, vadd

    t = (1, 2)
    moved = translate(c, t)
    expect = {line_from(vadd(L.base, t, F), L.dir, F) for L in c.windows()}
    assert set(moved.windows()) == expect


def test_map_linear_identity_and_scalar():
    c, F = plane_cycle_22()
    ident = ((1, 0), (0, 1))
    assert map_linear(c, ident).vertices == c.vertices
    F3 = field_make(3)
    c3 = two_fiber_cycle(Direction((0, 1)), Direction((1, 0)), 2, F3)
    doubled = map_linear(c3, ((2, 0), (0, 2)))
    # scalar maps act trivially on points at infinity
    for v, w in zip(c3.vertices, doubled.vertices):
        if v.at_infinity:
            assert v == w
    assert is_valid(doubled)


def test_map_linear_rejects_singular():
    c, F = plane_cycle_22()
    with pytest.raises(ValueError):
        map_linear(c, ((1, 1), (1, 1)))


def test_map_linear_random_invertible_preserves_validity():
    F = field_make(3)
    from ucycle.geometry import rank

    c = two_fiber_cycle(Direction((0, 1)), Direction((1, 2)), 2, F)
    rng = random.Random(7)
    done = 0
    while done < 10:
        M = tuple(tuple(rng.randrange(3) for _ in range(2)) for _ in range(2))
        if rank(M, F) != 2:
            continue
        img = map_linear(c, M)
        assert is_valid(img)
        assert sum(img.windows().values()) == sum(c.windows().values())
        done += 1


def test_json_round_trip():
    c, _ = plane_cycle_22()
    obj = cycle_to_json_obj(c)
    back = cycle_from_json_obj(json.loads(json.dumps(obj)))
    assert back.vertices == c.vertices
    assert back.field == c.field


def test_text_round_trip():
    c, F = plane_cycle_22()
    back = cycle_from_text(cycle_to_text(c), F)
    assert back.vertices == c.vertices


def test_malformed_json_rejected():
    with pytest.raises(ValueError):
        cycle_from_json_obj({"n": 2, "vertices": []})
    with pytest.raises(ValueError):
        cycle_from_json_obj(
            {"n": 2, "q": 2, "vertices": [{"type": "affine", "coords": [0]}]}
        )
    with pytest.raises(ValueError):
        cycle_from_json_obj(
            {"n": 1, "q": 2, "vertices": [{"type": "affine", "coords": [5]}] * 2}
        )
