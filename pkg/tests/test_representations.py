from __future__ import annotations

import random
from fractions import Fraction

import pytest

from segrep.geometry import Segment
from segrep.graphs import BipartiteGraph, Graph
from segrep.representations import (
    GridRep,
    GroundedLRep,
    InvalidRepresentationError,
    LShape,
    StickRep,
    StickSegment,
    VertexMismatchError,
    normalize_grounded,
    normalize_stabgig,
    parse_representation,
    serialize_representation,
    verify_grounded,
    verify_stabgig,
    verify_stick,
)
from segrep.sampling import random_grounded_rep, random_stabgig_rep, random_stick_rep


def path5() -> Graph:
    return Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5)])


def nice_path5_rep() -> GroundedLRep:
    # a1=1, b1=2, a2=3, b2=4, a3=5 along the path; B={2,4} anchored first.
    return GroundedLRep([
        LShape(1, Fraction(2), Fraction(1), Fraction(1, 4)),
        LShape(2, Fraction(1), Fraction(5), Fraction(1, 2)),
        LShape(3, Fraction(4), Fraction(2), Fraction(3, 4)),
        LShape(4, Fraction(3), Fraction(4), Fraction(5, 2)),
        LShape(5, Fraction(5), Fraction(3), Fraction(5, 2)),
    ])


# ---------------------------------------------------------------------------
# verify_grounded
# ---------------------------------------------------------------------------


def test_grounded_path_fixture_valid():
    report = verify_grounded(nice_path5_rep(), path5())
    assert report.valid, report.summary()


def test_grounded_single_shape_k1():
    rep = GroundedLRep([LShape(1, 1, 1, 0)])
    assert verify_grounded(rep, Graph.from_edges(1, [])).valid


def test_grounded_nested_shapes_miss_edge():
    rep = GroundedLRep([
        LShape(1, Fraction(1), Fraction(5), Fraction(0)),
        LShape(2, Fraction(2), Fraction(3), Fraction(3, 2)),
    ])
    report = verify_grounded(rep, Graph.from_edges(2, [(1, 2)]))
    assert not report.valid
    assert report.missing == [(1, 2)]


def test_grounded_spurious_reported():
    rep = GroundedLRep([
        LShape(1, Fraction(1), Fraction(5), Fraction(0)),
        LShape(2, Fraction(2), Fraction(3), Fraction(1, 2)),
    ])
    report = verify_grounded(rep, Graph.from_edges(2, []))
    assert report.spurious == [(1, 2)]


def test_grounded_vertex_mismatch():
    rep = GroundedLRep([LShape(1, 1, 1, 0)])
    with pytest.raises(VertexMismatchError):
        verify_grounded(rep, Graph.from_edges(2, []))


def test_grounded_rejects_duplicate_anchor():
    with pytest.raises(InvalidRepresentationError):
        GroundedLRep([LShape(1, 1, 1, 0), LShape(2, 1, 2, 0)])
    with pytest.raises(InvalidRepresentationError):
        GroundedLRep([LShape(1, 1, 1, 0), LShape(2, 2, 1, 0)])


# ---------------------------------------------------------------------------
# verify_stick
# ---------------------------------------------------------------------------


def k2_bip() -> BipartiteGraph:
    return BipartiteGraph(Graph.from_edges(2, [(1, 2)]), frozenset({1}), frozenset({2}))


def test_stick_k2_valid():
    rep = StickRep({1: StickSegment(2, 1)}, {2: StickSegment(1, 1)})
    assert verify_stick(rep, k2_bip()).valid


def test_stick_p3_valid():
    g = BipartiteGraph(Graph.from_edges(3, [(1, 2), (2, 3)]),
                       frozenset({1, 3}), frozenset({2}))
    rep = StickRep({1: StickSegment(2, 1), 3: StickSegment(3, 2)},
                   {2: StickSegment(1, 2)})
    assert verify_stick(rep, g).valid


def test_stick_vertical_first_misses_edge():
    rep = StickRep({1: StickSegment(1, 5)}, {2: StickSegment(2, 5)})
    report = verify_stick(rep, k2_bip())
    assert report.missing == [(1, 2)]


def test_stick_orientation_mismatch_reported():
    rep = StickRep({2: StickSegment(2, 1)}, {1: StickSegment(1, 1)})
    report = verify_stick(rep, k2_bip())
    assert not report.valid and report.violations


# ---------------------------------------------------------------------------
# verify_stabgig
# ---------------------------------------------------------------------------


def c4() -> Graph:
    return Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


def c4_grid_rep() -> GridRep:
    return GridRep(
        {1: Segment.horizontal(1, 1, 4), 3: Segment.horizontal(3, 2, 4)},
        {2: Segment.vertical(2, 1, 3), 4: Segment.vertical(4, 1, 4)},
    )


def test_stabgig_c4_valid():
    assert verify_stabgig(c4_grid_rep(), c4()).valid


def test_stabgig_unstabbed_reported():
    rep = GridRep({1: Segment.horizontal(5, 0, 3)}, {})
    report = verify_stabgig(rep, Graph.from_edges(1, []))
    assert any("not stabbed" in v for v in report.violations)


def test_stabgig_same_orientation_contact():
    rep = GridRep(
        {1: Segment.horizontal(1, 0, 2), 2: Segment.horizontal(1, 1, 3)},
        {},
    )
    report = verify_stabgig(rep, Graph.from_edges(2, []))
    assert any("same-orientation" in v for v in report.violations)


# ---------------------------------------------------------------------------
# normalize_grounded
# ---------------------------------------------------------------------------


def test_normalize_grounded_ranks_monotone():
    rep = GroundedLRep([
        LShape(1, Fraction(1, 2), 1, Fraction(0)),
        LShape(2, Fraction(7, 3), 2, Fraction(2)),
        LShape(3, Fraction(9), 3, Fraction(8)),
    ])
    out = normalize_grounded(rep)
    assert [out[v].anchor for v in (1, 2, 3)] == [2, 4, 6]
    assert out.realized_edges() == rep.realized_edges()


def test_normalize_grounded_idempotent():
    rng = random.Random(3)
    for _ in range(20):
        rep, _ = random_grounded_rep(rng, rng.randint(1, 7))
        once = normalize_grounded(rep)
        twice = normalize_grounded(once)
        assert serialize_representation(once) == serialize_representation(twice)


def test_normalize_grounded_preserves_graph_and_bounds():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 8)
        rep, g = random_grounded_rep(rng, n)
        out = normalize_grounded(rep)
        assert verify_grounded(out, g).valid
        for s in out:
            for value in (s.anchor, s.height, s.left_extent):
                assert value.denominator == 1 and 1 <= value <= 2 * n


def test_normalize_grounded_preserves_touch():
    # left extent of shape 2 exactly on shape 1's vertical: touch is an edge
    rep = GroundedLRep([
        LShape(1, Fraction(1), Fraction(5), Fraction(0)),
        LShape(2, Fraction(2), Fraction(3), Fraction(1)),
    ])
    assert rep.realized_edges() == {(1, 2)}
    out = normalize_grounded(rep)
    assert out.realized_edges() == {(1, 2)}


# ---------------------------------------------------------------------------
# normalize_stabgig
# ---------------------------------------------------------------------------


def test_normalize_stabgig_c4_integer_grid():
    rep = GridRep(
        {1: Segment.horizontal(Fraction(1, 5), Fraction(1, 10), 6),
         3: Segment.horizontal(Fraction(27, 10), Fraction(7, 5), Fraction(11, 2))},
        {2: Segment.vertical(Fraction(3, 2), Fraction(1, 10), Fraction(14, 5)),
         4: Segment.vertical(5, Fraction(3, 20), Fraction(11, 2))},
    )
    assert verify_stabgig(rep, c4()).valid
    out = normalize_stabgig(rep)
    assert verify_stabgig(out, c4()).valid
    for v in out.vertices():
        seg = out.segment(v)
        for val in (seg.p1.x, seg.p1.y, seg.p2.x, seg.p2.y):
            assert 1 <= val <= 4
    assert out.segment(1) == Segment.horizontal(1, 1, 4)


def test_normalize_stabgig_isolated_widened():
    rep = GridRep({1: Segment.horizontal(2, 0, 5)}, {})
    out = normalize_stabgig(rep)
    assert out.segment(1) == Segment.horizontal(1, Fraction(1, 2), Fraction(3, 2))


def test_normalize_stabgig_idempotent_and_preserving():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randint(1, 8)
        rep, g = random_stabgig_rep(rng, n)
        out = normalize_stabgig(rep)
        assert verify_stabgig(out, g).valid
        again = normalize_stabgig(out)
        assert serialize_representation(out) == serialize_representation(again)


def test_normalize_stabgig_rejects_unstabbed():
    rep = GridRep({1: Segment.horizontal(5, 0, 3)}, {})
    with pytest.raises(InvalidRepresentationError):
        normalize_stabgig(rep)


# ---------------------------------------------------------------------------
# file round trips
# ---------------------------------------------------------------------------


def test_grounded_file_round_trip():
    rep = nice_path5_rep()
    text = serialize_representation(rep)
    back = parse_representation(text)
    assert serialize_representation(back) == text


def test_stick_file_round_trip():
    rng = random.Random(7)
    rep, _ = random_stick_rep(rng, 6)
    text = serialize_representation(rep)
    assert serialize_representation(parse_representation(text)) == text


def test_stabgig_file_round_trip():
    rng = random.Random(9)
    rep, _ = random_stabgig_rep(rng, 6)
    text = serialize_representation(rep)
    assert serialize_representation(parse_representation(text)) == text


def test_parse_representation_errors():
    from segrep.representations import RepresentationFormatError

    for bad in ("", "rep nope 1\n", "s 1 1/1 1/1 0/1\n",
                "rep grounded-l 2\ns 1 1/1 1/1 0/1\n",
                "rep grounded-l 1\ns 1 1/1\n"):
        with pytest.raises(RepresentationFormatError):
            parse_representation(bad)


def test_random_reps_are_valid_for_their_graphs():
    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(1, 8)
        grep, gg = random_grounded_rep(rng, n)
        assert verify_grounded(grep, gg).valid
        srep, sg = random_stick_rep(rng, n)
        assert verify_stick(srep, sg).valid
        trep, tg = random_stabgig_rep(rng, n)
        assert verify_stabgig(trep, tg).valid
