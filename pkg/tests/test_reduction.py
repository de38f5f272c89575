from __future__ import annotations

import random
from fractions import Fraction

import pytest

from segrep.graphs import BipartiteGraph, Graph
from segrep.reduction import (
    GADGET_SIZE,
    GadgetGraph,
    NotNiceError,
    build_reduced_rep,
    extract_base_rep,
    gadget_graph,
    nice_grounded_to_stick,
    reduce_stick_to_grounded,
    stick_to_nice_grounded,
    validate_gadget,
)
from segrep.recognizers import recognize_stick
from segrep.representations import (
    GroundedLRep,
    InvalidRepresentationError,
    LShape,
    verify_grounded,
    verify_stick,
)
from segrep.sampling import random_stick_rep


def path5_bip() -> BipartiteGraph:
    g = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
    return BipartiteGraph(g, frozenset({1, 3, 5}), frozenset({2, 4}))


def single_edge_bip() -> BipartiteGraph:
    return BipartiteGraph(Graph.from_edges(2, [(1, 2)]), frozenset({1}), frozenset({2}))


# ---------------------------------------------------------------------------
# gadget structure
# ---------------------------------------------------------------------------


def test_gadget_basic_shape():
    gd = gadget_graph()
    g = gd.graph
    assert g.n == GADGET_SIZE
    assert g.degree(10) == 4
    assert g.neighbors(10) == {4, 6, 7, 9}
    # each triple vertex has exactly one helper per level
    for i, lo, up in ((1, 4, 7), (2, 5, 8), (3, 6, 9)):
        assert g.neighbors(i) & set(gd.lower) == {lo}
        assert g.neighbors(i) & set(gd.upper) == {up}
    # none of x's neighbors touches the hub vertex
    assert all(not g.has_edge(w, 10) for w in g.neighbors(gd.x_vertex))


def test_gadget_validation_properties():
    result = validate_gadget()
    assert result.ok
    assert result.class_count == 2
    assert len(result.orders) == 4
    assert result.universal_orders > 0 and result.universal_rightmost
    # d/f swap symmetry: in every order 2 sits between 1 and 3
    for order in result.orders:
        triple = [v for v in order if v in (1, 2, 3)]
        assert triple[1] == 2 and {triple[0], triple[2]} == {1, 3}


# ---------------------------------------------------------------------------
# the reduction
# ---------------------------------------------------------------------------


def test_reduction_counts_for_path():
    red = reduce_stick_to_grounded(path5_bip())
    assert red.h_graph.n == 3 + 2 * GADGET_SIZE  # 23 vertices
    # 19 gadget edges per B-vertex plus 10 universal edges per base edge
    assert len(red.h_graph.edges) == 19 * 2 + 10 * 4


def test_reduction_no_edges():
    g = BipartiteGraph(Graph.from_edges(3, []), frozenset({1, 2}), frozenset({3}))
    red = reduce_stick_to_grounded(g)
    assert red.h_graph.n == 2 + GADGET_SIZE
    assert len(red.h_graph.edges) == 19


def test_reduction_universal_edges():
    red = reduce_stick_to_grounded(single_edge_bip())
    h = red.h_graph
    a = red.a_map[1]
    assert all(h.has_edge(a, w) for w in red.gadget_map[2])
    assert h.degree(a) == GADGET_SIZE


# ---------------------------------------------------------------------------
# stick -> nice grounded
# ---------------------------------------------------------------------------


def test_stick_to_nice_grounded_path():
    g = path5_bip()
    rep = recognize_stick(g)
    assert rep is not None
    nice = stick_to_nice_grounded(rep, g)
    assert verify_grounded(nice, g.graph).valid
    # nice: B anchors precede all their A neighbors
    for a, b in ((1, 2), (3, 2), (3, 4), (5, 4)):
        assert nice[b].anchor < nice[a].anchor


def test_stick_to_nice_grounded_k2():
    g = single_edge_bip()
    rep = recognize_stick(g)
    nice = stick_to_nice_grounded(rep, g)
    assert verify_grounded(nice, g.graph).valid


def test_stick_to_nice_grounded_random():
    rng = random.Random(41)
    for _ in range(60):
        rep, g = random_stick_rep(rng, rng.randint(1, 8))
        nice = stick_to_nice_grounded(rep, g)
        assert verify_grounded(nice, g.graph).valid


def test_stick_to_nice_grounded_rejects_invalid():
    g = single_edge_bip()
    rep = recognize_stick(g)
    wrong = BipartiteGraph(Graph.from_edges(2, []), frozenset({1}), frozenset({2}))
    with pytest.raises(InvalidRepresentationError):
        stick_to_nice_grounded(rep, wrong)


# ---------------------------------------------------------------------------
# nice grounded -> stick
# ---------------------------------------------------------------------------


def test_round_trip_stick_representations():
    rng = random.Random(43)
    for _ in range(60):
        rep, g = random_stick_rep(rng, rng.randint(1, 8))
        nice = stick_to_nice_grounded(rep, g)
        back = nice_grounded_to_stick(nice, g)
        assert verify_stick(back, g).valid


def test_nice_grounded_to_stick_single_vertex():
    g = BipartiteGraph(Graph.from_edges(1, []), frozenset({1}), frozenset())
    rep = GroundedLRep([LShape(1, 1, 1, 0)])
    out = nice_grounded_to_stick(rep, g)
    assert verify_stick(out, g).valid


def test_nice_grounded_to_stick_rejects_non_nice():
    # edge realized with the A anchor left of the B anchor: not nice
    g = single_edge_bip()
    rep = GroundedLRep([
        LShape(1, 1, 5, 0),                      # A vertex, anchored first
        LShape(2, 2, 3, Fraction(1, 2)),          # B reaches back over it
    ])
    assert verify_grounded(rep, g.graph).valid
    with pytest.raises(NotNiceError):
        nice_grounded_to_stick(rep, g)


def test_nice_grounded_handles_overhanging_arms():
    # B horizontal overhangs a non-neighbor A vertical; the induction must
    # not create a crossing when the A height rises to its anchor.
    g = BipartiteGraph(Graph.from_edges(2, []), frozenset({1}), frozenset({2}))
    rep = GroundedLRep([
        LShape(1, 1, Fraction(1, 4), Fraction(1, 2)),
        LShape(2, 2, Fraction(1, 2), Fraction(1, 4)),
    ])
    assert verify_grounded(rep, g.graph).valid
    out = nice_grounded_to_stick(rep, g)
    assert verify_stick(out, g).valid


# ---------------------------------------------------------------------------
# witness construction for the reduced graph
# ---------------------------------------------------------------------------


def test_build_reduced_rep_path():
    g = path5_bip()
    red = reduce_stick_to_grounded(g)
    stick = recognize_stick(g)
    rep = build_reduced_rep(stick, g, red)
    assert verify_grounded(rep, red.h_graph).valid
    assert len(rep) == 23


def test_build_reduced_rep_single_edge():
    g = single_edge_bip()
    red = reduce_stick_to_grounded(g)
    rep = build_reduced_rep(recognize_stick(g), g, red)
    assert verify_grounded(rep, red.h_graph).valid
    assert len(rep) == 11


def test_build_reduced_rep_edgeless():
    g = BipartiteGraph(Graph.from_edges(3, []), frozenset({1}), frozenset({2, 3}))
    red = reduce_stick_to_grounded(g)
    rep = build_reduced_rep(recognize_stick(g), g, red)
    assert verify_grounded(rep, red.h_graph).valid


def test_build_reduced_rep_random():
    rng = random.Random(47)
    for _ in range(15):
        rep, g = random_stick_rep(rng, rng.randint(1, 6))
        red = reduce_stick_to_grounded(g)
        out = build_reduced_rep(rep, g, red)
        assert verify_grounded(out, red.h_graph).valid


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------


def test_extract_round_trip():
    g = path5_bip()
    red = reduce_stick_to_grounded(g)
    rep = build_reduced_rep(recognize_stick(g), g, red)
    base = extract_base_rep(rep, red)
    assert verify_grounded(base, g.graph).valid
    back = nice_grounded_to_stick(base, g)
    assert verify_stick(back, g).valid


def test_extract_rejects_corrupted():
    g = single_edge_bip()
    red = reduce_stick_to_grounded(g)
    rep = build_reduced_rep(recognize_stick(g), g, red)
    shapes = [LShape(s.vertex, s.anchor, s.height, s.left_extent) for s in rep]
    # push the universal vertex's horizontal out of everything it crossed
    broken = [s if s.vertex != red.a_map[1]
              else LShape(s.vertex, s.anchor, s.height, s.anchor - Fraction(1, 100))
              for s in shapes]
    with pytest.raises(InvalidRepresentationError):
        extract_base_rep(GroundedLRep(broken), red)
