"""Stick-to-grounded-L reduction pipeline.

The reduction wraps every horizontal-side vertex of a bipartite graph in a
rigid 10-vertex gadget whose grounded representations are unique up to one
label swap; a vertex universal to a gadget copy is then forced to anchor to
the gadget's right, which pins down shape orientations and makes the
grounded representations of the reduced graph mimic stick representations
of the base graph.  Both constructive conversions between stick and nice
grounded representations live here as well.

Gadget structure (vertices 1..10, designated vertex x = 2):

* triangles on the triple {1,2,3}, the lower helpers {4,5,6}, and the upper
  helpers {7,8,9};
* matchings i ~ i+3 and i ~ i+6 pairing each triple vertex with one helper
  per level;
* vertex 10 adjacent to the four helpers of 1 and 3 (none of 2's).

validate_gadget() re-derives the rigidity facts by exhaustive search: the
gadget admits exactly two grounded representations up to the 1<->3 swap
(four anchor orders in total, always with 2 between 1 and 3), and adding a
universal vertex forces its anchor to the far right in every one.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .graphs import BipartiteGraph, Graph
from .recognizers import check_anchor_order, enumerate_grounded_orders
from .representations import (
    GroundedLRep,
    InvalidRepresentationError,
    LShape,
    StickRep,
    StickSegment,
    normalize_grounded,
    verify_grounded,
    verify_stick,
)

HALF = Fraction(1, 2)

GADGET_SIZE = 10
GADGET_X = 2
GADGET_TRIPLE = (1, 2, 3)
GADGET_LOWER = (4, 5, 6)
GADGET_UPPER = (7, 8, 9)

_GADGET_EDGES = (
    (1, 2), (1, 3), (2, 3),
    (4, 5), (4, 6), (5, 6),
    (7, 8), (7, 9), (8, 9),
    (1, 4), (2, 5), (3, 6),
    (1, 7), (2, 8), (3, 9),
    (10, 4), (10, 6), (10, 7), (10, 9),
)

# the d/f swap: relabels 1<->3 together with their helpers
_GADGET_SWAP = {1: 3, 3: 1, 4: 6, 6: 4, 7: 9, 9: 7}


class NotNiceError(ValueError):
    """A representation that was required to be nice is not."""


@dataclass(frozen=True)
class GadgetGraph:
    graph: Graph
    x_vertex: int = GADGET_X
    triple: tuple[int, ...] = GADGET_TRIPLE
    lower: tuple[int, ...] = GADGET_LOWER
    upper: tuple[int, ...] = GADGET_UPPER


def gadget_graph() -> GadgetGraph:
    return GadgetGraph(Graph.from_edges(GADGET_SIZE, _GADGET_EDGES))


@dataclass(frozen=True)
class ReductionOutput:
    """Reduced graph plus the vertex provenance maps."""

    base: BipartiteGraph
    h_graph: Graph
    a_map: Mapping[int, int]
    gadget_map: Mapping[int, tuple[int, ...]]

    def x_of(self, b: int) -> int:
        return self.gadget_map[b][GADGET_X - 1]


def reduce_stick_to_grounded(g: BipartiteGraph) -> ReductionOutput:
    """One plain vertex per A-vertex, one gadget copy per B-vertex, and for
    every base edge ab an edge from a to all ten vertices of b's gadget."""
    a_map: dict[int, int] = {}
    gadget_map: dict[int, tuple[int, ...]] = {}
    next_id = 0
    for a in sorted(g.part_a):
        next_id += 1
        a_map[a] = next_id
    edges: list[tuple[int, int]] = []
    for b in sorted(g.part_b):
        ids = tuple(range(next_id + 1, next_id + GADGET_SIZE + 1))
        next_id += GADGET_SIZE
        gadget_map[b] = ids
        edges.extend((ids[u - 1], ids[v - 1]) for u, v in _GADGET_EDGES)
        for a in g.graph.neighbors(b):
            edges.extend((a_map[a], w) for w in ids)
    return ReductionOutput(
        base=g,
        h_graph=Graph.from_edges(next_id, edges),
        a_map=a_map,
        gadget_map=gadget_map,
    )


# ---------------------------------------------------------------------------
# Stick representation -> nice grounded representation
# ---------------------------------------------------------------------------


def stick_to_nice_grounded(rep: StickRep, g: BipartiteGraph) -> GroundedLRep:
    """Turn a valid stick representation into a nice grounded one.

    The incoming sticks are first canonicalized (ground order to integer
    positions, reaches to the farthest needed neighbor plus a dithered half
    unit) so that all endpoints are distinct; then each stick grows an
    unused arm, the arms are extended to a common ground, and the whole
    picture is rotated a quarter turn.  In coordinates that collapses to:
    an A stick at position t with length L becomes the L-shape
    (anchor=t, height=t, extent=t-L); a B stick becomes
    (anchor=t, height=t+L, extent=t-1/2).
    """
    report = verify_stick(rep, g)
    if not report.valid:
        raise InvalidRepresentationError(f"input stick rep invalid: {report.summary()}")
    n = len(rep.vertices())
    order = rep.ground_order()
    pos = {v: Fraction(i + 1) for i, v in enumerate(order)}
    shapes = []
    for v in order:
        dists = [abs(pos[v] - pos[w]) for w in g.graph.neighbors(v)]
        length = (max(dists) if dists else 0) + HALF + Fraction(v, 4 * n)
        if v in rep.verticals:
            shapes.append(LShape(v, pos[v], pos[v], pos[v] - length))
        else:
            shapes.append(LShape(v, pos[v], pos[v] + length, pos[v] - HALF))
    out = GroundedLRep(shapes)
    out_report = verify_grounded(out, g.graph)
    if not out_report.valid:  # pragma: no cover - construction guard
        raise AssertionError(f"conversion broke the graph: {out_report.summary()}")
    _check_nice(out, g)
    return out


def _check_nice(rep: GroundedLRep, g: BipartiteGraph) -> None:
    """Nice = every edge has its B endpoint anchored before its A endpoint,
    so A-shapes intersect only on horizontals and B-shapes only on verticals."""
    bad = []
    for u, v in sorted(g.graph.edges):
        a, b = (u, v) if u in g.part_a else (v, u)
        if rep[a].anchor < rep[b].anchor:
            bad.append((a, b))
    if bad:
        raise NotNiceError(f"A-vertices with vertical-side intersections: {bad}")


# ---------------------------------------------------------------------------
# Nice grounded representation -> stick representation
# ---------------------------------------------------------------------------


def nice_grounded_to_stick(rep: GroundedLRep, g: BipartiteGraph) -> StickRep:
    """Invert stick_to_nice_grounded on any valid nice representation.

    Processes A-vertices in decreasing anchor order, raising each horizontal
    to the level of its own anchor and re-lifting the neighbors that drop
    below it into the open slot under the previously processed level; the
    invariant height(a_k) = anchor(a_k) holds for every processed vertex
    after every step.  Cutting along the line y = x and rotating clockwise
    then yields the sticks directly (A: length anchor - extent at position
    anchor; B: length height - anchor at position anchor).
    """
    report = verify_grounded(rep, g.graph)
    if not report.valid:
        raise InvalidRepresentationError(f"input rep invalid: {report.summary()}")
    _check_nice(rep, g)

    shapes = {s.vertex: s for s in normalize_grounded(rep)}
    n = len(shapes)
    # Unused arms can be shortened freely: B horizontals carry no
    # intersections in a nice representation.
    for b in g.part_b:
        s = shapes[b]
        shapes[b] = LShape(b, s.anchor, s.height, s.anchor - HALF)
    # Push all heights below every anchor so the forced assignments
    # height := anchor never collide with an untouched height.
    by_height = sorted(shapes, key=lambda v: shapes[v].height)
    for i, v in enumerate(by_height):
        s = shapes[v]
        shapes[v] = LShape(v, s.anchor, Fraction(i + 1, n + 1), s.left_extent)
    _assert_same_graph(shapes, g, "height remap")

    processed: list[int] = []
    prev_level: Fraction | None = None
    for a in sorted(g.part_a, key=lambda v: shapes[v].anchor, reverse=True):
        target = shapes[a].anchor
        shapes[a] = LShape(a, shapes[a].anchor, target, shapes[a].left_extent)
        ceiling = prev_level if prev_level is not None else target + 1
        lifted = sorted(b for b in g.graph.neighbors(a) if shapes[b].height < target)
        for j, b in enumerate(lifted):
            level = target + Fraction(j + 1, len(lifted) + 1) * (ceiling - target)
            s = shapes[b]
            shapes[b] = LShape(b, s.anchor, level, s.left_extent)
        prev_level = target
        processed.append(a)
        assert all(shapes[v].height == shapes[v].anchor for v in processed)
        _assert_same_graph(shapes, g, f"induction step for {a}")

    verticals = {}
    horizontals = {}
    for a in g.part_a:
        s = shapes[a]
        verticals[a] = StickSegment(s.anchor, s.anchor - s.left_extent)
    for b in g.part_b:
        s = shapes[b]
        length = s.height - s.anchor
        horizontals[b] = StickSegment(s.anchor, length if length > 0 else HALF)
    out = StickRep(verticals, horizontals)
    out_report = verify_stick(out, g)
    if not out_report.valid:  # pragma: no cover - construction guard
        raise AssertionError(f"cut broke the graph: {out_report.summary()}")
    return out


def _assert_same_graph(shapes: dict[int, LShape], g: BipartiteGraph, stage: str) -> None:
    rep = GroundedLRep(shapes.values())
    if rep.realized_edges() != g.graph.edges:  # pragma: no cover - invariant guard
        raise AssertionError(f"{stage} changed the intersection relation")


# ---------------------------------------------------------------------------
# Witness construction for the reduced graph
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _gadget_block() -> GroundedLRep:
    """Canonical grounded representation of the gadget (first feasible order)."""
    g = gadget_graph().graph
    orders = enumerate_grounded_orders(g)
    rep = check_anchor_order(g, sorted(orders)[0])
    assert isinstance(rep, GroundedLRep)
    return rep


def build_reduced_rep(stick_rep: StickRep, g: BipartiteGraph,
                      reduction: ReductionOutput) -> GroundedLRep:
    """Grounded representation of the reduced graph from a stick witness.

    Converts the stick witness to a nice grounded representation, then
    replaces every B-shape with an affinely squeezed copy of the gadget
    block placed in a fresh interval just right of the old anchor, scaled
    vertically to sit above all neighbor horizontals but below the old
    vertical's top (full-span non-neighbor horizontals pass higher, so no
    spurious crossing can occur).
    """
    nice = stick_to_nice_grounded(stick_rep, g)
    block = _gadget_block()
    block_xs = [s.left_extent for s in block] + [s.anchor for s in block]
    x_lo, x_hi = min(block_xs), max(block_xs)
    heights_in_use = {nice[v].height for v in g.part_a}
    shapes: dict[int, LShape] = {}
    for a in g.part_a:
        s = nice[a]
        shapes[reduction.a_map[a]] = LShape(reduction.a_map[a], s.anchor, s.height,
                                            s.left_extent)
    for b in sorted(g.part_b):
        s = nice[b]
        # fresh x interval right of the anchor, clear of every other x value
        obstruction = min((x for other in nice
                           for x in (other.anchor, other.left_extent)
                           if s.anchor < x < s.anchor + 1), default=s.anchor + 1)
        left = s.anchor + (obstruction - s.anchor) / 4
        right = s.anchor + (obstruction - s.anchor) / 2
        # height band above neighbor horizontals, below the next height up
        floor = max((nice[a].height for a in g.graph.neighbors(b)), default=Fraction(0))
        ceiling = min((h for h in heights_in_use if floor < h < s.height),
                      default=s.height)
        ids = reduction.gadget_map[b]
        for label in range(1, GADGET_SIZE + 1):
            bs = block[label]
            anchor = left + (bs.anchor - x_lo) / (x_hi - x_lo) * (right - left)
            extent = left + (bs.left_extent - x_lo) / (x_hi - x_lo) * (right - left)
            height = floor + bs.height / (GADGET_SIZE + 1) * (ceiling - floor)
            shapes[ids[label - 1]] = LShape(ids[label - 1], anchor, height, extent)
            heights_in_use.add(height)
    out = GroundedLRep(shapes.values())
    report = verify_grounded(out, reduction.h_graph)
    if not report.valid:  # pragma: no cover - construction guard
        raise AssertionError(f"reduced witness invalid: {report.summary()}")
    return out


def extract_base_rep(rep: GroundedLRep, reduction: ReductionOutput) -> GroundedLRep:
    """Restrict a representation of the reduced graph to the base graph.

    Keeps each A-shape and the shape of every gadget's designated vertex.
    The result realizes the base graph by construction; it must additionally
    be nice (the rigidity guarantees it), so a NotNiceError here signals a
    defect, not bad input.
    """
    report = verify_grounded(rep, reduction.h_graph)
    if not report.valid:
        raise InvalidRepresentationError(
            f"representation of reduced graph invalid: {report.summary()}")
    g = reduction.base
    shapes = []
    for a in sorted(g.part_a):
        s = rep[reduction.a_map[a]]
        shapes.append(LShape(a, s.anchor, s.height, s.left_extent))
    for b in sorted(g.part_b):
        s = rep[reduction.x_of(b)]
        shapes.append(LShape(b, s.anchor, s.height, s.left_extent))
    out = GroundedLRep(shapes)
    out_report = verify_grounded(out, g.graph)
    if not out_report.valid:  # pragma: no cover - restriction preserves edges
        raise AssertionError(f"restriction broke the graph: {out_report.summary()}")
    _check_nice(out, g)
    return out


# ---------------------------------------------------------------------------
# Gadget validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GadgetValidation:
    orders: tuple[tuple[int, ...], ...]
    class_count: int
    triple_ok: bool
    universal_orders: int
    universal_rightmost: bool
    seconds_gadget: float
    seconds_universal: float

    @property
    def ok(self) -> bool:
        return (self.class_count == 2 and self.triple_ok
                and self.universal_orders > 0 and self.universal_rightmost)


def validate_gadget(jobs: int = 1) -> GadgetValidation:
    """Exhaustively re-derive the gadget's rigidity properties."""
    g = gadget_graph().graph
    t0 = time.perf_counter()
    orders = tuple(sorted(enumerate_grounded_orders(g, jobs=jobs)))
    t1 = time.perf_counter()
    swapped = {tuple(_GADGET_SWAP.get(v, v) for v in o) for o in orders}
    classes = {min(o, tuple(_GADGET_SWAP.get(v, v) for v in o)) for o in orders}
    triple_ok = bool(orders) and swapped == set(orders) and all(
        tuple(v for v in o if v in GADGET_TRIPLE)[1] == GADGET_X for o in orders)
    u = GADGET_SIZE + 1
    gu = Graph.from_edges(u, list(_GADGET_EDGES) + [(v, u) for v in range(1, u)])
    t2 = time.perf_counter()
    u_orders = enumerate_grounded_orders(gu, jobs=jobs)
    t3 = time.perf_counter()
    return GadgetValidation(
        orders=orders,
        class_count=len(classes),
        triple_ok=triple_ok,
        universal_orders=len(u_orders),
        universal_rightmost=bool(u_orders) and all(o[-1] == u for o in u_orders),
        seconds_gadget=t1 - t0,
        seconds_universal=t3 - t2,
    )
