"""Two-page layout certificates and the stabbed-grid witness pipeline.

A TwoPageLayout certifies that a connected graph can be drawn with its
vertices on a vertical line, every edge routed entirely in the left or
right half-plane, and crossing edges passing the line once below or above
the vertex range.  From a valid certificate the builder emits, in exact
rational arithmetic, a grid representation of the odd full subdivision of
the graph plus an apex vertex, stabbed segment by segment by the line y=x:

* vertex rows become long horizontals through their line positions;
* the apex becomes the segment of the vertical axis spanning the original
  vertex rows (crossing vertices sit on negative rows or above them, so the
  apex meets exactly the original vertices);
* every edge of the subdivided graph becomes a cup (left page) or cap
  (right page) of three segments whose corner lies on the stab line, with
  corner offsets eps*depth ordered by the nesting depth of the edge's
  interval so same-page shapes never touch;
* longer odd subdivisions replace a cup's inner horizontal by an
  alternating staircase hugging the stab line.

All coordinates are offset by the number of below-axis crossing vertices so
the original rows stay at y = 0..n-1; the construction's strict inequality
arguments are translation invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .geometry import Segment
from .graphs import Edge, Graph, apex_graph, apex_vertex, subdivision_paths
from .representations import GridRep

LEFT = "left"
RIGHT = "right"
BELOW = "below"
ABOVE = "above"

TENTH = Fraction(1, 10)


class LayoutError(ValueError):
    """Invalid two-page layout certificate."""


class UnassignedEdgeError(LayoutError):
    def __init__(self, edges):
        self.edges = tuple(edges)
        super().__init__(f"edges without a page assignment: {list(self.edges)}")


class CrossingPairError(LayoutError):
    def __init__(self, first: Edge, second: Edge, page: str):
        self.first, self.second, self.page = first, second, page
        super().__init__(f"{page} page intervals of {first} and {second} cross")


class WrongParityError(ValueError):
    """Requested subdivision count is even."""


@dataclass(frozen=True)
class CrossEdge:
    """A crossing edge: side of the vertex range, rank of the crossing point
    (1 = nearest the vertex rows), and the endpoint whose half-edge lies on
    the left page."""

    edge: Edge
    side: str
    rank: int
    left_vertex: int


@dataclass(frozen=True)
class TwoPageLayout:
    order: tuple[int, ...]
    left: frozenset[Edge]
    right: frozenset[Edge]
    cross: tuple[CrossEdge, ...]


@dataclass(frozen=True)
class SubdividedFrame:
    """The layout after inserting crossing vertices.

    h_graph replaces every crossing edge by two half-edges through a fresh
    vertex; ranks order all vertices bottom to top and rows place original
    vertices at y = 0..n-1 with below-crossings at negative rows.
    """

    base: Graph
    layout: TwoPageLayout
    h_graph: Graph
    cross_vertex: Mapping[Edge, int]
    rank_of: Mapping[int, int]
    below_count: int
    page_of: Mapping[Edge, str]
    interval_of: Mapping[Edge, tuple[int, int]]
    depth_of: Mapping[Edge, int]

    @property
    def n_h(self) -> int:
        return self.h_graph.n

    def row_of(self, vertex: int) -> int:
        return self.rank_of[vertex] - 1 - self.below_count

    def epsilon(self) -> Fraction:
        return Fraction(1, 100 * self.n_h)

    def half_edges(self, edge: Edge) -> tuple[Edge, ...]:
        """H-edges of a base edge, ordered from its smaller endpoint."""
        x, y = edge
        if edge not in self.cross_vertex:
            return (edge,)
        w = self.cross_vertex[edge]
        return (_norm(x, w), _norm(w, y))


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def depth_table(intervals: Iterable[tuple[int, int]]) -> dict[tuple[int, int], int]:
    """Containment count per open interval, self-inclusive."""
    ivs = list(intervals)
    return {
        iv: sum(1 for other in ivs if other[0] <= iv[0] and iv[1] <= other[1])
        for iv in ivs
    }


def _laminar_violation(intervals: list[tuple[tuple[int, int], Edge]]):
    ordered = sorted(intervals)
    for idx, ((i1, j1), e1) in enumerate(ordered):
        for (i2, j2), e2 in ordered[idx + 1:]:
            if i2 >= j1:
                break
            if i1 < i2 < j1 < j2:
                return e1, e2
    return None


def validate_layout(g: Graph, layout: TwoPageLayout) -> SubdividedFrame:
    """Check a certificate and build the subdivided frame.

    Crossing edges split at fresh vertices placed on rows below 0 or above
    n-1 in rank order; each page's intervals over the extended vertex order
    must then be pairwise nested or disjoint.
    """
    if g.n < 2 or not g.is_connected():
        raise LayoutError("graph must be connected with at least two vertices")
    if sorted(layout.order) != list(g.vertices()):
        raise LayoutError("order must be a permutation of the vertex set")
    assigned: dict[Edge, str] = {}
    for e in layout.left:
        assigned[_norm(*e)] = LEFT
    for e in layout.right:
        if _norm(*e) in assigned:
            raise LayoutError(f"edge {e} assigned to both pages")
        assigned[_norm(*e)] = RIGHT
    cross_by_edge: dict[Edge, CrossEdge] = {}
    for record in layout.cross:
        e = _norm(*record.edge)
        if e in assigned or e in cross_by_edge:
            raise LayoutError(f"edge {e} assigned twice")
        if record.side not in (BELOW, ABOVE):
            raise LayoutError(f"bad side {record.side!r} for {e}")
        if record.left_vertex not in e:
            raise LayoutError(f"left vertex of {e} must be one of its endpoints")
        cross_by_edge[e] = record
    missing = [e for e in g.sorted_edges() if e not in assigned and e not in cross_by_edge]
    if missing:
        raise UnassignedEdgeError(missing)
    extra = [e for e in list(assigned) + list(cross_by_edge) if e not in g.edges]
    if extra:
        raise LayoutError(f"assigned edges not in the graph: {sorted(extra)}")
    for side in (BELOW, ABOVE):
        ranks = [r.rank for r in cross_by_edge.values() if r.side == side]
        if len(set(ranks)) != len(ranks):
            raise LayoutError(f"duplicate {side} crossing ranks")

    n = g.n
    position = {v: i for i, v in enumerate(layout.order)}
    below = sorted((r for r in cross_by_edge.values() if r.side == BELOW),
                   key=lambda r: r.rank)
    above = sorted((r for r in cross_by_edge.values() if r.side == ABOVE),
                   key=lambda r: r.rank)
    c = len(below)

    row: dict[int, int] = {v: position[v] for v in g.vertices()}
    cross_vertex: dict[Edge, int] = {}
    h_edges: list[tuple[Edge, str]] = []
    next_id = n
    for e in sorted(cross_by_edge):
        next_id += 1
        cross_vertex[e] = next_id
    for record in below:
        row[cross_vertex[_norm(*record.edge)]] = -record.rank
    for i, record in enumerate(above):
        row[cross_vertex[_norm(*record.edge)]] = n + i

    for e, page in assigned.items():
        h_edges.append((e, page))
    for e, record in cross_by_edge.items():
        w = cross_vertex[e]
        other = e[0] if record.left_vertex == e[1] else e[1]
        h_edges.append((_norm(record.left_vertex, w), LEFT))
        h_edges.append((_norm(other, w), RIGHT))

    h_graph = Graph.from_edges(next_id, [he for he, _ in h_edges])
    rank_of = {v: i + 1 for i, (_, v) in enumerate(sorted((y, v) for v, y in row.items()))}

    page_of: dict[Edge, str] = {}
    interval_of: dict[Edge, tuple[int, int]] = {}
    per_page: dict[str, list[tuple[tuple[int, int], Edge]]] = {LEFT: [], RIGHT: []}
    for he, page in h_edges:
        i, j = sorted((rank_of[he[0]], rank_of[he[1]]))
        page_of[he] = page
        interval_of[he] = (i, j)
        per_page[page].append(((i, j), he))
    for page in (LEFT, RIGHT):
        violation = _laminar_violation(per_page[page])
        if violation is not None:
            raise CrossingPairError(violation[0], violation[1], page)
    depth_of: dict[Edge, int] = {}
    for page in (LEFT, RIGHT):
        depths = depth_table([iv for iv, _ in per_page[page]])
        for iv, he in per_page[page]:
            depth_of[he] = depths[iv]
    return SubdividedFrame(
        base=g,
        layout=layout,
        h_graph=h_graph,
        cross_vertex=cross_vertex,
        rank_of=rank_of,
        below_count=c,
        page_of=page_of,
        interval_of=interval_of,
        depth_of=depth_of,
    )


# ---------------------------------------------------------------------------
# Geometry helpers (shared by the one-shot builder and the public staircase op)
# ---------------------------------------------------------------------------


def _row_segment(frame: SubdividedFrame, vertex: int) -> Segment:
    rank = frame.rank_of[vertex]
    y = frame.row_of(vertex)
    return Segment.horizontal(
        y, -(rank + frame.below_count) - TENTH, 2 * frame.n_h - rank + TENTH)


def _corners(frame: SubdividedFrame, he: Edge) -> tuple[Fraction, Fraction]:
    """x-coordinates of the shape's two verticals: (j-side, i-side) on the
    left page, (J-side, I-side) mirrored on the right."""
    i, j = frame.interval_of[he]
    eps = frame.epsilon()
    depth = frame.depth_of[he]
    c = frame.below_count
    if frame.page_of[he] == LEFT:
        return (-(j + c) + eps * depth, -(i + c) - eps * depth)
    return (2 * frame.n_h - j + eps * depth, 2 * frame.n_h - i - eps * depth)


def _chain_from_low_rank(frame: SubdividedFrame, he: Edge, h: int) -> list[Segment]:
    """Segments of the edge's shape ordered from the rank-i endpoint to the
    rank-j endpoint, with a 2h-subdivision staircase when h >= 1."""
    i, j = frame.interval_of[he]
    c = frame.below_count
    row_i, row_j = i - 1 - c, j - 1 - c
    eps = frame.epsilon()
    if frame.page_of[he] == LEFT:
        je, ie = _corners(frame, he)
        u_j = Segment.vertical(je, je, row_j)
        u_i_plain = Segment.vertical(ie, je, row_i)
        if h == 0:
            return [u_i_plain, Segment.horizontal(je, je, ie), u_j]
        eps2 = eps / (h + 1)
        steps: list[Segment] = [Segment.horizontal(je, je, je + eps2)]
        for t in range(1, h):
            steps.append(Segment.vertical(je + t * eps2, je + (t - 1) * eps2, je + t * eps2))
            steps.append(Segment.horizontal(je + t * eps2, je + t * eps2, je + (t + 1) * eps2))
        steps.append(Segment.vertical(je + h * eps2, je + (h - 1) * eps2, je + h * eps2))
        steps.append(Segment.horizontal(je + h * eps2, je + h * eps2, ie))
        u_i = Segment.vertical(ie, je + h * eps2, row_i)
        return [u_i] + steps[::-1] + [u_j]
    jc, ic = _corners(frame, he)  # J_e < I_e
    u_j = Segment.vertical(jc, row_j, ic)
    u_i = Segment.vertical(ic, row_i, ic)
    if h == 0:
        return [u_i, Segment.horizontal(ic, jc, ic), u_j]
    eps2 = eps / (h + 1)
    steps = [Segment.horizontal(ic, ic - eps2, ic)]
    for t in range(1, h):
        steps.append(Segment.vertical(ic - t * eps2, ic - t * eps2, ic - (t - 1) * eps2))
        steps.append(Segment.horizontal(ic - t * eps2, ic - (t + 1) * eps2, ic - t * eps2))
    steps.append(Segment.vertical(ic - h * eps2, ic - h * eps2, ic - (h - 1) * eps2))
    steps.append(Segment.horizontal(ic - h * eps2, jc, ic - h * eps2))
    u_j_rebased = Segment.vertical(jc, row_j, ic - h * eps2)
    return [u_i] + steps + [u_j_rebased]


def _half_chain(frame: SubdividedFrame, he: Edge, start: int, h: int) -> list[Segment]:
    i, _ = frame.interval_of[he]
    chain = _chain_from_low_rank(frame, he, h)
    if frame.rank_of[start] == i:
        return chain
    return chain[::-1]


def _add_segment(horizontals: dict[int, Segment], verticals: dict[int, Segment],
                 vertex: int, seg: Segment) -> None:
    if seg.orientation == "horizontal":
        horizontals[vertex] = seg
    else:
        verticals[vertex] = seg


# ---------------------------------------------------------------------------
# Public builders
# ---------------------------------------------------------------------------


def apex3_stab_graph(frame: SubdividedFrame) -> Graph:
    """The graph realized by build_apex3_rep: the apex construction over the
    subdivided frame, without apex edges to crossing vertices."""
    full = apex_graph(frame.h_graph, 3)
    apex = apex_vertex(frame.h_graph, 3)
    drop = {(_norm(w, apex)) for w in frame.cross_vertex.values()}
    return Graph.from_edges(full.n, full.edges - drop, full.roles)


def build_apex3_rep(frame: SubdividedFrame) -> GridRep:
    """Grid representation of the 3-subdivision-plus-apex of the frame."""
    horizontals: dict[int, Segment] = {}
    verticals: dict[int, Segment] = {}
    for w in frame.h_graph.vertices():
        horizontals[w] = _row_segment(frame, w)
    apex = apex_vertex(frame.h_graph, 3)
    verticals[apex] = Segment.vertical(0, 0, frame.base.n - 1)
    paths = subdivision_paths(frame.h_graph, 3)
    for he in frame.h_graph.sorted_edges():
        u1, u2, u3 = paths[he][1:-1]
        for uid, seg in zip((u1, u2, u3), _half_chain(frame, he, he[0], 0)):
            _add_segment(horizontals, verticals, uid, seg)
    return GridRep(horizontals, verticals)


def _mid_at_start(frame: SubdividedFrame, he: Edge) -> bool:
    """Whether the kept mid segment sits right after the path's first vertex.

    The staircase grows out of the shape's stab-line corner: on the left
    page that corner touches the rank-j vertical, on the right page the
    rank-i vertical; the path starts at he[0]'s side.
    """
    starts_low = frame.rank_of[he[0]] == frame.interval_of[he][0]
    return starts_low != (frame.page_of[he] == LEFT)


def staircase_edge(frame: SubdividedFrame, he: Edge) -> tuple[int, int]:
    """The apex3 edge a staircase on `he` subdivides (mid to corner vertical)."""
    he = _norm(*he)
    u1, u2, u3 = subdivision_paths(frame.h_graph, 3)[he][1:-1]
    return (u2, u3) if _mid_at_start(frame, he) else (u1, u2)


def staircase_subdivide(rep: GridRep, frame: SubdividedFrame, he: Edge,
                        h: int) -> GridRep:
    """Replace the inner horizontal of one 3-subdivided edge by a staircase
    of 2h+1 alternating segments, lengthening its path by 2h vertices.

    The first staircase horizontal keeps the mid vertex's id; new vertices
    take ids above the current maximum, ordered along the path from the
    lower end of the subdivided apex3 edge (matching subdivide_edge).
    """
    if h < 1:
        raise ValueError("h must be >= 1")
    he = _norm(*he)
    u1, u2, u3 = subdivision_paths(frame.h_graph, 3)[he][1:-1]
    for uid in (u1, u2, u3):
        if uid not in rep.vertices():
            raise ValueError(f"edge {he} is not 3-subdivided in this representation")
    chain = _half_chain(frame, he, he[0], h)
    base = max(rep.vertices())
    fresh = list(range(base + 1, base + 2 * h + 1))
    if _mid_at_start(frame, he):
        ids = [u1, u2] + fresh + [u3]
    else:
        ids = [u1] + fresh + [u2, u3]
    horizontals = dict(rep.horizontals)
    verticals = dict(rep.verticals)
    for uid in (u1, u2, u3):
        horizontals.pop(uid, None)
        verticals.pop(uid, None)
    for uid, seg in zip(ids, chain):
        _add_segment(horizontals, verticals, uid, seg)
    return GridRep(horizontals, verticals)


def build_apex_rep(g: Graph, layout: TwoPageLayout, k: int) -> tuple[Graph, GridRep]:
    """Full pipeline: validate the layout, build the shapes, and bring every
    edge to exactly k subdivision vertices via staircases.

    Uncrossed edges get one staircase with h = (k-3)/2; crossing edges have
    7 baseline subdivisions (3 + crossing vertex + 3) and any excess goes to
    the left-page half.  Returns the apex graph and its representation.
    """
    if k % 2 == 0:
        raise WrongParityError(f"k must be odd, got {k}")
    if k < 7:
        raise ValueError(f"k must be at least 7, got {k}")
    frame = validate_layout(g, layout)
    final = apex_graph(g, k)
    paths = subdivision_paths(g, k)

    horizontals: dict[int, Segment] = {}
    verticals: dict[int, Segment] = {}
    for v in g.vertices():
        horizontals[v] = _row_segment(frame, v)
    verticals[apex_vertex(g, k)] = Segment.vertical(0, 0, g.n - 1)
    for e in g.sorted_edges():
        x, y = e
        inner = paths[e][1:-1]
        halves = frame.half_edges(e)
        if len(halves) == 1:
            chain = _half_chain(frame, halves[0], x, (k - 3) // 2)
        else:
            hx, hy = halves
            w = frame.cross_vertex[e]
            extra = (k - 7) // 2
            chain = _half_chain(frame, hx, x, extra if frame.page_of[hx] == LEFT else 0)
            chain += [_row_segment(frame, w)]
            chain += _half_chain(frame, hy, w, extra if frame.page_of[hy] == LEFT else 0)
        if len(chain) != k:  # pragma: no cover - assembly guard
            raise AssertionError(f"edge {e}: expected {k} segments, built {len(chain)}")
        for uid, seg in zip(inner, chain):
            _add_segment(horizontals, verticals, uid, seg)
    return final, GridRep(horizontals, verticals)


def corner_order_violations(frame: SubdividedFrame) -> list[str]:
    """Check the strict same-page corner orderings for every shape pair.

    For disjoint intervals with e' to the right the corner x-coordinates
    must satisfy j(e') < i(e') < j(e) < i(e); for nested intervals e inside
    e' they must satisfy j(e') < j(e) < i(e) < i(e').  Returns one message
    per violated pair (empty list = all orderings hold exactly).
    """
    out: list[str] = []
    for page in (LEFT, RIGHT):
        edges = sorted(he for he, p in frame.page_of.items() if p == page)
        for idx, e in enumerate(edges):
            for e2 in edges[idx + 1:]:
                i1, j1 = frame.interval_of[e]
                i2, j2 = frame.interval_of[e2]
                inner, outer = None, None
                if j1 <= i2 or j2 <= i1:  # disjoint: right interval gets smaller x
                    left_e, right_e = (e, e2) if j1 <= i2 else (e2, e)
                    jr, ir = _corners(frame, right_e)
                    jl, il = _corners(frame, left_e)
                    if not (jr < ir < jl < il):
                        out.append(f"{page}: disjoint order fails for {left_e},{right_e}")
                    continue
                if i2 <= i1 and j1 <= j2:
                    inner, outer = e, e2
                elif i1 <= i2 and j2 <= j1:
                    inner, outer = e2, e
                if inner is None:
                    out.append(f"{page}: intervals of {e},{e2} cross")
                    continue
                jo, io = _corners(frame, outer)
                ji, ii = _corners(frame, inner)
                if not (jo < ji < ii < io):
                    out.append(f"{page}: nested order fails for {inner} in {outer}")
    return out


# ---------------------------------------------------------------------------
# Layout file format
# ---------------------------------------------------------------------------


def parse_layout(text: str) -> TwoPageLayout:
    """Parse the layout format:

        order: 1 2 3 4
        left: 1-2 2-3
        right: 3-4
        cross: 1-4 below 1 1

    A cross record is edge, side (below/above), rank, and the endpoint whose
    half-edge lies on the left page.  Comment lines start with `c`.
    """
    order: tuple[int, ...] | None = None
    left: set[Edge] = set()
    right: set[Edge] = set()
    cross: list[CrossEdge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c "):
            continue
        try:
            key, _, rest = line.partition(":")
            key = key.strip()
            fields = rest.split()
            if key == "order":
                order = tuple(int(f) for f in fields)
            elif key in (LEFT, RIGHT):
                target = left if key == LEFT else right
                target.update(_parse_edge(f) for f in fields)
            elif key == "cross":
                if len(fields) != 4:
                    raise ValueError("cross record needs edge, side, rank, left vertex")
                cross.append(CrossEdge(
                    edge=_parse_edge(fields[0]),
                    side=fields[1],
                    rank=int(fields[2]),
                    left_vertex=int(fields[3]),
                ))
            else:
                raise ValueError(f"unknown record {key!r}")
        except ValueError as exc:
            raise LayoutError(f"line {lineno}: {exc}") from exc
    if order is None:
        raise LayoutError("missing 'order:' line")
    return TwoPageLayout(order, frozenset(left), frozenset(right), tuple(
        sorted(cross, key=lambda r: r.edge)))


def _parse_edge(token: str) -> Edge:
    u, _, v = token.partition("-")
    return _norm(int(u), int(v))


def serialize_layout(layout: TwoPageLayout) -> str:
    lines = ["order: " + " ".join(str(v) for v in layout.order)]
    if layout.left:
        lines.append("left: " + " ".join(f"{u}-{v}" for u, v in sorted(layout.left)))
    if layout.right:
        lines.append("right: " + " ".join(f"{u}-{v}" for u, v in sorted(layout.right)))
    for r in sorted(layout.cross, key=lambda r: r.edge):
        lines.append(f"cross: {r.edge[0]}-{r.edge[1]} {r.side} {r.rank} {r.left_vertex}")
    return "\n".join(lines) + "\n"
