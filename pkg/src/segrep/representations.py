"""Representation data models, exact verifiers, and rank normalizers.

Three representation kinds are supported:

* GroundedLRep: one L-shape per vertex, anchored on the ground line y = 0
  (vertical segment rising from the anchor, horizontal segment extending
  left from its top).
* StickRep: vertical segments (part A) and horizontal segments (part B)
  grounded on the slope -1 line y = -x.
* GridRep: axis-parallel segments stabbed by the line y = x.

Verifiers compare the realized intersection relation against a target graph
and return structured reports.  Normalizers rewrite a valid representation
onto a small integer grid without changing the intersection relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .geometry import (
    HORIZONTAL,
    SameOrientationOverlapError,
    Segment,
    as_rational,
    format_rational,
    lshape_intersect,
    parse_rational,
    segments_intersect,
    stab_point,
)
from .graphs import BipartiteGraph, Graph

HALF = Fraction(1, 2)


class VertexMismatchError(ValueError):
    """The representation does not cover exactly the target vertex set."""


class InvalidRepresentationError(ValueError):
    """An operation required a valid representation and was given a broken one."""


class RepresentationFormatError(ValueError):
    """Malformed representation file."""


# ---------------------------------------------------------------------------
# Data models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LShape:
    """Grounded L-shape: vertical [(anchor,0),(anchor,height)] joined to the
    horizontal [(left_extent,height),(anchor,height)].  A shape with
    left_extent == anchor degenerates to its vertical segment."""

    vertex: int
    anchor: Fraction
    height: Fraction
    left_extent: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "anchor", as_rational(self.anchor))
        object.__setattr__(self, "height", as_rational(self.height))
        object.__setattr__(self, "left_extent", as_rational(self.left_extent))
        if self.height <= 0:
            raise InvalidRepresentationError(f"shape {self.vertex}: height must be > 0")
        if self.left_extent > self.anchor:
            raise InvalidRepresentationError(
                f"shape {self.vertex}: left extent beyond anchor")

    @property
    def vertical_segment(self) -> Segment:
        return Segment.vertical(self.anchor, 0, self.height)

    @property
    def horizontal_segment(self) -> Segment | None:
        if self.left_extent == self.anchor:
            return None
        return Segment.horizontal(self.height, self.left_extent, self.anchor)


class GroundedLRep:
    """A grounded L-representation: one shape per vertex, anchors and heights
    pairwise distinct so every predicate is decided by strict comparisons."""

    def __init__(self, shapes: Iterable[LShape]):
        by_vertex: dict[int, LShape] = {}
        for s in shapes:
            if s.vertex in by_vertex:
                raise InvalidRepresentationError(f"duplicate shape for vertex {s.vertex}")
            by_vertex[s.vertex] = s
        anchors = [s.anchor for s in by_vertex.values()]
        if len(set(anchors)) != len(anchors):
            raise InvalidRepresentationError("anchors must be pairwise distinct")
        heights = [s.height for s in by_vertex.values()]
        if len(set(heights)) != len(heights):
            raise InvalidRepresentationError("heights must be pairwise distinct")
        self.shapes: dict[int, LShape] = dict(sorted(by_vertex.items()))

    def __iter__(self):
        return iter(self.shapes.values())

    def __len__(self) -> int:
        return len(self.shapes)

    def __getitem__(self, vertex: int) -> LShape:
        return self.shapes[vertex]

    def vertices(self) -> set[int]:
        return set(self.shapes)

    def anchor_order(self) -> tuple[int, ...]:
        return tuple(v for v, _ in sorted(self.shapes.items(), key=lambda kv: kv[1].anchor))

    def realized_edges(self) -> frozenset[tuple[int, int]]:
        shapes = list(self.shapes.values())
        out = set()
        for i, a in enumerate(shapes):
            for b in shapes[i + 1:]:
                if lshape_intersect(a, b):
                    out.add((min(a.vertex, b.vertex), max(a.vertex, b.vertex)))
        return frozenset(out)

    def realized_graph(self) -> Graph:
        verts = sorted(self.shapes)
        relabel = {v: i + 1 for i, v in enumerate(verts)}
        if relabel != {v: v for v in verts}:
            raise InvalidRepresentationError("realized_graph requires vertices 1..n")
        return Graph.from_edges(len(verts), self.realized_edges())


@dataclass(frozen=True)
class StickSegment:
    """One stick: a ground position along the slope -1 line and a length."""

    position: Fraction
    length: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "position", as_rational(self.position))
        object.__setattr__(self, "length", as_rational(self.length))
        if self.length <= 0:
            raise InvalidRepresentationError("stick length must be > 0")


class StickRep:
    """Stick representation on the ground line y = -x: part A sticks are
    vertical (rising from the line), part B sticks horizontal (extending
    right).  Ground positions are pairwise distinct."""

    def __init__(self, verticals: Mapping[int, StickSegment],
                 horizontals: Mapping[int, StickSegment]):
        if set(verticals) & set(horizontals):
            raise InvalidRepresentationError("a vertex cannot be both orientations")
        positions = [s.position for s in verticals.values()]
        positions += [s.position for s in horizontals.values()]
        if len(set(positions)) != len(positions):
            raise InvalidRepresentationError("ground positions must be pairwise distinct")
        self.verticals = dict(sorted(verticals.items()))
        self.horizontals = dict(sorted(horizontals.items()))

    def vertices(self) -> set[int]:
        return set(self.verticals) | set(self.horizontals)

    def ground_order(self) -> tuple[int, ...]:
        items = [(s.position, v) for v, s in self.verticals.items()]
        items += [(s.position, v) for v, s in self.horizontals.items()]
        return tuple(v for _, v in sorted(items))

    def segment(self, vertex: int) -> Segment:
        if vertex in self.verticals:
            s = self.verticals[vertex]
            return Segment.vertical(s.position, -s.position, -s.position + s.length)
        s = self.horizontals[vertex]
        return Segment.horizontal(-s.position, s.position, s.position + s.length)

    def crosses(self, a: int, b: int) -> bool:
        """Whether vertical a and horizontal b intersect (touches count)."""
        va = self.verticals[a]
        hb = self.horizontals[b]
        d = va.position - hb.position
        return d > 0 and va.length >= d and hb.length >= d

    def realized_edges(self) -> frozenset[tuple[int, int]]:
        out = set()
        for a in self.verticals:
            for b in self.horizontals:
                if self.crosses(a, b):
                    out.add((min(a, b), max(a, b)))
        return frozenset(out)


class GridRep:
    """Axis-parallel segments, one per vertex, intended to be stabbed by y=x."""

    def __init__(self, horizontals: Mapping[int, Segment],
                 verticals: Mapping[int, Segment]):
        if set(horizontals) & set(verticals):
            raise InvalidRepresentationError("a vertex cannot have two segments")
        for v, s in horizontals.items():
            if s.orientation != HORIZONTAL:
                raise InvalidRepresentationError(f"segment for {v} is not horizontal")
        for v, s in verticals.items():
            if s.orientation == HORIZONTAL:
                raise InvalidRepresentationError(f"segment for {v} is not vertical")
        self.horizontals = dict(sorted(horizontals.items()))
        self.verticals = dict(sorted(verticals.items()))

    def vertices(self) -> set[int]:
        return set(self.horizontals) | set(self.verticals)

    def segment(self, vertex: int) -> Segment:
        if vertex in self.horizontals:
            return self.horizontals[vertex]
        return self.verticals[vertex]

    def items(self):
        yield from self.horizontals.items()
        yield from self.verticals.items()


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------


@dataclass
class VerifyReport:
    kind: str
    missing: list[tuple[int, int]] = field(default_factory=list)
    spurious: list[tuple[int, int]] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not (self.missing or self.spurious or self.violations)

    def summary(self) -> str:
        if self.valid:
            return f"{self.kind}: VALID"
        parts = [f"{self.kind}: INVALID"]
        if self.missing:
            parts.append(f"missing={self.missing}")
        if self.spurious:
            parts.append(f"spurious={self.spurious}")
        if self.violations:
            parts.append(f"violations={self.violations}")
        return " ".join(parts)


def _check_cover(rep_vertices: set[int], g: Graph, kind: str) -> None:
    expected = set(g.vertices())
    if rep_vertices != expected:
        raise VertexMismatchError(
            f"{kind}: representation covers {sorted(rep_vertices)}, "
            f"graph has {sorted(expected)}")


def _edge_diff(report: VerifyReport, realized: frozenset[tuple[int, int]],
               expected: frozenset[tuple[int, int]]) -> None:
    report.missing = sorted(expected - realized)
    report.spurious = sorted(realized - expected)


def verify_grounded(rep: GroundedLRep, g: Graph) -> VerifyReport:
    """VALID iff the pairwise intersections of the shapes equal E(g)."""
    _check_cover(rep.vertices(), g, "grounded-l")
    report = VerifyReport("grounded-l")
    _edge_diff(report, rep.realized_edges(), g.edges)
    return report


def verify_stick(rep: StickRep, g: BipartiteGraph) -> VerifyReport:
    """VALID iff the sticks realize E(g) with part A vertical, B horizontal."""
    _check_cover(rep.vertices(), g.graph, "stick")
    report = VerifyReport("stick")
    if set(rep.verticals) != set(g.part_a):
        report.violations.append(
            f"verticals {sorted(rep.verticals)} != part A {sorted(g.part_a)}")
        return report
    _edge_diff(report, rep.realized_edges(), g.graph.edges)
    return report


def verify_stabgig(rep: GridRep, g: Graph) -> VerifyReport:
    """VALID iff (a) the intersection graph equals E(g), (b) no two
    same-orientation segments meet, and (c) the line y=x stabs every segment."""
    _check_cover(rep.vertices(), g, "stabgig")
    report = VerifyReport("stabgig")
    realized = set()
    for a, sa in rep.horizontals.items():
        for b, sb in rep.verticals.items():
            if segments_intersect(sa, sb) is not None:
                realized.add((min(a, b), max(a, b)))
    for group in (rep.horizontals, rep.verticals):
        items = sorted(group.items())
        for i, (a, sa) in enumerate(items):
            for b, sb in items[i + 1:]:
                try:
                    point = segments_intersect(sa, sb)
                except SameOrientationOverlapError:
                    report.violations.append(f"same-orientation overlap {a},{b}")
                    continue
                if point is not None:
                    report.violations.append(f"same-orientation contact {a},{b}")
    for v in sorted(rep.vertices()):
        if stab_point(rep.segment(v)) is None:
            report.violations.append(f"segment {v} not stabbed by y=x")
    _edge_diff(report, frozenset(realized), g.edges)
    return report


# ---------------------------------------------------------------------------
# Normalizers
# ---------------------------------------------------------------------------


def normalize_grounded(rep: GroundedLRep) -> GroundedLRep:
    """Rewrite a grounded representation with x-ranks and y-ranks.

    The 2n horizontal-segment endpoints are ranked by x; when a left extent
    ties with an anchor the extent ranks first, which turns an endpoint touch
    into a strict crossing and so preserves the intersection relation.
    Heights get ranks 1..n.  Idempotent.
    """
    shapes = list(rep)
    before = rep.realized_edges()
    keyed = []
    for s in shapes:
        keyed.append((s.left_extent, 0, s.vertex))
        keyed.append((s.anchor, 1, s.vertex))
    xrank = {key: i + 1 for i, key in enumerate(sorted(keyed))}
    yrank = {h: i + 1 for i, h in enumerate(sorted(s.height for s in shapes))}
    out = []
    for s in shapes:
        out.append(LShape(
            vertex=s.vertex,
            anchor=Fraction(xrank[(s.anchor, 1, s.vertex)]),
            height=Fraction(yrank[s.height]),
            left_extent=Fraction(xrank[(s.left_extent, 0, s.vertex)]),
        ))
    result = GroundedLRep(out)
    if result.realized_edges() != before:
        raise InvalidRepresentationError(
            "rank normalization changed the intersection relation")
    return result


def normalize_stabgig(rep: GridRep) -> GridRep:
    """Rewrite a stabbed grid representation in rank normal form.

    Segments are ranked bottom-to-top by stab point; a horizontal of rank r
    moves to y = r with x spanning the ranks of its neighbors (and r itself),
    verticals symmetrically.  Isolated segments are widened by 1/2 per side.
    """
    order = []
    for v in sorted(rep.vertices()):
        seg = rep.segment(v)
        p = stab_point(seg)
        if p is None:
            raise InvalidRepresentationError(f"segment {v} is not stabbed by y=x")
        order.append((p.x, 0 if v in rep.horizontals else 1, v))
    rank = {v: i + 1 for i, (_, _, v) in enumerate(sorted(order))}

    partners: dict[int, list[int]] = {v: [] for v in rep.vertices()}
    for a, sa in rep.horizontals.items():
        for b, sb in rep.verticals.items():
            try:
                hit = segments_intersect(sa, sb)
            except SameOrientationOverlapError as exc:  # pragma: no cover - guarded by types
                raise InvalidRepresentationError(str(exc)) from exc
            if hit is not None:
                partners[a].append(b)
                partners[b].append(a)
    for group in (rep.horizontals, rep.verticals):
        items = sorted(group.items())
        for i, (a, sa) in enumerate(items):
            for b, sb in items[i + 1:]:
                try:
                    if segments_intersect(sa, sb) is not None:
                        raise InvalidRepresentationError(
                            f"same-orientation contact {a},{b}")
                except SameOrientationOverlapError as exc:
                    raise InvalidRepresentationError(str(exc)) from exc

    horizontals: dict[int, Segment] = {}
    verticals: dict[int, Segment] = {}
    for v in rep.vertices():
        r = Fraction(rank[v])
        ranks = [Fraction(rank[w]) for w in partners[v]] + [r]
        lo, hi = min(ranks), max(ranks)
        if lo == hi:
            lo, hi = lo - HALF, hi + HALF
        if v in rep.horizontals:
            horizontals[v] = Segment.horizontal(r, lo, hi)
        else:
            verticals[v] = Segment.vertical(r, lo, hi)
    result = GridRep(horizontals, verticals)

    before = _grid_edges(rep)
    after = _grid_edges(result)
    if before != after:
        raise InvalidRepresentationError(
            "rank normalization changed the intersection relation")
    return result


def _grid_edges(rep: GridRep) -> frozenset[tuple[int, int]]:
    out = set()
    for a, sa in rep.horizontals.items():
        for b, sb in rep.verticals.items():
            if segments_intersect(sa, sb) is not None:
                out.add((min(a, b), max(a, b)))
    return frozenset(out)


# ---------------------------------------------------------------------------
# File format: `rep <kind> <count>` header, one record per vertex,
# rationals as num/den, comments start with `c`.  Round trips bit-exact.
# ---------------------------------------------------------------------------

KIND_GROUNDED = "grounded-l"
KIND_STICK = "stick"
KIND_STABGIG = "stabgig"


def serialize_representation(rep: GroundedLRep | StickRep | GridRep) -> str:
    fr = format_rational
    lines: list[str] = []
    if isinstance(rep, GroundedLRep):
        lines.append(f"rep {KIND_GROUNDED} {len(rep)}")
        for s in rep:
            lines.append(f"s {s.vertex} {fr(s.anchor)} {fr(s.height)} {fr(s.left_extent)}")
    elif isinstance(rep, StickRep):
        lines.append(f"rep {KIND_STICK} {len(rep.vertices())}")
        for v, s in rep.verticals.items():
            lines.append(f"v {v} {fr(s.position)} {fr(s.length)}")
        for v, s in rep.horizontals.items():
            lines.append(f"h {v} {fr(s.position)} {fr(s.length)}")
    elif isinstance(rep, GridRep):
        lines.append(f"rep {KIND_STABGIG} {len(rep.vertices())}")
        for v in sorted(rep.vertices()):
            s = rep.segment(v)
            if v in rep.horizontals:
                lines.append(f"h {v} {fr(s.p1.y)} {fr(s.p1.x)} {fr(s.p2.x)}")
            else:
                lines.append(f"v {v} {fr(s.p1.x)} {fr(s.p1.y)} {fr(s.p2.y)}")
    else:
        raise TypeError(f"unknown representation {type(rep)!r}")
    return "\n".join(lines) + "\n"


def parse_representation(text: str) -> GroundedLRep | StickRep | GridRep:
    kind: str | None = None
    count = 0
    records: list[tuple[int, str, list[Fraction]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "rep":
            if kind is not None:
                raise RepresentationFormatError(f"line {lineno}: duplicate header")
            if len(parts) != 3 or parts[1] not in (KIND_GROUNDED, KIND_STICK, KIND_STABGIG):
                raise RepresentationFormatError(f"line {lineno}: bad header")
            kind = parts[1]
            count = int(parts[2])
            continue
        if kind is None:
            raise RepresentationFormatError(f"line {lineno}: record before header")
        tag = parts[0]
        try:
            vertex = int(parts[1])
            values = [parse_rational(p) for p in parts[2:]]
        except (ValueError, IndexError) as exc:
            raise RepresentationFormatError(f"line {lineno}: bad record") from exc
        records.append((vertex, tag, values))
    if kind is None:
        raise RepresentationFormatError("missing 'rep' header")
    if len(records) != count:
        raise RepresentationFormatError(
            f"header promised {count} records, found {len(records)}")
    try:
        return _build_rep(kind, records)
    except (InvalidRepresentationError, ValueError) as exc:
        raise RepresentationFormatError(str(exc)) from exc


def _build_rep(kind: str, records) -> GroundedLRep | StickRep | GridRep:
    if kind == KIND_GROUNDED:
        shapes = []
        for vertex, tag, values in records:
            if tag != "s" or len(values) != 3:
                raise RepresentationFormatError(f"bad grounded record for {vertex}")
            shapes.append(LShape(vertex, values[0], values[1], values[2]))
        return GroundedLRep(shapes)
    if kind == KIND_STICK:
        verts: dict[int, StickSegment] = {}
        hors: dict[int, StickSegment] = {}
        for vertex, tag, values in records:
            if tag not in ("v", "h") or len(values) != 2:
                raise RepresentationFormatError(f"bad stick record for {vertex}")
            target = verts if tag == "v" else hors
            target[vertex] = StickSegment(values[0], values[1])
        return StickRep(verts, hors)
    horizontals: dict[int, Segment] = {}
    verticals: dict[int, Segment] = {}
    for vertex, tag, values in records:
        if tag == "h" and len(values) == 3:
            horizontals[vertex] = Segment.horizontal(values[0], values[1], values[2])
        elif tag == "v" and len(values) == 3:
            verticals[vertex] = Segment.vertical(values[0], values[1], values[2])
        else:
            raise RepresentationFormatError(f"bad stabgig record for {vertex}")
    return GridRep(horizontals, verticals)
