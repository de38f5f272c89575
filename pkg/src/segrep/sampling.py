"""Random valid representations for fuzzing and property tests.

Each generator builds a representation that is valid by construction and
returns it together with the graph it realizes, so callers can cross-check
recognizers, converters, and normalizers against an independent source of
instances.  All randomness goes through a caller-supplied random.Random.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .graphs import BipartiteGraph, Graph
from .representations import GridRep, GroundedLRep, LShape, StickRep, StickSegment
from .geometry import Segment


def _distinct_fractions(rng: random.Random, count: int, lo: int, hi: int) -> list[Fraction]:
    seen: set[Fraction] = set()
    while len(seen) < count:
        seen.add(Fraction(rng.randint(lo * 12, hi * 12), rng.choice((1, 2, 3, 4, 6, 12))))
    return sorted(rng.sample(sorted(seen), count), key=lambda _: rng.random())


def random_grounded_rep(rng: random.Random, n: int) -> tuple[GroundedLRep, Graph]:
    anchors = _distinct_fractions(rng, n, 1, 3 * n)
    heights = _distinct_fractions(rng, n, 1, 3 * n)
    shapes = []
    for v in range(1, n + 1):
        anchor = anchors[v - 1]
        extent = anchor - Fraction(rng.randint(0, 6 * n * 12), 12)
        shapes.append(LShape(v, anchor, heights[v - 1], extent))
    rep = GroundedLRep(shapes)
    return rep, Graph.from_edges(n, rep.realized_edges())


def random_stick_rep(rng: random.Random, n: int) -> tuple[StickRep, BipartiteGraph]:
    positions = _distinct_fractions(rng, n, 1, 3 * n)
    verticals: dict[int, StickSegment] = {}
    horizontals: dict[int, StickSegment] = {}
    for v in range(1, n + 1):
        length = Fraction(rng.randint(1, 6 * n * 12), 12)
        seg = StickSegment(positions[v - 1], length)
        if rng.random() < 0.5:
            verticals[v] = seg
        else:
            horizontals[v] = seg
    rep = StickRep(verticals, horizontals)
    g = Graph.from_edges(n, rep.realized_edges())
    return rep, BipartiteGraph(g, frozenset(verticals), frozenset(horizontals))


def random_stabgig_rep(rng: random.Random, n: int) -> tuple[GridRep, Graph]:
    stabs = _distinct_fractions(rng, n, 1, 3 * n)
    horizontals: dict[int, Segment] = {}
    verticals: dict[int, Segment] = {}
    for v in range(1, n + 1):
        t = stabs[v - 1]
        below = Fraction(rng.randint(0, 4 * n * 12), 12)
        above = Fraction(rng.randint(0, 4 * n * 12), 12)
        if below == 0 and above == 0:
            above = Fraction(1, 12)
        if rng.random() < 0.5:
            horizontals[v] = Segment.horizontal(t, t - below, t + above)
        else:
            verticals[v] = Segment.vertical(t, t - below, t + above)
    rep = GridRep(horizontals, verticals)
    edges = set()
    for a, sa in rep.horizontals.items():
        from .geometry import segments_intersect

        for b, sb in rep.verticals.items():
            if segments_intersect(sa, sb) is not None:
                edges.add((min(a, b), max(a, b)))
    return rep, Graph.from_edges(n, edges)
