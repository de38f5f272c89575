"""Desk-scale exact recognizers with witness output.

The geometric questions are reduced to combinatorial order models:

* Grounded L-shapes.  Fix the left-to-right anchor order.  Give every shape
  the maximal useful left extent (ending just right of the anchor before its
  leftmost neighbor).  Then vertex y intersects an earlier vertex x exactly
  when left_extent(y) < anchor(x) and height(y) < height(x), so the order is
  realizable iff the implied strict height constraints are acyclic:
  an edge x<y forces height(y) < height(x); a non-edge x<y with x strictly
  between y's leftmost earlier neighbor and y forces height(x) < height(y).
  Maximal extents minimize the non-edge constraint set, so acyclicity is
  equivalent to the existence of real coordinates for that anchor order.

* Sticks.  Fix the ground order.  An edge ab (a vertical, b horizontal) is
  realizable iff b precedes a and both segments reach the distance between
  them; setting every reach to exactly the farthest needed neighbor is
  simultaneously extremal, so one greedy check per order is complete.

* Stabbed grid.  Any stabbed representation can be rewritten in rank normal
  form (integer stab ranks, extents spanning exactly the neighbor ranks), so
  searching orientation assignments times rank permutations is complete.

Searches branch over vertices in ascending id, so the first witness found is
the lexicographically smallest feasible order; with jobs > 1 the first
branching level is distributed and a reducer picks the same minimum.
"""

from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass
from fractions import Fraction

from .geometry import Segment
from .graphs import BipartiteGraph, Graph, OddCycleError, bipartition
from .representations import (
    GridRep,
    GroundedLRep,
    LShape,
    StickRep,
    StickSegment,
    verify_grounded,
    verify_stabgig,
    verify_stick,
)

HALF = Fraction(1, 2)

DEFAULT_GROUNDED_LIMIT = 13
DEFAULT_STICK_LIMIT = 12
DEFAULT_STABGIG_LIMIT = 9


class SizeLimitExceededError(ValueError):
    """Input too large for exhaustive search; raise the limit explicitly."""


@dataclass(frozen=True)
class Infeasible:
    """Certificate for an infeasible order."""

    reason: str
    cycle: tuple[int, ...] = ()
    pairs: tuple[tuple[int, int], ...] = ()


# ---------------------------------------------------------------------------
# Grounded L-shapes: order model
# ---------------------------------------------------------------------------


def _height_arcs(g: Graph, order: tuple[int, ...]) -> dict[int, set[int]]:
    """Arc u -> v means height(u) must exceed height(v)."""
    pos = {v: i for i, v in enumerate(order)}
    arcs: dict[int, set[int]] = {v: set() for v in order}
    for y in order:
        left = [x for x in g.neighbors(y) if pos[x] < pos[y]]
        for x in left:
            arcs[x].add(y)
        if left:
            p_star = min(pos[x] for x in left)
            for q in range(p_star + 1, pos[y]):
                z = order[q]
                if z not in g.neighbors(y):
                    arcs[y].add(z)
    return arcs


def _topo_tallest_first(arcs: dict[int, set[int]]) -> tuple[int, ...] | None:
    indeg = {v: 0 for v in arcs}
    for targets in arcs.values():
        for w in targets:
            indeg[w] += 1
    ready = sorted(v for v, d in indeg.items() if d == 0)
    out: list[int] = []
    while ready:
        v = ready.pop(0)
        out.append(v)
        inserts = []
        for w in sorted(arcs[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                inserts.append(w)
        for w in inserts:
            # keep the ready queue sorted for determinism
            lo = 0
            while lo < len(ready) and ready[lo] < w:
                lo += 1
            ready.insert(lo, w)
    if len(out) != len(arcs):
        return None
    return tuple(out)


def _extract_cycle(arcs: dict[int, set[int]], stuck: set[int]) -> tuple[int, ...]:
    preds: dict[int, list[int]] = {v: [] for v in stuck}
    for u in stuck:
        for w in arcs[u]:
            if w in stuck:
                preds[w].append(u)
    v = min(stuck)
    trail: list[int] = []
    seen: dict[int, int] = {}
    while v not in seen:
        seen[v] = len(trail)
        trail.append(v)
        v = min(preds[v])
    return tuple(reversed(trail[seen[v]:]))


def check_anchor_order(g: Graph, order: tuple[int, ...]) -> GroundedLRep | Infeasible:
    """Decide one anchor order and emit a witness representation if feasible.

    Anchors sit at 1..n in the given order; heights come from a topological
    order of the constraint digraph; each left extent stops half a unit short
    of the leftmost earlier neighbor (or of the own anchor if there is none).
    """
    if sorted(order) != list(g.vertices()):
        raise ValueError("order must be a permutation of the vertex set")
    arcs = _height_arcs(g, order)
    topo = _topo_tallest_first(arcs)
    if topo is None:
        placed = set()
        indeg = {v: 0 for v in arcs}
        for targets in arcs.values():
            for w in targets:
                indeg[w] += 1
        changed = True
        while changed:
            changed = False
            for v in list(indeg):
                if indeg[v] == 0 and v not in placed:
                    placed.add(v)
                    for w in arcs[v]:
                        indeg[w] -= 1
                    changed = True
        stuck = {v for v in arcs if v not in placed}
        return Infeasible("height constraints are cyclic",
                          cycle=_extract_cycle(arcs, stuck))
    pos = {v: i for i, v in enumerate(order)}
    height = {v: Fraction(len(order) - i) for i, v in enumerate(topo)}
    shapes = []
    for y in order:
        anchor = Fraction(pos[y] + 1)
        left = [x for x in g.neighbors(y) if pos[x] < pos[y]]
        if left:
            extent = Fraction(min(pos[x] for x in left) + 1) - HALF
        else:
            extent = anchor - HALF
        shapes.append(LShape(y, anchor, height[y], extent))
    rep = GroundedLRep(shapes)
    report = verify_grounded(rep, g)
    if not report.valid:  # pragma: no cover - model soundness guard
        raise AssertionError(f"witness failed verification: {report.summary()}")
    return rep


# ---------------------------------------------------------------------------
# Grounded L-shapes: backtracking over anchor orders
#
# The search keeps, per placed vertex, the bitmask of vertices reachable from
# it in the height-constraint digraph.  All arcs created by placing y touch
# y, so a new cycle exists iff some non-neighbor target of y already reaches
# a placed neighbor of y; that is one mask test, no mutation needed.
# ---------------------------------------------------------------------------


def _search_grounded(g: Graph, first: int | None, want_all: bool,
                     cap: int | None = None):
    n = g.n
    adj = [0] * (n + 1)
    for u, v in g.edges:
        adj[u] |= 1 << (v - 1)
        adj[v] |= 1 << (u - 1)
    reach = [0] * (n + 1)
    prefix: list[int] = []
    placed = 0
    found: list[tuple[int, ...]] = []

    def place(y: int):
        """Add y's arcs; return an undo log, or None if that closes a cycle."""
        nonlocal placed
        ybit = 1 << (y - 1)
        nbrs = adj[y] & placed
        log: list[tuple[int, int]] = []
        if nbrs:
            i0 = 0
            while not ((1 << (prefix[i0] - 1)) & nbrs):
                i0 += 1
            targets = 0
            for z in prefix[i0 + 1:]:
                zbit = 1 << (z - 1)
                if not (zbit & adj[y]):
                    targets |= zbit
            union = targets
            m = targets
            while m:
                b = m & -m
                m ^= b
                union |= reach[b.bit_length()]
            if union & nbrs:
                return None
            log.append((y, reach[y]))
            reach[y] = union
            gain = ybit | union
            for w in prefix:
                wbit = 1 << (w - 1)
                if (wbit & nbrs) or (reach[w] & nbrs):
                    if gain & ~reach[w]:
                        log.append((w, reach[w]))
                        reach[w] |= gain
        prefix.append(y)
        placed |= ybit
        return log

    def unplace(y: int, log) -> None:
        nonlocal placed
        prefix.pop()
        placed &= ~(1 << (y - 1))
        for w, old in reversed(log):
            reach[w] = old

    stop = object()  # sentinel: enumeration cap reached

    def descend():
        if len(prefix) == n:
            order = tuple(prefix)
            if want_all:
                found.append(order)
                return stop if cap is not None and len(found) > cap else None
            return order
        for y in g.vertices():
            if placed & (1 << (y - 1)):
                continue
            log = place(y)
            if log is None:
                continue
            hit = descend()
            unplace(y, log)
            if hit is not None:
                return hit
        return None

    if first is not None:
        log = place(first)
        if log is None:
            return [] if want_all else None
        hit = descend()
        return found if want_all else hit
    hit = descend()
    return found if want_all else hit


def _grounded_branch(args):
    g, first, want_all = args
    return _search_grounded(g, first, want_all)


def _first_level_split(g: Graph, want_all: bool, jobs: int):
    work = [(g, first, want_all) for first in g.vertices()]
    with multiprocessing.Pool(jobs) as pool:
        return pool.map(_grounded_branch, work)


def enumerate_grounded_orders(g: Graph, jobs: int = 1) -> list[tuple[int, ...]]:
    """Every anchor order that admits a grounded L-representation."""
    if g.n == 0:
        return [()]
    if jobs > 1 and g.n > 1:
        chunks = _first_level_split(g, True, jobs)
        return [order for chunk in chunks for order in chunk]
    return _search_grounded(g, None, True)


def recognize_grounded_l(g: Graph, limit: int = DEFAULT_GROUNDED_LIMIT,
                         jobs: int = 1) -> GroundedLRep | None:
    """Search anchor orders for a grounded L-representation of g."""
    if g.n > limit:
        raise SizeLimitExceededError(f"{g.n} vertices exceeds limit {limit}")
    if g.n == 0:
        return GroundedLRep([])
    if jobs > 1 and g.n > 1:
        for order in _first_level_split(g, False, jobs):
            if order is not None:
                break
        else:
            return None
    else:
        order = _search_grounded(g, None, False)
        if order is None:
            return None
    witness = check_anchor_order(g, order)
    if not isinstance(witness, GroundedLRep):  # pragma: no cover - model agreement guard
        raise AssertionError("incremental search accepted an infeasible order")
    return witness


# ---------------------------------------------------------------------------
# Sticks
# ---------------------------------------------------------------------------


def check_ground_order(g: BipartiteGraph, order: tuple[int, ...]) -> StickRep | Infeasible:
    """Decide one ground order with greedy reaches and emit a stick witness.

    Every segment reaches exactly its farthest neighbor (isolated vertices
    get length 1/2); the order is feasible iff all edges point the right way
    and the greedy reaches create no spurious crossing.
    """
    if sorted(order) != sorted(g.graph.vertices()):
        raise ValueError("order must be a permutation of the vertex set")
    pos = {v: i + 1 for i, v in enumerate(order)}
    missing = []
    for a in sorted(g.part_a):
        for b in g.graph.neighbors(a):
            if pos[b] > pos[a]:
                missing.append((min(a, b), max(a, b)))
    if missing:
        return Infeasible("edge endpoints are ordered the wrong way",
                          pairs=tuple(sorted(missing)))
    reach: dict[int, int] = {}
    for v in g.graph.vertices():
        dists = [abs(pos[v] - pos[w]) for w in g.graph.neighbors(v)]
        reach[v] = max(dists) if dists else 0
    spurious = []
    for a in sorted(g.part_a):
        for b in sorted(g.part_b):
            if b in g.graph.neighbors(a):
                continue
            d = pos[a] - pos[b]
            if d > 0 and reach[a] >= d and reach[b] >= d:
                spurious.append((min(a, b), max(a, b)))
    if spurious:
        return Infeasible("greedy reaches create spurious crossings",
                          pairs=tuple(sorted(spurious)))
    verticals = {a: StickSegment(Fraction(pos[a]), Fraction(reach[a]) or HALF)
                 for a in g.part_a}
    horizontals = {b: StickSegment(Fraction(pos[b]), Fraction(reach[b]) or HALF)
                   for b in g.part_b}
    rep = StickRep(verticals, horizontals)
    report = verify_stick(rep, g)
    if not report.valid:  # pragma: no cover - model soundness guard
        raise AssertionError(f"witness failed verification: {report.summary()}")
    return rep


def recognize_stick(g: BipartiteGraph, limit: int = DEFAULT_STICK_LIMIT) -> StickRep | None:
    """Search ground orders for a stick representation of g."""
    n = g.graph.n
    if n > limit:
        raise SizeLimitExceededError(f"{n} vertices exceeds limit {limit}")
    if n == 0:
        return StickRep({}, {})
    verts = list(g.graph.vertices())
    neighbors = g.graph.adjacency
    in_a = {v: v in g.part_a for v in verts}
    order: list[int] = []
    pos: dict[int, int] = {}
    placed: set[int] = set()

    def spurious_certain(a: int, t: int) -> bool:
        # exact test, evaluated once per non-edge when its A endpoint lands
        dists = [t - pos[x] for x in neighbors[a]]
        len_a = max(dists) if dists else 0
        for b in order[:-1]:
            if in_a[b] or b in neighbors[a]:
                continue
            d = t - pos[b]
            if len_a < d:
                continue
            placed_reach = max((abs(pos[b] - pos[x]) for x in neighbors[b] if x in placed),
                               default=0)
            has_unplaced = any(x not in placed for x in neighbors[b])
            if has_unplaced or placed_reach >= d:
                return True
        return False

    def descend() -> tuple[int, ...] | None:
        if len(order) == n:
            return tuple(order)
        t = len(order) + 1
        for y in verts:
            if y in placed:
                continue
            if in_a[y] and any(x not in placed for x in neighbors[y]):
                continue
            placed.add(y)
            order.append(y)
            pos[y] = t
            ok = not (in_a[y] and spurious_certain(y, t))
            hit = descend() if ok else None
            placed.discard(y)
            order.pop()
            del pos[y]
            if hit is not None:
                return hit
        return None

    full = descend()
    if full is None:
        return None
    witness = check_ground_order(g, full)
    if not isinstance(witness, StickRep):  # pragma: no cover - model agreement guard
        raise AssertionError("search accepted an infeasible ground order")
    return witness


# ---------------------------------------------------------------------------
# Stabbed grid
# ---------------------------------------------------------------------------


def recognize_stabgig(g: Graph, limit: int = DEFAULT_STABGIG_LIMIT) -> GridRep | None:
    """Search rank normal forms for a stabbed grid representation of g.

    Tries both orientation assignments per connected component and every
    stab-rank permutation, with extents spanning exactly the neighbor ranks.
    """
    if g.n > limit:
        raise SizeLimitExceededError(f"{g.n} vertices exceeds limit {limit}")
    if g.n == 0:
        return GridRep({}, {})
    try:
        bp = bipartition(g)
    except OddCycleError:
        return None
    components = _components(g)
    # Degree-0 components gain nothing from flipping; pin them horizontal.
    flippable = [comp for comp in components if len(comp) > 1]
    pinned = [v for comp in components if len(comp) == 1 for v in comp]
    adjacency = g.adjacency
    verts = list(g.vertices())
    nonedges = [(u, v) for i, u in enumerate(verts) for v in verts[i + 1:]
                if v not in adjacency[u]]
    for flips in itertools.product((False, True), repeat=len(flippable)):
        horizontal: set[int] = set(pinned)
        for comp, flip in zip(flippable, flips):
            for v in comp:
                a_side = v in bp.part_a
                if a_side != flip:
                    horizontal.add(v)
        cross = [(u, v) for u, v in nonedges if (u in horizontal) != (v in horizontal)]
        for perm in itertools.permutations(verts):
            rank = {v: i + 1 for i, v in enumerate(perm)}
            lo: dict[int, int] = {}
            hi: dict[int, int] = {}
            for v in verts:
                ranks = [rank[w] for w in adjacency[v]] + [rank[v]]
                lo[v], hi[v] = min(ranks), max(ranks)
            ok = True
            for u, v in cross:
                if lo[u] <= rank[v] <= hi[u] and lo[v] <= rank[u] <= hi[v]:
                    ok = False
                    break
            if not ok:
                continue
            rep = _grid_from_ranks(rank, lo, hi, horizontal)
            report = verify_stabgig(rep, g)
            if not report.valid:  # pragma: no cover - model soundness guard
                raise AssertionError(f"witness failed verification: {report.summary()}")
            return rep
    return None


def _grid_from_ranks(rank, lo, hi, horizontal) -> GridRep:
    hsegs: dict[int, Segment] = {}
    vsegs: dict[int, Segment] = {}
    for v, r in rank.items():
        a, b = Fraction(lo[v]), Fraction(hi[v])
        if a == b:
            a, b = a - HALF, b + HALF
        if v in horizontal:
            hsegs[v] = Segment.horizontal(Fraction(r), a, b)
        else:
            vsegs[v] = Segment.vertical(Fraction(r), a, b)
    return GridRep(hsegs, vsegs)


def _components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps: list[list[int]] = []
    for start in g.vertices():
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps
