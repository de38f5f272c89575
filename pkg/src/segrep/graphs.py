"""Simple undirected graphs with dense 1..n vertex ids, plus the constructions
used throughout the workbench (full subdivisions, apex graphs) and edge-list I/O.

Vertex ids are always 1..n.  Constructions assign new ids deterministically
(subdivision vertices take the next free indices, edge by edge in sorted
order), so every derived graph is reproducible bit for bit.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

Edge = tuple[int, int]

ROLE_ORIGINAL = "original"
ROLE_SUBDIVISION = "subdivision"
ROLE_APEX = "apex"


class GraphFormatError(ValueError):
    """Raised for malformed edge-list text."""


class OddCycleError(ValueError):
    """Raised when a 2-coloring is requested for a non-bipartite graph."""

    def __init__(self, cycle: tuple[int, ...]):
        self.cycle = cycle
        super().__init__(f"graph contains an odd cycle: {list(cycle)}")


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices 1..n."""

    n: int
    edges: frozenset[Edge]
    roles: Mapping[int, str] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = frozenset(_norm_edge(u, v) for u, v in self.edges)
        object.__setattr__(self, "edges", norm)
        for u, v in norm:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u},{v}) out of range 1..{self.n}")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]],
                   roles: Mapping[int, str] | None = None) -> "Graph":
        return Graph(n, frozenset(_norm_edge(u, v) for u, v in edges), roles)

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices()}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {1}
        queue = deque([1])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n


@dataclass(frozen=True)
class BipartiteGraph:
    """A graph together with a fixed bipartition (part_a, part_b)."""

    graph: Graph
    part_a: frozenset[int]
    part_b: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "part_a", frozenset(self.part_a))
        object.__setattr__(self, "part_b", frozenset(self.part_b))
        all_v = set(self.graph.vertices())
        if self.part_a | self.part_b != all_v or self.part_a & self.part_b:
            raise ValueError("parts must partition the vertex set")
        for u, v in self.graph.edges:
            if (u in self.part_a) == (v in self.part_a):
                raise ValueError(f"edge ({u},{v}) does not cross the bipartition")

    def side(self, v: int) -> str:
        return "a" if v in self.part_a else "b"


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def full_subdivision(g: Graph, k: int) -> Graph:
    """Replace every edge xy by an induced path x, u1, ..., uk, y.

    Subdivision vertices take the next free ids, edge by edge in sorted edge
    order, so |V| = n + k*|E| and |E'| = (k+1)*|E| with reproducible ids.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    roles: dict[int, str] = {v: ROLE_ORIGINAL for v in g.vertices()}
    if g.roles:
        roles.update(g.roles)
    edges: list[Edge] = []
    next_id = g.n
    for x, y in g.sorted_edges():
        chain = [x]
        for _ in range(k):
            next_id += 1
            roles[next_id] = ROLE_SUBDIVISION
            chain.append(next_id)
        chain.append(y)
        edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(next_id, edges, roles)


def subdivision_paths(g: Graph, k: int) -> dict[Edge, tuple[int, ...]]:
    """The full path (x, u1, ..., uk, y) per edge, matching full_subdivision ids."""
    paths: dict[Edge, tuple[int, ...]] = {}
    next_id = g.n
    for x, y in g.sorted_edges():
        ids = tuple(range(next_id + 1, next_id + k + 1))
        next_id += k
        paths[(x, y)] = (x, *ids, y)
    return paths


def apex_vertex(g: Graph, k: int) -> int:
    """Id of the apex vertex added by apex_graph(g, k)."""
    return g.n + k * len(g.edges) + 1


def apex_graph(g: Graph, k: int) -> Graph:
    """Full k-subdivision of g plus one apex vertex adjacent to all originals.

    k must be odd; that makes the result bipartite (originals on one side).
    """
    if k % 2 == 0:
        raise ValueError("subdivision parameter k must be odd")
    sub = full_subdivision(g, k)
    apex = sub.n + 1
    roles = dict(sub.roles or {})
    roles[apex] = ROLE_APEX
    edges = set(sub.edges)
    edges.update((v, apex) for v in g.vertices())
    return Graph.from_edges(apex, edges, roles)


def subdivide_edge(g: Graph, edge: tuple[int, int], count: int) -> Graph:
    """Replace one edge by a path with `count` inner vertices (new top ids)."""
    e = _norm_edge(*edge)
    if e not in g.edges:
        raise ValueError(f"edge {e} not in graph")
    if count < 1:
        raise ValueError("count must be positive")
    roles = dict(g.roles or {})
    edges = set(g.edges)
    edges.remove(e)
    chain = [e[0]] + list(range(g.n + 1, g.n + count + 1)) + [e[1]]
    for w in chain[1:-1]:
        roles[w] = ROLE_SUBDIVISION
    edges.update(_norm_edge(a, b) for a, b in zip(chain, chain[1:]))
    return Graph.from_edges(g.n + count, edges, roles or None)


# ---------------------------------------------------------------------------
# Structure queries
# ---------------------------------------------------------------------------


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle; math.inf for forests.

    BFS from every vertex; a non-tree edge seen at depths d(u), d(v) closes a
    cycle of length <= d(u) + d(v) + 1 through the root.  O(n*m).
    """
    best: int | float = math.inf
    adj = g.adjacency
    for root in g.vertices():
        dist = {root: 0}
        parent = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if dist[u] * 2 >= best:
                continue
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w and parent[w] != u:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def bipartition(g: Graph) -> BipartiteGraph:
    """Canonical 2-coloring: the lowest-index vertex of each component goes
    into part A.  Raises OddCycleError with an explicit odd cycle otherwise."""
    color: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for start in g.vertices():
        if start in color:
            continue
        color[start] = 0
        parent[start] = None
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    raise OddCycleError(_odd_cycle(u, w, parent))
    part_a = frozenset(v for v in g.vertices() if color[v] == 0)
    part_b = frozenset(v for v in g.vertices() if color[v] == 1)
    return BipartiteGraph(g, part_a, part_b)


def _odd_cycle(u: int, w: int, parent: Mapping[int, int | None]) -> tuple[int, ...]:
    path_u = [u]
    while parent[path_u[-1]] is not None:
        path_u.append(parent[path_u[-1]])  # type: ignore[arg-type]
    path_w = [w]
    while parent[path_w[-1]] is not None:
        path_w.append(parent[path_w[-1]])  # type: ignore[arg-type]
    in_u = {v: i for i, v in enumerate(path_u)}
    meet = next(v for v in path_w if v in in_u)
    cycle = path_u[: in_u[meet] + 1] + path_w[: path_w.index(meet)][::-1]
    return tuple(cycle)


# ---------------------------------------------------------------------------
# Edge-list text format: `p <n>` header, `e <u> <v>` per edge, `c` comments.
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    n: int | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate header")
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphFormatError(f"line {lineno}: expected 'p <n>'")
            n = int(parts[1])
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: non-integer vertex") from exc
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise GraphFormatError(f"line {lineno}: bad edge ({u},{v})")
            edges.append(_norm_edge(u, v))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p <n>' header")
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p {g.n}")
    lines.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"
