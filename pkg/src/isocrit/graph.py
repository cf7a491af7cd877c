"""Immutable simple graphs, structural predicates and edge subdivision."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graph data or out-of-range vertex references."""


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` is stored as a sorted tuple of pairs ``(u, v)`` with ``u < v``.
    Use :func:`build_graph` to construct one from untrusted input.
    """

    n: int
    edges: tuple[Edge, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def vertices(self) -> range:
        return range(self.n)

    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def nbr_masks(self) -> list[int]:
        """Open neighbourhoods as integer bitmasks."""
        return [sum(1 << w for w in nb) for nb in self.adj]

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``, relabelled densely in sorted order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(keep))
        _check_vertices(self, old)
        new_of = {v: i for i, v in enumerate(old)}
        edges = [(new_of[u], new_of[v]) for u, v in self.edges if u in new_of and v in new_of]
        return _make(len(old), edges), old

    def remove_vertices(self, drop: Iterable[int]) -> tuple["Graph", list[int]]:
        dropped = set(drop)
        return self.induced(v for v in range(self.n) if v not in dropped)

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _make(n: int, edges: Iterable[Edge]) -> Graph:
    es = sorted(_norm(u, v) for u, v in edges)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in es:
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(n, tuple(es), tuple(tuple(sorted(nb)) for nb in nbrs))


def build_graph(n: int, edges: Iterable[Iterable[int]]) -> Graph:
    """Validate and build a graph; rejects self-loops, duplicates and bad ids."""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    seen: set[Edge] = set()
    for pair in edges:
        try:
            u, v = pair
        except (TypeError, ValueError):
            raise GraphError(f"edge {pair!r} is not a vertex pair") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        e = _norm(u, v)
        if e in seen:
            raise GraphError(f"duplicate edge {e}")
        seen.add(e)
    return _make(n, seen)


def disjoint_union(*graphs: Graph) -> Graph:
    edges: list[Edge] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return _make(offset, edges)


def _check_vertices(g: Graph, vs: Iterable[int]) -> None:
    for v in vs:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for graph on {g.n} vertices")


# --------------------------------------------------------------------------
# subdivision
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SubdivisionResult:
    graph: Graph
    new_vertex_of: Mapping[Edge, int]
    # origin[v] is an int (original vertex) or an Edge (subdivided edge)
    origin: tuple[Union[int, Edge], ...]


def subdivide(g: Graph, F: Iterable[Iterable[int]]) -> SubdivisionResult:
    """Subdivide every edge of ``F`` once.

    Original vertex ids are kept; subdivision vertices get ids ``n, n+1, ...``
    in sorted edge order.
    """
    chosen: set[Edge] = set()
    for pair in F:
        u, v = pair
        e = _norm(u, v)
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise GraphError(f"{e} is not an edge of the graph")
        if e in chosen:
            raise GraphError(f"edge {e} listed twice")
        chosen.add(e)
    order = sorted(chosen)
    new_vertex_of = {e: g.n + i for i, e in enumerate(order)}
    edges: list[Edge] = [e for e in g.edges if e not in chosen]
    for (u, v), w in new_vertex_of.items():
        edges.append((u, w))
        edges.append((v, w))
    origin: tuple[Union[int, Edge], ...] = tuple(range(g.n)) + tuple(order)
    return SubdivisionResult(_make(g.n + len(order), edges), new_vertex_of, origin)


def subdivided(g: Graph, F: Iterable[Iterable[int]]) -> Graph:
    """Shorthand for ``subdivide(g, F).graph``."""
    return subdivide(g, F).graph


# --------------------------------------------------------------------------
# neighbourhoods, packings, distances
# --------------------------------------------------------------------------


def closed_neighborhood(g: Graph, S: Iterable[int]) -> set[int]:
    S = set(S)
    _check_vertices(g, S)
    out = set(S)
    for v in S:
        out.update(g.adj[v])
    return out


def open_neighborhood(g: Graph, S: Iterable[int]) -> set[int]:
    """N(S): all neighbours of members of S (may intersect S)."""
    S = set(S)
    _check_vertices(g, S)
    out: set[int] = set()
    for v in S:
        out.update(g.adj[v])
    return out


def is_independent(g: Graph, S: Iterable[int]) -> bool:
    S = set(S)
    _check_vertices(g, S)
    return not any(w in S for v in S for w in g.adj[v])


def bfs_distances(g: Graph, source: int) -> list[float]:
    """Distances from ``source``; unreachable vertices get ``inf``."""
    dist: list[float] = [float("inf")] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if dist[w] == float("inf"):
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    _check_vertices(g, (u, v))
    return bfs_distances(g, u)[v]


def is_k_packing(g: Graph, S: Iterable[int], k: int) -> bool:
    """True iff all pairwise distances within S exceed ``k``."""
    if k < 1:
        raise GraphError(f"packing parameter must be positive, got {k}")
    S = sorted(set(S))
    _check_vertices(g, S)
    for i, u in enumerate(S[:-1]):
        dist = bfs_distances(g, u)
        if any(dist[v] <= k for v in S[i + 1 :]):
            return False
    return True


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(components(g))


def is_tree(g: Graph) -> bool:
    return is_connected(g) and g.m == g.n - 1


def is_star(g: Graph) -> bool:
    """K_{1,k} for some k >= 0 (K_1 and K_2 included)."""
    if g.n == 0 or g.m != g.n - 1:
        return False
    return any(g.degree(v) == g.n - 1 for v in range(g.n))


def leaves(g: Graph) -> list[int]:
    return [v for v in range(g.n) if g.degree(v) == 1]


def support_vertices(g: Graph) -> list[int]:
    return sorted({g.adj[v][0] for v in leaves(g)})


def diameter(g: Graph) -> float:
    if g.n == 0:
        return 0
    return max(max(bfs_distances(g, v)) for v in range(g.n))


def has_odd_cycle(g: Graph) -> bool:
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return True
    return False


@dataclass(frozen=True)
class StructureReport:
    n: int
    m: int
    connected: bool
    tree: bool
    star: bool
    leaves: tuple[int, ...]
    supports: tuple[int, ...]
    diameter: int | None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "connected": self.connected,
            "tree": self.tree,
            "star": self.star,
            "leaves": list(self.leaves),
            "supports": list(self.supports),
            "diameter": self.diameter,
        }


def classify(g: Graph) -> StructureReport:
    conn = is_connected(g)
    return StructureReport(
        n=g.n,
        m=g.m,
        connected=conn,
        tree=conn and g.m == g.n - 1,
        star=is_star(g),
        leaves=tuple(leaves(g)),
        supports=tuple(support_vertices(g)),
        diameter=int(diameter(g)) if conn else None,
    )
