"""Exact isolation number, minimum isolating sets and domination number."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .graph import Graph, GraphError, closed_neighborhood, is_forest
from .treedp import iota_tree_dp


@dataclass(frozen=True)
class MinSetFamily:
    """All minimum sets of some kind, each a sorted tuple, in lexicographic order."""

    sets: tuple[tuple[int, ...], ...]
    size: int

    @property
    def iota(self) -> int:
        return self.size

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.sets)


def is_isolating(g: Graph, D: Iterable[int]) -> bool:
    """True iff ``G - N[D]`` has no edge."""
    covered = closed_neighborhood(g, D)
    return all(u in covered or v in covered for u, v in g.edges)


def is_dominating(g: Graph, D: Iterable[int]) -> bool:
    return len(closed_neighborhood(g, D)) == g.n


# --------------------------------------------------------------------------
# brute force oracle
# --------------------------------------------------------------------------


def _closed_masks(g: Graph) -> list[int]:
    return [(1 << v) | sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def _edge_masks(g: Graph) -> list[int]:
    return [(1 << u) | (1 << v) for u, v in g.edges]


def _isolating_mask(cover: int, edge_masks: list[int]) -> bool:
    return all(cover & e for e in edge_masks)


def _sets_of_size(g: Graph, k: int, test) -> Iterator[tuple[int, ...]]:
    closed = _closed_masks(g)
    for D in combinations(range(g.n), k):
        cover = 0
        for v in D:
            cover |= closed[v]
        if test(cover):
            yield D


def iota_bruteforce(g: Graph) -> int:
    """Smallest isolating set size by trying every vertex subset by size."""
    edges = _edge_masks(g)
    if not edges:
        return 0
    for k in range(1, g.n + 1):
        for _ in _sets_of_size(g, k, lambda cover: _isolating_mask(cover, edges)):
            return k
    raise AssertionError("V(G) is always isolating")


def enumerate_min_isolating_sets_bruteforce(g: Graph) -> MinSetFamily:
    edges = _edge_masks(g)
    k = iota_bruteforce(g)
    sets = tuple(_sets_of_size(g, k, lambda cover: _isolating_mask(cover, edges)))
    return MinSetFamily(sets, k)


# --------------------------------------------------------------------------
# fast routes
# --------------------------------------------------------------------------


def iota_tree(g: Graph) -> int:
    """ι of a forest in linear time."""
    if not is_forest(g):
        raise GraphError("iota_tree requires a forest")
    return iota_tree_dp(g)


class _Search:
    """Branch and bound over uncovered edges.

    Any isolating set meets ``N[u] ∪ N[v]`` for every edge ``uv`` left
    uncovered, so we branch on the vertices of that set, forbidding earlier
    siblings to keep branches disjoint. The lower bound packs uncovered edges
    whose admissible branching sets are pairwise disjoint.
    """

    def __init__(self, g: Graph):
        self.closed = _closed_masks(g)
        self.edges = g.edges
        self.cand = [self.closed[u] | self.closed[v] for u, v in g.edges]
        self.emask = _edge_masks(g)

    def _scan(self, cover: int, forbidden: int) -> tuple[int, int]:
        """Return (lower bound, branching mask) or (-1, 0) if infeasible."""
        used = 0
        bound = 0
        branch = 0
        branch_size = 1 << 30
        for em, cm in zip(self.emask, self.cand):
            if cover & em:
                continue
            allowed = cm & ~forbidden
            if not allowed:
                return -1, 0
            if not allowed & used:
                used |= allowed
                bound += 1
            size = allowed.bit_count()
            if size < branch_size:
                branch, branch_size = allowed, size
        return bound, branch

    def minimum(self, upper: int) -> int:
        best = [upper]

        def rec(cover: int, forbidden: int, depth: int) -> None:
            bound, branch = self._scan(cover, forbidden)
            if bound < 0 or depth + bound >= best[0]:
                return
            if not branch:
                best[0] = depth
                return
            while branch:
                low = branch & -branch
                v = low.bit_length() - 1
                rec(cover | self.closed[v], forbidden, depth + 1)
                forbidden |= low
                branch ^= low

        rec(0, 0, 0)
        return best[0]

    def all_of_size(self, k: int) -> list[tuple[int, ...]]:
        found: list[tuple[int, ...]] = []

        def rec(cover: int, forbidden: int, chosen: list[int]) -> None:
            bound, branch = self._scan(cover, forbidden)
            if bound < 0 or len(chosen) + bound > k:
                return
            if not branch:
                if len(chosen) == k:
                    found.append(tuple(sorted(chosen)))
                return
            while branch:
                low = branch & -branch
                v = low.bit_length() - 1
                chosen.append(v)
                rec(cover | self.closed[v], forbidden, chosen)
                chosen.pop()
                forbidden |= low
                branch ^= low

        rec(0, 0, [])
        return sorted(found)


def _greedy_upper(g: Graph) -> int:
    closed = _closed_masks(g)
    emask = _edge_masks(g)
    cover = 0
    size = 0
    while not _isolating_mask(cover, emask):
        best_v, best_gain = 0, -1
        for v in range(g.n):
            c = cover | closed[v]
            gain = sum(1 for e in emask if c & e and not cover & e)
            if gain > best_gain:
                best_v, best_gain = v, gain
        cover |= closed[best_v]
        size += 1
    return size


def iota_bnb(g: Graph) -> int:
    if not g.edges:
        return 0
    upper = _greedy_upper(g)
    return _Search(g).minimum(upper)


def iota(g: Graph) -> int:
    """ι(G): tree dynamic program for forests, branch and bound otherwise."""
    if is_forest(g):
        return iota_tree_dp(g)
    return iota_bnb(g)


def enumerate_min_isolating_sets(g: Graph) -> MinSetFamily:
    """Every isolating set of size ι(G), lexicographically ordered."""
    k = iota(g)
    if k == 0:
        return MinSetFamily(((),), 0)
    return MinSetFamily(tuple(_Search(g).all_of_size(k)), k)


# --------------------------------------------------------------------------
# domination
# --------------------------------------------------------------------------


def gamma(g: Graph) -> int:
    full = (1 << g.n) - 1
    for k in range(g.n + 1):
        for _ in _sets_of_size(g, k, lambda cover: cover == full):
            return k
    raise AssertionError("unreachable")


def enumerate_min_dominating_sets(g: Graph) -> MinSetFamily:
    full = (1 << g.n) - 1
    k = gamma(g)
    return MinSetFamily(tuple(_sets_of_size(g, k, lambda cover: cover == full)), k)

