"""Subdivision number, criticality index and the (ι,1)/(γ,1) characterisations.

Terminology: an edge set ``F`` is *safe* when ``ι(G_F) = ι(G)``. Safe sets are
closed under taking subsets, so ``G`` is (ι,q)-critical exactly for
``q = 1 + max |F|`` over safe ``F``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .graph import (
    Edge,
    Graph,
    GraphError,
    closed_neighborhood,
    has_odd_cycle,
    is_connected,
    is_independent,
    is_k_packing,
    is_star,
    is_tree,
    leaves,
    open_neighborhood,
    subdivided,
    support_vertices,
)
from .isolation import enumerate_min_dominating_sets, enumerate_min_isolating_sets, gamma, iota
from .treedp import least_max_safe_tree, max_safe_tree


class StarError(GraphError):
    """Criticality was requested for a star, where it is undefined."""


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise GraphError("criticality is only defined for connected graphs")


def _require_non_star(g: Graph) -> None:
    _require_connected(g)
    if is_star(g):
        raise StarError("criticality is undefined for stars")


class BudgetExceeded(RuntimeError):
    """The subset search needed more ι evaluations than allowed."""


def _safety_oracle(g: Graph, max_evaluations: int | None = None) -> Callable[[Sequence[int]], bool]:
    base = iota(g)
    edges = g.edges
    used = [0]

    def safe(idx: Sequence[int]) -> bool:
        used[0] += 1
        if max_evaluations is not None and used[0] > max_evaluations:
            raise BudgetExceeded(f"more than {max_evaluations} subdivided graphs evaluated")
        return iota(subdivided(g, [edges[i] for i in idx])) == base

    return safe


def _levelwise_safe_sets(g: Graph, safe: Callable[[Sequence[int]], bool]) -> list[tuple[int, ...]]:
    """All safe index sets of maximum size, in lexicographic order.

    Builds safe sets one size at a time; a candidate is only tested when all
    its one-smaller subsets are safe.
    """
    level: list[tuple[int, ...]] = [()]
    while True:
        known = set(level)
        nxt = []
        for S in level:
            for j in range(S[-1] + 1 if S else 0, g.m):
                T = S + (j,)
                if len(T) > 1 and any(T[:i] + T[i + 1 :] not in known for i in range(len(T) - 1)):
                    continue
                if safe(T):
                    nxt.append(T)
        if not nxt:
            return level
        level = nxt


def max_safe_set(g: Graph, max_evaluations: int | None = None) -> tuple[int, tuple[Edge, ...]]:
    """Largest safe edge set and its lexicographically least witness."""
    _require_non_star(g)
    level = _levelwise_safe_sets(g, _safety_oracle(g, max_evaluations))
    witness = tuple(g.edges[i] for i in level[0])
    return len(witness), witness


def max_safe_set_size(g: Graph) -> int:
    return max_safe_set(g)[0]


def min_unsafe_set(g: Graph) -> tuple[int, tuple[Edge, ...]] | None:
    """Smallest edge set whose subdivision raises ι (lexicographically least).

    ``None`` for stars.
    """
    _require_connected(g)
    if is_star(g):
        return None
    safe = _safety_oracle(g)
    for s in range(1, g.m + 1):
        for T in combinations(range(g.m), s):
            if not safe(T):
                return s, tuple(g.edges[i] for i in T)
    raise AssertionError("subdividing every edge of a connected non-star raises ι")


def subdivision_number(g: Graph) -> int | None:
    """sd_ι(G), or ``None`` for stars."""
    res = min_unsafe_set(g)
    return None if res is None else res[0]


def crit_index(g: Graph, method: str = "auto", max_evaluations: int | None = None) -> int | None:
    """The q for which ``g`` is (ι,q)-critical; ``None`` for stars.

    ``method`` is ``"brute"`` (level-wise search over edge subsets),
    ``"tree"`` (subdivision-aware tree dynamic program) or ``"auto"``
    (tree program for trees, brute force otherwise). ``max_evaluations``
    bounds the brute-force search and raises :class:`BudgetExceeded`.
    """
    _require_connected(g)
    if is_star(g):
        return None
    if method == "auto":
        method = "tree" if is_tree(g) else "brute"
    if method == "tree":
        if not is_tree(g):
            raise GraphError("method 'tree' requires a tree")
        return max_safe_tree(g)[1] + 1
    if method == "brute":
        return max_safe_set(g, max_evaluations)[0] + 1
    raise ValueError(f"unknown method {method!r}")


def is_q_critical(g: Graph, q: int) -> bool:
    if q < 1:
        raise ValueError("q must be positive")
    _require_non_star(g)
    return crit_index(g) == q


@dataclass(frozen=True)
class CritReport:
    iota: int
    m: int
    is_star: bool
    sd_iota: int | None = None
    crit_q: int | None = None
    max_safe_set: tuple[Edge, ...] | None = None
    min_unsafe_witness: tuple[Edge, ...] | None = None

    def as_dict(self) -> dict:
        return {
            "iota": self.iota,
            "m": self.m,
            "is_star": self.is_star,
            "sd_iota": self.sd_iota,
            "crit_q": self.crit_q,
            "max_safe_set": None if self.max_safe_set is None else [list(e) for e in self.max_safe_set],
            "min_unsafe_witness": None
            if self.min_unsafe_witness is None
            else [list(e) for e in self.min_unsafe_witness],
        }


def crit_report(g: Graph, method: str = "auto") -> CritReport:
    """Full criticality report with lexicographically least witnesses.

    With ``method="auto"`` trees use the dynamic program for the safe-set
    witness; ``"brute"`` forces the level-wise search.
    """
    _require_connected(g)
    base = iota(g)
    if is_star(g):
        return CritReport(iota=base, m=g.m, is_star=True)
    if method == "auto" and is_tree(g):
        size, safe_w = least_max_safe_tree(g)
    elif method in ("auto", "brute"):
        size, safe_w = max_safe_set(g)
    else:
        raise ValueError(f"unknown method {method!r}")
    sd, unsafe_w = min_unsafe_set(g)
    return CritReport(
        iota=base,
        m=g.m,
        is_star=False,
        sd_iota=sd,
        crit_q=size + 1,
        max_safe_set=safe_w,
        min_unsafe_witness=unsafe_w,
    )


# --------------------------------------------------------------------------
# critical tripartitions
# --------------------------------------------------------------------------

CONDITIONS = ("partition", "i", "ii", "iii", "iv")


@dataclass(frozen=True)
class TripartitionReport:
    partition: bool
    independent: bool  # (i)  A∪C and B independent
    neighbourhoods: bool  # (ii) N(A) = B = N(C)
    packing: bool  # (iii) A is a 3-packing
    no_leaf_in_a: bool  # (iv)
    # consequences that must hold whenever the check passes
    no_support_in_ac: bool = field(default=False)
    no_odd_cycle: bool = field(default=False)
    leaves_in_c: bool = field(default=False)

    @property
    def passed(self) -> bool:
        return self.first_violation is None

    @property
    def first_violation(self) -> str | None:
        flags = (self.partition, self.independent, self.neighbourhoods, self.packing, self.no_leaf_in_a)
        for name, ok in zip(CONDITIONS, flags):
            if not ok:
                return name
        return None

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {
            "pass": self.passed,
            "first_violation": self.first_violation,
            "partition": self.partition,
            "i": self.independent,
            "ii": self.neighbourhoods,
            "iii": self.packing,
            "iv": self.no_leaf_in_a,
            "no_support_in_ac": self.no_support_in_ac,
            "no_odd_cycle": self.no_odd_cycle,
            "leaves_in_c": self.leaves_in_c,
        }


def check_tripartition(g: Graph, A: Iterable[int], B: Iterable[int], C: Iterable[int]) -> TripartitionReport:
    A, B, C = set(A), set(B), set(C)
    every = A | B | C
    partition = (
        bool(A and B and C)
        and not (A & B or A & C or B & C)
        and every == set(range(g.n))
    )
    in_range = all(0 <= v < g.n for v in every)
    if not in_range:
        return TripartitionReport(False, False, False, False, False)
    leaf = set(leaves(g))
    AC = A | C
    return TripartitionReport(
        partition=partition,
        independent=is_independent(g, AC) and is_independent(g, B),
        neighbourhoods=open_neighborhood(g, A) == B == open_neighborhood(g, C),
        packing=is_k_packing(g, A, 3),
        no_leaf_in_a=not (A & leaf),
        no_support_in_ac=not (AC & set(support_vertices(g))),
        no_odd_cycle=not has_odd_cycle(g),
        leaves_in_c=leaf <= C,
    )


def induced_tripartition(g: Graph, D: Iterable[int]) -> tuple[set[int], set[int], set[int]]:
    """``(D, N(D), V - N[D])`` for a vertex set ``D``."""
    D = set(D)
    closed = closed_neighborhood(g, D)
    return D, open_neighborhood(g, D), set(range(g.n)) - closed


@dataclass(frozen=True)
class Crit1Verdict:
    critical: bool
    method: str

    def __bool__(self) -> bool:
        return self.critical


class MethodDisagreement(AssertionError):
    """The structural and brute-force (ι,1) tests disagree."""


def is_iota1_critical_structural(g: Graph) -> bool:
    _require_connected(g)
    return all(check_tripartition(g, *induced_tripartition(g, D)).passed for D in enumerate_min_isolating_sets(g))


def is_iota1_critical(g: Graph, method: str = "structural") -> Crit1Verdict:
    """Decide (ι,1)-criticality via tripartitions, brute force, or both."""
    _require_connected(g)
    if method == "structural":
        return Crit1Verdict(is_iota1_critical_structural(g), method)
    if method == "brute":
        return Crit1Verdict(crit_index(g, "brute") == 1, method)
    if method == "both":
        s = is_iota1_critical_structural(g)
        b = crit_index(g, "brute") == 1
        if s != b:
            raise MethodDisagreement(f"structural={s} but brute force={b}")
        return Crit1Verdict(s, method)
    raise ValueError(f"unknown method {method!r}")


def has_unique_min_isolating_set(g: Graph) -> bool:
    return len(enumerate_min_isolating_sets(g)) == 1


# --------------------------------------------------------------------------
# domination
# --------------------------------------------------------------------------


def is_gamma1_critical(g: Graph) -> bool:
    """Every γ-set is a 2-packing, with K_2 as the one exception."""
    _require_connected(g)
    if g.n == 2:
        return False
    return all(is_k_packing(g, D, 2) for D in enumerate_min_dominating_sets(g))


def is_gamma1_critical_direct(g: Graph) -> bool:
    """Subdividing any single edge raises γ."""
    _require_connected(g)
    base = gamma(g)
    return all(gamma(subdivided(g, [e])) > base for e in g.edges)

