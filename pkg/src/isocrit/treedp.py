"""Rooted-tree dynamic programs for isolation in trees and subdivided trees.

Each vertex ``v`` of a rooted tree is summarised, with respect to a partial
isolating set ``D`` inside its subtree, by one of four states:

``IN``
    ``v`` is in ``D``.
``DOM``
    ``v`` is not in ``D`` but has a child in ``D``.
``NEED``
    ``v`` is not in ``N[D]`` yet, and some edge below ``v`` is only coverable
    through ``v``; the parent must be in ``D``.
``FREE``
    ``v`` is not in ``N[D]`` and every edge below ``v`` is covered without it;
    the parent edge still needs the parent in ``N[D]``.

While folding children into a parent that is not in ``D`` we only need to
remember whether some child is ``IN`` (parent dominated) and whether some child
is ``FREE`` (parent must end up dominated). A subdivided edge ``p-c`` is a
degree-two node between ``p`` and ``c`` and goes through the same fold.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Edge, Graph, GraphError, components, is_forest

IN, DOM, NEED, FREE = range(4)
STATE_NAMES = ("IN", "DOM", "NEED", "FREE")

# fold states of a parent under construction
_P_IN, _P_OUT, _P_OUT_FREE, _P_OUT_IN = range(4)
# fold state -> final state
_FINAL = (IN, FREE, NEED, DOM)
# _STEP[fold][child_state] -> new fold state, -1 when infeasible
_STEP = (
    (_P_IN, _P_IN, _P_IN, _P_IN),
    (_P_OUT_IN, _P_OUT, -1, _P_OUT_FREE),
    (_P_OUT_IN, _P_OUT_FREE, -1, _P_OUT_FREE),
    (_P_OUT_IN, _P_OUT_IN, -1, _P_OUT_IN),
)
_ROOT_OK = (True, True, False, True)

INF = 1 << 30
NEG = -(1 << 30)


def rooted_order(g: Graph, root: int) -> tuple[list[int], list[int]]:
    """Preorder of the component containing ``root`` and the parent array."""
    parent = [-1] * g.n
    parent[root] = root
    order = [root]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w in g.adj[v]:
            if parent[w] == -1:
                parent[w] = v
                order.append(w)
    parent[root] = -1
    return order, parent


def _require_forest(g: Graph) -> None:
    if not is_forest(g):
        raise GraphError("input is not a forest")


# --------------------------------------------------------------------------
# minimum isolating set size
# --------------------------------------------------------------------------


def _fold_min(fold: list[int], child: Sequence[int]) -> list[int]:
    out = [INF] * 4
    for ps in range(4):
        a = fold[ps]
        if a >= INF:
            continue
        row = _STEP[ps]
        for cs in range(4):
            b = child[cs]
            nps = row[cs]
            if b >= INF or nps < 0:
                continue
            if a + b < out[nps]:
                out[nps] = a + b
    return out


def _final_min(fold: list[int]) -> list[int]:
    out = [INF] * 4
    for ps in range(4):
        out[_FINAL[ps]] = fold[ps]
    return out


def _subdivided_min(child: Sequence[int]) -> list[int]:
    return _final_min(_fold_min([1, 0, INF, INF], child))


def iota_tree_dp(g: Graph, subdivided_edges: frozenset[Edge] | set[Edge] = frozenset()) -> int:
    """ι of the forest ``g`` with the edges in ``subdivided_edges`` subdivided.

    The subdivided forest is never materialised.
    """
    _require_forest(g)
    total = 0
    for comp in components(g):
        order, parent = rooted_order(g, comp[0])
        table: list[list[int] | None] = [None] * g.n
        for v in reversed(order):
            fold = [1, 0, INF, INF]
            for c in g.adj[v]:
                if c == parent[v]:
                    continue
                child = table[c]
                if subdivided_edges and ((v, c) if v < c else (c, v)) in subdivided_edges:
                    child = _subdivided_min(child)
                fold = _fold_min(fold, child)
                table[c] = None
            table[v] = _final_min(fold)
        root = table[order[0]]
        total += min(root[s] for s in range(4) if _ROOT_OK[s])
    return total


# --------------------------------------------------------------------------
# largest subdivision set keeping ι fixed
# --------------------------------------------------------------------------
# Tables are indexed [state][k] and hold the largest number of subdivided
# edges inside the subtree given |D ∩ subtree| = k (NEG if infeasible).


def _fold_max(fold: list[list[int]], child: list[list[int]], K: int) -> tuple[list[list[int]], list]:
    out = [[NEG] * (K + 1) for _ in range(4)]
    # back[nps][k] = (ps, k1, cs, k2) of the chosen combination
    back: list[list[tuple[int, int, int, int] | None]] = [[None] * (K + 1) for _ in range(4)]
    for ps in range(4):
        frow = fold[ps]
        srow = _STEP[ps]
        for k1 in range(K + 1):
            a = frow[k1]
            if a <= NEG:
                continue
            for cs in range(4):
                nps = srow[cs]
                if nps < 0:
                    continue
                crow = child[cs]
                orow = out[nps]
                for k2 in range(K + 1 - k1):
                    b = crow[k2]
                    if b <= NEG:
                        continue
                    if a + b > orow[k1 + k2]:
                        orow[k1 + k2] = a + b
                        back[nps][k1 + k2] = (ps, k1, cs, k2)
    return out, back


def _init_fold(K: int) -> list[list[int]]:
    fold = [[NEG] * (K + 1) for _ in range(4)]
    if K >= 1:
        fold[_P_IN][1] = 0
    fold[_P_OUT][0] = 0
    return fold


def _final_max(fold: list[list[int]]) -> list[list[int]]:
    out: list[list[int]] = [[]] * 4
    for ps in range(4):
        out[_FINAL[ps]] = fold[ps]
    return out


_FOLD_OF_FINAL = {IN: _P_IN, FREE: _P_OUT, NEED: _P_OUT_FREE, DOM: _P_OUT_IN}


def max_safe_tree(
    g: Graph, budget: int | None = None, fixed: dict[Edge, bool] | None = None
) -> tuple[int, int, tuple[Edge, ...]]:
    """Largest ``F`` with ``ι(T_F) <= budget`` for a tree ``T``.

    ``budget`` defaults to ``ι(T)``, in which case the result is the largest
    safe set. ``fixed`` forces edges in (True) or out (False) of ``F``.
    Returns ``(iota, |F|, F)``; ``|F|`` is ``-1`` if the constraints are
    unsatisfiable.
    """
    if g.n == 0 or g.m != g.n - 1:
        raise GraphError("input is not a tree")
    _require_forest(g)
    iota = iota_tree_dp(g)
    K = iota if budget is None else budget
    order, parent = rooted_order(g, 0)
    final: list[list[list[int]] | None] = [None] * g.n
    # per vertex: list of (child, use_sub_table, backpointers)
    trace: list[list] = [[] for _ in range(g.n)]
    for v in reversed(order):
        fold = _init_fold(K)
        for c in g.adj[v]:
            if c == parent[v]:
                continue
            direct = final[c]
            sub_fold, sub_back = _fold_max(_init_fold(K), direct, K)
            sub = _final_max(sub_fold)
            rule = fixed.get((v, c) if v < c else (c, v)) if fixed else None
            if rule is True:
                direct = [[NEG] * (K + 1) for _ in range(4)]
            elif rule is False:
                sub = [[NEG] * (K + 1) for _ in range(4)]
            eff = [[NEG] * (K + 1) for _ in range(4)]
            via_sub = [[False] * (K + 1) for _ in range(4)]
            for s in range(4):
                for k in range(K + 1):
                    d = direct[s][k]
                    w = sub[s][k] + 1 if sub[s][k] > NEG else NEG
                    if w > d:
                        eff[s][k] = w
                        via_sub[s][k] = True
                    else:
                        eff[s][k] = d
            fold, back = _fold_max(fold, eff, K)
            trace[v].append((c, via_sub, sub_back, back))
        final[v] = _final_max(fold)

    root = final[order[0]]
    best, best_state, best_k = NEG, -1, -1
    for s in range(4):
        if not _ROOT_OK[s]:
            continue
        for k in range(K + 1):
            if root[s][k] > best:
                best, best_state, best_k = root[s][k], s, k
    if best <= NEG:
        if fixed:
            return iota, -1, ()
        raise GraphError(f"no isolating set of size <= {K}")

    chosen: list[Edge] = []
    stack = [(order[0], best_state, best_k)]
    while stack:
        v, s, k = stack.pop()
        ps = _FOLD_OF_FINAL[s]
        for c, via_sub, sub_back, back in reversed(trace[v]):
            pps, k1, cs, k2 = back[ps][k]
            if via_sub[cs][k2]:
                chosen.append((v, c) if v < c else (c, v))
                _, _, ccs, ck = sub_back[_FOLD_OF_FINAL[cs]][k2]
                stack.append((c, ccs, ck))
            else:
                stack.append((c, cs, k2))
            ps, k = pps, k1
    return iota, best, tuple(sorted(chosen))


def least_max_safe_tree(g: Graph) -> tuple[int, tuple[Edge, ...]]:
    """Lexicographically least safe set of maximum size in a tree.

    Greedy over edges in sorted order: keep an edge in the set whenever some
    maximum safe set still contains the choices made so far.
    """
    _, size, _ = max_safe_tree(g)
    fixed: dict[Edge, bool] = {}
    for e in g.edges:
        fixed[e] = True
        if max_safe_tree(g, fixed=fixed)[1] != size:
            fixed[e] = False
    return size, tuple(e for e in g.edges if fixed[e])
