"""Named graph families and the recursive family of (ι,1)-critical trees.

The recursive family starts from P_5 and grows by three operations, each
attaching new vertices with fixed statuses:

* ``O1``: a leaf (status C) at a status-B vertex;
* ``O2``: a path ``u-v`` (statuses B, C) at a status-A vertex;
* ``O3``: a path ``u-v-w-z`` (statuses B, A, B, C) at a status-C vertex.

Statuses never change once assigned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Edge, Graph, GraphError, build_graph, is_k_packing, is_independent, is_tree, leaves, support_vertices
from .isolation import is_isolating

# --------------------------------------------------------------------------
# simple families
# --------------------------------------------------------------------------


def make_path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def make_star(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    if k < 0:
        raise GraphError(f"star needs k >= 0, got {k}")
    return build_graph(k + 1, [(0, i) for i in range(1, k + 1)])


def make_wounded_spider(t: int, d: int) -> Graph:
    """K_{1,t} with all but ``d`` of its edges subdivided.

    Centre is 0; the ``d`` short legs come first, then the ``t - d`` long legs
    as (subdivision vertex, leaf) pairs. Has ``2t - d + 1`` vertices.
    """
    if t < 2 or not 1 <= d <= t - 1:
        raise GraphError(f"wounded spider needs t >= 2 and 1 <= d <= t-1, got t={t}, d={d}")
    return _spider(t, d)


def make_spider(t: int) -> Graph:
    """K_{1,t} with every edge subdivided (2t + 1 vertices)."""
    if t < 2:
        raise GraphError(f"spider needs t >= 2, got {t}")
    return _spider(t, 0)


def _spider(t: int, short: int) -> Graph:
    edges = []
    nxt = 1
    for i in range(t):
        if i < short:
            edges.append((0, nxt))
            nxt += 1
        else:
            edges += [(0, nxt), (nxt, nxt + 1)]
            nxt += 2
    return build_graph(nxt, edges)


@dataclass(frozen=True)
class QkResult:
    graph: Graph
    a_k: tuple[Edge, ...]
    v: int
    x: int
    y: int
    u: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.u)


def make_qk(k: int) -> QkResult:
    """The graph Q_k: P_6 plus ``k - 1`` pendant copies of P_3 hung from ``v``.

    ``v`` is adjacent to ``x`` (whose other neighbour ``y`` is a leaf) and to
    ``u_0, ..., u_{k-1}``; each ``u_i`` starts a path of three vertices.
    Labels: v=0, x=1, y=2, and u_i = 3 + 3i followed by its two path vertices.
    ``a_k`` is every edge except ``vx`` and ``xy``.
    """
    if k < 1:
        raise GraphError(f"Q_k needs k >= 1, got {k}")
    v, x, y = 0, 1, 2
    edges = [(v, x), (x, y)]
    us = []
    for i in range(k):
        u = 3 + 3 * i
        us.append(u)
        edges += [(v, u), (u, u + 1), (u + 1, u + 2)]
    g = build_graph(3 + 3 * k, edges)
    keep = {(v, x), (x, y)}
    return QkResult(g, tuple(e for e in g.edges if e not in keep), v, x, y, tuple(us))


# --------------------------------------------------------------------------
# status trees
# --------------------------------------------------------------------------

OPS = ("O1", "O2", "O3")
_ANCHOR_STATUS = {"O1": "B", "O2": "A", "O3": "C"}
_NEW_STATUSES = {"O1": "C", "O2": "BC", "O3": "BABC"}


class InvariantViolation(AssertionError):
    pass


@dataclass(frozen=True)
class TraceStep:
    op: str
    anchor: int
    new_vertices: tuple[int, ...]


@dataclass(frozen=True)
class StatusTree:
    tree: Graph
    status: tuple[str, ...]
    trace: tuple[TraceStep, ...] = field(default=())

    def with_status(self, s: str) -> list[int]:
        return [v for v, st in enumerate(self.status) if st == s]

    @property
    def a_set(self) -> list[int]:
        return self.with_status("A")

    @property
    def b_set(self) -> list[int]:
        return self.with_status("B")

    @property
    def c_set(self) -> list[int]:
        return self.with_status("C")


def check_status_invariants(t: StatusTree) -> None:
    """Raise :class:`InvariantViolation` unless every structural invariant holds."""
    g = t.tree
    problems = []
    if not is_tree(g):
        problems.append("not a tree")
    lv = leaves(g)
    if any(t.status[v] != "C" for v in lv):
        problems.append("a leaf without status C")
    if any(t.status[v] != "B" for v in support_vertices(g)):
        problems.append("a support vertex without status B")
    A = t.a_set
    if not is_isolating(g, A):
        problems.append("status-A vertices are not isolating")
    if not is_k_packing(g, A, 3):
        problems.append("status-A vertices are not a 3-packing")
    if not (is_independent(g, A + t.c_set) and is_independent(g, t.b_set)):
        problems.append("A∪C or B not independent")
    dist = _leaf_distances_even(g, lv)
    if not dist:
        problems.append("two leaves at odd distance")
    if problems:
        raise InvariantViolation("; ".join(problems))


def _leaf_distances_even(g: Graph, lv: list[int]) -> bool:
    if not lv:
        return True
    # in a tree all leaf distances are even iff all leaves share a colour class
    depth = [-1] * g.n
    depth[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                queue.append(w)
    return len({depth[v] % 2 for v in lv}) == 1


def fiota_base() -> StatusTree:
    """P_5 as 0-1-2-3-4 with statuses C, B, A, B, C."""
    return StatusTree(build_graph(5, [(i, i + 1) for i in range(4)]), tuple("CBABC"))


def fiota_apply(t: StatusTree, op: str, anchor: int) -> StatusTree:
    if op not in _ANCHOR_STATUS:
        raise GraphError(f"unknown operation {op!r}")
    if not 0 <= anchor < t.tree.n:
        raise GraphError(f"anchor {anchor} out of range")
    need = _ANCHOR_STATUS[op]
    if t.status[anchor] != need:
        raise GraphError(f"{op} needs an anchor with status {need}, vertex {anchor} has {t.status[anchor]}")
    n0 = t.tree.n
    new_status = _NEW_STATUSES[op]
    new = tuple(range(n0, n0 + len(new_status)))
    chain = (anchor,) + new
    edges = list(t.tree.edges) + list(zip(chain, chain[1:]))
    out = StatusTree(
        build_graph(n0 + len(new), edges),
        t.status + tuple(new_status),
        t.trace + (TraceStep(op, anchor, new),),
    )
    check_status_invariants(out)
    return out


def resolve_anchor(t: StatusTree, token: str) -> int:
    """Anchor token: a vertex id, ``leaf``, ``support``, or a status letter."""
    token = token.strip()
    if token.isdigit():
        return int(token)
    key = token.lower()
    if key == "leaf":
        pool = leaves(t.tree)
    elif key == "support":
        pool = support_vertices(t.tree)
    elif key in ("a", "b", "c"):
        pool = t.with_status(key.upper())
    else:
        raise GraphError(f"unrecognised anchor {token!r}")
    if not pool:
        raise GraphError(f"no vertex matches anchor {token!r}")
    return min(pool)


def fiota_build(script: str | list[str]) -> StatusTree:
    """Run an operation script such as ``"O3@leaf O1@2"`` from P_5."""
    tokens = script.split() if isinstance(script, str) else list(script)
    t = fiota_base()
    for tok in tokens:
        op, sep, where = tok.partition("@")
        if not sep:
            raise GraphError(f"operation token must look like OP@anchor, got {tok!r}")
        t = fiota_apply(t, op.upper(), resolve_anchor(t, where))
    return t


# --------------------------------------------------------------------------
# membership by deconstruction
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Membership:
    member: bool
    # reverse steps in removal order, in the input's vertex labels
    steps: tuple[TraceStep, ...]
    reason: str | None = None
    construction: StatusTree | None = None
    # construction vertex id -> input vertex id
    labels: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.member


def _bfs(adj: dict[int, set[int]], s: int) -> dict[int, int]:
    dist = {s: 0}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _diametral_path(adj: dict[int, set[int]]) -> list[int]:
    best = (-1, 0, 0)
    for a in sorted(adj):
        dist = _bfs(adj, a)
        for b in sorted(dist):
            if b > a and dist[b] > best[0]:
                best = (dist[b], a, b)
    _, a, b = best
    # walk back from b towards a
    dist = _bfs(adj, a)
    path = [b]
    while path[-1] != a:
        v = path[-1]
        path.append(min(w for w in adj[v] if dist[w] == dist[v] - 1))
    return path[::-1]


def fiota_membership(g: Graph) -> Membership:
    """Decide membership in the recursive family by peeling a diametral path.

    Each round looks at a diametral path ``v0 v1 v2 ...`` and undoes one
    operation near ``v0``; the surviving P_5 is then replayed forwards with
    status checks, so a positive answer comes with an explicit construction.
    """
    if not is_tree(g):
        raise GraphError("membership is only defined for trees")
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    steps: list[TraceStep] = []

    def deg(v: int) -> int:
        return len(adj[v])

    def drop(*vs: int) -> None:
        for v in vs:
            for w in adj.pop(v):
                if w in adj:
                    adj[w].discard(v)

    def reject(why: str) -> Membership:
        return Membership(False, tuple(steps), why)

    while len(adj) > 5:
        path = _diametral_path(adj)
        if len(path) < 5:
            return reject("diameter below 4")
        v0, v1, v2, v3, v4 = path[:5]
        if deg(v1) >= 3:
            x = min(w for w in adj[v1] if w != v2 and deg(w) == 1 and w != v0)
            steps.append(TraceStep("O1", v1, (x,)))
            drop(x)
        elif deg(v2) >= 3:
            others = sorted(w for w in adj[v2] if w not in (v1, v3))
            if any(deg(y) == 1 for y in others):
                return reject(f"vertex {v2} is a support vertex at odd distance from leaf {v0}")
            y = others[0]
            x = min(w for w in adj[y] if w != v2)
            if deg(y) >= 3:
                steps.append(TraceStep("O1", y, (x,)))
                drop(x)
            else:
                steps.append(TraceStep("O2", v2, (y, x)))
                drop(x, y)
        elif deg(v3) >= 3:
            others = sorted(w for w in adj[v3] if w not in (v2, v4))
            if any(deg(w) != 1 for w in others):
                return reject(f"vertex {v3} carries a branch deeper than a leaf")
            x = others[0]
            steps.append(TraceStep("O1", v3, (x,)))
            drop(x)
        else:
            steps.append(TraceStep("O3", v4, (v3, v2, v1, v0)))
            drop(v0, v1, v2, v3)

    if len(adj) < 5 or any(deg(v) > 2 for v in adj):
        return reject("reduces to a tree other than P_5")

    # replay forwards from the remaining P_5
    end = min(v for v in adj if deg(v) == 1)
    order = [end]
    while len(order) < 5:
        order.append(next(w for w in adj[order[-1]] if w not in order[-2:]))
    t = fiota_base()
    new_of = {v: i for i, v in enumerate(order)}
    labels = list(order)
    for step in reversed(steps):
        anchor = new_of[step.anchor]
        need = _ANCHOR_STATUS[step.op]
        if t.status[anchor] != need:
            return reject(f"{step.op} at {step.anchor} needs status {need}, found {t.status[anchor]}")
        t = fiota_apply(t, step.op, anchor)
        for old, new in zip(step.new_vertices, t.trace[-1].new_vertices):
            new_of[old] = new
            labels.append(old)
    mapped = sorted(tuple(sorted((labels[a], labels[b]))) for a, b in t.tree.edges)
    if mapped != list(g.edges):
        raise AssertionError("replayed construction does not reproduce the input tree")
    return Membership(True, tuple(steps), None, t, tuple(labels))
