"""Isomorph-free enumeration of trees and small connected graphs, and the survey.

Free trees come from the Wright-Richmond-Odlyzko-McKay successor rule on
canonical level sequences. A slower, independent enumerator (leaf extension
with AHU canonical strings) exists to certify the counts.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .criticality import BudgetExceeded, crit_index
from .formats import decode_graph6, encode_graph6
from .graph import Graph, GraphError, build_graph, is_star, subdivided
from .isolation import iota
from .treedp import iota_tree_dp, max_safe_tree

log = logging.getLogger(__name__)

WORKERS_ENV = "ISOCRIT_WORKERS"
DEFAULT_MAX_N = 14
LARGE_MAX_N = 16
CSV_HEADER = ("n", "m", "graph6", "iota", "crit_q", "parity_gap", "is_iota1")

# --------------------------------------------------------------------------
# free trees
# --------------------------------------------------------------------------


def _next_rooted(levels: list[int], p: int | None = None) -> list[int] | None:
    """Beyer-Hedetniemi successor of a rooted level sequence."""
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    out = list(levels)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(levels: list[int]) -> tuple[list[int], list[int]]:
    """Split off the first principal subtree of the root."""
    m = len(levels)
    for i in range(2, len(levels)):
        if levels[i] == 1:
            m = i
            break
    left = [x - 1 for x in levels[1:m]]
    rest = [0] + levels[m:]
    return left, rest


def _next_free(levels: list[int]) -> list[int] | None:
    """Smallest sequence >= ``levels`` that is centrally rooted and canonical."""
    left, rest = _split(levels)
    hl, hr = max(left), max(rest)
    ok = hr > hl or (hr == hl and (len(left) < len(rest) or (len(left) == len(rest) and left <= rest)))
    if ok:
        return levels
    p = len(left)
    nxt = _next_rooted(levels, p)
    if levels[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[-len(tail) :] = tail
    return nxt


def levels_to_graph(levels: Sequence[int]) -> Graph:
    edges = []
    last_at: dict[int, int] = {}
    for i, lv in enumerate(levels):
        if lv > 0:
            edges.append((last_at[lv - 1], i))
        last_at[lv] = i
    return build_graph(len(levels), edges)


def free_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class on ``n`` vertices, in a fixed order."""
    if n < 1:
        raise GraphError(f"tree order must be >= 1, got {n}")
    if n <= 2:
        yield build_graph(n, [(0, 1)] if n == 2 else [])
        return
    levels: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while levels is not None:
        levels = _next_free(levels)
        if levels is None:
            return
        yield levels_to_graph(levels)
        levels = _next_rooted(levels)


# --------------------------------------------------------------------------
# independent tree enumerator (certification only)
# --------------------------------------------------------------------------


def tree_centres(g: Graph) -> list[int]:
    deg = [g.degree(v) for v in range(g.n)]
    layer = [v for v in range(g.n) if deg[v] <= 1]
    remaining = g.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in g.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _ahu(g: Graph, root: int) -> str:
    parent = {root: -1}
    order = [root]
    for v in order:
        for w in g.adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    code: dict[int, str] = {}
    for v in reversed(order):
        code[v] = "(" + "".join(sorted(code[w] for w in g.adj[v] if parent.get(w) == v and w != root)) + ")"
    return code[root]


def tree_code(g: Graph) -> str:
    """AHU canonical string of a tree, rooted at its centre(s)."""
    return min(_ahu(g, c) for c in tree_centres(g))


def free_trees_bruteforce(n: int) -> list[Graph]:
    """All trees on ``n`` vertices by leaf extension plus AHU deduplication."""
    if n < 1:
        raise GraphError(f"tree order must be >= 1, got {n}")
    layer = {tree_code(build_graph(1, [])): build_graph(1, [])}
    for k in range(2, n + 1):
        nxt: dict[str, Graph] = {}
        for t in layer.values():
            for v in range(t.n):
                g = build_graph(k, list(t.edges) + [(v, k - 1)])
                nxt.setdefault(tree_code(g), g)
        layer = nxt
    return list(layer.values())


# --------------------------------------------------------------------------
# canonical form for small graphs
# --------------------------------------------------------------------------


def _refine(adj: Sequence[Sequence[int]], cells: list[list[int]]) -> list[list[int]]:
    while True:
        cell_of = {}
        for i, c in enumerate(cells):
            for v in c:
                cell_of[v] = i
        out = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {v: tuple(sorted(cell_of[w] for w in adj[v])) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) > 1:
                changed = True
            out.extend([v for v in c if sig[v] == k] for k in keys)
        cells = out
        if not changed:
            return cells


def canonical_graph(g: Graph) -> Graph:
    """Canonically relabelled copy of ``g`` (isomorphic inputs give equal outputs).

    Colour refinement plus individualisation; twins inside a target cell are
    branched on once since swapping them is an automorphism.
    """
    adj = g.adj
    nsets = [frozenset(nb) for nb in adj]
    best: list[tuple | None] = [None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            pos = {c[0]: i for i, c in enumerate(cells)}
            code = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges))
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if any(nsets[v] - {u} == nsets[u] - {v} for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    search([list(range(g.n))] if g.n else [])
    return build_graph(g.n, best[0] or ())


def canonical_code(g: Graph) -> str:
    return encode_graph6(canonical_graph(g))


MAX_CONNECTED_N = 8


def connected_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs on ``n`` vertices.

    Representatives are canonical forms, sorted by graph6 code.
    """
    if not 1 <= n <= MAX_CONNECTED_N:
        raise GraphError(f"connected graph enumeration supports 1 <= n <= {MAX_CONNECTED_N}, got {n}")
    layer = {canonical_code(build_graph(1, [])): build_graph(1, [])}
    for k in range(2, n + 1):
        nxt: dict[str, Graph] = {}
        for g in layer.values():
            for r in range(1, k):
                for nbrs in combinations(range(k - 1), r):
                    h = canonical_graph(build_graph(k, list(g.edges) + [(u, k - 1) for u in nbrs]))
                    nxt.setdefault(encode_graph6(h), h)
        layer = nxt
    return [layer[c] for c in sorted(layer)]


# --------------------------------------------------------------------------
# survey
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SurveyRecord:
    n: int
    m: int
    graph6: str
    iota: int
    crit_q: int | None  # None marks a row whose search exceeded its budget
    is_iota1: bool | None

    @property
    def parity_gap(self) -> int | None:
        return None if self.crit_q is None else self.m - self.crit_q

    @property
    def flagged(self) -> bool:
        return self.crit_q is None

    def csv_row(self) -> list[str]:
        def fmt(x):
            if x is None:
                return ""
            if isinstance(x, bool):
                return "true" if x else "false"
            return str(x)

        return [fmt(x) for x in (self.n, self.m, self.graph6, self.iota, self.crit_q, self.parity_gap, self.is_iota1)]


def _record(code: str, kind: str, budget: int | None) -> SurveyRecord:
    g = decode_graph6(code)
    if kind == "trees":
        base, safe, _ = max_safe_tree(g)
        q: int | None = safe + 1
    else:
        base = iota(g)
        try:
            q = crit_index(g, "brute", max_evaluations=budget)
        except BudgetExceeded:
            log.warning("crit_q budget exceeded for %s; row flagged", code)
            q = None
    return SurveyRecord(g.n, g.m, code, base, q, None if q is None else q == 1)


def _records_chunk(args: tuple[list[str], str, int | None]) -> list[SurveyRecord]:
    codes, kind, budget = args
    return [_record(c, kind, budget) for c in codes]


def _candidates(n: int, kind: str) -> list[str]:
    graphs = free_trees(n) if kind == "trees" else connected_graphs(n)
    return sorted(encode_graph6(g) for g in graphs if not is_star(g))


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise GraphError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def survey(
    n_max: int,
    out: str | Path | None = None,
    *,
    n_min: int = 5,
    kind: str = "trees",
    workers: int | None = None,
    allow_large: bool = False,
    budget: int | None = None,
) -> list[SurveyRecord]:
    """Criticality index of every non-star tree (or connected graph) of order n_min..n_max.

    Rows are ordered by ``n`` then graph6 code and are independent of the
    worker count. ``budget`` caps the number of ι evaluations per graph for
    the brute-force route; over-budget rows are kept with ``crit_q`` empty.
    """
    if n_max < n_min:
        raise GraphError(f"max n must be >= {n_min}, got {n_max}")
    if kind not in ("trees", "graphs"):
        raise GraphError(f"unknown survey kind {kind!r}")
    if kind == "trees" and n_max > DEFAULT_MAX_N and not allow_large:
        raise GraphError(f"tree surveys beyond n={DEFAULT_MAX_N} need allow_large")
    if kind == "trees" and n_max > LARGE_MAX_N:
        raise GraphError(f"tree surveys are supported up to n={LARGE_MAX_N}")
    workers = default_workers() if workers is None else max(1, workers)

    codes = [c for n in range(n_min, n_max + 1) for c in _candidates(n, kind)]
    if workers == 1:
        records = _records_chunk((codes, kind, budget))
    else:
        size = max(1, len(codes) // (workers * 8))
        chunks = [(codes[i : i + size], kind, budget) for i in range(0, len(codes), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for part in pool.map(_records_chunk, chunks) for r in part]
    records.sort(key=lambda r: (r.n, r.graph6))
    if out is not None:
        write_csv(records, out)
    return records


def records_to_csv(records: Iterable[SurveyRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def write_csv(records: Iterable[SurveyRecord], path: str | Path) -> None:
    Path(path).write_text(records_to_csv(records), encoding="utf-8", newline="")


def read_csv(path: str | Path) -> list[SurveyRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise GraphError(f"unexpected survey header {reader.fieldnames}")
        out = []
        for row in reader:
            q = int(row["crit_q"]) if row["crit_q"] else None
            flag = {"true": True, "false": False, "": None}[row["is_iota1"]]
            out.append(SurveyRecord(int(row["n"]), int(row["m"]), row["graph6"], int(row["iota"]), q, flag))
        return out


def recheck_records(
    records: Sequence[SurveyRecord], fraction: float = 0.01, samples: int = 20, seed: int = 0
) -> list[str]:
    """Spot-check tree rows independently of the dynamic program's value.

    For each sampled row: a safe witness of size ``q - 1`` must keep ι, and
    random ``q``-subsets must all raise it. Returns a list of failures.
    """
    rng = random.Random(seed)
    pool = [r for r in records if not r.flagged]
    if not pool:
        return []
    k = max(1, round(len(pool) * fraction))
    failures = []
    for r in rng.sample(pool, min(k, len(pool))):
        g = decode_graph6(r.graph6)
        base = iota_tree_dp(g)
        if base != r.iota:
            failures.append(f"{r.graph6}: iota {r.iota} != {base}")
            continue
        _, size, witness = max_safe_tree(g)
        if size != r.crit_q - 1 or iota(subdivided(g, witness)) != base:
            failures.append(f"{r.graph6}: safe witness of size {r.crit_q - 1} not confirmed")
        for _ in range(samples):
            F = rng.sample(list(g.edges), r.crit_q)
            if iota(subdivided(g, F)) == base:
                failures.append(f"{r.graph6}: {F} of size {r.crit_q} is safe")
                break
    return failures


# --------------------------------------------------------------------------
# gap report
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderSummary:
    n: int
    graphs: int
    flagged: int
    counts: dict[int, int]  # realised q -> number of graphs
    unrealised: list[int]  # q in [1, n-2] never seen
    unrealised_same_parity: list[int]  # unrealised q with q = (n-1) - 2k, k >= 1
    parity_gap_counts: dict[str, int]  # parity of m - q over realised rows

    def as_dict(self) -> dict:
        return {
            "graphs": self.graphs,
            "flagged": self.flagged,
            "counts": {str(q): c for q, c in sorted(self.counts.items())},
            "realised": sorted(self.counts),
            "unrealised": self.unrealised,
            "unrealised_m_minus_2k": self.unrealised_same_parity,
            "parity_gap_counts": self.parity_gap_counts,
        }


@dataclass(frozen=True)
class GapReport:
    n_max: int
    orders: dict[int, OrderSummary]

    def as_dict(self) -> dict:
        return {"n_max": self.n_max, "orders": {str(n): s.as_dict() for n, s in sorted(self.orders.items())}}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for n, s in sorted(self.orders.items()):
            realised = ",".join(str(q) for q in sorted(s.counts)) or "-"
            missing = ",".join(str(q) for q in s.unrealised) or "-"
            lines.append(
                f"n={n} graphs={s.graphs} realised_q={realised} unrealised_q={missing} "
                f"gap_even={s.parity_gap_counts['even']} gap_odd={s.parity_gap_counts['odd']}"
            )
        return "\n".join(lines) + "\n"


def verify_open_problem(n_max: int, records: Sequence[SurveyRecord] | None = None, **kw) -> GapReport:
    """Realised and unrealised criticality indices per order.

    Only summarises what was enumerated; unrealised values are reported, not
    claimed impossible.
    """
    if records is None:
        records = survey(n_max, **kw)
    by_n: dict[int, list[SurveyRecord]] = {}
    for r in records:
        if r.n <= n_max:
            by_n.setdefault(r.n, []).append(r)
    orders = {}
    for n, rows in sorted(by_n.items()):
        counts = Counter(r.crit_q for r in rows if not r.flagged)
        m = n - 1
        unrealised = [q for q in range(1, max(n - 1, 1)) if q not in counts]
        parity = Counter("even" if r.parity_gap % 2 == 0 else "odd" for r in rows if not r.flagged)
        orders[n] = OrderSummary(
            n=n,
            graphs=len(rows),
            flagged=sum(r.flagged for r in rows),
            counts=dict(sorted(counts.items())),
            unrealised=unrealised,
            unrealised_same_parity=[q for q in unrealised if (m - q) % 2 == 0],
            parity_gap_counts={"even": parity["even"], "odd": parity["odd"]},
        )
    return GapReport(n_max, orders)
