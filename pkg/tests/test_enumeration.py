import json
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_nx, graphs, to_nx
from isocrit.enumeration import (
    CSV_HEADER,
    WORKERS_ENV,
    canonical_code,
    connected_graphs,
    free_trees,
    free_trees_bruteforce,
    read_csv,
    records_to_csv,
    recheck_records,
    survey,
    tree_code,
    verify_open_problem,
)
from isocrit.formats import decode_graph6
from isocrit.graph import GraphError, build_graph, is_star, is_tree

TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]


def test_small_tree_counts():
    assert [sum(1 for _ in free_trees(n)) for n in range(1, 13)] == TREE_COUNTS
    names = {tree_code(t) for t in free_trees(4)}
    assert names == {tree_code(from_nx(nx.path_graph(4))), tree_code(from_nx(nx.star_graph(3)))}


def test_trees_are_distinct_trees():
    for n in range(1, 11):
        trees = list(free_trees(n))
        assert all(is_tree(t) and t.n == n for t in trees)
        assert len({tree_code(t) for t in trees}) == len(trees)


def test_against_networkx_nonisomorphic_trees():
    for n in range(2, 12):
        assert sum(1 for _ in nx.nonisomorphic_trees(n)) == sum(1 for _ in free_trees(n))


def test_bruteforce_enumerator_small():
    for n in range(1, 8):
        assert len(free_trees_bruteforce(n)) == TREE_COUNTS[n - 1]


def test_connected_graph_counts_match_atlas():
    atlas = Counter(h.number_of_nodes() for h in nx.graph_atlas_g()[1:] if nx.is_connected(h))
    for n in range(1, 7):
        assert len(connected_graphs(n)) == atlas[n]
    assert [len(connected_graphs(n)) for n in (1, 3, 4)] == [1, 2, 6]


def test_connected_graph_limit():
    with pytest.raises(GraphError):
        connected_graphs(9)


@settings(max_examples=150, deadline=None)
@given(graphs(1, 8), st.randoms(use_true_random=False))
def test_canonical_code_is_label_invariant(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    h = build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    assert canonical_code(g) == canonical_code(h)


def test_canonical_code_separates_nonisomorphic():
    atlas = [from_nx(h) for h in nx.graph_atlas_g()[1:] if h.number_of_nodes() <= 6]
    assert len({canonical_code(g) for g in atlas}) == len(atlas)


def test_survey_order_five():
    recs = survey(5, workers=1)
    assert [(r.graph6, r.crit_q) for r in recs] == [("DkC", 1), ("Dk_", 3)]
    g = decode_graph6("DkC")
    assert nx.is_isomorphic(to_nx(g), nx.path_graph(5))


def test_survey_csv(tmp_path):
    out = tmp_path / "s.csv"
    recs = survey(8, out, workers=1)
    raw = out.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == len(recs) + 1
    assert read_csv(out) == recs
    for r in recs:
        assert 1 <= r.crit_q <= r.m - 1
        assert r.parity_gap == r.m - r.crit_q
        assert r.is_iota1 == (r.crit_q == 1)
        assert not is_star(decode_graph6(r.graph6))


def test_survey_deterministic_across_workers():
    assert records_to_csv(survey(10, workers=1)) == records_to_csv(survey(10, workers=3))


def test_workers_env(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "2")
    assert records_to_csv(survey(7)) == records_to_csv(survey(7, workers=1))
    monkeypatch.setenv(WORKERS_ENV, "many")
    with pytest.raises(GraphError):
        survey(7)


def test_survey_limits():
    with pytest.raises(GraphError):
        survey(15)
    with pytest.raises(GraphError):
        survey(17, allow_large=True)
    with pytest.raises(GraphError):
        survey(4)


def test_graph_survey_with_budget():
    recs = survey(6, kind="graphs", workers=1, budget=10_000)
    assert all(not r.flagged and 1 <= r.crit_q <= r.m - 1 for r in recs)
    tight = survey(5, kind="graphs", workers=1, budget=1)
    assert any(r.flagged for r in tight)
    assert all(r.csv_row()[4] == "" for r in tight if r.flagged)


def test_recheck_finds_nothing_and_catches_tampering():
    recs = survey(10, workers=1)
    assert recheck_records(recs, fraction=0.2, samples=10) == []
    from dataclasses import replace

    bad = [replace(r, crit_q=r.crit_q + 1) if r.crit_q < r.m - 1 else r for r in recs]
    assert recheck_records(bad, fraction=0.2, samples=10)


def test_gap_report():
    rep = verify_open_problem(9, workers=1)
    d = json.loads(rep.to_json())
    assert sorted(d["orders"]) == ["5", "6", "7", "8", "9"]
    assert d["orders"]["5"]["realised"] == [1, 3]
    assert d["orders"]["5"]["unrealised"] == [2]
    assert d["orders"]["9"]["unrealised"] == []
    assert "n=5" in rep.to_text()
