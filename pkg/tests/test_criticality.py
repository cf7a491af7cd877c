from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import from_nx, graphs, random_graph, to_nx
from oracles import nx_iota, nx_subdivide
from isocrit.criticality import (
    BudgetExceeded,
    MethodDisagreement,
    StarError,
    check_tripartition,
    crit_index,
    crit_report,
    has_unique_min_isolating_set,
    is_gamma1_critical,
    is_gamma1_critical_direct,
    is_iota1_critical,
    is_q_critical,
    max_safe_set,
    max_safe_set_size,
    min_unsafe_set,
    subdivision_number,
)
from isocrit.families import make_cycle, make_path, make_qk, make_star, make_wounded_spider
from isocrit.graph import GraphError, build_graph, is_star


def naive_crit(g):
    h = to_nx(g)
    base = nx_iota(g)
    safe_sizes = [
        k for k in range(g.m + 1) for F in combinations(g.edges, k) if nx_iota(from_nx(nx_subdivide(h, F))) == base
    ]
    return max(safe_sizes) + 1


def test_subdivision_number_examples():
    assert subdivision_number(make_path(9)) == 1
    assert subdivision_number(make_cycle(8)) == 1
    assert subdivision_number(make_path(6)) == 4
    assert subdivision_number(make_star(4)) is None


def test_max_safe_examples():
    assert max_safe_set_size(make_path(5)) == 0
    assert max_safe_set_size(make_path(6)) == 3
    g = make_wounded_spider(3, 2)  # centre 0, short legs to 1 and 2
    assert max_safe_set(g) == (2, ((0, 1), (0, 2)))


def test_crit_index_examples():
    assert crit_index(make_path(5)) == 1
    assert crit_index(make_cycle(7)) == 2
    assert crit_index(make_wounded_spider(4, 2)) == 3
    assert crit_index(make_qk(2).graph, "brute") == 7
    for k in range(0, 5):
        assert crit_index(make_star(k)) is None


def test_is_q_critical():
    assert is_q_critical(make_cycle(4), 1)
    assert is_q_critical(make_path(7), 3)
    assert not is_q_critical(make_path(7), 1)
    with pytest.raises(StarError):
        is_q_critical(make_star(3), 1)
    with pytest.raises(ValueError):
        is_q_critical(make_path(7), 0)


def test_disconnected_inputs_rejected():
    g = build_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(GraphError):
        crit_index(g)
    with pytest.raises(GraphError):
        subdivision_number(g)


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        crit_index(make_cycle(8), "brute", max_evaluations=3)


def test_method_tree_requires_tree():
    with pytest.raises(GraphError):
        crit_index(make_cycle(5), "tree")


@settings(max_examples=40, deadline=None)
@given(graphs(3, 5, connected=True))
def test_crit_index_matches_naive_oracle(g):
    if is_star(g):
        return
    assert crit_index(g, "brute") == naive_crit(g)
    sd, witness = min_unsafe_set(g)
    assert nx_iota(from_nx(nx_subdivide(to_nx(g), witness))) > nx_iota(g)
    assert sd <= crit_index(g)


def test_report_consistency():
    rep = crit_report(make_path(6))
    assert rep.crit_q == len(rep.max_safe_set) + 1 == 4
    assert rep.sd_iota == 4
    assert crit_report(make_star(3)).crit_q is None


def test_tripartition_examples():
    p5 = make_path(5)
    assert check_tripartition(p5, {2}, {1, 3}, {0, 4}).passed
    bad = check_tripartition(p5, {0}, {1}, {2, 3, 4})
    assert bad.first_violation == "i"
    assert check_tripartition(make_cycle(4), {0}, {1, 3}, {2}).passed
    assert check_tripartition(p5, {2}, {1, 3}, {0}).first_violation == "partition"


def test_passing_tripartitions_imply_consequences(rng):
    from isocrit.criticality import induced_tripartition
    from isocrit.isolation import enumerate_min_isolating_sets

    for _ in range(300):
        g = random_graph(rng, 3, 9, connected=True)
        for D in enumerate_min_isolating_sets(g):
            rep = check_tripartition(g, *induced_tripartition(g, D))
            if rep.passed:
                assert rep.no_support_in_ac and rep.no_odd_cycle and rep.leaves_in_c


def test_iota1_examples():
    for method in ("structural", "brute", "both"):
        assert is_iota1_critical(make_path(5), method)
        assert is_iota1_critical(make_cycle(4), method)
        assert not is_iota1_critical(make_path(6), method)


def test_disagreement_is_loud(monkeypatch):
    import isocrit.criticality as c

    monkeypatch.setattr(c, "is_iota1_critical_structural", lambda g: False)
    with pytest.raises(MethodDisagreement):
        c.is_iota1_critical(make_path(5), "both")


def test_unique_min_set():
    assert has_unique_min_isolating_set(make_path(5))
    assert not has_unique_min_isolating_set(make_cycle(4))
    assert not has_unique_min_isolating_set(make_path(2))


def test_gamma1_examples():
    assert is_gamma1_critical(make_cycle(3))
    assert not is_gamma1_critical(make_cycle(4))
    assert not is_gamma1_critical(make_path(2))
    assert not is_gamma1_critical_direct(make_path(2))
