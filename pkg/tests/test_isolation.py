import pytest
from hypothesis import given, settings

from conftest import graphs, random_graph
from oracles import nx_gamma_sets, nx_iota, nx_min_isolating_sets
from isocrit.families import make_cycle, make_path, make_spider, make_star, make_wounded_spider
from isocrit.graph import GraphError, build_graph, disjoint_union
from isocrit.isolation import (
    enumerate_min_dominating_sets,
    enumerate_min_isolating_sets,
    enumerate_min_isolating_sets_bruteforce,
    gamma,
    iota,
    iota_bnb,
    iota_bruteforce,
    iota_tree,
    is_isolating,
)


def test_is_isolating_examples():
    p5 = make_path(5)
    assert is_isolating(p5, {2})
    assert not is_isolating(p5, {1})
    assert is_isolating(build_graph(3, []), set())


def test_bruteforce_examples():
    assert iota_bruteforce(make_path(5)) == 1
    assert iota_bruteforce(make_cycle(9)) == 3
    assert iota_bruteforce(make_spider(3)) == 1


def test_tree_examples():
    assert iota_tree(make_path(9)) == 2
    assert iota_tree(make_wounded_spider(5, 3)) == 1
    assert iota_tree(disjoint_union(make_path(5), make_path(5))) == 2
    with pytest.raises(GraphError):
        iota_tree(make_cycle(4))


def test_min_set_examples():
    assert enumerate_min_isolating_sets(make_path(5)).sets == ((2,),)
    assert enumerate_min_isolating_sets(make_cycle(4)).sets == ((0,), (1,), (2,), (3,))
    assert enumerate_min_isolating_sets(make_path(2)).sets == ((0,), (1,))
    assert enumerate_min_isolating_sets(build_graph(3, [])).sets == ((),)


def test_gamma_examples():
    c3 = make_cycle(3)
    assert gamma(c3) == 1 and len(enumerate_min_dominating_sets(c3)) == 3
    assert gamma(make_path(5)) == 2
    assert gamma(make_cycle(4)) == 2


def test_path_and_cycle_formulas_small():
    for n in range(1, 25):
        assert iota(make_path(n)) == -(-(n - 1) // 4)
    for n in range(3, 25):
        assert iota(make_cycle(n)) == -(-n // 4)


def test_stars_have_iota_one():
    for k in range(1, 8):
        assert iota(make_star(k)) == 1
    assert iota(make_star(0)) == 0


@settings(max_examples=120, deadline=None)
@given(graphs(1, 8))
def test_solvers_match_oracle(g):
    expected = nx_iota(g)
    assert iota_bruteforce(g) == expected
    assert iota_bnb(g) == expected
    assert iota(g) == expected


@settings(max_examples=80, deadline=None)
@given(graphs(1, 8))
def test_enumeration_matches_oracle(g):
    oracle = nx_min_isolating_sets(g)
    assert list(enumerate_min_isolating_sets(g).sets) == oracle
    assert list(enumerate_min_isolating_sets_bruteforce(g).sets) == oracle


@settings(max_examples=60, deadline=None)
@given(graphs(1, 7))
def test_gamma_matches_networkx(g):
    sets = nx_gamma_sets(g)
    assert gamma(g) == len(sets[0])
    assert list(enumerate_min_dominating_sets(g).sets) == sets


def test_bnb_on_larger_graphs_matches_bruteforce(rng):
    for _ in range(20):
        g = random_graph(rng, 12, 16)
        assert iota_bnb(g) == iota_bruteforce(g)
