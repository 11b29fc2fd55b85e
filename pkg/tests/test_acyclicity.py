import math
import random

import networkx as nx
import pytest

from cosetkit import errors
from cosetkit.acyclicity import (
    acyclicity_level,
    find_coset_cycle,
    generator_cycle,
    girth,
    is_2_acyclic,
    is_coset_cycle,
    is_n_acyclic,
    singleton_cycle,
)
from cosetkit.catalog import CATALOG, make

from conftest import graph, oracle
from oracles import simple_graph

# (instance, largest m for which the oracle enumerates every cycle of length m)
EXHAUSTIVE = [("z2", 6), ("z2xz2", 4), ("s3_all", 3), ("s3_adj", 5), ("z2^3", 3), ("d4", 4), ("d5", 4), ("d3xz2", 3)]


@pytest.mark.parametrize("name, depth", EXHAUSTIVE)
def test_shortest_cycle_matches_brute_force(name, depth):
    g, o = graph(name), oracle(name)
    found = find_coset_cycle(g, depth)
    first = next((m for m in range(2, depth + 1) if o.cycle_of_length(m) is not None), None)
    if first is None:
        assert found is None
    else:
        assert found is not None and len(found) == first
        assert o.is_cycle(found.vertices, found.labels)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_reported_cycles_satisfy_the_definition_and_translate(name):
    g, o = graph(name), oracle(name)
    if g.order > 24:
        pytest.skip("covered by the catalog sweep")
    cycle = find_coset_cycle(g, 6)
    if cycle is None:
        return
    assert is_coset_cycle(g, cycle.links)
    assert o.is_cycle(cycle.vertices, cycle.labels)
    rng = random.Random(0)
    for w in rng.sample(range(g.order), min(5, g.order)):
        moved = cycle.translate(g, w)
        assert o.is_cycle(moved.vertices, moved.labels)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_two_acyclicity_agrees_with_two_cycle_search(name):
    g = graph(name)
    verdict = is_2_acyclic(g)
    assert bool(verdict) == (find_coset_cycle(g, 2) is None)
    if not verdict:
        assert is_coset_cycle(g, verdict.cycle.links)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_girth_matches_networkx(name):
    g = graph(name)
    expected = nx.girth(simple_graph(g))
    assert girth(g) == expected
    cyc = generator_cycle(g)
    if expected == math.inf:
        assert cyc is None
    else:
        assert len(cyc) == expected
        # singleton links along a generator cycle no longer than the level
        # cannot form a coset cycle
        level = acyclicity_level(g, 6)
        if expected <= level:
            assert not is_coset_cycle(g, singleton_cycle(g, cyc).links)


def test_s3_example(s3):
    assert girth(s3) == 4
    verdict = is_2_acyclic(s3)
    assert not verdict
    cycle = find_coset_cycle(s3, 2)
    assert cycle.describe(s3) == "((1), {(1,2),(2,3)}), ((1 3), {(1,3)})"
    assert cycle.vertices == (0, s3.vertex(["(1,3)"]))
    assert [s3.gens.names(a) for a in cycle.labels] == [["(1,2)", "(2,3)"], ["(1,3)"]]


def test_z22_levels(z22):
    assert acyclicity_level(z22, 10) == 3
    assert is_n_acyclic(z22, 3) and not is_n_acyclic(z22, 4)
    four = find_coset_cycle(z22, 4)
    names = [z22.gens.names(a) for a in four.labels]
    assert all(len(x) == 1 for x in names)
    assert all(names[i] != names[i + 1] for i in range(3))


def test_z2_has_no_cycles():
    g = graph("z2")
    assert acyclicity_level(g, 10) == 10
    assert girth(g) == math.inf


def test_hexagon_is_two_acyclic():
    assert is_2_acyclic(graph("s3_adj"))
    assert girth(graph("s3_adj")) == 6


def test_s3_level_is_one(s3):
    assert acyclicity_level(s3, 10) == 1


def test_budget_is_reported():
    g = graph("s4_adj")
    g2 = type(g)(g.group)  # fresh caches
    with pytest.raises(errors.BudgetExceeded):
        find_coset_cycle(g2, 6, budget=50)


def test_level_cap_must_be_at_least_two(z22):
    with pytest.raises(errors.BadParams):
        acyclicity_level(z22, 1)


def test_catalog_entry_for_direct_product_builds():
    spec = make("direct_product", {"factors": [["elementary_abelian", {"k": 1}], ["elementary_abelian", {"k": 1}]]})
    assert find_coset_cycle(type(graph("z2")).from_spec(spec), 4) is not None
