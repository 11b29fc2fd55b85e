import math

import networkx as nx
import pytest

from cosetkit import errors
from cosetkit.catalog import CATALOG, FAMILIES, entries, make, parse_params
from cosetkit.group import CayleyGraph

from conftest import graph, oracle
from oracles import perm_closure_order, simple_graph


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_recorded_order_girth_and_two_acyclicity(name):
    e = CATALOG[name]
    spec = e.spec()
    assert perm_closure_order([tuple(x["perm"]) for x in spec.generators]) == e.order
    assert nx.girth(simple_graph(graph(name))) == e.girth
    if e.order <= 24:
        assert (oracle(name).cycle_of_length(2) is None) == e.two_acyclic


@pytest.mark.parametrize("name, cap", [("z2", 6), ("z2xz2", 6), ("z2^3", 6), ("s3_all", 6)])
def test_recorded_levels_from_brute_force(name, cap):
    assert oracle(name).level(cap) == CATALOG[name].level


def test_families():
    assert set(FAMILIES) == {"symmetric_transpositions", "symmetric_adjacent", "dihedral_reflections", "elementary_abelian", "direct_product"}
    assert CayleyGraph.from_spec(make("symmetric_transpositions", {"n": 4})).order == 24
    assert CayleyGraph.from_spec(make("dihedral_reflections", {"n": 7})).order == 14
    assert CayleyGraph.from_spec(make("elementary_abelian", {"k": 5})).order == 32
    assert len(make("symmetric_transpositions", {"n": 4}).generators) == math.comb(4, 2)


def test_parse_params():
    assert parse_params("dihedral_reflections", ["n=5"]) == {"n": 5}
    assert parse_params("elementary_abelian", ["3"]) == {"k": 3}
    with pytest.raises(errors.BadParams):
        parse_params("dihedral_reflections", ["n=five"])
    with pytest.raises(errors.UnknownFamily):
        make("quaternion", {})
    with pytest.raises(errors.BadParams):
        make("dihedral_reflections", {"n": 1})


def test_entries_filter():
    small = entries(max_order=8, max_gens=3)
    assert all(e.order <= 8 for e in small)
    assert {e.name for e in small} >= {"z2", "z2xz2", "z2^3", "d4"}
    assert "s4_all" not in {e.name for e in entries(max_gens=4)}
