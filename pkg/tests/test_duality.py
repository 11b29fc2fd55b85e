import math
import random

import pytest

from cosetkit import errors
from cosetkit.acyclicity import acyclicity_level
from cosetkit.catalog import CATALOG
from cosetkit.cosets import Coset, coset, gen_set
from cosetkit.duality import (
    DualPath,
    TSet,
    cayley_closure,
    check_two_distances,
    chordless_to_coset,
    compare_levels,
    convex_closure_cayley,
    coset_to_chordless,
    dual_hypergraph,
    hyperedge_distance,
    owners_for,
    rho,
)
from cosetkit.hypergraph import Hypergraph, acyclicity_level as hyper_level
from cosetkit.paths import CosetPath, find_min_path, non_t

from conftest import graph, oracle
from oracles import hyper_chordal, hyper_conformal

SMALL = ["z2xz2", "s3_adj", "d4", "z2^3", "d3xz2"]


def as_set(g, c: Coset):
    return (c.mask, frozenset(x for x in range(g.order) if coset(g, x, c.mask) == c))


@pytest.mark.parametrize("name", SMALL + ["s3_all"])
def test_dual_hypergraph_matches_oracle(name):
    g, o = graph(name), oracle(name)
    dual = dual_hypergraph(g)
    verts, edges = o.dual()
    assert {as_set(g, c) for c in dual.cosets} == set(verts)
    for w in range(g.order):
        got = {as_set(g, dual.cosets[i]) for i in dual.hyper.edges[w]}
        assert got == set(edges[w])
    # Q_alpha colours partition the vertices
    assert sum(dual.color_counts.values()) == len(dual)


def test_dual_json_shape(z22):
    data = dual_hypergraph(z22).to_json()
    assert len(data["vertices"]) == 9 and len(data["edges"]) == 4
    assert data["owners"] == ["", "a", "b", "ab"]
    assert all(len(e) == 4 for e in data["edges"])


@pytest.mark.parametrize("name", SMALL)
def test_hyperedge_distance_matches_networkx(name):
    g, o = graph(name), oracle(name)
    for u in range(1, g.order):
        for gamma in range(g.full_mask + 1):
            assert hyperedge_distance(g, 0, u, gamma) == o.dual_t_distance(0, u, gamma)


@pytest.mark.parametrize("name", ["z2xz2", "s3_adj"])
def test_two_distances_from_two_brute_force_oracles(name):
    """Exhaustive path search on one side, networkx BFS on the other."""
    g, o = graph(name), oracle(name)
    for v in range(g.order):
        for u in range(g.order):
            if u == v:
                continue
            everything = o.paths(v, u, g.order - 1)
            gen = o.gen((v, u))
            for gamma in range(g.full_mask + 1):
                if gamma & ~gen:
                    continue
                d_t = min((len(ls) for vs, ls in everything if o.non_t(vs, ls, gamma, v)), default=math.inf)
                dual = o.dual_t_distance(v, u, gamma)
                assert d_t == dual + 1
                rep = check_two_distances(g, v, u, gamma)
                assert (rep.d_t, rep.dual, rep.status) == (d_t, dual, "verified")


def test_two_distances_z22_values(z22):
    rep = check_two_distances(z22, 0, 3, z22.gens.mask("a"))
    assert (rep.d_t, rep.dual) == (2, 1)
    # 1,{b},b,{a},ab,{b},a avoids [1]_a = {1, a}; no shorter path does
    rep = check_two_distances(z22, 0, 1, z22.gens.mask("a"))
    assert (rep.d_t, rep.dual) == (3, 2)
    assert rep.path.to_json(z22) == ["", ["b"], "b", ["a"], "ab", ["b"], "a"]
    # gamma empty: [1]_0 = {1} lies in every first link, and t swallows <1>
    rep = check_two_distances(z22, 0, 1, 0)
    assert (rep.d_t, rep.dual) == (math.inf, math.inf)
    assert rep.to_json(z22)["dual"] == "inf"


def test_two_distances_z2_is_infinite():
    g = graph("z2")
    rep = check_two_distances(g, 0, 1, 1)
    assert (rep.d_t, rep.dual, rep.status) == (math.inf, math.inf, "verified")


def test_two_distances_without_two_acyclicity(s3):
    assert check_two_distances(s3, 0, 1, 0).status == "unverified-guard"


def test_rho_is_upward_closed(z22):
    t = rho(z22, 3, z22.gens.mask("a"))
    assert [c.mask for c in t.cosets(z22)] == [1, 3]
    for c in t.cosets(z22):
        assert t.contains(z22, c)
    assert not t.contains(z22, Coset(2, 0))


def test_chordless_to_coset_example(z22):
    a, b = z22.gens.mask("a"), z22.gens.mask("b")
    one, vb, vab = 0, z22.vertex("b"), z22.vertex("ab")
    cosets = (Coset(0, one), coset(z22, vb, b), coset(z22, vab, a), Coset(0, vab))
    dp = DualPath(cosets, (one, vb, vab))
    # t = rho(1, {a}) misses every coset on the path
    p = chordless_to_coset(z22, dp, a, anchor=one)
    assert p == CosetPath((one, vb, vab), (b, a))
    assert p.to_json(z22) == ["", ["b"], "b", ["a"], "ab"]
    # with the default end anchor, t = rho(ab, {a}) contains [ab]_{a}
    with pytest.raises(errors.MalformedDualPath):
        chordless_to_coset(z22, dp, a)


def test_chordless_to_coset_base_case(z22):
    a, b = z22.gens.mask("a"), z22.gens.mask("b")
    dp = owners_for(z22, (Coset(0, 0), coset(z22, 0, a), Coset(0, 1)))
    assert chordless_to_coset(z22, dp, b) == CosetPath((0, 1), (a,))


def test_malformed_dual_paths(z22):
    a = z22.gens.mask("a")
    with pytest.raises(errors.MalformedDualPath):
        chordless_to_coset(z22, DualPath((Coset(0, 0), Coset(0, 1)), (0,)), 0)
    with pytest.raises(errors.MalformedDualPath):
        chordless_to_coset(z22, DualPath((Coset(0, 0), coset(z22, 0, a), Coset(0, 1)), (0, 0)), 0)
    with pytest.raises(errors.MalformedDualPath):
        owners_for(z22, (Coset(0, 0), Coset(0, 3)))


@pytest.mark.parametrize("name", ["z2xz2", "s3_adj", "d4", "d3xz2"])
def test_round_trip_is_verbatim(name):
    g = graph(name)
    count = 0
    for u in range(1, g.order):
        gen = gen_set(g, (0, u))
        for gamma in range(g.full_mask + 1):
            if gamma & ~gen:
                continue
            p = find_min_path(g, 0, u, non_t(gamma), anchor=u)
            if p is None:
                continue
            tr = coset_to_chordless(g, p, gamma)
            assert tr.full.length == p.length + 1
            assert chordless_to_coset(g, tr.full, gamma) == p
            count += 1
    assert count > 0


def brute_cayley_closure(g, o, start, m):
    paths = []
    for v in range(g.order):
        for u in range(g.order):
            if u != v:
                paths.extend(o.paths(v, u, m))
    q = {as_set(g, c) for c in start}
    while True:
        add = set()
        for vs, ls in paths:
            first = (ls[0], o.of(vs[0], ls[0]))
            last = (ls[-1], o.of(vs[-1], ls[-1]))
            if first in q and last in q:
                for i in range(1, len(ls) - 1):
                    add.add((ls[i], o.of(vs[i], ls[i])))
        if add <= q:
            return q
        q |= add


@pytest.mark.parametrize("name", ["z2xz2", "s3_adj", "d4"])
def test_cayley_closure_matches_brute_force(name):
    g, o = graph(name), oracle(name)
    dual = dual_hypergraph(g)
    rng = random.Random(7)
    for _ in range(12):
        start = rng.sample(dual.cosets, rng.choice([2, 3]))
        for m in (2, 3, 4):
            got = cayley_closure(g, start, m)
            assert {as_set(g, c) for c in got} == brute_cayley_closure(g, o, start, m)


def test_closure_report_containment():
    g = graph("d4")
    dual = dual_hypergraph(g)
    rng = random.Random(3)
    for _ in range(10):
        start = rng.sample(dual.cosets, 2)
        for m in (2, 3):
            rep = convex_closure_cayley(g, start, m)
            assert rep.contained and rep.cayley <= rep.dual
            assert set(start) <= rep.cayley
            assert rep.to_json(g)["cayley_size"] == len(rep.cayley)


def test_closure_rejects_small_m_and_cyclic_graphs(z22, s3):
    with pytest.raises(errors.BadParams):
        cayley_closure(z22, [Coset(0, 0)], 1)
    with pytest.raises(errors.NotTwoAcyclic):
        cayley_closure(s3, [Coset(0, 0)], 3)


@pytest.mark.parametrize("name", [n for n, e in CATALOG.items() if e.two_acyclic and e.order <= 8])
def test_level_transfer_with_independent_deciders(name):
    g = graph(name)
    cmp = compare_levels(g, 6)
    assert cmp.agree and cmp.coset_level == acyclicity_level(g, 6)
    h = dual_hypergraph(g).hyper
    verts, edges = h.vertices, h.edge_sets()
    expected = 6
    for n in range(3, 7):
        if not (hyper_conformal(verts, edges, n) and hyper_chordal(verts, edges, n)):
            expected = n - 1
            break
    assert cmp.dual_level == expected == hyper_level(Hypergraph(verts, edges), 6)


def test_tset_bits_match_cosets(z22):
    dual = dual_hypergraph(z22)
    t = TSet(3, z22.gens.mask("b"))
    assert {dual.cosets[i] for i in range(len(dual)) if t.bits(dual) >> i & 1} == set(t.cosets(z22))
