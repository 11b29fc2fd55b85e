import math

import pytest

from cosetkit import errors
from cosetkit.acyclicity import acyclicity_level
from cosetkit.paths import (
    ANY,
    INNER,
    NON_TRIVIAL,
    CosetPath,
    check_zipper,
    distance,
    enumerate_paths,
    find_cyclic_path,
    find_min_path,
    innerize,
    is_coset_path,
    long_on_the_outside,
    no_short_cyclic_path,
    non_t,
    parse_constraint,
    short_bound,
    short_set,
    short_set_t,
    t_distance,
    validate_path,
)

from conftest import graph, oracle

# instance -> oracle depth (every coset path up to this length is enumerated)
DEPTH = {"z2xz2": 3, "s3_adj": 4, "d4": 4, "z2^3": 3, "d3xz2": 3}


def oracle_min(o, v, u, depth, keep):
    lengths = [len(labels) for vs, labels in o.paths(v, u, depth) if keep(vs, labels)]
    return min(lengths, default=math.inf)


def found_len(p):
    return math.inf if p is None else p.length


@pytest.mark.parametrize("name", sorted(DEPTH))
def test_minimal_lengths_match_brute_force(name):
    g, o, depth = graph(name), oracle(name), DEPTH[name]
    for u in range(1, g.order):
        cases = [
            (ANY, lambda vs, ls: True),
            (NON_TRIVIAL, o.non_trivial),
            (INNER, lambda vs, ls: o.inner(vs, ls) and o.non_trivial(vs, ls)),
        ]
        gen = o.gen((0, u))
        for gamma in range(g.full_mask + 1):
            if gamma & ~gen == 0:
                cases.append((non_t(gamma), lambda vs, ls, gm=gamma: o.non_t(vs, ls, gm, 0)))
        for constraint, keep in cases:
            p = find_min_path(g, 0, u, constraint, max_len=depth)
            assert found_len(p) == oracle_min(o, 0, u, depth, keep), (name, u, constraint)
            if p is not None:
                assert o.is_path(p.vertices, p.labels)
                assert keep(p.vertices, p.labels)


@pytest.mark.parametrize("name", ["z2xz2", "s3_adj", "d4"])
def test_validate_path_flags_match_definitions(name):
    g, o, depth = graph(name), oracle(name), DEPTH[name]
    for u in range(1, g.order):
        for vs, labels in o.paths(0, u, depth):
            p = CosetPath(vs, labels)
            gamma = o.gen((0, u)) & 1
            cls = validate_path(g, p, gamma=gamma)
            assert cls.valid
            assert cls.non_trivial == o.non_trivial(vs, labels)
            assert cls.inner == o.inner(vs, labels)
            assert cls.non_t == o.non_t(vs, labels, gamma, 0)
            if cls.inner:
                assert cls.non_trivial


def test_invalid_paths_are_rejected(z22):
    a, b = z22.gens.mask("a"), z22.gens.mask("b")
    assert not validate_path(z22, CosetPath((0, 2), (a,))).valid
    assert not validate_path(z22, CosetPath((0, 1, 0), (a, a))).valid
    # two full-mask steps: the middle D-coset is the whole group
    assert not is_coset_path(z22, CosetPath((0, 1, 3), (a | b, a | b)))
    with pytest.raises(errors.InvalidPath):
        CosetPath((0,), ())


def test_single_step_path_is_valid_but_trivial(z22):
    p = find_min_path(z22, 0, 3, ANY)
    assert p.length == 1 and p.labels == (z22.full_mask,)
    cls = validate_path(z22, p)
    assert cls.valid and not cls.non_trivial


def test_z22_distances(z22):
    ab, a = z22.vertex("ab"), z22.vertex("a")
    assert distance(z22, 0, ab) == 2
    assert distance(z22, 0, a) == 3
    ga = z22.gens.mask("a")
    p = find_min_path(z22, 0, ab, non_t(ga))
    assert p.to_json(z22) == ["", ["b"], "b", ["a"], "ab"]
    assert t_distance(z22, 0, ab, ga) == 2


def test_distance_needs_two_acyclicity(s3):
    with pytest.raises(errors.NotTwoAcyclic):
        distance(s3, 0, 1)


def test_equal_endpoints_are_rejected(z22):
    with pytest.raises(errors.BadParams):
        find_min_path(z22, 1, 1)


def test_budget_exhaustion_is_an_error():
    g = graph("s4_adj")
    with pytest.raises(errors.BudgetExceeded):
        find_min_path(type(g)(g.group), 0, g.order - 1, NON_TRIVIAL, max_len=6, budget=20)


def test_parse_constraint():
    assert parse_constraint("any") == ANY
    assert parse_constraint("non-trivial") == NON_TRIVIAL
    assert parse_constraint("inner+non-t", gamma=1).gamma == 1
    assert parse_constraint(None, gamma=2) == non_t(2)
    with pytest.raises(errors.BadParams):
        parse_constraint("non-t")
    with pytest.raises(errors.BadParams):
        parse_constraint("sideways")


@pytest.mark.parametrize("name", ["d4", "s3_adj"])
def test_enumerated_paths_are_coset_paths(name):
    g, o = graph(name), oracle(name)
    for u in range(1, g.order):
        found = enumerate_paths(g, 0, u, ANY, max_len=3)
        assert found
        for p in found:
            assert o.is_path(p.vertices, p.labels)
        # every realisable (labels) sequence of the oracle is represented
        assert {p.labels for p in found} == {ls for _, ls in o.paths(0, u, 3)}


@pytest.mark.parametrize("name", ["d4", "s3_adj", "d3xz2"])
def test_short_sets_are_meets_of_first_labels(name):
    g, o = graph(name), oracle(name)
    n = short_bound(g)
    assert n == acyclicity_level(g, 6) // 2
    for u in range(1, g.order):
        firsts = {ls[0] for _, ls in o.paths(0, u, n)}
        meet = g.full_mask
        for a in firsts:
            meet &= a
        got = short_set(g, 0, u)
        assert got.mask == meet
        assert set(got.first_labels) == firsts
        assert got.mask & ~o.gen((0, u)) == 0
        for gamma in range(1, g.full_mask + 1):
            firsts_t = {ls[0] for vs, ls in o.paths(0, u, n) if o.non_t(vs, ls, gamma, 0)}
            got_t = short_set_t(g, 0, u, gamma)
            if not firsts_t:
                assert got_t is None
            else:
                meet_t = g.full_mask
                for a in firsts_t:
                    meet_t &= a
                assert got_t.mask == meet_t


def test_zipper_on_all_short_path_pairs():
    g, o = graph("d4"), oracle("d4")
    n = short_bound(g)
    for u in range(1, g.order):
        paths = [CosetPath(vs, ls) for vs, ls in o.paths(0, u, n)]
        for p in paths:
            assert long_on_the_outside(g, p, n)
            for q in paths:
                assert check_zipper(g, p, q, n).status == "verified"


def test_zipper_beyond_the_guard_is_unverified(z22):
    a, b = z22.gens.mask("a"), z22.gens.mask("b")
    p = CosetPath((0, 2, 3), (b, a))
    q = CosetPath((0, 1, 3), (a, b))
    rep = check_zipper(z22, p, q)
    assert rep.n == 1 and rep.status == "unverified-guard"
    with pytest.raises(errors.BadParams):
        check_zipper(z22, p, CosetPath((0, 1), (a,)))


def test_innerize_produces_inner_paths():
    g, o = graph("d4"), oracle("d4")
    n = short_bound(g)
    done = 0
    for u in range(1, g.order):
        gen = o.gen((0, u))
        for vs, ls in o.paths(0, u, n):
            if len(ls) < 2 or any(gen & ~a == 0 for a in ls):
                continue
            q = innerize(g, CosetPath(vs, ls))
            assert (q.start, q.end) == (0, u)
            assert q.labels == tuple(a & gen for a in ls)
            assert o.is_path(q.vertices, q.labels) and o.inner(q.vertices, q.labels)
            done += 1
    assert done > 0


def test_innerize_rejects_labels_containing_gen(z22):
    p = CosetPath((0, 2, 3), (z22.full_mask, z22.gens.mask("a")))
    with pytest.raises(errors.InvalidPath):
        innerize(z22, p)


@pytest.mark.parametrize("name", ["z2xz2", "s3_adj", "d4", "d3xz2"])
def test_no_short_cyclic_paths(name):
    g = graph(name)
    level = acyclicity_level(g, 6)
    for n in range(1, level + 1):
        assert no_short_cyclic_path(g, 0, n)


def test_cyclic_paths_exist_beyond_the_level(z22):
    assert find_cyclic_path(z22, 0, 4) is not None
    with pytest.raises(errors.GuardTooWeak):
        no_short_cyclic_path(z22, 0, 4)
