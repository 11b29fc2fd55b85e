"""Exhaustive property sweeps, one suite per structural statement.

Each suite runs on a single Cayley graph and tallies verified, refuted and
guard-limited cases.  Every statement swept here is a theorem, so a
refutation always points at a bug in this package.  Suites use the
identity as base vertex wherever left translation makes that sufficient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import hypergraph as hg
from .acyclicity import acyclicity_level, find_coset_cycle, is_2_acyclic, is_coset_cycle
from .catalog import entries
from .cosets import coset_members, coset_subset, connecting_masks, gen_set, partition
from .duality import (
    DualHypergraph,
    TSet,
    check_two_distances,
    chordless_to_coset,
    compare_levels,
    coset_to_chordless,
    convex_closure_cayley,
)
from .errors import BudgetExceeded, ConstructionFailed, GuardTooWeak, InvalidPath, MalformedDualPath
from .group import CayleyGraph, iter_members
from .paths import (
    ANY,
    INNER,
    NON_TRIVIAL,
    check_zipper,
    distance,
    enumerate_paths,
    find_min_path,
    innerize,
    long_on_the_outside,
    no_short_cyclic_path,
    non_t,
    short_bound,
    short_set_t,
    t_distance,
    validate_path,
)

LEVEL_CAP = 6
WITNESS_LIMIT = 5


@dataclass
class SuiteResult:
    """Tallies for one suite on one instance."""

    suite: str
    instance: str
    guard_ok: bool = True
    checked: int = 0
    verified: int = 0
    refuted: int = 0
    unverified: int = 0
    budget_exceeded: bool = False
    witnesses: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def ok(self) -> None:
        self.checked += 1
        self.verified += 1

    def weak(self) -> None:
        self.checked += 1
        self.unverified += 1

    def bad(self, witness) -> None:
        self.checked += 1
        self.refuted += 1
        if len(self.witnesses) < WITNESS_LIMIT:
            self.witnesses.append(witness)

    def check(self, holds: bool, witness) -> None:
        if holds:
            self.ok()
        else:
            self.bad(witness)

    @property
    def status(self) -> str:
        if self.refuted:
            return "refuted"
        if self.budget_exceeded:
            return "budget-exceeded"
        if not self.guard_ok or (self.unverified and not self.verified):
            return "unverified-guard"
        return "verified"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "instance": self.instance,
            "status": self.status,
            "guard_ok": self.guard_ok,
            "checked": self.checked,
            "verified": self.verified,
            "refuted": self.refuted,
            "unverified": self.unverified,
            "witnesses": self.witnesses,
            "notes": self.notes,
        }


def _masks(g: CayleyGraph) -> range:
    return range(g.full_mask + 1)


def _fmt(g: CayleyGraph, mask: int) -> str:
    return g.gens.fmt(mask)


def _word(g: CayleyGraph, v: int) -> str:
    return g.vertex_label(v) or "1"


def _two_acyclic_guard(g: CayleyGraph, r: SuiteResult) -> bool:
    if not is_2_acyclic(g):
        r.guard_ok = False
        r.notes["reason"] = "not 2-acyclic"
        return False
    return True


# ---------------------------------------------------------------------------
# coset engine statements


def suite_cutchar(g: CayleyGraph, r: SuiteResult) -> None:
    """Intersection identity at the identity versus brute-force 2-cycle search,
    one verdict per (alpha, beta) pair."""
    cycles = 0
    for alpha in _masks(g):
        a = coset_members(g, 0, alpha)
        for beta in _masks(g):
            identity = a & coset_members(g, 0, beta) == coset_members(g, 0, alpha & beta)
            cycle = any(is_coset_cycle(g, [(0, alpha), (u, beta)]) for u in range(g.order))
            cycles += cycle
            r.check(identity != cycle, {"alpha": _fmt(g, alpha), "beta": _fmt(g, beta)})
    verdict = is_2_acyclic(g)
    found = find_coset_cycle(g, 2)
    r.check(bool(verdict) == (found is None), {"global": "criterion and cycle search disagree"})
    if found is not None:
        r.check(is_coset_cycle(g, found.links), {"cycle": found.to_json(g)})
    r.notes["pairs_with_2_cycle"] = cycles


def suite_genset(g: CayleyGraph, r: SuiteResult) -> None:
    """Intersections of cosets through a common vertex, and the least
    connecting generator set."""
    if not _two_acyclic_guard(g, r):
        return
    masks = list(_masks(g))
    for k in (1, 2, 3):
        for combo in _tuples(masks, k):
            inter = g.all_vertices
            meet = g.full_mask
            for alpha in combo:
                inter &= coset_members(g, 0, alpha)
                meet &= alpha
            r.check(inter == coset_members(g, 0, meet), {"masks": [_fmt(g, a) for a in combo]})
    others = list(range(g.order))
    tuples = [(0, u) for u in others]
    if g.order <= 16:
        tuples += [(0, u, w) for u in others for w in others if u < w]
    else:
        rng = random.Random(0)
        tuples += [(0, rng.randrange(g.order), rng.randrange(g.order)) for _ in range(200)]
    for vs in tuples:
        conn = connecting_masks(g, vs)
        closed = all(a & b in conn for a in conn for b in conn)
        least = g.full_mask
        for a in conn:
            least &= a
        words = [_word(g, v) for v in vs]
        r.check(closed, {"tuple": words, "problem": "not closed under intersection"})
        r.check(gen_set(g, vs, verify=False) == least, {"tuple": words, "problem": "gen is not the least"})


def _tuples(items: list, k: int) -> Iterable[tuple]:
    if k == 0:
        yield ()
        return
    for head in items:
        for rest in _tuples(items, k - 1):
            yield (head,) + rest


def suite_addagent(g: CayleyGraph, r: SuiteResult) -> None:
    """gen(v, u e) = gen(v, u) + e whenever e is not in gen(v, u)."""
    if not _two_acyclic_guard(g, r):
        return
    for u in range(g.order):
        base = gen_set(g, (0, u), verify=False)
        for e, right in enumerate(g.right):
            if base >> e & 1:
                continue
            got = gen_set(g, (0, right[u]), verify=False)
            r.check(got == base | 1 << e, {"u": _word(g, u), "e": g.gens.labels[e]})


def suite_subsetchar(g: CayleyGraph, r: SuiteResult) -> None:
    """beta inside alpha exactly when [v]_beta lies inside [v]_alpha."""
    two = _two_acyclic_guard(g, r)
    mismatches = 0
    for alpha in _masks(g):
        for beta in _masks(g):
            agree = (beta & ~alpha == 0) == coset_subset(g, 0, beta, alpha)
            if two:
                r.check(agree, {"alpha": _fmt(g, alpha), "beta": _fmt(g, beta)})
            else:
                mismatches += not agree
    if not two:
        r.notes["mismatching_pairs"] = mismatches


def suite_cosetcut(g: CayleyGraph, r: SuiteResult, samples: int = 200, seed: int = 0) -> None:
    """The D-coset cut identity, exhaustively at the identity and on random
    longer sequences."""
    if not _two_acyclic_guard(g, r):
        return
    masks = list(_masks(g))
    for a0 in masks:
        for a1 in masks:
            for a2 in masks:
                left_base = coset_members(g, 0, a0 & a1)
                right_base = coset_members(g, 0, a0) & coset_members(g, 0, a1)
                for w in iter_members(coset_members(g, 0, a1)):
                    lhs = left_base & coset_members(g, w, a1 & a2)
                    rhs = right_base & coset_members(g, w, a2)
                    r.check(lhs == rhs, {"masks": [_fmt(g, a0), _fmt(g, a1), _fmt(g, a2)], "w": _word(g, w)})
    rng = random.Random(seed)
    for _ in range(samples):
        labels = [rng.choice(masks) for _ in range(6)]
        vs = [rng.randrange(g.order)]
        for a in labels:
            vs.append(rng.choice(list(iter_members(coset_members(g, vs[-1], a)))))
        for i in range(1, len(labels) - 1):
            ap, a, an = labels[i - 1], labels[i], labels[i + 1]
            lhs = coset_members(g, vs[i], ap & a) & coset_members(g, vs[i + 1], a & an)
            rhs = coset_members(g, vs[i - 1], ap) & coset_members(g, vs[i], a) & coset_members(g, vs[i + 1], an)
            r.check(lhs == rhs, {"sequence": [_word(g, v) for v in vs], "labels": [_fmt(g, a) for a in labels]})


# ---------------------------------------------------------------------------
# coset paths


def suite_zipper(g: CayleyGraph, r: SuiteResult) -> None:
    """Both zipper clauses on every pair of short paths with shared end
    points, the meet-first path and the long-on-the-outside bound."""
    if not _two_acyclic_guard(g, r):
        return
    n = short_bound(g)
    r.notes["n"] = n
    if n < 1:
        r.guard_ok = False
        return
    for u in range(1, g.order):
        paths = enumerate_paths(g, 0, u, ANY, max_len=n, minimal_only=False)
        for p in paths:
            r.check(long_on_the_outside(g, p, n), {"path": p.to_json(g), "problem": "short path leaves [v]_gen"})
        for p in paths:
            for q in paths:
                rep = check_zipper(g, p, q, n)
                r.check(rep.status == "verified", {"p": p.to_json(g), "q": q.to_json(g)})
                meet = p.labels[0] & q.labels[0]
                found = meet != 0 and find_min_path(g, 0, u, ANY, max_len=n, first=meet) is not None
                r.check(found, {"p": p.to_json(g), "q": q.to_json(g), "problem": "no path starts with the meet"})
        # beyond the guard: minimal non-trivial paths longer than n
        d = distance(g, 0, u)
        if n < d <= n + 2:
            longer = enumerate_paths(g, 0, u, NON_TRIVIAL, max_len=d)[:3]
            for p in longer:
                for q in longer:
                    rep = check_zipper(g, p, q, n)
                    if rep.status == "refuted":
                        r.bad({"p": p.to_json(g), "q": q.to_json(g)})
                    else:
                        r.weak()


def suite_cyclic(g: CayleyGraph, r: SuiteResult) -> None:
    """No cyclic coset path of length up to n in an n-acyclic graph."""
    if not _two_acyclic_guard(g, r):
        return
    level = acyclicity_level(g, LEVEL_CAP)
    r.notes["level"] = level
    for n in range(1, level + 1):
        r.check(no_short_cyclic_path(g, 0, n), {"n": n})


def suite_innerize(g: CayleyGraph, r: SuiteResult) -> None:
    """Short non-trivial paths become inner paths after cutting labels down."""
    if not _two_acyclic_guard(g, r):
        return
    n = short_bound(g)
    r.notes["n"] = n
    if n < 2:
        r.guard_ok = False
        r.notes["reason"] = "no non-trivial path is short"
        return
    for u in range(1, g.order):
        for p in enumerate_paths(g, 0, u, NON_TRIVIAL, max_len=n, minimal_only=False):
            try:
                q = innerize(g, p, n=n)
            except GuardTooWeak:
                r.weak()
                continue
            except (ConstructionFailed, InvalidPath) as exc:
                r.bad({"path": p.to_json(g), "error": str(exc)})
                continue
            cls = validate_path(g, q)
            r.check(cls.valid and cls.inner and q.length == p.length, {"path": p.to_json(g), "result": q.to_json(g)})


def suite_noshortinner(g: CayleyGraph, r: SuiteResult) -> None:
    """d(v, u) <= m exactly when an inner path of length <= m exists (m <= n)."""
    if not _two_acyclic_guard(g, r):
        return
    n = short_bound(g)
    r.notes["n"] = n
    if n < 2:
        r.guard_ok = False
        return
    for u in range(1, g.order):
        d = distance(g, 0, u)
        for m in range(2, n + 1):
            inner = find_min_path(g, 0, u, INNER, max_len=m) is not None
            r.check(inner == (d <= m), {"u": _word(g, u), "m": m, "d": str(d)})


def suite_stepaway(g: CayleyGraph, r: SuiteResult, cap: int = 8) -> None:
    """Stepping along a generator a outside short_t(v, u) puts a into
    short_t(va, u), with t = rho(v, gamma) fixed, on 2m+1-acyclic graphs."""
    if not _two_acyclic_guard(g, r):
        return
    m = (acyclicity_level(g, cap) - 1) // 2
    r.notes["m"] = m
    if m < 1:
        r.guard_ok = False
        return
    for u in range(1, g.order):
        gen = gen_set(g, (0, u), verify=False)
        for gamma in _masks(g):
            if gamma & ~gen or t_distance(g, 0, u, gamma) > m:
                continue
            here = short_set_t(g, 0, u, gamma, n=m)
            for a, right in enumerate(g.right):
                va = right[0]
                if here.mask >> a & 1 or va == u:
                    continue
                if t_distance(g, va, u, gamma, anchor=0) > m:
                    continue
                there = short_set_t(g, va, u, gamma, n=m, anchor=0)
                r.check(
                    there is not None and there.mask >> a & 1,
                    {"u": _word(g, u), "gamma": _fmt(g, gamma), "a": g.gens.labels[a]},
                )


# ---------------------------------------------------------------------------
# duality


def suite_tprop(g: CayleyGraph, r: SuiteResult) -> None:
    """<v> & <u> inside rho(v, gamma) exactly when gamma lies in gen(v, u)."""
    if not _two_acyclic_guard(g, r):
        return
    dual = DualHypergraph.of(g)
    for u in range(g.order):
        shared = dual.edge(0) & dual.edge(u)
        gen = gen_set(g, (0, u), verify=False)
        for gamma in _masks(g):
            inside = shared & ~TSet(0, gamma).bits(dual) == 0
            r.check(inside == (gamma & ~gen == 0), {"u": _word(g, u), "gamma": _fmt(g, gamma)})


def suite_twodistances(g: CayleyGraph, r: SuiteResult, all_bases: bool | None = None) -> None:
    """d_t(v, u) = d_t(<v>, <u>) + 1 for every gamma inside gen(v, u)."""
    two = _two_acyclic_guard(g, r)
    if all_bases is None:
        all_bases = g.order <= 8
    bases = range(g.order) if all_bases else [0]
    inf_cases = 0
    for v in bases:
        for u in range(g.order):
            if u == v:
                continue
            gen = gen_set(g, (v, u), verify=False) if two else g.full_mask
            for gamma in _masks(g):
                if gamma & ~gen:
                    continue
                rep = check_two_distances(g, v, u, gamma)
                inf_cases += rep.d_t == float("inf")
                if rep.status == "verified":
                    r.ok()
                elif rep.status == "refuted":
                    r.bad({"v": _word(g, v), "u": _word(g, u), "gamma": _fmt(g, gamma),
                           "d_t": str(rep.d_t), "dual": str(rep.dual)})
                else:
                    r.weak()
    r.notes["infinite_cases"] = inf_cases


def suite_roundtrip(g: CayleyGraph, r: SuiteResult) -> None:
    """coset path -> chordless dual path -> coset path is the identity on
    minimal non-t paths."""
    if not _two_acyclic_guard(g, r):
        return
    for u in range(1, g.order):
        gen = gen_set(g, (0, u), verify=False)
        for gamma in _masks(g):
            if gamma & ~gen:
                continue
            p = find_min_path(g, 0, u, non_t(gamma), anchor=u)
            if p is None:
                continue
            try:
                back = chordless_to_coset(g, coset_to_chordless(g, p, gamma).full, gamma)
            except GuardTooWeak:
                r.weak()
                continue
            except (ConstructionFailed, MalformedDualPath) as exc:
                r.bad({"path": p.to_json(g), "gamma": _fmt(g, gamma), "error": str(exc)})
                continue
            r.check(back == p, {"path": p.to_json(g), "back": back.to_json(g)})


def suite_dualacyc(g: CayleyGraph, r: SuiteResult) -> None:
    """Coset n-acyclicity of G against hypergraph n-acyclicity of d(G), plus
    the membership remark for dual hyperedges."""
    if not _two_acyclic_guard(g, r):
        return
    dual = DualHypergraph.of(g)
    for u in range(g.order):
        for alpha in _masks(g):
            p = partition(g, alpha)
            same = p.label[0] == p.label[u]
            member = coset_members(g, u, alpha) & 1 == 1
            in_edge = dual.edge(0) >> dual.vertex_of(u, alpha) & 1 == 1
            r.check(same == member == in_edge, {"u": _word(g, u), "alpha": _fmt(g, alpha)})
    cmp = compare_levels(g, LEVEL_CAP)
    r.notes["coset_level"] = cmp.coset_level
    r.notes["dual_level"] = cmp.dual_level
    r.check(cmp.agree, {"coset_level": cmp.coset_level, "dual_level": cmp.dual_level})
    for n in range(3, cmp.coset_level + 1):
        r.check(bool(hg.is_n_acyclic(dual.hyper, n)), {"n": n, "problem": "d(G) has a short cycle"})


def suite_closure(g: CayleyGraph, r: SuiteResult, trials: int = 4, seed: int = 0) -> None:
    """Closure axioms on d(G) and cl^c_m(P) inside the dual cl_(m-1)(P)."""
    if not _two_acyclic_guard(g, r):
        return
    rng = random.Random(seed)
    dual = DualHypergraph.of(g)
    h = dual.hyper
    sizes = []
    for _ in range(trials):
        p = 0
        for _ in range(2):
            p |= 1 << rng.randrange(len(dual))
        extra = p | 1 << rng.randrange(len(dual))
        for m in (1, 2, 3):
            cl = hg.convex_closure_bits(h, p, m)
            r.check(cl & p == p, {"m": m, "problem": "not extensive"})
            r.check(hg.convex_closure_bits(h, cl, m) == cl, {"m": m, "problem": "not idempotent"})
            bigger = hg.convex_closure_bits(h, extra, m)
            r.check(cl & ~bigger == 0, {"m": m, "problem": "not monotone"})
        cosets = [dual.cosets[i] for i in iter_members(p)]
        for m in (2, 3):
            rep = convex_closure_cayley(g, cosets, m)
            sizes.append([m, len(rep.cayley), len(rep.dual)])
            r.check(rep.contained, {"P": [c.fmt(g) for c in cosets], "m": m})
    r.notes["sizes"] = sizes


SUITES: dict[str, Callable[[CayleyGraph, SuiteResult], None]] = {
    "cutchar": suite_cutchar,
    "genset": suite_genset,
    "addagent": suite_addagent,
    "subsetchar": suite_subsetchar,
    "cosetcut": suite_cosetcut,
    "zipper": suite_zipper,
    "cyclic": suite_cyclic,
    "innerize": suite_innerize,
    "noshortinner": suite_noshortinner,
    "stepaway": suite_stepaway,
    "tprop": suite_tprop,
    "twodistances": suite_twodistances,
    "roundtrip": suite_roundtrip,
    "dualacyc": suite_dualacyc,
    "closure": suite_closure,
}


def run_suite(name: str, g: CayleyGraph, instance: str | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    r = SuiteResult(name, instance or g.name)
    try:
        SUITES[name](g, r)
    except BudgetExceeded as exc:
        r.budget_exceeded = True
        r.notes["budget"] = str(exc)
    return r


def catalog_instances(max_order: int = 48, max_gens: int = 4) -> list[tuple[str, CayleyGraph]]:
    return [(e.name, CayleyGraph.from_spec(e.spec())) for e in entries(max_order, max_gens)]


def overall_status(results: Iterable[SuiteResult]) -> str:
    statuses = [r.status for r in results]
    for s in ("refuted", "budget-exceeded", "verified"):
        if s in statuses:
            return s
    return "unverified-guard"


__all__ = [
    "SUITES",
    "SuiteResult",
    "catalog_instances",
    "overall_status",
    "run_suite",
]
