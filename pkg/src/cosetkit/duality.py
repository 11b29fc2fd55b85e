"""The dual hypergraph d(G), the cut sets rho(v, gamma), translations
between coset paths and chordless dual paths, the two distance notions and
the two convex closures.

Dual vertices are the cosets (mask, class minimum), ordered by mask and then
by class minimum; the hyperedge with index w is <w>, the set of all cosets
containing the group element w.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .acyclicity import acyclicity_level as coset_level
from .acyclicity import is_2_acyclic
from .cosets import Coset, gen_set, partition
from .errors import (
    BadParams,
    ConstructionFailed,
    GuardTooWeak,
    InvalidPath,
    MalformedDualPath,
    NotTwoAcyclic,
)
from .group import CayleyGraph, iter_members
from .hypergraph import (
    Hypergraph,
    acyclicity_level as hypergraph_level,
    convex_closure_bits,
    cut_distance_bits,
    is_chordless_bits,
)
from .paths import ANY, CosetPath, _Search, _as_budget, find_min_path, non_t, validate_path
from .search import Budget


class DualHypergraph:
    """d(G) with provenance: coset <-> dual vertex, element <-> hyperedge."""

    def __init__(self, g: CayleyGraph):
        self.g = g
        self.cosets: list[Coset] = []
        self.index: dict[tuple[int, int], int] = {}
        self.color_counts: dict[int, int] = {}
        for mask in range(g.full_mask + 1):
            reps = sorted(partition(g, mask).members)
            self.color_counts[mask] = len(reps)
            for rep in reps:
                self.index[(mask, rep)] = len(self.cosets)
                self.cosets.append(Coset(mask, rep))
        edge_bits = []
        for w in range(g.order):
            bits = 0
            for mask in range(g.full_mask + 1):
                bits |= 1 << self.index[(mask, partition(g, mask).label[w])]
            edge_bits.append(bits)
        vertex_edges = [partition(g, c.mask).members[c.rep] for c in self.cosets]
        self.hyper = Hypergraph._from_bits(self.cosets, edge_bits, vertex_edges)

    @classmethod
    def of(cls, g: CayleyGraph) -> "DualHypergraph":
        dual = g.cache.get("dual")
        if dual is None:
            dual = g.cache["dual"] = cls(g)
        return dual

    def __len__(self) -> int:
        return len(self.cosets)

    def vertex_of(self, v: int, mask: int) -> int:
        return self.index[(mask, partition(self.g, mask).label[v])]

    def id_of(self, c: Coset) -> int:
        try:
            return self.index[(c.mask, c.rep)]
        except KeyError:
            raise BadParams(f"{c} is not a coset of this graph") from None

    def edge(self, v: int) -> int:
        """Bitset of <v> over dual vertices."""
        return self.hyper.edge_bits[v]

    def coset_name(self, i: int) -> str:
        return self.cosets[i].fmt(self.g)

    def to_json(self) -> dict:
        """Hypergraph JSON with one colour (label list) per dual vertex."""
        g = self.g
        names = [self.coset_name(i) for i in range(len(self.cosets))]
        return {
            "vertices": names,
            "edges": [[names[i] for i in self.hyper.edges[w]] for w in range(g.order)],
            "owners": [g.vertex_label(w) for w in range(g.order)],
            "colors": {names[i]: g.gens.names(c.mask) for i, c in enumerate(self.cosets)},
        }


def dual_hypergraph(g: CayleyGraph) -> DualHypergraph:
    return DualHypergraph.of(g)


@dataclass(frozen=True)
class TSet:
    """rho(anchor, gamma) = { [anchor]_beta : beta contains gamma }, kept intensionally."""

    anchor: int
    gamma: int

    def contains(self, g: CayleyGraph, c: Coset) -> bool:
        if self.gamma & ~c.mask:
            return False
        return partition(g, c.mask).label[self.anchor] == c.rep

    def bits(self, dual: DualHypergraph) -> int:
        g = dual.g
        out = 0
        for beta in range(g.full_mask + 1):
            if self.gamma & ~beta == 0:
                out |= 1 << dual.vertex_of(self.anchor, beta)
        return out

    def cosets(self, g: CayleyGraph) -> list[Coset]:
        return [
            Coset(beta, partition(g, beta).label[self.anchor])
            for beta in range(g.full_mask + 1)
            if self.gamma & ~beta == 0
        ]


def rho(g: CayleyGraph, v: int, gamma: int) -> TSet:
    return TSet(v, gamma)


def hyperedge_distance(g: CayleyGraph, v: int, u: int, gamma: int | None = None) -> int | float:
    """d_t(<v>, <u>) with t = rho(v, gamma); gamma defaults to gen(v, u)."""
    if v == u:
        raise BadParams("endpoints must differ")
    if gamma is None:
        gamma = gen_set(g, (v, u))
    dual = DualHypergraph.of(g)
    return cut_distance_bits(dual.hyper, dual.edge(v), dual.edge(u), TSet(v, gamma).bits(dual))


# ---------------------------------------------------------------------------
# path translations


@dataclass(frozen=True)
class DualPath:
    """A Gaifman path c_0, ..., c_k in d(G) with owners[i] naming a hyperedge
    <owners[i]> that contains both c_i and c_(i+1)."""

    cosets: tuple[Coset, ...]
    owners: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.cosets) - 1

    def to_json(self, g: CayleyGraph) -> list:
        out: list = []
        for i, c in enumerate(self.cosets):
            out.append(c.fmt(g))
            if i < len(self.owners):
                out.append("<" + (g.vertex_label(self.owners[i]) or "1") + ">")
        return out


@dataclass(frozen=True)
class PathTranslation:
    full: DualPath
    trimmed: DualPath
    guard_ok: bool
    level: int


def _check_dual_path(g: CayleyGraph, dp: DualPath, t: int) -> list[int]:
    dual = DualHypergraph.of(g)
    if len(dp.owners) != len(dp.cosets) - 1:
        raise MalformedDualPath("need exactly one owner between consecutive cosets")
    ids = [dual.id_of(c) for c in dp.cosets]
    for i, w in enumerate(dp.owners):
        e = dual.edge(w)
        if not (e >> ids[i] & 1 and e >> ids[i + 1] & 1):
            raise MalformedDualPath(f"hyperedge <{g.vertex_label(w) or '1'}> misses step {i + 1}")
    if any(t >> i & 1 for i in ids):
        raise MalformedDualPath("path enters the cut set t")
    if not _chordless_outside(dual, ids, t):
        raise MalformedDualPath("path has a chord")
    return ids


def _chordless_outside(dual: DualHypergraph, ids: Sequence[int], t: int) -> bool:
    # outside t the induced sub-hypergraph has the same adjacency among its vertices
    return is_chordless_bits(dual.hyper, list(ids))


def chordless_to_coset(g: CayleyGraph, dp: DualPath, gamma: int, anchor: int | None = None) -> CosetPath:
    """Read [v_1]_0, <v_1>, [v_2]_a1, <v_2>, ..., [v_(l+1)]_al, <v_(l+1)>, [v_(l+1)]_0
    as the coset path v_1, a1, v_2, ..., al, v_(l+1).

    The dual path must be chordless outside t = rho(anchor, gamma).  The
    anchor defaults to the end vertex v_(l+1); passing the start vertex
    gives the start-anchored reading of t.
    """
    if not is_2_acyclic(g):
        raise NotTwoAcyclic(witness=is_2_acyclic(g).cycle)
    cs = dp.cosets
    if len(cs) < 3:
        raise MalformedDualPath("a dual path of this shape has length at least 2")
    if cs[0].mask != 0 or cs[-1].mask != 0:
        raise MalformedDualPath("the dual path must start and end at singleton cosets")
    if dp.owners and (dp.owners[0] != cs[0].rep or dp.owners[-1] != cs[-1].rep):
        raise MalformedDualPath("the first and last hyperedges must belong to the end points")
    end = cs[-1].rep if anchor is None else anchor
    dual = DualHypergraph.of(g)
    _check_dual_path(g, dp, TSet(end, gamma).bits(dual))
    p = CosetPath(dp.owners, tuple(c.mask for c in cs[1:-1]))
    cls = validate_path(g, p, gamma=gamma, anchor=end)
    if not (cls.valid and cls.non_t):
        raise ConstructionFailed(f"chordless dual path gave no non-t coset path: {cls.reason}")
    return p


def owners_for(g: CayleyGraph, cosets: Sequence[Coset]) -> DualPath:
    """Pick the least element in each pair of consecutive cosets as owner."""
    owners = []
    for a, b in zip(cosets, cosets[1:]):
        common = partition(g, a.mask).members[a.rep] & partition(g, b.mask).members[b.rep]
        if not common:
            raise MalformedDualPath("consecutive cosets do not meet")
        owners.append(next(iter_members(common)))
    return DualPath(tuple(cosets), tuple(owners))


def coset_to_chordless(g: CayleyGraph, p: CosetPath, gamma: int) -> PathTranslation:
    """The dual path of a non-t coset path (t = rho(v_(l+1), gamma)) and its
    trimmed interior [v_1]_a1, <v_2>, ..., <v_l>, [v_l]_al.

    Chordlessness is checked.  A chord under a weak guard (level < l + 1)
    raises :class:`GuardTooWeak`, otherwise :class:`ConstructionFailed`.
    """
    v, u = p.start, p.end
    if gamma & ~gen_set(g, (v, u)):
        raise BadParams("gamma must lie inside gen of the end points")
    cls = validate_path(g, p, gamma=gamma, anchor=u)
    if not cls.valid:
        raise InvalidPath(cls.reason or "not a coset path")
    if not cls.non_t:
        raise InvalidPath("path is not non-t for t = rho(end, gamma)")
    ell = p.length
    level = coset_level(g, max(2, ell + 1))
    guard_ok = level >= ell + 1
    vs, labs = p.vertices, p.labels
    full_cosets = [Coset(0, vs[0])]
    for i in range(ell):
        full_cosets.append(Coset(labs[i], partition(g, labs[i]).label[vs[i + 1]]))
    full_cosets.append(Coset(0, u))
    full = DualPath(tuple(full_cosets), tuple(vs))
    trimmed = DualPath(tuple(full_cosets[1:-1]), tuple(vs[1:-1]))
    dual = DualHypergraph.of(g)
    t = TSet(u, gamma).bits(dual)
    try:
        _check_dual_path(g, full, t)
        if trimmed.length > 0:
            _check_dual_path(g, trimmed, t)
    except MalformedDualPath as exc:
        if guard_ok:
            raise ConstructionFailed(f"coset path did not translate to a chordless path: {exc}") from exc
        raise GuardTooWeak(f"translation failed at acyclicity level {level}: {exc}") from exc
    return PathTranslation(full, trimmed, guard_ok, level)


# ---------------------------------------------------------------------------
# the two distances


@dataclass(frozen=True)
class TwoDistanceReport:
    status: str  # verified | refuted | unverified-guard
    d_t: int | float
    dual: int | float
    canonical: bool
    path: CosetPath | None

    def to_json(self, g: CayleyGraph) -> dict:
        return {
            "status": self.status,
            "d_t": _num(self.d_t),
            "dual": _num(self.dual),
            "gamma_in_gen": self.canonical,
            "path": None if self.path is None else self.path.to_json(g),
        }


def _num(x):
    return "inf" if x == math.inf else x


def check_two_distances(
    g: CayleyGraph, v: int, u: int, gamma: int, budget: int | Budget | None = None
) -> TwoDistanceReport:
    """Compare d_t(v, u) with d_t(<v>, <u>) + 1 for t = rho(v, gamma).

    Both sides are computed independently.  On a 2-acyclic graph a mismatch
    is reported as ``refuted``; otherwise the verdict is ``unverified-guard``.
    """
    if v == u:
        raise BadParams("endpoints must differ")
    two = bool(is_2_acyclic(g))
    p = find_min_path(g, v, u, non_t(gamma), budget=budget)
    d_t = math.inf if p is None else p.length
    dual = hyperedge_distance(g, v, u, gamma)
    canonical = two and gamma & ~gen_set(g, (v, u)) == 0
    if not two:
        status = "unverified-guard"
    else:
        status = "verified" if d_t == dual + 1 else "refuted"
    return TwoDistanceReport(status, d_t, dual, canonical, p)


# ---------------------------------------------------------------------------
# convex closures


@dataclass(frozen=True)
class ClosureReport:
    cayley: frozenset[Coset]
    dual: frozenset[Coset]
    m: int
    contained: bool

    def to_json(self, g: CayleyGraph) -> dict:
        return {
            "m": self.m,
            "cayley_size": len(self.cayley),
            "dual_size": len(self.dual),
            "contained": self.contained,
            "cayley": sorted(c.fmt(g) for c in self.cayley),
            "dual": sorted(c.fmt(g) for c in self.dual),
        }


def _interior_links(g: CayleyGraph, c1: Coset, c2: Coset, m: int, budget: Budget) -> set[tuple[int, int]]:
    """Links [v_i]_a_i, 1 < i < l, of coset paths of length <= m whose first
    link is c1 and last link is c2."""
    out: set[tuple[int, int]] = set()
    if m < 3:
        return out
    first = partition(g, c1.mask).members[c1.rep]
    last = partition(g, c2.mask).members[c2.rep]
    for v in iter_members(first):
        search = _Search(g, v, None, ANY, None, m, c1.mask, budget, last=c2.mask, targets=last)
        if search.lower_bound(m) is None:
            continue
        for length in range(3, m + 1):
            for walk in search.walks(length, allow_repeats=True):
                inner = [(s.alpha, search.space.link_rep(s)) for s in walk[1:-1]]
                if any(x not in out for x in inner) and search.representatives(walk) is not None:
                    out.update(inner)
    return out


def cayley_closure(g: CayleyGraph, cosets: Iterable[Coset], m: int, budget: int | Budget | None = None) -> frozenset[Coset]:
    """cl^c_m(P) as a least fixpoint."""
    if m < 2:
        raise BadParams("m must be at least 2")
    if not is_2_acyclic(g):
        raise NotTwoAcyclic(witness=is_2_acyclic(g).cycle)
    b = _as_budget(budget, "coset closure")
    q = {(c.mask, c.rep) for c in cosets}
    done: set[tuple] = set()
    while True:
        add = set()
        for c1 in sorted(q):
            for c2 in sorted(q):
                if (c1, c2) in done:
                    continue
                done.add((c1, c2))
                add |= _interior_links(g, Coset(*c1), Coset(*c2), m, b) - q
        if not add:
            return frozenset(Coset(*c) for c in q)
        q |= add


def convex_closure_cayley(
    g: CayleyGraph, cosets: Iterable[Coset], m: int, budget: int | Budget | None = None
) -> ClosureReport:
    """cl^c_m(P) together with the dual closure cl_(m-1)(P) and whether the
    first is contained in the second."""
    cosets = list(cosets)
    cay = cayley_closure(g, cosets, m, budget)
    dual = DualHypergraph.of(g)
    pbits = 0
    for c in cosets:
        pbits |= 1 << dual.id_of(c)
    dbits = convex_closure_bits(dual.hyper, pbits, m - 1, budget)
    dset = frozenset(dual.cosets[i] for i in iter_members(dbits))
    return ClosureReport(cay, dset, m, cay <= dset)


# ---------------------------------------------------------------------------
# acyclicity transfer


@dataclass(frozen=True)
class LevelComparison:
    coset_level: int
    dual_level: int
    cap: int

    @property
    def agree(self) -> bool:
        return self.coset_level == self.dual_level


def compare_levels(g: CayleyGraph, cap: int = 6, budget: int | Budget | None = None) -> LevelComparison:
    """Coset acyclicity level of G and hypergraph acyclicity level of d(G).

    Both use the same cap; the hypergraph level is 2 when d(G) is not
    3-acyclic, matching a coset level of 2.
    """
    if not is_2_acyclic(g):
        raise NotTwoAcyclic(witness=is_2_acyclic(g).cycle)
    cl = coset_level(g, cap, budget)
    dl = hypergraph_level(DualHypergraph.of(g).hyper, cap, budget)
    return LevelComparison(cl, dl, cap)
