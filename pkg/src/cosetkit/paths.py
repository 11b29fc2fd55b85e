"""Coset paths: validation, classification, constrained minimal search,
distances d and d_t, the direction sets short and short_t, the zipper
check, innerization and the cyclic-path test.

Searches run over the link-state graph of :mod:`cosetkit.search`.  A walk
of states (alpha_i, D_i) fixes the labels and the cosets D_i; a path is
obtained by choosing pairwise distinct vertices v_i in D_i (a system of
distinct representatives avoiding both endpoints).  A minimal path never
repeats a state, because cutting out the loop keeps a walk whose D-sets are
a sub-multiset and so still admits distinct representatives.

Every path constraint here only looks at the link [v_i]_{alpha_i}, which is
determined by the state, so constraints prune the state graph directly.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .acyclicity import acyclicity_level, is_2_acyclic, is_n_acyclic
from .cosets import coset_members, gen_set, partition
from .errors import (
    BadParams,
    ConstructionFailed,
    GuardTooWeak,
    InvalidPath,
    NotTwoAcyclic,
)
from .group import CayleyGraph, iter_members
from .search import Budget, State, StateSpace

SHORT_CAP = 8


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class CosetPath:
    """v_1, alpha_1, v_2, ..., alpha_l, v_{l+1} with labels as generator masks."""

    vertices: tuple[int, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) < 1 or len(self.vertices) != len(self.labels) + 1:
            raise InvalidPath("a coset path needs l >= 1 labels and l + 1 vertices")

    @property
    def length(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> "CosetPath":
        return CosetPath(self.vertices[::-1], self.labels[::-1])

    def d_cosets(self, g: CayleyGraph) -> list[int]:
        """Member sets of [v_i]_{alpha_(i-1) & alpha_i} for i = 1..l+1."""
        labs = (0,) + self.labels + (0,)
        return [coset_members(g, v, labs[i] & labs[i + 1]) for i, v in enumerate(self.vertices)]

    def links(self, g: CayleyGraph) -> list[int]:
        """Member sets of [v_i]_{alpha_i} for i = 1..l."""
        return [coset_members(g, v, a) for v, a in zip(self.vertices, self.labels)]

    def to_json(self, g: CayleyGraph) -> list:
        out: list = [g.vertex_label(self.vertices[0])]
        for a, v in zip(self.labels, self.vertices[1:]):
            out.append(g.gens.names(a))
            out.append(g.vertex_label(v))
        return out

    def describe(self, g: CayleyGraph) -> str:
        parts = [g.group.element_repr(self.vertices[0])]
        for a, v in zip(self.labels, self.vertices[1:]):
            parts.append(g.gens.fmt(a))
            parts.append(g.group.element_repr(v))
        return ", ".join(parts)

    @classmethod
    def from_words(cls, g: CayleyGraph, items: Sequence) -> "CosetPath":
        """Build from an alternating list ``[word, labels, word, ...]``.

        Words may be strings or label sequences; labels are label lists.
        """
        if len(items) < 3 or len(items) % 2 == 0:
            raise InvalidPath("expected word, labels, word, ... with at least one step")
        verts = tuple(g.vertex(w) for w in items[0::2])
        labs = tuple(g.gens.mask(ls) for ls in items[1::2])
        return cls(verts, labs)


@dataclass(frozen=True)
class PathClass:
    """Flags for one path.  Classification flags are None when not evaluated."""

    valid: bool
    non_trivial: bool | None = None
    inner: bool | None = None
    non_t: bool | None = None
    gamma: int | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "non_trivial": self.non_trivial,
            "inner": self.inner,
            "non_t": self.non_t,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class Constraint:
    """Which links a path may use; combinations are conjunctions."""

    non_trivial: bool = False
    inner: bool = False
    gamma: int | None = None  # non-t with t = rho(anchor, gamma)

    @property
    def name(self) -> str:
        parts = []
        if self.non_trivial:
            parts.append("nontrivial")
        if self.inner:
            parts.append("inner")
        if self.gamma is not None:
            parts.append("non-t")
        return "+".join(parts) or "any"

    @property
    def needs_gen(self) -> bool:
        return self.non_trivial or self.inner


ANY = Constraint()
NON_TRIVIAL = Constraint(non_trivial=True)
INNER = Constraint(inner=True)


def non_t(gamma: int) -> Constraint:
    return Constraint(gamma=gamma)


_ALIASES = {
    "any": "any",
    "nontrivial": "nontrivial",
    "non-trivial": "nontrivial",
    "non_trivial": "nontrivial",
    "inner": "inner",
    "non-t": "non-t",
    "non_t": "non-t",
    "nont": "non-t",
}


def parse_constraint(text: str | Constraint | None, gamma: int | None = None) -> Constraint:
    """Read ``any``, ``nontrivial``, ``inner``, ``non-t`` or a ``+`` combination."""
    if isinstance(text, Constraint):
        return text
    if text is None:
        return Constraint(gamma=gamma) if gamma is not None else ANY
    flags = set()
    for part in str(text).lower().split("+"):
        key = _ALIASES.get(part.strip())
        if key is None:
            raise BadParams(f"unknown path constraint {part!r}")
        flags.add(key)
    if "non-t" in flags and gamma is None:
        raise BadParams("the non-t constraint needs a generator set gamma")
    return Constraint(
        non_trivial="nontrivial" in flags,
        inner="inner" in flags,
        gamma=gamma if "non-t" in flags else None,
    )


@dataclass(frozen=True)
class DirectionSet:
    """short(v, u) or short_t(v, u) together with the context it was computed in."""

    mask: int
    v: int
    u: int
    gamma: int | None
    n: int
    first_labels: tuple[int, ...] = ()
    weak_guard: bool = False

    def to_json(self, g: CayleyGraph) -> dict:
        return {
            "mask": g.gens.names(self.mask),
            "from": g.vertex_label(self.v),
            "to": g.vertex_label(self.u),
            "gamma": None if self.gamma is None else g.gens.names(self.gamma),
            "n": self.n,
            "first_labels": [g.gens.names(a) for a in self.first_labels],
            "weak_guard": self.weak_guard,
        }


# ---------------------------------------------------------------------------
# validation


def _require_two_acyclic(g: CayleyGraph) -> None:
    verdict = is_2_acyclic(g)
    if not verdict:
        raise NotTwoAcyclic(witness=verdict.cycle)


def _structure_error(g: CayleyGraph, p: CosetPath, cyclic: bool) -> str | None:
    n = g.order
    for v in p.vertices:
        if not 0 <= v < n:
            return f"vertex {v} out of range"
    for a in p.labels:
        if a & ~g.full_mask:
            return f"label mask {a} uses unknown generators"
    verts = p.vertices[:-1] if cyclic else p.vertices
    if len(set(verts)) != len(verts):
        return "vertices repeat"
    if cyclic and p.start != p.end:
        return "a cyclic path must end where it starts"
    for i, a in enumerate(p.labels):
        if partition(g, a).label[p.vertices[i]] != partition(g, a).label[p.vertices[i + 1]]:
            return f"step {i + 1} leaves the {g.gens.fmt(a)}-coset"
    d = p.d_cosets(g)
    for i in range(len(d) - 1):
        if d[i] & d[i + 1]:
            return f"coset condition fails between positions {i + 1} and {i + 2}"
    return None


def _check_cut_identity(g: CayleyGraph, p: CosetPath) -> None:
    """On 2-acyclic graphs the pairwise D-intersections equal the triple
    intersection of neighbouring links, at every interior position."""
    labs = (0,) + p.labels + (0,)
    vs = p.vertices
    for i in range(1, len(vs) - 1):
        left = coset_members(g, vs[i], labs[i] & labs[i + 1]) & coset_members(g, vs[i + 1], labs[i + 1] & labs[i + 2])
        triple = (
            coset_members(g, vs[i - 1], labs[i])
            & coset_members(g, vs[i], labs[i + 1])
            & coset_members(g, vs[i + 1], labs[i + 2])
        )
        if left != triple:
            raise ConstructionFailed(f"coset cut identity fails at position {i + 1} of a validated path")


def classify_links(g: CayleyGraph, p: CosetPath, gamma: int | None = None, anchor: int | None = None):
    """(non_trivial, inner, non_t) for a path assumed valid on a 2-acyclic graph."""
    v, u = p.start, p.end
    links = p.links(g)
    b = coset_members(g, v, gen_set(g, (v, u), verify=False))
    non_trivial = p.length >= 2 and all(b & ~lk for lk in links)
    inner = all(lk & ~b == 0 and lk != b for lk in links)
    nt = None
    if gamma is not None:
        t = coset_members(g, v if anchor is None else anchor, gamma)
        nt = all(t & ~lk for lk in links)
    return non_trivial, inner, nt


def validate_path(
    g: CayleyGraph,
    p: CosetPath,
    gamma: int | None = None,
    anchor: int | None = None,
    classify: bool = True,
    cyclic: bool = False,
) -> PathClass:
    """Check the coset path conditions and, if asked, classify the path.

    ``gamma`` adds the non-t flag for t = rho(anchor, gamma); the anchor
    defaults to the first vertex.  Classification needs a 2-acyclic graph.
    """
    reason = _structure_error(g, p, cyclic)
    if reason is not None:
        return PathClass(False, gamma=gamma, reason=reason)
    if not classify:
        if gamma is None:
            return PathClass(True)
        t = coset_members(g, p.start if anchor is None else anchor, gamma)
        return PathClass(True, non_t=all(t & ~lk for lk in p.links(g)), gamma=gamma)
    _require_two_acyclic(g)
    _check_cut_identity(g, p)
    if cyclic:
        return PathClass(True, gamma=gamma)
    non_trivial, inner, nt = classify_links(g, p, gamma, anchor)
    if inner and not non_trivial:
        raise ConstructionFailed("inner path that is not non-trivial")
    return PathClass(True, non_trivial, inner, nt, gamma)


def is_coset_path(g: CayleyGraph, p: CosetPath, cyclic: bool = False) -> bool:
    return _structure_error(g, p, cyclic) is None


# ---------------------------------------------------------------------------
# search core


def _link_filter(g: CayleyGraph, v: int, u: int, c: Constraint, anchor: int | None) -> Callable[[int], bool] | None:
    tests = []
    if c.needs_gen:
        _require_two_acyclic(g)
        b = coset_members(g, v, gen_set(g, (v, u), verify=False))
        if c.non_trivial:
            tests.append(lambda lk: b & ~lk != 0)
        if c.inner:
            tests.append(lambda lk: lk & ~b == 0 and lk != b)
    if c.gamma is not None:
        t = coset_members(g, v if anchor is None else anchor, c.gamma)
        tests.append(lambda lk: t & ~lk != 0)
    if not tests:
        return None
    return lambda lk: all(test(lk) for test in tests)


class _Search:
    """Walk enumeration for paths from v to u under one constraint.

    The reachable region is grown one BFS layer at a time, so a search for a
    short path never looks further than it has to.  Remaining-distance
    estimates h are recomputed for the current region before walks are
    enumerated; a walk of length L only visits states of depth < L.

    With ``targets`` (a vertex bitset) in place of u the search ends at any
    target vertex; the end vertex is then chosen along with the interior
    representatives.  Only unconstrained searches support this.
    """

    def __init__(self, g, v, u, constraint, anchor, max_len, first, budget, last=None, targets=None):
        self.g = g
        self.v = v
        self.u = u
        self.targets = targets
        self.last = last
        self.max_len = max_len
        self.budget = budget
        self.space = StateSpace.of(g)
        flt = _link_filter(g, v, u, constraint, anchor)
        if flt is None:
            self.ok = lambda s: True
        else:
            verdicts: dict[tuple[int, int], bool] = {}

            def ok(s: State) -> bool:
                key = (s.alpha, self.space.link_rep(s))
                res = verdicts.get(key)
                if res is None:
                    res = verdicts[key] = flt(self.space.link_members(s))
                return res

            self.ok = ok
        masks = range(1, g.full_mask + 1) if first is None else [first]
        self.starts = [s for s in (self.space.start(v, a) for a in masks) if self.ok(s)]
        self.exclude = (1 << v) if u is None else (1 << v) | (1 << u)
        self._succ: dict[State, list[State]] = {}
        self.depth: dict[State, int] = {s: 0 for s in self.starts}
        self.frontier = list(self.starts)
        self.layers = 1 if self.starts else 0
        self.closed = not self.starts
        self.h: dict[State, int] = {}
        self._h_for = None

    def finishes(self, s: State) -> bool:
        if self.last is not None and s.alpha != self.last:
            return False
        if self.u is None:
            return bool(self._ends(s))
        return self.space.can_finish(s, self.u)

    def _ends(self, s: State) -> int:
        return self.space.link_members(s) & ~self.space.d_members(s) & self.targets & ~self.exclude

    def succ(self, s: State) -> list[State]:
        out = self._succ.get(s)
        if out is None:
            out = self._succ[s] = [y for y in self.space.successors(s, self.budget) if self.ok(y)]
        return out

    def _grow(self, layers: int) -> None:
        """Make sure states of depth < ``layers`` are known."""
        while not self.closed and self.layers < layers:
            nxt = []
            for x in self.frontier:
                for y in self.succ(x):
                    if y not in self.depth:
                        self.depth[y] = self.layers
                        nxt.append(y)
            if nxt:
                self.frontier = nxt
                self.layers += 1
            else:
                self.closed = True

    def _distances(self, length: int) -> None:
        """h(s) = fewest further states needed to finish, inside depth < length."""
        self._grow(length)
        key = min(length, self.layers) if self.closed else length
        if self._h_for == key:
            return
        region = [x for x, d in self.depth.items() if d < length]
        preds: dict[State, list[State]] = {}
        for x in region:
            if self.depth[x] < length - 1:
                for y in self.succ(x):
                    preds.setdefault(y, []).append(x)
        self.h = {}
        queue = deque()
        for x in region:
            if self.finishes(x):
                self.h[x] = 0
                queue.append(x)
        while queue:
            y = queue.popleft()
            for x in preds.get(y, ()):
                if x not in self.h:
                    self.h[x] = self.h[y] + 1
                    queue.append(x)
        self._h_for = key

    def lower_bound(self, length: int) -> int | None:
        """Shortest walk length within the region for ``length``, or None."""
        self._distances(length)
        hs = [self.h[s] for s in self.starts if s in self.h]
        return min(hs) + 1 if hs else None

    def walks(self, length: int, allow_repeats: bool = False) -> Iterator[list[State]]:
        """All state walks of exactly ``length`` that end at u, in order."""
        self._distances(length)
        walk: list[State] = []
        on_walk: set[State] = set()

        def rec(s: State) -> Iterator[list[State]]:
            self.budget.spend()
            walk.append(s)
            on_walk.add(s)
            left = length - len(walk)
            if left == 0:
                if self.finishes(s):
                    yield list(walk)
            else:
                for y in self.succ(s):
                    hy = self.h.get(y)
                    if hy is None or hy > left - 1:
                        continue
                    if not allow_repeats and y in on_walk:
                        continue
                    yield from rec(y)
            walk.pop()
            if s not in walk:
                on_walk.discard(s)

        for s in self.starts:
            hs = self.h.get(s)
            if hs is not None and hs <= length - 1:
                yield from rec(s)

    def representatives(self, walk: list[State]) -> list[int] | None:
        """Lexicographically least distinct v_i in D_i for i = 2..l (and the
        end vertex too when searching towards a target set)."""
        options = [list(iter_members(self.space.d_members(s) & ~self.exclude)) for s in walk[1:]]
        if self.u is None:
            options.append(list(iter_members(self._ends(walk[-1]))))
        chosen: list[int] = []
        used: set[int] = set()

        def rec(i: int) -> bool:
            if i == len(options):
                return True
            for x in options[i]:
                if x not in used:
                    used.add(x)
                    chosen.append(x)
                    if rec(i + 1):
                        return True
                    chosen.pop()
                    used.discard(x)
            return False

        return chosen if rec(0) else None

    def to_path(self, walk: list[State], reps: list[int]) -> CosetPath:
        ends = () if self.u is None else (self.u,)
        return CosetPath((self.v, *reps, *ends), tuple(s.alpha for s in walk))

    def paths(self, length: int, allow_repeats: bool = False) -> Iterator[CosetPath]:
        for walk in self.walks(length, allow_repeats):
            reps = self.representatives(walk)
            if reps is not None:
                yield self.to_path(walk, reps)

    def minimal(self) -> CosetPath | None:
        for length in range(1, self.max_len + 1):
            if self.lower_bound(length) is None:
                if self.closed:
                    return None
                continue
            for p in self.paths(length):
                return p
        return None


def _default_max_len(g: CayleyGraph, max_len: int | None) -> int:
    if max_len is None:
        return max(1, g.order - 1)
    if max_len < 1:
        raise BadParams("max_len must be at least 1")
    return max_len


def _as_budget(budget, what: str) -> Budget:
    return budget if isinstance(budget, Budget) else Budget(budget, what)


def find_min_path(
    g: CayleyGraph,
    v: int,
    u: int,
    constraint: str | Constraint | None = None,
    max_len: int | None = None,
    gamma: int | None = None,
    anchor: int | None = None,
    first: int | None = None,
    budget: int | Budget | None = None,
) -> CosetPath | None:
    """A shortest coset path from v to u under ``constraint``, or None.

    ``first`` fixes the first label.  Ties are broken by the sequence of
    (label, coset) pairs and then by the least vertex choice.
    """
    if v == u:
        raise BadParams("endpoints must differ")
    c = parse_constraint(constraint, gamma)
    max_len = _default_max_len(g, max_len)
    key = (v, u, c, anchor, first, max_len)
    cache = g.cache.setdefault("min_paths", {})
    if key in cache:
        return cache[key]
    search = _Search(g, v, u, c, anchor, max_len, first, _as_budget(budget, "coset path search"))
    result = search.minimal()
    cache[key] = result
    return result


def enumerate_paths(
    g: CayleyGraph,
    v: int,
    u: int,
    constraint: str | Constraint | None = None,
    max_len: int = 2,
    gamma: int | None = None,
    anchor: int | None = None,
    minimal_only: bool = False,
    budget: int | Budget | None = None,
) -> list[CosetPath]:
    """One path per realisable state walk of length <= ``max_len``.

    Paths from the same walk share labels and D-cosets, so they agree on
    everything the zipper lemma and the translations look at.
    """
    if v == u:
        raise BadParams("endpoints must differ")
    c = parse_constraint(constraint, gamma)
    search = _Search(g, v, u, c, anchor, max_len, None, _as_budget(budget, "coset path enumeration"))
    out: list[CosetPath] = []
    if search.lower_bound(max_len) is None:
        return out
    for length in range(1, max_len + 1):
        out.extend(search.paths(length, allow_repeats=not minimal_only))
        if minimal_only and out:
            break
    return out


# ---------------------------------------------------------------------------
# distances


def distance(g: CayleyGraph, v: int, u: int, budget: int | Budget | None = None) -> int | float:
    """d(v, u): length of a minimal non-trivial coset path; ``math.inf`` if none."""
    _require_two_acyclic(g)
    p = find_min_path(g, v, u, NON_TRIVIAL, budget=budget)
    return math.inf if p is None else p.length


def t_distance(
    g: CayleyGraph,
    v: int,
    u: int,
    gamma: int,
    budget: int | Budget | None = None,
    anchor: int | None = None,
) -> int | float:
    """d_t(v, u) for t = rho(anchor, gamma), anchor defaulting to v:
    the length of a minimal non-t coset path."""
    _require_two_acyclic(g)
    p = find_min_path(g, v, u, non_t(gamma), anchor=anchor, budget=budget)
    return math.inf if p is None else p.length


def canonical_gamma(g: CayleyGraph, v: int, u: int, gamma: int) -> bool:
    """Whether gamma lies inside gen(v, u), the regime the theory is about."""
    return gamma & ~gen_set(g, (v, u)) == 0


# ---------------------------------------------------------------------------
# short paths and direction sets


def short_bound(g: CayleyGraph, cap: int = SHORT_CAP) -> int:
    """n with g 2n-acyclic at the computed level (capped)."""
    return acyclicity_level(g, cap) // 2


def _first_labels(g, v, u, c, n, budget, anchor=None) -> list[int]:
    out = []
    b = _as_budget(budget, "short set search")
    for alpha in range(1, g.full_mask + 1):
        if find_min_path(g, v, u, c, max_len=n, anchor=anchor, first=alpha, budget=b) is not None:
            out.append(alpha)
    return out


def _check_meet_closed(g: CayleyGraph, labels: list[int]) -> None:
    present = set(labels)
    for a in labels:
        for b in labels:
            if a & b not in present:
                raise ConstructionFailed(
                    f"first labels {g.gens.fmt(a)} and {g.gens.fmt(b)} occur but their meet does not"
                )


def short_set(
    g: CayleyGraph, v: int, u: int, n: int | None = None, budget: int | Budget | None = None
) -> DirectionSet:
    """short(v, u): the meet of the first labels of coset paths of length <= n.

    n defaults to half the acyclicity level.  With n < 2 only one-step
    paths count and the result is gen(v, u); the set is still returned but
    flagged as computed under a weak guard.
    """
    if v == u:
        raise BadParams("endpoints must differ")
    _require_two_acyclic(g)
    if n is None:
        n = short_bound(g)
    labels = _first_labels(g, v, u, ANY, n, budget)
    _check_meet_closed(g, labels)
    mask = g.full_mask
    for a in labels:
        mask &= a
    return DirectionSet(mask, v, u, None, n, tuple(labels), weak_guard=n < 2)


def short_set_t(
    g: CayleyGraph,
    v: int,
    u: int,
    gamma: int,
    n: int | None = None,
    budget: int | Budget | None = None,
    anchor: int | None = None,
) -> DirectionSet | None:
    """short_t(v, u) for t = rho(anchor, gamma), anchor defaulting to v.

    None when no short non-t path exists.  A different anchor keeps t fixed
    while the start vertex moves, as in the step-away property.
    """
    if v == u:
        raise BadParams("endpoints must differ")
    _require_two_acyclic(g)
    if n is None:
        n = short_bound(g)
    labels = _first_labels(g, v, u, non_t(gamma), n, budget, anchor)
    if not labels:
        return None
    _check_meet_closed(g, labels)
    mask = g.full_mask
    for a in labels:
        mask &= a
    return DirectionSet(mask, v, u, gamma, n, tuple(labels), weak_guard=n < 2)


def long_on_the_outside(g: CayleyGraph, p: CosetPath, n: int) -> bool:
    """False if p has a D-coset missing [v_1]_gen yet length <= n."""
    b = coset_members(g, p.start, gen_set(g, (p.start, p.end), verify=False))
    d = p.d_cosets(g)
    outside = any(b & d[i] == 0 for i in range(1, p.length))
    return not outside or p.length > n


# ---------------------------------------------------------------------------
# zipper lemma


@dataclass(frozen=True)
class ZipperReport:
    """Overlap sets at both ends of two paths with shared endpoints.

    ``status`` is ``verified`` when both clauses hold within the guard,
    ``refuted`` when a clause fails within the guard (a counterexample, so
    an internal error) and ``unverified-guard`` when a path is longer than n.
    """

    status: str
    clause1: bool
    clause2: bool
    n: int
    start_sets: tuple[int, int]
    end_sets: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "clause1": self.clause1,
            "clause2": self.clause2,
            "n": self.n,
            "start_sets": [list(iter_members(s)) for s in self.start_sets],
            "end_sets": [list(iter_members(s)) for s in self.end_sets],
        }


def _second_d(g: CayleyGraph, p: CosetPath) -> int:
    # [t_2]_{alpha_1 & alpha_2} with alpha_{l+1} empty, so {u} when l = 1
    nxt = p.labels[1] if p.length > 1 else 0
    return coset_members(g, p.vertices[1], p.labels[0] & nxt)


def check_zipper(g: CayleyGraph, p: CosetPath, q: CosetPath, n: int | None = None) -> ZipperReport:
    if p.start != q.start or p.end != q.end:
        raise BadParams("zipper paths must share both endpoints")
    if n is None:
        n = short_bound(g)
    v, u = p.start, p.end
    a1, b1 = p.labels[0], q.labels[0]
    s1 = coset_members(g, v, a1 & b1) & _second_d(g, p)
    s2 = coset_members(g, v, a1 & b1) & _second_d(g, q)
    pr, qr = p.reversed(), q.reversed()
    al, bk = p.labels[-1], q.labels[-1]
    e1 = coset_members(g, u, al & bk) & _second_d(g, pr)
    e2 = coset_members(g, u, al & bk) & _second_d(g, qr)
    clause1 = bool(s1 or s2)
    clause2 = bool(e1 or e2)
    if max(p.length, q.length) > n:
        status = "unverified-guard"
    else:
        status = "verified" if clause1 and clause2 else "refuted"
    return ZipperReport(status, clause1, clause2, n, (s1, s2), (e1, e2))


# ---------------------------------------------------------------------------
# innerization


def innerize(g: CayleyGraph, p: CosetPath, alpha: int | None = None, n: int | None = None) -> CosetPath:
    """Cut every label down to alpha (default gen(v, u)) and move interior
    vertices inside their D-cosets until the path is an inner coset path.

    The original vertex is tried first at every position, so inner paths are
    returned unchanged.  A label containing alpha violates the precondition
    and raises :class:`InvalidPath`.  If no choice works, the error is
    :class:`GuardTooWeak` when p is longer than n and :class:`ConstructionFailed`
    otherwise.
    """
    _require_two_acyclic(g)
    if not is_coset_path(g, p):
        raise InvalidPath("innerize needs a coset path")
    if p.length < 2:
        raise InvalidPath("innerize needs a path of length at least 2")
    v, u = p.start, p.end
    gen = gen_set(g, (v, u), verify=False)
    if alpha is None:
        alpha = gen
    elif gen & ~alpha:
        raise BadParams("alpha must contain gen(v, u)")
    if n is None:
        n = short_bound(g)
    for i, a in enumerate(p.labels):
        if alpha & ~a == 0:
            raise InvalidPath(f"label {i + 1} contains {g.gens.fmt(alpha)}, so the path is not short")
    labels = tuple(a & alpha for a in p.labels)
    big = coset_members(g, v, alpha)
    ell = p.length
    d_orig = p.d_cosets(g)
    ext = (0,) + labels + (0,)

    def dnew(i: int, x: int) -> int:
        # [v'_i]_{beta_(i-1) & beta_i}, 0-based position i
        return coset_members(g, x, ext[i] & ext[i + 1])

    chosen = [v]
    used = {v, u}

    def ok_link(i: int, x: int) -> bool:
        lk = coset_members(g, x, labels[i])
        return lk & ~big == 0 and lk != big

    def rec(i: int) -> bool:
        prev = chosen[-1]
        if i == ell:
            return (
                partition(g, labels[i - 1]).label[prev] == partition(g, labels[i - 1]).label[u]
                and dnew(i - 1, prev) & dnew(i, u) == 0
            )
        orig = p.vertices[i]
        cands = [orig] + [x for x in iter_members(d_orig[i]) if x != orig]
        for x in cands:
            if x in used:
                continue
            if partition(g, labels[i - 1]).label[prev] != partition(g, labels[i - 1]).label[x]:
                continue
            if dnew(i - 1, prev) & dnew(i, x):
                continue
            if not ok_link(i, x):
                continue
            chosen.append(x)
            used.add(x)
            if rec(i + 1):
                return True
            chosen.pop()
            used.discard(x)
        return False

    if ok_link(0, v) and rec(1):
        q = CosetPath(tuple(chosen) + (u,), labels)
        cls = validate_path(g, q)
        if not (cls.valid and cls.inner):
            raise ConstructionFailed("innerized path failed validation")
        return q
    if ell > n:
        raise GuardTooWeak(f"no inner replacement found and the path is longer than n = {n}")
    raise ConstructionFailed("no inner replacement exists for a short path")


# ---------------------------------------------------------------------------
# cyclic paths


def find_cyclic_path(
    g: CayleyGraph, v: int, max_len: int, budget: int | Budget | None = None
) -> CosetPath | None:
    """A shortest coset path of length <= max_len that starts and ends at v."""
    search = _Search(g, v, v, ANY, None, max_len, None, _as_budget(budget, "cyclic path search"))
    return search.minimal()


def no_short_cyclic_path(g: CayleyGraph, v: int, n: int, budget: int | Budget | None = None) -> bool:
    """True when no cyclic coset path of length <= n exists at v.

    Refuses graphs that are not n-acyclic, where the statement says nothing.
    """
    if n < 1:
        raise BadParams("n must be at least 1")
    _require_two_acyclic(g)
    if n >= 2 and not is_n_acyclic(g, n, budget):
        raise GuardTooWeak(f"graph is not {n}-acyclic")
    return find_cyclic_path(g, v, n, budget) is None


__all__ = [
    "ANY",
    "INNER",
    "NON_TRIVIAL",
    "Constraint",
    "CosetPath",
    "DirectionSet",
    "PathClass",
    "ZipperReport",
    "canonical_gamma",
    "check_zipper",
    "classify_links",
    "distance",
    "enumerate_paths",
    "find_cyclic_path",
    "find_min_path",
    "innerize",
    "is_coset_path",
    "long_on_the_outside",
    "no_short_cyclic_path",
    "non_t",
    "parse_constraint",
    "short_bound",
    "short_set",
    "short_set_t",
    "t_distance",
    "validate_path",
]
