"""Coset cycles, n-acyclicity, the 2-acyclicity criterion and girth."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .cosets import coset_members, mask_order_key, partition
from .errors import BadParams
from .group import CayleyGraph, iter_members
from .search import Budget, State, StateSpace


@dataclass(frozen=True)
class CosetCycle:
    """Links (v_i, alpha_i) for i in Z_m; alpha_i is a generator mask."""

    links: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.links)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.links)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.links)

    def to_json(self, g: CayleyGraph) -> list:
        return [[g.vertex_label(v), g.gens.names(a)] for v, a in self.links]

    def describe(self, g: CayleyGraph) -> str:
        parts = [f"({g.group.element_repr(v)}, {g.gens.fmt(a)})" for v, a in self.links]
        return ", ".join(parts)

    def translate(self, g: CayleyGraph, w: int) -> "CosetCycle":
        return CosetCycle(tuple((g.translate(w, v), a) for v, a in self.links))


def is_coset_cycle(g: CayleyGraph, links: Sequence[tuple[int, int]]) -> bool:
    """Direct check of the definition, indices taken mod m."""
    m = len(links)
    if m < 2:
        return False
    for i in range(m):
        v, a = links[i]
        vn, an = links[(i + 1) % m]
        _, ap = links[i - 1]
        if not partition(g, a).label[v] == partition(g, a).label[vn]:
            return False
        here = coset_members(g, v, ap & a)
        there = coset_members(g, vn, a & an)
        if here & there:
            return False
    return True


def _closing_length(space: StateSpace, s: State, limit: int, budget: Budget):
    """Length of the shortest closed walk through ``s`` (at most ``limit``)
    and the BFS depths of everything expanded on the way."""
    depth = {s: 0}
    frontier = [s]
    for d in range(limit):
        nxt = []
        for x in frontier:
            for y in space.successors(x, budget):
                if y == s:
                    return d + 1, depth
                if y not in depth:
                    depth[y] = d + 1
                    nxt.append(y)
        if not nxt:
            return None, depth
        frontier = nxt
    return None, depth


def _least_walk(space: StateSpace, s: State, m: int, depth: dict) -> list[State]:
    """Lexicographically least closed walk of length ``m`` through ``s``.

    Only states at depth < m can lie on such a walk, so distances back to
    ``s`` are computed inside that region.
    """
    region = [x for x, d in depth.items() if d < m]
    preds: dict[State, list[State]] = {}
    for x in region:
        for y in space.successors(x):
            preds.setdefault(y, []).append(x)
    back = {s: 0}
    queue = deque([s])
    while queue:
        y = queue.popleft()
        for x in preds.get(y, ()):
            if x not in back:
                back[x] = back[y] + 1
                queue.append(x)
    walk = [s]
    x = s
    for i in range(m):
        need = m - i - 1
        for y in space.successors(x):
            if (y == s and need == 0) or (need > 0 and y != s and back.get(y) == need):
                walk.append(y)
                x = y
                break
        else:  # pragma: no cover - guarded by the minimality argument
            raise AssertionError("closed walk reconstruction failed")
    return walk[:-1]


def find_coset_cycle(g: CayleyGraph, max_len: int, budget: int | Budget | None = None) -> CosetCycle | None:
    """A shortest coset cycle of length at most ``max_len``, or None.

    The cycle is anchored at the identity and rotated so that its first link
    has the largest label set; remaining ties go to the smallest
    (mask, vertex) sequence.
    """
    if max_len < 2:
        raise BadParams("max_len must be at least 2")
    if not isinstance(budget, Budget):
        budget = Budget(budget, "coset cycle search")
    cache = g.cache.setdefault("cycles", {})
    if max_len in cache:
        return cache[max_len]
    # a cycle of length <= k is also the answer for any larger bound
    for bound, known in cache.items():
        if known is not None and len(known) <= max_len:
            return known
        if known is None and bound >= max_len:
            return None
    space = StateSpace.of(g)
    starts = []
    for alpha in sorted(range(1, g.full_mask + 1), key=mask_order_key):
        for beta in range(alpha):
            if beta & ~alpha == 0 and beta != alpha:
                starts.append(space.anchored(alpha, beta))
    best = None
    found: list[tuple[State, dict]] = []
    for s in starts:
        if best is None:
            limit = max_len
        elif s.alpha == found[0][0].alpha:
            limit = best
        else:
            # a later first label only wins with a strictly shorter cycle
            limit = best - 1
        if limit < 2:
            break
        m, depth = _closing_length(space, s, limit, budget)
        if m is None:
            continue
        if best is None or m < best:
            best = m
            found = []
        found.append((s, depth))
    result = None
    if best is not None:
        candidates = []
        for s, depth in found:
            walk = _least_walk(space, s, best, depth)
            key = (mask_order_key(walk[0].alpha), tuple((x.alpha, x.drep) for x in walk[1:]))
            candidates.append((key, walk))
        walk = min(candidates)[1]
        result = CosetCycle(tuple((x.drep, x.alpha) for x in walk))
    cache[max_len] = result
    return result


def is_n_acyclic(g: CayleyGraph, n: int, budget: int | None = None) -> bool:
    return find_coset_cycle(g, n, budget) is None


@dataclass(frozen=True)
class TwoAcyclicity:
    """Outcome of the intersection test [v]_a & [v]_b == [v]_(a&b).

    On failure ``witness`` is (v, alpha, beta, u) with u in both cosets of v
    but not in [v]_(alpha & beta); ((v, alpha), (u, beta)) is a coset 2-cycle.
    """

    ok: bool
    witness: tuple[int, int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok

    @property
    def cycle(self) -> CosetCycle | None:
        if self.witness is None:
            return None
        v, a, b, u = self.witness
        return CosetCycle(((v, a), (u, b)))


def is_2_acyclic(g: CayleyGraph) -> TwoAcyclicity:
    """Decide 2-acyclicity by the intersection criterion at the identity.

    Left translations are automorphisms, so checking v = 1 suffices.
    """
    verdict = g.cache.get("two_acyclic")
    if verdict is not None:
        return verdict
    verdict = TwoAcyclicity(True)
    masks = range(g.full_mask + 1)
    for alpha in sorted(masks, key=mask_order_key):
        a = coset_members(g, 0, alpha)
        for beta in masks:
            extra = a & coset_members(g, 0, beta) & ~coset_members(g, 0, alpha & beta)
            if extra:
                u = next(iter_members(extra))
                verdict = TwoAcyclicity(False, (0, alpha, beta, u))
                break
        if not verdict:
            break
    g.cache["two_acyclic"] = verdict
    return verdict


def girth(g: CayleyGraph) -> int | float:
    """Length of a shortest generator cycle; ``math.inf`` for a tree.

    Cayley graphs are vertex-transitive, so one BFS from the identity sees a
    shortest cycle.
    """
    dist = [-1] * g.order
    parent = [-1] * g.order
    parent_gen = [-1] * g.order
    dist[0] = 0
    queue = deque([0])
    best = math.inf
    while queue:
        x = queue.popleft()
        for i, r in enumerate(g.right):
            y = r[x]
            if dist[y] < 0:
                dist[y], parent[y], parent_gen[y] = dist[x] + 1, x, i
                queue.append(y)
            elif not (parent[x] == y and parent_gen[x] == i):
                best = min(best, dist[x] + dist[y] + 1)
    return best


def acyclicity_level(g: CayleyGraph, cap: int = 6, budget: int | None = None) -> int:
    """Largest n <= cap with g coset n-acyclic; 1 when g is not 2-acyclic."""
    if cap < 2:
        raise BadParams("cap must be at least 2")
    levels = g.cache.setdefault("levels", {})
    if cap not in levels:
        if not is_2_acyclic(g):
            levels[cap] = 1
        else:
            cycle = find_coset_cycle(g, cap, budget)
            levels[cap] = cap if cycle is None else len(cycle) - 1
    return levels[cap]


def generator_cycle(g: CayleyGraph) -> list[tuple[int, int]] | None:
    """A shortest generator cycle through the identity as (vertex, generator index) pairs."""
    n = girth(g)
    if n == math.inf:
        return None

    def dfs(path: list[int], used: list[int]):
        v = path[-1]
        for i, r in enumerate(g.right):
            if used and used[-1] == i:
                continue
            w = r[v]
            if len(used) + 1 == n:
                if w == 0:
                    return list(zip(path, used + [i]))
                continue
            if w in path:
                continue
            found = dfs(path + [w], used + [i])
            if found:
                return found
        return None

    return dfs([0], [])


def singleton_cycle(g: CayleyGraph, gen_cycle: list[tuple[int, int]]) -> CosetCycle:
    """Read a generator cycle as a sequence of links with singleton labels."""
    return CosetCycle(tuple((v, 1 << i) for v, i in gen_cycle))
