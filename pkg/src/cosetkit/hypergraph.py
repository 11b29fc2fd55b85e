"""Finite hypergraphs: Gaifman graph, (n-)conformality, (n-)chordality,
alpha-acyclicity by GYO reduction with a join tree, cut distances, shortest
chordless paths and convex m-closure.

Vertices may be any hashable names; internally they are indexed 0..N-1 and
vertex sets are int bitsets.  Edges are deduplicated and sorted, and empty
edges are dropped.  Vertices that lie in no edge take part in nothing: they
count as covered for conformality, which keeps the conformal-and-chordal
test in line with tree decomposability.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Sequence

import networkx as nx

from .errors import BadParams, MalformedSpec
from .group import iter_members, popcount
from .search import Budget

DEFAULT_CYCLE_BOUND = 12


def _bits(ids: Iterable[int]) -> int:
    out = 0
    for i in ids:
        out |= 1 << i
    return out


class Hypergraph:
    """A vertex set A with a family S of subsets of A."""

    def __init__(
        self,
        vertices: Sequence[Hashable],
        edges: Iterable[Iterable[Hashable]],
        colors: dict | None = None,
    ):
        self.vertices = list(vertices)
        self.index = {a: i for i, a in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise MalformedSpec("duplicate hypergraph vertex")
        canon = set()
        for e in edges:
            try:
                ids = tuple(sorted({self.index[a] for a in e}))
            except KeyError as exc:
                raise MalformedSpec(f"edge uses unknown vertex {exc.args[0]!r}") from None
            if ids:
                canon.add(ids)
        self.edges: list[tuple[int, ...]] = sorted(canon)
        self.edge_bits = [_bits(e) for e in self.edges]
        n = len(self.vertices)
        self.vertex_edges = [0] * n
        for j, e in enumerate(self.edges):
            for i in e:
                self.vertex_edges[i] |= 1 << j
        self.adj = [0] * n
        for eb in self.edge_bits:
            for i in iter_members(eb):
                self.adj[i] |= eb
        for i in range(n):
            self.adj[i] &= ~(1 << i)
        self.colors = colors

    @classmethod
    def _from_bits(cls, names, edge_bits, vertex_edges, colors=None) -> "Hypergraph":
        """Constructor from edges given as bitsets, kept in the given order.

        The caller guarantees that edges are distinct and non-empty.
        """
        h = cls.__new__(cls)
        h.vertices = list(names)
        h.index = {a: i for i, a in enumerate(h.vertices)}
        h.edge_bits = list(edge_bits)
        h.edges = [tuple(iter_members(b)) for b in h.edge_bits]
        h.vertex_edges = list(vertex_edges)
        n = len(h.vertices)
        h.adj = [0] * n
        for i in range(n):
            acc = 0
            for j in iter_members(h.vertex_edges[i]):
                acc |= h.edge_bits[j]
            h.adj[i] = acc & ~(1 << i)
        h.colors = colors
        return h

    def __repr__(self) -> str:
        return f"Hypergraph(|A|={len(self.vertices)}, |S|={len(self.edges)})"

    @property
    def all_bits(self) -> int:
        return (1 << len(self.vertices)) - 1

    def ids(self, names: Iterable[Hashable]) -> int:
        try:
            return _bits(self.index[a] for a in names)
        except KeyError as exc:
            raise BadParams(f"unknown vertex {exc.args[0]!r}") from None

    def names(self, bits: int) -> list:
        return [self.vertices[i] for i in iter_members(bits)]

    def edge_sets(self) -> list[frozenset]:
        return [frozenset(self.vertices[i] for i in e) for e in self.edges]

    def induced(self, names: Iterable[Hashable]) -> "Hypergraph":
        keep = set(names)
        sub = [a for a in self.vertices if a in keep]
        return Hypergraph(sub, ([a for a in e if a in keep] for e in self.edge_sets()))

    def width(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    @classmethod
    def from_json(cls, data: dict) -> "Hypergraph":
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise MalformedSpec("hypergraph JSON needs 'vertices' and 'edges'")
        verts = [_hashable(a) for a in data["vertices"]]
        edges = [[_hashable(a) for a in e] for e in data["edges"]]
        return cls(verts, edges, data.get("colors"))

    @classmethod
    def load(cls, path: str | Path) -> "Hypergraph":
        return cls.from_json(json.loads(Path(path).read_text()))

    def to_json(self) -> dict:
        out = {"vertices": list(self.vertices), "edges": [list(e) for e in self.edge_sets_sorted()]}
        if self.colors is not None:
            out["colors"] = self.colors
        return out

    def edge_sets_sorted(self) -> list[list]:
        return [[self.vertices[i] for i in e] for e in self.edges]


def _hashable(a):
    return tuple(a) if isinstance(a, list) else a


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# Gaifman graph, cliques, cycles


def gaifman(h: Hypergraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(h.vertices)
    for i, nb in enumerate(h.adj):
        for j in iter_members(nb >> (i + 1)):
            graph.add_edge(h.vertices[i], h.vertices[i + 1 + j])
    return graph


def _covered(h: Hypergraph, clique: int) -> bool:
    acc = -1
    for i in iter_members(clique):
        acc &= h.vertex_edges[i]
        if acc == 0:
            return False
    return True


def _shrink(h: Hypergraph, clique: int) -> int:
    """A minimal uncovered sub-clique of an uncovered clique."""
    for i in list(iter_members(clique)):
        trial = clique & ~(1 << i)
        if trial and not _covered(h, trial):
            clique = trial
    return clique


def maximal_cliques(h: Hypergraph, budget: Budget | None = None) -> Iterable[int]:
    """Bron-Kerbosch with pivoting over the bitset adjacency, restricted to
    vertices that lie in some edge."""
    adj = h.adj
    live = _bits(i for i in range(len(h.vertices)) if h.vertex_edges[i])

    def rec(r: int, p: int, x: int):
        if budget is not None:
            budget.spend()
        if p == 0 and x == 0:
            yield r
            return
        pivot = max(iter_members(p | x), key=lambda u: popcount(p & adj[u]))
        for v in list(iter_members(p & ~adj[pivot])):
            bit = 1 << v
            yield from rec(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    if live:
        yield from rec(0, live, 0)


def is_conformal(h: Hypergraph, n: int | None = None, budget: int | Budget | None = None) -> Verdict:
    """Every clique of the Gaifman graph (of size <= n) lies in some edge.

    The witness is a minimal uncovered clique.
    """
    b = budget if isinstance(budget, Budget) else Budget(budget, "clique enumeration")
    if n is None:
        for clique in maximal_cliques(h, b):
            if not _covered(h, clique):
                return Verdict(False, tuple(h.names(_shrink(h, clique))))
        return Verdict(True)
    if n < 1:
        raise BadParams("clique bound must be positive")
    adj, ve = h.adj, h.vertex_edges

    def rec(clique: int, cover: int, cand: int, size: int):
        for x in iter_members(cand):
            b.spend()
            c2 = cover & ve[x]
            k = clique | (1 << x)
            if c2 == 0:
                return k
            if size + 1 < n:
                found = rec(k, c2, cand & adj[x] & ~((2 << x) - 1), size + 1)
                if found:
                    return found
        return None

    for x in range(len(h.vertices)):
        if ve[x] and n >= 2:
            found = rec(1 << x, ve[x], h.adj[x] & ~((2 << x) - 1), 1)
            if found:
                return Verdict(False, tuple(h.names(_shrink(h, found))))
    return Verdict(True)


def chordless_cycles_of_length(h: Hypergraph, k: int, budget: Budget | None = None) -> Iterable[tuple[int, ...]]:
    """Induced cycles with exactly k >= 4 vertices, each reported once.

    The cycle starts at its least vertex and the second vertex is smaller
    than the last one.
    """
    adj = h.adj
    n = len(h.vertices)

    def rec(path: list[int], on: int, banned: int, s: int):
        if budget is not None:
            budget.spend()
        last = path[-1]
        i = len(path)
        if i == k - 1:
            # closing vertex: adjacent to s and last, to nothing else on the path
            inner = 0
            for p in path[1:-1]:
                inner |= adj[p]
            cand = adj[last] & adj[s] & ~on & ~inner & ~((2 << path[1]) - 1)
            for x in iter_members(cand):
                yield tuple(path) + (x,)
            return
        cand = adj[last] & ~banned & ~on & ~((2 << s) - 1)
        for x in iter_members(cand):
            yield from rec(path + [x], on | (1 << x), banned | adj[last], s)

    for s in range(n):
        above = ~((2 << s) - 1)
        for p1 in iter_members(adj[s] & above):
            yield from rec([s, p1], (1 << s) | (1 << p1), adj[s], s)


def is_chordal(h: Hypergraph, n: int | None = None, budget: int | Budget | None = None) -> Verdict:
    """Every Gaifman cycle of length 4..n (all lengths when n is None) has a chord.

    The witness is a shortest chordless cycle.
    """
    b = budget if isinstance(budget, Budget) else Budget(budget, "chordless cycle search")
    if n is None:
        if nx.is_chordal(gaifman(h)):
            return Verdict(True)
        n = len(h.vertices)
    for k in range(4, n + 1):
        for cyc in chordless_cycles_of_length(h, k, b):
            return Verdict(False, tuple(h.vertices[i] for i in cyc))
    return Verdict(True)


def is_n_acyclic(h: Hypergraph, n: int, budget: int | Budget | None = None) -> Verdict:
    """n-conformal and n-chordal; only defined for n >= 3."""
    if n < 3:
        raise BadParams("hypergraph n-acyclicity is defined for n >= 3 only")
    conf = is_conformal(h, n, budget)
    if not conf:
        return Verdict(False, ("clique", conf.witness))
    chord = is_chordal(h, n, budget)
    if not chord:
        return Verdict(False, ("cycle", chord.witness))
    return Verdict(True)


def acyclicity_level(h: Hypergraph, cap: int = 6, budget: int | Budget | None = None) -> int:
    """Largest n in 3..cap with h n-acyclic; 2 when h is not even 3-acyclic."""
    if cap < 3:
        raise BadParams("cap must be at least 3")
    b = budget if isinstance(budget, Budget) else Budget(budget, "hypergraph acyclicity")
    for n in range(3, cap + 1):
        if not is_n_acyclic(h, n, b):
            return n - 1
    return cap


# ---------------------------------------------------------------------------
# GYO reduction and tree decompositions


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree on edge indices of a hypergraph; node i carries bag edges[i]."""

    bags: tuple[tuple, ...]
    tree_edges: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "nodes": {str(i): list(b) for i, b in enumerate(self.bags)},
            "edges": [list(e) for e in self.tree_edges],
        }

    def validate(self, h: Hypergraph) -> bool:
        """Tree shape, image equals S and connected occurrence sets."""
        if sorted(frozenset(b) for b in self.bags) != sorted(h.edge_sets()):
            return False
        tree = nx.Graph()
        tree.add_nodes_from(range(len(self.bags)))
        tree.add_edges_from(self.tree_edges)
        if len(self.bags) and not nx.is_tree(tree):
            return False
        for a in h.vertices:
            nodes = [i for i, b in enumerate(self.bags) if a in b]
            if nodes and not nx.is_connected(tree.subgraph(nodes)):
                return False
        return True


def gyo_reduction(h: Hypergraph) -> tuple[bool, list[tuple[int, int]]]:
    """GYO ear removal.  Returns (reduced to a single edge, parent links)."""
    work = list(h.edge_bits)
    alive = list(range(len(work)))
    links: list[tuple[int, int]] = []
    changed = True
    while changed and len(alive) > 1:
        changed = False
        # vertices in exactly one live edge
        count: dict[int, int] = {}
        for j in alive:
            for i in iter_members(work[j]):
                count[i] = count.get(i, 0) + 1
        lonely = _bits(i for i, c in count.items() if c == 1)
        if lonely:
            for j in alive:
                if work[j] & lonely:
                    work[j] &= ~lonely
                    changed = True
        # an edge inside another one
        for j in alive:
            host = next((k for k in alive if k != j and work[j] & ~work[k] == 0), None)
            if host is not None:
                links.append((j, host))
                alive.remove(j)
                changed = True
                break
    return len(alive) <= 1, links


def is_alpha_acyclic(h: Hypergraph) -> bool:
    return gyo_reduction(h)[0]


def tree_decomposition(h: Hypergraph) -> TreeDecomposition | None:
    ok, links = gyo_reduction(h)
    if not ok:
        return None
    bags = tuple(tuple(h.vertices[i] for i in e) for e in h.edges)
    td = TreeDecomposition(bags, tuple(sorted(tuple(sorted(e)) for e in links)))
    if not td.validate(h):  # pragma: no cover - a failure here is a bug
        raise AssertionError("GYO join tree failed validation")
    return td


def is_acyclic(h: Hypergraph) -> bool:
    """Conformal and chordal, decided independently of GYO."""
    return bool(is_conformal(h)) and bool(is_chordal(h))


# ---------------------------------------------------------------------------
# distances, chordless paths, closure


def _bfs(h: Hypergraph, sources: int, allowed: int) -> dict[int, int]:
    dist = {i: 0 for i in iter_members(sources)}
    frontier = sources
    seen = sources
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for i in iter_members(frontier):
            nxt |= h.adj[i]
        nxt &= allowed & ~seen
        for i in iter_members(nxt):
            dist[i] = d
        seen |= nxt
        frontier = nxt
    return dist


def cut_distance_bits(h: Hypergraph, x: int, y: int, t: int) -> int | float:
    allowed = h.all_bits & ~t
    xs, ys = x & allowed, y & allowed
    if not xs or not ys:
        return math.inf
    if xs & ys:
        return 0
    dist = _bfs(h, xs, allowed)
    best = min((dist[i] for i in iter_members(ys) if i in dist), default=math.inf)
    return best


def cut_distance(h: Hypergraph, x: Iterable, y: Iterable, t: Iterable = ()) -> int | float:
    """Gaifman distance between X minus t and Y minus t inside A minus t."""
    return cut_distance_bits(h, h.ids(x), h.ids(y), h.ids(t))


@dataclass(frozen=True)
class ChordlessPath:
    vertices: tuple

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def is_chordless_bits(h: Hypergraph, path: Sequence[int]) -> bool:
    for i, a in enumerate(path):
        for j in range(i + 1, len(path)):
            adjacent = bool(h.adj[a] >> path[j] & 1)
            if j == i + 1 and not adjacent:
                return False
            if j > i + 1 and adjacent:
                return False
    return len(set(path)) == len(path)


def shortest_path_bits(h: Hypergraph, a: int, b: int, t: int, max_len: int | None = None) -> list[int] | None:
    """Lexicographically first shortest path from a to b avoiding t."""
    allowed = h.all_bits & ~t
    if not (allowed >> a & 1 and allowed >> b & 1):
        return None
    back = _bfs(h, 1 << b, allowed)
    if a not in back or (max_len is not None and back[a] > max_len):
        return None
    path = [a]
    while path[-1] != b:
        here = path[-1]
        step = next(i for i in iter_members(h.adj[here] & allowed) if back.get(i) == back[here] - 1)
        path.append(step)
    return path


def chordless_path_search(
    h: Hypergraph, start: Hashable, end: Hashable, t: Iterable = (), max_len: int | None = None
) -> ChordlessPath | None:
    """A shortest path avoiding t; shortest paths are always chordless."""
    tb = h.ids(t)
    a, b = h.index[start], h.index[end]
    if (tb >> a & 1) or (tb >> b & 1):
        raise BadParams("path endpoints must lie outside t")
    path = shortest_path_bits(h, a, b, tb, max_len)
    if path is None:
        return None
    if not is_chordless_bits(h, path):  # pragma: no cover - shortest paths are induced
        raise AssertionError("shortest path has a chord")
    return ChordlessPath(tuple(h.vertices[i] for i in path))


def induced_paths_from(
    h: Hypergraph,
    a: int,
    max_len: int,
    budget: Budget | None = None,
    reach: list[int] | None = None,
) -> Iterable[list[int]]:
    """All chordless paths starting at a with 1..max_len edges.

    ``reach`` optionally gives, per vertex, a lower bound on the edges still
    needed to end somewhere useful; prefixes that cannot make it are cut.
    """
    adj = h.adj

    def rec(path: list[int], on: int, banned: int):
        if budget is not None:
            budget.spend()
        yield path
        left = max_len - len(path) + 1
        if left <= 0:
            return
        last = path[-1]
        for x in iter_members(adj[last] & ~banned & ~on):
            if reach is None or reach[x] < left:
                yield from rec(path + [x], on | (1 << x), banned | adj[last])

    for x in iter_members(adj[a]):
        if reach is None or reach[x] < max_len:
            yield from rec([a, x], (1 << a) | (1 << x), adj[a])


def _hops_to(h: Hypergraph, target: int) -> list[int]:
    """Gaifman distance from every vertex to the set ``target``."""
    far = len(h.vertices) + 1
    dist = [far] * len(h.vertices)
    frontier = list(iter_members(target))
    for x in frontier:
        dist[x] = 0
    d = 0
    while frontier:
        d += 1
        nxt = []
        for x in frontier:
            for y in iter_members(h.adj[x]):
                if dist[y] == far:
                    dist[y] = d
                    nxt.append(y)
        frontier = nxt
    return dist


def _closure_round(h: Hypergraph, q: int, m: int, budget: Budget, starts: int | None = None) -> int:
    """Interior vertices of chordless paths of length <= m that start in
    ``starts`` (default q) and end in q, minus q itself."""
    add = 0
    reach = _hops_to(h, q)
    for a in iter_members(q if starts is None else starts):
        for path in induced_paths_from(h, a, m, budget, reach):
            if len(path) >= 3 and q >> path[-1] & 1:
                for i in path[1:-1]:
                    add |= 1 << i
    return add & ~q


def convex_closure_bits(h: Hypergraph, p: int, m: int, budget: int | Budget | None = None) -> int:
    """Least fixpoint.  Paths are undirected, so after the first round only
    paths with an end point among the newly added vertices can contribute."""
    if m < 1:
        raise BadParams("m must be at least 1")
    b = budget if isinstance(budget, Budget) else Budget(budget, "convex closure")
    q = p
    fresh = p
    while fresh:
        add = _closure_round(h, q, m, b, fresh)
        q |= add
        fresh = add
    return q


def convex_closure(h: Hypergraph, p: Iterable, m: int, budget: int | Budget | None = None) -> set:
    """cl_m(P): least superset of P containing every chordless path of
    length <= m between two of its members."""
    return set(h.names(convex_closure_bits(h, h.ids(p), m, budget)))


def is_m_closed(h: Hypergraph, q: Iterable, m: int) -> bool:
    qb = h.ids(q)
    return _closure_round(h, qb, m, Budget(None, "closure check")) == 0
