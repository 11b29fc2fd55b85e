"""Slow, obviously-correct reference computations used as test oracles.

Nothing here imports the search or closure code of the package.  Groups
are read only through ``g.right`` (the multiplication-by-generator
tables) and ``g.order``, so every oracle starts from the raw Cayley graph.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from functools import lru_cache

import networkx as nx


def perm_closure_order(perms: list[tuple[int, ...]]) -> int:
    """Size of the group generated by the given permutations."""
    ident = tuple(range(len(perms[0])))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for q in perms:
            r = tuple(p[x] for x in q)
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return len(seen)


def simple_graph(g) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.order))
    for r in g.right:
        out.add_edges_from((v, r[v]) for v in range(g.order))
    return out


class Cosets:
    """Coset membership computed from connected components in networkx."""

    def __init__(self, g):
        self.g = g
        self.masks = range(g.full_mask + 1)
        self.nonempty = range(1, g.full_mask + 1)
        self._comp = {}
        for mask in self.masks:
            h = nx.Graph()
            h.add_nodes_from(range(g.order))
            for i, r in enumerate(g.right):
                if mask >> i & 1:
                    h.add_edges_from((v, r[v]) for v in range(g.order))
            table = {}
            for comp in nx.connected_components(h):
                fs = frozenset(comp)
                for v in comp:
                    table[v] = fs
            self._comp[mask] = table

    def of(self, v: int, mask: int) -> frozenset:
        return self._comp[mask][v]

    def all(self) -> set:
        return {(mask, self.of(v, mask)) for mask in self.masks for v in range(self.g.order)}

    def gen(self, vertices) -> int:
        """Least mask whose coset holds all vertices: the meet of every connecting mask."""
        vs = list(vertices)
        meet = self.g.full_mask
        for mask in self.masks:
            if all(self.of(x, mask) == self.of(vs[0], mask) for x in vs):
                meet &= mask
        return meet

    # -- coset cycles ------------------------------------------------------

    def is_cycle(self, vs, labels) -> bool:
        m = len(vs)
        for i in range(m):
            if vs[(i + 1) % m] not in self.of(vs[i], labels[i]):
                return False
        for i in range(m):
            left = self.of(vs[i], labels[i - 1] & labels[i])
            right = self.of(vs[(i + 1) % m], labels[i] & labels[(i + 1) % m])
            if left & right:
                return False
        return True

    def cycle_of_length(self, m: int):
        """Some coset cycle of length m through the identity, or None."""
        for rest in itertools.product(range(self.g.order), repeat=m - 1):
            vs = (0,) + rest
            for labels in itertools.product(self.nonempty, repeat=m):
                if self.is_cycle(vs, labels):
                    return vs, labels
        return None

    def level(self, cap: int) -> int:
        for m in range(2, cap + 1):
            if self.cycle_of_length(m) is not None:
                return m - 1
        return cap

    # -- coset paths -------------------------------------------------------

    def is_path(self, vs, labels) -> bool:
        if len(set(vs)) != len(vs):
            return False
        ext = (0,) + tuple(labels) + (0,)
        for i in range(len(labels)):
            if vs[i + 1] not in self.of(vs[i], labels[i]):
                return False
        for i in range(len(labels)):
            left = self.of(vs[i], ext[i] & ext[i + 1])
            right = self.of(vs[i + 1], ext[i + 1] & ext[i + 2])
            if left & right:
                return False
        return True

    def paths(self, v: int, u: int, max_len: int):
        """Every coset path from v to u of length at most max_len."""
        out = []

        def rec(vs, labels):
            last = vs[-1]
            if len(labels) == max_len:
                return
            for a in self.nonempty:
                comp = self.of(last, a)
                for w in sorted(comp):
                    if w in vs:
                        continue
                    nv, nl = vs + (w,), labels + (a,)
                    if w == u:
                        if self.is_path(nv, nl):
                            out.append((nv, nl))
                    else:
                        rec(nv, nl)

        rec((v,), ())
        return out

    def non_trivial(self, vs, labels) -> bool:
        if len(labels) < 2:
            return False
        alpha = self.gen((vs[0], vs[-1]))
        big = self.of(vs[0], alpha)
        return all(not big <= self.of(vs[i], labels[i]) for i in range(len(labels)))

    def inner(self, vs, labels) -> bool:
        alpha = self.gen((vs[0], vs[-1]))
        big = self.of(vs[0], alpha)
        return all(self.of(vs[i], labels[i]) < big for i in range(len(labels)))

    def non_t(self, vs, labels, gamma: int, anchor: int) -> bool:
        small = self.of(anchor, gamma)
        return all(not small <= self.of(vs[i], labels[i]) for i in range(len(labels)))

    # -- dual hypergraph ---------------------------------------------------

    def dual(self):
        """d(G) as (vertex list, {element: hyperedge}) over (mask, member set) pairs."""
        verts = sorted(self.all(), key=lambda c: (c[0], sorted(c[1])))
        edges = {w: frozenset((mask, self.of(w, mask)) for mask in self.masks) for w in range(self.g.order)}
        return verts, edges

    def dual_gaifman(self) -> nx.Graph:
        verts, edges = self.dual()
        out = nx.Graph()
        out.add_nodes_from(verts)
        for e in edges.values():
            out.add_edges_from(itertools.combinations(e, 2))
        return out

    def rho(self, v: int, gamma: int) -> set:
        return {(beta, self.of(v, beta)) for beta in self.masks if gamma & ~beta == 0}

    def dual_t_distance(self, v: int, u: int, gamma: int) -> float:
        _, edges = self.dual()
        t = self.rho(v, gamma)
        graph = self.dual_gaifman()
        graph.remove_nodes_from(t)
        xs, ys = edges[v] - t, edges[u] - t
        if xs & ys:
            return 0
        best = math.inf
        for x in xs:
            lengths = nx.single_source_shortest_path_length(graph, x)
            for y in ys:
                best = min(best, lengths.get(y, math.inf))
        return best


@lru_cache(maxsize=None)
def _chordless_cycles_exist(n: int, edges: frozenset, k: int) -> bool:
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(edges)
    for sub in itertools.combinations(range(n), k):
        h = graph.subgraph(sub)
        if h.number_of_edges() == k and all(d == 2 for _, d in h.degree()) and nx.is_connected(h):
            return True
    return False


def hyper_gaifman(vertices, edges) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    for e in edges:
        graph.add_edges_from(itertools.combinations(sorted(set(e)), 2))
    return graph


def hyper_conformal(vertices, edges, n: int | None = None) -> bool:
    graph = hyper_gaifman(vertices, edges)
    sets = [set(e) for e in edges]
    for clique in nx.find_cliques(graph):
        sizes = range(1, len(clique) + 1) if n is not None else [len(clique)]
        for k in sizes:
            if n is not None and k > n:
                break
            for sub in itertools.combinations(clique, k):
                if len(sub) > 1 and not any(set(sub) <= s for s in sets):
                    return False
    return True


def hyper_chordal(vertices, edges, n: int | None = None) -> bool:
    graph = hyper_gaifman(vertices, edges)
    if n is None:
        return nx.is_chordal(graph)
    index = {a: i for i, a in enumerate(vertices)}
    simple = frozenset((min(index[a], index[b]), max(index[a], index[b])) for a, b in graph.edges)
    return not any(_chordless_cycles_exist(len(vertices), simple, k) for k in range(4, n + 1))


def hyper_closure(vertices, edges, p, m: int) -> set:
    """Least superset of p closed under interiors of chordless paths of length <= m."""
    graph = hyper_gaifman(vertices, edges)
    q = set(p)
    while True:
        add = set()
        for a, b in itertools.combinations(sorted(q, key=repr), 2):
            for path in nx.all_simple_paths(graph, a, b, cutoff=m):
                if graph.subgraph(path).number_of_edges() == len(path) - 1:
                    add.update(path[1:-1])
        if add <= q:
            return q
        q |= add


def valid_join_tree(vertices, edges, bags, tree_edges) -> bool:
    """Tree over the bags, bags equal to the edge family, connected occurrences."""
    if sorted(map(frozenset, bags), key=sorted) != sorted({frozenset(e) for e in edges if e}, key=sorted):
        return False
    tree = nx.Graph()
    tree.add_nodes_from(range(len(bags)))
    tree.add_edges_from(tree_edges)
    if bags and not nx.is_tree(tree):
        return False
    for a in vertices:
        nodes = [i for i, b in enumerate(bags) if a in b]
        if nodes and not nx.is_connected(tree.subgraph(nodes)):
            return False
    return True
