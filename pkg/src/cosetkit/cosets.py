"""Cosets [v]_alpha, their partitions, gen(v...) and dual hyperedges.

A coset is identified by ``(mask, rep)`` where ``rep`` is its minimum member.
Vertex sets are Python ints used as bitsets (bit v set iff v is a member).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NotTwoAcyclic
from .group import CayleyGraph, iter_bits, iter_members, popcount

BRUTE_FORCE_GEN_LIMIT = 12


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller index becomes the root so roots are class minima
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


@dataclass(frozen=True, order=True)
class Coset:
    mask: int
    rep: int

    def to_json(self, g: CayleyGraph) -> dict:
        return {"mask": g.gens.names(self.mask), "members": list(iter_members(members(g, self)))}

    def fmt(self, g: CayleyGraph) -> str:
        return f"[{g.vertex_label(self.rep) or '1'}]_{g.gens.fmt(self.mask)}"


class Partition:
    """The alpha-cosets of a Cayley graph for one generator mask."""

    __slots__ = ("mask", "label", "members")

    def __init__(self, mask: int, label: list[int], members: dict[int, int]):
        self.mask = mask
        self.label = label  # vertex -> class minimum
        self.members = members  # class minimum -> bitset

    def __len__(self) -> int:
        return len(self.members)


def partition(g: CayleyGraph, mask: int) -> Partition:
    cache = g.cache.setdefault("partitions", {})
    part = cache.get(mask)
    if part is None:
        uf = UnionFind(g.order)
        for i in iter_bits(mask):
            r = g.right[i]
            for v in range(g.order):
                uf.union(v, r[v])
        label = [uf.find(v) for v in range(g.order)]
        members: dict[int, int] = {}
        for v, c in enumerate(label):
            members[c] = members.get(c, 0) | (1 << v)
        part = Partition(mask, label, members)
        cache[mask] = part
    return part


def precompute_partitions(g: CayleyGraph) -> None:
    for mask in range(g.full_mask + 1):
        partition(g, mask)


def coset(g: CayleyGraph, v: int, mask: int) -> Coset:
    return Coset(mask, partition(g, mask).label[v])


def members(g: CayleyGraph, c: Coset) -> int:
    return partition(g, c.mask).members[c.rep]


def coset_members(g: CayleyGraph, v: int, mask: int) -> int:
    part = partition(g, mask)
    return part.members[part.label[v]]


def member_list(g: CayleyGraph, c: Coset) -> list[int]:
    return list(iter_members(members(g, c)))


def same_coset(g: CayleyGraph, v: int, u: int, mask: int) -> bool:
    label = partition(g, mask).label
    return label[v] == label[u]


def cosets_of(g: CayleyGraph, mask: int) -> list[Coset]:
    return [Coset(mask, rep) for rep in sorted(partition(g, mask).members)]


def all_cosets(g: CayleyGraph) -> list[Coset]:
    out = []
    for mask in range(g.full_mask + 1):
        out.extend(cosets_of(g, mask))
    return out


def classes_within(g: CayleyGraph, mask: int, outer: int) -> list[int]:
    """Minima of the ``mask``-cosets contained in the vertex set ``outer``.

    ``outer`` must be a union of ``mask``-cosets (e.g. a coset of a superset).
    """
    label = partition(g, mask).label
    seen = set()
    for v in iter_members(outer):
        seen.add(label[v])
    return sorted(seen)


def coset_subset(g: CayleyGraph, v: int, beta: int, alpha: int) -> bool:
    """Whether [v]_beta is contained in [v]_alpha."""
    return coset_members(g, v, beta) & ~coset_members(g, v, alpha) == 0


def connects(g: CayleyGraph, vertices: Sequence[int], mask: int) -> bool:
    label = partition(g, mask).label
    first = label[vertices[0]]
    return all(label[v] == first for v in vertices)


def connecting_masks(g: CayleyGraph, vertices: Sequence[int]) -> list[int]:
    return [m for m in range(g.full_mask + 1) if connects(g, vertices, m)]


def _ambiguity_witness(g: CayleyGraph, vertices: Sequence[int], masks: list[int]):
    minimal = [m for m in masks if not any(o != m and o & m == o for o in masks)]
    for a, b in combinations(minimal, 2):
        if not connects(g, vertices, a & b):
            v1 = vertices[0]
            for vj in vertices[1:]:
                if not same_coset(g, v1, vj, a & b):
                    return ((v1, a), (vj, b))
    return None


def gen_set(g: CayleyGraph, vertices: Sequence[int], verify: bool = True) -> int:
    """gen(v...): the unique inclusion-minimal mask whose coset holds all vertices.

    Greedy removal in ascending generator order.  With ``verify`` the result
    is cross-checked against the intersection of all connecting masks (for up
    to 12 generators) or against the 2-acyclicity test.
    """
    vertices = list(vertices)
    if not vertices:
        raise ValueError("gen_set needs at least one vertex")
    if len(set(vertices)) == 1:
        return 0
    mask = g.full_mask
    for i in range(g.gens.arity):
        trial = mask & ~(1 << i)
        if connects(g, vertices, trial):
            mask = trial
    if not verify:
        return mask
    if g.gens.arity <= BRUTE_FORCE_GEN_LIMIT:
        masks = connecting_masks(g, vertices)
        meet = g.full_mask
        for m in masks:
            meet &= m
        if meet != mask:
            witness = _ambiguity_witness(g, vertices, masks)
            raise NotTwoAcyclic(
                "no unique minimal connecting generator set: "
                + " and ".join(g.gens.fmt(m) for m in _minimal(masks)),
                witness=witness,
            )
    else:
        from .acyclicity import is_2_acyclic

        verdict = is_2_acyclic(g)
        if not verdict:
            raise NotTwoAcyclic(witness=verdict.cycle)
    return mask


def _minimal(masks: list[int]) -> list[int]:
    return [m for m in masks if not any(o != m and o & m == o for o in masks)]


def dual_hyperedge(g: CayleyGraph, v: int) -> list[Coset]:
    """<v>: the coset [v]_alpha for every mask alpha, indexed by mask."""
    return [coset(g, v, mask) for mask in range(g.full_mask + 1)]


def intersect_all(g: CayleyGraph, cosets: Iterable[Coset]) -> int:
    acc = g.all_vertices
    for c in cosets:
        acc &= members(g, c)
    return acc


def mask_order_key(mask: int) -> tuple[int, int]:
    """Coarse-first ordering: larger generator sets first, then by mask."""
    return (-popcount(mask), mask)
