"""The link-state graph shared by coset cycle and coset path searches.

A coset cycle or path ..., v_i, alpha_i, v_{i+1}, ... only constrains
consecutive positions through the cosets D_i = [v_i]_{alpha_{i-1} & alpha_i}:
D_{i+1} must lie in the link [v_i]_{alpha_i} and be disjoint from D_i.  The
choice of v_i inside D_i is otherwise free.  So walks in the graph whose
states are pairs (D, alpha) with mask(D) a subset of alpha correspond to
coset cycles (closed walks) and, after picking distinct representatives, to
coset paths.

Consecutive masks in such a walk are always incomparable: if alpha' is a
subset of alpha the next D' is a whole alpha'-coset and nothing after it can
be disjoint from it; if alpha' contains alpha then D' is the current link and
contains D.  Successors are pruned accordingly.
"""

from __future__ import annotations

import os
from typing import NamedTuple

from .cosets import classes_within, coset_members, partition
from .errors import BudgetExceeded
from .group import CayleyGraph

DEFAULT_BUDGET = 10_000_000


def budget_limit(limit: int | None = None) -> int:
    if limit is not None:
        return limit
    env = os.environ.get("COSETKIT_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_BUDGET


class Budget:
    """Counts expanded search nodes and fails loudly past the limit."""

    def __init__(self, limit: int | None = None, what: str = "search"):
        self.limit = budget_limit(limit)
        self.used = 0
        self.what = what

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"{self.what} exceeded the node budget of {self.limit}")


class State(NamedTuple):
    alpha: int  # label of this link
    dmask: int  # mask of D, a subset of alpha
    drep: int  # minimum member of D


class StateSpace:
    """Lazily expanded link-state graph of one Cayley graph."""

    def __init__(self, g: CayleyGraph):
        self.g = g
        self._succ: dict[State, list[State]] = {}
        self._within: dict[tuple[int, int, int], list[int]] = {}

    @classmethod
    def of(cls, g: CayleyGraph) -> "StateSpace":
        space = g.cache.get("state_space")
        if space is None:
            space = g.cache["state_space"] = cls(g)
        return space

    def d_members(self, s: State) -> int:
        return partition(self.g, s.dmask).members[s.drep]

    def link_rep(self, s: State) -> int:
        return partition(self.g, s.alpha).label[s.drep]

    def link_members(self, s: State) -> int:
        return coset_members(self.g, s.drep, s.alpha)

    def start(self, v: int, alpha: int) -> State:
        """Initial state of a path from ``v``: D_1 = {v}."""
        return State(alpha, 0, v)

    def anchored(self, alpha: int, beta: int, v: int = 0) -> State:
        return State(alpha, beta, partition(self.g, beta).label[v])

    def successors(self, s: State, budget: Budget | None = None) -> list[State]:
        out = self._succ.get(s)
        if out is not None:
            return out
        if budget is not None:
            budget.spend()
        g = self.g
        alpha = s.alpha
        link_rep = self.link_rep(s)
        link = partition(g, alpha).members[link_rep]
        d = self.d_members(s)
        out = []
        for nxt in range(1, g.full_mask + 1):
            if nxt & ~alpha == 0 or alpha & ~nxt == 0:
                continue
            beta = alpha & nxt
            key = (beta, alpha, link_rep)
            reps = self._within.get(key)
            if reps is None:
                reps = self._within[key] = classes_within(g, beta, link)
            members = partition(g, beta).members
            for rep in reps:
                if members[rep] & d == 0:
                    out.append(State(nxt, beta, rep))
        self._succ[s] = out
        return out

    def can_finish(self, s: State, u: int) -> bool:
        """Whether the walk may end here with v_{l+1} = u (alpha_{l+1} empty)."""
        bit = 1 << u
        return bool(self.link_members(s) & bit) and not (self.d_members(s) & bit)
