"""Finite groups generated by involutions and their Cayley graphs.

Elements are dense integers numbered in breadth-first discovery order from
the identity (element 0), scanning generators in label order.  The same
order fixes a canonical word for every element.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import MalformedSpec, NonInvolution, SizeCapExceeded, UnknownLabel

DEFAULT_SIZE_CAP = 100_000
MAX_GENERATORS = 16
TABLE_LIMIT = 4096
FULL_ASSOCIATIVITY_LIMIT = 256
ASSOCIATIVITY_SAMPLES = 10_000


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int) -> Iterable[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def iter_members(vertex_set: int) -> Iterable[int]:
    """Indices of the set bits of a vertex bitset, ascending."""
    while vertex_set:
        low = vertex_set & -vertex_set
        yield low.bit_length() - 1
        vertex_set ^= low


@dataclass(frozen=True)
class GeneratorSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise MalformedSpec(f"duplicate generator labels in {self.labels}")
        if len(self.labels) > MAX_GENERATORS:
            raise MalformedSpec(f"at most {MAX_GENERATORS} generators are supported")

    @property
    def arity(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def names(self, mask: int) -> list[str]:
        return [self.labels[i] for i in iter_bits(mask)]

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"


def _perm_cycles(perm: Sequence[int]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = perm[x]
        parts.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
    return "".join(parts) or "(1)"


class Group:
    """A finite group with a named set of involutive generators.

    Build instances with :func:`build_group`; the constructor assumes
    validated, BFS-ordered data.
    """

    def __init__(
        self,
        name: str,
        gens: GeneratorSet,
        right: list[list[int]],
        parent: list[int],
        parent_gen: list[int],
        perms: list[tuple[int, ...]] | None = None,
        table: np.ndarray | None = None,
    ):
        self.name = name
        self.gens = gens
        self.order = len(parent)
        self.identity = 0
        # right[i][v] = v o e_i
        self.right = right
        self.gen_elements = tuple(r[0] for r in right)
        self._parent = parent
        self._parent_gen = parent_gen
        self._perms = perms
        self._perm_index = {p: i for i, p in enumerate(perms)} if perms is not None else None
        self._table = table
        self._inverse: list[int] | None = None
        self._words: list[tuple[str, ...]] | None = None

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order}, gens={list(self.gens.labels)})"

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def table(self) -> np.ndarray | None:
        if self._table is None and self.order <= TABLE_LIMIT:
            self._table = _table_from_right(self.right, self._parent, self._parent_gen)
        return self._table

    def mul(self, a: int, b: int) -> int:
        table = self.table
        if table is not None:
            return int(table[a, b])
        pa, pb = self._perms[a], self._perms[b]
        return self._perm_index[tuple(pa[x] for x in pb)]

    def inv(self, a: int) -> int:
        if self._inverse is None:
            inverse = [0] * self.order
            # canonical word reversed: (p o e)^-1 = e o p^-1
            for v in range(1, self.order):
                p = self._parent[v]
                inverse[v] = self.left_gen(self._parent_gen[v], inverse[p])
            self._inverse = inverse
        return self._inverse[a]

    def left_gen(self, gen: int, v: int) -> int:
        """e o v for the generator with index ``gen``."""
        return self.mul(self.gen_elements[gen], v)

    def word(self, v: int) -> tuple[str, ...]:
        """Canonical (BFS-tree) word evaluating to ``v``."""
        if self._words is None:
            words: list[tuple[str, ...]] = [()] * self.order
            for u in range(1, self.order):
                words[u] = words[self._parent[u]] + (self.gens.labels[self._parent_gen[u]],)
            self._words = words
        return self._words[v]

    def word_str(self, v: int) -> str:
        labels = self.word(v)
        if all(len(lab) == 1 for lab in self.gens.labels):
            return "".join(labels)
        return " ".join(labels)

    def element_repr(self, v: int) -> str:
        if self._perms is not None:
            return _perm_cycles(self._perms[v])
        return str(v)

    def parse_word(self, text: str) -> tuple[str, ...]:
        """Tokenise a word given on the command line or in a report.

        Whitespace, ``,`` or ``.`` separate labels when present; otherwise the
        text is split greedily into the longest matching labels.
        """
        text = text.strip()
        if text in self.gens.labels:
            return (text,)
        if text in ("", "1", "()", "(1)"):
            return ()
        if any(sep in text for sep in " ,."):
            tokens = [t for t in text.replace(",", " ").replace(".", " ").split() if t]
            for t in tokens:
                self.gens.index(t)
            return tuple(tokens)
        labels = sorted(self.gens.labels, key=len, reverse=True)
        out = []
        pos = 0
        while pos < len(text):
            for label in labels:
                if text.startswith(label, pos):
                    out.append(label)
                    pos += len(label)
                    break
            else:
                raise UnknownLabel(text[pos:])
        return tuple(out)

    def eval_word(self, word: Sequence[str] | str) -> int:
        """e_1 o ... o e_n; the empty word is the identity."""
        if isinstance(word, str):
            word = self.parse_word(word)
        v = self.identity
        for label in word:
            v = self.right[self.gens.index(label)][v]
        return v

    def check_associative(self, seed: int = 0) -> bool:
        table = self.table
        if table is None:
            return True  # permutation composition
        n = self.order
        if n <= FULL_ASSOCIATIVITY_LIMIT:
            lhs = table[table, :]  # lhs[a, b, c] = (ab)c
            rhs = table[:, table]  # rhs[a, b, c] = a(bc)
            return bool(np.array_equal(lhs, rhs))
        rng = random.Random(seed)
        for _ in range(ASSOCIATIVITY_SAMPLES):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if table[table[a, b], c] != table[a, table[b, c]]:
                return False
        return True


def _table_from_right(right, parent, parent_gen) -> np.ndarray:
    n = len(parent)
    right_arr = [np.asarray(r, dtype=np.int32) for r in right]
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n, dtype=np.int32)
    # b = p o e  =>  a o b = (a o p) o e, filled column by column in BFS order
    for b in range(1, n):
        table[:, b] = right_arr[parent_gen[b]][table[:, parent[b]]]
    return table


@dataclass
class GroupSpec:
    """Input description of a group: permutation generators or a table."""

    name: str
    generators: list[dict]
    degree: int | None = None
    table: list[list[int]] | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "GroupSpec":
        if not isinstance(data, dict):
            raise MalformedSpec("group spec must be a JSON object")
        gens = data.get("generators")
        if not isinstance(gens, list) or not gens:
            raise MalformedSpec("group spec needs a non-empty 'generators' list")
        for g in gens:
            if not isinstance(g, dict) or "label" not in g:
                raise MalformedSpec("every generator needs a 'label'")
        if "table" in data:
            return cls(name=str(data.get("name", "group")), generators=gens, table=data["table"])
        if "degree" in data:
            return cls(name=str(data.get("name", "group")), generators=gens, degree=data["degree"])
        raise MalformedSpec("group spec needs either 'degree' (permutations) or 'table'")

    def to_dict(self) -> dict:
        out: dict = {"name": self.name}
        if self.table is not None:
            out["table"] = self.table
        else:
            out["degree"] = self.degree
        out["generators"] = self.generators
        return out


def load_spec(path: str | Path) -> GroupSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedSpec(f"{path}: invalid JSON ({exc})") from None
    return GroupSpec.from_dict(data)


def build_group(
    spec: GroupSpec | dict,
    size_cap: int = DEFAULT_SIZE_CAP,
    distinct_generators: bool = True,
) -> Group:
    """Close the generators under multiplication and index the elements.

    ``distinct_generators=False`` admits labels that denote the same element;
    this only makes sense for covering targets.
    """
    if isinstance(spec, dict):
        spec = GroupSpec.from_dict(spec)
    labels = tuple(str(g["label"]) for g in spec.generators)
    gens = GeneratorSet(labels)
    if spec.table is not None:
        group = _build_from_table(spec, gens, size_cap)
    else:
        group = _build_from_perms(spec, gens, size_cap)
    if distinct_generators and len(set(group.gen_elements)) != len(labels):
        raise MalformedSpec("generator labels must denote pairwise distinct elements")
    if not group.check_associative():
        raise MalformedSpec("multiplication is not associative")
    return group


def _build_from_perms(spec: GroupSpec, gens: GeneratorSet, size_cap: int) -> Group:
    degree = spec.degree
    if not isinstance(degree, int) or degree < 1:
        raise MalformedSpec("'degree' must be a positive integer")
    ident = tuple(range(degree))
    gen_perms = []
    for g in spec.generators:
        perm = g.get("perm")
        if not isinstance(perm, list) or sorted(perm) != list(range(degree)):
            raise MalformedSpec(f"generator {g['label']!r}: 'perm' must be a permutation of 0..{degree - 1}")
        perm = tuple(perm)
        if perm == ident or tuple(perm[x] for x in perm) != ident:
            raise NonInvolution(str(g["label"]))
        gen_perms.append(perm)

    perms = [ident]
    index = {ident: 0}
    parent = [0]
    parent_gen = [-1]
    right: list[list[int]] = [[] for _ in gen_perms]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        pv = perms[v]
        for i, pe in enumerate(gen_perms):
            w_perm = tuple(pv[x] for x in pe)  # v o e: apply e first
            w = index.get(w_perm)
            if w is None:
                w = len(perms)
                if w >= size_cap:
                    raise SizeCapExceeded(f"closure exceeds {size_cap} elements")
                perms.append(w_perm)
                index[w_perm] = w
                parent.append(v)
                parent_gen.append(i)
                queue.append(w)
            right[i].append(w)
    return Group(spec.name, gens, right, parent, parent_gen, perms=perms)


def _build_from_table(spec: GroupSpec, gens: GeneratorSet, size_cap: int) -> Group:
    try:
        table = np.asarray(spec.table, dtype=np.int64)
    except (TypeError, ValueError):
        raise MalformedSpec("'table' must be a square integer matrix") from None
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise MalformedSpec("'table' must be a square integer matrix")
    n = table.shape[0]
    if n > size_cap:
        raise SizeCapExceeded(f"table has {n} elements, cap is {size_cap}")
    if table.min() < 0 or table.max() >= n:
        raise MalformedSpec("table entries out of range")
    if not (np.array_equal(table[0], np.arange(n)) and np.array_equal(table[:, 0], np.arange(n))):
        raise MalformedSpec("element 0 must be the two-sided identity")
    gen_elems = []
    for g in spec.generators:
        e = g.get("element")
        if not isinstance(e, int) or not 0 <= e < n:
            raise MalformedSpec(f"generator {g['label']!r}: 'element' must be an index into the table")
        if e == 0 or table[e, e] != 0:
            raise NonInvolution(str(g["label"]))
        gen_elems.append(e)

    # BFS closure with the table, then renumber in discovery order
    new_index = {0: 0}
    order = [0]
    parent = [0]
    parent_gen = [-1]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i, e in enumerate(gen_elems):
            w = int(table[v, e])
            if w not in new_index:
                new_index[w] = len(order)
                order.append(w)
                parent.append(new_index[v])
                parent_gen.append(i)
                queue.append(w)
    if len(order) != n:
        raise MalformedSpec(f"generators reach {len(order)} of {n} table elements")
    old = np.asarray(order)
    relabel = np.empty(n, dtype=np.int64)
    relabel[old] = np.arange(n)
    new_table = relabel[table[np.ix_(old, old)]].astype(np.int32)
    right = [[int(new_table[v, new_index[e]]) for v in range(n)] for e in gen_elems]
    return Group(spec.name, gens, right, parent, parent_gen, table=new_table)


class CayleyGraph:
    """Cayley graph of a group: one perfect matching R_e per generator.

    Immutable apart from internal memo caches (coset partitions, acyclicity
    levels, search state graphs) that other modules fill on demand.
    """

    def __init__(self, group: Group):
        self.group = group
        self.gens = group.gens
        self.order = group.order
        self.right = group.right
        self.full_mask = group.gens.full
        self.all_vertices = (1 << group.order) - 1
        self.cache: dict = {}

    def __repr__(self) -> str:
        return f"CayleyGraph({self.group.name!r}, |G|={self.order}, |E|={self.gens.arity})"

    @classmethod
    def from_spec(cls, spec: GroupSpec | dict, **kwargs) -> "CayleyGraph":
        return cls(build_group(spec, **kwargs))

    @property
    def name(self) -> str:
        return self.group.name

    def edges(self, gen: int) -> list[tuple[int, int]]:
        """R_e as sorted vertex pairs."""
        r = self.right[gen]
        return [(v, r[v]) for v in range(self.order) if v < r[v]]

    def neighbours(self, v: int) -> list[int]:
        return [r[v] for r in self.right]

    def neighbourhood(self, v: int, radius: int) -> set[int]:
        """Vertices at graph distance at most ``radius`` from ``v``."""
        seen = {v}
        frontier = [v]
        for _ in range(radius):
            nxt = []
            for x in frontier:
                for r in self.right:
                    y = r[x]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if not nxt:
                break
            frontier = nxt
        return seen

    def translate(self, w: int, v: int) -> int:
        """Left multiplication w o v, a label-preserving automorphism."""
        return self.group.mul(w, v)

    def vertex_label(self, v: int) -> str:
        return self.group.word_str(v)

    def vertex(self, word: Sequence[str] | str) -> int:
        return self.group.eval_word(word)


def cayley_graph(spec: GroupSpec | dict | Group, **kwargs) -> CayleyGraph:
    if isinstance(spec, Group):
        return CayleyGraph(spec)
    return CayleyGraph.from_spec(spec, **kwargs)


def eval_word(group: Group | CayleyGraph, word: Sequence[str] | str) -> int:
    if isinstance(group, CayleyGraph):
        group = group.group
    return group.eval_word(word)


def neighbourhood(g: CayleyGraph, v: int, radius: int) -> set[int]:
    return g.neighbourhood(v, radius)
