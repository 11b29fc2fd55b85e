"""Compatibility of two groups over one generator alphabet, the induced
quotient map and the covering (local isomorphism) check.

Groups are compared through a label map from the source labels to the
target labels; without one the two label sets must coincide.  Words in
witnesses are written in source labels.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .errors import LabelMismatch, NotCompatible
from .group import CayleyGraph, Group


def _group(x: Group | CayleyGraph) -> Group:
    return x.group if isinstance(x, CayleyGraph) else x


def _label_map(source: Group, target: Group, label_map: Mapping[str, str] | None) -> tuple[int, ...]:
    """Index of the target generator for each source generator."""
    src, dst = source.gens.labels, target.gens.labels
    if label_map is None:
        if set(src) != set(dst) or len(src) != len(dst):
            raise LabelMismatch(f"label sets differ: {sorted(src)} vs {sorted(dst)}")
        label_map = {x: x for x in src}
    if set(label_map) != set(src):
        raise LabelMismatch("the label map must name every source label exactly once")
    images = [label_map[x] for x in src]
    if sorted(images) != sorted(dst):
        raise LabelMismatch("the label map must be a bijection onto the target labels")
    return tuple(target.gens.index(y) for y in images)


def _join(group: Group, labels) -> str:
    if all(len(x) == 1 for x in group.gens.labels):
        return "".join(labels)
    return " ".join(labels)


@dataclass(frozen=True)
class Compatibility:
    """``ok`` is True when every word trivial in the source is trivial in the target.

    A failure carries a source word ``witness`` with [w]^G = 1 and [w]^H != 1.
    """

    ok: bool
    witness: str | None = None
    image: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_compatible(
    source: Group | CayleyGraph,
    target: Group | CayleyGraph,
    label_map: Mapping[str, str] | None = None,
) -> Compatibility:
    """Assign phi(v) along canonical words and check phi(v o e) = phi(v) o e.

    Elements are visited in BFS order and labels in generator order, so the
    first inconsistency, and with it the witness, is deterministic.  For a
    violation at (v, e) with x = v o e the witness is w_x e reversed(w_v),
    which is trivial in the source because every generator is an involution.
    """
    g, h = _group(source), _group(target)
    to_h = _label_map(g, h, label_map)
    phi = [0] * g.order
    for v in range(1, g.order):
        phi[v] = h.eval_word([h.gens.labels[to_h[g.gens.index(x)]] for x in g.word(v)])
    for v in range(g.order):
        for i, r in enumerate(g.right):
            x = r[v]
            if phi[x] != h.right[to_h[i]][phi[v]]:
                word = g.word(x) + (g.gens.labels[i],) + tuple(reversed(g.word(v)))
                return Compatibility(False, _join(g, word))
    return Compatibility(True, None, tuple(phi))


@dataclass(frozen=True)
class CoveringMap:
    source: Group
    target: Group
    generator_map: tuple[int, ...]
    image: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.image[v]

    def fibre_sizes(self) -> dict[int, int]:
        return dict(sorted(Counter(self.image).items()))

    def to_json(self) -> dict:
        g, h = self.source, self.target
        return {
            "source": g.name,
            "target": h.name,
            "labels": {g.gens.labels[i]: h.gens.labels[j] for i, j in enumerate(self.generator_map)},
            "map": {g.word_str(v) or "1": h.word_str(self.image[v]) or "1" for v in range(g.order)},
            "fibre_sizes": sorted(set(self.fibre_sizes().values())),
        }


def covering_map(
    source: Group | CayleyGraph,
    target: Group | CayleyGraph,
    label_map: Mapping[str, str] | None = None,
) -> CoveringMap:
    """The homomorphism [w]^G -> [w]^H, checked on every (v, e) pair and for surjectivity."""
    g, h = _group(source), _group(target)
    verdict = check_compatible(g, h, label_map)
    if not verdict:
        raise NotCompatible(f"{g.name} is not compatible with {h.name}", verdict.witness)
    to_h = _label_map(g, h, label_map)
    image = verdict.image
    if image[g.identity] != h.identity:
        raise NotCompatible("the identity is not mapped to the identity")
    for v in range(g.order):
        for i, r in enumerate(g.right):
            if image[r[v]] != h.right[to_h[i]][image[v]]:
                raise NotCompatible("homomorphism property fails", _join(g, g.word(v) + (g.gens.labels[i],)))
    if len(set(image)) != h.order:
        raise NotCompatible("the map is not surjective")
    return CoveringMap(g, h, to_h, image)


@dataclass(frozen=True)
class CoveringVerdict:
    ok: bool
    vertex: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_covering(m: CoveringMap) -> CoveringVerdict:
    """Check that pi restricted to each closed 1-neighbourhood is a
    label-preserving isomorphism onto the 1-neighbourhood of the image.

    Vertices are scanned in index order; the first offending vertex is the
    witness.
    """
    g, h, pi, to_h = m.source, m.target, m.image, m.generator_map
    for v in range(g.order):
        ball = [v] + [r[v] for r in g.right]
        images = [pi[x] for x in ball]
        if len(set(images)) != len(set(ball)):
            return CoveringVerdict(False, v, "two neighbours share an image")
        target_ball = {pi[v]} | {r[pi[v]] for r in h.right}
        if set(images) != target_ball:
            return CoveringVerdict(False, v, "the neighbourhood image is not the target neighbourhood")
        back = dict(zip(images, ball))
        members = set(ball)
        for x in members:
            for i, r in enumerate(g.right):
                y = r[x]
                hy = h.right[to_h[i]][pi[x]]
                if y in members and pi[y] != hy:
                    return CoveringVerdict(False, v, f"edge {g.gens.labels[i]} at {g.word_str(x) or '1'} is not preserved")
                if hy in back and back[hy] != y:
                    return CoveringVerdict(False, v, f"edge {g.gens.labels[i]} at {g.word_str(x) or '1'} has no preimage")
    return CoveringVerdict(True)


__all__ = [
    "Compatibility",
    "CoveringMap",
    "CoveringVerdict",
    "check_compatible",
    "covering_map",
    "verify_covering",
]
