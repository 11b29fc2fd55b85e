"""Built-in families of involution-generated permutation groups.

Every constructor returns a :class:`GroupSpec` in permutation form.  The
registry :data:`CATALOG` names concrete instances together with properties
that the test suite recomputes from scratch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .errors import BadParams, UnknownFamily
from .group import GroupSpec

FAMILIES = (
    "symmetric_transpositions",
    "symmetric_adjacent",
    "dihedral_reflections",
    "elementary_abelian",
    "direct_product",
)


def _swap(degree: int, i: int, j: int) -> list[int]:
    perm = list(range(degree))
    perm[i], perm[j] = j, i
    return perm


def _need_int(params: dict, key: str, low: int, high: int | None = None) -> int:
    if key not in params:
        raise BadParams(f"missing parameter {key!r}")
    value = params[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise BadParams(f"parameter {key!r} must be an integer")
    if value < low or (high is not None and value > high):
        bound = f">= {low}" if high is None else f"in [{low}, {high}]"
        raise BadParams(f"parameter {key!r} must be {bound}, got {value}")
    return value


def symmetric_transpositions(n: int) -> GroupSpec:
    """S_n generated by all transpositions.

    Transpositions are listed by gap, then by first point: (1,2), (2,3), ...,
    then (1,3), ... so the adjacent ones come first.
    """
    gens = []
    for gap in range(1, n):
        for i in range(n - gap):
            gens.append({"label": f"({i + 1},{i + gap + 1})", "perm": _swap(n, i, i + gap)})
    return GroupSpec(name=f"S{n} (all transpositions)", generators=gens, degree=n)


def symmetric_adjacent(n: int) -> GroupSpec:
    gens = [{"label": f"({i + 1},{i + 2})", "perm": _swap(n, i, i + 1)} for i in range(n - 1)]
    return GroupSpec(name=f"S{n} (adjacent transpositions)", generators=gens, degree=n)


def dihedral_reflections(n: int) -> GroupSpec:
    """D_n of order 2n acting on the n-gon, generated by two adjacent reflections."""
    r = [(-i) % n for i in range(n)]
    s = [(1 - i) % n for i in range(n)]
    return GroupSpec(
        name=f"D{n}",
        generators=[{"label": "r", "perm": r}, {"label": "s", "perm": s}],
        degree=n,
    )


def elementary_abelian(k: int) -> GroupSpec:
    """(Z2)^k with the standard basis, labelled a, b, c, ..."""
    degree = 2 * k
    gens = [{"label": chr(ord("a") + i), "perm": _swap(degree, 2 * i, 2 * i + 1)} for i in range(k)]
    name = "Z2" if k == 1 else "Z2^" + str(k)
    return GroupSpec(name=name, generators=gens, degree=degree)


def direct_product(factors: list[GroupSpec]) -> GroupSpec:
    """Product acting on disjoint point sets; labels get a ``_<factor>`` suffix."""
    if len(factors) < 2:
        raise BadParams("direct_product needs at least two factors")
    gens = []
    offset = 0
    total = sum(f.degree for f in factors)
    for idx, factor in enumerate(factors, start=1):
        if factor.table is not None:
            raise BadParams("direct_product factors must be permutation groups")
        for g in factor.generators:
            perm = list(range(total))
            for x, y in enumerate(g["perm"]):
                perm[offset + x] = offset + y
            gens.append({"label": f"{g['label']}_{idx}", "perm": perm})
        offset += factor.degree
    name = " x ".join(f.name for f in factors)
    return GroupSpec(name=name, generators=gens, degree=total)


def make(name: str, params: dict[str, Any] | None = None) -> GroupSpec:
    """Construct a family member.

    ``params`` uses ``n`` for the symmetric and dihedral families, ``k`` for
    elementary abelian groups and ``factors`` (a list of ``[name, params]``
    pairs) for direct products.
    """
    params = dict(params or {})
    if name == "symmetric_transpositions":
        return symmetric_transpositions(_need_int(params, "n", 2, 8))
    if name == "symmetric_adjacent":
        return symmetric_adjacent(_need_int(params, "n", 2, 17))
    if name == "dihedral_reflections":
        return dihedral_reflections(_need_int(params, "n", 3))
    if name == "elementary_abelian":
        return elementary_abelian(_need_int(params, "k", 1, 16))
    if name == "direct_product":
        factors = params.get("factors")
        if not isinstance(factors, list):
            raise BadParams("direct_product needs a 'factors' list")
        specs = []
        for item in factors:
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise BadParams("each factor must be a [family, params] pair")
            specs.append(make(item[0], item[1]))
        return direct_product(specs)
    raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")


def parse_params(name: str, tokens: list[str]) -> dict[str, Any]:
    """Parameters from command-line tokens such as ``3``, ``n=3`` or
    ``dihedral_reflections:3 elementary_abelian:1`` for products."""
    if name == "direct_product":
        factors = []
        for tok in tokens:
            for part in tok.split(","):
                if not part:
                    continue
                fam, _, arg = part.partition(":")
                key = "k" if fam == "elementary_abelian" else "n"
                try:
                    factors.append([fam, {key: int(arg)}])
                except ValueError:
                    raise BadParams(f"bad factor {part!r}") from None
        return {"factors": factors}
    out: dict[str, Any] = {}
    key = "k" if name == "elementary_abelian" else "n"
    for tok in tokens:
        k, sep, v = tok.partition("=")
        try:
            if sep:
                out[k] = int(v)
            else:
                out[key] = int(tok)
        except ValueError:
            raise BadParams(f"bad parameter {tok!r}") from None
    return out


@dataclass(frozen=True)
class CatalogEntry:
    """A named instance with expected properties.

    ``level`` is the coset acyclicity level with cap 6; ``source`` records
    where the expected values come from.
    """

    name: str
    family: str
    params: dict = field(hash=False)
    order: int
    girth: int | float
    two_acyclic: bool
    level: int
    source: str = "computed"

    def spec(self) -> GroupSpec:
        return make(self.family, self.params)


LEVEL_CAP = 6

CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("z2", "elementary_abelian", {"k": 1}, 2, math.inf, True, 6, "trivial"),
        CatalogEntry("z2xz2", "elementary_abelian", {"k": 2}, 4, 4, True, 3, "derived"),
        CatalogEntry("z2^3", "elementary_abelian", {"k": 3}, 8, 4, True, 3, "computed"),
        CatalogEntry("z2^4", "elementary_abelian", {"k": 4}, 16, 4, True, 3, "computed"),
        CatalogEntry("s3_all", "symmetric_transpositions", {"n": 3}, 6, 4, False, 1, "example"),
        CatalogEntry("s3_adj", "symmetric_adjacent", {"n": 3}, 6, 6, True, 5, "computed"),
        CatalogEntry("s4_adj", "symmetric_adjacent", {"n": 4}, 24, 4, True, 3, "computed"),
        CatalogEntry("s4_all", "symmetric_transpositions", {"n": 4}, 24, 4, False, 1, "computed"),
        CatalogEntry("d3", "dihedral_reflections", {"n": 3}, 6, 6, True, 5, "computed"),
        CatalogEntry("d4", "dihedral_reflections", {"n": 4}, 8, 8, True, 6, "computed"),
        CatalogEntry("d5", "dihedral_reflections", {"n": 5}, 10, 10, True, 6, "computed"),
        CatalogEntry("d6", "dihedral_reflections", {"n": 6}, 12, 12, True, 6, "computed"),
        CatalogEntry(
            "d3xz2",
            "direct_product",
            {"factors": [["dihedral_reflections", {"n": 3}], ["elementary_abelian", {"k": 1}]]},
            12, 4, True, 3, "computed",
        ),
        CatalogEntry(
            "d4xz2",
            "direct_product",
            {"factors": [["dihedral_reflections", {"n": 4}], ["elementary_abelian", {"k": 1}]]},
            16, 4, True, 3, "computed",
        ),
        CatalogEntry(
            "s4adjxz2",
            "direct_product",
            {"factors": [["symmetric_adjacent", {"n": 4}], ["elementary_abelian", {"k": 1}]]},
            48, 4, True, 3, "computed",
        ),
    ]
}


def entries(max_order: int | None = None, max_gens: int | None = None) -> list[CatalogEntry]:
    out = []
    for e in CATALOG.values():
        if max_order is not None and e.order > max_order:
            continue
        arity = len(e.spec().generators)
        if max_gens is not None and arity > max_gens:
            continue
        out.append(e)
    return out
