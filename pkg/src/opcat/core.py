"""Finite categories, functions between finite cardinals, and fibre bookkeeping.

Cardinals are the sets ``{1..n}``.  A function ``f: m -> n`` is stored as the
tuple of its values, so ``FinFunction(3, 4, (1, 1, 4))`` is the map written
``1 1 4``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Iterable, Iterator, NamedTuple, Sequence

import numpy as np


class FinFunction(NamedTuple):
    dom_card: int
    cod_card: int
    values: tuple[int, ...]

    @classmethod
    def from_values(cls, values: Sequence[int], cod_card: int) -> "FinFunction":
        return cls(len(values), cod_card, tuple(values))

    @classmethod
    def identity(cls, n: int) -> "FinFunction":
        return cls(n, n, tuple(range(1, n + 1)))

    def __call__(self, j: int) -> int:
        return self.values[j - 1]

    def is_valid(self) -> bool:
        return len(self.values) == self.dom_card and all(
            1 <= v <= self.cod_card for v in self.values)

    def then(self, g: "FinFunction") -> "FinFunction":
        """The composite ``g . self``."""
        if g.dom_card != self.cod_card:
            raise ValueError(f"cannot compose {self} with {g}")
        return FinFunction(self.dom_card, g.cod_card,
                           tuple(g.values[v - 1] for v in self.values))

    def is_identity(self) -> bool:
        return self.dom_card == self.cod_card and self.values == tuple(
            range(1, self.dom_card + 1))

    def is_bijective(self) -> bool:
        return self.dom_card == self.cod_card and sorted(self.values) == list(
            range(1, self.cod_card + 1))

    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))

    def render(self) -> str:
        return " ".join(map(str, self.values))


def all_functions(m: int, n: int) -> Iterator[FinFunction]:
    """Every function ``m -> n``, values in lexicographic order."""
    from itertools import product
    for vals in product(range(1, n + 1), repeat=m):
        yield FinFunction(m, n, vals)


def monotone_functions(m: int, n: int) -> Iterator[FinFunction]:
    from itertools import combinations_with_replacement
    for vals in combinations_with_replacement(range(1, n + 1), m):
        yield FinFunction(m, n, vals)


class Fibre(NamedTuple):
    card: int
    embed: tuple[int, ...]


@lru_cache(maxsize=1 << 16)
def fibre_data(f: FinFunction) -> tuple[Fibre, ...]:
    """Preimages of each ``i`` in ``1..cod_card``, enumerated in increasing order."""
    buckets: list[list[int]] = [[] for _ in range(f.cod_card)]
    for j, v in enumerate(f.values, start=1):
        buckets[v - 1].append(j)
    return tuple(Fibre(len(b), tuple(b)) for b in buckets)


def kappa(f: FinFunction) -> tuple[int, ...]:
    """The bijection ``sum_i card(i) -> dom_card`` concatenating the fibres."""
    return tuple(j for fib in fibre_data(f) for j in fib.embed)


def fibre_restrict(f: FinFunction, g: FinFunction, i: int) -> FinFunction:
    """Map induced by ``f`` from the ``i``-th fibre of ``g.f`` to that of ``g``.

    Both fibres are taken in canonical coordinates.
    """
    if g.dom_card != f.cod_card:
        raise ValueError("fibre_restrict needs dom g = cod f")
    if not 1 <= i <= g.cod_card:
        raise IndexError(f"fibre index {i} out of range 1..{g.cod_card}")
    gf = f.then(g)
    source = fibre_data(gf)[i - 1].embed
    target = fibre_data(g)[i - 1].embed
    pos = {v: k for k, v in enumerate(target, start=1)}
    return FinFunction(len(source), len(target),
                       tuple(pos[f(t)] for t in source))


class CapExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


class Failure(NamedTuple):
    check: str
    message: str
    witness: tuple


@dataclass
class ValidationReport:
    """Outcome of a batch of checks.

    ``failures`` keeps enumeration order; ``passed`` is derived from it.
    """
    check: str
    failures: list[Failure] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, check: str, message: str, *witness) -> None:
        self.failures.append(Failure(check, message, tuple(witness)))

    def count(self, key: str, n: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + n

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        self.failures.extend(other.failures)
        for k, v in other.stats.items():
            if isinstance(v, int) and isinstance(self.stats.get(k, 0), int):
                self.stats[k] = self.stats.get(k, 0) + v
            else:
                self.stats[k] = v
        return self

    def failed_checks(self) -> list[str]:
        seen: dict[str, None] = {}
        for f in self.failures:
            seen.setdefault(f.check)
        return list(seen)

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class FinCategory:
    """A finite category given by explicit tables.

    ``morphisms`` maps a label to its ``(dom, cod)``; ``composition`` maps
    ``(outer, inner)`` to the composite ``outer . inner``.  Insertion order of
    both dicts is the enumeration order used in reports.
    """
    objects: tuple[str, ...]
    morphisms: dict[str, tuple[str, str]]
    identities: dict[str, str]
    composition: dict[tuple[str, str], str]

    def dom(self, f: str) -> str:
        return self.morphisms[f][0]

    def cod(self, f: str) -> str:
        return self.morphisms[f][1]

    def identity(self, c: str) -> str:
        return self.identities[c]

    def compose(self, g: str, f: str) -> str:
        return self.composition[g, f]

    @cached_property
    def out_of(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {c: [] for c in self.objects}
        for f, (d, _) in self.morphisms.items():
            out.setdefault(d, []).append(f)
        return {c: tuple(fs) for c, fs in out.items()}

    @cached_property
    def into(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {c: [] for c in self.objects}
        for f, (_, c) in self.morphisms.items():
            out.setdefault(c, []).append(f)
        return {c: tuple(fs) for c, fs in out.items()}

    @cached_property
    def homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        out: dict[tuple[str, str], list[str]] = {}
        for f, dc in self.morphisms.items():
            out.setdefault(dc, []).append(f)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self.homs.get((a, b), ())

    @cached_property
    def index(self):
        from ._index import CategoryIndex
        return CategoryIndex(self)

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """All ``(inner, outer)`` with ``cod inner = dom outer``."""
        for f, (_, c) in self.morphisms.items():
            for g in self.out_of.get(c, ()):
                yield f, g

    def composable_triples(self) -> Iterator[tuple[str, str, str]]:
        """All ``(f, g, h)`` with ``h . g . f`` defined, innermost first."""
        for f, g in self.composable_pairs():
            for h in self.out_of.get(self.cod(g), ()):
                yield f, g, h


def validate_category(cat: FinCategory) -> ValidationReport:
    """Check references, totality of composition, identity and associativity laws."""
    rep = ValidationReport("category")
    objs = set(cat.objects)
    if len(objs) != len(cat.objects):
        rep.fail("C0", "duplicate object labels", *sorted(cat.objects))
    ok_mor = set()
    for f, (d, c) in cat.morphisms.items():
        if d not in objs or c not in objs:
            rep.fail("C0", "morphism references unknown object", f, d, c)
        else:
            ok_mor.add(f)
    for c in cat.objects:
        i = cat.identities.get(c)
        if i is None:
            rep.fail("C1", "missing identity", c)
        elif cat.morphisms.get(i) != (c, c):
            rep.fail("C1", "identity has wrong type", c, i)
    for key in cat.composition:
        g, f = key
        if g not in cat.morphisms or f not in cat.morphisms or \
                cat.dom(g) != cat.cod(f):
            rep.fail("C2", "composition defined on non-composable pair", g, f)
    for f, g in _pairs(cat, ok_mor):
        gf = cat.composition.get((g, f))
        rep.count("pairs")
        if gf is None:
            rep.fail("C2", "composite missing", g, f)
        elif cat.morphisms.get(gf) != (cat.dom(f), cat.cod(g)):
            rep.fail("C2", "composite has wrong type", g, f)
    if not rep.passed:
        return rep
    for f in cat.morphisms:
        d, c = cat.morphisms[f]
        if cat.compose(f, cat.identity(d)) != f:
            rep.fail("C3", "f . id != f", f, cat.identity(d))
        if cat.compose(cat.identity(c), f) != f:
            rep.fail("C3", "id . f != f", cat.identity(c), f)
    ix = cat.index
    for f, g, h in ix.triples():
        rep.count("triples", len(f))
        bad = np.nonzero(ix.comp[h, ix.comp[g, f]] != ix.comp[ix.comp[h, g], f])[0]
        for k in bad:
            L = ix.labels
            rep.fail("C4", "associativity fails", L[h[k]], L[g[k]], L[f[k]])
    return rep


def _pairs(cat: FinCategory, ok: set[str]) -> Iterator[tuple[str, str]]:
    by_dom: dict[str, list[str]] = {}
    for g in cat.morphisms:
        if g in ok:
            by_dom.setdefault(cat.dom(g), []).append(g)
    for f in cat.morphisms:
        if f in ok:
            for g in by_dom.get(cat.cod(f), ()):
                yield f, g


def connected_components(cat: FinCategory) -> list[list[str]]:
    """Connected components of the underlying graph, in object order."""
    parent = {c: c for c in cat.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d, c in cat.morphisms.values():
        a, b = find(d), find(c)
        if a != b:
            parent[b] = a
    comps: dict[str, list[str]] = {}
    for c in cat.objects:
        comps.setdefault(find(c), []).append(c)
    return list(comps.values())


def make_category(objects: Iterable[str], morphisms: Iterable[tuple[str, str, str]],
                  identities: dict[str, str], compose) -> FinCategory:
    """Build a category from a composition *function* ``compose(g, f)``."""
    objects = tuple(objects)
    mors = {label: (d, c) for label, d, c in morphisms}
    cat = FinCategory(objects, mors, dict(identities), {})
    comp = {}
    for f, g in cat.composable_pairs():
        comp[g, f] = compose(g, f)
    return FinCategory(objects, mors, dict(identities), comp)


def relabel(cat: FinCategory, obj: dict[str, str], mor: dict[str, str]) -> FinCategory:
    return FinCategory(
        tuple(obj[c] for c in cat.objects),
        {mor[f]: (obj[d], obj[c]) for f, (d, c) in cat.morphisms.items()},
        {obj[c]: mor[i] for c, i in cat.identities.items()},
        {(mor[g], mor[f]): mor[h] for (g, f), h in cat.composition.items()},
    )


def poset_category(elements: Sequence[str], leq) -> FinCategory:
    """The category of a finite preorder; morphisms are labelled ``a<=b``."""
    mors = [(f"{a}<={b}", a, b) for a in elements for b in elements if leq(a, b)]
    ids = {a: f"{a}<={a}" for a in elements}

    def compose(g, f):
        a = f.split("<=")[0]
        b = g.split("<=")[1]
        return f"{a}<={b}"

    return make_category(elements, mors, ids, compose)


def free_arrow() -> FinCategory:
    """The category ``a --f--> b``."""
    mors = [("id_a", "a", "a"), ("id_b", "b", "b"), ("f", "a", "b")]
    ids = {"a": "id_a", "b": "id_b"}

    def compose(g, f):
        if g.startswith("id_"):
            return f
        return g

    return make_category(("a", "b"), mors, ids, compose)


def point() -> FinCategory:
    return make_category(("a",), [("id_a", "a", "a")], {"a": "id_a"},
                         lambda g, f: "id_a")


def empty_category() -> FinCategory:
    return FinCategory((), {}, {}, {})


def disjoint_union(a: FinCategory, b: FinCategory) -> FinCategory:
    """Disjoint union; labels of ``b`` must not clash with those of ``a``."""
    if set(a.objects) & set(b.objects) or set(a.morphisms) & set(b.morphisms):
        raise ValueError("label clash in disjoint union")
    return FinCategory(a.objects + b.objects, {**a.morphisms, **b.morphisms},
                       {**a.identities, **b.identities},
                       {**a.composition, **b.composition})
