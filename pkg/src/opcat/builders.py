"""Builders for the operadic categories used throughout the package.

Infinite examples are truncated to the full subcategory on objects below a
size bound; fibres never exceed the size of the ambient object, so the
truncation is closed under taking fibres.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Optional

from .core import (FinCategory, FinFunction, all_functions, fibre_data,
                   fibre_restrict, monotone_functions)
from .operadic import OperadicCategory, OperadicFunctorData

TERMINAL = "*"


def fn_label(dom: str, cod: str, f: FinFunction) -> str:
    return f"{dom}->{cod}:{f.render()}"


class _Tables:
    """Accumulates morphism records keyed by their defining data."""

    def __init__(self):
        self.objects: list[str] = []
        self.obj_card: dict[str, int] = {}
        self.mors: dict[str, tuple[str, str]] = {}
        self.mor_card: dict[str, FinFunction] = {}
        self.data: dict[str, object] = {}
        self.by_key: dict[tuple, str] = {}

    def add_object(self, label: str, card: int) -> None:
        self.objects.append(label)
        self.obj_card[label] = card

    def add_morphism(self, label: str, dom: str, cod: str, data,
                     card: FinFunction) -> None:
        self.mors[label] = (dom, cod)
        self.mor_card[label] = card
        self.data[label] = data
        self.by_key[dom, cod, data] = label

    def lookup(self, dom: str, cod: str, data) -> str:
        return self.by_key[dom, cod, data]

    def finish(self, compose_data: Callable, fibre_obj: Callable,
               fibre_mor_data: Callable, identity_data: Callable,
               name: str) -> OperadicCategory:
        ids = {c: self.lookup(c, c, identity_data(c)) for c in self.objects}
        base = FinCategory(tuple(self.objects), self.mors, ids, {})
        comp = {}
        for f, g in base.composable_pairs():
            d = compose_data(self.data[g], self.data[f])
            comp[g, f] = self.lookup(base.dom(f), base.cod(g), d)
        base = FinCategory(tuple(self.objects), self.mors, ids, comp)
        fibres = {}
        for psi in self.mors:
            n = self.obj_card[base.cod(psi)]
            fibres[psi] = tuple(fibre_obj(psi, j) for j in range(1, n + 1))
        fmors = {}
        for phi, psi in base.composable_pairs():
            psiphi = comp[psi, phi]
            fam = []
            for j in range(1, self.obj_card[base.cod(psi)] + 1):
                d = fibre_mor_data(phi, psi, j)
                fam.append(self.lookup(fibres[psiphi][j - 1], fibres[psi][j - 1], d))
            fmors[psi, phi] = tuple(fam)
        return OperadicCategory(base, dict(self.obj_card), dict(self.mor_card),
                                fibres, fmors, name=name)


def _finite_sets(N: int, functions: Callable, name: str) -> OperadicCategory:
    t = _Tables()
    for n in range(N + 1):
        t.add_object(str(n), n)
    for m in range(N + 1):
        for n in range(N + 1):
            for f in functions(m, n):
                t.add_morphism(fn_label(str(m), str(n), f), str(m), str(n), f, f)

    def fibre_obj(psi, j):
        return str(fibre_data(t.mor_card[psi])[j - 1].card)

    def fibre_mor_data(phi, psi, j):
        return fibre_restrict(t.mor_card[phi], t.mor_card[psi], j)

    return t.finish(lambda g, f: f.then(g), fibre_obj, fibre_mor_data,
                    lambda c: FinFunction.identity(int(c)), name)


def build_S(N: int) -> OperadicCategory:
    """Finite sets ``0..N`` and all functions between them."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return _finite_sets(N, all_functions, f"S({N})")


def build_P(N: int) -> OperadicCategory:
    """Finite ordinals ``0..N`` and order-preserving maps."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return _finite_sets(N, monotone_functions, f"P({N})")


def build_discrete_zero(A: FinCategory) -> OperadicCategory:
    """``A`` with every object of cardinality 0: no fibres, nothing trivial."""
    empty = FinFunction(0, 0, ())
    return OperadicCategory(
        A, {c: 0 for c in A.objects}, {f: empty for f in A.morphisms},
        {f: () for f in A.morphisms},
        {(g, f): () for f, g in A.composable_pairs()},
        name="discrete_zero")


def build_adjoin_terminal(A: FinCategory) -> OperadicCategory:
    """``A`` plus a trivial terminal object ``*``; objects of ``A`` have cardinality 0."""
    t = TERMINAL
    tid = f"id_{t}"
    bang = {a: f"!{a}" for a in A.objects}
    taken = set(A.objects) | set(A.morphisms)
    if t in taken or tid in taken or taken & set(bang.values()):
        raise ValueError(f"label clash with the reserved terminal label {t!r}")
    objects = A.objects + (t,)
    mors = dict(A.morphisms)
    for a in A.objects:
        mors[bang[a]] = (a, t)
    mors[tid] = (t, t)
    ids = {**A.identities, t: tid}
    comp = dict(A.composition)
    for f, (d, c) in A.morphisms.items():
        comp[bang[c], f] = bang[d]
    for a in A.objects:
        comp[tid, bang[a]] = bang[a]
    comp[tid, tid] = tid
    base = FinCategory(objects, mors, ids, comp)
    obj_card = {c: 0 for c in A.objects}
    obj_card[t] = 1
    mor_card = {f: FinFunction(0, 0, ()) for f in A.morphisms}
    for a in A.objects:
        mor_card[bang[a]] = FinFunction(0, 1, ())
    mor_card[tid] = FinFunction.identity(1)
    fibres = {f: ((base.dom(f),) if base.cod(f) == t else ()) for f in mors}
    fmors = {(g, f): ((f,) if base.cod(g) == t else ())
             for f, g in base.composable_pairs()}
    return OperadicCategory(base, obj_card, mor_card, fibres, fmors,
                            name="adjoin_terminal")


def build_card_one(A: FinCategory, R_data: Optional[dict] = None) -> OperadicCategory:
    """``A`` with every cardinality 1.

    Without ``R_data`` each ``R_a`` is the domain functor.  ``R_data`` may
    override entries with keys ``"fibres"`` (morphism -> object) and
    ``"fibre_mors"`` ((outer, inner) -> morphism); validation then decides
    whether the result is operadic.
    """
    one = FinFunction.identity(1)
    fibres = {f: (d,) for f, (d, _) in A.morphisms.items()}
    fmors = {(g, f): (f,) for f, g in A.composable_pairs()}
    if R_data:
        for f, v in R_data.get("fibres", {}).items():
            fibres[f] = (v,)
        for k, v in R_data.get("fibre_mors", {}).items():
            fmors[k] = (v,)
    return OperadicCategory(A, {c: 1 for c in A.objects},
                            {f: one for f in A.morphisms}, fibres, fmors,
                            name="card_one")


def bouquet_label(c: tuple[str, ...], cp: str) -> str:
    return f"({' '.join(c)};{cp})"


def build_bouquets(I: Iterable[str], N: int) -> OperadicCategory:
    """Bouquets ``(m, c, c')`` with ``m <= N``, colours in ``I``."""
    colours = tuple(I)
    if not colours:
        raise ValueError("need at least one colour")
    t = _Tables()
    info: dict[str, tuple[tuple[str, ...], str]] = {}
    for cp in colours:
        for m in range(N + 1):
            for c in product(colours, repeat=m):
                lab = bouquet_label(c, cp)
                t.add_object(lab, m)
                info[lab] = (c, cp)
    for a in t.objects:
        for b in t.objects:
            (c, cp), (d, dp) = info[a], info[b]
            if cp != dp:
                continue
            for f in all_functions(len(c), len(d)):
                t.add_morphism(f"{a}-[{f.render()}]->{b}", a, b, f, f)

    def fibre_obj(psi, j):
        c, _ = info[t.mors[psi][0]]
        d, _ = info[t.mors[psi][1]]
        emb = fibre_data(t.mor_card[psi])[j - 1].embed
        return bouquet_label(tuple(c[k - 1] for k in emb), d[j - 1])

    def fibre_mor_data(phi, psi, j):
        return fibre_restrict(t.mor_card[phi], t.mor_card[psi], j)

    return t.finish(lambda g, f: f.then(g), fibre_obj, fibre_mor_data,
                    lambda a: FinFunction.identity(len(info[a][0])),
                    f"Bq({','.join(colours)};{N})")


def tree_label(boundary: FinFunction) -> str:
    return f"{boundary.dom_card}>{boundary.cod_card}:{boundary.render()}"


def _fibre_order_ok(f2: FinFunction, boundary: FinFunction) -> bool:
    vals, b = f2.values, boundary.values
    n = len(vals)
    return all(vals[i] <= vals[j] for i in range(n) for j in range(i + 1, n)
               if b[i] == b[j])


def build_omega2(N2: int, N1: int) -> OperadicCategory:
    """2-trees: order-preserving ``p2 -> p1`` with ``p2 <= N2``, ``p1 <= N1``.

    A morphism is a commuting square ``(phi2, phi1)`` with ``phi1``
    order-preserving and ``phi2`` order-preserving on the fibres of the
    boundary map.  The cardinality of a 2-tree is ``p2``.
    """
    t = _Tables()
    trees: dict[str, FinFunction] = {}
    for p1 in range(N1 + 1):
        for p2 in range(N2 + 1):
            for bd in monotone_functions(p2, p1):
                lab = tree_label(bd)
                trees[lab] = bd
                t.add_object(lab, p2)
    for a, da in trees.items():
        for b, db in trees.items():
            for f1 in monotone_functions(da.cod_card, db.cod_card):
                choices = [[v for v in range(1, db.dom_card + 1)
                            if db(v) == f1(da(s))]
                           for s in range(1, da.dom_card + 1)]
                for vals in product(*choices):
                    f2 = FinFunction(da.dom_card, db.dom_card, vals)
                    if _fibre_order_ok(f2, da):
                        t.add_morphism(f"[{f2.render()};{f1.render()}]:{a}->{b}",
                                       a, b, (f2, f1), f2)

    def fibre_tree(sigma, i):
        a, b = t.mors[sigma]
        f2, f1 = t.data[sigma]
        top = fibre_data(f2)[i - 1].embed
        bottom = fibre_data(f1)[trees[b](i) - 1].embed
        pos = {v: k for k, v in enumerate(bottom, start=1)}
        return FinFunction(len(top), len(bottom),
                           tuple(pos[trees[a](s)] for s in top))

    def fibre_obj(psi, j):
        return tree_label(fibre_tree(psi, j))

    def fibre_mor_data(phi, psi, j):
        (p2, p1), (q2, q1) = t.data[phi], t.data[psi]
        e = trees[t.mors[psi][1]]
        return (fibre_restrict(p2, q2, j), fibre_restrict(p1, q1, e(j)))

    def compose(g, f):
        return (f[0].then(g[0]), f[1].then(g[1]))

    return t.finish(compose, fibre_obj, fibre_mor_data,
                    lambda a: (FinFunction.identity(trees[a].dom_card),
                               FinFunction.identity(trees[a].cod_card)),
                    f"Omega2({N2},{N1})")


def cardinality_functor(oc: OperadicCategory, N: Optional[int] = None
                        ) -> tuple[OperadicFunctorData, OperadicCategory]:
    """The unique strict operadic functor ``oc -> S(N)``.

    ``N`` defaults to the largest cardinality in ``oc``.  Returns the functor
    data together with the target.
    """
    if N is None:
        N = max(oc.obj_card.values(), default=0)
    S = build_S(N)
    obj_map = {c: str(oc.obj_card[c]) for c in oc.objects}
    mor_map = {f: fn_label(obj_map[d], obj_map[c], oc.mor_card[f])
               for f, (d, c) in oc.morphisms.items()}
    return OperadicFunctorData(oc, S, obj_map, mor_map), S


def inclusion_functor(small: OperadicCategory, big: OperadicCategory
                      ) -> OperadicFunctorData:
    """Label-preserving inclusion, used for truncation monotonicity."""
    return OperadicFunctorData(small, big, {c: c for c in small.objects},
                               {f: f for f in small.morphisms})


def poset3() -> FinCategory:
    """The chain ``a <= b <= c``."""
    from .core import poset_category
    order = {"a": 0, "b": 1, "c": 2}
    return poset_category(("a", "b", "c"), lambda x, y: order[x] <= order[y])
