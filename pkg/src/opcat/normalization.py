"""Fibrewise trivial morphisms, presheaves as modules over the unit, and the
normalized tensor.

A presheaf on the fibrewise trivial subcategory is stored as a carrier
collection together with an action table ``(pi, x) -> x.pi``.  The wedge
``X ^ Y`` is the quotient of ``X * Y`` by ``(x, pi phi, y) ~ (x.pi, phi, y_pi)``
for fibrewise trivial ``pi``; classes are computed with a union-find.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Iterator, Optional

from .core import CapExceeded, FinCategory, ValidationReport, validate_category
from .operadic import OperadicCategory
from .skew import (Collection, TensorElement, alpha, lam, render, rho, tensor,
                   tensor_map, unit)


def is_fibrewise_trivial(oc: OperadicCategory, phi: str) -> bool:
    return all(v in oc.trivial for v in oc.fibres[phi])


@dataclass(frozen=True)
class FtSubcategory:
    category: FinCategory
    report: ValidationReport


def ft_subcategory(oc: OperadicCategory) -> FtSubcategory:
    """The wide subcategory of fibrewise trivial morphisms.

    Closure under composition and the two stability lemmas (fibre morphisms
    of a fibrewise trivial map are fibrewise trivial; for fibrewise trivial
    ``pi``, ``phi`` is fibrewise trivial iff ``pi phi`` is) are checked over
    every composable pair.
    """
    rep = ValidationReport("ft-subcategory")
    ft = {f for f in oc.morphisms if is_fibrewise_trivial(oc, f)}
    for c in oc.objects:
        if oc.identity(c) not in ft:
            rep.fail("L0", "identity is not fibrewise trivial", oc.identity(c))
    for phi, psi in oc.base.composable_pairs():
        rep.count("pairs")
        if phi in ft:
            for j, m in enumerate(oc.fibre_mors[psi, phi], start=1):
                if m not in ft:
                    rep.fail("L1", "fibre morphism of a fibrewise trivial map is not",
                             phi, psi, j, m)
        if psi in ft and (phi in ft) != (oc.compose(psi, phi) in ft):
            rep.fail("L2", "phi and pi.phi disagree on fibrewise triviality", phi, psi)
        if phi in ft and psi in ft and oc.compose(psi, phi) not in ft:
            rep.fail("L3", "composite leaves the subcategory", phi, psi)
    mors = {f: oc.morphisms[f] for f in oc.morphisms if f in ft}
    comp = {(g, f): h for (g, f), h in oc.base.composition.items()
            if f in ft and g in ft and h in ft}
    cat = FinCategory(tuple(oc.objects), mors, dict(oc.base.identities), comp)
    rep.merge(validate_category(cat))
    rep.stats["morphisms"] = len(mors)
    return FtSubcategory(cat, rep)


# ------------------------------------------------------------- presheaves

@dataclass(frozen=True)
class Presheaf:
    """``carrier`` with a right action of fibrewise trivial morphisms."""
    carrier: Collection
    action: dict[tuple[str, Any], Any] = field(default_factory=dict)

    def act(self, x, pi: str):
        return self.action[pi, x]


def validate_presheaf(oc: OperadicCategory, P: Presheaf) -> ValidationReport:
    """Action laws directly, then the same data as a module ``r: X * U -> X``."""
    rep = ValidationReport("presheaf")
    X = P.carrier
    ft = oc.ft_morphisms
    for c in X.sets:
        if c not in oc.obj_card:
            rep.fail("P0", "carrier over an unknown object", c)
    for pi in ft:
        d, c = oc.cod(pi), oc.dom(pi)
        for x in X.at(d):
            rep.count("action")
            y = P.action.get((pi, x))
            if y is None:
                rep.fail("P0", "action undefined", pi, x)
            elif not X.contains(c, y):
                rep.fail("P0", "action leaves the carrier", pi, x, y)
    if not rep.passed:
        return rep
    for c, x in X.elements():
        if P.act(x, oc.identity(c)) != x:
            rep.fail("P1", "x . id != x", c, x)
    ftset = set(ft)
    for sigma, pi in oc.base.composable_pairs():
        if sigma not in ftset or pi not in ftset:
            continue
        for x in X.at(oc.cod(pi)):
            if P.act(P.act(x, pi), sigma) != P.act(x, oc.compose(pi, sigma)):
                rep.fail("P2", "(x . pi) . sigma != x . (pi sigma)", pi, sigma, x)
    _check_module(oc, P, rep)
    return rep


def _module_map(oc: OperadicCategory, P: Presheaf):
    def r(e: TensorElement):
        if tuple(e.ys) != tuple(oc.fibres[e.phi]):
            raise ValueError(f"not an element of X * U: {render(e)}")
        return P.act(e.x, e.phi)
    return r


def _check_module(oc: OperadicCategory, P: Presheaf, rep: ValidationReport):
    """``r (r * 1) = r (1 * lambda) alpha`` and ``r rho = 1``."""
    X, U = P.carrier, unit(oc)
    r = _module_map(oc, P)
    XU = tensor(oc, X, U)
    for c, e in tensor(oc, XU, U).elements():
        rep.count("module")
        lhs = r(tensor_map(r, lambda t: t, e))
        rhs = r(tensor_map(lambda t: t, lambda t: lam(oc, t), alpha(oc, e)))
        if lhs != rhs:
            rep.fail("M1", "module associativity fails", render(e))
    for c, x in X.elements():
        if r(rho(oc, c, x)) != x:
            rep.fail("M2", "module unit law fails", c, x)


def unit_presheaf(oc: OperadicCategory) -> Presheaf:
    """``U`` with its action: a fibrewise trivial map into a trivial object
    has a trivial domain."""
    U = unit(oc)
    act = {(pi, oc.cod(pi)): oc.dom(pi) for pi in oc.ft_morphisms
           if oc.cod(pi) in oc.trivial}
    return Presheaf(U, act)


def terminal_presheaf(oc: OperadicCategory, label: str = "*") -> Presheaf:
    X = Collection({c: (label,) for c in oc.objects})
    return Presheaf(X, {(pi, label): label for pi in oc.ft_morphisms})


def representable_presheaf(oc: OperadicCategory, d: str, prefix: str = "") -> Presheaf:
    """``C(-, d)`` in the fibrewise trivial subcategory, acting by precomposition."""
    ft = oc.ft_morphisms
    sets: dict[str, list] = {}
    for f in ft:
        if oc.cod(f) == d:
            sets.setdefault(oc.dom(f), []).append(prefix + f)
    act = {}
    for pi in ft:
        for f in ft:
            if oc.cod(f) == d and oc.dom(f) == oc.cod(pi):
                act[pi, prefix + f] = prefix + oc.compose(f, pi)
    return Presheaf(Collection({c: tuple(v) for c, v in sets.items()}), act)


def sieve_presheaf(oc: OperadicCategory, d: str, label: str = "*") -> Presheaf:
    """The subterminal presheaf on objects admitting a fibrewise trivial map to ``d``."""
    objs = {oc.dom(f) for f in oc.ft_morphisms if oc.cod(f) == d}
    X = Collection({c: (label,) for c in oc.objects if c in objs})
    act = {(pi, label): label for pi in oc.ft_morphisms if oc.cod(pi) in objs}
    return Presheaf(X, act)


def sum_presheaves(parts: list[Presheaf]) -> Presheaf:
    """Disjoint union, tagging the ``k``-th summand's elements with ``k``."""
    sets: dict[str, list] = {}
    act = {}
    for k, P in enumerate(parts):
        for c, x in P.carrier.elements():
            sets.setdefault(c, []).append(f"{k}:{x}")
        for (pi, x), y in P.action.items():
            act[pi, f"{k}:{x}"] = f"{k}:{y}"
    return Presheaf(Collection({c: tuple(v) for c, v in sets.items()}), act)


def random_presheaf(oc: OperadicCategory, rng: random.Random, max_parts: int = 2
                    ) -> Presheaf:
    """A sum of up to ``max_parts`` representable, terminal or sieve presheaves."""
    parts = []
    for _ in range(rng.randint(0, max_parts)):
        if not oc.objects:
            break
        kind = rng.randrange(3)
        d = rng.choice(oc.objects)
        if kind == 0:
            parts.append(representable_presheaf(oc, d))
        elif kind == 1:
            parts.append(terminal_presheaf(oc))
        else:
            parts.append(sieve_presheaf(oc, d))
    return sum_presheaves(parts)


# ------------------------------------------------------------------ wedge

@dataclass(frozen=True)
class WedgeClass:
    representative: TensorElement
    members: tuple[TensorElement, ...]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as root so roots are class minima
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class Wedge:
    """``X ^ Y`` as classes of ``X * Y`` per object, with its induced action."""
    classes: dict[str, tuple[WedgeClass, ...]]
    class_of: dict[tuple[str, TensorElement], TensorElement]
    presheaf: Presheaf

    def project(self, c: str, e: TensorElement) -> TensorElement:
        """The class representative of ``e`` in ``(X ^ Y)_c``."""
        return self.class_of[c, e]

    def sizes(self) -> dict[str, int]:
        return {c: len(v) for c, v in self.classes.items() if v}

    def members(self, c: str, rep: TensorElement) -> tuple[TensorElement, ...]:
        idx = self.__dict__.get("_by_rep")
        if idx is None:
            idx = self.__dict__["_by_rep"] = {
                (c2, wc.representative): wc.members
                for c2, cls in self.classes.items() for wc in cls}
        return idx[c, rep]


def _generators(oc: OperadicCategory, P: Presheaf, e: TensorElement
                ) -> Iterator[TensorElement]:
    """``(x, pi phi, y) -> (x . pi, phi, y_pi)`` for each fibrewise trivial ``pi``."""
    x, theta, y = e
    for phi, pi in oc.factorizations[theta]:
        if not oc.is_fibrewise_trivial(pi):
            continue
        card = oc.mor_card[pi]
        fib_theta = oc.fibres[theta]
        fib_phi = oc.fibres[phi]
        moved = []
        for i2 in range(1, card.dom_card + 1):
            j = card(i2)
            if fib_theta[j - 1] != fib_phi[i2 - 1]:
                raise AssertionError(
                    f"fibre mismatch for {pi} . {phi} at {i2}: corrupted tables")
            moved.append(y[j - 1])
        yield TensorElement(P.act(x, pi), phi, tuple(moved))


def wedge(oc: OperadicCategory, P: Presheaf, Q: Presheaf,
          reverse: bool = False) -> Wedge:
    """Classes of ``X * Y`` under the generated relation, and the induced action
    ``[x, phi, y] . sigma = [x, phi sigma, (y_i . sigma^phi_i)_i]``.

    ``reverse`` applies generators in the opposite order; the partition is
    the same either way.
    """
    T = tensor(oc, P.carrier, Q.carrier)
    classes: dict[str, tuple[WedgeClass, ...]] = {}
    class_of: dict[tuple[str, TensorElement], TensorElement] = {}
    for c, elems in T.sets.items():
        pos = {e: k for k, e in enumerate(elems)}
        uf = _UnionFind(len(elems))
        order = range(len(elems) - 1, -1, -1) if reverse else range(len(elems))
        for k in order:
            for g in _generators(oc, P, elems[k]):
                uf.union(k, pos[g])
        groups: dict[int, list] = {}
        for k, e in enumerate(elems):
            groups.setdefault(uf.find(k), []).append(e)
        cls = tuple(WedgeClass(elems[root], tuple(ms))
                    for root, ms in sorted(groups.items()))
        classes[c] = cls
        for wc in cls:
            for m in wc.members:
                class_of[c, m] = wc.representative
    carrier = Collection({c: tuple(wc.representative for wc in v)
                          for c, v in classes.items()})
    act = {}
    for sigma in oc.ft_morphisms:
        b, c = oc.dom(sigma), oc.cod(sigma)
        for wc in classes.get(c, ()):
            images = set()
            for m in wc.members:
                x, phi, y = m
                fm = oc.fibre_mors[phi, sigma]
                moved = TensorElement(x, oc.compose(phi, sigma),
                                      tuple(Q.act(yi, s) for yi, s in zip(y, fm)))
                images.add(class_of[b, moved])
            if len(images) != 1:
                raise AssertionError(
                    f"induced action depends on the representative at {render(wc.representative)}")
            act[sigma, wc.representative] = images.pop()
    return Wedge(classes, class_of, Presheaf(carrier, act))


def wedge_structure_map(oc: OperadicCategory, kind: str, *inputs):
    """The structure maps induced on classes.

    ``alpha``: inputs ``(P, Q, R)``; ``lambda``: ``(P,)``; ``rho``: ``(P,)``.
    Returns ``(domain, codomain, mapping)`` where domain and codomain are
    collections of class representatives and ``mapping`` sends
    ``(object, representative)`` to a representative.  Every member of each
    domain class is checked to land in the same codomain class.
    """
    if kind == "alpha":
        P, Q, R = inputs
        PQ = wedge(oc, P, Q)
        L = wedge(oc, PQ.presheaf, R)
        QR = wedge(oc, Q, R)
        Rt = wedge(oc, P, QR.presheaf)

        def image(c, outer):
            inner, phi, z = outer
            out = alpha(oc, TensorElement(inner, phi, z))
            ys = tuple(QR.project(oc.fibres[out.phi][j], t)
                       for j, t in enumerate(out.ys))
            return Rt.project(c, TensorElement(out.x, out.phi, ys))

        mapping = {}
        for c, cls in L.classes.items():
            for wc in cls:
                images = set()
                for outer in wc.members:
                    inner_c = oc.cod(outer.phi)
                    for m in PQ.members(inner_c, outer.x):
                        images.add(image(c, TensorElement(m, outer.phi, outer.ys)))
                if len(images) != 1:
                    raise AssertionError(
                        f"alpha on classes depends on the representative at {render(wc.representative)}")
                mapping[c, wc.representative] = images.pop()
        return L.presheaf.carrier, Rt.presheaf.carrier, mapping
    if kind == "lambda":
        (P,) = inputs
        W = wedge(oc, unit_presheaf(oc), P)
        mapping = {}
        for c, cls in W.classes.items():
            for wc in cls:
                images = {lam(oc, m) for m in wc.members}
                if len(images) != 1:
                    raise AssertionError(
                        f"lambda on classes depends on the representative at {render(wc.representative)}")
                mapping[c, wc.representative] = images.pop()
        return W.presheaf.carrier, P.carrier, mapping
    if kind == "rho":
        (P,) = inputs
        W = wedge(oc, P, unit_presheaf(oc))
        mapping = {(c, x): W.project(c, rho(oc, c, x)) for c, x in P.carrier.elements()}
        return P.carrier, W.presheaf.carrier, mapping
    raise ValueError(f"unknown structure map {kind!r}")


@dataclass
class Bijectivity:
    bijective: bool
    witness: Optional[tuple]


def bijectivity(domain: Collection, codomain: Collection, mapping: dict,
                in_range=None) -> Bijectivity:
    """Decide bijectivity by enumerating both sides.

    ``in_range(c, y)`` optionally restricts the surjectivity test to the
    part of the codomain a truncated fixture can reach.
    """
    seen: dict = {}
    for c, x in domain.elements():
        y = mapping[c, x]
        if not codomain.contains(c, y):
            return Bijectivity(False, ("ill-typed", c, render(x), render(y)))
        if (c, y) in seen:
            return Bijectivity(False, ("not injective", c, render(seen[c, y]), render(x)))
        seen[c, y] = x
    for c, y in codomain.elements():
        if (c, y) not in seen and (in_range is None or in_range(c, y)):
            return Bijectivity(False, ("not surjective", c, render(y)))
    return Bijectivity(True, None)


def alpha_target_in_range(oc: OperadicCategory):
    """Whether an element ``(x, theta, ((y_j, tau_j, z_j))_j)`` can have an
    ``alpha`` preimage inside the fixture: the middle object would have
    cardinality ``sum |cod tau_j|``."""
    top = max(oc.obj_card.values(), default=0)

    def ok(c, e):
        return sum(oc.card(oc.cod(t.phi)) for t in e.ys) <= top
    return ok


def wedge_bijectivity_check(oc: OperadicCategory, samples: list[tuple]
                            ) -> ValidationReport:
    """Bijectivity of the induced ``alpha``, ``lambda``, ``rho`` on sampled presheaves.

    ``samples`` is a list of ``(P, Q, R)``.  Stats record per-map verdicts;
    a failing map contributes a failure with its witness.
    """
    rep = ValidationReport("wedge")
    verdict = {"alpha": True, "lambda": True, "rho": True}
    rng_ok = alpha_target_in_range(oc)
    for k, (P, Q, R) in enumerate(samples):
        for kind, inputs in (("alpha", (P, Q, R)), ("lambda", (P,)), ("rho", (P,))):
            dom, cod, mapping = wedge_structure_map(oc, kind, *inputs)
            rep.count(f"{kind}_elements", dom.size())
            b = bijectivity(dom, cod, mapping, rng_ok if kind == "alpha" else None)
            if not b.bijective:
                verdict[kind] = False
                rep.fail(kind, f"{kind} on classes is not bijective", k, *b.witness)
    for kind, v in verdict.items():
        rep.stats[f"{kind}_bijective"] = v
    return rep


# ------------------------------------------------------------ left normal

def left_normal_check(oc: OperadicCategory) -> tuple[bool, Optional[tuple]]:
    """Every object maps to a trivial object, and for each ``c`` the maps from
    ``c`` to trivial objects are connected under ``phi ~ pi phi`` with ``pi``
    fibrewise trivial between trivial objects."""
    triv = oc.trivial
    for c in oc.objects:
        to_triv = [f for f in oc.base.out_of[c] if oc.cod(f) in triv]
        if not to_triv:
            return False, (c,)
        comp = {f: f for f in to_triv}

        def find(f):
            while comp[f] != f:
                f = comp[f]
            return f
        for f in to_triv:
            for pi in oc.base.out_of[oc.cod(f)]:
                if oc.cod(pi) in triv and oc.is_fibrewise_trivial(pi):
                    a, b = find(f), find(oc.compose(pi, f))
                    if a != b:
                        comp[b] = a
        roots = {}
        for f in to_triv:
            roots.setdefault(find(f), f)
        if len(roots) > 1:
            a, b = list(roots.values())[:2]
            return False, (c, a, b)
    return True, None


# ---------------------------------------------------------------- Hopf

def _families(choices: list[list[str]], cards: dict[str, int], top: int
              ) -> list[tuple]:
    """Families from ``choices`` whose codomain cardinalities sum to at most ``top``."""
    fams: list[tuple[tuple, int]] = [((), 0)]
    for ch in choices:
        opts = [(g, cards[g]) for g in ch]
        fams = [(f + (g,), s + w) for f, s in fams for g, w in opts if s + w <= top]
    return [f for f, _ in fams]


def _count_families(choices, cards, top) -> int:
    counts = {0: 1}
    for ch in choices:
        nxt: dict[int, int] = {}
        for s, n in counts.items():
            for f in ch:
                t = s + cards[f]
                if t <= top:
                    nxt[t] = nxt.get(t, 0) + n
        counts = nxt
    return sum(counts.values())


def hopf_sufficient_check(oc: OperadicCategory, mode: str = "all",
                          cap: int = 10 ** 6, thetas=None) -> ValidationReport:
    """Search, for every ``theta`` and family ``omega`` out of its fibres, for a
    factorization ``theta = psi phi`` and fibrewise trivial ``sigma`` with
    ``sigma_j . phi^psi_j = omega_j`` through which every other such
    ``(phi', psi', tau)`` factors via some ``pi`` (``pi phi' = phi``,
    ``psi pi = psi'``, ``sigma_j . pi^psi_j = tau_j``).

    ``mode`` is ``"all"`` (every ``omega``) or ``"ft"`` (fibrewise trivial
    ``omega`` only).  Families are restricted to codomain cardinality at most
    the largest present, the range a truncated fixture can answer for.  All
    failing ``(theta, omega)`` are reported: ``H1`` when no factorization
    exists, ``H2`` when none is weakly terminal.  ``cap`` bounds both the
    number of ``(phi, psi, sigma)`` generated and the number of families
    enumerated while looking for unreachable ``omega``.  ``thetas``
    restricts the scan to the given morphisms.
    """
    if mode not in ("all", "ft"):
        raise ValueError(f"unknown mode {mode!r}")
    rep = ValidationReport("hopf")
    top = max(oc.obj_card.values(), default=0)
    cards = {f: oc.card(oc.cod(f)) for f in oc.morphisms}
    ft = oc._ft_set
    ft_out = {c: [f for f in oc.base.out_of[c] if f in ft] for c in oc.objects}
    choice_out = ft_out if mode == "ft" else oc.base.out_of
    fact = oc.factorizations
    comp, fm = oc.base.composition, oc.fibre_mors
    budget = [0, 0]   # (factorization, sigma) lifts; enumerated omega families
    # pi with pi . phi' = phi, grouped by phi'
    over: dict[str, dict[str, list[str]]] = {}
    for f in oc.morphisms:
        grp: dict[str, list[str]] = {}
        for a, pi in fact[f]:
            grp.setdefault(a, []).append(pi)
        over[f] = grp

    def mediates(s, t) -> bool:
        phi, psi, sigma = s
        phi2, psi2, tau = t
        for pi in over[phi].get(phi2, ()):
            if comp[psi, pi] != psi2:
                continue
            pm = fm[psi, pi]
            if all(comp[sj, m] == tj for sj, m, tj in zip(sigma, pm, tau)):
                return True
        return False

    if thetas is None:
        thetas = list(oc.morphisms)
    else:
        thetas = list(thetas)
        for t in thetas:
            if t not in oc.morphisms:
                raise KeyError(f"unknown morphism {t!r}")
    for theta in thetas:
        sols: dict[tuple, list] = {}
        for phi, psi in fact[theta]:
            f = fm[psi, phi]
            for sigma in product(*(ft_out[v] for v in oc.fibres[psi])):
                budget[0] += 1
                if budget[0] > cap:
                    raise CapExceeded(f"hopf-check enumeration exceeds cap {cap} at {theta}")
                omega = tuple(comp[s, m] for s, m in zip(sigma, f))
                if mode == "ft" and not all(w in ft for w in omega):
                    continue
                sols.setdefault(omega, []).append((phi, psi, sigma))
        rep.count("thetas")
        choices = [list(choice_out[v]) for v in oc.fibres[theta]]
        expected = _count_families(choices, cards, top)
        rep.count("families", expected)
        if len(sols) != expected:
            budget[1] += expected
            if budget[1] > cap:
                raise CapExceeded(f"hopf-check enumeration exceeds cap {cap} at {theta}")
            for omega in _families(choices, cards, top):
                if omega not in sols:
                    rep.fail("H1", "no factorization of omega through a fibrewise trivial family",
                             theta, omega)
        for omega, S in sols.items():
            if not any(all(t is s or mediates(s, t) for t in S) for s in S):
                rep.fail("H2", "no weakly terminal factorization", theta, omega,
                         tuple(S))
    rep.stats["lifts"] = budget[0]
    rep.stats["enumerated_families"] = budget[1]
    return rep
