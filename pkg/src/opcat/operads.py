"""Operads as monoids for the substitution tensor of collections.

An operad is a collection ``T`` with a unit ``eta_u`` at each trivial object
and a multiplication ``mu(phi)(x, ys)`` for ``phi: c -> d``, ``x`` in ``T_d``
and ``ys[i-1]`` in ``T`` at the ``i``-th fibre of ``phi``.  The table is
keyed by ``(phi, x, ys)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Iterator

from .core import CapExceeded, FinCategory, ValidationReport
from .normalization import Presheaf
from .operadic import OperadicCategory


@dataclass(frozen=True)
class Operad:
    sets: dict[str, tuple]
    unit: dict[str, Any] = field(default_factory=dict)
    mult: dict[tuple, Any] = field(default_factory=dict)

    def at(self, c: str) -> tuple:
        return self.sets.get(c, ())

    def mu(self, phi: str, x, ys: tuple):
        return self.mult[phi, x, tuple(ys)]


def mult_domain(oc: OperadicCategory, sets: dict[str, tuple]
                ) -> Iterator[tuple[str, Any, tuple]]:
    """Every well-typed key ``(phi, x, ys)`` in enumeration order."""
    for phi in oc.morphisms:
        fams = [sets.get(v, ()) for v in oc.fibres[phi]]
        for x in sets.get(oc.cod(phi), ()):
            for ys in product(*fams):
                yield phi, x, ys


def validate_operad(oc: OperadicCategory, T: Operad) -> ValidationReport:
    """Typing, associativity and both unit laws, over every typed input."""
    rep = ValidationReport("operad")
    members = {c: set(xs) for c, xs in T.sets.items()}
    for u in oc.trivial:
        if u not in T.unit:
            rep.fail("T0", "unit missing", u)
        elif T.unit[u] not in members.get(u, ()):
            rep.fail("T0", "unit outside T_u", u, T.unit[u])
    for u in T.unit:
        if u not in oc.trivial:
            rep.fail("T0", "unit at a non-trivial object", u)
    keys = set()
    for key in mult_domain(oc, T.sets):
        keys.add(key)
        if key not in T.mult:
            rep.fail("T1", "multiplication undefined", *key)
        elif T.mult[key] not in members.get(oc.dom(key[0]), ()):
            rep.fail("T1", "multiplication lands outside T", *key)
    for key in T.mult:
        if key not in keys:
            rep.fail("T1", "multiplication entry off its typed domain", *key)
    if not rep.passed:
        return rep

    mu = T.mu
    # associativity: mu(phi)(mu(psi)(x, y), z) = mu(psi phi)(x, (mu(phi^psi_j)(y_j, z|_j))_j)
    for phi, psi in oc.base.composable_pairs():
        fam = oc.fibre_mors[psi, phi]
        embeds = [oc.embed(psi, j) for j in range(1, len(fam) + 1)]
        ys_choices = [T.at(v) for v in oc.fibres[psi]]
        zs_choices = [T.at(v) for v in oc.fibres[phi]]
        comp = oc.compose(psi, phi)
        for x in T.at(oc.cod(psi)):
            for y in product(*ys_choices):
                inner = mu(psi, x, y)
                for z in product(*zs_choices):
                    rep.count("associativity")
                    lhs = mu(phi, inner, z)
                    rhs = mu(comp, x, tuple(
                        mu(m, y[j], tuple(z[i - 1] for i in embeds[j]))
                        for j, m in enumerate(fam)))
                    if lhs != rhs:
                        rep.fail("A", "associativity fails", phi, psi, x, y, z)
    for phi in oc.morphisms:
        u = oc.cod(phi)
        if u in oc.trivial:
            for x in T.at(oc.dom(phi)):
                rep.count("left_unit")
                if mu(phi, T.unit[u], (x,)) != x:
                    rep.fail("L", "left unit law fails", phi, x)
    for c in oc.objects:
        i = oc.identity(c)
        etas = tuple(T.unit[v] for v in oc.fibres[i])
        for x in T.at(c):
            rep.count("right_unit")
            if mu(i, x, etas) != x:
                rep.fail("R", "right unit law fails", c, x)
    return rep


def terminal_operad(oc: OperadicCategory, label: str = "*") -> Operad:
    sets = {c: (label,) for c in oc.objects}
    return Operad(sets, {u: label for u in oc.trivial},
                  {key: label for key in mult_domain(oc, sets)})


def operad_from_presheaf(oc: OperadicCategory, P: Presheaf) -> Operad:
    """Over a category with every cardinality zero: ``mu(phi)(x, ()) = x . phi``.

    Every morphism is fibrewise trivial there, so ``P.action`` covers all of
    them.  No functoriality check is made here; ``validate_operad`` decides.
    """
    if any(oc.obj_card[c] for c in oc.objects):
        raise ValueError("operad_from_presheaf needs every cardinality to be 0")
    mult = {(phi, x, ()): P.action[phi, x]
            for phi in oc.morphisms for x in P.carrier.at(oc.cod(phi))}
    return Operad(dict(P.carrier.sets), {}, mult)


def _labels(sizes: dict[str, int]) -> dict[str, tuple]:
    return {c: tuple(f"t{k}@{c}" for k in range(n)) for c, n in sizes.items() if n}


def enumerate_operads(oc: OperadicCategory, sizes: dict[str, int],
                      cap: int = 10 ** 6) -> int:
    """Count ``(unit, mult)`` tables on sets of the given sizes that satisfy
    the operad laws, by exhaustive search."""
    sets = _labels(sizes)
    keys = list(mult_domain(oc, sets))
    triv = sorted(oc.trivial, key=oc.objects.index)
    unit_choices = [sets.get(u, ()) for u in triv]
    mult_choices = [sets.get(oc.dom(k[0]), ()) for k in keys]
    total = 1
    for ch in unit_choices + mult_choices:
        total *= len(ch)
    if total > cap:
        raise CapExceeded(f"{total} candidate tables exceed cap {cap}")
    count = 0
    for us in product(*unit_choices):
        unit_tab = dict(zip(triv, us))
        for ms in product(*mult_choices):
            T = Operad(sets, unit_tab, dict(zip(keys, ms)))
            if validate_operad(oc, T).passed:
                count += 1
    return count


def count_presheaf_actions(cat: FinCategory, sizes: dict[str, int],
                           cap: int = 10 ** 6) -> int:
    """Number of contravariant functorial actions on sets of the given sizes.

    Independent of the operad machinery: one function ``X_b -> X_a`` per
    morphism ``a -> b``, kept when identities act trivially and
    ``(x . g) . f = x . (g f)``.
    """
    sets = {c: list(range(sizes.get(c, 0))) for c in cat.objects}
    mors = list(cat.morphisms)
    tables = [list(product(sets[cat.dom(f)], repeat=len(sets[cat.cod(f)])))
              for f in mors]
    total = 1
    for t in tables:
        total *= len(t)
    if total > cap:
        raise CapExceeded(f"{total} candidate actions exceed cap {cap}")
    pairs = list(cat.composable_pairs())
    count = 0
    for choice in product(*tables):
        act = dict(zip(mors, choice))
        if any(act[cat.identity(c)] != tuple(sets[c]) for c in cat.objects):
            continue
        if all(act[f][act[g][x]] == act[cat.compose(g, f)][x]
               for f, g in pairs for x in sets[cat.cod(g)]):
            count += 1
    return count
