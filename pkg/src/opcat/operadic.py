"""Operadic categories as explicit tables, and their validation.

An operadic category carries, on top of a finite category, a cardinality for
every object and morphism, the fibres ``psi^-1 i`` of every morphism, and the
fibre morphisms ``phi^psi_i: (psi phi)^-1 i -> psi^-1 i``.  ``fibre_mors`` is
keyed by ``(outer, inner) = (psi, phi)`` and holds the whole family over
``|cod psi|``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .core import (FinCategory, FinFunction, ValidationReport, fibre_data,
                   fibre_restrict, validate_category)


@dataclass(frozen=True)
class OperadicCategory:
    base: FinCategory
    obj_card: dict[str, int]
    mor_card: dict[str, FinFunction]
    fibres: dict[str, tuple[str, ...]]
    fibre_mors: dict[tuple[str, str], tuple[str, ...]]
    expected_trivial: Optional[frozenset] = None
    name: str = field(default="", compare=False)

    # thin delegation to the base category
    @property
    def objects(self) -> tuple[str, ...]:
        return self.base.objects

    @property
    def morphisms(self) -> dict[str, tuple[str, str]]:
        return self.base.morphisms

    def dom(self, f: str) -> str:
        return self.base.dom(f)

    def cod(self, f: str) -> str:
        return self.base.cod(f)

    def identity(self, c: str) -> str:
        return self.base.identity(c)

    def compose(self, g: str, f: str) -> str:
        return self.base.compose(g, f)

    def card(self, c: str) -> int:
        return self.obj_card[c]

    def fibre(self, psi: str, i: int) -> str:
        """``psi^-1 i`` for 1-based ``i``."""
        fib = self.fibres[psi]
        if not 1 <= i <= len(fib):
            raise IndexError(f"fibre index {i} out of range for {psi}")
        return fib[i - 1]

    def fibre_morphism(self, phi: str, psi: str, i: int) -> str:
        """``phi^psi_i``; requires ``cod phi = dom psi``."""
        fam = self.fibre_mors[psi, phi]
        if not 1 <= i <= len(fam):
            raise IndexError(f"fibre index {i} out of range for {psi}")
        return fam[i - 1]

    def embed(self, psi: str, j: int) -> tuple[int, ...]:
        return self._fibre_data(psi)[j - 1].embed

    def _fibre_data(self, psi: str):
        cache = self.__dict__.setdefault("_fd_cache", {})
        fd = cache.get(psi)
        if fd is None:
            fd = cache[psi] = fibre_data(self.mor_card[psi])
        return fd

    @cached_property
    def trivial(self) -> frozenset:
        return frozenset(_derive_trivial(self))

    def is_trivial(self, u: str) -> bool:
        return u in self.trivial

    @cached_property
    def ft_morphisms(self) -> tuple[str, ...]:
        """Fibrewise trivial morphisms in enumeration order."""
        triv = self.trivial
        return tuple(f for f in self.morphisms
                     if all(v in triv for v in self.fibres.get(f, ())))

    def is_fibrewise_trivial(self, f: str) -> bool:
        return f in self._ft_set

    @cached_property
    def _ft_set(self) -> frozenset:
        return frozenset(self.ft_morphisms)

    @cached_property
    def factorizations(self) -> dict[str, tuple[tuple[str, str], ...]]:
        """For each ``theta``, every ``(phi, psi)`` with ``psi . phi = theta``."""
        out: dict[str, list[tuple[str, str]]] = {f: [] for f in self.morphisms}
        for phi, psi in self.base.composable_pairs():
            out[self.compose(psi, phi)].append((phi, psi))
        return {k: tuple(v) for k, v in out.items()}


def _derive_trivial(oc: OperadicCategory):
    for u in oc.objects:
        if oc.obj_card.get(u) != 1:
            continue
        if _acts_as_domain(oc, u):
            yield u


def _acts_as_domain(oc: OperadicCategory, u: str) -> bool:
    """Whether ``R_u`` is the domain functor."""
    base = oc.base
    for psi in base.into.get(u, ()):
        if oc.fibres.get(psi) != (base.dom(psi),):
            return False
        for phi in base.into.get(base.dom(psi), ()):
            if oc.fibre_mors.get((psi, phi)) != (phi,):
                return False
    return True


def trivial_objects(oc: OperadicCategory) -> frozenset:
    """The trivial objects, cross-checked against the fibres of identities.

    An object is trivial exactly when it is a fibre of its own identity; a
    disagreement means ``oc`` is not a valid operadic category.
    """
    triv = oc.trivial
    for u in oc.objects:
        by_fibre = oc.fibres.get(oc.identity(u)) == (u,)
        assert by_fibre == (u in triv) or not validate_operadic(oc).passed, u
    return triv


def is_genuine(oc: OperadicCategory) -> tuple[bool, Optional[tuple[str, int]]]:
    """Every object has exactly one morphism to a trivial object.

    Returns ``(flag, witness)`` where the witness is ``(object, count)``.
    """
    triv = oc.trivial
    for c in oc.objects:
        n = sum(1 for f in oc.base.out_of[c] if oc.cod(f) in triv)
        if n != 1:
            return False, (c, n)
    return True, None


def validate_operadic(oc: OperadicCategory) -> ValidationReport:
    """Check every condition an operadic category must satisfy.

    Check ids: C* (underlying category), V1 cardinality functor, V2 fibre
    cardinalities, V3 fibre morphism typing, V4 R preserves identities, V5 R
    preserves composition, V6 fibres of identities are trivial, V7/V8 the
    double slice condition on objects/morphisms, V9 R_u is the domain functor
    for trivial u, T0 declared trivial set.
    """
    rep = validate_category(oc.base)
    rep.check = "validate"
    if not rep.passed:
        return rep
    base = oc.base
    for c in oc.objects:
        if not isinstance(oc.obj_card.get(c), int) or oc.obj_card[c] < 0:
            rep.fail("V1", "missing object cardinality", c)
    if not rep.passed:
        return rep

    # V1
    for f, (d, c) in base.morphisms.items():
        fc = oc.mor_card.get(f)
        if fc is None:
            rep.fail("V1", "missing cardinality of morphism", f)
        elif not fc.is_valid() or fc.dom_card != oc.obj_card[d] or \
                fc.cod_card != oc.obj_card[c]:
            rep.fail("V1", "cardinality of morphism has wrong type", f)
    if not rep.passed:
        return rep
    for c in oc.objects:
        if not oc.mor_card[base.identity(c)].is_identity():
            rep.fail("V1", "|id| is not an identity", base.identity(c))
    for (g, f), gf in base.composition.items():
        if oc.mor_card[f].then(oc.mor_card[g]) != oc.mor_card[gf]:
            rep.fail("V1", "|g.f| != |g|.|f|", g, f)

    # V2
    for psi in base.morphisms:
        fib = oc.fibres.get(psi)
        fd = oc._fibre_data(psi)
        if fib is None:
            rep.fail("V2", "missing fibres", psi)
            continue
        if len(fib) != len(fd):
            rep.fail("V2", "wrong number of fibres", psi)
            continue
        for i, (obj, data) in enumerate(zip(fib, fd), start=1):
            if obj not in oc.obj_card:
                rep.fail("V2", "fibre is not an object", psi, i, obj)
            elif oc.obj_card[obj] != data.card:
                rep.fail("V2", "fibre has wrong cardinality", psi, i, obj)

    # V3
    for phi, psi in base.composable_pairs():
        rep.count("pairs")
        fam = oc.fibre_mors.get((psi, phi))
        n = oc.obj_card[base.cod(psi)]
        if fam is None:
            rep.fail("V3", "missing fibre morphisms", psi, phi)
            continue
        if len(fam) != n:
            rep.fail("V3", "wrong number of fibre morphisms", psi, phi)
            continue
        psiphi = base.compose(psi, phi)
        for j, m in enumerate(fam, start=1):
            if m not in base.morphisms:
                rep.fail("V3", "fibre morphism is not a morphism", psi, phi, j, m)
                continue
            want = (_fib(oc, psiphi, j), _fib(oc, psi, j))
            if base.morphisms[m] != want:
                rep.fail("V3", "fibre morphism has wrong type", psi, phi, j, m)
            elif oc.mor_card[m] != fibre_restrict(oc.mor_card[phi],
                                                  oc.mor_card[psi], j):
                rep.fail("V3", "fibre morphism has wrong cardinality",
                         psi, phi, j, m)
    if not rep.passed:
        return rep

    # V4
    for psi, (d, e) in base.morphisms.items():
        fam = oc.fibre_mors[psi, base.identity(d)]
        for j, m in enumerate(fam, start=1):
            if m != base.identity(oc.fibres[psi][j - 1]):
                rep.fail("V4", "R does not preserve the identity", psi, j, m)

    # V5, V8: over composable triples phi, psi, theta (innermost first)
    _check_triples(oc, rep)

    # V6
    triv = oc.trivial
    for c in oc.objects:
        for i, u in enumerate(oc.fibres[base.identity(c)], start=1):
            if u not in triv:
                rep.fail("V6", "fibre of an identity is not trivial", c, i, u)

    # V7
    for phi, psi in base.composable_pairs():
        fam = oc.fibre_mors[psi, phi]
        for j, m in enumerate(fam, start=1):
            emb = oc.embed(psi, j)
            for t, obj in enumerate(oc.fibres[m], start=1):
                if obj != oc.fibres[phi][emb[t - 1] - 1]:
                    rep.fail("V7", "(phi^psi_j)^-1 t != phi^-1 i", phi, psi, j, t)

    # V9 and the declared trivial set
    declared = oc.expected_trivial or frozenset()
    for u in oc.objects:
        if u in triv or u in declared:
            if oc.obj_card[u] != 1 or not _acts_as_domain(oc, u):
                rep.fail("V9", "R_u is not the domain functor", u)
    if oc.expected_trivial is not None and oc.expected_trivial != triv:
        rep.fail("T0", "declared trivial objects differ from derived",
                 *sorted(oc.expected_trivial ^ triv))
    rep.stats["trivial"] = len(triv)
    return rep


def _check_triples(oc: OperadicCategory, rep: ValidationReport) -> None:
    ix = oc.base.index
    K = max(oc.obj_card.values(), default=0)
    if K == 0:
        rep.count("triples", sum(len(t[0]) for t in ix.triples()))
        return
    n = len(ix.labels)
    pos = ix.pos
    FM = np.full((n, n, K), -1, dtype=np.int32)
    for (g, f), fam in oc.fibre_mors.items():
        if fam:
            FM[pos[g], pos[f], :len(fam)] = [pos[m] for m in fam]
    EMB = np.full((n, K, K), -1, dtype=np.int32)
    for f in ix.labels:
        for j, fib in enumerate(oc._fibre_data(f)):
            EMB[pos[f], j, :fib.card] = [e - 1 for e in fib.embed]
    cod_card = np.array([oc.obj_card[oc.cod(f)] for f in ix.labels], dtype=np.int64)
    found = []
    offset = 0
    L = ix.labels
    for f, g, h in ix.triples():
        rep.count("triples", len(f))
        tpsi = ix.comp[h, g]
        psiphi = ix.comp[g, f]
        for j in range(K):
            live = cod_card[h] > j
            if not live.any():
                continue
            a = FM[tpsi, f, j]
            b = FM[h, g, j]
            c = FM[h, psiphi, j]
            bad = live & (ix.comp[b, a] != c)
            for k in np.nonzero(bad)[0]:
                found.append((offset + k, j, -1, "V5",
                              "psi^theta . phi^(theta psi) != (psi phi)^theta",
                              (L[f[k]], L[g[k]], L[h[k]], j + 1)))
            for t in range(K):
                live_t = live & (cod_card[b] > t)
                if not live_t.any():
                    continue
                lhs = FM[b, a, t]
                rhs = FM[g, f, EMB[h, j, t]]
                bad = live_t & (lhs != rhs)
                for k in np.nonzero(bad)[0]:
                    found.append((offset + k, j, t, "V8",
                                  "(phi^(theta psi))^(psi^theta) != phi^psi",
                                  (L[f[k]], L[g[k]], L[h[k]], j + 1, t + 1)))
        offset += len(f)
    for *_, cid, msg, wit in sorted(found, key=lambda r: r[:3]):
        rep.fail(cid, msg, *wit)


def _fib(oc: OperadicCategory, psi: str, j: int):
    fib = oc.fibres.get(psi, ())
    return fib[j - 1] if j <= len(fib) else None


@dataclass(frozen=True)
class OperadicFunctorData:
    source: OperadicCategory
    target: OperadicCategory
    obj_map: dict[str, str]
    mor_map: dict[str, str]


def validate_functor(F: OperadicFunctorData) -> ValidationReport:
    """Check that ``F`` is a strict operadic functor."""
    rep = ValidationReport("functor")
    C, D = F.source, F.target
    for c in C.objects:
        if F.obj_map.get(c) not in D.obj_card:
            rep.fail("F0", "object map not total", c)
    for f in C.morphisms:
        if F.mor_map.get(f) not in D.morphisms:
            rep.fail("F0", "morphism map not total", f)
    if not rep.passed:
        return rep
    Fo, Fm = F.obj_map, F.mor_map
    for f, (d, c) in C.morphisms.items():
        if D.morphisms[Fm[f]] != (Fo[d], Fo[c]):
            rep.fail("F1", "F f has wrong type", f)
    for c in C.objects:
        if Fm[C.identity(c)] != D.identity(Fo[c]):
            rep.fail("F1", "F does not preserve the identity", c)
    if not rep.passed:
        return rep
    for (g, f), gf in C.base.composition.items():
        if D.compose(Fm[g], Fm[f]) != Fm[gf]:
            rep.fail("F1", "F does not preserve composition", g, f)
    for c in C.objects:
        if D.obj_card[Fo[c]] != C.obj_card[c]:
            rep.fail("F2", "|Fc| != |c|", c)
    for f in C.morphisms:
        if D.mor_card[Fm[f]] != C.mor_card[f]:
            rep.fail("F2", "|Ff| != |f|", f)
    if not rep.passed:
        return rep
    for psi in C.morphisms:
        if tuple(Fo[v] for v in C.fibres[psi]) != D.fibres[Fm[psi]]:
            rep.fail("F3", "F does not commute with fibres", psi)
    for phi, psi in C.base.composable_pairs():
        if tuple(Fm[m] for m in C.fibre_mors[psi, phi]) != \
                D.fibre_mors[Fm[psi], Fm[phi]]:
            rep.fail("F3", "F does not commute with fibre morphisms", psi, phi)
    if rep.passed:
        # trivial objects are preserved by any strict operadic functor
        for u in C.trivial:
            assert Fo[u] in D.trivial, u
    return rep


def identity_functor(oc: OperadicCategory) -> OperadicFunctorData:
    return OperadicFunctorData(oc, oc, {c: c for c in oc.objects},
                               {f: f for f in oc.morphisms})
