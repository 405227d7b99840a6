"""The skew monoidal category of collections over an operadic category.

A collection assigns a finite set of hashable elements to each object.  An
element of ``(X * Y)_c`` is a :class:`TensorElement` ``(x, phi, ys)`` with
``phi: c -> d``, ``x`` in ``X_d`` and ``ys[i-1]`` in ``Y`` at the ``i``-th
fibre of ``phi``.  The unit has one element at each trivial object, namely
the object label itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Callable, Iterator, NamedTuple, Optional

from .core import CapExceeded, FinFunction, ValidationReport
from .operadic import (OperadicCategory, OperadicFunctorData, is_genuine,
                       validate_functor, validate_operadic)


class TypingError(ValueError):
    """An element does not lie where a structure map expects it."""


class TensorElement(NamedTuple):
    x: Any
    phi: Any
    ys: tuple

    def render(self) -> str:
        return f"({render(self.x)}, {render(self.phi)}, [{', '.join(map(render, self.ys))}])"


def render(e) -> str:
    if isinstance(e, TensorElement):
        return e.render()
    if isinstance(e, FinFunction):
        return f"<{e.render()}>"
    return str(e)


@dataclass(frozen=True)
class Collection:
    """``sets[c]`` is ``X_c``; absent keys are empty."""
    sets: dict[str, tuple] = field(default_factory=dict)

    def at(self, c: str) -> tuple:
        return self.sets.get(c, ())

    def elements(self) -> Iterator[tuple[str, Any]]:
        for c, xs in self.sets.items():
            for x in xs:
                yield c, x

    def contains(self, c: str, x) -> bool:
        return x in self._members.get(c, ())

    @cached_property
    def _members(self) -> dict[str, frozenset]:
        return {c: frozenset(xs) for c, xs in self.sets.items()}

    def size(self) -> int:
        return sum(len(xs) for xs in self.sets.values())

    def sizes(self) -> dict[str, int]:
        return {c: len(xs) for c, xs in self.sets.items() if xs}


# ---------------------------------------------------------------- tensor

def iter_tensor_at(oc: OperadicCategory, X: Collection, Y: Collection,
                   c: str) -> Iterator[TensorElement]:
    for phi in oc.base.out_of[c]:
        xs = X.at(oc.cod(phi))
        if not xs:
            continue
        fams = [Y.at(v) for v in oc.fibres[phi]]
        for x in xs:
            for ys in product(*fams):
                yield TensorElement(x, phi, ys)


def tensor(oc: OperadicCategory, X: Collection, Y: Collection) -> Collection:
    out = {}
    for c in oc.objects:
        elems = tuple(iter_tensor_at(oc, X, Y, c))
        if elems:
            out[c] = elems
    return Collection(out)


def tensor_size(oc: OperadicCategory, X: Collection, Y: Collection) -> int:
    """``|X * Y|`` without enumerating it."""
    total = 0
    for phi in oc.morphisms:
        n = len(X.at(oc.cod(phi)))
        for v in oc.fibres[phi]:
            n *= len(Y.at(v))
        total += n
    return total


def unit(oc: OperadicCategory) -> Collection:
    return Collection({u: (u,) for u in oc.objects if u in oc.trivial})


def in_tensor(oc: OperadicCategory, X: Collection, Y: Collection, c: str, e) -> bool:
    """Membership of ``e`` in ``(X * Y)_c`` without enumerating the tensor."""
    if not isinstance(e, TensorElement) or e.phi not in oc.morphisms:
        return False
    if oc.dom(e.phi) != c or not X.contains(oc.cod(e.phi), e.x):
        return False
    fib = oc.fibres[e.phi]
    return len(e.ys) == len(fib) and all(
        Y.contains(v, y) for v, y in zip(fib, e.ys))


# ---------------------------------------------------------- structure maps

def alpha(oc: OperadicCategory, e: TensorElement) -> TensorElement:
    """``(x, psi, y, phi, z) -> (x, psi phi, (y_j, phi^psi_j, z|_j)_j)``.

    ``z|_j`` lists ``z`` at the positions of the ``j``-th fibre of ``|psi|``.
    """
    try:
        (x, psi, y), phi, z = e
        if oc.cod(phi) != oc.dom(psi) or len(y) != oc.card(oc.cod(psi)) \
                or len(z) != oc.card(oc.cod(phi)):
            raise TypingError(f"alpha: ill-typed input {render(e)}")
        fam = oc.fibre_mors[psi, phi]
        inner = tuple(
            TensorElement(y[j - 1], m, tuple(z[i - 1] for i in oc.embed(psi, j)))
            for j, m in enumerate(fam, start=1))
        return TensorElement(x, oc.compose(psi, phi), inner)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        if isinstance(exc, TypingError):
            raise
        raise TypingError(f"alpha: ill-typed input {render(e)}") from exc


def lam(oc: OperadicCategory, e: TensorElement):
    """``(u, phi, (x,)) -> x``."""
    u, phi, ys = e
    if phi not in oc.morphisms or oc.cod(phi) != u or u not in oc.trivial \
            or len(ys) != 1:
        raise TypingError(f"lambda: ill-typed input {render(e)}")
    return ys[0]


def rho(oc: OperadicCategory, c: str, x) -> TensorElement:
    """``x -> (x, 1_c, R 1_c)`` for ``x`` over ``c``."""
    try:
        i = oc.identity(c)
        units = oc.fibres[i]
    except KeyError as exc:
        raise TypingError(f"rho: unknown object {c}") from exc
    for u in units:
        if u not in oc.trivial:
            raise TypingError(f"rho: fibre {u} of 1_{c} is not trivial")
    return TensorElement(x, i, tuple(units))


def structure_map(oc: OperadicCategory, kind: str, *inputs):
    """Dispatch to ``alpha``, ``lambda`` or ``rho`` by name."""
    if kind == "alpha":
        return alpha(oc, *inputs)
    if kind == "lambda":
        return lam(oc, *inputs)
    if kind == "rho":
        return rho(oc, *inputs)
    raise ValueError(f"unknown structure map {kind!r}")


def tensor_map(f: Callable, g: Callable, e: TensorElement) -> TensorElement:
    """``(f * g)(x, phi, y) = (f x, phi, g y)``; ``f``, ``g`` act on elements."""
    return TensorElement(f(e.x), e.phi, tuple(g(y) for y in e.ys))


def _ident(x):
    return x


def flatten(e) -> tuple:
    """``(((w, t, x), p, y), f, z)`` as ``(w, t, x, p, y, f, z)``."""
    if isinstance(e, TensorElement):
        return flatten(e.x) + (e.phi, tuple(map(render, e.ys)))
    return (render(e),)


# --------------------------------------------------------------- axioms

def verify_skew_axioms(oc: OperadicCategory, W: Collection, X: Collection,
                       Y: Collection, Z: Collection,
                       maps: Optional[tuple[dict, dict, dict]] = None,
                       limit: Optional[int] = None) -> ValidationReport:
    """Check the five skew monoidal axioms elementwise.

    ``maps`` optionally gives endomaps of ``X``, ``Y``, ``Z`` (as
    ``{object: {element: image}}``) used to check naturality of the
    structure maps.  ``limit`` bounds the number of elements of
    ``((W * X) * Y) * Z`` visited, if given.
    """
    rep = ValidationReport("skew")
    U = unit(oc)

    def guard(cid, wit, fn):
        try:
            return fn()
        except TypingError as exc:
            rep.fail(cid, f"ill-typed: {exc}", *wit)
            return None

    # (lambda, rho) on U
    for u_obj, u in U.elements():
        rep.count("lambda_rho")
        r = guard("A1", (u,), lambda: rho(oc, u_obj, u))
        if r is not None and guard("A1", (u,), lambda: lam(oc, r)) != u:
            rep.fail("A1", "lambda . rho != 1 on U", u)

    XY = tensor(oc, X, Y)
    # (alpha, lambda)
    UXY = tensor(oc, tensor(oc, U, X), Y)
    for c, e in UXY.elements():
        rep.count("alpha_lambda")
        a = guard("A2", flatten(e), lambda: alpha(oc, e))
        if a is None:
            continue
        lhs = guard("A2", flatten(e), lambda: lam(oc, a))
        rhs = guard("A2", flatten(e), lambda: tensor_map(lambda t: lam(oc, t), _ident, e))
        if lhs != rhs:
            rep.fail("A2", "lambda . alpha != lambda * 1", *flatten(e))

    # (alpha, rho) and (lambda, alpha, rho)
    for c, e in XY.elements():
        rep.count("alpha_rho")
        r = guard("A3", flatten(e), lambda: rho(oc, c, e))
        lhs = guard("A3", flatten(e), lambda: alpha(oc, r)) if r is not None else None
        rhs = guard("A3", flatten(e), lambda: TensorElement(
            e.x, e.phi, tuple(rho(oc, v, y) for v, y in zip(oc.fibres[e.phi], e.ys))))
        if lhs is None or lhs != rhs:
            rep.fail("A3", "alpha . rho != 1 * rho", *flatten(e))
        d = oc.cod(e.phi)
        r1 = guard("A4", flatten(e), lambda: TensorElement(rho(oc, d, e.x), e.phi, e.ys))
        a = guard("A4", flatten(e), lambda: alpha(oc, r1)) if r1 is not None else None
        back = guard("A4", flatten(e),
                     lambda: tensor_map(_ident, lambda t: lam(oc, t), a)) \
            if a is not None else None
        if back != e:
            rep.fail("A4", "(1 * lambda) . alpha . (rho * 1) != 1", *flatten(e))

    # pentagon
    WX = tensor(oc, W, X)
    WXY = tensor(oc, WX, Y)
    seen = 0
    for c in oc.objects:
        for e in iter_tensor_at(oc, WXY, Z, c):
            if limit is not None and seen >= limit:
                break
            seen += 1
            rep.count("pentagon")
            wit = flatten(e)

            def upper():
                a1 = tensor_map(lambda t: alpha(oc, t), _ident, e)
                a2 = alpha(oc, a1)
                return tensor_map(_ident, lambda t: alpha(oc, t), a2)

            def lower():
                return alpha(oc, alpha(oc, e))

            lhs = guard("A5", wit, upper)
            rhs = guard("A5", wit, lower)
            if lhs is None or lhs != rhs:
                rep.fail("A5", "pentagon fails", *wit)

    if maps is not None:
        _check_naturality(oc, X, Y, Z, maps, rep)
    return rep


def _check_naturality(oc, X, Y, Z, maps, rep):
    fX, fY, fZ = maps

    def app(m):
        table = {x: y for d in m.values() for x, y in d.items()}
        return lambda x: table[x]

    f, g, h = app(fX), app(fY), app(fZ)
    XYZ = tensor(oc, tensor(oc, X, Y), Z)
    for c, e in XYZ.elements():
        rep.count("naturality")
        try:
            lhs = alpha(oc, tensor_map(lambda t: tensor_map(f, g, t), h, e))
            rhs = tensor_map(f, lambda t: tensor_map(g, h, t), alpha(oc, e))
        except TypingError as exc:
            rep.fail("N1", f"ill-typed: {exc}", *flatten(e))
            continue
        if lhs != rhs:
            rep.fail("N1", "alpha is not natural", *flatten(e))
    UX = tensor(oc, unit(oc), X)
    for c, e in UX.elements():
        try:
            ok = lam(oc, tensor_map(_ident, f, e)) == f(lam(oc, e))
        except TypingError:
            ok = False
        if not ok:
            rep.fail("N2", "lambda is not natural", *flatten(e))
    for c, x in X.elements():
        try:
            ok = rho(oc, c, f(x)) == tensor_map(f, _ident, rho(oc, c, x))
        except TypingError:
            ok = False
        if not ok:
            rep.fail("N3", "rho is not natural", c, x)


# ----------------------------------------------------------- diagnostics

@dataclass
class Diagnostics:
    """Invertibility verdicts of ``lambda``, ``rho`` and ``alpha``, with witnesses."""
    lambda_invertible: bool
    lambda_witness: Any
    rho_invertible: bool
    rho_witness: Any
    alpha_invertible: bool
    alpha_witness: Any

    def fingerprint(self) -> tuple[bool, bool, bool]:
        return (self.lambda_invertible, self.rho_invertible, self.alpha_invertible)


def alpha_lift_failures(oc: OperadicCategory, cap: int = 10 ** 6
                        ) -> Iterator[tuple[str, tuple, list]]:
    """Where ``R: C/e -> C^|e|`` fails to lift uniquely.

    Yields ``(theta, tau, lifts)`` with ``lifts`` the list of ``(phi, psi)``
    such that ``psi phi = theta`` and ``phi^psi = tau``; only entries with a
    number of lifts other than one are produced.  Identities are scanned
    first, then the remaining morphisms in enumeration order.  A missing lift
    is only reported when the object it would pass through is not larger than
    every object present, so truncated fixtures are judged on their own range.
    """
    top = max(oc.obj_card.values(), default=0)

    def in_range(tau):
        # a lift of tau goes through an object of cardinality sum |cod tau_j|;
        # in a truncated fixture a missing lift beyond the bound proves nothing
        return sum(oc.card(oc.cod(t)) for t in tau) <= top

    ids = [oc.identity(c) for c in oc.objects]
    idset = set(ids)
    order = ids + [f for f in oc.morphisms if f not in idset]
    fact = oc.factorizations
    for theta in order:
        lifts: dict[tuple, list] = {}
        for phi, psi in fact[theta]:
            lifts.setdefault(oc.fibre_mors[psi, phi], []).append((phi, psi))
        choices = [oc.base.out_of[v] for v in oc.fibres[theta]]
        total = 1
        for ch in choices:
            total *= len(ch)
        if all(len(v) == 1 for v in lifts.values()) and len(lifts) == total:
            continue
        if total > cap:
            raise CapExceeded(f"lift enumeration at {theta} exceeds cap {cap}")
        for tau in product(*choices):
            found = lifts.get(tau, [])
            if len(found) > 1 or (not found and in_range(tau)):
                yield theta, tau, found


def diagnostics(oc: OperadicCategory, cap: int = 10 ** 6) -> Diagnostics:
    gen, wit = is_genuine(oc)
    rho_wit = next((f for f in oc.ft_morphisms
                    if f != oc.identity(oc.dom(f))), None)
    alpha_wit = next(alpha_lift_failures(oc, cap), None)
    return Diagnostics(gen, wit, rho_wit is None, rho_wit,
                       alpha_wit is None, alpha_wit)


# ------------------------------------------------------ opmonoidal transport

def pushforward(F: OperadicFunctorData, X: Collection) -> Collection:
    """``f_! X``: the same elements, now lying over ``F c``."""
    out: dict[str, list] = {}
    seen = set()
    for c, x in X.elements():
        if x in seen:
            raise ValueError(f"element {x!r} occurs over two objects")
        seen.add(x)
        out.setdefault(F.obj_map[c], []).append(x)
    return Collection({d: tuple(v) for d, v in out.items()})


def check_opmonoidal(F: OperadicFunctorData, samples: list[tuple],
                     maps: Optional[list[tuple[dict, dict]]] = None
                     ) -> ValidationReport:
    """Check ``F^0``, ``F^2`` against the three opmonoidal coherence conditions.

    ``samples`` is a list of ``(X, Y, Z)`` collections over the source with
    globally distinct element labels; ``maps`` optionally gives endomaps
    ``(f, g)`` of each sample's ``X``, ``Y`` for the cartesianness check.
    """
    C, D = F.source, F.target
    rep = ValidationReport("opmonoidal")
    Fo, Fm = F.obj_map, F.mor_map
    UC = unit(C)

    def F2(e):
        return TensorElement(e.x, Fm[e.phi], e.ys)

    def F0(u):
        return Fo[u]

    for u in C.trivial:
        if Fo.get(u) not in D.trivial:
            rep.fail("O0", "F^0 undefined: image of a trivial object is not trivial", u)
    for k, (X, Y, Z) in enumerate(samples):
        fX, fY, fZ = (pushforward(F, T) for T in (X, Y, Z))
        fU = pushforward(F, UC)
        # F^2 lands in f_!X * f_!Y
        for c, e in tensor(C, X, Y).elements():
            rep.count("F2")
            if not in_tensor(D, fX, fY, Fo[c], F2(e)):
                rep.fail("O1", "F^2 is ill-typed", k, *flatten(e))
        # lambda
        for c, e in tensor(C, UC, X).elements():
            rep.count("lambda")
            try:
                lhs = lam(D, tensor_map(F0, _ident, F2(e)))
            except TypingError:
                lhs = None
            if lhs != lam(C, e):
                rep.fail("O2", "compatibility with lambda fails", k, *flatten(e))
        # rho
        for c, x in X.elements():
            rep.count("rho")
            lhs = tensor_map(_ident, F0, F2(rho(C, c, x)))
            try:
                rhs = rho(D, Fo[c], x)
            except TypingError:
                rhs = None
            if lhs != rhs:
                rep.fail("O3", "compatibility with rho fails", k, c, x)
        # alpha
        for c, e in tensor(C, tensor(C, X, Y), Z).elements():
            rep.count("alpha")
            try:
                upper = alpha(D, tensor_map(F2, _ident, F2(e)))
            except TypingError:
                upper = None
            lower = tensor_map(_ident, F2, F2(alpha(C, e)))
            if upper != lower:
                rep.fail("O4", "compatibility with alpha fails", k, *flatten(e))
        if maps is not None and k < len(maps):
            _check_cartesian(F, X, Y, maps[k], k, rep)
    return rep


def _check_cartesian(F, X, Y, fg, k, rep):
    """The naturality square of ``F^2`` at ``(f, g): (X, Y) -> (X, Y)`` is a pullback."""
    C, D = F.source, F.target
    f_tab = {x: y for d in fg[0].values() for x, y in d.items()}
    g_tab = {x: y for d in fg[1].values() for x, y in d.items()}
    f, g = f_tab.__getitem__, g_tab.__getitem__
    Fm = F.mor_map

    def F2(e):
        return TensorElement(e.x, Fm[e.phi], e.ys)

    XY = tensor(C, X, Y)
    fX, fY = pushforward(F, X), pushforward(F, Y)
    DXY = tensor(D, fX, fY)
    # corner F(X' * Y') x_{FX' * FY'} (FX * FY), with X' = X, Y' = Y
    by_image: dict = {}
    for _, a2 in XY.elements():
        by_image.setdefault(F2(a2), []).append(a2)
    corner = set()
    for _, b in DXY.elements():
        for a2 in by_image.get(tensor_map(f, g, b), ()):
            corner.add((a2, b))
    hits: dict = {}
    for _, a in XY.elements():
        key = (tensor_map(f, g, a), F2(a))
        hits[key] = hits.get(key, 0) + 1
    rep.count("cartesian_squares")
    if set(hits) != corner or any(v != 1 for v in hits.values()):
        missing = next(iter(corner - set(hits)), None)
        rep.fail("O5", "F^2 naturality square is not a pullback", k,
                 render(missing[0]) if missing else None)


# ------------------------------------------------------------ reconstruction

class TensorInterface:
    """The skew monoidal structure of ``Coll_C`` seen only through operations.

    Exposes the object set, the cardinality map, the unit, the tensor of
    collections, ``alpha``, ``lambda``, ``rho`` and the comparison ``P2``
    into collections over finite sets.  The operadic category itself is
    captured in closures and not reachable as an attribute.
    """
    __slots__ = ("objects", "cardinality", "unit", "tensor", "alpha", "lam",
                 "rho", "P2")

    def __init__(self, objects, cardinality, unit_, tensor_, alpha_, lam_,
                 rho_, P2_):
        self.objects = objects
        self.cardinality = cardinality
        self.unit = unit_
        self.tensor = tensor_
        self.alpha = alpha_
        self.lam = lam_
        self.rho = rho_
        self.P2 = P2_


def expose_interface(oc: OperadicCategory) -> TensorInterface:
    def P2(e):
        return TensorElement(e.x, oc.mor_card[e.phi], e.ys)

    return TensorInterface(
        tuple(oc.objects), dict(oc.obj_card), unit(oc),
        lambda X, Y: tensor(oc, X, Y),
        lambda e: alpha(oc, e),
        lambda e: lam(oc, e),
        lambda c, x: rho(oc, c, x),
        P2)


class ReconstructionError(ValueError):
    def __init__(self, check: str, message: str):
        super().__init__(f"check ({check}) failed: {message}")
        self.check = check


# validation check ids -> the conditions listed in the reconstruction proof
_RECON_CHECKS = {"C3": "iii", "C4": "ii", "V4": "iv", "V5": "iv",
                 "V9": "v", "V7": "vi", "V8": "vi"}


def reconstruct(iface: TensorInterface) -> OperadicCategory:
    """Rebuild the operadic category from its skew monoidal structure alone.

    Morphisms out of ``c`` are the elements of ``(C * C)_c`` where ``C`` is
    the collection with one element over each object; codomains,
    cardinalities and fibres come from ``P2``; composites and fibre morphisms
    from ``alpha`` on ``(C * C) * C``; identities from ``rho``.
    """
    from .core import FinCategory
    objects = iface.objects
    C = Collection({c: (c,) for c in objects})
    CC = iface.tensor(C, C)
    mors: dict[str, tuple[str, str]] = {}
    mor_card: dict[str, FinFunction] = {}
    fibres: dict[str, tuple[str, ...]] = {}
    for c, e in CC.elements():
        image = iface.P2(e)
        d, card, fib = image
        if image.ys != e.ys or e.x != d:
            raise ReconstructionError("P2", f"P2 moves the data of {render(e)}")
        if card.dom_card != iface.cardinality[c] or card.cod_card != iface.cardinality[d]:
            raise ReconstructionError("P2", f"|{e.phi}| has the wrong type")
        mors[e.phi] = (c, d)
        mor_card[e.phi] = card
        fibres[e.phi] = tuple(fib)
    comp: dict[tuple[str, str], str] = {}
    fmors: dict[tuple[str, str], tuple[str, ...]] = {}
    for c, E in iface.tensor(CC, C).elements():
        inner, phi, _ = E
        psi = inner.phi
        out = iface.alpha(E)
        if out.x != inner.x:
            raise ReconstructionError("alpha", f"alpha changes the outer label of {render(E)}")
        comp[psi, phi] = out.phi
        fmors[psi, phi] = tuple(t.phi for t in out.ys)
    ids = {}
    units = {}
    for c in objects:
        r = iface.rho(c, c)
        if r.x != c:
            raise ReconstructionError("rho", f"rho moves the element over {c}")
        ids[c] = r.phi
        units[c] = r.ys
    # (i): d: U -> C is injective, via lambda . rho = 1 on U
    for u_obj, u in iface.unit.elements():
        if iface.lam(iface.rho(u_obj, u)) != u:
            raise ReconstructionError("i", f"lambda . rho != 1 at {u}")
    declared = frozenset(c for c, _ in iface.unit.elements())
    oc = OperadicCategory(FinCategory(tuple(objects), mors, ids, comp),
                          dict(iface.cardinality), mor_card, fibres, fmors,
                          expected_trivial=declared, name="reconstructed")
    rep = validate_operadic(oc)
    if not rep.passed:
        f = rep.failures[0]
        raise ReconstructionError(_RECON_CHECKS.get(f.check, f.check),
                                  f"{f.message} at {f.witness}")
    return oc


def same_tables(a: OperadicCategory, b: OperadicCategory) -> bool:
    """Equality of all tables up to enumeration order (label-preserving iso)."""
    return (set(a.objects) == set(b.objects)
            and a.morphisms == b.morphisms
            and a.base.identities == b.base.identities
            and a.base.composition == b.base.composition
            and a.obj_card == b.obj_card
            and a.mor_card == b.mor_card
            and a.fibres == b.fibres
            and a.fibre_mors == b.fibre_mors)
