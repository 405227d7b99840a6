"""Reading and writing the flat JSON formats for categories, collections,
presheaves and operads.

Compound keys join labels with ``|`` (``"outer|inner"``, ``"pi|x"``,
``"phi|x|y1,y2"``), so labels may not contain ``|`` or ``,``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .core import FinCategory, FinFunction
from .normalization import Presheaf
from .operadic import OperadicCategory
from .operads import Operad
from .skew import Collection


class InputError(ValueError):
    """A file that cannot be turned into the requested structure."""


def _load(src: Union[str, Path, dict]) -> dict:
    if isinstance(src, dict):
        return src
    try:
        with open(src, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {src}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{src} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{src}: top level must be an object")
    return data


def _split(key: str, n: int, what: str) -> list[str]:
    parts = key.split("|")
    if len(parts) != n:
        raise InputError(f"malformed {what} key {key!r}")
    return parts


def _check_label(s: str) -> str:
    if "|" in s or "," in s:
        raise ValueError(f"label {s!r} contains a reserved character")
    return s


# -------------------------------------------------------------- categories

def serialize_category(oc: OperadicCategory) -> dict:
    out: dict[str, Any] = {
        "objects": [{"id": _check_label(c), "card": oc.obj_card[c]} for c in oc.objects],
        "morphisms": [{"id": _check_label(f), "dom": oc.dom(f), "cod": oc.cod(f),
                       "card_map": list(oc.mor_card[f].values)}
                      for f in oc.morphisms],
        "identities": {c: oc.identity(c) for c in oc.objects},
        "composition": {f"{g}|{f}": h for (g, f), h in oc.base.composition.items()},
        "fibres": {f: list(oc.fibres[f]) for f in oc.morphisms},
        "fibre_morphisms": {f"{psi}|{phi}": list(v)
                            for (psi, phi), v in oc.fibre_mors.items()},
    }
    if oc.expected_trivial is not None:
        out["expected_trivial"] = [c for c in oc.objects if c in oc.expected_trivial]
    return out


def parse_category(src: Union[str, Path, dict]) -> OperadicCategory:
    """Resolve every reference; shapes are checked, the axioms are not."""
    data = _load(src)
    try:
        return _parse_category(data)
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed category file: {exc!r}") from exc


def _parse_category(data: dict) -> OperadicCategory:
    for key in ("objects", "morphisms", "identities", "composition", "fibres",
                "fibre_morphisms"):
        if key not in data:
            raise InputError(f"missing top-level key {key!r}")
    obj_card: dict[str, int] = {}
    for rec in data["objects"]:
        c, n = rec["id"], rec["card"]
        if c in obj_card:
            raise InputError(f"duplicate object {c!r}")
        if not isinstance(n, int) or n < 0:
            raise InputError(f"object {c!r} has invalid card {n!r}")
        obj_card[c] = n
    mors: dict[str, tuple[str, str]] = {}
    mor_card: dict[str, FinFunction] = {}
    for rec in data["morphisms"]:
        f, a, b, vals = rec["id"], rec["dom"], rec["cod"], rec["card_map"]
        if f in mors:
            raise InputError(f"duplicate morphism {f!r}")
        for end in (a, b):
            if end not in obj_card:
                raise InputError(f"morphism {f!r} refers to unknown object {end!r}")
        if len(vals) != obj_card[a] or not all(isinstance(v, int) for v in vals):
            raise InputError(f"morphism {f!r}: card_map must list {obj_card[a]} integers")
        mors[f] = (a, b)
        mor_card[f] = FinFunction(obj_card[a], obj_card[b], tuple(vals))

    def mor(label, where):
        if label not in mors:
            raise InputError(f"{where} refers to unknown morphism {label!r}")
        return label

    ids = {}
    for c, f in data["identities"].items():
        if c not in obj_card:
            raise InputError(f"identities refers to unknown object {c!r}")
        ids[c] = mor(f, f"identity of {c}")
    comp = {}
    for key, h in data["composition"].items():
        g, f = _split(key, 2, "composition")
        comp[mor(g, key), mor(f, key)] = mor(h, key)
    fibres = {}
    for f, objs in data["fibres"].items():
        mor(f, "fibres")
        if len(objs) != obj_card[mors[f][1]]:
            raise InputError(f"fibres of {f!r} must list {obj_card[mors[f][1]]} objects")
        for v in objs:
            if v not in obj_card:
                raise InputError(f"fibres of {f!r} refer to unknown object {v!r}")
        fibres[f] = tuple(objs)
    fmors = {}
    for key, fam in data["fibre_morphisms"].items():
        psi, phi = _split(key, 2, "fibre_morphisms")
        mor(psi, key), mor(phi, key)
        if len(fam) != obj_card[mors[psi][1]]:
            raise InputError(f"fibre_morphisms {key!r} must list {obj_card[mors[psi][1]]} morphisms")
        fmors[psi, phi] = tuple(mor(m, key) for m in fam)
    expected = data.get("expected_trivial")
    if expected is not None:
        for u in expected:
            if u not in obj_card:
                raise InputError(f"expected_trivial refers to unknown object {u!r}")
        expected = frozenset(expected)
    base = FinCategory(tuple(obj_card), mors, ids, comp)
    return OperadicCategory(base, obj_card, mor_card, fibres, fmors,
                            expected_trivial=expected)


# ----------------------------------------------- collections and presheaves

def _collection(data: dict, oc: OperadicCategory) -> Collection:
    raw = data.get("collection")
    if not isinstance(raw, dict):
        raise InputError("missing 'collection' object")
    for c in raw:
        if c not in oc.obj_card:
            raise InputError(f"collection refers to unknown object {c!r}")
    return Collection({c: tuple(raw[c]) for c in oc.objects if raw.get(c)})


def parse_collection(src, oc: OperadicCategory) -> Collection:
    return _collection(_load(src), oc)


def serialize_collection(X: Collection) -> dict:
    return {"collection": {c: list(xs) for c, xs in X.sets.items()}}


def parse_presheaf(src, oc: OperadicCategory) -> Presheaf:
    data = _load(src)
    X = _collection(data, oc)
    act = {}
    for key, y in data.get("action", {}).items():
        pi, x = _split(key, 2, "action")
        if pi not in oc.morphisms:
            raise InputError(f"action refers to unknown morphism {pi!r}")
        act[pi, x] = y
    return Presheaf(X, act)


def serialize_presheaf(P: Presheaf) -> dict:
    out = serialize_collection(P.carrier)
    out["action"] = {f"{pi}|{x}": y for (pi, x), y in P.action.items()}
    return out


def parse_operad(src, oc: OperadicCategory) -> Operad:
    data = _load(src)
    for key in ("sets", "unit", "mult"):
        if key not in data:
            raise InputError(f"missing top-level key {key!r}")
    for c in data["sets"]:
        if c not in oc.obj_card:
            raise InputError(f"sets refers to unknown object {c!r}")
    sets = {c: tuple(data["sets"][c]) for c in oc.objects if data["sets"].get(c)}
    mult = {}
    for key, r in data["mult"].items():
        phi, x, ys = _split(key, 3, "mult")
        if phi not in oc.morphisms:
            raise InputError(f"mult refers to unknown morphism {phi!r}")
        mult[phi, x, tuple(ys.split(",")) if ys else ()] = r
    return Operad(sets, dict(data["unit"]), mult)


def serialize_operad(T: Operad) -> dict:
    return {"sets": {c: list(xs) for c, xs in T.sets.items()},
            "unit": dict(T.unit),
            "mult": {f"{phi}|{x}|{','.join(ys)}": r
                     for (phi, x, ys), r in T.mult.items()}}


def dump(data: dict, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, ensure_ascii=False)
        fh.write("\n")
