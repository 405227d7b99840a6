from dataclasses import replace
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from fixtures import get
from opcat.builders import build_adjoin_terminal, build_discrete_zero
from opcat.core import CapExceeded, empty_category, point
from opcat.normalization import Presheaf
from opcat.operads import (Operad, count_presheaf_actions, enumerate_operads, mult_domain,
                           operad_from_presheaf, terminal_operad, validate_operad)
from opcat.skew import Collection


@pytest.mark.parametrize("name", ["S2", "P3", "om22", "dz_arrow", "adj_poset3", "bq_rg2"])
def test_terminal_operad(name):
    oc = get(name)
    rep = validate_operad(oc, terminal_operad(oc))
    assert rep.passed


def test_presheaf_operad_on_arrow():
    oc = get("dz_arrow")
    P = Presheaf(Collection({"a": ("p",), "b": ("q",)}),
                 {("id_a", "p"): "p", ("id_b", "q"): "q", ("f", "q"): "p"})
    assert validate_operad(oc, operad_from_presheaf(oc, P)).passed


def test_identity_only_presheaf_operad():
    oc = build_discrete_zero(point())
    P = Presheaf(Collection({"a": ("x", "y")}), {("id_a", "x"): "x", ("id_a", "y"): "y"})
    assert validate_operad(oc, operad_from_presheaf(oc, P)).passed


def test_non_unital_action_fails_right_unit():
    oc = build_discrete_zero(point())
    P = Presheaf(Collection({"a": ("x", "y")}), {("id_a", "x"): "y", ("id_a", "y"): "y"})
    rep = validate_operad(oc, operad_from_presheaf(oc, P))
    assert "R" in rep.failed_checks()


def test_presheaf_operad_needs_cardinality_zero():
    with pytest.raises(ValueError):
        operad_from_presheaf(get("S2"), Presheaf(Collection()))


def _two_point_operad(oc):
    # {e, z} everywhere, z absorbing, e the unit
    sets = {c: ("e", "z") for c in oc.objects}
    mult = {}
    for phi, x, ys in mult_domain(oc, sets):
        mult[phi, x, ys] = "z" if "z" in (x,) + ys else "e"
    return Operad(sets, {u: "e" for u in oc.trivial}, mult)


def test_absorbing_operad_and_redirected_entry():
    oc = get("S2")
    T = _two_point_operad(oc)
    assert validate_operad(oc, T).passed
    mult = dict(T.mult)
    key = ("1->1:1", "e", ("e",))
    mult[key] = "z"
    rep = validate_operad(oc, replace(T, mult=mult))
    assert set(rep.failed_checks()) & {"A", "L", "R"}
    assert rep.failures[0].witness


def test_typing_failures():
    oc = get("S2")
    T = terminal_operad(oc)
    mult = dict(T.mult)
    mult.pop(next(iter(mult)))
    assert "T1" in validate_operad(oc, replace(T, mult=mult)).failed_checks()
    assert "T0" in validate_operad(oc, replace(T, unit={})).failed_checks()
    assert "T0" in validate_operad(oc, replace(T, unit={"1": "*", "2": "*"})).failed_checks()


@settings(max_examples=20, deadline=None)
@given(st.permutations(["e", "z"]).map(lambda p: dict(zip(["e", "z"], p))))
def test_validation_invariant_under_relabeling(perm):
    oc = get("S2")
    T = _two_point_operad(oc)
    ren = {"e": "u0" + perm["e"], "z": "u0" + perm["z"]}
    T2 = Operad({c: tuple(ren[x] for x in xs) for c, xs in T.sets.items()},
                {u: ren[x] for u, x in T.unit.items()},
                {(phi, ren[x], tuple(ren[y] for y in ys)): ren[r]
                 for (phi, x, ys), r in T.mult.items()})
    assert validate_operad(oc, T2).passed


# ------------------------------------------------------------ enumeration

@pytest.mark.parametrize("sizes,expected", [((1, 1), 1), ((2, 1), 2), ((1, 2), 1),
                                            ((2, 2), 4), ((3, 1), 3)])
def test_enumeration_on_arrow(sizes, expected):
    oc = get("dz_arrow")
    sz = dict(zip(("a", "b"), sizes))
    assert enumerate_operads(oc, sz) == expected
    assert count_presheaf_actions(oc.base, sz) == expected


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_operads_on_discrete_zero_are_presheaves(a, b, c):
    oc = get("dz_poset3")
    sz = {"a": a, "b": b, "c": c}
    assert enumerate_operads(oc, sz) == count_presheaf_actions(oc.base, sz)


def test_terminal_operadic_category():
    oc = build_adjoin_terminal(empty_category())
    assert enumerate_operads(oc, {"*": 1}) == 1
    # operads here are monoids; count those on n labelled points directly
    assert enumerate_operads(oc, {"*": 2}) == _monoid_count(2) == 4


def _monoid_count(n):
    pts = range(n)
    count = 0
    for table in product(pts, repeat=n * n):
        m = lambda x, y: table[x * n + y]
        if any(m(m(x, y), z) != m(x, m(y, z)) for x in pts for y in pts for z in pts):
            continue
        count += sum(all(m(e, x) == x == m(x, e) for x in pts) for e in pts)
    return count


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_operads(get("dz_arrow"), {"a": 3, "b": 3}, cap=10)
    with pytest.raises(CapExceeded):
        count_presheaf_actions(get("dz_arrow").base, {"a": 3, "b": 3}, cap=10)
