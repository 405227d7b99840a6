from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from opcat.core import (FinCategory, FinFunction, all_functions, connected_components,
                        disjoint_union, empty_category, fibre_data, fibre_restrict,
                        free_arrow, kappa, make_category, point, relabel,
                        validate_category)
from opcat.builders import build_S, poset3


def F(vals, n):
    return FinFunction.from_values(vals, n)


@st.composite
def fin_functions(draw, max_card=4):
    m = draw(st.integers(0, max_card))
    n = draw(st.integers(1 if m else 0, max_card))
    vals = draw(st.lists(st.integers(1, n), min_size=m, max_size=m)) if n else []
    return F(vals, n)


# -------------------------------------------------------------- FinFunction

def test_finfunction_validity():
    assert F([1, 1, 4], 4).is_valid()
    assert not FinFunction(2, 1, (1, 2)).is_valid()
    assert FinFunction(0, 5, ()).is_valid()
    assert FinFunction(0, 0, ()).is_valid()


def test_then_is_composition():
    f, g = F([2, 1], 2), F([1, 1], 1)
    assert f.then(g) == F([1, 1], 1)
    assert f.then(f).is_identity()
    with pytest.raises(ValueError):
        f.then(F([1], 1))


def test_all_functions_counts():
    assert [sum(1 for _ in all_functions(m, n)) for m, n in [(0, 0), (2, 3), (3, 2)]] == [1, 9, 8]


# -------------------------------------------------------------- fibre_data

def test_fibre_data_example():
    fd = fibre_data(F([1, 1, 2], 2))
    assert [x.card for x in fd] == [2, 1]
    assert fd[0].embed == (1, 2) and fd[1].embed == (3,)


def test_fibre_data_identity():
    fd = fibre_data(FinFunction.identity(2))
    assert [x.card for x in fd] == [1, 1]
    assert [x.embed for x in fd] == [(1,), (2,)]


def test_fibre_data_empty_domain():
    fd = fibre_data(FinFunction(0, 2, ()))
    assert [x.card for x in fd] == [0, 0]
    assert all(x.embed == () for x in fd)


@given(fin_functions())
def test_kappa_is_a_bijection(f):
    k = kappa(f)
    # explicit inverse: position of each domain element in the concatenation
    inverse = {j: pos for pos, j in enumerate(k, start=1)}
    assert sorted(inverse) == list(range(1, f.dom_card + 1))
    assert all(k[inverse[j] - 1] == j for j in inverse)
    assert sum(x.card for x in fibre_data(f)) == f.dom_card


@given(fin_functions())
def test_fibres_are_preimages(f):
    for i, fib in enumerate(fibre_data(f), start=1):
        assert fib.embed == tuple(j for j in range(1, f.dom_card + 1) if f(j) == i)


# --------------------------------------------------------- fibre_restrict

def test_fibre_restrict_swap_under_bang():
    swap, bang = F([2, 1], 2), F([1, 1], 1)
    assert fibre_restrict(swap, bang, 1) == F([2, 1], 2)


def test_fibre_restrict_whole_domain_is_fibre():
    f, bang = F([1, 1, 2], 2), F([1, 1], 1)
    assert fibre_restrict(f, bang, 1) == f


def test_fibre_restrict_identity():
    g = F([2, 1, 2], 2)
    for i in (1, 2):
        r = fibre_restrict(FinFunction.identity(3), g, i)
        assert r.is_identity() and r.dom_card == fibre_data(g)[i - 1].card


def test_fibre_restrict_index_out_of_range():
    with pytest.raises(IndexError):
        fibre_restrict(FinFunction.identity(1), F([1], 1), 2)


def _restrict_oracle(f, g, i):
    # restriction computed from sets: sort preimages, look positions up by search
    src = sorted(t for t in range(1, f.dom_card + 1) if g(f(t)) == i)
    tgt = sorted(s for s in range(1, g.dom_card + 1) if g(s) == i)
    return F([tgt.index(f(t)) + 1 for t in src], len(tgt))


def test_fibre_restrict_matches_set_oracle_exhaustively():
    for a, b, c in product(range(4), repeat=3):
        for f in all_functions(a, b):
            for g in all_functions(b, c):
                for i in range(1, c + 1):
                    assert fibre_restrict(f, g, i) == _restrict_oracle(f, g, i)


def test_fibre_restrict_functorial_exhaustively():
    # restricting f' . f under g equals restricting f under g . f', then f' under g
    for a, b, c, e in product(range(4), repeat=4):
        for f in all_functions(a, b):
            for f2 in all_functions(b, c):
                ff = f.then(f2)
                for g in all_functions(c, e):
                    gf2 = f2.then(g)
                    for i in range(1, e + 1):
                        assert fibre_restrict(ff, g, i) == \
                            fibre_restrict(f, gf2, i).then(fibre_restrict(f2, g, i))


# ------------------------------------------------------------ categories

def test_one_object_category_passes():
    assert validate_category(point()).passed


def test_empty_category_passes():
    assert validate_category(empty_category()).passed


def test_wrong_dom_composite_is_caught():
    A = poset3()
    comp = dict(A.composition)
    # b<=c . a<=b should be a<=c; point it at b<=c instead
    comp["b<=c", "a<=b"] = "b<=c"
    bad = FinCategory(A.objects, A.morphisms, A.identities, comp)
    rep = validate_category(bad)
    assert not rep.passed
    assert any(f.witness[:2] == ("b<=c", "a<=b") for f in rep.failures)


def test_missing_composite_and_unknown_object_reported():
    A = free_arrow()
    comp = dict(A.composition)
    del comp["f", "id_a"]
    rep = validate_category(FinCategory(A.objects, A.morphisms, A.identities, comp))
    assert "C2" in rep.failed_checks()
    mors = dict(A.morphisms, g=("a", "zz"))
    rep = validate_category(FinCategory(A.objects, mors, A.identities, A.composition))
    assert "C0" in rep.failed_checks()


def test_non_associative_table_caught():
    # x.(x.x) = x.y = x but (x.x).x = y.x = y
    objs = ["o"]
    mors = [("1", "o", "o"), ("x", "o", "o"), ("y", "o", "o")]
    table = {("x", "x"): "y", ("x", "y"): "x", ("y", "x"): "y", ("y", "y"): "y"}

    def compose(g, f):
        if g == "1":
            return f
        if f == "1":
            return g
        return table[g, f]
    cat = make_category(objs, mors, {"o": "1"}, compose)
    rep = validate_category(cat)
    assert "C4" in rep.failed_checks()


def test_components():
    assert connected_components(point()) == [["a"]]
    two = disjoint_union(point(), relabel(point(), {"a": "q"}, {"id_a": "id_q"}))
    assert len(connected_components(two)) == 2
    assert len(connected_components(build_S(2).base)) == 1


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(6)), st.permutations(range(3)))
def test_validation_stable_under_relabeling(mperm, operm):
    A = poset3()
    objs = list(A.objects)
    mors = list(A.morphisms)
    omap = {o: f"o{operm[k]}" for k, o in enumerate(objs)}
    mmap = {m: f"m{mperm[k]}" for k, m in enumerate(mors)}
    B = relabel(A, omap, mmap)
    assert validate_category(B).passed
    comp = dict(B.composition)
    key = next(iter(comp))
    comp[key] = mmap["a<=a"] if comp[key] != mmap["a<=a"] else mmap["b<=b"]
    assert validate_category(A).passed == validate_category(B).passed
    assert not validate_category(FinCategory(B.objects, B.morphisms, B.identities, comp)).passed
