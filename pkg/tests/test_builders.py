from itertools import product
from math import comb, factorial

import pytest

from fixtures import get
from opcat.builders import (build_S, build_P, build_adjoin_terminal, build_bouquets,
                            cardinality_functor, fn_label, tree_label)
from opcat.core import FinCategory, FinFunction, all_functions, empty_category, validate_category
from opcat.operadic import trivial_objects, validate_operadic


# ----------------------------------------------------------------- counts

@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_S_counts(N):
    S = build_S(N)
    assert len(S.objects) == N + 1
    assert len(S.morphisms) == sum(n ** m for m in range(N + 1) for n in range(N + 1))


@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_P_counts(N):
    P = build_P(N)
    # monotone m -> n: multisets of size m from n
    expect = sum(comb(m + n - 1, m) if n else int(m == 0)
                 for m in range(N + 1) for n in range(N + 1))
    assert len(P.morphisms) == expect


def test_small_examples():
    assert len(build_S(2).morphisms) == 11
    assert len(build_S(0).morphisms) == 1
    assert len(build_P(2).morphisms) == 10
    assert len(get("bq_rg2").objects) == 14
    assert len(get("om22").objects) == 10


def test_bouquet_morphism_count():
    B = get("bq_rg2")
    # same target colour, any function on the petals
    per_colour = sum(2 ** m * 2 ** n * n ** m for m in range(3) for n in range(3))
    assert len(B.morphisms) == 2 * per_colour


def _omega2_morphisms_oracle(N2, N1):
    trees = [(p2, p1, bd) for p1 in range(N1 + 1) for p2 in range(N2 + 1)
             for bd in all_functions(p2, p1)
             if all(bd.values[i] <= bd.values[i + 1] for i in range(p2 - 1))]
    n = 0
    for (a2, a1, ba), (b2, b1, bb) in product(trees, repeat=2):
        for f1 in all_functions(a1, b1):
            if any(f1.values[i] > f1.values[i + 1] for i in range(a1 - 1)):
                continue
            for f2 in all_functions(a2, b2):
                if any(bb(f2(s)) != f1(ba(s)) for s in range(1, a2 + 1)):
                    continue
                if any(f2(s) > f2(t) for s in range(1, a2 + 1)
                       for t in range(s + 1, a2 + 1) if ba(s) == ba(t)):
                    continue
                n += 1
    return len(trees), n


def test_omega2_counts_match_brute_force():
    om = get("om22")
    assert (len(om.objects), len(om.morphisms)) == _omega2_morphisms_oracle(2, 2)


# --------------------------------------------------------- trivial objects

def test_trivial_objects_of_builders():
    assert trivial_objects(build_S(3)) == {"1"}
    assert trivial_objects(build_P(3)) == {"1"}
    assert trivial_objects(get("bq_rg2")) == {"(r;r)", "(g;g)"}
    assert trivial_objects(get("om22")) == {"1>1:1"}


def test_adjoin_terminal_on_empty():
    oc = get("adj_empty")
    assert oc.objects == ("*",)
    assert validate_operadic(oc).passed


def test_adjoin_terminal_label_clash():
    clash = FinCategory(("*",), {"id": ("*", "*")}, {"*": "id"}, {("id", "id"): "id"})
    with pytest.raises(ValueError):
        build_adjoin_terminal(clash)


def test_bouquets_need_colours():
    with pytest.raises(ValueError):
        build_bouquets([], 2)


def test_base_categories_are_valid():
    for name in ["S3", "P3", "bq_rg2", "om22", "card_one_poset3"]:
        assert validate_category(get(name).base).passed


# ------------------------------------------------ fibrewise trivial maps

def test_ft_maps_of_S_are_bijections():
    S = get("S3")
    bij = {f for f in S.morphisms
           if sorted(S.mor_card[f].values) == list(range(1, S.mor_card[f].cod_card + 1))}
    assert set(S.ft_morphisms) == bij
    assert len(bij) == sum(factorial(n) for n in range(4))


def test_ft_maps_of_P_are_identities():
    P = get("P3")
    assert set(P.ft_morphisms) == {P.identity(c) for c in P.objects}


def test_ft_maps_of_bouquets_are_colour_preserving_bijections():
    B = get("bq_rg2")

    def petals(lab):
        return lab[1:-1].split(";")[0].split()

    expect = set()
    for f, (a, b) in B.morphisms.items():
        card = B.mor_card[f]
        ca, cb = petals(a), petals(b)
        if sorted(card.values) == list(range(1, card.cod_card + 1)) and \
                all(cb[card(i) - 1] == ca[i - 1] for i in range(1, card.dom_card + 1)):
            expect.add(f)
    assert set(B.ft_morphisms) == expect
    isos = {f for f in B.morphisms if sorted(B.mor_card[f].values)
            == list(range(1, B.mor_card[f].cod_card + 1))}
    assert expect < isos


def test_ft_maps_of_discrete_zero_are_everything():
    oc = get("dz_poset3")
    assert set(oc.ft_morphisms) == set(oc.morphisms)


# -------------------------------------------------------------- labels

def test_labels():
    assert fn_label("2", "1", FinFunction.from_values([1, 1], 1)) == "2->1:1 1"
    assert tree_label(FinFunction.from_values([1, 2, 2], 2)) == "3>2:1 2 2"
    assert "[1 2 2;1 1]:3>2:1 1 2->2>1:1 1" in get("om32").morphisms


def test_cardinality_functor_targets_largest_card():
    F, S = cardinality_functor(get("bq_rg2"))
    assert S.objects == ("0", "1", "2")
    F, S = cardinality_functor(get("dz_arrow"))
    assert S.objects == ("0",)
    assert empty_category().objects == ()
