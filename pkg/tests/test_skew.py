from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from fixtures import ALL, GENUINE, diagnosis, get
from opcat.builders import build_S, cardinality_functor
from opcat.core import all_functions
from opcat.operadic import identity_functor, is_genuine
from opcat.sampling import random_collection, random_endomap, random_tuple, rng_for
from opcat.skew import (Collection, ReconstructionError, TensorElement, TensorInterface,
                        TypingError, alpha, check_opmonoidal, diagnostics,
                        expose_interface, flatten, lam, reconstruct, rho, same_tables,
                        structure_map, tensor, tensor_size, unit, verify_skew_axioms)

SWAP, BANG2, ID2 = "2->2:2 1", "2->1:1 1", "2->2:1 2"


# ----------------------------------------------------------------- tensor

def test_tensor_in_S1():
    S1 = build_S(1)
    X = Collection({"0": ("a",), "1": ("b",)})
    XY = tensor(S1, X, X)
    assert set(XY.at("0")) == {TensorElement("a", "0->0:", ()),
                               TensorElement("b", "0->1:", ("a",))}
    assert XY.at("1") == (TensorElement("b", "1->1:1", ("b",)),)


def test_empty_factors():
    oc = get("S2")
    X = Collection({"1": ("a",)})
    assert tensor(oc, Collection(), X).size() == 0
    # cardinality-0 codomain: the empty product is a singleton
    dz = get("dz_arrow")
    XY = tensor(dz, Collection({"b": ("q",)}), Collection())
    assert XY.sizes() == {"a": 1, "b": 1}


def _S_tensor_count(N, X, Y, m):
    # sum over f: m -> n of |X_n| * prod_i |Y_{|f^-1 i|}|
    total = 0
    for n in range(N + 1):
        for f in all_functions(m, n):
            k = len(X.at(str(n)))
            for i in range(1, n + 1):
                k *= len(Y.at(str(f.values.count(i))))
            total += k
    return total


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_tensor_size_matches_counting_formula(seed):
    rng = rng_for(seed)
    S = get("S3")
    X, Y = random_collection(S, rng, 2, "x"), random_collection(S, rng, 2, "y")
    XY = tensor(S, X, Y)
    for m in range(4):
        assert len(XY.at(str(m))) == _S_tensor_count(3, X, Y, m)
    assert tensor_size(S, X, Y) == XY.size()


# ------------------------------------------------------------------- unit

def test_units():
    assert unit(get("S2")).sets == {"1": ("1",)}
    assert unit(get("dz_poset3")).sets == {}
    assert unit(get("adj_poset3")).sets == {"*": ("*",)}


# --------------------------------------------------------- structure maps

def test_lambda_example():
    S1 = build_S(1)
    assert lam(S1, TensorElement("1", "0->1:", ("a",))) == "a"
    assert structure_map(S1, "lambda", TensorElement("1", "0->1:", ("a",))) == "a"
    with pytest.raises(TypingError):
        lam(S1, TensorElement("0", "0->0:", ()))


def test_rho_example():
    assert rho(get("S2"), "2", "a") == TensorElement("a", ID2, ("1", "1"))
    with pytest.raises(TypingError):
        rho(get("dz_arrow"), "zz", "a")


def test_alpha_example():
    oc = get("S2")
    e = TensorElement(TensorElement("x", BANG2, ("y",)), SWAP, ("z1", "z2"))
    # composite ! . swap = !, fibre map of swap over ! is swap on the fibre 2
    assert alpha(oc, e) == TensorElement("x", BANG2, (TensorElement("y", SWAP, ("z1", "z2")),))
    with pytest.raises(TypingError):
        alpha(oc, TensorElement(TensorElement("x", BANG2, ("y",)), BANG2, ("z",)))


def test_alpha_reindexes_through_fibres():
    oc = get("S2")
    # (x, id_2, (y1, y2)) then phi = swap: z splits by the fibres of id_2
    e = TensorElement(TensorElement("x", ID2, ("y1", "y2")), SWAP, ("z1", "z2"))
    out = alpha(oc, e)
    assert out.phi == SWAP
    assert [t.ys for t in out.ys] == [("z1",), ("z2",)]
    assert [t.phi for t in out.ys] == ["1->1:1", "1->1:1"]


# ---------------------------------------------------------------- axioms

def test_all_empty_passes():
    E = Collection()
    assert verify_skew_axioms(get("S2"), E, E, E, E).passed


@pytest.mark.parametrize("name", ["S2", "P2", "dz_arrow", "adj_poset3", "card_one_poset3"])
def test_axioms_with_naturality(name):
    oc = get(name)
    rng = rng_for(1)
    for _ in range(3):
        W, X, Y, Z = random_tuple(oc, rng, 4, 2)
        maps = tuple(random_endomap(T, rng) for T in (X, Y, Z))
        rep = verify_skew_axioms(oc, W, X, Y, Z, maps)
        assert rep.passed, rep.failures[:3]


def test_corrupted_composition_breaks_pentagon():
    oc = get("S2")
    comp = dict(oc.base.composition)
    comp[SWAP, SWAP] = SWAP
    bad = replace(oc, base=replace(oc.base, composition=comp))
    X = Collection({c: (f"x@{c}",) for c in oc.objects})
    rep = verify_skew_axioms(bad, X, X, X, X)
    pent = [f for f in rep.failures if f.check == "A5"]
    assert pent and all(len(f.witness) == 7 for f in pent)


def test_flatten_shape():
    e = TensorElement(TensorElement(TensorElement("w", "t", ("x",)), "p", ("y",)), "f", ("z",))
    assert flatten(e) == ("w", "t", ("x",), "p", ("y",), "f", ("z",))


def test_swap_endomap_is_natural():
    oc = get("S2")
    X = Collection({"1": ("a", "b")})
    f = {"1": {"a": "b", "b": "a"}}
    assert verify_skew_axioms(oc, X, X, X, X, (f, f, f)).passed


# ----------------------------------------------------------- diagnostics

def test_diagnostic_fingerprints():
    assert diagnostics(get("P3")).fingerprint() == (True, True, True)
    d = diagnostics(get("S2"))
    assert d.fingerprint() == (True, False, False)
    assert d.rho_witness == SWAP
    theta, tau, lifts = d.alpha_witness
    assert (theta, tau) == (ID2, ("1->1:1", "1->1:1"))
    assert sorted(lifts) == sorted([(ID2, ID2), (SWAP, SWAP)])
    assert diagnostics(get("dz_arrow")).lambda_invertible is False


@pytest.mark.parametrize("name", ALL)
def test_lambda_invertible_iff_genuine(name):
    oc = get(name)
    assert diagnosis(name).lambda_invertible == is_genuine(oc)[0] == (name in GENUINE)


def _lambda_is_bijective(oc, X):
    UX = tensor(oc, unit(oc), X)
    for c in oc.objects:
        images = [lam(oc, e) for e in UX.at(c)]
        if sorted(images) != sorted(X.at(c)):
            return False
    return True


@pytest.mark.parametrize("name", [n for n in ALL if n != "om32"])
def test_lambda_bijective_on_samples_iff_genuine(name):
    oc = get(name)
    rng = rng_for(3)
    full = Collection({c: ("x",) for c in oc.objects})
    verdicts = {_lambda_is_bijective(oc, random_collection(oc, rng)) for _ in range(5)}
    verdicts.add(_lambda_is_bijective(oc, full))
    if is_genuine(oc)[0]:
        assert verdicts == {True}
    else:
        assert False in verdicts


def _alpha_bijective_in_range(oc, X, Y, Z):
    top = max(oc.obj_card.values(), default=0)
    src = tensor(oc, tensor(oc, X, Y), Z)
    tgt = tensor(oc, X, tensor(oc, Y, Z))
    for c in oc.objects:
        images = [alpha(oc, e) for e in src.at(c)]
        if len(set(images)) != len(images):
            return False
        reach = [e for e in tgt.at(c)
                 if sum(oc.card(oc.cod(t.phi)) for t in e.ys) <= top]
        if set(reach) != set(images):
            return False
    return True


@pytest.mark.parametrize("name", ["P2", "P3", "adj_empty"])
def test_alpha_bijective_when_invertible(name):
    oc = get(name)
    assert diagnostics(oc).alpha_invertible
    rng = rng_for(4)
    for _ in range(10):
        assert _alpha_bijective_in_range(oc, *random_tuple(oc, rng, 3, 2))


def test_S2_alpha_lift_witness_shows_up_in_tensors():
    oc = get("S2")
    X = Collection({"2": ("x",)})
    Y = Collection({"1": ("y",)})
    assert not _alpha_bijective_in_range(oc, X, Y, Y)


# ----------------------------------------------------------- opmonoidal

def _samples(oc, seed, k=10):
    rng = rng_for(seed)
    samples, maps = [], []
    for _ in range(k):
        X, Y, Z = random_tuple(oc, rng, 3, 2)
        samples.append((X, Y, Z))
        maps.append((random_endomap(X, rng), random_endomap(Y, rng)))
    return samples, maps


def test_cardinality_functor_P2_to_S2_is_opmonoidal():
    F, _ = cardinality_functor(get("P2"), 2)
    samples, maps = _samples(F.source, 5)
    rep = check_opmonoidal(F, samples, maps)
    assert rep.passed, rep.failures[:3]
    assert rep.stats["cartesian_squares"] == 10


def test_identity_functor_opmonoidal():
    F = identity_functor(get("S2"))
    samples, maps = _samples(F.source, 6)
    assert check_opmonoidal(F, samples, maps).passed


def test_mutated_functor_breaks_alpha_coherence():
    F, _ = cardinality_functor(get("P2"), 2)
    mm = dict(F.mor_map)
    mm["2->2:1 2"] = SWAP
    bad = replace(F, mor_map=mm)
    X = Collection({c: (f"x@{c}",) for c in F.source.objects})
    Y = Collection({c: (f"y@{c}",) for c in F.source.objects})
    Z = Collection({c: (f"z@{c}",) for c in F.source.objects})
    rep = check_opmonoidal(bad, [(X, Y, Z)])
    assert "O4" in rep.failed_checks()


# -------------------------------------------------------- reconstruction

@pytest.mark.parametrize("name,count", [("S2", 11), ("P2", 10), ("adj_empty", 1)])
def test_reconstruct_counts(name, count):
    oc = get(name)
    rc = reconstruct(expose_interface(oc))
    assert len(rc.morphisms) == count
    assert same_tables(oc, rc)


def test_interface_hides_the_tables():
    iface = expose_interface(get("S2"))
    assert not hasattr(iface, "__dict__")
    assert set(iface.__slots__) == {"objects", "cardinality", "unit", "tensor",
                                    "alpha", "lam", "rho", "P2"}


def _tampered(oc, **over):
    i = expose_interface(oc)
    args = dict(objects_=i.objects, cardinality=i.cardinality, unit_=i.unit,
                tensor_=i.tensor, alpha_=i.alpha, lam_=i.lam, rho_=i.rho, P2_=i.P2)
    args.update(over)
    return TensorInterface(args.pop("objects_"), **args)


def test_reconstruction_reports_check_i():
    oc = get("S2")
    with pytest.raises(ReconstructionError) as exc:
        reconstruct(_tampered(oc, lam_=lambda e: "nope"))
    assert exc.value.check == "i"


def test_reconstruction_reports_bad_composition():
    oc = get("S2")
    real = expose_interface(oc).alpha

    def bad_alpha(e):
        out = real(e)
        if e.phi == SWAP and e.x.phi == SWAP:
            return TensorElement(out.x, SWAP, out.ys)
        return out
    with pytest.raises(ReconstructionError) as exc:
        reconstruct(_tampered(oc, alpha_=bad_alpha))
    assert exc.value.check in {"ii", "iii"}
