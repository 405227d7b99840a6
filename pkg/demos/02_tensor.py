"""The skew monoidal tensor of collections and its structure maps."""
from opcat import builders
from opcat.sampling import random_tuple, rng_for
from opcat.skew import Collection, alpha, lam, render, rho, tensor, unit, verify_skew_axioms

S2 = builders.build_S(2)
X = Collection({"1": ("x",), "2": ("xx",)})
Y = Collection({"1": ("y",)})

XY = tensor(S2, X, Y)
for c in S2.objects:
    print(c, [render(e) for e in XY.at(c)])

# lambda collapses U * X back onto X, rho sends x to (x, id, units)
e = tensor(S2, unit(S2), X).at("2")[0]
print("lambda:", render(e), "->", lam(S2, e))
print("rho:", render(rho(S2, "2", "xx")))

e = tensor(S2, XY, Y).at("2")[0]
print("alpha:", render(e), "->", render(alpha(S2, e)))

# the five axioms plus naturality on a few random quadruples
rng = rng_for(0)
for k in range(3):
    W, X, Y, Z = random_tuple(S2, rng, 4, 2)
    print("sample", k, "passes:", verify_skew_axioms(S2, W, X, Y, Z).passed)
