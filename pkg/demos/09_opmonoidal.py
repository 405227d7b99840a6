"""The cardinality functor to finite sets is opmonoidal with cartesian F^2."""
from opcat import builders
from opcat.operadic import validate_functor
from opcat.sampling import random_endomap, random_tuple, rng_for
from opcat.skew import check_opmonoidal

P2 = builders.build_P(2)
F, S2 = builders.cardinality_functor(P2)
print("operadic functor:", validate_functor(F).passed)

rng = rng_for(2)
samples, maps = [], []
for _ in range(10):
    X, Y, Z = random_tuple(P2, rng, 3, 2)
    samples.append((X, Y, Z))
    maps.append((random_endomap(X, rng), random_endomap(Y, rng)))
rep = check_opmonoidal(F, samples, maps)
print("opmonoidal:", rep.passed, "cartesian squares:", rep.stats["cartesian_squares"])
