"""Fibrewise trivial maps, presheaves, and the normalized tensor."""
from opcat import builders, core
from opcat.normalization import (ft_subcategory, random_presheaf, wedge,
                                 wedge_bijectivity_check)
from opcat.sampling import rng_for

S3 = builders.build_S(3)
print("fibrewise trivial maps in S(3):", len(ft_subcategory(S3).category.morphisms))

S2 = builders.build_S(2)
rng = rng_for(1)
samples = [tuple(random_presheaf(S2, rng) for _ in range(3)) for _ in range(10)]
P, Q, _ = next(t for t in samples if t[0].carrier.size() and t[1].carrier.size())
print("P sizes", P.carrier.sizes(), "P^Q sizes", wedge(S2, P, Q).sizes())
print("S(2) verdicts:", {k: v for k, v in wedge_bijectivity_check(S2, samples).stats.items()
                         if k.endswith("bijective")})

# over a discrete zero category every class has a representative (x, id, ())
dz = builders.build_discrete_zero(core.free_arrow())
samples = [tuple(random_presheaf(dz, rng) for _ in range(3)) for _ in range(10)]
rep = wedge_bijectivity_check(dz, samples)
print("discrete zero verdicts:", {k: v for k, v in rep.stats.items() if k.endswith("bijective")})
print("lambda witness:", rep.failures[0].witness)
