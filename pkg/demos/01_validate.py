"""Build the stock operadic categories and check their axioms."""
from dataclasses import replace

from opcat import builders, core
from opcat.operadic import is_genuine, validate_operadic

S2 = builders.build_S(2)
print("S(2):", len(S2.objects), "objects,", len(S2.morphisms), "morphisms")
print("trivial objects:", sorted(S2.trivial))

# the unique map 2 -> 1 has a single fibre, the two-point set
print("fibres of 2->1:", S2.fibres["2->1:1 1"])
print("valid:", validate_operadic(S2).passed)

# break one fibre and watch the validator name the failing axiom
bad = replace(S2, fibres={**S2.fibres, "2->1:1 1": ("1",)})
rep = validate_operadic(bad)
print("after corruption:", rep.passed, rep.failed_checks())
print("first witness:", rep.failures[0].witness)

# the discrete zero construction has no trivial objects at all
dz = builders.build_discrete_zero(core.free_arrow())
print("discrete zero valid:", validate_operadic(dz).passed, "genuine:", is_genuine(dz))
