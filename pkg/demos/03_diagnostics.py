"""Which of alpha, lambda, rho are invertible, read off the tables."""
from opcat import builders, core
from opcat.skew import diagnostics

cases = {
    "S(2)": builders.build_S(2),
    "P(3)": builders.build_P(3),
    "discrete zero": builders.build_discrete_zero(core.free_arrow()),
    "bouquets": builders.build_bouquets(["r", "g"], 2),
}
for name, oc in cases.items():
    d = diagnostics(oc)
    print(f"{name:14s} lambda/rho/alpha invertible: {d.fingerprint()}")

d = diagnostics(cases["S(2)"])
print("rho fails at", d.rho_witness)
theta, tau, lifts = d.alpha_witness
print("alpha fails at", theta, tau, "with lifts", lifts)
