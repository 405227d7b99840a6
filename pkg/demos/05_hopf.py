"""The Hopf-type sufficient condition for invertible normalized associativity."""
from opcat import builders
from opcat.normalization import hopf_sufficient_check

for name, oc in [("P(2)", builders.build_P(2)), ("S(2)", builders.build_S(2)),
                 ("bouquets", builders.build_bouquets(["r", "g"], 2))]:
    rep = hopf_sufficient_check(oc)
    print(f"{name:9s} passes: {rep.passed}  thetas scanned: {rep.stats['thetas']}")

# level 2 trees: one theta is enough to see the failure
om = builders.build_omega2(3, 2)
theta = "[1 2 2;1 1]:3>2:1 1 2->2>1:1 1"
rep = hopf_sufficient_check(om, thetas=[theta])
print("2-trees passes:", rep.passed, "failing omegas at theta:", len(rep.failures))
omega = ("[1;1 2]:1>2:1->1>2:1", "[1 1;1 1]:2>2:1 2->1>1:1")
hit = [f for f in rep.failures if f.witness[1] == omega]
print("the known omega:", hit[0].check, hit[0].message)
