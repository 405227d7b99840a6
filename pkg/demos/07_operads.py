"""Operads over an operadic category, and a count that matches presheaves."""
from opcat import builders, core
from opcat.operads import (count_presheaf_actions, enumerate_operads, terminal_operad,
                           validate_operad)

S2 = builders.build_S(2)
print("terminal operad on S(2):", validate_operad(S2, terminal_operad(S2)).passed)

# over a discrete zero category, operads are exactly presheaves on the base
dz = builders.build_discrete_zero(core.free_arrow())
for sizes in [(1, 1), (2, 1), (2, 2), (3, 1)]:
    sz = dict(zip(("a", "b"), sizes))
    print(sizes, "operads:", enumerate_operads(dz, sz),
          "presheaves:", count_presheaf_actions(dz.base, sz))

# over the terminal operadic category, operads are monoids
one = builders.build_adjoin_terminal(core.empty_category())
print("monoid structures on 2 labelled points:", enumerate_operads(one, {"*": 2}))
