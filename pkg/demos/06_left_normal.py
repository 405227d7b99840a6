"""Left normality of the normalization, with a failing example."""
from opcat import builders, core
from opcat.normalization import left_normal_check

for name, oc in [("S(2)", builders.build_S(2)), ("P(2)", builders.build_P(2)),
                 ("card one", builders.build_card_one(builders.poset3())),
                 ("discrete zero", builders.build_discrete_zero(core.point()))]:
    ok, witness = left_normal_check(oc)
    print(f"{name:14s} left normal: {ok}  witness: {witness}")
