"""Shared, cached fixtures: the big ones are built once per session."""
from functools import lru_cache

from opcat import builders, core
from opcat.normalization import hopf_sufficient_check
from opcat.operadic import validate_operadic
from opcat.skew import diagnostics

BUILDERS = {
    "S2": lambda: builders.build_S(2),
    "S3": lambda: builders.build_S(3),
    "P2": lambda: builders.build_P(2),
    "P3": lambda: builders.build_P(3),
    "dz_arrow": lambda: builders.build_discrete_zero(core.free_arrow()),
    "dz_poset3": lambda: builders.build_discrete_zero(builders.poset3()),
    "adj_poset3": lambda: builders.build_adjoin_terminal(builders.poset3()),
    "adj_empty": lambda: builders.build_adjoin_terminal(core.empty_category()),
    "card_one_poset3": lambda: builders.build_card_one(builders.poset3()),
    "bq_rg2": lambda: builders.build_bouquets(["r", "g"], 2),
    "om22": lambda: builders.build_omega2(2, 2),
    "om32": lambda: builders.build_omega2(3, 2),
}

# every built-in fixture that the acceptance criteria range over
ALL = ["S2", "S3", "P2", "P3", "dz_arrow", "dz_poset3", "adj_poset3", "adj_empty",
       "card_one_poset3", "bq_rg2", "om32"]
GENUINE = ["S2", "S3", "P2", "P3", "adj_poset3", "adj_empty", "bq_rg2", "om32"]

# sampling knobs per fixture, sized so iterated tensors stay small
SAMPLING = {"S3": (1, 1.0), "P3": (1, 1.0), "bq_rg2": (1, 1.0), "om32": (1, 0.4)}


def sampling(name):
    return SAMPLING.get(name, (2, 1.0))


@lru_cache(maxsize=None)
def get(name):
    return BUILDERS[name]()


@lru_cache(maxsize=None)
def validation(name):
    return validate_operadic(get(name))


@lru_cache(maxsize=None)
def hopf(name, mode="all"):
    return hopf_sufficient_check(get(name), mode=mode)


@lru_cache(maxsize=None)
def diagnosis(name):
    return diagnostics(get(name))
