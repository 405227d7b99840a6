"""Seeded generation of collections, collection maps and presheaves.

All randomness comes from an explicit ``random.Random`` (Mersenne Twister)
instance passed by the caller.
"""
from __future__ import annotations

import random


from .skew import Collection


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


def random_collection(oc, rng: random.Random, max_size: int = 2,
                      prefix: str = "x", density: float = 1.0) -> Collection:
    """Each object gets a set of size uniform in ``0..max_size``.

    With ``density < 1`` an object is first left empty with probability
    ``1 - density``; this keeps iterated tensors over large fixtures small.
    """
    sets = {}
    for c in oc.objects:
        if density < 1.0 and rng.random() >= density:
            continue
        n = rng.randint(0, max_size)
        if n:
            sets[c] = tuple(f"{prefix}{k}@{c}" for k in range(n))
    return Collection(sets)


def random_tuple(oc, rng: random.Random, k: int, max_size: int = 2,
                 density: float = 1.0) -> list[Collection]:
    return [random_collection(oc, rng, max_size, prefix=p, density=density)
            for p in "wxyzv"[:k]]


def random_endomap(X: Collection, rng: random.Random) -> dict:
    """A random map ``X -> X`` as ``{object: {element: image}}``."""
    return {c: {x: rng.choice(xs) for x in xs} for c, xs in X.sets.items()}


def full_collection(oc, size: int = 1, prefix: str = "x") -> Collection:
    return Collection({c: tuple(f"{prefix}{k}@{c}" for k in range(size))
                       for c in oc.objects})
