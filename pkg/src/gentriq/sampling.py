"""Seeded random generation of valid gluings, for property-style testing."""

from __future__ import annotations

import random

from .blocks import BLOCK_SPECS
from .quiver import GenTriQuiver, GluingSpec, glue


def random_gluing_spec(rng: random.Random, max_blocks: int = 10) -> GluingSpec:
    """A uniform-ish valid gluing: cross-block perfect matching of outlets,
    resampled until the glued quiver comes out connected."""
    kinds = list(BLOCK_SPECS)
    while True:
        r = rng.randint(2, max_blocks)
        chosen = [rng.choice(kinds) for _ in range(r)]
        names = [f"B{i + 1}" for i in range(r)]
        outlets = []
        for name, kind in zip(names, chosen):
            for idx in range(len(BLOCK_SPECS[kind].outlets)):
                outlets.append((name, idx + 1))
        if len(outlets) % 2:
            continue
        counts = {}
        for name, _ in outlets:
            counts[name] = counts.get(name, 0) + 1
        if max(counts.values()) > len(outlets) // 2:
            continue                      # no cross-block perfect matching exists
        pairing = _random_matching(rng, outlets)
        if pairing is None:
            continue
        spec = GluingSpec(tuple(zip(names, chosen)), tuple(pairing))
        try:
            glue(spec)
        except Exception:
            continue
        return spec


def _random_matching(rng: random.Random, outlets):
    for _ in range(50):
        pool = list(outlets)
        rng.shuffle(pool)
        pairs = []
        ok = True
        while pool:
            first = pool.pop()
            partners = [i for i, o in enumerate(pool) if o[0] != first[0]]
            if not partners:
                ok = False
                break
            j = rng.choice(partners)
            pairs.append((first, pool.pop(j)))
        if ok:
            return pairs
    return None


def random_quiver(rng: random.Random, max_blocks: int = 10) -> GenTriQuiver:
    return glue(random_gluing_spec(rng, max_blocks))
