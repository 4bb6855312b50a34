import pytest

import gentriq as G


def load_example(name: str):
    q = G.load_gtq(G.example_text(name))
    sq = G.star_quiver(q)
    od = G.orbit_data(sq)
    return q, sq, od


@pytest.fixture
def ex32():
    return load_example("ex32.gtq")


@pytest.fixture
def ex33():
    return load_example("ex33.gtq")


@pytest.fixture
def ex23():
    return load_example("ex23.gtq")


@pytest.fixture
def twoloop():
    return load_example("twoloop.gtq")


@pytest.fixture
def spherical():
    return load_example("spherical.gtq")


def canon_cycles(cycles):
    out = []
    for cyc in cycles:
        i = cyc.index(min(cyc))
        out.append(tuple(cyc[i:] + cyc[:i]))
    return frozenset(out)
