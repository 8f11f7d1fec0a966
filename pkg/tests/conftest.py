import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from triangulata.coloring import enumerate_partitions
from triangulata.embedding import DomainError, k4
from triangulata.generator import Catalog, generate_delta4
from triangulata.wheelops import extend3, extend4

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CATALOGS: dict[int, Catalog] = {}
_PARTS: dict[bytes, object] = {}


def catalog(n: int) -> Catalog:
    """Minimum-degree-4 catalog of order ``n``, shared by the whole session."""
    return generate_delta4(n, _CATALOGS)


def partitions(entry):
    if entry.code not in _PARTS:
        _PARTS[entry.code] = enumerate_partitions(entry.graph)
    return _PARTS[entry.code]


def graphs_upto(n: int, start: int = 6):
    for m in range(start, n + 1):
        yield from catalog(m)


@pytest.fixture(scope="session")
def cat():
    return catalog


@st.composite
def triangulations(draw, max_extra: int = 8):
    """Random triangulation grown from K4 by face fills and 4-wheel splits."""
    g = k4()
    for _ in range(draw(st.integers(0, max_extra))):
        if draw(st.booleans()):
            f = draw(st.sampled_from(sorted(g._faces)))
            g = extend3(g, f)
        else:
            u = draw(st.integers(0, g.n - 1))
            nb = sorted(g.neighbors(u))
            x = draw(st.sampled_from(nb))
            y = draw(st.sampled_from([w for w in nb if w != x]))
            try:
                g = extend4(g, (x, u, y))
            except DomainError:
                pass
    return g


@st.composite
def relabelled(draw, g):
    perm = draw(st.permutations(range(g.n)))
    return g.relabel(perm)
