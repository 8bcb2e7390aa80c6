import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from eqcat.complex import GComplex, make_complex, regularize, subdivide
from eqcat.groups import (cyclic_group, dihedral_group, group_from_generators,
                          symmetric_group)

settings.register_profile(
    "props", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])

PROPS = settings.get_profile("props")

# the catalogue used by every randomized suite
CATALOG = (
    [("cyclic", n) for n in range(2, 7)]
    + [("dihedral", n) for n in range(3, 7)]
    + [("S3", 3), ("S4", 4)]
)


def catalog_group(kind, n):
    if kind == "cyclic":
        return cyclic_group(n)
    if kind == "dihedral":
        return dihedral_group(n)
    return symmetric_group(n)


@st.composite
def catalog_groups(draw):
    kind, n = draw(st.sampled_from(CATALOG))
    return catalog_group(kind, n)


@st.composite
def subgroups(draw, G):
    """A subgroup generated by up to two random elements of G."""
    k = draw(st.integers(0, 2))
    gens = [draw(st.sampled_from(G.elements)) for _ in range(k)]
    return group_from_generators(G.degree, gens).element_set


@st.composite
def g_complexes(draw, subdivided=False, max_dim=2):
    """A regular G-complex from random seed simplices closed under the action."""
    G = draw(catalog_groups())
    n = G.degree
    seeds = draw(st.lists(
        st.lists(st.integers(0, n - 1), min_size=1, max_size=max_dim + 1, unique=True),
        min_size=1, max_size=3))
    sims = {tuple(sorted(G.elements[0][v] for v in s)) for s in seeds}
    sims = {tuple(sorted(g[v] for v in s)) for s in sims for g in G}
    K = make_complex(n, sims, G)
    if subdivided:
        K = subdivide(K)
    return regularize(K)


def square_reflection() -> GComplex:
    G = group_from_generators(4, [(0, 3, 2, 1)])
    return make_complex(4, [(0, 1), (1, 2), (2, 3), (0, 3)], G)


def polygon(m, gens=()):
    G = group_from_generators(m, list(gens))
    return make_complex(m, [(i, (i + 1) % m) for i in range(m)], G)


def rotation(m, s):
    return tuple((i + s) % m for i in range(m))


@pytest.fixture
def rng():
    return random.Random(20261015)


# -- acceptance summary -----------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when != "call" and rep.passed:
        return
    n, title = mark.args
    prev = _ACCEPTANCE.get(n)
    if prev and prev[1] == "FAIL":
        return
    state = "PASS" if rep.passed else "FAIL"
    _ACCEPTANCE[n] = (title, state, rep.duration if rep.when == "call" else 0.0)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, state, dur = _ACCEPTANCE[n]
        terminalreporter.write_line(f"{state} criterion {n} ({dur:.2f} s): {title}")
