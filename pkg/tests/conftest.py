import itertools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from mvobs.effect import boolean_algebra, diamond, make_chain, make_product, mo2
from mvobs.lawcheck import decompositions
from mvobs.observable import Observable

MV_ALGEBRAS = {
    "C1": make_chain(1),
    "C2": make_chain(2),
    "C3": make_chain(3),
    "C4": make_chain(4),
    "C1xC2": make_product([make_chain(1), make_chain(2)]),
    "2^2": boolean_algebra(2),
    "2^3": boolean_algebra(3),
}


@pytest.fixture
def c2():
    return make_chain(2)


@pytest.fixture
def b2():
    return boolean_algebra(2)


@pytest.fixture
def dia():
    return diamond()


@pytest.fixture
def mo():
    return mo2()


def rationals(denominator=4, lo=-2, hi=2):
    return st.builds(
        Fraction, st.integers(lo * denominator, hi * denominator), st.just(denominator)
    )


@st.composite
def observables(draw, E, max_support=3, denominator=4, lo=-2, hi=2, masses=None):
    sizes = [k for k in range(1, max_support + 1) if decompositions(E, k, masses)]
    k = draw(st.sampled_from(sizes))
    points = draw(
        st.lists(rationals(denominator, lo, hi), min_size=k, max_size=k, unique=True)
    )
    dec = draw(st.sampled_from(decompositions(E, k, masses)))
    return Observable(E, tuple(sorted(points)), dec)


def all_elements_triples(E):
    return itertools.product(E.elements, repeat=3)


# criterion number -> summary line, filled by test_acceptance
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
