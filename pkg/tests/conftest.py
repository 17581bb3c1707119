import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bivinterp.arith import Poly

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

X, Y = sympy.symbols("x1 x2")

TRIANGLE = [(0, 0), (1, 0), (0, 1)]


def to_sympy(p: Poly):
    return sum((sympy.Rational(c.numerator, c.denominator) * X**e1 * Y**e2 for (e1, e2), c in p.items()), sympy.Integer(0))


def from_sympy(expr) -> Poly:
    P = sympy.Poly(sympy.expand(expr), X, Y)
    return Poly({m: Fraction(int(c.p), int(c.q)) for m, c in P.terms()})


def random_poly(rng: random.Random, degree: int, density: float = 0.7, num: int = 9) -> Poly:
    terms = {}
    for d in range(degree + 1):
        for e1 in range(d + 1):
            if rng.random() < density:
                terms[(e1, d - e1)] = Fraction(rng.randint(-num, num), rng.randint(1, 5))
    return Poly(terms)


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def polys(draw, max_degree=4):
    n = draw(st.integers(0, max_degree))
    mons = [(e1, d - e1) for d in range(n + 1) for e1 in range(d + 1)]
    coeffs = draw(st.lists(fractions, min_size=len(mons), max_size=len(mons)))
    return Poly(dict(zip(mons, coeffs)))


points = st.tuples(fractions, fractions)


@pytest.fixture
def triangle():
    return list(TRIANGLE)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
