import math

import pytest

from knotted_spheres.claims import Verifier
from knotted_spheres.corpus import builtin_corpus, by_name
from knotted_spheres.expr import parse
from knotted_spheres.knots import make_case1, make_case2, make_general
from knotted_spheres.patch import CurveSpec, ExprComponent

# small per-domain grids keep the harness tests quick
TEST_RESOLUTION = 12


def expr_curve(x1, x2, x3, x4, u_domain, params=None):
    """Profile curve from four expression strings."""
    names = tuple(params or {})
    return CurveSpec(
        tuple(ExprComponent(parse(text, names), text) for text in (x1, x2, x3, x4)),
        dict(params or {}),
        u_domain,
    )


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture(scope="session")
def named(corpus):
    return by_name(corpus)


@pytest.fixture(scope="session")
def verifier(corpus):
    return Verifier(corpus, resolution=TEST_RESOLUTION)


@pytest.fixture(scope="session")
def ledger(verifier):
    return verifier.run()


@pytest.fixture(scope="module")
def sphere():
    """Round unit sphere as a Case II surface."""
    return make_case2(
        parse("-cos(u)"), parse("0"), parse("sin(u)"), 0.0, u_domain=(0.1, math.pi / 2), name="sphere",
    )


@pytest.fixture(scope="module")
def half_angle():
    """Case I with phi = u/2."""
    return make_case1(
        parse("sqrt(3)/2*u"), parse("0"), parse("u/2"), u_domain=(0.0, 3.0), name="half-angle",
    )


@pytest.fixture(scope="module")
def clifford_torus():
    return make_general(expr_curve("cos(u)", "sin(u)", "1", "0", (0.0, 2.0 * math.pi)), name="clifford")


@pytest.fixture(scope="module")
def plane():
    return make_case2(parse("1"), parse("0"), parse("u"), 0.0, u_domain=(0.5, 2.0), name="plane")


@pytest.fixture(scope="module")
def cone():
    return make_case2(
        parse("u*c + d", ("c", "d")), parse("0"), parse("u*s", ("s",)), 0.0,
        u_domain=(0.5, 2.0), params={"c": 0.8, "s": 0.6, "d": 0.5}, name="cone",
    )


@pytest.fixture
def make_curve():
    return expr_curve
