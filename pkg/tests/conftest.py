import random
from fractions import Fraction

import pytest

from cwsusy.cahen_wallach import CWParams


def generic_params(rng: random.Random, count: int, den: int = 7):
    """Rational 4-tuples off the locus alpha_+ = -3 alpha_+' whose nine
    i*lambda_k are nonzero with four distinct absolute values (blocks of sizes
    2, 2, 1, 4, hence a 28-dimensional isometry algebra)."""
    out = []
    while len(out) < count:
        vals = [Fraction(rng.randint(-9, 9), den) for _ in range(4)]
        p = CWParams.from_tuple(vals)
        mags = {abs(v) for v in p.i_lambdas()}
        if all(p.i_lambdas()) and len(mags) == 4 and p.alpha_plus != -3 * p.alpha_plus_prime:
            out.append(p)
    return out


def locus_params(rng: random.Random, count: int, den: int = 5):
    """Indecomposable points with alpha_+ = -3 alpha_+'."""
    out = []
    while len(out) < count:
        am, app, amp = (Fraction(rng.randint(-9, 9), den) for _ in range(3))
        p = CWParams.from_tuple((am, app, -3 * app, amp))
        if all(p.i_lambdas()):
            out.append(p)
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def generic_point():
    return CWParams.from_tuple(tuple(Fraction(k, 7) for k in (2, 1, 3, 5)))


@pytest.fixture
def locus_point():
    return CWParams.from_tuple(tuple(Fraction(k, 7) for k in (2, 1, -3, 5)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k])
