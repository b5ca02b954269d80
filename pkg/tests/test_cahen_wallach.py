from fractions import Fraction

import numpy as np
import pytest

from conftest import generic_params
from cwsusy.cahen_wallach import (
    BForm,
    CWParams,
    b_form,
    decomposability,
    isometry_equivalent,
    killing_basis,
    killing_brackets_match,
    killing_verify,
    lie_algebra,
    metric_at,
)

SEVENTHS = CWParams.from_tuple(tuple(Fraction(k, 7) for k in (2, 1, -3, 5)))


def test_b_form_frozen():
    # hand computation: i*lambda = (1,1,3,3,-4,-2,-2,-2,-2)/7
    assert b_form(SEVENTHS).diag == tuple(Fraction(-k, 49) for k in (1, 1, 9, 9, 16, 4, 4, 4, 4))
    assert SEVENTHS.i_lambdas() == tuple(Fraction(k, 7) for k in (1, 1, 3, 3, -4, -2, -2, -2, -2))


def test_params_tuple_order_and_scaling():
    p = CWParams.from_tuple((1, 2, 3, 4))
    assert (p.alpha_minus, p.alpha_plus_prime, p.alpha_plus, p.alpha_minus_prime) == (1, 2, 3, 4)
    assert b_form(p.scaled(3)).diag == b_form(p).scaled(9).diag
    with pytest.raises(TypeError):
        CWParams(0.5, 1, 1, 1)


@pytest.mark.parametrize("tup,zeros", [
    ((1, 0, 0, 0), 5),
    ((1, 1, 2, 0), 2),        # a- = a+'
    ((2, 1, -1, 0), 4),       # a+ = -a+'
    ((1, 1, 1, 0), 3),        # a- = a+' and a+ = a+': multiplicities add
    ((1, 2, 2, 0), 1),        # a+ = a+'
    ((0, 0, 0, 1), 9),
    ((2, 1, -3, 5), 0),
])
def test_zero_counts(tup, zeros):
    d = decomposability(b_form(CWParams.from_tuple(tup)))
    assert d.zero_count == zeros
    assert d.indecomposable == (zeros == 0)


def test_structure_constants_frozen():
    alg = lie_algebra(SEVENTHS)
    assert len(alg.labels) == 28
    assert alg.bracket_basis("-", "1") == {"1*": 1}
    assert alg.bracket_basis("-", "1*") == {"1": Fraction(1, 49)}
    assert alg.bracket_basis("1", "1*") == {"+": Fraction(-1, 49)}
    assert alg.bracket_basis("+", "5") == {}


def test_jacobi_random_params(rng):
    for p in generic_params(rng, 5):
        alg = lie_algebra(p)
        assert alg.is_antisymmetric()
        assert alg.jacobi_residuals() == []


def test_so_block_sizes_change_dimension():
    # blocks (2,2,1,4) give 1+1+0+6 rotations; all equal gives 36
    assert len(lie_algebra(SEVENTHS).labels) == 28
    assert len(lie_algebra(BForm((Fraction(-1),) * 9)).labels) == 2 + 18 + 36


def _lie_derivative_fd(B, K, x, h=1e-5):
    # oracle: central finite differences of the coordinate formula for L_K g
    n = len(x)
    x = np.array(x, dtype=float)
    g = np.array(metric_at(B, list(x)), dtype=float)

    def Kc(y):
        return np.array(K.evaluate(list(y)), dtype=complex)

    def gmat(y):
        return np.array(metric_at(B, list(y)), dtype=float)

    dK = np.zeros((n, n), dtype=complex)   # dK[mu, rho] = d_mu K^rho
    dg = np.zeros((n, n, n))               # dg[rho] = d_rho g
    for mu in range(n):
        e = np.zeros(n)
        e[mu] = h
        dK[mu] = (Kc(x + e) - Kc(x - e)) / (2 * h)
        dg[mu] = (gmat(x + e) - gmat(x - e)) / (2 * h)
    k = Kc(x)
    return np.einsum("r,rmn->mn", k, dg) + dK @ g + (dK @ g).T


def test_killing_equation_finite_difference_route(rng):
    B = b_form(SEVENTHS)
    fields = killing_basis(SEVENTHS)
    assert len(fields) == 28
    nrng = np.random.default_rng(7)
    for _ in range(3):
        x = nrng.uniform(-1, 1, 11)
        for K in fields:
            assert np.abs(_lie_derivative_fd(B, K, x)).max() < 1e-6, K.label


def test_killing_verify_symbolic_route(rng):
    B = b_form(SEVENTHS)
    exact = [[Fraction(0), Fraction(0)] + [Fraction(rng.randint(-4, 4), 3) for _ in range(9)]]
    floats = [[rng.uniform(-1, 1) for _ in range(11)] for _ in range(3)]
    for K in killing_basis(SEVENTHS):
        assert killing_verify(B, K, exact + floats, 1e-9)


def test_killing_brackets_single_sign(rng):
    samples = [[rng.uniform(-1, 1) for _ in range(11)] for _ in range(2)]
    sign, ok = killing_brackets_match(SEVENTHS, samples, 1e-9)
    assert ok and sign == -1


def test_isometry_equivalence():
    flipped = CWParams.from_tuple(tuple(Fraction(k, 7) for k in (-2, 1, -3, 5)))
    assert isometry_equivalent(b_form(SEVENTHS), b_form(flipped))
    # B and c^2 B are related by a boost
    assert isometry_equivalent(b_form(SEVENTHS), b_form(SEVENTHS.scaled(2)))
    other = CWParams.from_tuple(tuple(Fraction(k, 7) for k in (2, 1, 3, 5)))
    assert not isometry_equivalent(b_form(SEVENTHS), b_form(other))


@pytest.mark.parametrize("tup,dim", [
    ((Fraction(-8, 7), 0, Fraction(-9, 7), Fraction(-1, 7)), 36),   # blocks of sizes 4, 5
    ((Fraction(-1, 7), Fraction(-4, 7), Fraction(1, 7), Fraction(8, 7)), 38),
])
def test_enlarged_algebras_at_eigenvalue_coincidences(tup, dim):
    p = CWParams.from_tuple(tup)
    alg = lie_algebra(p)
    assert len(alg.labels) == dim
    assert alg.jacobi_residuals() == []
    assert len(killing_basis(p)) == dim
