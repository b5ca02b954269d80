import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import generic_params
from cwsusy.cahen_wallach import BForm, CWParams, b_form, lie_algebra
from cwsusy.clifford_core import CliffordElement, build_clifford_v9
from cwsusy.linalg import rank
from cwsusy.matrix import CMatrix
from cwsusy.scalars import Surd
from cwsusy.spinor_connection import (
    ConnectionPair,
    OddElement,
    ParallelSpinorField,
    covariant_derivative,
    curvature,
    family_pair,
    flat_check,
    parallel_dimension,
    parallel_space,
    q_family_closed_form,
    q_map,
    q_three_term,
    rho_map,
    upper_right,
    x1234,
)

SEVENTHS = CWParams.from_tuple(tuple(Fraction(k, 7) for k in (2, 1, -3, 5)))


def test_q_three_routes_agree(rng):
    gens = build_clifford_v9().generators
    for p in generic_params(rng, 5):
        pair = family_pair(p)
        for i in range(1, 10):
            formal = q_map(pair, CliffordElement.vector(i)).matrix_of(gens)
            assert q_family_closed_form(p, i) == pair.q(i) == q_three_term(pair, i) == formal


def test_q_closed_form_frozen_entry():
    # e_5 sector: a = a+ - a+' on X^+, b = a- - a-' on X^-
    q5 = q_family_closed_form(SEVENTHS, 5)
    g5 = build_clifford_v9().generators[4]
    assert q5 == (g5 @ x1234(1)).scale(Fraction(16, 49)) + (g5 @ x1234(-1)).scale(Fraction(9, 49))


def test_flat_benchmark():
    for beta in (Fraction(1), Fraction(-2, 3), Fraction(5, 2)):
        g123 = CliffordElement.monomial(1, 2, 3)
        pair = ConnectionPair(g123 * (-3 * beta), g123 * beta)
        B = BForm((-16 * beta ** 2,) * 3 + (-4 * beta ** 2,) * 6)
        assert all(pair.q(i) == pair.generators[i - 1].scale(-B[i]) for i in range(1, 10))
        assert flat_check(pair, B)
        assert parallel_dimension(pair, B) == 32


def test_generic_family_has_24_parallel_spinors(rng):
    for p in generic_params(rng, 20):
        pair, B = family_pair(p), b_form(p)
        assert not flat_check(pair, B)
        assert parallel_dimension(pair, B) == 24


def test_kernel_is_x_plus_sector():
    pair, B = family_pair(SEVENTHS), b_form(SEVENTHS)
    dim, basis = parallel_space(pair, B)
    xi2 = [o.xi2 for o in basis if not o.xi2.is_zero()]
    assert dim == 24 and len(xi2) == 8
    Xp = x1234(1)
    assert all(Xp @ v == v for v in xi2)
    assert CMatrix.block([xi2]).shape == (16, 8)
    assert rank(CMatrix.block([xi2])) == rank(Xp) == 8


def test_kernel_intersection_order_independent():
    pair, B = family_pair(SEVENTHS), b_form(SEVENTHS)
    d1, _ = parallel_space(pair, B)
    d2, _ = parallel_space(pair, B, order=list(range(8, -1, -1)))
    assert d1 == d2 == parallel_dimension(pair, B)


def test_curvature_closed_forms():
    pair, B = family_pair(SEVENTHS), b_form(SEVENTHS)
    alg = lie_algebra(B)
    rho = rho_map(pair, B)
    inv = Surd(0, Fraction(-1, 2))
    labels = ["+", "-"] + [str(i) for i in range(1, 10)]
    for a, b in itertools.combinations(labels, 2):
        R = curvature(rho, alg, a, b)
        if a == "-" and b not in ("+", "-"):
            i = int(b)
            assert R == upper_right((pair.q(i) + pair.generators[i - 1].scale(B[i])).scale(inv))
        else:
            assert R.is_zero(), (a, b)


def test_flat_pair_has_vanishing_curvature_everywhere():
    g123 = CliffordElement.monomial(1, 2, 3)
    pair = ConnectionPair(g123 * -3, g123)
    B = BForm((-16,) * 3 + (-4,) * 6)
    alg = lie_algebra(B)
    rho = rho_map(pair, B)
    for a, b in itertools.combinations(alg.labels, 2):
        assert curvature(rho, alg, a, b).is_zero()


@pytest.mark.parametrize("direction", ["+", "-"] + list(range(1, 10)))
def test_parallel_spinors_are_parallel_float_route(direction):
    # second route: apply D = nabla + rho to the closed-form field numerically
    pair, B = family_pair(SEVENTHS), b_form(SEVENTHS)
    _, basis = parallel_space(pair, B)
    rng = random.Random(4)
    for odd in (basis[0], basis[16], basis[23], basis[7]):
        field = ParallelSpinorField(pair, odd)
        for _ in range(2):
            x = [rng.uniform(-1, 1) for _ in range(11)]
            assert np.abs(np.asarray(covariant_derivative(pair, B, field, x, direction))).max() < 1e-9


def test_parallel_spinor_exact_at_origin_slice():
    pair, B = family_pair(SEVENTHS), b_form(SEVENTHS)
    _, basis = parallel_space(pair, B)
    x = [Fraction(1, 3), Fraction(0)] + [Fraction(k, 5) for k in range(9)]
    field = ParallelSpinorField(pair, basis[20])
    for direction in ["+", "-"] + list(range(1, 10)):
        assert covariant_derivative(pair, B, field, x, direction).is_zero()


def test_non_kernel_data_is_not_parallel():
    pair, B = family_pair(SEVENTHS), b_form(SEVENTHS)
    zero = CMatrix.zeros(16, 1)
    xi2 = x1234(-1).take(cols=[0])
    assert not xi2.is_zero()
    field = ParallelSpinorField(pair, OddElement(zero, xi2))
    # the obstruction (q + B) xi_2 enters D_- linearly in the transverse coordinates
    x = [Fraction(0), Fraction(0)] + [Fraction(1)] * 9
    assert not covariant_derivative(pair, B, field, x, "-").is_zero()
    assert covariant_derivative(pair, B, field, [Fraction(0)] * 11, "-").is_zero()
