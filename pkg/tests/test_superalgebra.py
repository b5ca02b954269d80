import itertools
from fractions import Fraction

import numpy as np
import pytest

from conftest import generic_params, locus_params
from cwsusy import superalgebra as sa
from cwsusy.cahen_wallach import CWParams, b_form, killing_basis, killing_brackets_match
from cwsusy.linalg import rank
from cwsusy.matrix import CMatrix
from cwsusy.scalars import GaussianRational, Surd
from cwsusy.spinor_connection import OddElement, family_pair, parallel_spinor_eval
from cwsusy.verification import lie_derivative_twist

GENERIC = CWParams.from_tuple(tuple(Fraction(k, 7) for k in (2, 1, 3, 5)))
LOCUS = CWParams.from_tuple(tuple(Fraction(k, 7) for k in (2, 1, -3, 5)))


def _random_odd(rng):
    space = sa.odd_space()
    return space.element(CMatrix.column([rng.randint(-2, 2) for _ in range(space.dim)]))


def test_odd_space_shape():
    space = sa.odd_space()
    assert space.dim == 24 and space.E.shape == (32, 24)
    assert all(o.satisfies_family_constraint() for o in space.basis())


def test_table_shapes_and_symmetry():
    table = sa.bracket_table(GENERIC)
    assert len(table.labels) == 28
    for l in table.labels:
        assert table.action[l].shape == (24, 24)
        assert table.forms[l].is_symmetric()
    assert table.action["+"].is_zero()
    assert table.sign == sa.KILLING_SIGN == killing_brackets_match(GENERIC)[0]


def test_even_odd_representation(rng):
    for p in generic_params(rng, 3) + [LOCUS]:
        assert sa.check_even_odd_rep(p)


def test_odd_odd_alternative_routes(rng):
    # the i* and rotation components from the closed formulas
    for p in generic_params(rng, 2):
        x, y = _random_odd(rng), _random_odd(rng)
        e = sa.oddodd(p, x, y)
        for k, v in sa.oddodd_istar_binv(p, x, y).items():
            assert e[k] == v
        for k, v in sa.oddodd_so_general(p, x, y).items():
            assert e[k] == v


def test_odd_odd_minus_component_rank():
    # K(-) pairs only the 8-dimensional xi_2 sector
    form = sa.bracket_table(GENERIC).forms["-"]
    assert 0 < rank(form) <= 8


def test_oddodd_rejects_vectors_outside_k1():
    v = CMatrix.column([1 if r == 16 else 0 for r in range(32)])
    bad = OddElement.from_vector(v)
    if sa.odd_space().contains(v):
        pytest.skip("unit vector happens to lie in K_1")
    with pytest.raises(ValueError):
        sa.oddodd(GENERIC, bad, bad)


def test_prop_even_odd_odd_all_labels(rng):
    for p in [GENERIC, LOCUS]:
        table = sa.bracket_table(p)
        for o in sa.odd_space().basis()[::5] + [_random_odd(rng)]:
            for l in table.labels:
                assert sa.check_evo(p, l, o, table).is_zero(), l


def test_lie_derivative_twisted_relation(rng):
    # coordinate route with the literal Killing fields equals the table after
    # e_- -> -e_-, e_i* -> -e_i*
    pair, B = family_pair(GENERIC), b_form(GENERIC)
    basis = sa.odd_space().basis()
    origin = [Fraction(0)] * 11
    pts = [[rng.uniform(-1, 1), rng.uniform(-0.5, 0.5)] + [rng.uniform(-1, 1) for _ in range(9)] for _ in range(2)]
    for K in killing_basis(GENERIC):
        s = lie_derivative_twist(K.label)
        for o in (basis[3], basis[18]):
            alg = sa.lie_derivative_alg(pair, B, K.label, o)
            assert sa.lie_derivative_coord(pair, B, K, o, origin) == parallel_spinor_eval(pair, alg, origin).scale(s)
            for x in pts:
                c = np.asarray(sa.lie_derivative_coord(pair, B, K, o, x))
                a = s * np.asarray(parallel_spinor_eval(pair, alg, x))
                assert np.allclose(c, a, atol=1e-9)


def test_lie_derivative_literal_sign_on_minus():
    # documents the disagreement without the twist on e_- and the duals
    pair, B = family_pair(GENERIC), b_form(GENERIC)
    o = sa.odd_space().basis()[0]
    origin = [Fraction(0)] * 11
    fields = {K.label: K for K in killing_basis(GENERIC)}
    for label in ("-", "1*"):
        alg = sa.lie_derivative_alg(pair, B, label, o)
        coord = sa.lie_derivative_coord(pair, B, fields[label], o, origin)
        if not alg.is_zero():
            assert coord != parallel_spinor_eval(pair, alg, origin)


def test_ooo_slot_identities(rng):
    unit = Surd(0, GaussianRational(0, 1))
    for p in [GENERIC, LOCUS]:
        table = sa.bracket_table(p)
        for _ in range(3):
            o = _random_odd(rng)
            r = sa.ooo_residual(p, o, table)
            assert r.xi2 == sa.ooo2(p, o.xi2).scale(unit)
            assert r.xi1 == sa.ooo1_corrected(p, o.xi1, o.xi2).scale(-unit)


def test_ooo1_printed_differs_by_three_signs(rng):
    o = _random_odd(rng)
    printed = sa.ooo1_printed(GENERIC, o.xi1, o.xi2)
    corrected = sa.ooo1_corrected(GENERIC, o.xi1, o.xi2)
    assert printed != corrected
    T = sa._ooo1_terms(o.xi1, o.xi2)
    co = sa._ooo1_coefficients(GENERIC)
    diff = CMatrix.zeros(16, 1)
    for k in sa.OOO1_SIGN_FLIPS:
        diff = diff + T[k].scale(2 * co[k])
    assert printed - corrected == diff


def test_susy_on_and_off_locus(rng):
    for p in locus_params(rng, 4):
        assert sa.susy_check(p)
    for p in generic_params(rng, 4):
        assert not sa.susy_check(p)
        witness = sa.susy_witness(p)
        assert witness is not None and not witness[1].is_zero()
    assert sa.susy_witness(LOCUS) is None


def test_susy_scaling_invariant():
    for c in (Fraction(-1), Fraction(3, 2)):
        assert sa.susy_check(LOCUS.scaled(c))
        assert not sa.susy_check(GENERIC.scaled(c))


def test_decomposable_points():
    p = CWParams.from_tuple((1, 1, -3, 0))
    with pytest.raises(sa.DecomposableError):
        sa.susy_check(p)
    assert sa.susy_check_reduced(p)
    assert not sa.susy_check_reduced(CWParams.from_tuple((1, 1, 3, 0)))


def test_sparse_and_dense_cubic_agree(monkeypatch):
    for p in (GENERIC, LOCUS):
        table = sa.bracket_table(p)
        fast, fden = sa.cubic_coefficients(table)
        monkeypatch.setattr(sa, "_sparse_cubic", lambda *a: None)
        slow, sden = sa.cubic_coefficients(table)
        monkeypatch.undo()
        for a, b in zip(fast, slow):
            assert np.array_equal(np.asarray(a, dtype=object) * sden, np.asarray(b, dtype=object) * fden)


def test_cubic_matches_residual_evaluation(rng):
    # evaluate the cubic polynomial from its coefficients and compare with the bracket route
    table = sa.bracket_table(GENERIC)
    parts, den = sa.cubic_coefficients(table)
    n = 24
    monos = list(itertools.combinations_with_replacement(range(n), 3))
    x = [rng.randint(-2, 2) for _ in range(n)]
    vals = np.array([x[a] * x[b] * x[c] for a, b, c in monos], dtype=object)
    coords = [np.asarray(p, dtype=object) @ vals for p in parts]
    o = sa.odd_space().element(CMatrix.column(x))
    r = sa.odd_space().coords(sa.ooo_residual(GENERIC, o, table).vector())
    for k in range(n):
        want = Surd.from_parts(*(Fraction(int(c[k]), den) for c in coords))
        assert r[k, 0] == want


def test_pairwise_polarization_set_is_not_spanning_for_cubics():
    # x1 x2 x3 vanishes on all basis vectors and pairwise sums of R^3
    f = lambda v: v[0] * v[1] * v[2]
    pts = [np.eye(3)[i] for i in range(3)] + [np.eye(3)[i] + np.eye(3)[j] for i, j in itertools.combinations(range(3), 2)]
    assert all(f(v) == 0 for v in pts)
    assert f(np.ones(3)) == 1


def test_polarization_set_check_agrees_on_family():
    assert sa.polarization_set_check(LOCUS)
    assert not sa.polarization_set_check(GENERIC)
