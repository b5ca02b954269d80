"""The geometric superalgebra K_0 + K_1 of the family and its Jacobi checks.

The odd part K_1 is the 24-dimensional space of constant data
``(xi_1, xi_2)`` with ``xi_2`` in the X^+_1234 sector.  Odd vectors are stored
in coordinates of a fixed echelon basis ``E`` (32x24); the coordinate map back
from ``E``'s range is a row selection.

Even-odd actions are 24x24 matrices ``A_mu = -rho(e_mu)|K_1``; odd-odd brackets
are symmetric 24x24 forms ``b_mu`` with ``{x, y}^mu = x^T b_mu y``.  The
rotation component of the odd-odd bracket uses each label ``"ij"`` with i < j
once, which equals the half sum over ordered pairs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Tuple

import numpy as np
from scipy import sparse

from .cahen_wallach import (
    CWLieAlgebra,
    CWParams,
    KillingField,
    b_form,
    christoffel_second,
    family_labels,
    killing_field,
    lie_algebra,
    metric_at,
    parse_label,
)
from .clifford_core import build_clifford_w11, default_v9, monomial_matrix
from .linalg import nullspace
from .matrix import CMatrix
from .scalars import GaussianRational, Surd
from .spinor_connection import (
    ConnectionPair,
    OddElement,
    ParallelSpinorField,
    _lin,
    _scal,
    _times,
    _vadd,
    _zero_like,
    family_pair,
    rho_map,
    x1234,
)
from .trigpoly import MINUS, PLUS

__all__ = [
    "KILLING_SIGN",
    "OddSpace",
    "odd_space",
    "EvenElement",
    "BracketTable",
    "bracket_table",
    "lie_derivative_alg",
    "lie_derivative_coord",
    "oddodd",
    "oddodd_istar_binv",
    "oddodd_so_general",
    "check_even_odd_rep",
    "rep_failures",
    "check_evo",
    "ooo_residual",
    "ooo2",
    "ooo1_printed",
    "ooo1_corrected",
    "cubic_coefficients",
    "susy_check",
    "susy_check_reduced",
    "susy_witness",
    "polarization_set_check",
    "DecomposableError",
]

# [K_a, K_b] = KILLING_SIGN * K_[e_a, e_b]; fixed by killing_brackets_match
KILLING_SIGN = -1

_HALF = Fraction(1, 2)


class DecomposableError(ValueError):
    """Raised when an operation needs 1/lambda_i but some lambda_i = 0."""


# ---------------------------------------------------------------------------
# the odd space


@dataclass(frozen=True, eq=False)
class OddSpace:
    """Basis ``E`` (32 x 24) of K_1 and the rows selecting coordinates."""

    E: CMatrix
    rows: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.E.cols

    def coords(self, v: CMatrix) -> CMatrix:
        """Coordinates of a 32-vector in the range of E."""
        return v.take(rows=self.rows)

    def element(self, c: CMatrix) -> OddElement:
        return OddElement.from_vector(self.E @ c)

    def basis(self) -> List[OddElement]:
        return [OddElement.from_vector(self.E.take(cols=[k])) for k in range(self.dim)]

    def contains(self, v: CMatrix) -> bool:
        return self.E @ self.coords(v) == v


@lru_cache(maxsize=None)
def odd_space() -> OddSpace:
    """xi_1 arbitrary, X^-_1234 xi_2 = 0."""
    ker = nullspace(x1234(-1))
    n = 16
    cols = []
    for k in range(n):
        cols.append(CMatrix.column([1 if r == k else 0 for r in range(2 * n)]))
    free = []
    for v in ker:
        # echelon normalization: a unit entry at the free coordinate
        f = next(r for r in range(n) if v[r, 0] == 1 and all(w[r, 0] == 0 for w in ker if w is not v))
        free.append(f)
        cols.append(CMatrix.block([[CMatrix.zeros(n, 1)], [v]]))
    E = CMatrix.block([cols])
    rows = tuple(range(n)) + tuple(n + f for f in free)
    space = OddSpace(E, rows)
    assert E.take(rows=rows) == CMatrix.identity(E.cols)
    return space


# ---------------------------------------------------------------------------
# even elements


@dataclass(frozen=True)
class EvenElement:
    """Coefficients over Killing labels."""

    coeffs: Mapping[str, object]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {k: Surd.coerce(v) for k, v in self.coeffs.items() if Surd.coerce(v)})

    def __getitem__(self, label: str):
        return self.coeffs.get(label, Surd(0))

    def __add__(self, other: "EvenElement") -> "EvenElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Surd(0)) + v
        return EvenElement(out)

    def __sub__(self, other: "EvenElement") -> "EvenElement":
        return self + other.scale(-1)

    def scale(self, s) -> "EvenElement":
        s = Surd.coerce(s)
        return EvenElement({k: v * s for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def bracket(self, other: "EvenElement", alg: CWLieAlgebra, sign: int = KILLING_SIGN) -> "EvenElement":
        """Vector-field commutator: sign times the abstract bracket."""
        out: Dict[str, Surd] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                for c, v in alg.bracket_basis(a, b).items():
                    out[c] = out.get(c, Surd(0)) + ca * cb * Surd.coerce(v) * sign
        return EvenElement(out)


# ---------------------------------------------------------------------------
# bracket table


def _selector(half: int) -> CMatrix:
    """32x32 projection onto the xi_1 (half = 1) or xi_2 (half = 2) block."""
    one, zero = CMatrix.identity(16), CMatrix.zeros(16)
    if half == 1:
        return CMatrix.block([[one, zero], [zero, zero]])
    return CMatrix.block([[zero, zero], [zero, one]])


@lru_cache(maxsize=None)
def _base_forms() -> Dict[str, CMatrix]:
    """Parameter-free 32x32 forms; the label's scalar factor is applied later."""
    w = build_clifford_w11()
    C = w.charge
    G = w.generators
    P1, P2 = _selector(1), _selector(2)
    forms: Dict[str, CMatrix] = {}
    forms["+"] = P1.T @ C @ G["-"] @ P1
    forms["-"] = P2.T @ C @ G["+"] @ P2
    g125 = monomial_matrix(w, [1, 2, 5])
    for i in range(1, 10):
        N = P1.T @ C @ G[i] @ P2
        forms[str(i)] = N + N.T
        N = P1.T @ C @ g125 @ G[i] @ P2
        forms[f"{i}*"] = N + N.T
    forms["12"] = P2.T @ C @ G["+"] @ G[5] @ P2
    forms["34"] = P2.T @ C @ G["+"] @ monomial_matrix(w, [1, 2, 3, 4, 5]) @ P2
    for i, j in itertools.combinations(range(6, 10), 2):
        forms[f"{i}{j}"] = P2.T @ C @ G["+"] @ monomial_matrix(w, [1, 2, 5, i, j]) @ P2
    return forms


@lru_cache(maxsize=None)
def _restricted_base_forms() -> Dict[str, CMatrix]:
    E = odd_space().E
    return {k: E.T @ m @ E for k, m in _base_forms().items()}


def _form_factor(params: CWParams, label: str):
    """Scalar in front of the base form: 1, i/lambda_i or i lambda_k."""
    kind, idx = parse_label(label)
    il = params.i_lambdas()
    if kind in ("plus", "minus", "trans"):
        return Fraction(1)
    if kind == "dual":
        v = il[idx[0] - 1]
        if v == 0:
            raise DecomposableError(f"lambda_{idx[0]} = 0: the {label} component is undefined")
        # i / lambda = i / (-i * il) = -1 / il
        return Fraction(-1) / v
    i, j = idx
    rep = {(1, 2): 1, (3, 4): 3}.get((i, j), 6)
    if (i, j) not in ((1, 2), (3, 4)) and not (i >= 6 and j >= 6):
        raise ValueError(f"no odd-odd component for rotation {label}")
    # i * lambda_k = i * (-i * il) = il
    return il[rep - 1]


@dataclass(frozen=True, eq=False)
class BracketTable:
    """All brackets of the superalgebra at one parameter point."""

    params: CWParams
    labels: Tuple[str, ...]
    algebra: CWLieAlgebra
    action: Mapping[str, CMatrix]
    forms: Mapping[str, CMatrix]
    sign: int = KILLING_SIGN

    def act(self, label: str, odd_coords: CMatrix) -> CMatrix:
        return self.action[label] @ odd_coords

    def bracket_odd(self, x: CMatrix, y: CMatrix) -> EvenElement:
        return EvenElement({l: (x.T @ self.forms[l] @ y).scalar() for l in self.labels if l in self.forms})


def _labels_for_table(params: CWParams, reduced: bool) -> Tuple[str, ...]:
    labels = family_labels()
    if not reduced:
        return tuple(labels)
    il = params.i_lambdas()
    keep = []
    for l in labels:
        kind, idx = parse_label(l)
        if kind in ("trans", "dual") and il[idx[0] - 1] == 0:
            continue
        keep.append(l)
    return tuple(keep)


def bracket_table(params: CWParams, reduced: bool = False) -> BracketTable:
    """Assemble actions and odd-odd forms on the 28 family labels.

    With ``reduced`` the labels i, i* of zero eigenvalues are dropped; without
    it a zero eigenvalue raises :class:`DecomposableError`.
    """
    pair = family_pair(params)
    B = b_form(params)
    labels = _labels_for_table(params, reduced)
    alg = lie_algebra(B).restrict(labels) if _is_standard(B) else _family_algebra(B, labels)
    space = odd_space()
    rho = rho_map(pair, B, labels)
    action = {}
    for l in labels:
        action[l] = -(rho[l] @ space.E).take(rows=space.rows)
    base = _restricted_base_forms()
    forms = {l: base[l].scale(_form_factor(params, l)) for l in labels}
    return BracketTable(params, labels, alg, action, forms)


def _is_standard(B) -> bool:
    labs = set(lie_algebra(B).labels)
    return all(l in labs for l in family_labels())


def _family_algebra(B, labels) -> CWLieAlgebra:
    """Structure constants on the family labels when so_B is smaller than
    expected (never for the nine-dimensional family, kept for safety)."""
    from .cahen_wallach import BForm
    full = lie_algebra(BForm(B.diag))
    return full.restrict([l for l in labels if l in full.labels])


# ---------------------------------------------------------------------------
# Lie derivative: algebraic table and coordinate formula


def lie_derivative_alg(pair: ConnectionPair, B, label: str, odd: OddElement) -> OddElement:
    """Constant data of L_K(mu) applied to the parallel spinor with data odd:
    + -> 0, - -> -(c xi_1, d xi_2), i -> (Gamma_+ s(e_i) xi_2 / 2, 0),
    i* -> -(Gamma_+ B(e_i) xi_2 / 2, 0), ij -> (Gamma_ij xi_1 / 2, Gamma_ij xi_2 / 2)."""
    B = b_form(B) if isinstance(B, CWParams) else B
    kind, idx = parse_label(label)
    w = pair.w_rep()
    G = w.generators
    zero = CMatrix.zeros(pair.dim, 1)
    lower = CMatrix.block([[zero], [odd.xi2]])
    if kind == "plus":
        return OddElement(zero, zero)
    if kind == "minus":
        return OddElement(-(pair.cbar_matrix @ odd.xi1), -(pair.d_matrix @ odd.xi2))
    if kind == "trans":
        s = pair.s(idx[0])
        s32 = CMatrix.block([[s, CMatrix.zeros(pair.dim)], [CMatrix.zeros(pair.dim), s]])
        v = (G["+"] @ s32 @ lower).scale(_HALF)
        return OddElement.from_vector(v)
    if kind == "dual":
        i = idx[0]
        v = (G["+"] @ G[i] @ lower).scale(-B[i] * _HALF)
        return OddElement.from_vector(v)
    i, j = idx
    v = (G[i] @ G[j] @ odd.vector()).scale(_HALF)
    return OddElement.from_vector(v)


def _frame_vectors(B, x):
    """E_+ = d_+, E_- = d_- + (1/2) sum B_ii (x^i)^2 d_+, E_i = d_i."""
    n = B.n
    h = sum((_times(x[k + 1], B[k] * _HALF) * x[k + 1] if _exact_all(x) else complex(x[k + 1]) ** 2 * float(B[k]) / 2)
            for k in range(1, n + 1))
    frames = {}
    e = [0] * (n + 2)
    e[PLUS] = 1
    frames["+"] = e
    e = [0] * (n + 2)
    e[PLUS], e[MINUS] = h, 1
    frames["-"] = e
    for k in range(1, n + 1):
        e = [0] * (n + 2)
        e[k + 1] = 1
        frames[k] = e
    return frames


def _exact_all(x) -> bool:
    from .trigpoly import _is_exact
    return all(_is_exact(v) for v in x) and not GaussianRational.coerce(x[MINUS])


def _num(v, exact: bool):
    if exact:
        return Surd.coerce(v)
    return complex(v)


def lie_derivative_coord(pair: ConnectionPair, B, K: KillingField, odd: OddElement, x):
    """L_K psi = nabla_K psi - (1/4) sum_ab (nabla K)_ab Gamma^a Gamma^b psi in
    the null frame (E_+, E_-, E_i) with Gamma^+ = Gamma_-, Gamma^- = Gamma_+."""
    B = b_form(B) if isinstance(B, CWParams) else B
    params = pair.params
    if params is None:
        raise ValueError("the coordinate Lie derivative needs a family pair")
    try:
        ref = killing_field(params.lambdas(), K.label)
    except ValueError:
        raise ValueError(f"{K.label!r} is not a Killing basis label") from None
    if not ref.equals(K):
        raise ValueError("K is not the Killing basis field for its label")
    exact = _exact_all(x)
    n = B.n
    dim = n + 2
    field = ParallelSpinorField(pair, odd)
    psi = field.value(x)
    w = pair.w_rep()
    G = w.generators

    # nabla_K psi = K^mu nabla_mu psi
    Kx = [_num(c, exact) for c in K.evaluate(x)]
    out = _zero_like(psi)
    for mu in range(1, dim):
        if not Kx[mu]:
            continue
        d = field.derivative(x, mu)
        if mu == MINUS:
            for i in range(1, n + 1):
                c = _times(x[i + 1], Surd(B[i] * _HALF)) if exact else complex(x[i + 1]) * float(B[i]) / 2
                if c:
                    d = _vadd(d, _scal(c, _lin(G["+"] @ G[i], psi)))
        out = _vadd(out, _scal(Kx[mu], d))

    # covariant derivative of K in coordinates, lowered
    g = metric_at(B, x)
    gam = christoffel_second(B, x)
    gam_idx = {}
    for (r, a, b), v in gam.items():
        gam_idx[(_ci(r), _ci(a), _ci(b))] = _num(v, exact)
    dK = [[_num(K.component(nu).diff(mu).evaluate(x), exact) for nu in range(dim)] for mu in range(dim)]
    nablaK = [[None] * dim for _ in range(dim)]  # (nabla_mu K)^nu
    for mu in range(dim):
        for nu in range(dim):
            v = dK[mu][nu]
            for rho in range(dim):
                c = gam_idx.get((nu, mu, rho))
                if c is not None and Kx[rho]:
                    v = v + c * Kx[rho]
            nablaK[mu][nu] = v
    low = [[sum((_num(g[nu][s], exact) * nablaK[mu][s] for s in range(dim) if g[nu][s]), _num(0, exact))
            for nu in range(dim)] for mu in range(dim)]
    frames = _frame_vectors(B, x)
    keys = ["+", "-"] + list(range(1, n + 1))
    fr = {k: [_num(c, exact) for c in frames[k]] for k in keys}
    raised = {"+": G["-"], "-": G["+"]}
    for k in range(1, n + 1):
        raised[k] = G[k]
    for a in keys:
        for b in keys:
            if a == b:
                continue
            val = _num(0, exact)
            for mu in range(dim):
                if not fr[a][mu]:
                    continue
                for nu in range(dim):
                    if fr[b][nu] and low[mu][nu]:
                        val = val + fr[a][mu] * fr[b][nu] * low[mu][nu]
            if val:
                coef = val * (Surd(Fraction(-1, 4)) if exact else -0.25)
                out = _vadd(out, _scal(coef, _lin(raised[a] @ raised[b], psi)))
    return out


def _ci(label) -> int:
    if label == "+":
        return PLUS
    if label == "-":
        return MINUS
    return int(label) + 1


# ---------------------------------------------------------------------------
# odd-odd brackets


def oddodd(params: CWParams, odd1: OddElement, odd2: OddElement, reduced: bool = False) -> EvenElement:
    """{odd1, odd2} with components from the charge-conjugation pairings."""
    table = bracket_table(params, reduced)
    space = odd_space()
    x, y = space.coords(odd1.vector()), space.coords(odd2.vector())
    if not (space.contains(odd1.vector()) and space.contains(odd2.vector())):
        raise ValueError("odd elements must lie in K_1")
    return table.bracket_odd(x, y)


def oddodd_istar_binv(params: CWParams, odd1: OddElement, odd2: OddElement) -> Dict[str, Surd]:
    """The i* components via C(xi_1, s(B^-1 e_i) eta_2) - C(s(B^-1 e_i) xi_2, eta_1)."""
    pair = family_pair(params)
    B = b_form(params)
    C = build_clifford_w11().charge
    out = {}
    for i in range(1, 10):
        if B[i] == 0:
            raise DecomposableError(f"B is degenerate in direction {i}")
        s = pair.s(i).scale(Fraction(1) / B[i])
        z16 = CMatrix.zeros(16)
        s32 = CMatrix.block([[s, z16], [z16, s]])
        u1 = CMatrix.block([[odd1.xi1], [CMatrix.zeros(16, 1)]])
        v2 = CMatrix.block([[CMatrix.zeros(16, 1)], [odd2.xi2]])
        u2 = CMatrix.block([[CMatrix.zeros(16, 1)], [odd1.xi2]])
        v1 = CMatrix.block([[odd2.xi1], [CMatrix.zeros(16, 1)]])
        val = (u1.T @ C @ s32 @ v2).scalar() - ((s32 @ u2).T @ C @ v1).scalar()
        out[f"{i}*"] = val
    return out


def oddodd_so_general(params: CWParams, odd1: OddElement, odd2: OddElement) -> Dict[str, Surd]:
    """The rotation components via -(1/2) C(xi_2, Gamma_+ (s_{d,c}(e_j) Gamma_i
    + Gamma_i s_{c,d}(e_j)) eta_2)."""
    pair = family_pair(params)
    w = build_clifford_w11()
    C, G = w.charge, w.generators
    c, d = pair.cbar_matrix, pair.d_matrix
    gens = pair.generators
    z16 = CMatrix.zeros(16)

    def even32(m):
        return CMatrix.block([[m, z16], [z16, m]])

    def odd32(m):
        # odd Cl(V) elements carry the grading sign on the first block
        return CMatrix.block([[-m, z16], [z16, m]])

    u = CMatrix.block([[CMatrix.zeros(16, 1)], [odd1.xi2]])
    v = CMatrix.block([[CMatrix.zeros(16, 1)], [odd2.xi2]])
    out = {}
    for lab in family_labels():
        kind, idx = parse_label(lab)
        if kind != "rot":
            continue
        i, j = idx
        gj = gens[j - 1]
        s_dc = d @ gj - gj @ c
        s_cd = c @ gj - gj @ d
        M = even32(s_dc) @ G[i] + G[i] @ even32(s_cd)
        out[lab] = (u.T @ C @ G["+"] @ M @ v).scalar() * Surd(-_HALF)
    return out


# ---------------------------------------------------------------------------
# Jacobi checks


def check_even_odd_rep(params: CWParams, reduced: bool = False) -> bool:
    """[A_a, A_b] = sign * sum_c f_ab^c A_c for all label pairs."""
    table = bracket_table(params, reduced)
    return not rep_failures(table)


def rep_failures(table: BracketTable) -> List[Tuple[str, str]]:
    bad = []
    A = table.action
    for a, b in itertools.combinations(table.labels, 2):
        lhs = A[a].commutator(A[b])
        rhs = CMatrix.zeros(*lhs.shape)
        for c, v in table.algebra.bracket_basis(a, b).items():
            rhs = rhs + A[c].scale(Surd.coerce(v) * table.sign)
        if lhs != rhs:
            bad.append((a, b))
    return bad


def check_evo(params: CWParams, label: str, odd: OddElement, table: BracketTable | None = None) -> EvenElement:
    """Residual [K, {xi, xi}] - 2 {L_K xi, xi}."""
    table = table or bracket_table(params)
    space = odd_space()
    x = space.coords(odd.vector())
    bxx = table.bracket_odd(x, x)
    lhs = EvenElement({label: 1}).bracket(bxx, table.algebra, table.sign)
    rhs = table.bracket_odd(table.act(label, x), x).scale(2)
    return lhs - rhs


def ooo_residual(params: CWParams, odd: OddElement, table: BracketTable | None = None) -> OddElement:
    """L_{xi, xi} xi as constant data."""
    table = table or bracket_table(params)
    space = odd_space()
    x = space.coords(odd.vector())
    acc = CMatrix.zeros(space.dim, 1)
    for l in table.labels:
        c = (x.T @ table.forms[l] @ x).scalar()
        if c:
            acc = acc + (table.action[l] @ x).scale(c)
    return space.element(acc)


def _cv(x: CMatrix, A: CMatrix | None, y: CMatrix) -> Surd:
    C = default_v9().charge
    return (x.T @ C @ (y if A is None else A @ y)).scalar()


@lru_cache(maxsize=None)
def _gv(indices: Tuple[int, ...]) -> CMatrix:
    return monomial_matrix(default_v9(), list(indices))


def ooo2(params: CWParams, xi2: CMatrix) -> CMatrix:
    """The xi_2 condition written on S(V)."""
    am, app, ap, amp = params.as_tuple()
    r = _gv((1, 2, 5)) @ xi2
    r = r.scale(-app * _cv(xi2, None, xi2))
    for i, j in itertools.permutations(range(6, 10), 2):
        r = r + (_gv((i, j)) @ xi2).scale(_cv(xi2, _gv((1, 2, 5, i, j)), xi2) * Fraction(ap + app, 4))
    r = r + (_gv((1, 2)) @ xi2).scale(_cv(xi2, _gv((5,)), xi2) * Fraction(am - app) / 2)
    r = r + (_gv((3, 4)) @ xi2).scale(_cv(xi2, _gv((1, 2, 3, 4, 5)), xi2) * Fraction(am + app) / 2)
    return r


def _ooo1_terms(xi1: CMatrix, xi2: CMatrix) -> Dict[str, CMatrix]:
    c = _cv(xi2, None, xi2)
    T = {}
    T["c125"] = (_gv((1, 2, 5)) @ xi1).scale(c)
    T["c345"] = (_gv((3, 4, 5)) @ xi1).scale(c)
    T["5:12"] = (_gv((1, 2)) @ xi1).scale(_cv(xi2, _gv((5,)), xi2))
    T["12345:34"] = (_gv((3, 4)) @ xi1).scale(_cv(xi2, _gv((1, 2, 3, 4, 5)), xi2))
    so = CMatrix.zeros(16, 1)
    for i, j in itertools.permutations(range(6, 10), 2):
        so = so + (_gv((i, j)) @ xi1).scale(_cv(xi2, _gv((1, 2, 5, i, j)), xi2))
    T["so"] = so.scale(Fraction(1, 4))

    def pair_term(i):
        a = (_gv((1, 2, 5, i)) @ xi2).scale(_cv(xi1, _gv((i,)), xi2))
        b = (_gv((i,)) @ xi2).scale(_cv(xi1, _gv((1, 2, 5, i)), xi2))
        return a - b

    def delta_term(i):
        # delta_{i[1} gamma_{2]5} with the antisymmetrization weight 1/2
        D = _gv((2, 5)).scale(_HALF) if i == 1 else _gv((1, 5)).scale(-_HALF)
        a = (D @ xi2).scale(_cv(xi1, _gv((i,)), xi2))
        b = (_gv((i,)) @ xi2).scale(_cv(xi1, D, xi2))
        return a - b

    T["d12"] = delta_term(1) + delta_term(2)
    T["i34"] = pair_term(3) + pair_term(4)
    T["i5"] = (_gv((1, 2)) @ xi2).scale(_cv(xi1, _gv((5,)), xi2)) - (_gv((5,)) @ xi2).scale(_cv(xi1, _gv((1, 2)), xi2))
    T["i6789"] = pair_term(6) + pair_term(7) + pair_term(8) + pair_term(9)
    return T


def _ooo1_coefficients(params: CWParams) -> Dict[str, Fraction]:
    am, app, ap, amp = params.as_tuple()
    return {
        "c125": (ap + am) / 2,
        "c345": -(ap - am) / 2,
        "5:12": (am - app) / 2,
        "12345:34": (am + app) / 2,
        "so": ap + app,
        "d12": -2 * (am - app),
        "i34": am + app,
        "i5": -(ap - app),
        "i6789": ap + app,
    }


# terms whose sign differs between the printed xi_1 condition and the one
# implied by the brackets
OOO1_SIGN_FLIPS = ("5:12", "12345:34", "so")


def ooo1_printed(params: CWParams, xi1: CMatrix, xi2: CMatrix) -> CMatrix:
    """The xi_1 condition with the coefficients as printed."""
    T = _ooo1_terms(xi1, xi2)
    co = _ooo1_coefficients(params)
    out = CMatrix.zeros(16, 1)
    for k, v in T.items():
        out = out + v.scale(co[k])
    return out


def ooo1_corrected(params: CWParams, xi1: CMatrix, xi2: CMatrix) -> CMatrix:
    """The xi_1 condition with the three sign corrections applied."""
    T = _ooo1_terms(xi1, xi2)
    co = _ooo1_coefficients(params)
    out = CMatrix.zeros(16, 1)
    for k, v in T.items():
        s = -1 if k in OOO1_SIGN_FLIPS else 1
        out = out + v.scale(co[k] * s)
    return out


# ---------------------------------------------------------------------------
# supersymmetry


@lru_cache(maxsize=None)
def _monomial_gather(n: int):
    """Sparse 0/1 matrix summing the (a, b, c) entries into sorted monomials."""
    monos = list(itertools.combinations_with_replacement(range(n), 3))
    index = {m: k for k, m in enumerate(monos)}
    rows, cols = [], []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                rows.append((a * n + b) * n + c)
                cols.append(index[tuple(sorted((a, b, c)))])
    data = np.ones(len(rows), dtype=np.int64)
    return sparse.csr_matrix((data, (rows, cols)), shape=(n ** 3, len(monos))), monos


def cubic_coefficients(table: BracketTable) -> Tuple[List[np.ndarray], int]:
    """Coefficients of the cubic map x -> sum_l (x^T b_l x) A_l x.

    Returns the four integer part arrays (shape 24 x 2600: output coordinate by
    sorted monomial) and the common denominator.  The cubic vanishes
    identically iff all arrays are zero.
    """
    n = odd_space().dim
    labs = [l for l in table.labels if not table.forms[l].is_zero() and not table.action[l].is_zero()]
    if not labs:
        return [np.zeros((n, len(_monomial_gather(n)[1])), dtype=np.int64)] * 4, 1
    # F[(a, b), (k, c)] = sum_l b_l[a, b] A_l[k, c]
    bs = CMatrix.block([[_flatten_row(table.forms[l])] for l in labs])   # L x n^2
    As = CMatrix.block([[_flatten_row(table.action[l])] for l in labs])  # L x n^2
    fast = _sparse_cubic(bs, As, n)
    if fast is not None:
        return fast
    F = bs.T @ As
    gather, monos = _monomial_gather(n)
    out = []
    for p in F.int_parts()[0]:
        if p is None:
            out.append(np.zeros((n, len(monos)), dtype=np.int64))
            continue
        t = np.asarray(p).reshape(n, n, n, n).transpose(2, 0, 1, 3).reshape(n, n ** 3)
        if t.dtype == object or int(np.abs(t).max()) * 6 >= (1 << 62):
            t = t.astype(object)
            res = np.zeros((n, len(monos)), dtype=object)
            coo = gather.tocoo()
            for r, c in zip(coo.row, coo.col):
                res[:, c] += t[:, r]
            out.append(res)
        else:
            out.append(np.asarray((gather.T @ t.T).T))
    return out, F.den


@lru_cache(maxsize=None)
def _monomial_index(n: int) -> np.ndarray:
    """idx[a, b, c] = position of the sorted triple among the monomials."""
    _, monos = _monomial_gather(n)
    index = {m: k for k, m in enumerate(monos)}
    idx = np.empty((n, n, n), dtype=np.int64)
    for a, b, c in itertools.product(range(n), repeat=3):
        idx[a, b, c] = index[tuple(sorted((a, b, c)))]
    return idx


def _sparse_cubic(bs: CMatrix, As: CMatrix, n: int):
    """Same result as the dense route through sparse int64 products, or None
    when an intermediate could leave the int64 range."""
    bp, ap = bs.int_parts()[0], As.int_parts()[0]
    if any(p is not None and p.dtype == object for p in bp + ap):
        return None
    L = bs.rows
    mb = max((int(np.abs(p).max()) for p in bp if p is not None), default=0)
    ma = max((int(np.abs(p).max()) for p in ap if p is not None), default=0)
    # 4 part products, factor 2 from sqrt2^2, 6 permutations per monomial
    if 48 * L * mb * ma >= (1 << 62):
        return None
    sb = [None if p is None else sparse.csr_matrix(np.asarray(p).T) for p in bp]
    sa = [None if p is None else sparse.csr_matrix(np.asarray(p)) for p in ap]

    def mm(x, y):
        if sb[x] is None or sa[y] is None:
            return None
        return sb[x] @ sa[y]

    def comb(*terms):
        acc = None
        for c, m in terms:
            if m is None:
                continue
            m = m * c if c != 1 else m
            acc = m if acc is None else acc + m
        return acc

    prods = {(x, y): mm(x, y) for x in range(4) for y in range(4)}
    parts = [
        comb((1, prods[0, 0]), (-1, prods[1, 1]), (2, prods[2, 2]), (-2, prods[3, 3])),
        comb((1, prods[0, 1]), (1, prods[1, 0]), (2, prods[2, 3]), (2, prods[3, 2])),
        comb((1, prods[0, 2]), (1, prods[2, 0]), (-1, prods[1, 3]), (-1, prods[3, 1])),
        comb((1, prods[0, 3]), (1, prods[3, 0]), (1, prods[1, 2]), (1, prods[2, 1])),
    ]
    idx = _monomial_index(n)
    nm = len(_monomial_gather(n)[1])
    out = []
    for p in parts:
        res = np.zeros((n, nm), dtype=np.int64)
        if p is not None:
            coo = p.tocoo()
            keep = coo.data != 0
            r, c, v = coo.row[keep], coo.col[keep], coo.data[keep]
            a, b = np.divmod(r, n)
            k, cc = np.divmod(c, n)
            np.add.at(res, (k, idx[a, b, cc]), v.astype(np.int64))
        out.append(res)
    return out, bs.den * As.den


def _flatten_row(m: CMatrix) -> CMatrix:
    parts = [None if p is None else np.asarray(p).reshape(1, -1) for p in m.int_parts()[0]]
    return CMatrix.from_int_parts(parts, m.den) if any(p is not None for p in parts) \
        else CMatrix.zeros(1, m.rows * m.cols)


def _cubic_vanishes(table: BracketTable) -> bool:
    parts, _ = cubic_coefficients(table)
    return all(not np.any(p) for p in parts)


def susy_check(params: CWParams) -> bool:
    """True iff the odd-odd-odd Jacobi obstruction vanishes on all of K_1.

    Checks the full symmetric trilinear map (every sorted monomial of the
    cubic).  Decomposable points raise :class:`DecomposableError`.
    """
    if any(v == 0 for v in params.i_lambdas()):
        raise DecomposableError("B is degenerate; use susy_check_reduced")
    return _cubic_vanishes(bracket_table(params))


def susy_check_reduced(params: CWParams) -> bool:
    """The same test on the algebra with the zero-eigenvalue labels dropped."""
    return _cubic_vanishes(bracket_table(params, reduced=True))


def susy_witness(params: CWParams, reduced: bool = False, seed: int = 0, tries: int = 64):
    """An odd element with nonzero odd-odd-odd residual, or None.

    Candidates: basis vectors, pairwise sums, the triple sum of a nonzero
    monomial of the cubic, then random small-integer vectors.
    """
    table = bracket_table(params, reduced)
    space = odd_space()
    n = space.dim

    def unit(ks):
        return CMatrix.column([sum(1 for k in ks if k == r) for r in range(n)])

    def residual(c):
        return ooo_residual(params, space.element(c), table)

    cands = [unit([a]) for a in range(n)]
    cands += [unit([a, b]) for a, b in itertools.combinations(range(n), 2)]
    parts, _ = cubic_coefficients(table)
    _, monos = _monomial_gather(n)
    for p in parts:
        nz = np.argwhere(p != 0)
        if len(nz):
            cands.append(unit(list(monos[int(nz[0][1])])))
            break
    rng = random.Random(seed)
    cands += [CMatrix.column([rng.randint(-3, 3) for _ in range(n)]) for _ in range(tries)]
    for c in cands:
        r = residual(c)
        if not r.is_zero():
            return space.element(c), r
    return None


def polarization_set_check(params: CWParams, reduced: bool = False) -> bool:
    """Vanishing of the residual on the 24 basis vectors and their 276
    pairwise sums only."""
    table = bracket_table(params, reduced)
    space = odd_space()
    n = space.dim
    for ks in itertools.chain(((a,) for a in range(n)), itertools.combinations(range(n), 2)):
        c = CMatrix.column([1 if r in ks else 0 for r in range(n)])
        if not ooo_residual(params, space.element(c), table).is_zero():
            return False
    return True
