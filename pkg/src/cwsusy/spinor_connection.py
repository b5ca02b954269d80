"""Homogeneous spinor connections on Cahen-Wallach spaces.

Spinors of W = R^{1,1} + V are 32-component columns ``(xi_1; xi_2)`` where
``xi_1`` (first 16 entries) lies in the sigma_- sector and ``xi_2`` (last 16) in
the sigma_+ sector of the module built by
:func:`cwsusy.clifford_core.lorentzian_extension`.  Elements of Cl(V) of even
degree act block-diagonally; ``Gamma_+`` maps the ``xi_2`` block into the
``xi_1`` block with a factor sqrt 2.

A :class:`ConnectionPair` stores c-bar and d as 16x16 matrices on S(V) together
with the generators gamma_1..gamma_n they are built from, so the same code
serves the nine-dimensional family and the tensor-extended lower dimensional
pairs.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from .cahen_wallach import BForm, CWLieAlgebra, CWParams, b_form, lie_algebra, parse_label
from .clifford_core import (
    CliffordElement,
    CliffordRepV,
    build_clifford_v9,
    lorentzian_extension,
)
from .linalg import joint_kernel, stacked_rank
from .matrix import CMatrix
from .scalars import SQRT2, Surd
from .trigpoly import MINUS, _is_exact

__all__ = [
    "ConnectionPair",
    "Sector",
    "family_pair",
    "s_map",
    "q_map",
    "q_three_term",
    "q_family_closed_form",
    "RhoMap",
    "rho_map",
    "curvature",
    "flat_check",
    "OddElement",
    "parallel_space",
    "parallel_dimension",
    "ParallelSpinorField",
    "parallel_spinor_eval",
    "covariant_derivative",
    "x1234",
    "upper_right",
]

_HALF = Fraction(1, 2)
_INV_SQRT2 = Surd(0, Fraction(1, 2))  # 1/sqrt2 = sqrt2/2


def _is_zero_scalar(a) -> bool:
    if isinstance(a, (CMatrix, CliffordElement)):
        return a.is_zero()
    return not Surd.coerce(a)


def upper_right(m: CMatrix) -> CMatrix:
    """The 32x32 matrix with ``m`` in the upper-right 16x16 block."""
    n = m.rows
    return CMatrix.block([[CMatrix.zeros(n), m], [CMatrix.zeros(n), CMatrix.zeros(n)]])


def _diag2(a: CMatrix, b: CMatrix) -> CMatrix:
    n = a.rows
    return CMatrix.block([[a, CMatrix.zeros(n)], [CMatrix.zeros(n), b]])


@lru_cache(maxsize=None)
def x1234(sign: int) -> CMatrix:
    """X^+-_1234 = (1 +- gamma_1234)/2 on S(R^9); gamma_1234 squares to 1."""
    g = CliffordElement.monomial(1, 2, 3, 4).matrix_of()
    one = CMatrix.identity(16)
    return (one + g.scale(sign)).scale(_HALF)


@lru_cache(maxsize=None)
def _g125() -> CMatrix:
    return CliffordElement.monomial(1, 2, 5).matrix_of()


# ---------------------------------------------------------------------------
# connection pairs


@dataclass(frozen=True)
class Sector:
    """``coeff * G`` restricted to the range of the idempotent ``P``, where G
    commutes with P and squares to the identity."""

    P: CMatrix
    coeff: Fraction
    G: CMatrix


@dataclass(frozen=True, eq=False)
class ConnectionPair:
    """The data (c-bar, d, epsilon, alpha) of a homogeneous connection.

    ``cbar`` and ``d`` may be :class:`CliffordElement` (realized through
    ``gammas``) or 16x16 :class:`CMatrix`.  ``cbar_sectors``/``d_sectors``
    optionally describe the elements as sums of commuting involutions for the
    closed-form exponential.
    """

    cbar: object
    d: object
    epsilon: object = 0
    alpha: object = 0
    gammas: Tuple[CMatrix, ...] | None = None
    cbar_sectors: Tuple[Sector, ...] | None = None
    d_sectors: Tuple[Sector, ...] | None = None
    label: str = ""
    params: CWParams | None = None
    _cache: Dict = field(default_factory=dict, repr=False, compare=False)

    # matrices ---------------------------------------------------------------
    @property
    def generators(self) -> Tuple[CMatrix, ...]:
        return self.gammas if self.gammas is not None else build_clifford_v9().generators

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def dim(self) -> int:
        return self.generators[0].rows

    def _mat(self, x) -> CMatrix:
        if isinstance(x, CMatrix):
            return x
        if isinstance(x, CliffordElement):
            return x.matrix_of(self.generators)
        s = Surd.coerce(x)
        return CMatrix.identity(self.dim).scale(s)

    @property
    def cbar_matrix(self) -> CMatrix:
        if "cbar" not in self._cache:
            self._cache["cbar"] = self._mat(self.cbar)
        return self._cache["cbar"]

    @property
    def d_matrix(self) -> CMatrix:
        if "d" not in self._cache:
            self._cache["d"] = self._mat(self.d)
        return self._cache["d"]

    @property
    def epsilon_matrix(self) -> CMatrix:
        if "eps" not in self._cache:
            self._cache["eps"] = self._mat(self.epsilon)
        return self._cache["eps"]

    def has_epsilon(self) -> bool:
        return not self.epsilon_matrix.is_zero()

    def require_standard(self):
        """Operations built on the epsilon = alpha = 0 reduction call this."""
        if not _is_zero_scalar(self.alpha):
            raise ValueError("only alpha = 0 connections are supported")
        if self.has_epsilon():
            raise ValueError("epsilon != 0 is not supported by this operation")

    def s(self, i: int) -> CMatrix:
        """s(e_i) as a 16x16 matrix."""
        key = ("s", i)
        if key not in self._cache:
            g = self.generators[i - 1]
            self._cache[key] = self.cbar_matrix @ g - g @ self.d_matrix
        return self._cache[key]

    def q(self, i: int) -> CMatrix:
        key = ("q", i)
        if key not in self._cache:
            si = self.s(i)
            self._cache[key] = self.cbar_matrix @ si - si @ self.d_matrix
        return self._cache[key]

    def w_rep(self):
        """The Lorentzian module built from ``generators``."""
        if "w" not in self._cache:
            self._cache["w"] = lorentzian_extension(CliffordRepV(tuple(self.generators), None))
        return self._cache["w"]

    def with_d(self, d) -> "ConnectionPair":
        """Copy with a different d (drops the closed-form sectors of d)."""
        return ConnectionPair(self.cbar, d, self.epsilon, self.alpha, self.gammas,
                              self.cbar_sectors, None, self.label + "[d changed]", self.params)


def family_pair(params: CWParams) -> ConnectionPair:
    """c-bar = (a_+ X^+ + a_- X^-) Gamma_125, d = (a'_+ X^+ + a'_- X^-) Gamma_125."""
    xp = CliffordElement.scalar(_HALF) + CliffordElement.monomial(1, 2, 3, 4, coeff=_HALF)
    xm = CliffordElement.scalar(_HALF) - CliffordElement.monomial(1, 2, 3, 4, coeff=_HALF)
    g125 = CliffordElement.monomial(1, 2, 5)
    cbar = (xp * params.alpha_plus + xm * params.alpha_minus) * g125
    d = (xp * params.alpha_plus_prime + xm * params.alpha_minus_prime) * g125
    Pp, Pm, G = x1234(1), x1234(-1), _g125()
    return ConnectionPair(
        cbar, d,
        cbar_sectors=(Sector(Pp, params.alpha_plus, G), Sector(Pm, params.alpha_minus, G)),
        d_sectors=(Sector(Pp, params.alpha_plus_prime, G), Sector(Pm, params.alpha_minus_prime, G)),
        label="family", params=params,
    )


def s_map(pair: ConnectionPair, x):
    """c-bar x - x d.  Formal when pair and x are Clifford elements; otherwise
    a 16x16 matrix (``x`` an index i means e_i)."""
    if isinstance(x, CliffordElement) and isinstance(pair.cbar, CliffordElement) \
            and isinstance(pair.d, CliffordElement):
        return pair.cbar * x - x * pair.d
    if isinstance(x, int):
        return pair.s(x)
    m = pair._mat(x)
    return pair.cbar_matrix @ m - m @ pair.d_matrix


def q_map(pair: ConnectionPair, v):
    """q(v) = s(s(v))."""
    if isinstance(v, int):
        return pair.q(v)
    return s_map(pair, s_map(pair, v))


def q_three_term(pair: ConnectionPair, v):
    """c-bar^2 x + x d^2 - 2 c-bar x d."""
    if isinstance(v, CliffordElement) and isinstance(pair.cbar, CliffordElement) \
            and isinstance(pair.d, CliffordElement):
        c, d = pair.cbar, pair.d
        return c * c * v + v * d * d - c * v * d * 2
    x = pair.generators[v - 1] if isinstance(v, int) else pair._mat(v)
    c, d = pair.cbar_matrix, pair.d_matrix
    return c @ c @ x + x @ d @ d - (c @ x @ d).scale(2)


def q_family_closed_form(params: CWParams, i: int) -> CMatrix:
    """The four-case formula for q(e_i) on the family: a^2 gamma_i X^+ + b^2
    gamma_i X^-."""
    am, app, ap, amp = params.as_tuple()
    if i in (1, 2):
        a, b = am - app, ap - amp
    elif i in (3, 4):
        a, b = am + app, ap + amp
    elif i == 5:
        a, b = ap - app, am - amp
    else:
        a, b = ap + app, am + amp
    g = build_clifford_v9().generators[i - 1]
    return (g @ x1234(1)).scale(a * a) + (g @ x1234(-1)).scale(b * b)


# ---------------------------------------------------------------------------
# the equivariant map and curvature


@dataclass(frozen=True, eq=False)
class RhoMap:
    """Images rho(e_mu) as 32x32 matrices, keyed by Lie-algebra label."""

    images: Mapping[str, CMatrix]
    labels: Tuple[str, ...]

    def __getitem__(self, label: str) -> CMatrix:
        return self.images[label]


def _as_b(B) -> BForm:
    if isinstance(B, BForm):
        return B
    if isinstance(B, CWParams):
        return b_form(B)
    return BForm(tuple(B))


def rho_map(pair: ConnectionPair, B, labels: Sequence[str] | None = None) -> RhoMap:
    """rho(e_+) = 0, rho(e_-) = diag(c-bar, d) + sqrt2 eps in the upper right,
    rho(e_i) = -UR(s(e_i))/sqrt2, rho(e_i*) = UR(B e_i)/sqrt2,
    rho(e_ij) = -Gamma_ij/2."""
    if not _is_zero_scalar(pair.alpha):
        raise ValueError("only alpha = 0 connections are supported")
    B = _as_b(B)
    if B.n != pair.n:
        raise ValueError("B and the connection live on different V")
    if labels is None:
        labels = lie_algebra(B).labels
    rep = pair.w_rep()
    n16 = pair.dim
    imgs: Dict[str, CMatrix] = {}
    for lab in labels:
        kind, idx = parse_label(lab)
        if kind == "plus":
            m = CMatrix.zeros(2 * n16)
        elif kind == "minus":
            m = _diag2(pair.cbar_matrix, pair.d_matrix)
            if pair.has_epsilon():
                m = m + upper_right(pair.epsilon_matrix.scale(SQRT2))
        elif kind == "trans":
            m = upper_right(pair.s(idx[0]).scale(-_INV_SQRT2))
        elif kind == "dual":
            i = idx[0]
            m = upper_right(pair.generators[i - 1].scale(B[i] * _INV_SQRT2))
        else:
            i, j = idx
            m = (rep.generators[i] @ rep.generators[j]).scale(-_HALF)
        imgs[lab] = m
    return RhoMap(imgs, tuple(labels))


def curvature(rho: RhoMap, alg: CWLieAlgebra, X: str, Y: str) -> CMatrix:
    """[rho X, rho Y] - rho([X, Y]); the V* part of the bracket enters through
    Gamma(v*) = rho(v*) and rotations through their spin images."""
    out = rho[X].commutator(rho[Y])
    for lab, c in alg.bracket_basis(X, Y).items():
        out = out - rho[lab].scale(c)
    return out


def flat_check(pair: ConnectionPair, B) -> bool:
    """q(e_i) + B(e_i) = 0 for all i."""
    pair.require_standard()
    B = _as_b(B)
    return all((pair.q(i) + pair.generators[i - 1].scale(B[i])).is_zero() for i in range(1, B.n + 1))


# ---------------------------------------------------------------------------
# parallel spinors


@dataclass(frozen=True, eq=False)
class OddElement:
    """Constant data (xi_1^0, xi_2^0) of a parallel spinor; each a column."""

    xi1: CMatrix
    xi2: CMatrix

    @classmethod
    def from_vector(cls, v: CMatrix) -> "OddElement":
        h = v.rows // 2
        return cls(v[:h, :], v[h:, :])

    def vector(self) -> CMatrix:
        return CMatrix.block([[self.xi1], [self.xi2]])

    def satisfies_family_constraint(self) -> bool:
        """X^-_1234 xi_2 = 0 (the sigma-sector constraints hold by layout)."""
        return (x1234(-1) @ self.xi2).is_zero()

    def __add__(self, other: "OddElement") -> "OddElement":
        return OddElement(self.xi1 + other.xi1, self.xi2 + other.xi2)

    def scale(self, s) -> "OddElement":
        return OddElement(self.xi1.scale(s), self.xi2.scale(s))

    def is_zero(self) -> bool:
        return self.xi1.is_zero() and self.xi2.is_zero()

    def __eq__(self, other):
        return isinstance(other, OddElement) and self.xi1 == other.xi1 and self.xi2 == other.xi2

    __hash__ = None


def _qb(pair: ConnectionPair, B: BForm) -> List[CMatrix]:
    return [pair.q(i) + pair.generators[i - 1].scale(B[i]) for i in range(1, B.n + 1)]


def parallel_space(pair: ConnectionPair, B, order: Sequence[int] | None = None):
    """(dimension, basis) of the parallel-spinor data: all xi_1 plus the joint
    kernel of q(e_i) + B(e_i) on xi_2, intersected in ascending i by default."""
    pair.require_standard()
    B = _as_b(B)
    mats = _qb(pair, B)
    n16 = pair.dim
    ker = joint_kernel(mats, order)
    zero = CMatrix.zeros(n16, 1)
    basis = [OddElement(CMatrix.column([1 if r == k else 0 for r in range(n16)]), zero) for k in range(n16)]
    basis += [OddElement(zero, v) for v in ker]
    return n16 + len(ker), basis


def parallel_dimension(pair: ConnectionPair, B) -> int:
    """Dimension only, from the rank of the stacked maps."""
    pair.require_standard()
    B = _as_b(B)
    return 2 * pair.dim - stacked_rank(_qb(pair, B))


def _exp_minus(sectors, mat: CMatrix, t):
    """exp(-t M) as an exact CMatrix when t == 0, complex array otherwise."""
    if t == 0:
        return CMatrix.identity(mat.rows)
    t = complex(t)
    if sectors is not None:
        out = np.zeros(mat.shape, dtype=complex)
        for sec in sectors:
            a = t * float(sec.coeff)
            out += sec.P.to_complex() @ (cmath.cosh(a) * np.eye(mat.rows) - cmath.sinh(a) * sec.G.to_complex())
        return out
    return expm(-t * mat.to_complex())


def _lin(M, v):
    """Matrix times vector in either backend."""
    if isinstance(M, CMatrix) and isinstance(v, CMatrix):
        return M @ v
    Mc = M.to_complex() if isinstance(M, CMatrix) else M
    vc = v.to_complex() if isinstance(v, CMatrix) else v
    return Mc @ vc


def _scal(c, v):
    if isinstance(v, CMatrix):
        return v.scale(c)
    return complex(c) * v


def _vadd(a, b):
    if isinstance(a, CMatrix) and isinstance(b, CMatrix):
        return a + b
    ac = a.to_complex() if isinstance(a, CMatrix) else a
    bc = b.to_complex() if isinstance(b, CMatrix) else b
    return ac + bc


class ParallelSpinorField:
    """The closed-form spinor field with constant data ``odd``:

    psi_1 = exp(-x^- c-bar) xi_1 + sum_i x^i s(e_i) exp(-x^- d) xi_2 / sqrt2,
    psi_2 = exp(-x^- d) xi_2.

    Values and first derivatives are exact CMatrix columns at exact points with
    x^- = 0 and complex arrays otherwise.
    """

    def __init__(self, pair: ConnectionPair, odd: OddElement):
        self.pair = pair
        self.odd = odd

    def _parts(self, x):
        p = self.pair
        t = x[MINUS]
        ec = _exp_minus(p.cbar_sectors, p.cbar_matrix, t)
        ed = _exp_minus(p.d_sectors, p.d_matrix, t)
        a = _lin(ec, self.odd.xi1)
        psi2 = _lin(ed, self.odd.xi2)
        return a, psi2

    def _transverse(self, x, v):
        p = self.pair
        acc = None
        for i in range(1, p.n + 1):
            xi = x[i + 1]
            if xi == 0:
                continue
            term = _scal(_times(xi, _INV_SQRT2), _lin(p.s(i), v))
            acc = term if acc is None else _vadd(acc, term)
        return acc

    def value(self, x):
        a, psi2 = self._parts(x)
        tr = self._transverse(x, psi2)
        psi1 = a if tr is None else _vadd(a, tr)
        return _stack(psi1, psi2)

    def derivative(self, x, k: int):
        """Partial derivative along coordinate ``k`` (0 = x^+, 1 = x^-, i+1 = x^i)."""
        p = self.pair
        a, psi2 = self._parts(x)
        if k == 0:
            return _zero_like(_stack(a, psi2))
        if k >= 2:
            i = k - 1
            top = _scal(_INV_SQRT2, _lin(p.s(i), psi2))
            return _stack(top, _zero_like(psi2))
        # x^- derivative: exp(-t M)' = -M exp(-t M)
        da = _scal(-1, _lin(p.cbar_matrix, a))
        dpsi2 = _scal(-1, _lin(p.d_matrix, psi2))
        tr = self._transverse(x, dpsi2)
        top = da if tr is None else _vadd(da, tr)
        return _stack(top, dpsi2)


def _exact(v) -> bool:
    return _is_exact(v)


def _times(v, factor):
    """v * factor, exact when v is exact."""
    if _exact(v):
        return Surd.coerce(v) * factor
    return complex(v) * complex(factor)


def _stack(a, b):
    if isinstance(a, CMatrix) and isinstance(b, CMatrix):
        return CMatrix.block([[a], [b]])
    ac = a.to_complex() if isinstance(a, CMatrix) else a
    bc = b.to_complex() if isinstance(b, CMatrix) else b
    return np.concatenate([ac, bc])


def _zero_like(v):
    if isinstance(v, CMatrix):
        return CMatrix.zeros(*v.shape)
    return np.zeros_like(v)


def parallel_spinor_eval(pair: ConnectionPair, odd: OddElement, x):
    """Evaluate the closed-form parallel spinor with data ``odd`` at ``x``."""
    return ParallelSpinorField(pair, odd).value(x)


def spin_connection_minus(B: BForm, x, gens_w, psi):
    """The term (1/2) sum_i x^i lambda_i^2 Gamma_+ Gamma_i psi of nabla_-."""
    acc = None
    for i in range(1, B.n + 1):
        xi = x[i + 1]
        if not B[i] or xi == 0:
            continue
        M = gens_w["+"] @ gens_w[i]
        c = _times(xi, Surd(B[i] * _HALF))
        term = _scal(c, _lin(M, psi))
        acc = term if acc is None else _vadd(acc, term)
    return acc


_DIRECTIONS = {"+": 0, "-": 1}


def covariant_derivative(pair: ConnectionPair, B, spinor_field: ParallelSpinorField, x, direction):
    """D_mu psi = nabla_mu psi + rho(e_mu) psi for mu in {+, -, 1..n}, with
    nabla_+ = d_+, nabla_i = d_i and nabla_- = d_- + (1/2) sum x^i lambda_i^2
    Gamma_+ Gamma_i."""
    B = _as_b(B)
    if isinstance(direction, str) and direction in _DIRECTIONS:
        k = _DIRECTIONS[direction]
        label = direction
    elif isinstance(direction, int) and 1 <= direction <= B.n:
        k = direction + 1
        label = str(direction)
    else:
        raise ValueError(f"unsupported direction {direction!r}")
    rho = rho_map(pair, B, labels=[label])
    psi = spinor_field.value(x)
    out = _vadd(spinor_field.derivative(x, k), _lin(rho[label], psi))
    if k == 1:
        extra = spin_connection_minus(B, x, pair.w_rep().generators, psi)
        if extra is not None:
            out = _vadd(out, extra)
    return out
