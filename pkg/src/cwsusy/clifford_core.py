"""Clifford algebras of R^9 and R^{1,10}: octonions, gamma matrices, charge
conjugations, projectors, formal Clifford elements and bilinear pairings.

Conventions: ``v w + w v = -2 g(v, w)``; the Lorentzian generators are
labelled ``"+"``, ``"-"`` and ``1..9`` with ``g(e_+, e_-) = 1``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, NamedTuple, Sequence, Tuple, Union

from .matrix import CMatrix
from .scalars import SQRT2, GaussianRational, Surd

__all__ = [
    "PAULI",
    "octonion_left_mults",
    "build_clifford_v9",
    "build_clifford_w11",
    "lorentzian_extension",
    "euclidean_generators",
    "CliffordRepV",
    "CliffordRepW",
    "monomial_matrix",
    "symmetry_sign",
    "bilinear",
    "CliffordMonomial",
    "CliffordElement",
    "Projector",
    "sigma_projectors",
    "x_projector",
    "default_v9",
    "default_w11",
]

Label = Union[int, str]

_I = GaussianRational(0, 1)

PAULI = {
    "1": CMatrix.from_rows([[0, 1], [1, 0]]),
    "2": CMatrix.from_rows([[0, -_I], [_I, 0]]),
    "3": CMatrix.from_rows([[1, 0], [0, -1]]),
    "0": CMatrix.identity(2),
}

# Left multiplication by the imaginary octonions, entries (row, col, value)
# with 1-based indices.
_OCTONION_TABLE = (
    ((1, 2, -1), (2, 1, 1), (3, 4, -1), (4, 3, 1), (5, 6, -1), (6, 5, 1), (7, 8, 1), (8, 7, -1)),
    ((1, 3, -1), (2, 4, 1), (3, 1, 1), (4, 2, -1), (5, 7, -1), (6, 8, -1), (7, 5, 1), (8, 6, 1)),
    ((1, 4, -1), (2, 3, -1), (3, 2, 1), (4, 1, 1), (5, 8, -1), (6, 7, 1), (7, 6, -1), (8, 5, 1)),
    ((1, 5, -1), (2, 6, 1), (3, 7, 1), (4, 8, 1), (5, 1, 1), (6, 2, -1), (7, 3, -1), (8, 4, -1)),
    ((1, 6, -1), (2, 5, -1), (3, 8, 1), (4, 7, -1), (5, 2, 1), (6, 1, 1), (7, 4, 1), (8, 3, -1)),
    ((1, 7, -1), (2, 8, -1), (3, 5, -1), (4, 6, 1), (5, 3, 1), (6, 4, -1), (7, 1, 1), (8, 2, 1)),
    ((1, 8, -1), (2, 7, 1), (3, 6, -1), (4, 5, -1), (5, 4, 1), (6, 3, 1), (7, 2, -1), (8, 1, 1)),
)


@lru_cache(maxsize=None)
def _octonions() -> Tuple[CMatrix, ...]:
    mats = []
    for table in _OCTONION_TABLE:
        rows = [[0] * 8 for _ in range(8)]
        for r, c, v in table:
            rows[r - 1][c - 1] = v
        mats.append(CMatrix.from_rows(rows))
    return tuple(mats)


def octonion_left_mults() -> List[CMatrix]:
    """The seven real antisymmetric 8x8 matrices L_1..L_7."""
    return list(_octonions())


class CliffordRepV(NamedTuple):
    """Euclidean Clifford module: generators gamma_1..gamma_n and a charge
    conjugation (``None`` when not needed)."""

    generators: Tuple[CMatrix, ...]
    charge: CMatrix | None


@lru_cache(maxsize=None)
def build_clifford_v9() -> CliffordRepV:
    """gamma_a = s1 x L_a (a = 1..7), gamma_8 = -i s2 x 1, gamma_9 = -i s3 x 1,
    with C_V = s3 x 1."""
    one8 = CMatrix.identity(8)
    gens = [PAULI["1"].kron(L) for L in _octonions()]
    gens.append(PAULI["2"].kron(one8).scale(-_I))
    gens.append(PAULI["3"].kron(one8).scale(-_I))
    charge = PAULI["3"].kron(one8)
    return CliffordRepV(tuple(gens), charge)


def default_v9() -> CliffordRepV:
    return build_clifford_v9()


@dataclass(frozen=True, eq=False)
class CliffordRepW:
    """Lorentzian Clifford module built from a Euclidean one.

    ``generators`` maps ``"+"``, ``"-"`` and ``1..n`` to matrices; ``sigma`` is
    ``1/2 [Gamma_+, Gamma_-]``; ``charge`` is ``s2 x C_V`` (``None`` if the
    Euclidean module carries no charge conjugation).
    """

    generators: Mapping[Label, CMatrix]
    sigma: CMatrix
    charge: CMatrix | None
    euclidean: CliffordRepV = field(repr=False)

    @property
    def dim(self) -> int:
        return self.sigma.rows

    @property
    def spatial(self) -> Tuple[int, ...]:
        return tuple(k for k in self.generators if isinstance(k, int))

    def __hash__(self):
        return id(self)


def _gamma_pm() -> Tuple[CMatrix, CMatrix]:
    gp = CMatrix.from_rows([[0, SQRT2], [0, 0]])
    gm = CMatrix.from_rows([[0, 0], [-SQRT2, 0]])
    return gp, gm


def lorentzian_extension(v: CliffordRepV) -> CliffordRepW:
    """Gamma_+ = g+ x 1, Gamma_- = g- x 1, Gamma_i = sigma x gamma_i with
    g+- = (i s2 +- s1)/sqrt2 and sigma = diag(-1, 1)."""
    n = v.generators[0].rows
    one = CMatrix.identity(n)
    gp, gm = _gamma_pm()
    sig2 = CMatrix.from_rows([[-1, 0], [0, 1]])
    gens: Dict[Label, CMatrix] = {"+": gp.kron(one), "-": gm.kron(one)}
    for k, g in enumerate(v.generators, start=1):
        gens[k] = sig2.kron(g)
    sigma = (gens["+"] @ gens["-"] - gens["-"] @ gens["+"]).scale(Fraction(1, 2))
    charge = None if v.charge is None else PAULI["2"].kron(v.charge)
    return CliffordRepW(gens, sigma, charge, v)


@lru_cache(maxsize=None)
def _w11_cached() -> CliffordRepW:
    return lorentzian_extension(build_clifford_v9())


def build_clifford_w11(v9: CliffordRepV | None = None) -> CliffordRepW:
    """The 32-dimensional module of Cl(R^{1,10})."""
    if v9 is None or v9 is build_clifford_v9():
        return _w11_cached()
    return lorentzian_extension(v9)


def default_w11() -> CliffordRepW:
    return _w11_cached()


@lru_cache(maxsize=None)
def euclidean_generators(n: int) -> Tuple[CMatrix, ...]:
    """A complex matrix representation of Cl(R^n) for n <= 9.

    n <= 5 uses 4x4 matrices built from Pauli tensor products
    (i s1 x 1, i s2 x 1, i s3 x s1, i s3 x s2, i s3 x s3), n in {6, 7} uses the
    octonion matrices, n in {8, 9} the generators of :func:`build_clifford_v9`.
    """
    if n <= 0:
        return ()
    if n <= 5:
        p = PAULI
        gens = [
            p["1"].kron(p["0"]),
            p["2"].kron(p["0"]),
            p["3"].kron(p["1"]),
            p["3"].kron(p["2"]),
            p["3"].kron(p["3"]),
        ]
        return tuple(g.scale(_I) for g in gens[:n])
    if n <= 7:
        return tuple(_octonions()[:n])
    if n <= 9:
        return build_clifford_v9().generators[:n]
    raise ValueError("only n <= 9 is supported")


# ---------------------------------------------------------------------------
# monomials


def _rep_generators(rep) -> Mapping[Label, CMatrix]:
    if isinstance(rep, CliffordRepW):
        return rep.generators
    if isinstance(rep, CliffordRepV):
        return {k: g for k, g in enumerate(rep.generators, start=1)}
    if isinstance(rep, Mapping):
        return rep
    raise TypeError(f"not a Clifford representation: {type(rep).__name__}")


_MONO_CACHE: Dict[Tuple[int, Tuple[Label, ...]], CMatrix] = {}


def monomial_matrix(rep, indices: Sequence[Label]) -> CMatrix:
    """Ordered product of generators; the empty product is the identity."""
    idx = tuple(indices)
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate generator index in {idx}")
    key = (id(rep), idx)
    hit = _MONO_CACHE.get(key)
    if hit is not None:
        return hit
    gens = _rep_generators(rep)
    for k in idx:
        if k not in gens:
            raise ValueError(f"unknown generator label {k!r}")
    if not idx:
        n = next(iter(gens.values())).rows
        out = CMatrix.identity(n)
    else:
        out = gens[idx[0]]
        for k in idx[1:]:
            out = out @ gens[k]
    # keep the representation alive while its id is used as a cache key
    _MONO_CACHE[key] = out
    _KEEPALIVE[id(rep)] = rep
    return out


_KEEPALIVE: Dict[int, object] = {}


def symmetry_sign(grade: int) -> int:
    """Delta_l = -(-1)^{l(l+1)/2}: C_W(x, A y) = Delta_l C_W(y, A x)."""
    if grade < 0:
        raise ValueError("grade must be non-negative")
    return -((-1) ** ((grade * (grade + 1) // 2) % 2))


def bilinear(C: CMatrix, xi: CMatrix, A: CMatrix | None, eta: CMatrix) -> Surd:
    """xi^T C A eta for column vectors xi, eta (A = None means identity)."""
    if xi.cols != 1 or eta.cols != 1:
        raise ValueError("spinors must be column vectors")
    right = eta if A is None else A @ eta
    if C.cols != right.rows or xi.rows != C.rows:
        raise ValueError("dimension mismatch in bilinear pairing")
    return (xi.T @ (C @ right)).scalar()


# ---------------------------------------------------------------------------
# formal Clifford algebra of R^n (n <= 9)


@dataclass(frozen=True, order=True)
class CliffordMonomial:
    """Strictly ascending index set; the empty set is the identity."""

    indices: Tuple[int, ...] = ()

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be strictly ascending: {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def grade(self) -> int:
        return len(self.indices)

    def times(self, other: "CliffordMonomial") -> Tuple[int, "CliffordMonomial"]:
        """Product as (sign, monomial), using e_k e_k = -1."""
        a, b = self.indices, other.indices
        inversions = sum(1 for x in a for y in b if x > y)
        common = len(set(a) & set(b))
        sign = -1 if (inversions + common) % 2 else 1
        return sign, CliffordMonomial(tuple(sorted(set(a) ^ set(b))))

    def __str__(self):
        return "1" if not self.indices else "e" + "".join(str(i) for i in self.indices)


def _mono(indices: Iterable[int]) -> Tuple[int, CliffordMonomial]:
    """Sign and canonical monomial of an arbitrary ordered index word."""
    sign, out = 1, CliffordMonomial(())
    for k in indices:
        s, out = out.times(CliffordMonomial((int(k),)))
        sign *= s
    return sign, out


class CliffordElement:
    """Formal exact linear combination of Clifford monomials of Cl(R^n)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[CliffordMonomial, object] | None = None):
        clean: Dict[CliffordMonomial, GaussianRational] = {}
        for m, c in (terms or {}).items():
            if not isinstance(m, CliffordMonomial):
                m = CliffordMonomial(tuple(m))
            c = GaussianRational.coerce(c)
            if c:
                clean[m] = clean.get(m, GaussianRational(0)) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    # constructors -----------------------------------------------------------
    @classmethod
    def scalar(cls, c) -> "CliffordElement":
        return cls({CliffordMonomial(()): c})

    @classmethod
    def monomial(cls, *indices: int, coeff=1) -> "CliffordElement":
        """Ordered product e_{i1} e_{i2} ... (any order, repeats allowed)."""
        sign, m = _mono(indices)
        return cls({m: GaussianRational.coerce(coeff) * sign})

    @classmethod
    def vector(cls, i: int) -> "CliffordElement":
        return cls.monomial(i)

    # algebra ----------------------------------------------------------------
    def __add__(self, other):
        other = _as_element(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, GaussianRational(0)) + c
        return CliffordElement(terms)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_element(other))

    def __rsub__(self, other):
        return _as_element(other) - self

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            try:
                c = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
            return CliffordElement({m: v * c for m, v in self.terms.items()})
        out: Dict[CliffordMonomial, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = m1.times(m2)
                out[m] = out.get(m, GaussianRational(0)) + (c1 * c2) * s
        return CliffordElement(out)

    def __rmul__(self, other):
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return CliffordElement({m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int):
        out = CliffordElement.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def commutator(self, other: "CliffordElement") -> "CliffordElement":
        return self * other - other * self

    def bar(self) -> "CliffordElement":
        """Negate the odd-grade part."""
        return CliffordElement({m: (-c if m.grade % 2 else c) for m, c in self.terms.items()})

    def grade_part(self, k: int) -> "CliffordElement":
        return CliffordElement({m: c for m, c in self.terms.items() if m.grade == k})

    def grades(self) -> Tuple[int, ...]:
        return tuple(sorted({m.grade for m in self.terms}))

    def is_zero(self) -> bool:
        return not self.terms

    def max_index(self) -> int:
        return max((max(m.indices) for m in self.terms if m.indices), default=0)

    def matrix_of(self, generators: Sequence[CMatrix] | CliffordRepV | None = None) -> CMatrix:
        """Image under gamma_k -> generators[k-1] (default: the R^9 module)."""
        if generators is None:
            generators = build_clifford_v9()
        gens = generators.generators if isinstance(generators, CliffordRepV) else tuple(generators)
        n = gens[0].rows
        out = CMatrix.zeros(n)
        for m, c in sorted(self.terms.items()):
            if m.indices and max(m.indices) > len(gens):
                raise ValueError(f"monomial {m} exceeds the {len(gens)} available generators")
            out = out + _monomial_image(gens, m.indices).scale(c)
        return out

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            try:
                other = _as_element(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "CliffordElement(0)"
        parts = [f"({c})*{m}" for m, c in sorted(self.terms.items())]
        return "CliffordElement(" + " + ".join(parts) + ")"


_IMAGE_CACHE: Dict[Tuple[int, Tuple[int, ...]], CMatrix] = {}


def _monomial_image(gens: Tuple[CMatrix, ...], indices: Tuple[int, ...]) -> CMatrix:
    key = (id(gens[0]), len(gens), indices)
    hit = _IMAGE_CACHE.get(key)
    if hit is not None:
        return hit
    n = gens[0].rows
    out = CMatrix.identity(n)
    for k in indices:
        out = out @ gens[k - 1]
    _IMAGE_CACHE[key] = out
    _KEEPALIVE[id(gens[0])] = gens
    return out


def _as_element(x) -> CliffordElement:
    if isinstance(x, CliffordElement):
        return x
    return CliffordElement.scalar(GaussianRational.coerce(x))


# ---------------------------------------------------------------------------
# projectors


@dataclass(frozen=True, eq=False)
class Projector:
    """An idempotent with a descriptive kind.

    ``kind`` is one of ``"sigma-plus"``, ``"sigma-minus"``, ``"X-plus"``,
    ``"X-minus"``; ``indices`` records the index set of an X projector.
    """

    matrix: CMatrix
    kind: str
    indices: Tuple[Label, ...] = ()


def sigma_projectors(rep: CliffordRepW) -> Tuple[Projector, Projector]:
    """sigma_+- = (1 +- sigma)/2."""
    one = CMatrix.identity(rep.dim)
    half = Fraction(1, 2)
    return (
        Projector((one + rep.sigma).scale(half), "sigma-plus"),
        Projector((one - rep.sigma).scale(half), "sigma-minus"),
    )


def x_projector(rep, indices: Sequence[Label], sign: int) -> Projector:
    """X^+-_I = (1 +- iota Gamma_I)/2 with iota in {1, i} making
    (iota Gamma_I)^2 = 1."""
    g = monomial_matrix(rep, list(indices))
    n = g.rows
    one = CMatrix.identity(n)
    sq = g @ g
    if sq == one:
        iota = GaussianRational(1)
    elif sq == -one:
        iota = _I
    else:
        raise ValueError(f"Gamma_{tuple(indices)} does not square to +-1")
    half = Fraction(1, 2)
    if sign > 0:
        mat = (one + g.scale(iota)).scale(half)
        kind = "X-plus"
    else:
        mat = (one - g.scale(iota)).scale(half)
        kind = "X-minus"
    return Projector(mat, kind, tuple(indices))


def all_monomials(n: int, max_grade: int | None = None) -> List[Tuple[int, ...]]:
    """Ascending index tuples over {1..n} of grade <= max_grade."""
    top = n if max_grade is None else max_grade
    out: List[Tuple[int, ...]] = []
    for k in range(top + 1):
        out.extend(itertools.combinations(range(1, n + 1), k))
    return out


__all__.append("all_monomials")
