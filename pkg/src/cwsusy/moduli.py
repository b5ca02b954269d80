"""Classification of the parameter space: strata, the supersymmetric locus,
special points and the N-extended connections at the singular points.

Points are un-normalized rational 4-tuples; every reported boolean and tag is
invariant under nonzero rational rescaling, so the unit-sphere normalization
is only used for reporting.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .cahen_wallach import BForm, CWParams, b_form, decomposability
from .clifford_core import (
    CliffordElement,
    CliffordRepV,
    CliffordRepW,
    PAULI,
    euclidean_generators,
    lorentzian_extension,
    octonion_left_mults,
)
from .linalg import stacked_rank
from .matrix import CMatrix
from .scalars import GaussianRational, parse_rational
from .spinor_connection import ConnectionPair, family_pair, flat_check, parallel_dimension
from .superalgebra import susy_check, susy_check_reduced

__all__ = [
    "ModuliPoint",
    "ClassificationRecord",
    "ExtendedConnection",
    "classify",
    "sweep",
    "grid_points",
    "rational_range",
    "strata_tags",
    "special_points",
    "restricted_odd_dimension",
    "extended_connection_d6",
    "extended_connection_d9",
    "SPINOR_RANK",
]

SPINOR_RANK = 32
_HALF = Fraction(1, 2)
_I = GaussianRational(0, 1)

TAGS = ("P0", "P1", "P2", "Q", "diag-disc", "ellipsoid", "flat")


@dataclass(frozen=True)
class ModuliPoint:
    """A parameter point (alpha_+', alpha_+, alpha_-') with a free alpha_-."""

    alpha_plus_prime: Fraction
    alpha_plus: Fraction
    alpha_minus_prime: Fraction
    alpha_minus: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("alpha_plus_prime", "alpha_plus", "alpha_minus_prime", "alpha_minus"):
            v = getattr(self, name)
            if isinstance(v, str):
                v = parse_rational(v)
            if isinstance(v, float):
                raise TypeError("coordinates must be exact rationals")
            object.__setattr__(self, name, Fraction(v))

    @classmethod
    def from_params(cls, p: CWParams) -> "ModuliPoint":
        return cls(p.alpha_plus_prime, p.alpha_plus, p.alpha_minus_prime, p.alpha_minus)

    @classmethod
    def from_tuple(cls, values: Sequence) -> "ModuliPoint":
        """From ``(alpha_-, alpha_+', alpha_+, alpha_-')``."""
        return cls.from_params(CWParams.from_tuple(values))

    @classmethod
    def normalized(cls, alpha_plus_prime, alpha_plus, alpha_minus_prime) -> "ModuliPoint":
        """The point of the closed unit ball with alpha_- >= 0 fixed by the
        unit-norm condition; only exists when that root is rational."""
        app, ap, amp = (Fraction(v) for v in (alpha_plus_prime, alpha_plus, alpha_minus_prime))
        rest = 1 - app * app - ap * ap - amp * amp
        if rest < 0:
            raise ValueError("point lies outside the unit ball")
        num, den = _rational_sqrt(rest.numerator), _rational_sqrt(rest.denominator)
        if num is None or den is None:
            raise ValueError(f"alpha_- = sqrt({rest}) is not rational")
        return cls(app, ap, amp, Fraction(num, den))

    def params(self) -> CWParams:
        return CWParams(self.alpha_plus, self.alpha_minus, self.alpha_plus_prime, self.alpha_minus_prime)

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        """``(alpha_-, alpha_+', alpha_+, alpha_-')``."""
        return self.params().as_tuple()

    def norm_squared(self) -> Fraction:
        return sum(v * v for v in self.as_tuple())

    def is_normalized(self) -> bool:
        return self.norm_squared() == 1 and self.alpha_minus >= 0

    def ball_coordinates(self) -> Tuple[float, float, float]:
        """(alpha_+', alpha_+, alpha_-') of the normalized representative with
        alpha_- >= 0; floats, for reporting only."""
        r = math.sqrt(self.norm_squared())
        if r == 0:
            raise ValueError("the zero point has no normalized representative")
        s = -1.0 if self.alpha_minus < 0 else 1.0
        return tuple(s * float(v) / r for v in (self.alpha_plus_prime, self.alpha_plus, self.alpha_minus_prime))

    def scaled(self, c) -> "ModuliPoint":
        c = Fraction(c)
        return ModuliPoint(self.alpha_plus_prime * c, self.alpha_plus * c,
                           self.alpha_minus_prime * c, self.alpha_minus * c)

    def __str__(self):
        return (f"(a+'={self.alpha_plus_prime}, a+={self.alpha_plus}, "
                f"a-'={self.alpha_minus_prime}, a-={self.alpha_minus})")


def _rational_sqrt(n: int):
    r = math.isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class ClassificationRecord:
    point: ModuliPoint
    b_eigenvalues: Tuple[Fraction, ...]
    zero_count: int
    indecomposable: bool
    susy: bool
    nu: Fraction
    parallel_dim: int
    tags: Tuple[str, ...]
    superalgebra: bool = True
    mode: str = "exact"


# ---------------------------------------------------------------------------
# strata


def _proportional(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    """a = t b for some nonzero rational t."""
    if not any(a) or not any(b):
        return False
    k = next(i for i, v in enumerate(b) if v)
    t = Fraction(a[k]) / b[k]
    return t != 0 and all(x == t * y for x, y in zip(a, b))


_P0_RAY = (3, -1, 3, -1)
_P1_RAYS = ((1, 1, -3, 0), (-1, 1, -3, 0))


def on_flat_ellipse(p: CWParams) -> bool:
    """alpha_+ = e alpha_- and alpha_-' = e alpha_+' with one sign e."""
    return any(p.alpha_plus == e * p.alpha_minus and p.alpha_minus_prime == e * p.alpha_plus_prime
               for e in (1, -1))


def strata_tags(point: ModuliPoint, flat: bool | None = None) -> Tuple[str, ...]:
    """Stratum and catalog tags of a point.  ``flat`` is recomputed from the
    connection when not given."""
    p = point.params()
    am, app, ap, amp = p.as_tuple()
    tags = set()
    if ap == app or ap == -app:
        tags.add("diag-disc")
    if am == app or am == -app:
        tags.add("ellipsoid")
    if ap == am or ap == -am:
        tags.add("Q")
    if flat is None:
        flat = flat_check(family_pair(p), b_form(p))
    if flat:
        tags.add("flat")
    t = p.as_tuple()
    if _proportional(t, _P0_RAY):
        tags.add("P0")
    if any(_proportional(t, r) for r in _P1_RAYS):
        tags.add("P1")
    if app == 0 and ap == 0 and amp == 0 and am != 0:
        tags.add("P2")
    return tuple(x for x in TAGS if x in tags)


def restricted_odd_dimension(pair: ConnectionPair, B) -> int:
    """Dimension of the parallel data inside X^-_1234 xi_1 + X^+_1234 xi_2."""
    B = b_form(B) if isinstance(B, CWParams) else B
    g = pair.generators
    n16 = pair.dim
    one = CMatrix.identity(n16)
    vol = g[0] @ g[1] @ g[2] @ g[3]
    xp = (one + vol).scale(_HALF)
    xm = (one - vol).scale(_HALF)
    qb = [pair.q(i) + g[i - 1].scale(B[i]) for i in range(1, B.n + 1)]
    lower = n16 - stacked_rank([xm] + qb)
    return (n16 - stacked_rank([xp])) + lower


# ---------------------------------------------------------------------------
# classification


def classify(point: ModuliPoint) -> ClassificationRecord:
    p = point.params()
    B = b_form(p)
    dec = decomposability(B)
    susy = susy_check(p) if dec.indecomposable else susy_check_reduced(p)
    pair = family_pair(p)
    par = parallel_dimension(pair, B)
    flat = flat_check(pair, B)
    tags = strata_tags(point, flat)
    if "P2" in tags:
        nu = Fraction(restricted_odd_dimension(pair, B), SPINOR_RANK)
    else:
        nu = Fraction(par, SPINOR_RANK)
    return ClassificationRecord(
        point=point,
        b_eigenvalues=B.diag,
        zero_count=dec.zero_count,
        indecomposable=dec.indecomposable,
        susy=susy,
        nu=nu,
        parallel_dim=par,
        tags=tags,
    )


def rational_range(lo, hi, den: int) -> List[Fraction]:
    """All k/den with lo <= k/den <= hi, ascending."""
    lo, hi = Fraction(lo), Fraction(hi)
    if den <= 0:
        raise ValueError("denominator must be positive")
    start = math.ceil(lo * den)
    stop = math.floor(hi * den)
    return [Fraction(k, den) for k in range(start, stop + 1)]


def grid_points(axes: Sequence[Sequence[Fraction]], alpha_minus=Fraction(1, 2)) -> List[ModuliPoint]:
    """Product grid over (alpha_+', alpha_+, alpha_-') in lexicographic order."""
    if len(axes) != 3:
        raise ValueError("need three axes (alpha_+', alpha_+, alpha_-')")
    am = Fraction(alpha_minus)
    return [ModuliPoint(a, b, c, am) for a, b, c in itertools.product(*axes)]


def sweep(grid: Iterable[ModuliPoint], workers: int = 1, chunksize: int = 64) -> List[ClassificationRecord]:
    """Classify every point; the result follows the grid order for any
    number of workers."""
    points = list(grid)
    if workers <= 1 or len(points) < 2:
        return [classify(pt) for pt in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(classify, points, chunksize=chunksize))


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class SpecialPoint:
    name: str
    point: ModuliPoint
    b_form_description: str
    note: str
    record: ClassificationRecord = field(repr=False)


def special_points() -> Dict[str, SpecialPoint]:
    """Rational ray representatives of P0, P1, P2 and a point of the
    two-eigenvalue ellipse Q, with their classification records."""
    reps = {
        "P0": ((3, -1, 3, -1), "-4 b^2 diag(4 x 1_3, 1_6) up to ordering, b = a_+'", "flat, nu = 1"),
        "P1": ((1, 1, -3, 0), "-4 a_-^2 diag(4 x 1_1, 1_6, 0_2)", "decomposable, two zero eigenvalues"),
        "P2": ((1, 0, 0, 0), "-a_-^2 diag(1_4, 0_5)", "decomposable, restricted odd part"),
        "Q": ((2, 1, 2, 1), "-diag((a_+ - a_+')^2 1_3, (a_+ + a_+')^2 1_6)", "two eigenvalues, flat"),
    }
    out = {}
    for name, (t, bdesc, note) in reps.items():
        pt = ModuliPoint.from_tuple(tuple(Fraction(v) for v in t))
        out[name] = SpecialPoint(name, pt, bdesc, note, classify(pt))
    return out


def p0_pair(alpha_plus, alpha_plus_prime) -> ConnectionPair:
    """(c-bar, d) = (a_+ Gamma_125, a_+' Gamma_125)."""
    g125 = CliffordElement.monomial(1, 2, 5)
    return ConnectionPair(g125 * Fraction(alpha_plus), g125 * Fraction(alpha_plus_prime), label="P0")


# ---------------------------------------------------------------------------
# N-extended connections


@dataclass(frozen=True, eq=False)
class ExtendedConnection:
    """A connection on S(M_D) x C^N with rank-32 spinors.

    ``odd_dim`` is the dimension of the odd part: the parallel data inside
    X^-_1234 xi_1 + X^+_1234 xi_2 when ``restricted``, else all parallel data.
    """

    dimension: int
    v_generators: Tuple[CMatrix, ...]
    w_rep: CliffordRepW
    tensor_factor: CMatrix
    pair: ConnectionPair
    B: BForm
    parallel_dim: int
    odd_dim: int
    flat: bool
    restricted: bool

    @property
    def parallel_fraction(self) -> Fraction:
        return Fraction(self.parallel_dim, SPINOR_RANK)

    @property
    def nu(self) -> Fraction:
        """Fraction of the spinor bundle carried by the odd part; a flat
        connection needs no restriction."""
        if self.flat:
            return self.parallel_fraction
        return Fraction(self.odd_dim, SPINOR_RANK)


def _extended(dimension, gens, factor, cbar, d, B, restricted) -> ExtendedConnection:
    pair = ConnectionPair(cbar, d, gammas=tuple(gens), label=f"D{dimension}")
    w = lorentzian_extension(CliffordRepV(tuple(gens), None))
    par = parallel_dimension(pair, B)
    odd = restricted_odd_dimension(pair, B) if restricted else par
    return ExtendedConnection(dimension, tuple(gens), w, factor, pair, B, par, odd,
                              flat_check(pair, B), restricted)


def extended_connection_d6(beta) -> ExtendedConnection:
    """c-bar = beta X^-_1234 gamma_12 (x) T, d = 0 on S(M_6) (x) C^4 with
    B = -beta^2 1_4; T is the first generator of Cl(R^5)."""
    beta = Fraction(beta)
    g4 = euclidean_generators(4)
    T = euclidean_generators(5)[0]
    one4 = CMatrix.identity(4)
    gens = [g.kron(one4) for g in g4]
    vol = gens[0] @ gens[1] @ gens[2] @ gens[3]
    xm = (CMatrix.identity(16) - vol).scale(_HALF)
    cbar = (xm @ (g4[0] @ g4[1]).kron(T)).scale(beta)
    B = BForm((-beta * beta,) * 4)
    return _extended(6, gens, T, cbar, CMatrix.zeros(16), B, restricted=True)


def extended_connection_d9(alpha) -> ExtendedConnection:
    """The nine-dimensional reduction of P1 on S(M_9) (x) C^2:
    c-bar = -a L_1 (x) i s3 + 2a L_123 (x) 1, d = (a/2) L_1 (x) i s3 - (a/2) L_123 (x) 1,
    B = -4 a^2 diag(4, 1_6)."""
    alpha = Fraction(alpha)
    L = octonion_left_mults()
    one2 = CMatrix.identity(2)
    is3 = PAULI["3"].scale(_I)
    gens = [l.kron(one2) for l in L]
    l1 = L[0].kron(is3)
    l123 = (L[0] @ L[1] @ L[2]).kron(one2)
    cbar = l1.scale(-alpha) + l123.scale(2 * alpha)
    d = l1.scale(alpha * _HALF) - l123.scale(alpha * _HALF)
    B = BForm((-16 * alpha * alpha,) + (-4 * alpha * alpha,) * 6)
    return _extended(9, gens, is3, cbar, d, B, restricted=False)
