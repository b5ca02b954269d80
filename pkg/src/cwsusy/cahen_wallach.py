"""Cahen-Wallach data: parameters, the B-form, metric, Christoffel symbols,
Killing vector fields and the solvable isometry Lie algebra.

Coordinates are ordered ``(x^+, x^-, x^1, ..., x^n)``.  Lie algebra basis
labels are strings: ``"+"``, ``"-"``, ``"i"`` (translations), ``"i*"`` (dual
translations) and ``"ij"`` with ``i < j`` (rotations commuting with B).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .scalars import GaussianRational, parse_rational
from .trigpoly import MINUS, PLUS, TrigPoly

__all__ = [
    "CWParams",
    "BForm",
    "b_form",
    "metric_at",
    "christoffel",
    "christoffel_second",
    "KillingField",
    "killing_basis",
    "killing_verify",
    "killing_residual",
    "vector_field_bracket",
    "CWLieAlgebra",
    "lie_algebra",
    "killing_brackets_match",
    "Decomposability",
    "decomposability",
    "isometry_equivalent",
    "so_labels",
    "parse_label",
    "family_labels",
]

_ZERO = GaussianRational(0)
_I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# parameters and B


@dataclass(frozen=True)
class CWParams:
    """The four rational parameters of the family."""

    alpha_plus: Fraction
    alpha_minus: Fraction
    alpha_plus_prime: Fraction
    alpha_minus_prime: Fraction

    def __post_init__(self):
        for name in ("alpha_plus", "alpha_minus", "alpha_plus_prime", "alpha_minus_prime"):
            v = getattr(self, name)
            if isinstance(v, str):
                v = parse_rational(v)
            if isinstance(v, float):
                raise TypeError("parameters must be exact rationals")
            object.__setattr__(self, name, Fraction(v))

    @classmethod
    def from_tuple(cls, values: Sequence) -> "CWParams":
        """Build from ``(alpha_-, alpha_+', alpha_+, alpha_-')``."""
        am, app, ap, amp = values
        return cls(alpha_plus=ap, alpha_minus=am, alpha_plus_prime=app, alpha_minus_prime=amp)

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        """``(alpha_-, alpha_+', alpha_+, alpha_-')``."""
        return (self.alpha_minus, self.alpha_plus_prime, self.alpha_plus, self.alpha_minus_prime)

    def i_lambdas(self) -> Tuple[Fraction, ...]:
        """The real numbers i*lambda_k, k = 1..9."""
        am, app, ap = self.alpha_minus, self.alpha_plus_prime, self.alpha_plus
        return (am - app,) * 2 + (am + app,) * 2 + (ap - app,) + (ap + app,) * 4

    def lambdas(self) -> Tuple[GaussianRational, ...]:
        """lambda_k = -i (i lambda_k)."""
        return tuple(GaussianRational(0, -v) for v in self.i_lambdas())

    def scaled(self, c) -> "CWParams":
        c = Fraction(c)
        return CWParams(self.alpha_plus * c, self.alpha_minus * c,
                        self.alpha_plus_prime * c, self.alpha_minus_prime * c)

    def __str__(self):
        am, app, ap, amp = self.as_tuple()
        return f"(a-={am}, a+'={app}, a+={ap}, a-'={amp})"


@dataclass(frozen=True)
class BForm:
    """Diagonal symmetric form on V = R^n given by its eigenvalues."""

    diag: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(Fraction(v) for v in self.diag))

    @property
    def n(self) -> int:
        return len(self.diag)

    def is_degenerate(self) -> bool:
        return any(v == 0 for v in self.diag)

    def zero_count(self) -> int:
        return sum(1 for v in self.diag if v == 0)

    def blocks(self) -> List[Tuple[int, ...]]:
        """Index groups (1-based) of equal eigenvalues, ordered by first index."""
        groups: Dict[Fraction, List[int]] = {}
        for k, v in enumerate(self.diag, start=1):
            groups.setdefault(v, []).append(k)
        return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])

    def scaled(self, c) -> "BForm":
        return BForm(tuple(v * Fraction(c) for v in self.diag))

    def __getitem__(self, k: int) -> Fraction:
        """Eigenvalue of e_k (1-based)."""
        return self.diag[k - 1]


def b_form(params: CWParams) -> BForm:
    """B = diag(lambda_k^2) = -diag((i lambda_k)^2)."""
    return BForm(tuple(-v * v for v in params.i_lambdas()))


def _as_bform(b) -> BForm:
    if isinstance(b, BForm):
        return b
    if isinstance(b, CWParams):
        return b_form(b)
    return BForm(tuple(b))


# ---------------------------------------------------------------------------
# metric and Christoffel symbols

Coord = Union[str, int]


def _cidx(label: Coord) -> int:
    if label == "+":
        return PLUS
    if label == "-":
        return MINUS
    return int(label) + 1


def metric_at(B, x: Sequence) -> List[List]:
    """Coordinate components g_{mu nu} at ``x = (x^+, x^-, x^1..x^n)``."""
    B = _as_bform(B)
    n = B.n
    dim = n + 2
    if len(x) != dim:
        raise ValueError(f"expected {dim} coordinates")
    g = [[0] * dim for _ in range(dim)]
    g[PLUS][MINUS] = g[MINUS][PLUS] = 1
    g[MINUS][MINUS] = -sum(B[k] * x[k + 1] * x[k + 1] for k in range(1, n + 1))
    for k in range(2, dim):
        g[k][k] = 1
    return g


def christoffel(B, x: Sequence) -> Dict[Tuple[Coord, Coord, Coord], object]:
    """Nonzero symbols Gamma_{a b; c} = g_{c r} Gamma^r_{a b} (lowered on the
    last index), keyed by labels: Gamma_{i-;-} = Gamma_{-i;-} = -(Bx)_i and
    Gamma_{--;i} = (Bx)_i."""
    B = _as_bform(B)
    out: Dict[Tuple[Coord, Coord, Coord], object] = {}
    for i in range(1, B.n + 1):
        bx = B[i] * x[i + 1]
        if bx:
            out[(i, "-", "-")] = -bx
            out[("-", i, "-")] = -bx
            out[("-", "-", i)] = bx
    return out


def christoffel_second(B, x: Sequence) -> Dict[Tuple[Coord, Coord, Coord], object]:
    """Nonzero Gamma^r_{a b}, keyed (r, a, b): Gamma^+_{i-} = Gamma^+_{-i} =
    -(Bx)_i and Gamma^i_{--} = (Bx)_i."""
    B = _as_bform(B)
    out: Dict[Tuple[Coord, Coord, Coord], object] = {}
    for i in range(1, B.n + 1):
        bx = B[i] * x[i + 1]
        if bx:
            out[("+", i, "-")] = -bx
            out[("+", "-", i)] = -bx
            out[(i, "-", "-")] = bx
    return out


def _metric_poly(B: BForm) -> Dict[Tuple[int, int], TrigPoly]:
    g = {(PLUS, MINUS): TrigPoly.const(1), (MINUS, PLUS): TrigPoly.const(1)}
    gmm = TrigPoly()
    for k in range(1, B.n + 1):
        if B[k]:
            gmm = gmm + TrigPoly.const(-B[k]) * TrigPoly.var(k + 1) * TrigPoly.var(k + 1)
    if gmm:
        g[(MINUS, MINUS)] = gmm
    for k in range(2, B.n + 2):
        g[(k, k)] = TrigPoly.const(1)
    return g


def _christoffel_second_poly(B: BForm) -> Dict[Tuple[int, int, int], TrigPoly]:
    out: Dict[Tuple[int, int, int], TrigPoly] = {}
    for i in range(1, B.n + 1):
        if not B[i]:
            continue
        bx = TrigPoly.const(B[i]) * TrigPoly.var(i + 1)
        out[(PLUS, i + 1, MINUS)] = -bx
        out[(PLUS, MINUS, i + 1)] = -bx
        out[(i + 1, MINUS, MINUS)] = bx
    return out


# ---------------------------------------------------------------------------
# Killing fields


@dataclass(frozen=True, eq=False)
class KillingField:
    """A vector field ``sum_mu c^mu(x) d_mu`` with trig-polynomial components.

    ``label`` is the Lie-algebra label the field represents; ``kind`` is one of
    ``plus``, ``minus``, ``trans``, ``dual``, ``rot``.  ``components`` maps a
    coordinate index (0 = x^+, 1 = x^-, k+1 = x^k) to its coefficient.
    """

    label: str
    kind: str
    components: Mapping[int, TrigPoly]
    n: int = 9

    def component(self, k: int) -> TrigPoly:
        return self.components.get(k, TrigPoly())

    def evaluate(self, x: Sequence) -> List:
        """Component vector at x (exact at x^- = 0, complex float otherwise)."""
        return [self.component(k).evaluate(x) for k in range(self.n + 2)]

    def is_zero(self) -> bool:
        return all(not c for c in self.components.values())

    def __add__(self, other: "KillingField") -> "KillingField":
        comps = dict(self.components)
        for k, c in other.components.items():
            comps[k] = comps.get(k, TrigPoly()) + c
        return KillingField("", "combination", {k: v for k, v in comps.items() if v}, self.n)

    def scale(self, c) -> "KillingField":
        return KillingField(self.label, self.kind, {k: v * c for k, v in self.components.items() if v}, self.n)

    def equals(self, other: "KillingField") -> bool:
        keys = set(self.components) | set(other.components)
        return all(self.component(k) == other.component(k) for k in keys)


def parse_label(label: str) -> Tuple[str, Tuple[int, ...]]:
    """Split a Lie-algebra label into (kind, indices)."""
    if label == "+":
        return "plus", ()
    if label == "-":
        return "minus", ()
    if label.endswith("*") and label[:-1].isdigit() and len(label) == 2:
        return "dual", (int(label[0]),)
    if label.isdigit() and len(label) == 1:
        return "trans", (int(label),)
    if label.isdigit() and len(label) == 2 and label[0] < label[1]:
        return "rot", (int(label[0]), int(label[1]))
    raise ValueError(f"unknown label {label!r}")


def so_labels(B) -> List[str]:
    """Rotation labels ``"ij"`` (i < j) inside the equal-eigenvalue blocks."""
    B = _as_bform(B)
    out = []
    for block in B.blocks():
        for i, j in itertools.combinations(block, 2):
            out.append(f"{i}{j}")
    return out


def family_labels(n: int = 9) -> List[str]:
    """The 28 labels of the generic member of the parameter family."""
    rots = ["12", "34", "67", "68", "69", "78", "79", "89"]
    return ["+", "-"] + [str(k) for k in range(1, n + 1)] + [f"{k}*" for k in range(1, n + 1)] + rots


def killing_field(lams: Sequence[GaussianRational], label: str, n: int | None = None) -> KillingField:
    """Closed form of the Killing field for one label given lambda_1..lambda_n."""
    n = len(lams) if n is None else n
    kind, idx = parse_label(label)
    if kind == "plus":
        return KillingField(label, kind, {PLUS: TrigPoly.const(-1)}, n)
    if kind == "minus":
        return KillingField(label, kind, {MINUS: TrigPoly.const(-1)}, n)
    if kind == "trans":
        (i,) = idx
        lam = lams[i - 1]
        comps = {i + 1: TrigPoly.cos(lam)}
        plus = TrigPoly.sin(lam, coeff=lam, mono=((i + 1, 1),))
        if plus:
            comps[PLUS] = plus
        return KillingField(label, kind, comps, n)
    if kind == "dual":
        (i,) = idx
        lam = lams[i - 1]
        comps = {}
        c_i = TrigPoly.sin(lam, coeff=-lam)
        if c_i:
            comps[i + 1] = c_i
        plus = TrigPoly.cos(lam, coeff=lam * lam, mono=((i + 1, 1),))
        if plus:
            comps[PLUS] = plus
        return KillingField(label, kind, comps, n)
    i, j = idx
    return KillingField(label, kind, {i + 1: TrigPoly.var(j + 1), j + 1: -TrigPoly.var(i + 1)}, n)


def _labels_for(B: BForm) -> List[str]:
    n = B.n
    return ["+", "-"] + [str(k) for k in range(1, n + 1)] + [f"{k}*" for k in range(1, n + 1)] + so_labels(B)


def killing_basis(params: CWParams) -> List[KillingField]:
    """K_(+), K_(-), K_(i), K_(i*) and the rotations of so_B(V)."""
    B = b_form(params)
    lams = params.lambdas()
    return [killing_field(lams, lab) for lab in _labels_for(B)]


def _lower(g: Mapping[Tuple[int, int], TrigPoly], K: KillingField, dim: int) -> List[TrigPoly]:
    low = []
    for nu in range(dim):
        acc = TrigPoly()
        for rho in range(dim):
            gv = g.get((nu, rho))
            c = K.components.get(rho)
            if gv is not None and c is not None:
                acc = acc + gv * c
        low.append(acc)
    return low


def killing_residual(B, K: KillingField) -> Dict[Tuple[int, int], TrigPoly]:
    """Nonzero components of nabla_mu K_nu + nabla_nu K_mu as trig-polynomials."""
    B = _as_bform(B)
    dim = B.n + 2
    g = _metric_poly(B)
    gam = _christoffel_second_poly(B)
    low = _lower(g, K, dim)

    def nabla(mu, nu):
        out = low[nu].diff(mu)
        for rho in range(dim):
            c = gam.get((rho, mu, nu))
            if c is not None and low[rho]:
                out = out - c * low[rho]
        return out

    res = {}
    for mu in range(dim):
        for nu in range(mu, dim):
            s = nabla(mu, nu) + nabla(nu, mu)
            if s:
                res[(mu, nu)] = s
    return res


def _is_exact_point(x: Sequence) -> bool:
    return all(isinstance(v, (int, Fraction, GaussianRational)) and not isinstance(v, bool) for v in x)


def killing_verify(B, K: KillingField, samples: Iterable[Sequence], tol: float = 1e-9,
                   jet: bool = True) -> bool:
    """Evaluate the Killing equation at each sample.

    Exact samples with x^- = 0 must give exactly zero (and, with ``jet``, so must
    the first x^- derivative); other samples must satisfy a relative residual
    below ``tol``.
    """
    res = killing_residual(B, K)
    for x in samples:
        exact = _is_exact_point(x) and not GaussianRational.coerce(x[MINUS])
        for (mu, nu), poly in res.items():
            if exact:
                if poly.evaluate(x):
                    return False
                if jet and poly.diff(MINUS).evaluate(x):
                    return False
            else:
                val = abs(complex(poly.evaluate(x)))
                scale = max(1.0, poly.coefficient_magnitude(x))
                if val > tol * scale:
                    return False
    return True


def vector_field_bracket(X: KillingField, Y: KillingField) -> KillingField:
    """[X, Y]^b = X^a d_a Y^b - Y^a d_a X^b."""
    n = max(X.n, Y.n)
    comps: Dict[int, TrigPoly] = {}
    for b in range(n + 2):
        acc = TrigPoly()
        yb, xb = Y.component(b), X.component(b)
        for a, xa in X.components.items():
            if yb:
                acc = acc + xa * yb.diff(a)
        for a, ya in Y.components.items():
            if xb:
                acc = acc - ya * xb.diff(a)
        if acc:
            comps[b] = acc
    return KillingField("", "bracket", comps, n)


# ---------------------------------------------------------------------------
# the abstract Lie algebra

Coeffs = Dict[str, object]


class CWLieAlgebra:
    """Exact structure constants on a labelled basis.

    ``constants[(a, b)]`` is the sparse expansion of [e_a, e_b]; only pairs with a
    nonzero bracket are stored, and both orders are present.
    """

    def __init__(self, labels: Sequence[str], constants: Mapping[Tuple[str, str], Coeffs]):
        self.labels = list(labels)
        self.constants = {k: dict(v) for k, v in constants.items() if v}

    def bracket_basis(self, a: str, b: str) -> Coeffs:
        return self.constants.get((a, b), {})

    def bracket(self, x: Mapping[str, object], y: Mapping[str, object]) -> Coeffs:
        out: Dict[str, object] = {}
        for a, ca in x.items():
            if not ca:
                continue
            for b, cb in y.items():
                if not cb:
                    continue
                for c, v in self.bracket_basis(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def is_antisymmetric(self) -> bool:
        for (a, b), v in self.constants.items():
            w = self.constants.get((b, a), {})
            keys = set(v) | set(w)
            if any(v.get(k, 0) + w.get(k, 0) != 0 for k in keys):
                return False
        return all((a, a) not in self.constants for a in self.labels)

    def jacobi_residuals(self) -> List[Tuple[str, str, str]]:
        """Triples a < b < c (in label order) violating the Jacobi identity."""
        bad = []
        labs = self.labels
        for i, a in enumerate(labs):
            for j in range(i + 1, len(labs)):
                b = labs[j]
                for k in range(j + 1, len(labs)):
                    c = labs[k]
                    t1 = self.bracket({a: 1}, self.bracket_basis(b, c))
                    t2 = self.bracket({b: 1}, self.bracket_basis(c, a))
                    t3 = self.bracket({c: 1}, self.bracket_basis(a, b))
                    keys = set(t1) | set(t2) | set(t3)
                    if any(t1.get(q, 0) + t2.get(q, 0) + t3.get(q, 0) != 0 for q in keys):
                        bad.append((a, b, c))
        return bad

    def restrict(self, labels: Sequence[str]) -> "CWLieAlgebra":
        """Subalgebra on ``labels``; raises if the span is not closed."""
        keep = set(labels)
        consts = {}
        for (a, b), v in self.constants.items():
            if a in keep and b in keep:
                if any(c not in keep for c in v):
                    raise ValueError(f"[{a}, {b}] leaves the span")
                consts[(a, b)] = v
        return CWLieAlgebra([l for l in self.labels if l in keep], consts)

    def sparse_triples(self) -> List[Tuple[str, str, str, object]]:
        """(a, b, c, coefficient) for a before b in label order."""
        order = {l: i for i, l in enumerate(self.labels)}
        out = []
        for (a, b), v in sorted(self.constants.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
            if order[a] < order[b]:
                for c in sorted(v, key=lambda q: order[q]):
                    out.append((a, b, c, v[c]))
        return out


def _rot_action(i: int, j: int, k: int) -> Dict[int, int]:
    """E_ij e_k = delta_jk e_i - delta_ik e_j."""
    out = {}
    if k == j:
        out[i] = out.get(i, 0) + 1
    if k == i:
        out[j] = out.get(j, 0) - 1
    return out


def _rot_commutator(p: Tuple[int, int], q: Tuple[int, int]) -> Dict[Tuple[int, int], int]:
    """[E_ij, E_kl] expanded over E_ab with a < b."""
    i, j = p
    k, l = q
    raw = []
    if j == k:
        raw.append((1, i, l))
    if i == k:
        raw.append((-1, j, l))
    if j == l:
        raw.append((-1, i, k))
    if i == l:
        raw.append((1, j, k))
    out: Dict[Tuple[int, int], int] = {}
    for s, a, b in raw:
        if a == b:
            continue
        if a > b:
            a, b, s = b, a, -s
        out[(a, b)] = out.get((a, b), 0) + s
    return {k2: v for k2, v in out.items() if v}


def lie_algebra(params_or_B) -> CWLieAlgebra:
    """Structure constants of so_B(V) + span{e_+, e_-, e_i, e_i*}.

    [e_-, e_i] = e_i*, [e_-, e_i*] = -lambda_i^2 e_i, [e_i, e_j*] = delta_ij
    lambda_i^2 e_+, rotations act on e_k and e_k* by E_ij, and e_+ is central.
    """
    B = _as_bform(params_or_B)
    n = B.n
    labels = _labels_for(B)
    rots = [parse_label(l)[1] for l in labels if parse_label(l)[0] == "rot"]
    C: Dict[Tuple[str, str], Coeffs] = {}

    def put(a, b, val: Coeffs):
        val = {k: Fraction(v) for k, v in val.items() if v}
        if not val:
            return
        C[(a, b)] = val
        C[(b, a)] = {k: -v for k, v in val.items()}

    for k in range(1, n + 1):
        put("-", str(k), {f"{k}*": 1})
        put("-", f"{k}*", {str(k): -B[k]})
        put(str(k), f"{k}*", {"+": B[k]})
    for (i, j) in rots:
        lab = f"{i}{j}"
        for k in range(1, n + 1):
            act = _rot_action(i, j, k)
            put(lab, str(k), {str(m): v for m, v in act.items()})
            put(lab, f"{k}*", {f"{m}*": v for m, v in act.items()})
    for p, q in itertools.combinations(rots, 2):
        comm = _rot_commutator(p, q)
        put(f"{p[0]}{p[1]}", f"{q[0]}{q[1]}", {f"{a}{b}": v for (a, b), v in comm.items()})
    return CWLieAlgebra(labels, C)


def _combination(fields: Mapping[str, KillingField], coeffs: Coeffs, n: int) -> KillingField:
    out = KillingField("", "combination", {}, n)
    for lab, c in coeffs.items():
        out = out + fields[lab].scale(c)
    return out


def killing_brackets_match(params: CWParams, samples: Iterable[Sequence] = (), tol: float = 1e-9):
    """Compare vector-field commutators with the abstract structure constants.

    Returns ``(sign, ok)`` where ``sign`` is the single global factor with
    [K_a, K_b] = sign * K_[e_a, e_b] for every pair; ``ok`` is False if no
    uniform sign exists.  The identity is checked symbolically and, in addition,
    at the given samples (exact when x^- = 0 including the first x^- jet,
    float otherwise).
    """
    B = b_form(params)
    alg = lie_algebra(B)
    lams = params.lambdas()
    fields = {lab: killing_field(lams, lab) for lab in alg.labels}
    samples = list(samples)
    sign = None
    for a, b in itertools.combinations(alg.labels, 2):
        lhs = vector_field_bracket(fields[a], fields[b])
        rhs = _combination(fields, alg.bracket_basis(a, b), B.n)
        if lhs.is_zero() and rhs.is_zero():
            continue
        matched = None
        for s in ((1, -1) if sign is None else (sign,)):
            if lhs.equals(rhs.scale(s)):
                matched = s
                break
        if matched is None:
            return (sign or 0), False
        sign = matched
        for x in samples:
            diff = lhs + rhs.scale(-sign)
            for comp in diff.components.values():
                exact = _is_exact_point(x) and not GaussianRational.coerce(x[MINUS])
                if exact:
                    if comp.evaluate(x) or comp.diff(MINUS).evaluate(x):
                        return sign, False
                elif abs(complex(comp.evaluate(x))) > tol * max(1.0, comp.coefficient_magnitude(x)):
                    return sign, False
    return (sign or 1), True


# ---------------------------------------------------------------------------
# decomposability and isometry


@dataclass(frozen=True)
class Decomposability:
    zero_count: int
    blocks: Tuple[Tuple[int, ...], ...]
    zero_directions: Tuple[int, ...]

    @property
    def indecomposable(self) -> bool:
        return self.zero_count == 0


def decomposability(B) -> Decomposability:
    B = _as_bform(B)
    zeros = tuple(k for k in range(1, B.n + 1) if B[k] == 0)
    return Decomposability(len(zeros), tuple(B.blocks()), zeros)


def isometry_equivalent(B1, B2) -> bool:
    """True iff the sorted eigenvalues agree up to one positive rational factor."""
    a = sorted(_as_bform(B1).diag)
    b = sorted(_as_bform(B2).diag)
    if len(a) != len(b):
        return False
    ratio = None
    for x, y in zip(a, b):
        if x == 0 or y == 0:
            if x != y:
                return False
            continue
        r = y / x
        if r <= 0:
            return False
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    # sorting must be compatible with the scale: recheck after scaling
    if ratio is not None:
        return sorted(v * ratio for v in a) == b
    return True
