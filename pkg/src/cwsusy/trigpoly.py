"""Exact trig-polynomials in the light-cone coordinate x^- and polynomial in x^1..x^n.

A :class:`TrigPoly` is a finite sum of terms ``c * T(f x^-) * x^a`` with
``T`` in {cos, sin}, ``f`` a Gaussian-rational frequency and ``x^a`` a monomial
in the transverse coordinates.  Products are expanded with the
product-to-sum identities and frequencies are normalized (``cos(-f) = cos f``,
``sin(-f) = -sin f``, ``sin 0 = 0``), so two trig-polynomials are equal as
functions iff their canonical term dictionaries are equal.  Imaginary
frequencies give hyperbolic functions without special casing.

Coordinates are indexed ``0 = x^+``, ``1 = x^-``, ``k + 1 = x^k`` (k = 1..n).
Nothing here depends on ``x^+``.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Dict, Mapping, Sequence, Tuple

from .scalars import GaussianRational

__all__ = ["TrigPoly", "evaluate_at", "PLUS", "MINUS"]

PLUS = 0
MINUS = 1

_HALF = Fraction(1, 2)
_ZERO = GaussianRational(0)

Mono = Tuple[Tuple[int, int], ...]   # sorted (variable, exponent) pairs
Key = Tuple[str, GaussianRational, Mono]


def _canon_freq(kind: str, f: GaussianRational, coeff: GaussianRational):
    """Normalize the frequency sign; returns (kind, f, coeff) or None for 0."""
    if not f:
        if kind == "s":
            return None
        return "c", _ZERO, coeff
    if f.re < 0 or (f.re == 0 and f.im < 0):
        f = -f
        if kind == "s":
            coeff = -coeff
    return kind, f, coeff


def _mono_mul(a: Mono, b: Mono) -> Mono:
    d: Dict[int, int] = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


class TrigPoly:
    """Immutable exact trig-polynomial."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, GaussianRational] | None = None):
        out: Dict[Key, GaussianRational] = {}
        for (kind, f, mono), c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if not c:
                continue
            canon = _canon_freq(kind, GaussianRational.coerce(f), c)
            if canon is None:
                continue
            kind, f, c = canon
            key = (kind, f, tuple(mono))
            out[key] = out.get(key, _ZERO) + c
            if not out[key]:
                del out[key]
        self.terms = out

    # constructors -------------------------------------------------------------
    @classmethod
    def const(cls, c) -> "TrigPoly":
        return cls({("c", _ZERO, ()): c})

    @classmethod
    def var(cls, k: int) -> "TrigPoly":
        """The coordinate function with index ``k`` (k >= 2 are transverse)."""
        if k < 2:
            raise ValueError("only transverse coordinates are polynomial variables")
        return cls({("c", _ZERO, ((k, 1),)): 1})

    @classmethod
    def cos(cls, f, coeff=1, mono: Mono = ()) -> "TrigPoly":
        return cls({("c", GaussianRational.coerce(f), mono): coeff})

    @classmethod
    def sin(cls, f, coeff=1, mono: Mono = ()) -> "TrigPoly":
        return cls({("s", GaussianRational.coerce(f), mono): coeff})

    # algebra ----------------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, _ZERO) + c
        return TrigPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TrigPoly):
            c = GaussianRational.coerce(other)
            return TrigPoly({k: v * c for k, v in self.terms.items()})
        out: Dict[Key, GaussianRational] = {}

        def put(kind, f, mono, c):
            canon = _canon_freq(kind, f, c)
            if canon is None:
                return
            kind, f, c = canon
            key = (kind, f, mono)
            out[key] = out.get(key, _ZERO) + c

        for (k1, f1, m1), c1 in self.terms.items():
            for (k2, f2, m2), c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                h = c1 * c2 * _HALF
                if k1 == "c" and k2 == "c":
                    put("c", f1 - f2, mono, h)
                    put("c", f1 + f2, mono, h)
                elif k1 == "s" and k2 == "s":
                    put("c", f1 - f2, mono, h)
                    put("c", f1 + f2, mono, -h)
                elif k1 == "s" and k2 == "c":
                    put("s", f1 + f2, mono, h)
                    put("s", f1 - f2, mono, h)
                else:  # cos(a) sin(b)
                    put("s", f1 + f2, mono, h)
                    put("s", f1 - f2, mono, -h)
        return TrigPoly(out)

    def __rmul__(self, other):
        return self * other

    def diff(self, k: int) -> "TrigPoly":
        """Partial derivative with respect to coordinate ``k``."""
        if k == PLUS:
            return TrigPoly()
        out: Dict[Key, GaussianRational] = {}
        for (kind, f, mono), c in self.terms.items():
            if k == MINUS:
                if not f:
                    continue
                if kind == "c":
                    key, val = ("s", f, mono), -c * f
                else:
                    key, val = ("c", f, mono), c * f
            else:
                d = dict(mono)
                e = d.get(k, 0)
                if e == 0:
                    continue
                d[k] = e - 1
                key = (kind, f, tuple(sorted((v, x) for v, x in d.items() if x)))
                val = c * e
            out[key] = out.get(key, _ZERO) + val
        return TrigPoly(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "TrigPoly(0)"
        bits = []
        for (kind, f, mono), c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            trig = "" if not f else ("cos" if kind == "c" else "sin") + f"({f} x-)"
            mon = "".join(f"x{v - 1}^{e}" if e > 1 else f"x{v - 1}" for v, e in mono)
            bits.append(f"({c}){trig}{mon}")
        return "TrigPoly(" + " + ".join(bits) + ")"

    # evaluation -------------------------------------------------------------
    def evaluate(self, x: Sequence):
        """Value at a coordinate point ``x`` (length >= highest index + 1).

        Exact (GaussianRational) when ``x^-`` is exactly zero and all entries
        are exact; complex float otherwise.
        """
        return evaluate_at(self, x)

    def coefficient_magnitude(self, x: Sequence) -> float:
        """Sum of absolute values of the individual term values (for relative
        tolerances)."""
        total = 0.0
        for key, c in self.terms.items():
            total += abs(complex(_term_value(key, c, x, exact=False)))
        return total


def _coerce(x) -> TrigPoly:
    if isinstance(x, TrigPoly):
        return x
    return TrigPoly.const(GaussianRational.coerce(x))


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction, GaussianRational)) and not isinstance(v, bool)


def _term_value(key: Key, c: GaussianRational, x: Sequence, exact: bool):
    kind, f, mono = key
    if exact:
        trig = GaussianRational(1) if kind == "c" else _ZERO
        val = c * trig
        for v, e in mono:
            val = val * GaussianRational.coerce(x[v]) ** e
        return val
    arg = complex(f) * complex(x[MINUS])
    trig = cmath.cos(arg) if kind == "c" else cmath.sin(arg)
    val = complex(c) * trig
    for v, e in mono:
        val *= complex(x[v]) ** e
    return val


def evaluate_at(p: TrigPoly, x: Sequence):
    exact = all(_is_exact(v) for v in x) and not GaussianRational.coerce(x[MINUS])
    if exact:
        total = _ZERO
        for key, c in p.terms.items():
            total = total + _term_value(key, c, x, exact=True)
        return total
    total = 0j
    for key, c in p.terms.items():
        total += _term_value(key, c, x, exact=False)
    return total

