"""Exact scalars: Gaussian rationals and the quadratic extension by sqrt(2).

Every scalar in the package lives in the field Q(i, sqrt 2).  Two layers are
provided: :class:`GaussianRational` for ``a + b*i`` with rational ``a, b`` and
:class:`Surd` for ``u + v*sqrt(2)`` with Gaussian-rational ``u, v``.  Both are
immutable and hashable, compare exactly, and interoperate with ``int`` and
``fractions.Fraction``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "GaussianRational",
    "Surd",
    "parse_rational",
    "as_surd",
    "as_gaussian",
    "SQRT2",
    "I",
]

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_DECIMAL_RE = re.compile(r"^\s*[+-]?(\d+\.\d*|\.\d+|\d+)\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a finite decimal string into a Fraction.

    Anything else (``"1//2"``, ``"nan"``, ``"1e3"``, empty) raises ValueError.
    """
    if not isinstance(text, str):
        raise ValueError(f"expected a string, got {type(text).__name__}")
    m = _FRACTION_RE.match(text)
    if m:
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    if _DECIMAL_RE.match(text):
        return Fraction(text.strip())
    raise ValueError(f"malformed rational {text!r}")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, bool):
        return Fraction(int(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise TypeError("only integer-valued complex literals are exact")
            return cls(int(x.real), int(x.imag))
        return cls(_frac(x), 0)

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Squared modulus ``re^2 + im^2``."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, Surd):
            return NotImplemented
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = GaussianRational(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Surd):
            return other == self
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_imaginary(self) -> bool:
        return self.re == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


class Surd:
    """Exact element ``rat + root*sqrt(2)`` of Q(i, sqrt 2)."""

    __slots__ = ("rat", "root")

    def __init__(self, rat=0, root=0):
        object.__setattr__(self, "rat", GaussianRational.coerce(rat))
        object.__setattr__(self, "root", GaussianRational.coerce(root))

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    @classmethod
    def coerce(cls, x) -> "Surd":
        if isinstance(x, Surd):
            return x
        return cls(GaussianRational.coerce(x), 0)

    @classmethod
    def from_parts(cls, a, b, c, d, den=1) -> "Surd":
        """Build ``(a + b i + c sqrt2 + d i sqrt2) / den``."""
        den = Fraction(den)
        return cls(
            GaussianRational(Fraction(a) / den, Fraction(b) / den),
            GaussianRational(Fraction(c) / den, Fraction(d) / den),
        )

    def parts(self):
        """The four rational coordinates on the basis (1, i, sqrt2, i sqrt2)."""
        return (self.rat.re, self.rat.im, self.root.re, self.root.im)

    def __add__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return Surd(self.rat + o.rat, self.root + o.root)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.rat, -self.root)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return Surd(self.rat - o.rat, self.root - o.root)

    def __rsub__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return Surd(
            self.rat * o.rat + 2 * (self.root * o.root),
            self.rat * o.root + self.root * o.rat,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Surd":
        """Complex conjugation (sqrt 2 is real and fixed)."""
        return Surd(self.rat.conjugate(), self.root.conjugate())

    def inverse(self) -> "Surd":
        # (u + v s)^{-1} = (u - v s) / (u^2 - 2 v^2)
        n = self.rat * self.rat - 2 * (self.root * self.root)
        if not n:
            raise ZeroDivisionError("inverse of zero")
        ni = n.inverse()
        return Surd(self.rat * ni, -self.root * ni)

    def __truediv__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = Surd(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other):
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self.rat == o.rat and self.root == o.root

    def __hash__(self):
        if not self.root:
            return hash(self.rat)
        return hash((self.rat, self.root))

    def __bool__(self):
        return bool(self.rat) or bool(self.root)

    def is_gaussian(self) -> bool:
        return not self.root

    def to_gaussian(self) -> GaussianRational:
        if self.root:
            raise ValueError(f"{self} is not a Gaussian rational")
        return self.rat

    def __complex__(self):
        return complex(self.rat) + complex(self.root) * 2 ** 0.5

    def __repr__(self):
        return f"Surd({self.rat!s}, {self.root!s})"

    def __str__(self):
        if not self.root:
            return str(self.rat)
        head = f"({self.rat})+" if self.rat else ""
        return f"{head}({self.root})*sqrt2"


ScalarLike = Union[int, Fraction, GaussianRational, Surd]

SQRT2 = Surd(0, 1)
I = GaussianRational(0, 1)


def as_surd(x) -> Surd:
    return Surd.coerce(x)


def as_gaussian(x) -> GaussianRational:
    if isinstance(x, Surd):
        return x.to_gaussian()
    return GaussianRational.coerce(x)
