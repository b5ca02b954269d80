"""Dense exact matrices over Q(i, sqrt 2).

A :class:`CMatrix` stores integer numerator arrays for the four coordinates on
the basis ``(1, i, sqrt2, i*sqrt2)`` together with one positive common
denominator.  Numerators are ``int64`` while they provably fit and fall back to
``object`` arrays of Python ints otherwise, so every operation is exact.

Matrix products go through floating-point BLAS only when a bound on every
partial sum shows the result is an exactly representable integer (below
2**52); otherwise ``int64`` or arbitrary-precision paths are used.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .scalars import Surd

__all__ = ["CMatrix", "exact_matmul_parts"]

_FLOAT_EXACT = 1 << 52
_INT64_SAFE = 1 << 62


# ---------------------------------------------------------------------------
# integer-array helpers


def _maxabs(a) -> int:
    if a is None or a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(v)) for v in a.flat)
    return int(np.abs(a).max())


def _shrink(a):
    """Return an int64 copy of ``a`` if its entries fit, else keep objects."""
    if a is None:
        return None
    if a.dtype == object:
        if _maxabs(a) < _INT64_SAFE:
            return a.astype(np.int64)
        return a
    return a


def _freeze(a):
    if a is not None and a.flags.writeable:
        a.flags.writeable = False
    return a


def _to_object(a):
    return a if a.dtype == object else a.astype(object)


def _scale(a, k: int):
    """Exact ``a * k`` for an integer array and Python int ``k``."""
    if a is None or k == 0:
        return None
    if k == 1:
        return a
    if a.dtype != object and _maxabs(a) * abs(k) < _INT64_SAFE:
        return a * np.int64(k)
    return _to_object(a) * k


def _add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.dtype != object and b.dtype != object and _maxabs(a) + _maxabs(b) < _INT64_SAFE:
        return a + b
    return _to_object(a) + _to_object(b)


def _neg(a):
    if a is None:
        return None
    return -a


def _int_matmul(x, y):
    """Exact product of two real integer arrays."""
    n = x.shape[1]
    bound = n * _maxabs(x) * _maxabs(y)
    if bound == 0:
        return None
    if x.dtype != object and y.dtype != object:
        if bound < _FLOAT_EXACT:
            return np.rint(x.astype(np.float64) @ y.astype(np.float64)).astype(np.int64)
        if bound < _INT64_SAFE:
            return x @ y
    return _to_object(x) @ _to_object(y)


def _gauss_matmul(xr, xi, yr, yi):
    """Exact product of Gaussian-integer matrices given as (real, imag) parts.

    Returns a (real, imag) pair, entries None when identically zero.
    """
    if (xr is None and xi is None) or (yr is None and yi is None):
        return None, None
    mx = _maxabs(xr) + _maxabs(xi)
    my = _maxabs(yr) + _maxabs(yi)
    shape_k = (xr if xr is not None else xi).shape[1]
    objs = any(a is not None and a.dtype == object for a in (xr, xi, yr, yi))
    if not objs and shape_k * mx * my < _FLOAT_EXACT:
        zx = _complex(xr, xi)
        zy = _complex(yr, yi)
        z = zx @ zy
        re = np.rint(z.real).astype(np.int64)
        im = np.rint(z.imag).astype(np.int64)
        return (re if re.any() else None), (im if im.any() else None)

    def mm(a, b):
        if a is None or b is None:
            return None
        return _int_matmul(a, b)

    re = _add(mm(xr, yr), _neg(mm(xi, yi)))
    im = _add(mm(xr, yi), mm(xi, yr))
    return re, im


def _complex(re, im):
    if re is None:
        return 1j * im.astype(np.float64)
    if im is None:
        return re.astype(np.complex128)
    return re.astype(np.float64) + 1j * im.astype(np.float64)


def exact_matmul_parts(x, y):
    """Exact product of two 4-part integer matrices over Z[i, sqrt2]."""
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    rr = _gauss_matmul(x0, x1, y0, y1)
    ss = _gauss_matmul(x2, x3, y2, y3)
    rs = _gauss_matmul(x0, x1, y2, y3)
    sr = _gauss_matmul(x2, x3, y0, y1)
    p0 = _add(rr[0], _scale(ss[0], 2))
    p1 = _add(rr[1], _scale(ss[1], 2))
    p2 = _add(rs[0], sr[0])
    p3 = _add(rs[1], sr[1])
    return p0, p1, p2, p3


def _combine(op, x, y):
    """Generic bilinear product of 4-part arrays under an integer operation."""

    def m(a, b):
        if a is None or b is None:
            return None
        if a.dtype == object or b.dtype == object:
            return op(_to_object(a), _to_object(b))
        bound = _maxabs(a) * _maxabs(b)
        if bound < _INT64_SAFE:
            return op(a, b)
        return op(_to_object(a), _to_object(b))

    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    p0 = _add(_add(m(x0, y0), _neg(m(x1, y1))), _scale(_add(m(x2, y2), _neg(m(x3, y3))), 2))
    p1 = _add(_add(m(x0, y1), m(x1, y0)), _scale(_add(m(x2, y3), m(x3, y2)), 2))
    p2 = _add(_add(m(x0, y2), m(x2, y0)), _neg(_add(m(x1, y3), m(x3, y1))))
    p3 = _add(_add(m(x0, y3), m(x3, y0)), _add(m(x1, y2), m(x2, y1)))
    return p0, p1, p2, p3


def _scalar_parts(s: Surd):
    """Integer parts and denominator of a scalar."""
    fr = s.parts()
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fr), 1)
    return tuple(int(f * den) for f in fr), den


# ---------------------------------------------------------------------------


class CMatrix:
    """Immutable exact matrix over Q(i, sqrt 2).

    The value is ``(P0 + i P1 + sqrt2 P2 + i sqrt2 P3) / den`` with integer
    arrays ``P0..P3`` (``None`` standing for a zero array).
    """

    __slots__ = ("_parts", "_den", "shape", "_cache")

    def __init__(self, parts, den: int, shape):
        self._parts = parts
        self._den = den
        self.shape = tuple(shape)
        self._cache = None

    # construction ------------------------------------------------------------
    @classmethod
    def _make(cls, parts, den, shape) -> "CMatrix":
        parts = [None if (p is None or not p.any()) else p for p in parts]
        if all(p is None for p in parts):
            return cls((None, None, None, None), 1, shape)
        if den < 0:
            den = -den
            parts = [_neg(p) for p in parts]
        g = den
        for p in parts:
            if p is None or g == 1:
                continue
            if p.dtype == object:
                g = reduce(math.gcd, (int(v) for v in p.flat), g)
            else:
                g = math.gcd(g, int(np.gcd.reduce(p.ravel())))
        if g > 1:
            parts = [None if p is None else p // g for p in parts]
            den //= g
        parts = tuple(_freeze(_shrink(p)) for p in parts)
        return cls(parts, den, shape)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "CMatrix":
        cols = rows if cols is None else cols
        return cls((None, None, None, None), 1, (rows, cols))

    @classmethod
    def identity(cls, n: int) -> "CMatrix":
        return cls._make((np.eye(n, dtype=np.int64), None, None, None), 1, (n, n))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "CMatrix":
        """Build from nested sequences of exact scalars (int, Fraction,
        GaussianRational, Surd, or integer-valued complex)."""
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        vals = [[Surd.coerce(v).parts() for v in r] for r in rows]
        den = 1
        for r in vals:
            for p in r:
                for f in p:
                    den = den * f.denominator // math.gcd(den, f.denominator)
        arrs = []
        for k in range(4):
            data = [[int(p[k] * den) for p in r] for r in vals]
            arrs.append(np.array(data, dtype=object).reshape(nr, nc))
        return cls._make(arrs, den, (nr, nc))

    @classmethod
    def from_int_parts(cls, parts, den: int = 1) -> "CMatrix":
        """Build from up to four integer arrays (coefficients of 1, i, sqrt2,
        i sqrt2) and a common denominator."""
        parts = list(parts) + [None] * (4 - len(parts))
        shape = next(np.asarray(p).shape for p in parts if p is not None)
        arrs = []
        for p in parts:
            if p is None:
                arrs.append(None)
                continue
            a = np.asarray(p)
            if a.dtype != object:
                a = a.astype(np.int64)
            arrs.append(a)
        return cls._make(arrs, int(den), shape)

    @classmethod
    def column(cls, entries: Iterable) -> "CMatrix":
        return cls.from_rows([[e] for e in entries])

    @classmethod
    def block(cls, blocks: Sequence[Sequence["CMatrix | None"]]) -> "CMatrix":
        """Assemble a block matrix; ``None`` entries are zero blocks whose size
        is inferred from the row and column."""
        heights = []
        for row in blocks:
            h = next((b.shape[0] for b in row if b is not None), None)
            if h is None:
                raise ValueError("cannot infer block height")
            heights.append(h)
        widths = []
        for j in range(len(blocks[0])):
            w = next((row[j].shape[1] for row in blocks if row[j] is not None), None)
            if w is None:
                raise ValueError("cannot infer block width")
            widths.append(w)
        den = 1
        for row in blocks:
            for b in row:
                if b is not None:
                    den = den * b._den // math.gcd(den, b._den)
        rows_total, cols_total = sum(heights), sum(widths)
        out = []
        for k in range(4):
            present = any(b is not None and b._parts[k] is not None for row in blocks for b in row)
            if not present:
                out.append(None)
                continue
            big = any(
                b is not None and b._parts[k] is not None
                and (b._parts[k].dtype == object or _maxabs(b._parts[k]) * (den // b._den) >= _INT64_SAFE)
                for row in blocks for b in row
            )
            arr = np.zeros((rows_total, cols_total), dtype=object if big else np.int64)
            r0 = 0
            for row, h in zip(blocks, heights):
                c0 = 0
                for b, w in zip(row, widths):
                    if b is not None:
                        if b.shape != (h, w):
                            raise ValueError("block shape mismatch")
                        p = b._parts[k]
                        if p is not None:
                            arr[r0:r0 + h, c0:c0 + w] = p * (den // b._den)
                    c0 += w
                r0 += h
            out.append(arr)
        return cls._make(out, den, (rows_total, cols_total))

    # access -----------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    @property
    def den(self) -> int:
        return self._den

    def int_parts(self):
        """Tuple of four integer arrays (None for zero) and the denominator."""
        return self._parts, self._den

    def dense_parts(self):
        """Four integer arrays (zeros materialized)."""
        return tuple(
            np.zeros(self.shape, dtype=np.int64) if p is None else p for p in self._parts
        )

    def is_gaussian(self) -> bool:
        return self._parts[2] is None and self._parts[3] is None

    def is_real(self) -> bool:
        return self._parts[1] is None and self._parts[3] is None

    def __getitem__(self, key):
        if isinstance(key, tuple) and len(key) == 2 and all(isinstance(k, (int, np.integer)) for k in key):
            i, j = key
            vals = [0 if p is None else int(p[i, j]) for p in self._parts]
            return Surd.from_parts(*vals, den=self._den)
        if not isinstance(key, tuple):
            key = (key, slice(None))
        r, c = key
        if isinstance(r, (int, np.integer)):
            r = slice(r, r + 1)
        if isinstance(c, (int, np.integer)):
            c = slice(c, c + 1)
        parts = [None if p is None else p[r, c] for p in self._parts]
        shape = np.empty(self.shape, dtype=np.int8)[r, c].shape
        return CMatrix._make(parts, self._den, shape)

    def take(self, rows=None, cols=None) -> "CMatrix":
        """Select rows and/or columns by integer index lists."""
        parts = []
        for p in self._parts:
            if p is None:
                parts.append(None)
                continue
            q = p
            if rows is not None:
                q = q[list(rows), :]
            if cols is not None:
                q = q[:, list(cols)]
            parts.append(q)
        nr = self.rows if rows is None else len(rows)
        nc = self.cols if cols is None else len(cols)
        return CMatrix._make(parts, self._den, (nr, nc))

    def entries(self):
        """Nested list of Surd entries."""
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    # arithmetic ---------------------------------------------------------------
    def _aligned(self, other: "CMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        den = self._den * other._den // math.gcd(self._den, other._den)
        a = [_scale(p, den // self._den) for p in self._parts]
        b = [_scale(p, den // other._den) for p in other._parts]
        return a, b, den

    def __add__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        a, b, den = self._aligned(other)
        return CMatrix._make([_add(x, y) for x, y in zip(a, b)], den, self.shape)

    def __sub__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        a, b, den = self._aligned(other)
        return CMatrix._make([_add(x, _neg(y)) for x, y in zip(a, b)], den, self.shape)

    def __neg__(self):
        return CMatrix(tuple(_freeze(_neg(p)) for p in self._parts), self._den, self.shape)

    def scale(self, s) -> "CMatrix":
        """Multiply by an exact scalar."""
        s = Surd.coerce(s)
        if not s:
            return CMatrix.zeros(*self.shape)
        sp, sden = _scalar_parts(s)
        one = [None if v == 0 else np.array([[v]], dtype=np.int64 if abs(v) < _INT64_SAFE else object) for v in sp]
        prod = _combine(np.multiply, self._parts, one)
        return CMatrix._make(list(prod), self._den * sden, self.shape)

    def __mul__(self, other):
        if isinstance(other, CMatrix):
            raise TypeError("use @ for matrix products")
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        shape = (self.rows, other.cols)
        if self.is_zero() or other.is_zero():
            return CMatrix.zeros(*shape)
        parts = exact_matmul_parts(self._parts, other._parts)
        return CMatrix._make(list(parts), self._den * other._den, shape)

    def kron(self, other: "CMatrix") -> "CMatrix":
        shape = (self.rows * other.rows, self.cols * other.cols)
        parts = _combine(np.kron, self._parts, other._parts)
        return CMatrix._make(list(parts), self._den * other._den, shape)

    @property
    def T(self) -> "CMatrix":
        return CMatrix(
            tuple(None if p is None else p.T for p in self._parts),
            self._den,
            (self.cols, self.rows),
        )

    def conj(self) -> "CMatrix":
        p0, p1, p2, p3 = self._parts
        return CMatrix((p0, _freeze(_neg(p1)), p2, _freeze(_neg(p3))), self._den, self.shape)

    @property
    def H(self) -> "CMatrix":
        return self.conj().T

    def commutator(self, other: "CMatrix") -> "CMatrix":
        return self @ other - other @ self

    def anticommutator(self, other: "CMatrix") -> "CMatrix":
        return self @ other + other @ self

    def power(self, n: int) -> "CMatrix":
        if self.rows != self.cols or n < 0:
            raise ValueError("power needs a square matrix and n >= 0")
        out = CMatrix.identity(self.rows)
        for _ in range(n):
            out = out @ self
        return out

    # predicates ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return all(p is None for p in self._parts)

    def __eq__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        if self.shape != other.shape or self._den != other._den:
            return False
        for a, b in zip(self._parts, other._parts):
            if (a is None) != (b is None):
                return False
            if a is not None and not np.array_equal(a, b):
                return False
        return True

    def __hash__(self):
        return hash((self.shape, self._den, tuple(
            None if p is None else tuple(int(v) for v in p.flat) for p in self._parts
        )))

    def is_symmetric(self) -> bool:
        return self == self.T

    def is_antisymmetric(self) -> bool:
        return self == -self.T

    # conversion -------------------------------------------------------------
    def to_complex(self) -> np.ndarray:
        """Floating-point complex128 copy (for spot checks only)."""
        out = np.zeros(self.shape, dtype=np.complex128)
        weights = (1.0, 1j, math.sqrt(2.0), 1j * math.sqrt(2.0))
        for p, w in zip(self._parts, weights):
            if p is not None:
                out = out + w * (p.astype(np.float64) if p.dtype != object else np.array(
                    [float(v) for v in p.flat]).reshape(p.shape))
        return out / float(self._den)

    def trace(self) -> Surd:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        vals = [0 if p is None else int(np.trace(p) if p.dtype != object else sum(p[i, i] for i in range(self.rows))) for p in self._parts]
        return Surd.from_parts(*vals, den=self._den)

    def scalar(self) -> Surd:
        """The single entry of a 1x1 matrix."""
        if self.shape != (1, 1):
            raise ValueError(f"not a 1x1 matrix: {self.shape}")
        return self[0, 0]

    def __repr__(self):
        return f"CMatrix(shape={self.shape}, den={self._den})"


def hstack(mats: Sequence[CMatrix]) -> CMatrix:
    return CMatrix.block([list(mats)])


def vstack(mats: Sequence[CMatrix]) -> CMatrix:
    return CMatrix.block([[m] for m in mats])


def diag_blocks(*mats: CMatrix) -> CMatrix:
    n = len(mats)
    grid = [[mats[i] if i == j else None for j in range(n)] for i in range(n)]
    # zero blocks need explicit shapes when a whole row/column would be None
    for i in range(n):
        for j in range(n):
            if i != j:
                grid[i][j] = CMatrix.zeros(mats[i].rows, mats[j].cols)
    return CMatrix.block(grid)


__all__ += ["hstack", "vstack", "diag_blocks"]

