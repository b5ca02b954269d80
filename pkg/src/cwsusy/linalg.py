"""Exact rank and kernel computations for :class:`CMatrix`.

A matrix over K = Q(i, sqrt 2) is turned into an integer matrix over Q by the
regular representation of K (entry-major ordering of the real coordinates), and
eliminated fraction-free with row-content reduction.  With entry-major ordering
the Q-free columns are exactly the realifications of the K-free columns, so a
K-basis of the kernel is read off from the Q-kernel without any search.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

import numpy as np

from .matrix import CMatrix, vstack
from .scalars import Surd

__all__ = ["realify", "rank", "nullspace", "joint_kernel", "column_span_rank", "integer_rref"]

_INT64_SAFE = 1 << 62


def _field_degree(m: CMatrix) -> int:
    if not m.is_gaussian():
        return 4
    if not m.is_real():
        return 2
    return 1


def realify(m: CMatrix, degree: int | None = None) -> np.ndarray:
    """Integer matrix of the regular representation, entry-major ordering.

    For ``degree`` 4 each entry ``x`` becomes the 4x4 block of multiplication by
    ``x`` on the basis (1, i, sqrt2, i sqrt2); degree 2 uses (1, i); degree 1
    keeps rational entries.  The common denominator is dropped (it does not
    change rank or kernel).
    """
    deg = _field_degree(m) if degree is None else degree
    p0, p1, p2, p3 = m.dense_parts()
    n, k = m.shape
    if deg == 1:
        return p0.copy()
    big = any(p.dtype == object for p in (p0, p1, p2, p3))
    out = np.zeros((n * deg, k * deg), dtype=object if big else np.int64)
    if deg == 2:
        blocks = [[p0, -p1], [p1, p0]]
    else:
        blocks = [
            [p0, -p1, 2 * p2, -2 * p3],
            [p1, p0, 2 * p3, 2 * p2],
            [p2, -p3, p0, -p1],
            [p3, p2, p1, p0],
        ]
    for a in range(deg):
        for b in range(deg):
            out[a::deg, b::deg] = blocks[a][b]
    return out


def _row_reduce(rows: np.ndarray) -> np.ndarray:
    """Divide each row by the gcd of its entries."""
    if rows.shape[0] == 0:
        return rows
    g = np.gcd.reduce(rows, axis=1)
    if rows.dtype == object:
        g = np.array([int(v) if v else 1 for v in g], dtype=object)
    else:
        g = np.where(g == 0, 1, g)
    return rows // g[:, None]


def integer_rref(a: np.ndarray):
    """Fraction-free Gauss-Jordan elimination of an integer matrix.

    Returns ``(reduced, pivots)`` where every pivot row has its pivot as the
    only nonzero entry in the pivot column.  Exact for arbitrary sizes: int64 is
    used while a bound guarantees no overflow, Python ints otherwise.
    """
    a = np.array(a, copy=True)
    if a.dtype != object:
        a = a.astype(np.int64)
    nrows, ncols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        # prefer the smallest pivot to limit growth
        absvals = [abs(int(col[i])) for i in nz]
        piv = r + int(nz[int(np.argmin(absvals))])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        p = a[r, c]
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            if a.dtype != object:
                m = int(np.abs(a).max())
                if 2 * m * m >= _INT64_SAFE:
                    a = a.astype(object)
                    p = a[r, c]
            f = a[others, c].copy()
            a[others] = a[others] * p - np.outer(f, a[r])
            a[others] = _row_reduce(a[others])
        a[r:r + 1] = _row_reduce(a[r:r + 1])
        pivots.append(c)
        r += 1
    return a, pivots


def _rank_int(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(integer_rref(a)[1])


def rank(m: CMatrix) -> int:
    """Exact rank over Q(i, sqrt 2)."""
    if m.is_zero():
        return 0
    deg = _field_degree(m)
    r = _rank_int(realify(m, deg))
    assert r % deg == 0
    return r // deg


def nullspace(m: CMatrix) -> List[CMatrix]:
    """Exact kernel basis (column vectors) in reduced echelon normalization.

    Each basis vector has entry 1 at its own free coordinate and 0 at the other
    free coordinates.
    """
    n = m.cols
    if m.is_zero():
        return [_unit(n, j) for j in range(n)]
    deg = _field_degree(m)
    red, pivots = integer_rref(realify(m, deg))
    pivset = set(pivots)
    basis = []
    for f in range(n):
        qcol = f * deg
        if qcol in pivset:
            continue
        # Q-kernel vector with 1 at qcol, zero at other free columns
        vec = [Fraction(0)] * (n * deg)
        vec[qcol] = Fraction(1)
        for row, pc in enumerate(pivots):
            coef = red[row, qcol]
            if coef:
                vec[pc] = Fraction(-int(coef), int(red[row, pc]))
        entries = []
        for j in range(n):
            comps = vec[j * deg:(j + 1) * deg] + [Fraction(0)] * (4 - deg)
            entries.append(Surd.from_parts(*comps))
        basis.append(CMatrix.column(entries))
    return basis


def _unit(n: int, j: int) -> CMatrix:
    return CMatrix.column([1 if i == j else 0 for i in range(n)])


def joint_kernel(mats: Sequence[CMatrix], order: Sequence[int] | None = None) -> List[CMatrix]:
    """Intersection of the kernels of several matrices with equal column count.

    The kernels are intersected one matrix at a time in ``order`` (default:
    the given order).  The returned basis spans the intersection.
    """
    if not mats:
        raise ValueError("no matrices")
    n = mats[0].cols
    order = list(range(len(mats))) if order is None else list(order)
    current = None  # columns spanning the running intersection
    for idx in order:
        m = mats[idx]
        if m.cols != n:
            raise ValueError("column count mismatch")
        if current is None:
            current = nullspace(m)
        else:
            if not current:
                return []
            basis = CMatrix.block([current])
            coeffs = nullspace(m @ basis)
            current = [basis @ c for c in coeffs]
    return current


def column_span_rank(vectors: Sequence[CMatrix]) -> int:
    if not vectors:
        return 0
    return rank(CMatrix.block([list(vectors)]))


def stacked_rank(mats: Sequence[CMatrix]) -> int:
    """Rank of the vertical stack (its kernel is the joint kernel)."""
    return rank(vstack(list(mats)))


__all__.append("stacked_rank")

