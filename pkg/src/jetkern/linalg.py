"""Small dense-matrix helpers shared by the series, normalization and tridisc
modules.

Matrices are immutable tuples of tuples.  The entry type is whatever scalar
field the caller works over (Fraction, ComplexRational, float or complex);
operations are field-agnostic except where noted.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import ComplexRational

Matrix = tuple

EXACT_TYPES = (int, Fraction, ComplexRational)


def mat(rows) -> Matrix:
    return tuple(tuple(row) for row in rows)


def identity(dim: int, one=Fraction(1)) -> Matrix:
    zero = one - one
    return tuple(
        tuple(one if i == j else zero for j in range(dim)) for i in range(dim)
    )


def zero_matrix(dim: int, zero=Fraction(0)) -> Matrix:
    return tuple(tuple(zero for _ in range(dim)) for _ in range(dim))


def diagonal(entries) -> Matrix:
    entries = list(entries)
    zero = entries[0] - entries[0]
    d = len(entries)
    return tuple(
        tuple(entries[i] if i == j else zero for j in range(d)) for i in range(d)
    )


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def conjugate_scalar(x):
    if isinstance(x, ComplexRational):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    return x


def mat_conj_transpose(a: Matrix) -> Matrix:
    return tuple(tuple(conjugate_scalar(x) for x in col) for col in zip(*a))


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_max_abs(a: Matrix) -> float:
    return max(abs(complex(x)) for row in a for x in row)


def _pivot_weight(x):
    # exact fields only need a nonzero pivot; floats want the largest one
    if isinstance(x, ComplexRational):
        return float(x.abs2())
    try:
        return abs(float(abs(x)))
    except (OverflowError, TypeError):
        return 1.0 if x else 0.0


def mat_inv(a: Matrix) -> Matrix:
    """Invert by Gauss-Jordan elimination; raises ZeroDivisionError if singular."""
    d = len(a)
    one = None
    for row in a:
        for x in row:
            if x:
                one = x / x
                break
        if one is not None:
            break
    if one is None:
        raise ZeroDivisionError("singular matrix")
    zero = one - one
    aug = [list(row) + [one if i == j else zero for j in range(d)] for i, row in enumerate(a)]
    for col in range(d):
        piv = max(range(col, d), key=lambda r: _pivot_weight(aug[r][col]))
        if not aug[piv][col]:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[d:]) for row in aug)


def nullspace_exact(rows: list) -> list:
    """Nullspace basis of a rational matrix via reduced row echelon form.

    Rows are sequences of Fractions; returns a list of tuple vectors.  The
    basis is the canonical free-variable one, so it is deterministic.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    m = [list(map(Fraction, row)) for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -m[ri][fc]
        basis.append(tuple(v))
    return basis


def nullspace_numeric(rows: list, tol: float = 1e-10) -> list:
    """Numeric nullspace via SVD; tol is relative to the largest singular value."""
    import numpy as np

    a = np.array([[complex(x) for x in row] for row in rows], dtype=complex)
    if a.size == 0:
        return []
    _, s, vh = np.linalg.svd(a)
    cutoff = tol * (s[0] if len(s) else 1.0)
    ncols = a.shape[1]
    basis = []
    for i in range(ncols):
        sv = s[i] if i < len(s) else 0.0
        if sv <= cutoff:
            basis.append(tuple(vh[i].conjugate()))
    return basis
