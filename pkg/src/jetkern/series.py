"""Truncated bivariate power series sum_{m,p} a[m,p] z^m wbar^p with
square-matrix coefficients.

The coefficient table is dense in principle but stored sparsely; absent
entries read as the zero matrix.  Multiplication is the Cauchy product and
inversion is the usual constant-term recursion.  The truncation order of a
product is the min of the operand truncations: every coefficient up to the
shared truncation is unaffected by the dropped tails.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import (
    Matrix,
    identity,
    is_zero_matrix,
    mat,
    mat_add,
    mat_equal,
    mat_inv,
    mat_mul,
    mat_neg,
    mat_scale,
    mat_sub,
    mat_transpose,
    zero_matrix,
)


class MatrixSeries:
    __slots__ = ("dim", "trunc", "zero", "_coeffs")

    def __init__(self, dim: int, trunc: int, coeffs=None, zero=Fraction(0)):
        if dim < 1:
            raise ValueError("dim must be positive")
        if trunc < 0:
            raise ValueError("trunc must be nonnegative")
        self.dim = dim
        self.trunc = trunc
        self.zero = zero
        table = {}
        if coeffs:
            for (m, p), matrix in coeffs.items():
                if m < 0 or p < 0 or m > trunc or p > trunc:
                    continue
                matrix = mat(matrix)
                if len(matrix) != dim or any(len(r) != dim for r in matrix):
                    raise ValueError(f"coefficient ({m},{p}) is not {dim}x{dim}")
                if not is_zero_matrix(matrix):
                    table[(m, p)] = matrix
        self._coeffs = table

    # -- basic access -------------------------------------------------------

    @property
    def one(self):
        return self.zero + 1

    def coeff(self, m: int, p: int) -> Matrix:
        return self._coeffs.get((m, p), zero_matrix(self.dim, self.zero))

    def items(self):
        return self._coeffs.items()

    def entry_coeff(self, m: int, p: int, i: int, j: int):
        got = self._coeffs.get((m, p))
        return self.zero if got is None else got[i][j]

    @classmethod
    def identity_series(cls, dim: int, trunc: int, zero=Fraction(0)) -> "MatrixSeries":
        one = zero + 1
        return cls(dim, trunc, {(0, 0): identity(dim, one)}, zero=zero)

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "MatrixSeries"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def add(self, other: "MatrixSeries") -> "MatrixSeries":
        self._check_compatible(other)
        trunc = min(self.trunc, other.trunc)
        out = {}
        for key in set(self._coeffs) | set(other._coeffs):
            m, p = key
            if m <= trunc and p <= trunc:
                out[key] = mat_add(self.coeff(m, p), other.coeff(m, p))
        return MatrixSeries(self.dim, trunc, out, zero=self.zero)

    def sub(self, other: "MatrixSeries") -> "MatrixSeries":
        self._check_compatible(other)
        trunc = min(self.trunc, other.trunc)
        out = {}
        for key in set(self._coeffs) | set(other._coeffs):
            m, p = key
            if m <= trunc and p <= trunc:
                out[key] = mat_sub(self.coeff(m, p), other.coeff(m, p))
        return MatrixSeries(self.dim, trunc, out, zero=self.zero)

    def scale(self, c) -> "MatrixSeries":
        return MatrixSeries(
            self.dim,
            self.trunc,
            {key: mat_scale(c, matrix) for key, matrix in self._coeffs.items()},
            zero=self.zero,
        )

    def mul(self, other: "MatrixSeries") -> "MatrixSeries":
        self._check_compatible(other)
        trunc = min(self.trunc, other.trunc)
        out = {}
        for (s, t), a_st in self._coeffs.items():
            if s > trunc or t > trunc:
                continue
            for (u, v), b_uv in other._coeffs.items():
                m, p = s + u, t + v
                if m > trunc or p > trunc:
                    continue
                term = mat_mul(a_st, b_uv)
                key = (m, p)
                out[key] = mat_add(out[key], term) if key in out else term
        return MatrixSeries(self.dim, trunc, out, zero=self.zero)

    def __mul__(self, other):
        if isinstance(other, MatrixSeries):
            return self.mul(other)
        return NotImplemented

    def mul_scalar_series(self, scalar: "MatrixSeries") -> "MatrixSeries":
        """Multiply by a dim-1 series, scaling every coefficient matrix."""
        if scalar.dim != 1:
            raise ValueError("scalar series must have dim 1")
        trunc = min(self.trunc, scalar.trunc)
        out = {}
        for (s, t), a_st in self._coeffs.items():
            for (u, v), c_uv in scalar._coeffs.items():
                m, p = s + u, t + v
                if m > trunc or p > trunc:
                    continue
                term = mat_scale(c_uv[0][0], a_st)
                key = (m, p)
                out[key] = mat_add(out[key], term) if key in out else term
        return MatrixSeries(self.dim, trunc, out, zero=self.zero)

    def invert(self) -> "MatrixSeries":
        """Multiplicative inverse; requires an invertible constant term.

        B(0,0) = A(0,0)^{-1} and
        B(m,p) = -A(0,0)^{-1} * sum_{(s,t) != (0,0)} A(s,t) B(m-s,p-t).
        """
        a00 = self.coeff(0, 0)
        try:
            a00_inv = mat_inv(a00)
        except ZeroDivisionError as exc:
            raise ZeroDivisionError("series has singular constant term") from exc
        trunc = self.trunc
        out = {(0, 0): a00_inv}
        for m in range(trunc + 1):
            for p in range(trunc + 1):
                if (m, p) == (0, 0):
                    continue
                acc = None
                for (s, t), a_st in self._coeffs.items():
                    if (s, t) == (0, 0) or s > m or t > p:
                        continue
                    b = out.get((m - s, p - t))
                    if b is None:
                        continue
                    term = mat_mul(a_st, b)
                    acc = term if acc is None else mat_add(acc, term)
                if acc is not None:
                    val = mat_neg(mat_mul(a00_inv, acc))
                    if not is_zero_matrix(val):
                        out[(m, p)] = val
        return MatrixSeries(self.dim, trunc, out, zero=self.zero)

    # -- calculus on (z, zbar) readings ------------------------------------

    def dz(self) -> "MatrixSeries":
        """Termwise d/dz; the result is reliable one order lower."""
        trunc = self.trunc - 1
        out = {}
        for (m, p), matrix in self._coeffs.items():
            if m >= 1 and m - 1 <= trunc and p <= trunc:
                out[(m - 1, p)] = mat_scale(self.one * m, matrix)
        return MatrixSeries(self.dim, max(trunc, 0), out, zero=self.zero)

    def dwbar(self) -> "MatrixSeries":
        """Termwise d/dwbar (read as d/dzbar on the diagonal)."""
        trunc = self.trunc - 1
        out = {}
        for (m, p), matrix in self._coeffs.items():
            if p >= 1 and p - 1 <= trunc and m <= trunc:
                out[(m, p - 1)] = mat_scale(self.one * p, matrix)
        return MatrixSeries(self.dim, max(trunc, 0), out, zero=self.zero)

    # -- conversions and comparisons ----------------------------------------

    def map_entries(self, fn, zero=None) -> "MatrixSeries":
        zero = self.zero if zero is None else zero
        return MatrixSeries(
            self.dim,
            self.trunc,
            {
                key: tuple(tuple(fn(x) for x in row) for row in matrix)
                for key, matrix in self._coeffs.items()
            },
            zero=zero,
        )

    def to_float(self) -> "MatrixSeries":
        return self.map_entries(float, zero=0.0)

    def to_complex(self) -> "MatrixSeries":
        return self.map_entries(complex, zero=0j)

    def transpose_entries(self) -> "MatrixSeries":
        return MatrixSeries(
            self.dim,
            self.trunc,
            {key: mat_transpose(matrix) for key, matrix in self._coeffs.items()},
            zero=self.zero,
        )

    def truncated(self, trunc: int) -> "MatrixSeries":
        return MatrixSeries(self.dim, min(trunc, self.trunc), dict(self._coeffs), zero=self.zero)

    def evaluate(self, z: complex, wbar: complex) -> list:
        """Numeric evaluation sum a[m,p] z^m wbar^p as nested complex lists."""
        acc = [[0j] * self.dim for _ in range(self.dim)]
        for (m, p), matrix in self._coeffs.items():
            factor = (z ** m) * (wbar ** p)
            for i in range(self.dim):
                for j in range(self.dim):
                    acc[i][j] += complex(matrix[i][j]) * factor
        return acc

    def first_mismatch(self, other: "MatrixSeries", trunc: int | None = None):
        """First differing coefficient entry, or None when equal.

        Returns (m, p, i, j, self_value, other_value) ordered by (m+p, m, i, j),
        which keeps counterexample reports deterministic.
        """
        self._check_compatible(other)
        if trunc is None:
            trunc = min(self.trunc, other.trunc)
        keys = {k for k in set(self._coeffs) | set(other._coeffs) if k[0] <= trunc and k[1] <= trunc}
        for m, p in sorted(keys, key=lambda k: (k[0] + k[1], k[0], k[1])):
            a, b = self.coeff(m, p), other.coeff(m, p)
            for i in range(self.dim):
                for j in range(self.dim):
                    if a[i][j] != b[i][j]:
                        return (m, p, i, j, a[i][j], b[i][j])
        return None

    def equals(self, other: "MatrixSeries", trunc: int | None = None) -> bool:
        return self.first_mismatch(other, trunc=trunc) is None

    def __eq__(self, other):
        if not isinstance(other, MatrixSeries):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.trunc == other.trunc
            and self.equals(other)
        )

    def __repr__(self):
        return f"MatrixSeries(dim={self.dim}, trunc={self.trunc}, nonzero={len(self._coeffs)})"

    def to_json_dict(self, scalar_formatter=str) -> dict:
        entries = []
        for (m, p) in sorted(self._coeffs, key=lambda k: (k[0] + k[1], k[0], k[1])):
            matrix = self._coeffs[(m, p)]
            entries.append(
                {
                    "m": m,
                    "p": p,
                    "matrix": [scalar_formatter(x) for row in matrix for x in row],
                }
            )
        return {"dim": self.dim, "trunc": self.trunc, "coeffs": entries}


def scalar_series(trunc: int, coeffs: dict, zero=Fraction(0)) -> MatrixSeries:
    """Build a dim-1 series from a {(m, p): scalar} table."""
    return MatrixSeries(1, trunc, {key: ((c,),) for key, c in coeffs.items()}, zero=zero)


def series_multiply(a: MatrixSeries, b: MatrixSeries) -> MatrixSeries:
    return a.mul(b)


def series_invert(a: MatrixSeries) -> MatrixSeries:
    return a.invert()
