"""Normalized-kernel coefficient machinery, the commutant solver, and the
irreducibility verdict.

Normalizing a kernel K with invertible diagonal constant term D = a[0,0]
produces att[m,p] = D^{-1/2} N[m,p] D^{-1/2}, where the symmetrized
coefficients

    N[k,l] = sum_{s<=k, t<=l} c[s] D^{-1} a[k-s, l-t] D^{-1} c[t]^T

stay rational: every square root cancels in the symmetrization.  Here
c[k] = D b[k,0] D with b the coefficients of K^{-1}, equivalently the heads
of the one-variable inverse of K(z, 0).  All irreducibility logic therefore
runs bit-exactly on the N table; att itself is materialized only as floats
for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, sqrt

from .kernels import KernelSpec, jet_kernel_series
from .linalg import (
    Matrix,
    diagonal,
    identity,
    is_zero_matrix,
    mat,
    mat_add,
    mat_equal,
    mat_inv,
    mat_mul,
    mat_neg,
    mat_sub,
    mat_transpose,
    nullspace_exact,
    nullspace_numeric,
    zero_matrix,
)
from .scalars import pochhammer
from .series import MatrixSeries


def diagonal_a00(spec: KernelSpec):
    """Constant coefficient of the bidisc jet kernel: diag(k! (beta)_k)."""
    spec.require_bidisc()
    return diagonal([factorial(k) * pochhammer(spec.beta, k) for k in range(spec.dim)])


def inverse_head_coefficients(series: MatrixSeries, upto: int) -> list:
    """c[0..upto] with c[0] = a00 and c[m] = -sum_{s<m} c[s] a00^{-1} a[m-s,0].

    These are the z^m heads of the inverse kernel, conjugated so that they
    stay rational; c[m] equals a00 * b[m,0] * a00 for the full inverse series.
    """
    a00 = series.coeff(0, 0)
    a00_inv = mat_inv(a00)
    heads = [a00]
    for m in range(1, upto + 1):
        acc = zero_matrix(series.dim, series.zero)
        for s in range(m):
            acc = mat_add(acc, mat_mul(mat_mul(heads[s], a00_inv), series.coeff(m - s, 0)))
        heads.append(mat_neg(acc))
    return heads


def symmetrized_normalized_coeff(spec: KernelSpec, k: int, l: int, trunc: int | None = None):
    """N[k,l] of the bidisc jet kernel, exact over rationals."""
    spec.require_bidisc()
    if trunc is None:
        trunc = max(k, l)
    if trunc < max(k, l):
        raise ValueError("trunc must cover the requested coefficient")
    series = jet_kernel_series(spec, trunc)
    return symmetrized_coeff_from_series(series, k, l)


def symmetrized_coeff_from_series(series: MatrixSeries, k: int, l: int):
    a00_inv = mat_inv(series.coeff(0, 0))
    heads = inverse_head_coefficients(series, max(k, l))
    acc = zero_matrix(series.dim, series.zero)
    for s in range(k + 1):
        for t in range(l + 1):
            term = mat_mul(
                mat_mul(mat_mul(mat_mul(heads[s], a00_inv), series.coeff(k - s, l - t)), a00_inv),
                mat_transpose(heads[t]),
            )
            acc = mat_add(acc, term)
    return acc


def symmetrized_normalized_series(series: MatrixSeries) -> MatrixSeries:
    """Whole N table at once: a00 * K(z,0)^{-1} * K * K(0,w)^{-1} * a00."""
    trunc = series.trunc
    d = series.dim
    a00 = series.coeff(0, 0)
    z_part = MatrixSeries(
        d, trunc, {(m, 0): series.coeff(m, 0) for m in range(trunc + 1)}, zero=series.zero
    )
    w_part = MatrixSeries(
        d, trunc, {(0, p): series.coeff(0, p) for p in range(trunc + 1)}, zero=series.zero
    )
    left = MatrixSeries(d, trunc, {(0, 0): a00}, zero=series.zero).mul(z_part.invert())
    right = w_part.invert().mul(MatrixSeries(d, trunc, {(0, 0): a00}, zero=series.zero))
    return left.mul(series).mul(right)


@dataclass(frozen=True)
class NormalizedCoeffs:
    """Symmetrized normalized coefficients of a bidisc jet kernel."""

    spec: KernelSpec
    trunc: int
    d_diagonal: tuple
    table: dict  # (k, l) -> rational matrix N[k,l]

    def coeff(self, k: int, l: int):
        got = self.table.get((k, l))
        if got is None:
            raise KeyError(f"coefficient ({k},{l}) beyond truncation {self.trunc}")
        return got

    def att_numeric(self, k: int, l: int):
        """Float att[k,l] = D^{-1/2} N[k,l] D^{-1/2}; square roots enter here."""
        n_kl = self.coeff(k, l)
        scale = [1.0 / sqrt(float(x)) for x in self.d_diagonal]
        d = len(scale)
        return tuple(
            tuple(scale[i] * float(n_kl[i][j]) * scale[j] for j in range(d)) for i in range(d)
        )


def normalized_coefficients(spec: KernelSpec, trunc: int) -> NormalizedCoeffs:
    spec.require_bidisc()
    series = jet_kernel_series(spec, trunc)
    n_series = symmetrized_normalized_series(series)
    table = {
        (k, l): n_series.coeff(k, l) for k in range(trunc + 1) for l in range(trunc + 1)
    }
    d_diag = tuple(series.coeff(0, 0)[i][i] for i in range(series.dim))
    return NormalizedCoeffs(spec, trunc, d_diag, table)


# ---------------------------------------------------------------------------
# Closed forms of the low-order coefficients
# ---------------------------------------------------------------------------


def closed_form_coefficient(name: str, spec: KernelSpec, index: int | None = None):
    """Closed-form coefficient matrices of the bidisc jet kernel.

    a00        diag(k! (beta)_k)
    am0[m]     band (r, r+m): (m+r)!/m! (beta)_{m+r}
    am1[m]     a[m+1,1], band (r, r+m):
               (m+r)!/m! (beta)_{m+r} (alpha + (1 + r/(m+1)) (beta+m+r))
    ck0[k]     band (r, r+k): (-1)^k (r+k)!/k! (beta)_{r+k}
    Ak1[k]     N[k,1] for 2 <= k <= n+1: single entry
               (-1)^(k+1) (n+1)! (beta)_{n+1} / k!  at (n-k+1, n)

    Unspecified entries are zero.
    """
    spec.require_bidisc()
    n = spec.jet_order
    d = spec.dim
    alpha, beta = spec.alpha, spec.beta
    rows = [[Fraction(0)] * d for _ in range(d)]

    if name == "a00":
        if index is not None:
            raise ValueError("a00 takes no index")
        for k in range(d):
            rows[k][k] = factorial(k) * pochhammer(beta, k)
        return mat(rows)

    if index is None:
        raise ValueError(f"{name} requires an index")

    if name == "am0":
        m = index
        if not 0 <= m <= n:
            raise IndexError(f"m={m} out of range for jet order {n}")
        for r in range(n - m + 1):
            rows[r][r + m] = Fraction(factorial(m + r), factorial(m)) * pochhammer(beta, m + r)
        return mat(rows)

    if name == "am1":
        m = index
        if not 0 <= m <= n:
            raise IndexError(f"m={m} out of range for jet order {n}")
        for r in range(n - m + 1):
            rows[r][r + m] = (
                Fraction(factorial(m + r), factorial(m))
                * pochhammer(beta, m + r)
                * (alpha + (1 + Fraction(r, m + 1)) * (beta + m + r))
            )
        return mat(rows)

    if name == "ck0":
        k = index
        if not 0 <= k <= n:
            raise IndexError(f"k={k} out of range for jet order {n}")
        for r in range(n - k + 1):
            rows[r][r + k] = (
                Fraction((-1) ** k)
                * Fraction(factorial(r + k), factorial(k))
                * pochhammer(beta, r + k)
            )
        return mat(rows)

    if name == "Ak1":
        k = index
        if not 2 <= k <= n + 1:
            raise IndexError(f"k={k} out of range (need 2 <= k <= n+1)")
        rows[n - k + 1][n] = (
            Fraction((-1) ** (k + 1)) * factorial(n + 1) * pochhammer(beta, n + 1) / factorial(k)
        )
        return mat(rows)

    raise ValueError(f"unknown closed form {name!r}")


def verify_inverse_relation(spec: KernelSpec, trunc: int) -> bool:
    """Check sum_{s=0}^m c[s] D^{-1} a[m-s, 0] = 0 for 1 <= m <= trunc,
    using only the closed-form c and a matrices."""
    spec.require_bidisc()
    n = spec.jet_order
    d = spec.dim
    a00_inv = mat_inv(closed_form_coefficient("a00", spec))
    zero = zero_matrix(d)

    def a_m0(m):
        return closed_form_coefficient("am0", spec, m) if m <= n else zero

    def c_s0(s):
        return closed_form_coefficient("ck0", spec, s) if s <= n else zero

    for m in range(1, trunc + 1):
        acc = zero
        for s in range(m + 1):
            acc = mat_add(acc, mat_mul(mat_mul(c_s0(s), a00_inv), a_m0(m - s)))
        if not is_zero_matrix(acc):
            return False
    return True


# ---------------------------------------------------------------------------
# Commutant computation
# ---------------------------------------------------------------------------


@dataclass
class CommutantReport:
    """Basis of {X : XA = AX for all inputs} with an irreducibility verdict."""

    inputs: list
    dimension: int
    basis: list
    verdict: str  # "irreducible" | "reducible" | "inconclusive"
    arithmetic: str  # "exact" | "numeric"
    tolerance: float | None = None
    matrix_dim: int = 0
    notes: list = field(default_factory=list)
    offending: Matrix | None = None


def commutant_basis(
    mats: list,
    arithmetic: str = "exact",
    tol: float = 1e-10,
    dim: int | None = None,
) -> CommutantReport:
    """Solve XA - AX = 0 for all A as a d^2-unknown homogeneous system.

    Exact mode runs rational Gaussian elimination; numeric mode uses an SVD
    with the declared relative tolerance.  An empty input family on d > 1
    has the full matrix algebra as its commutant and reports "reducible".
    """
    mats = [mat(a) for a in mats]
    if mats:
        d = len(mats[0])
        for a in mats:
            if len(a) != d or any(len(row) != d for row in a):
                raise ValueError("all input matrices must share one square size")
    elif dim is not None:
        d = dim
    else:
        raise ValueError("empty input needs an explicit dim")

    if not mats:
        one = Fraction(1) if arithmetic == "exact" else 1.0
        basis = [
            mat(
                [
                    [one if (i, j) == (r, c) else one - one for j in range(d)]
                    for i in range(d)
                ]
            )
            for r in range(d)
            for c in range(d)
        ]
        verdict = "irreducible" if d == 1 else "reducible"
        return CommutantReport(
            [], len(basis), basis, verdict, arithmetic,
            tol if arithmetic == "numeric" else None, d,
        )

    rows = []
    for a in mats:
        for i in range(d):
            for j in range(d):
                row = [Fraction(0) if arithmetic == "exact" else 0j] * (d * d)
                # (XA)_{ij} = sum_k X_{ik} A_{kj};  (AX)_{ij} = sum_k A_{ik} X_{kj}
                for k in range(d):
                    row[i * d + k] += a[k][j]
                    row[k * d + j] -= a[i][k]
                rows.append(row)

    if arithmetic == "exact":
        vecs = nullspace_exact(rows)
        basis = [
            tuple(tuple(v[i * d + j] for j in range(d)) for i in range(d)) for v in vecs
        ]
        for b in basis:
            for a in mats:
                if not mat_equal(mat_mul(b, a), mat_mul(a, b)):
                    raise AssertionError("exact commutant basis failed residual check")
        report_tol = None
    elif arithmetic == "numeric":
        vecs = nullspace_numeric(rows, tol=tol)
        basis = [
            tuple(tuple(v[i * d + j] for j in range(d)) for i in range(d)) for v in vecs
        ]
        report_tol = tol
    else:
        raise ValueError(f"unknown arithmetic mode {arithmetic!r}")

    verdict = "irreducible" if len(basis) == 1 else "reducible"
    return CommutantReport(mats, len(basis), basis, verdict, arithmetic, report_tol, d)


def _single_entry_position(matrix) -> tuple | None:
    """(i, j) of the unique nonzero entry, or None if not exactly one."""
    pos = None
    for i, row in enumerate(matrix):
        for j, x in enumerate(row):
            if x:
                if pos is not None:
                    return None
                pos = (i, j)
    return pos


def irreducibility_verdict(spec: KernelSpec) -> CommutantReport:
    """Decide irreducibility of the bidisc jet multiplication operator.

    Computes N[k,1] for 2 <= k <= n+1, checks the single-entry pattern at
    (n-k+1, n) with the closed-form value, and then runs the exact commutant
    of the corresponding elementary matrices together with their transposes.
    Replacing att[k,1] by the elementary matrix is valid because
    D^{-1/2} (lambda E) D^{-1/2} is a nonzero scalar multiple of E, and
    commutants are insensitive to nonzero scalings.
    """
    spec.require_bidisc()
    n = spec.jet_order
    if n < 1:
        raise ValueError("irreducibility verdict needs jet order >= 1")
    d = spec.dim
    series = jet_kernel_series(spec, n + 1)
    family = []
    for k in range(2, n + 2):
        n_k1 = symmetrized_coeff_from_series(series, k, 1)
        pos = _single_entry_position(n_k1)
        expected = closed_form_coefficient("Ak1", spec, k)
        if pos != (n - k + 1, n) or not mat_equal(n_k1, expected):
            return CommutantReport(
                [], 0, [], "inconclusive", "exact", None, d,
                notes=[f"N[{k},1] is not the expected single-entry matrix"],
                offending=n_k1,
            )
        elem = [[Fraction(0)] * d for _ in range(d)]
        elem[pos[0]][pos[1]] = Fraction(1)
        family.append(mat(elem))
        family.append(mat_transpose(mat(elem)))
    report = commutant_basis(family, arithmetic="exact")
    report.notes.append(
        "inputs are elementary stand-ins for att[k,1], att[1,k], 2 <= k <= n+1"
    )
    return report


# ---------------------------------------------------------------------------
# Reducing projections
# ---------------------------------------------------------------------------

_PRIME_WEIGHTS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def _symmetric_commutant_basis(report: CommutantReport) -> list:
    """Basis of the symmetric (self-adjoint, real case) part of the commutant."""
    d = report.matrix_dim
    rows = []
    for i in range(d):
        for j in range(d):
            rows.append([b[i][j] - b[j][i] for b in report.basis])
    combos = nullspace_exact(rows)
    out = []
    for combo in combos:
        acc = zero_matrix(d)
        for c, b in zip(combo, report.basis):
            if c:
                acc = mat_add(acc, mat([[c * x for x in row] for row in b]))
        if not is_zero_matrix(acc):
            out.append(acc)
    return out


def _is_singular(s: Matrix) -> bool:
    try:
        mat_inv(s)
        return False
    except ZeroDivisionError:
        return True


def _rational_eigenvalues(s: Matrix) -> list | None:
    """Distinct rational eigenvalues of an exact matrix, or None.

    Guesses numerically, then certifies each guess exactly: lambda counts
    only if s - lambda*I is singular over the rationals.
    """
    import numpy as np

    d = len(s)
    approx = np.linalg.eigvals(np.array([[float(x) for x in row] for row in s]))
    found: list = []
    for v in approx:
        if abs(v.imag) > 1e-8:
            return None
        certified = None
        for max_den in (1, 10, 1000, 10 ** 6, 10 ** 12):
            cand = Fraction(v.real).limit_denominator(max_den)
            if cand in found:
                certified = cand
                break
            if _is_singular(mat_sub(s, diagonal([cand] * d))):
                certified = cand
                break
        if certified is None:
            return None
        if certified not in found:
            found.append(certified)
    return found


def reducing_projections(report: CommutantReport) -> list:
    """Spectral projections of a generic self-adjoint commutant element.

    Empty when the commutant is trivial (dimension 1) or contains no
    nontrivial self-adjoint element.  The generic element uses a fixed prime
    weight sequence; an eigenvalue collision triggers a retry with shifted
    weights.
    """
    if report.dimension <= 1:
        return []
    if report.arithmetic == "exact":
        sym_basis = _symmetric_commutant_basis(report)
        if len(sym_basis) <= 1:
            return []
        d = report.matrix_dim
        for offset in range(4):
            weights = _PRIME_WEIGHTS[offset : offset + len(sym_basis)]
            s = zero_matrix(d)
            for w, b in zip(weights, sym_basis):
                s = mat_add(s, mat([[w * x for x in row] for row in b]))
            eigvals = _rational_eigenvalues(s)
            if not eigvals or len(eigvals) < 2:
                continue
            projections = []
            ok = True
            for lam in eigvals:
                proj = identity(d)
                for mu in eigvals:
                    if mu == lam:
                        continue
                    proj = mat_mul(proj, mat_sub(s, diagonal([mu] * d)))
                    proj = mat([[x / (lam - mu) for x in row] for row in proj])
                if not mat_equal(mat_mul(proj, proj), proj):
                    ok = False
                    break
                projections.append(proj)
            if ok and mat_equal(_mat_sum(projections), identity(d)):
                return projections
        return []
    # numeric mode
    import numpy as np

    d = report.matrix_dim
    basis = [np.array([[complex(x) for x in row] for row in b]) for b in report.basis]
    sym = [0.5 * (b + b.conj().T) for b in basis]
    s = sum(w * b for w, b in zip(_PRIME_WEIGHTS, sym))
    if np.max(np.abs(s.imag)) < 1e-12:
        s = s.real
    vals, vecs = np.linalg.eigh(s)
    tol = (report.tolerance or 1e-10) * max(1.0, np.max(np.abs(vals)))
    groups: list[list[int]] = []
    for idx, v in enumerate(vals):
        if groups and abs(v - vals[groups[-1][-1]]) <= tol:
            groups[-1].append(idx)
        else:
            groups.append([idx])
    if len(groups) < 2:
        return []
    projections = []
    for grp in groups:
        v = vecs[:, grp]
        projections.append(tuple(map(tuple, v @ v.conj().T)))
    return projections


def _mat_sum(mats: list) -> Matrix:
    acc = mats[0]
    for m in mats[1:]:
        acc = mat_add(acc, m)
    return acc
