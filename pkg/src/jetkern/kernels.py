"""Jet kernels for products of Szego-kernel powers on the bidisc and tridisc.

Two independent routes produce the same coefficient tables:

* closed form: each entry of the jet matrix, restricted to the diagonal and
  polarized, is a finite sum of terms ``c * z^p * wbar^q * S(z,w)^r`` with
  ``S(z,w) = (1 - z*wbar)^{-1}``, and expands via the binomial series; and
* brute force: differentiate the product kernel's multi-variable expansion
  termwise and restrict to the diagonal.

The brute-force route never touches the closed form, so it serves as the
oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .linalg import diagonal, mat
from .scalars import ComplexRational, as_rational, pochhammer
from .series import MatrixSeries, scalar_series


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family parameters: domain, exponents, and jet order.

    ``bidisc`` means the kernel (1-z1*w1bar)^(-alpha) (1-z2*w2bar)^(-beta)
    with a jet of order ``jet_order`` + 1 along the second variable;
    ``tridisc`` adds a third factor with exponent ``gamma`` and always uses
    the order-(1,1) jet, so the matrices are 3x3.
    """

    domain: str
    alpha: Fraction
    beta: Fraction
    gamma: Fraction | None = None
    jet_order: int = 1

    def __post_init__(self):
        if self.domain not in ("bidisc", "tridisc"):
            raise ValueError(f"unknown domain {self.domain!r}")
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")
        if self.domain == "tridisc":
            if self.gamma is None:
                raise ValueError("tridisc spec requires gamma")
            object.__setattr__(self, "gamma", as_rational(self.gamma))
            if self.gamma <= 0:
                raise ValueError("gamma must be positive")
        elif self.gamma is not None:
            raise ValueError("gamma only applies to the tridisc")
        if self.jet_order < 0:
            raise ValueError("jet_order must be nonnegative")

    @property
    def dim(self) -> int:
        return 3 if self.domain == "tridisc" else self.jet_order + 1

    def require_bidisc(self):
        if self.domain != "bidisc":
            raise ValueError("operation requires a bidisc spec")

    def require_tridisc(self):
        if self.domain != "tridisc":
            raise ValueError("operation requires a tridisc spec")


def bidisc_spec(alpha, beta, jet_order: int) -> KernelSpec:
    return KernelSpec("bidisc", as_rational(alpha), as_rational(beta), jet_order=jet_order)


def tridisc_spec(alpha, beta, gamma) -> KernelSpec:
    return KernelSpec("tridisc", as_rational(alpha), as_rational(beta), gamma=as_rational(gamma))


# ---------------------------------------------------------------------------
# Szego-term sums: finite sums of c * z^p * wbar^q * S^r
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SzegoTerm:
    coeff: Fraction
    z_power: int
    wbar_power: int
    szego_power: Fraction


class SzegoTermSum:
    """Finite sum of terms c * z^p * wbar^q * S(z,w)^r, combined per (p, q, r)."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        combined: dict = {}
        for t in terms:
            key = (t.z_power, t.wbar_power, as_rational(t.szego_power))
            combined[key] = combined.get(key, Fraction(0)) + as_rational(t.coeff)
        self.terms = tuple(
            SzegoTerm(c, p, q, r)
            for (p, q, r), c in sorted(combined.items())
            if c != 0
        )

    def series_coefficient(self, m: int, p: int) -> Fraction:
        """Coefficient of z^m wbar^p; S^r contributes (r)_k / k! at (k, k)."""
        total = Fraction(0)
        for t in self.terms:
            k = m - t.z_power
            if k >= 0 and k == p - t.wbar_power:
                total += t.coeff * pochhammer(t.szego_power, k) / factorial(k)
        return total

    def to_series(self, trunc: int) -> MatrixSeries:
        coeffs = {}
        for m in range(trunc + 1):
            for p in range(trunc + 1):
                c = self.series_coefficient(m, p)
                if c != 0:
                    coeffs[(m, p)] = c
        return scalar_series(trunc, coeffs)

    def eval_exact(self, z: ComplexRational, w: ComplexRational) -> ComplexRational:
        """Exact evaluation; every Szego exponent must be an integer."""
        s = ComplexRational.from_rational(1) - z * w.conjugate()
        out = ComplexRational.from_rational(0)
        for t in self.terms:
            if t.szego_power.denominator != 1:
                raise ValueError("exact evaluation needs integer Szego exponents")
            val = (
                ComplexRational.from_rational(t.coeff)
                * z ** t.z_power
                * w.conjugate() ** t.wbar_power
                * s ** (-int(t.szego_power))
            )
            out = out + val
        return out

    def eval_numeric(self, z: complex, w: complex) -> complex:
        # 1 - z*wbar has positive real part on the bidisc, so the principal
        # branch of the fractional power is safe
        s = 1 - z * w.conjugate()
        out = 0j
        for t in self.terms:
            out += (
                float(t.coeff)
                * z ** t.z_power
                * w.conjugate() ** t.wbar_power
                * s ** (-float(t.szego_power))
            )
        return out

    def __repr__(self):
        bits = [
            f"{t.coeff}*z^{t.z_power}*wbar^{t.wbar_power}*S^{t.szego_power}"
            for t in self.terms
        ]
        return "SzegoTermSum(" + " + ".join(bits) + ")"


def szego_power_series(r, trunc: int) -> MatrixSeries:
    """Series of S(z,w)^r: coefficient (r)_m / m! on the diagonal (m, m)."""
    if trunc < 0:
        raise ValueError("trunc must be nonnegative")
    r = as_rational(r)
    coeffs = {}
    for m in range(trunc + 1):
        c = pochhammer(r, m) / factorial(m)
        if c != 0:
            coeffs[(m, m)] = c
    return scalar_series(trunc, coeffs)


# ---------------------------------------------------------------------------
# Bidisc jet kernel
# ---------------------------------------------------------------------------


def jet_entry_closed_form(spec: KernelSpec, i: int, j: int) -> SzegoTermSum:
    """Entry (i, j) of the jet kernel on the diagonal, in closed form.

    Row i counts holomorphic derivatives of the second variable, column j
    anti-holomorphic ones.  The entry is

        sum_{l=0}^{min(i,j)} (beta)_i l! C(i,l) C(j,l) (beta+i)_{j-l}
                             z^{j-l} wbar^{i-l} S^{alpha+beta+i+j-l},

    which reproduces the order-2 quotient-module display at n = 1 and the
    diagonal/banded coefficient structure of the low-order tables.
    """
    spec.require_bidisc()
    n = spec.jet_order
    if not (0 <= i <= n and 0 <= j <= n):
        raise IndexError(f"entry ({i},{j}) out of range for jet order {n}")
    alpha, beta = spec.alpha, spec.beta
    terms = []
    for l in range(min(i, j) + 1):
        c = (
            pochhammer(beta, i)
            * factorial(l)
            * comb(i, l)
            * comb(j, l)
            * pochhammer(beta + i, j - l)
        )
        terms.append(SzegoTerm(c, j - l, i - l, alpha + beta + i + j - l))
    return SzegoTermSum(terms)


def jet_kernel_series(spec: KernelSpec, trunc: int) -> MatrixSeries:
    """Coefficient table a[m,p] of the jet kernel, from the closed forms."""
    spec.require_bidisc()
    d = spec.dim
    entries = [[jet_entry_closed_form(spec, i, j) for j in range(d)] for i in range(d)]
    coeffs = {}
    for m in range(trunc + 1):
        for p in range(trunc + 1):
            matrix = tuple(
                tuple(entries[i][j].series_coefficient(m, p) for j in range(d))
                for i in range(d)
            )
            coeffs[(m, p)] = matrix
    return MatrixSeries(d, trunc, coeffs)


def _termwise_derivative(table: dict, idx: int, order: int) -> dict:
    """d^order/dx^order applied termwise to a multi-index monomial table."""
    for _ in range(order):
        out = {}
        for key, c in table.items():
            e = key[idx]
            if e >= 1:
                new = key[:idx] + (e - 1,) + key[idx + 1 :]
                out[new] = out.get(new, Fraction(0)) + c * e
        table = out
    return table


def jet_kernel_series_bruteforce(spec: KernelSpec, trunc: int) -> MatrixSeries:
    """Oracle for jet_kernel_series: raw termwise differentiation.

    Expands (1-z1*w1bar)^-alpha (1-z2*w2bar)^-beta as a 4-index monomial
    table, applies the entry's derivatives termwise, restricts to
    z1 = z2, w1 = w2 and collects the surviving (m, p) coefficients.
    """
    spec.require_bidisc()
    n = spec.jet_order
    d = spec.dim
    alpha, beta = spec.alpha, spec.beta
    # keys are (z1, w1bar, z2, w2bar) exponents
    base = {}
    for k in range(trunc + 1):
        ca = pochhammer(alpha, k) / factorial(k)
        for l in range(trunc + n + 1):
            cb = pochhammer(beta, l) / factorial(l)
            base[(k, k, l, l)] = ca * cb
    tables = {}
    for i in range(d):
        di = _termwise_derivative(base, 2, i)
        for j in range(d):
            tables[(i, j)] = _termwise_derivative(di, 3, j)
    coeffs = {}
    for m in range(trunc + 1):
        for p in range(trunc + 1):
            rows = []
            for i in range(d):
                row = []
                for j in range(d):
                    total = Fraction(0)
                    for (a, b, c, e), coeff in tables[(i, j)].items():
                        if a + c == m and b + e == p:
                            total += coeff
                    row.append(total)
                rows.append(tuple(row))
            coeffs[(m, p)] = tuple(rows)
    return MatrixSeries(d, trunc, coeffs)


# ---------------------------------------------------------------------------
# Tridisc order-(1,1) jet
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScaledKernelForm:
    """A kernel written as (polynomial matrix in z, wbar) * S^exponent.

    Keeping the scalar Szego prefactor separate lets the polynomial part stay
    exact even when the exponent is not an integer.
    """

    poly: MatrixSeries
    szego_exponent: Fraction

    def poly_at(self, z: ComplexRational, w: ComplexRational):
        """Exact polynomial part at a point (ComplexRational matrix)."""
        wbar = w.conjugate()
        d = self.poly.dim
        acc = [[ComplexRational.from_rational(0)] * d for _ in range(d)]
        for (m, p), matrix in self.poly.items():
            factor = z ** m * wbar ** p
            for i in range(d):
                for j in range(d):
                    acc[i][j] = acc[i][j] + ComplexRational.from_rational(matrix[i][j]) * factor
        return mat(acc)

    def series(self, trunc: int) -> MatrixSeries:
        poly = MatrixSeries(self.poly.dim, trunc, dict(self.poly.items()))
        return poly.mul_scalar_series(szego_power_series(self.szego_exponent, trunc))

    def eval_numeric(self, z: complex, w: complex):
        s = 1 - z * w.conjugate()
        pref = s ** (-float(self.szego_exponent))
        vals = self.poly.evaluate(z, w.conjugate())
        return [[x * pref for x in row] for row in vals]


def tridisc_jet_closed_form(spec: KernelSpec) -> ScaledKernelForm:
    """Closed form of the order-(1,1) tridisc jet kernel.

    The polynomial part is

        [[(1-x)^2,          beta*z*(1-x),      gamma*z*(1-x)],
         [beta*wbar*(1-x),  beta*(1+beta*x),   beta*gamma*x ],
         [gamma*wbar*(1-x), beta*gamma*x,      gamma*(1+gamma*x)]]

    with x = z*wbar, times the prefactor S^(alpha+beta+gamma+2).
    """
    spec.require_tridisc()
    b, g = spec.beta, spec.gamma
    zero = Fraction(0)

    def entry_table(pairs):
        return dict(pairs)

    tables = [
        [
            entry_table({(0, 0): Fraction(1), (1, 1): Fraction(-2), (2, 2): Fraction(1)}),
            entry_table({(1, 0): b, (2, 1): -b}),
            entry_table({(1, 0): g, (2, 1): -g}),
        ],
        [
            entry_table({(0, 1): b, (1, 2): -b}),
            entry_table({(0, 0): b, (1, 1): b * b}),
            entry_table({(1, 1): b * g}),
        ],
        [
            entry_table({(0, 1): g, (1, 2): -g}),
            entry_table({(1, 1): b * g}),
            entry_table({(0, 0): g, (1, 1): g * g}),
        ],
    ]
    coeffs = {}
    for m in range(3):
        for p in range(3):
            matrix = tuple(
                tuple(tables[i][j].get((m, p), zero) for j in range(3)) for i in range(3)
            )
            coeffs[(m, p)] = matrix
    poly = MatrixSeries(3, 2, coeffs)
    return ScaledKernelForm(poly, spec.alpha + spec.beta + spec.gamma + 2)


def tridisc_jet_series_bruteforce(spec: KernelSpec, trunc: int) -> MatrixSeries:
    """Oracle for the tridisc closed form, by termwise differentiation.

    Entry (i, j) takes one holomorphic derivative in variable i+1 (for
    i >= 1) and one anti-holomorphic derivative in variable j+1 (for j >= 1),
    then everything is restricted to the full diagonal.
    """
    spec.require_tridisc()
    alpha, beta, gamma = spec.alpha, spec.beta, spec.gamma
    base = {}
    for k in range(trunc + 1):
        ca = pochhammer(alpha, k) / factorial(k)
        for l in range(trunc + 2):
            cb = pochhammer(beta, l) / factorial(l)
            for q in range(trunc + 2):
                cg = pochhammer(gamma, q) / factorial(q)
                base[(k, k, l, l, q, q)] = ca * cb * cg
    # index layout: (z1, w1bar, z2, w2bar, z3, w3bar)
    dz_index = {1: 2, 2: 4}
    dw_index = {1: 3, 2: 5}
    coeffs = {}
    tables = {}
    for i in range(3):
        ti = base if i == 0 else _termwise_derivative(base, dz_index[i], 1)
        for j in range(3):
            tables[(i, j)] = ti if j == 0 else _termwise_derivative(ti, dw_index[j], 1)
    for m in range(trunc + 1):
        for p in range(trunc + 1):
            rows = []
            for i in range(3):
                row = []
                for j in range(3):
                    total = Fraction(0)
                    for key, coeff in tables[(i, j)].items():
                        if key[0] + key[2] + key[4] == m and key[1] + key[3] + key[5] == p:
                            total += coeff
                    row.append(total)
                rows.append(tuple(row))
            coeffs[(m, p)] = tuple(rows)
    return MatrixSeries(3, trunc, coeffs)


def tridisc_value_at_zero(spec: KernelSpec):
    """G(0,0) = diag(1, beta, gamma)."""
    spec.require_tridisc()
    return diagonal([Fraction(1), spec.beta, spec.gamma])
