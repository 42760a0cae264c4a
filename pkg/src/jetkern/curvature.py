"""Curvature of the jet-kernel metric: exact value at the origin, series
evaluation on the disc, the order-2 closed form, and the unitary-equivalence
invariant.

The metric is h(z) = K(z,z)^t for the jet kernel K; its curvature is
k(z) = dbar(h^{-1} dh).  At z = 0 the value equals the zz-bar coefficient of
the normalized kernel (transposed), which is diagonal:

    diag(alpha, ..., alpha, alpha + (n+1)(beta + n)).

Away from the origin the series route works in floating point; the order-2
closed form

    [[alpha, -2 beta (beta+1) (1-|z|^2)^{-1} zbar],
     [0,     alpha + 2 beta + 2]] * (1-|z|^2)^{-2}

is the independent oracle for it.  The value at 0 is frame-independent here
because the normalizing change of frame is diagonal at the origin, so the
raw jet metric and the normalized one give the same matrix there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .kernels import KernelSpec, jet_kernel_series
from .linalg import is_zero_matrix, mat_sub
from .normalize import symmetrized_coeff_from_series
from .scalars import pochhammer
from .series import MatrixSeries


def curvature_at_zero(spec: KernelSpec):
    """Exact diagonal of the curvature at 0, as a tuple of rationals.

    Computes N[1,1] from the pipeline, verifies it is diagonal, and divides
    entrywise by D (diagonal conjugation by D^{+-1/2} acts as division on the
    diagonal, so no square roots appear).
    """
    spec.require_bidisc()
    series = jet_kernel_series(spec, 1)
    n_11 = symmetrized_coeff_from_series(series, 1, 1)
    d = spec.dim
    off = [
        (i, j) for i in range(d) for j in range(d) if i != j and n_11[i][j] != 0
    ]
    if off:
        raise ArithmeticError(f"N[1,1] is not diagonal; offending entries {off}: {n_11}")
    d_diag = [factorial(k) * pochhammer(spec.beta, k) for k in range(d)]
    return tuple(n_11[i][i] / d_diag[i] for i in range(d))


def invariant_pair(spec: KernelSpec) -> tuple:
    """(alpha, alpha + (n+1)(beta+n)): the complete invariant at fixed n."""
    spec.require_bidisc()
    n = spec.jet_order
    return (spec.alpha, spec.alpha + (n + 1) * (spec.beta + n))


def equivalence_test(spec_a: KernelSpec, spec_b: KernelSpec) -> bool:
    """Unitary equivalence of two bidisc jet operators at the same jet order."""
    spec_a.require_bidisc()
    spec_b.require_bidisc()
    if spec_a.jet_order != spec_b.jet_order:
        raise ValueError("jet orders differ; the operators act on different ranks")
    return invariant_pair(spec_a) == invariant_pair(spec_b)


@dataclass
class CurvatureReport:
    at_zero: tuple
    invariant_pair: tuple
    samples: list  # (z, matrix) pairs with float matrices


@dataclass
class CurvatureSeries:
    """Truncated series of dbar(h^{-1} dh) in (z, zbar), float coefficients."""

    spec: KernelSpec
    trunc: int
    series: MatrixSeries
    radius: float = 0.5

    def evaluate_at(self, z: complex):
        z = complex(z)
        if abs(z) > self.radius:
            raise ValueError(
                f"|z| = {abs(z):.3f} exceeds the evaluation radius {self.radius}; "
                "raise the truncation order and radius explicitly if needed"
            )
        return self.series.evaluate(z, z.conjugate())

    def tail_estimate(self, z: complex) -> float:
        """Magnitude of the last retained total-degree band at z."""
        z = complex(z)
        band = self.series.trunc
        total = 0.0
        for (m, p), matrix in self.series.items():
            if m + p == band:
                total += max(abs(complex(x)) for row in matrix for x in row) * abs(z) ** (m + p)
        return total


def curvature_series(spec: KernelSpec, trunc: int, radius: float = 0.5) -> CurvatureSeries:
    """Series of the curvature of the jet metric h(z) = K(z,z)^t.

    Built in floating point: h, dh, the series inverse of h and the Cauchy
    products all run over floats, losing two truncation orders to the two
    derivatives.  Evaluation is capped at ``radius`` (default 1/2); the cap
    and the tail estimate are reported rather than silently applied.
    """
    spec.require_bidisc()
    if trunc < 2:
        raise ValueError("curvature series needs trunc >= 2")
    h = jet_kernel_series(spec, trunc).transpose_entries().to_float()
    connection = h.invert().mul(h.dz())
    curv = connection.dwbar()
    return CurvatureSeries(spec, curv.trunc, curv, radius)


def jet2_curvature_closed_form(alpha, beta, z: complex):
    """Order-2 closed form of the curvature at z, |z| < 1.

    Returns the 2x2 complex matrix; ``jet2_eigenvector_residual`` checks the
    stated eigenvectors (1, 0) and (-beta zbar, 1-|z|^2).
    """
    z = complex(z)
    if abs(z) >= 1:
        raise ValueError("|z| must be < 1")
    a, b = float(alpha), float(beta)
    s = 1 - abs(z) ** 2
    return [
        [a / s ** 2, -2 * b * (b + 1) * z.conjugate() / s ** 3],
        [0j, (a + 2 * b + 2) / s ** 2],
    ]


def jet2_eigenvector_residual(alpha, beta, z: complex) -> float:
    """Max residual of the two stated eigenvectors of the closed form."""
    z = complex(z)
    a, b = float(alpha), float(beta)
    s = 1 - abs(z) ** 2
    k = jet2_curvature_closed_form(alpha, beta, z)
    pairs = [
        ((1 + 0j, 0j), a / s ** 2),
        ((-b * z.conjugate(), s + 0j), (a + 2 * b + 2) / s ** 2),
    ]
    worst = 0.0
    for vec, lam in pairs:
        r0 = k[0][0] * vec[0] + k[0][1] * vec[1] - lam * vec[0]
        r1 = k[1][0] * vec[0] + k[1][1] * vec[1] - lam * vec[1]
        worst = max(worst, abs(r0), abs(r1))
    return worst


def rotated_curvature_restriction(alpha, beta, u1: complex):
    """Curvature of the rank-2 rotated-coordinate bundle on the slice u2 = 0.

    Equals (1-|u1|^2)^{-2} [[alpha+beta, alpha-beta], [alpha-beta,
    alpha+beta]]; for alpha = beta this is 2 alpha (1-|u1|^2)^{-2} I.
    """
    u1 = complex(u1)
    if abs(u1) >= 1:
        raise ValueError("|u1| must be < 1")
    a, b = float(alpha), float(beta)
    f = (1 - abs(u1) ** 2) ** -2
    return [[(a + b) * f, (a - b) * f], [(a - b) * f, (a + b) * f]]


def curvature_report(spec: KernelSpec, points=(), trunc: int = 12) -> CurvatureReport:
    at_zero = curvature_at_zero(spec)
    samples = []
    if points:
        cs = curvature_series(spec, trunc)
        for z in points:
            samples.append((complex(z), cs.evaluate_at(z)))
    return CurvatureReport(at_zero, invariant_pair(spec), samples)
