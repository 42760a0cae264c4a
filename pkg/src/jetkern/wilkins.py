"""Order-2 quotient example: orthonormal-basis images under the jet map, the
block weighted-shift matrices, and partial-sum reconstruction of the kernel.

Square roots force floating point here.  The displayed basis-image formulas
are treated as claims: the partial sums they generate must converge to the
closed-form jet kernel, which the exact modules own.  Binomials with a
negative upper argument reduce via C(-x, p) = (-1)^p C(x+p-1, p); only the
magnitude survives in the rank-one sums e(z) e(w)*, so the images carry
C(x+p-1, p)^(1/2) with positive sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .kernels import bidisc_spec, jet_entry_closed_form
from .scalars import as_rational, binomial_general


def _pos_binom(x: Fraction, p: int) -> Fraction:
    """|C(-x, p)| = C(x + p - 1, p); zero for p < 0 by convention."""
    if p < 0:
        return Fraction(0)
    return binomial_general(x + p - 1, p)


def onb_image(alpha, beta, p: int, which: int):
    """Components of the p-th basis vector's image, as (coeff, z-power) pairs.

    which = 1:  ( C(a+b+p-1, p)^(1/2) z^p,
                  beta sqrt(p/(a+b)) C(a+b+p-1, p-1)^(1/2) z^(p-1) )
    which = 2:  ( 0,
                  sqrt(a b/(a+b)) C(a+b+p, p-1)^(1/2) z^(p-1) )

    Terms indexed by p - 1 vanish at p = 0.
    """
    a, b = as_rational(alpha), as_rational(beta)
    x = a + b
    if which == 1:
        first = (sqrt(float(_pos_binom(x, p))), p)
        if p == 0:
            second = (0.0, 0)
        else:
            second = (
                float(b) * sqrt(float(Fraction(p, 1) / x)) * sqrt(float(_pos_binom(x + 1, p - 1))),
                p - 1,
            )
        return first, second
    if which == 2:
        if p == 0:
            return (0.0, 0), (0.0, 0)
        coeff = sqrt(float(a * b / x)) * sqrt(float(_pos_binom(x + 2, p - 1)))
        return (0.0, 0), (coeff, p - 1)
    raise ValueError("which must be 1 or 2")


def _image_vector(alpha, beta, p: int, which: int, z: complex):
    (c1, d1), (c2, d2) = onb_image(alpha, beta, p, which)
    return (c1 * z ** d1 if c1 else 0j, c2 * z ** d2 if c2 else 0j)


def kq_partial_sum(alpha, beta, terms: int, z: complex, w: complex):
    """Truncated basis expansion sum_p e_p(z) e_p(w)* of the 2x2 kernel."""
    if terms < 1:
        raise ValueError("need at least one term")
    z, w = complex(z), complex(w)
    acc = [[0j, 0j], [0j, 0j]]
    for p in range(terms):
        for which in (1, 2):
            vz = _image_vector(alpha, beta, p, which, z)
            vw = _image_vector(alpha, beta, p, which, w)
            for i in range(2):
                for j in range(2):
                    acc[i][j] += vz[i] * vw[j].conjugate()
    return acc


def closed_form_jk(alpha, beta, z: complex, w: complex):
    """Closed-form 2x2 jet kernel at (z, w); the convergence target."""
    spec = bidisc_spec(alpha, beta, 1)
    return [
        [jet_entry_closed_form(spec, i, j).eval_numeric(complex(z), complex(w)) for j in range(2)]
        for i in range(2)
    ]


def kq_partial_sum_error(alpha, beta, terms: int, z: complex, w: complex) -> float:
    target = closed_form_jk(alpha, beta, z, w)
    got = kq_partial_sum(alpha, beta, terms, z, w)
    return max(
        abs(got[i][j] - target[i][j]) for i in range(2) for j in range(2)
    )


@dataclass(frozen=True)
class ShiftBlock:
    """One 2x2 block of the weighted-shift multiplication operators."""

    p: int
    which: int
    matrix: tuple

    def is_lower_triangular(self) -> bool:
        return self.matrix[0][1] == 0.0


def shift_block(alpha, beta, p: int, which: int) -> ShiftBlock:
    """Block p of the operator multiplying by the first (which=1) or second
    (which=2) coordinate, in the orthonormal basis.

    Both share the diagonal ( sqrt((p+1)/(x+p)), sqrt(p/(x+p+1)) ) with
    x = alpha + beta; the lower-left entry is

        +- sqrt(beta/alpha or alpha/beta) sqrt(x+1) / sqrt((x+p)(x+p+1)),

    with + for which=1 and - for which=2.
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    a, b = as_rational(alpha), as_rational(beta)
    x = a + b
    top = sqrt(float(Fraction(p + 1, 1) / (x + p)))
    bottom = sqrt(float(Fraction(p, 1) / (x + p + 1)))
    ratio = b / a if which == 1 else a / b
    sign = 1.0 if which == 1 else -1.0
    low = sign * sqrt(float(ratio)) * sqrt(float((x + 1) / ((x + p) * (x + p + 1))))
    return ShiftBlock(p, which, ((top, 0.0), (low, bottom)))


def nilpotency_check(alpha, beta, p: int, tol: float = 1e-12) -> bool:
    """Half-difference of the two blocks squares to zero; the half-sum is
    diagonal exactly when alpha = beta."""
    m1 = shift_block(alpha, beta, p, 1).matrix
    m2 = shift_block(alpha, beta, p, 2).matrix
    q1 = [[(m1[i][j] - m2[i][j]) / 2 for j in range(2)] for i in range(2)]
    sq = [
        [sum(q1[i][k] * q1[k][j] for k in range(2)) for j in range(2)]
        for i in range(2)
    ]
    if max(abs(x) for row in sq for x in row) > tol:
        return False
    if as_rational(alpha) == as_rational(beta):
        q2_off = (m1[1][0] + m2[1][0]) / 2
        if abs(q2_off) > tol:
            return False
    return True
