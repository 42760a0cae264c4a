"""Normalization and block diagonalization of the order-(1,1) tridisc jet
kernel, and the reduction to the bidisc case with the second exponent
beta + gamma.

Conjugating the normalized kernel by D^(1/2), D = diag(1, beta, gamma),
removes every square root, so structure checks run bit-exactly for all
rational parameters.  The genuinely unitary change of basis

    U = [[1, 0, 0],
         [0,  sqrt(beta)/s,  sqrt(gamma)/s],
         [0, -sqrt(gamma)/s, sqrt(beta)/s]],   s = sqrt(beta + gamma),

needs sqrt(beta), sqrt(gamma), sqrt(beta+gamma) rational to stay exact
("Pythagorean" parameters such as beta = 9, gamma = 16); otherwise the
block checks fall back to floating point with a declared tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .kernels import (
    KernelSpec,
    ScaledKernelForm,
    bidisc_spec,
    jet_kernel_series,
    szego_power_series,
    tridisc_jet_closed_form,
)
from .linalg import (
    mat,
    mat_conj_transpose,
    mat_inv,
    mat_mul,
    mat_transpose,
)
from .normalize import (
    CommutantReport,
    commutant_basis,
    reducing_projections,
    symmetrized_normalized_series,
)
from .scalars import ComplexRational, rational_sqrt
from .series import MatrixSeries


def pythagorean_sqrts(spec: KernelSpec):
    """(sqrt(beta), sqrt(gamma), sqrt(beta+gamma)) if all rational, else None."""
    spec.require_tridisc()
    sb = rational_sqrt(spec.beta)
    sg = rational_sqrt(spec.gamma)
    sbg = rational_sqrt(spec.beta + spec.gamma)
    if sb is None or sg is None or sbg is None:
        return None
    return sb, sg, sbg


def normalized_symmetrized_series(spec: KernelSpec, trunc: int) -> MatrixSeries:
    """D^(1/2)-conjugated normalized kernel as an exact series.

    Computed from the defining product D A(z)^{-1} G(z,w) B(w)^{-1} D, which
    is rational whatever the parameters are.
    """
    spec.require_tridisc()
    g_series = tridisc_jet_closed_form(spec).series(trunc)
    return symmetrized_normalized_series(g_series)


def normalized_symmetrized_display(spec: KernelSpec, trunc: int) -> MatrixSeries:
    """The displayed normalized kernel, conjugated by D^(1/2): polynomial part

        [[(1-x)^2 - (b+g)(1-x)x + (b+g)(1+b+g)x^2,
              -b(1+b+g) z^2 wbar,   -g(1+b+g) z^2 wbar],
         [-b(1+b+g) z wbar^2,        b(1+bx),  bg x],
         [-g(1+b+g) z wbar^2,        bg x,     g(1+gx)]],   x = z wbar,

    times S^(alpha+beta+gamma+2)."""
    spec.require_tridisc()
    b, g = spec.beta, spec.gamma
    q = 1 + b + g
    zero = Fraction(0)
    tables = [
        [
            {(0, 0): Fraction(1), (1, 1): -(2 + b + g), (2, 2): 1 + b + g + (b + g) * q},
            {(2, 1): -b * q},
            {(2, 1): -g * q},
        ],
        [
            {(1, 2): -b * q},
            {(0, 0): b, (1, 1): b * b},
            {(1, 1): b * g},
        ],
        [
            {(1, 2): -g * q},
            {(1, 1): b * g},
            {(0, 0): g, (1, 1): g * g},
        ],
    ]
    coeffs = {}
    for m in range(3):
        for p in range(3):
            coeffs[(m, p)] = tuple(
                tuple(tables[i][j].get((m, p), zero) for j in range(3)) for i in range(3)
            )
    poly = MatrixSeries(3, trunc, coeffs)
    return poly.mul_scalar_series(szego_power_series(spec.alpha + b + g + 2, trunc))


def tridisc_normalized(spec: KernelSpec, z: ComplexRational, w: ComplexRational):
    """Normalized kernel at a point, as (matrix, szego_exponent, exact_flag).

    The matrix is the polynomial part of

        G(0,0)^(1/2) G(z,0)^{-1} G(z,w) G(0,w)^{-1} G(0,0)^(1/2);

    entries are ComplexRational when sqrt(beta), sqrt(gamma) are rational,
    complex floats otherwise.  The scalar prefactor S^(a+b+g+2) is returned
    as the exponent so the polynomial part stays exact.
    """
    spec.require_tridisc()
    form = tridisc_jet_closed_form(spec)
    a_z = form.poly_at(z, ComplexRational.from_rational(0))
    b_w = form.poly_at(ComplexRational.from_rational(0), w)
    middle = form.poly_at(z, w)
    core = mat_mul(mat_mul(mat_inv(a_z), middle), mat_inv(b_w))
    sb, sg = rational_sqrt(spec.beta), rational_sqrt(spec.gamma)
    if sb is not None and sg is not None:
        half = [ComplexRational.from_rational(x) for x in (Fraction(1), sb, sg)]
        rows = tuple(
            tuple(half[i] * core[i][j] * half[j] for j in range(3)) for i in range(3)
        )
        return rows, form.szego_exponent, True
    halves = [1.0, float(spec.beta) ** 0.5, float(spec.gamma) ** 0.5]
    rows = tuple(
        tuple(halves[i] * complex(core[i][j]) * halves[j] for j in range(3)) for i in range(3)
    )
    return rows, form.szego_exponent, False


def displayed_g1_symmetrized_series(alpha, beta_plus_gamma, trunc: int) -> MatrixSeries:
    """The 2x2 block of the decomposition, conjugated by diag(1, sqrt(b+g)):

        [[(1-x)^2 - c x(1-x) + c(1+c) x^2,  -c(1+c) z^2 wbar],
         [-c(1+c) z wbar^2,                  c(1 + c x)]],   c = beta+gamma,

    times S^(alpha+c+2); rational for every rational parameter choice."""
    c = beta_plus_gamma
    q = 1 + c
    zero = Fraction(0)
    tables = [
        [
            {(0, 0): Fraction(1), (1, 1): -(2 + c), (2, 2): 1 + c + c * q},
            {(2, 1): -c * q},
        ],
        [
            {(1, 2): -c * q},
            {(0, 0): c, (1, 1): c * c},
        ],
    ]
    coeffs = {}
    for m in range(3):
        for p in range(3):
            coeffs[(m, p)] = tuple(
                tuple(tables[i][j].get((m, p), zero) for j in range(2)) for i in range(2)
            )
    poly = MatrixSeries(2, trunc, coeffs)
    return poly.mul_scalar_series(szego_power_series(alpha + c + 2, trunc))


def tridisc_match_bidisc(spec: KernelSpec, trunc: int = 6) -> bool:
    """The 2x2 block equals the normalized bidisc jet kernel at parameters
    (alpha, beta+gamma), order one: an exact polynomial identity in z, wbar.

    Both sides are compared after the diag(1, sqrt(beta+gamma)) conjugation,
    which makes them rational for all parameters.
    """
    spec.require_tridisc()
    lhs = displayed_g1_symmetrized_series(spec.alpha, spec.beta + spec.gamma, trunc)
    bspec = bidisc_spec(spec.alpha, spec.beta + spec.gamma, 1)
    rhs = symmetrized_normalized_series(jet_kernel_series(bspec, trunc))
    return lhs.first_mismatch(rhs) is None


@dataclass
class TridiscReport:
    spec: KernelSpec
    exact: bool
    unitary: tuple
    unitary_residual: float
    off_block_residual: float
    g2_exponent: Fraction
    g2_matches_szego: bool
    g1_matches_display: bool
    match_bidisc: bool
    reducible: bool
    commutant: CommutantReport | None = None
    projections: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def _unitary_exact(sb: Fraction, sg: Fraction, sbg: Fraction):
    return mat(
        [
            [Fraction(1), Fraction(0), Fraction(0)],
            [Fraction(0), sb / sbg, sg / sbg],
            [Fraction(0), -sg / sbg, sb / sbg],
        ]
    )


def _att_series(spec: KernelSpec, trunc: int, sb: Fraction, sg: Fraction) -> MatrixSeries:
    """Exact normalized coefficients att[m,p] = D^{-1/2} N[m,p] D^{-1/2}."""
    n_series = normalized_symmetrized_series(spec, trunc)
    inv_half = [Fraction(1), 1 / sb, 1 / sg]
    coeffs = {
        key: tuple(
            tuple(inv_half[i] * matrix[i][j] * inv_half[j] for j in range(3))
            for i in range(3)
        )
        for key, matrix in n_series.items()
    }
    return MatrixSeries(3, trunc, coeffs)


def tridisc_block_diagonalize(spec: KernelSpec, trunc: int = 6) -> TridiscReport:
    """Conjugate the normalized kernel by U and verify the 2 (+) 1 split.

    Exact (bit-level) on Pythagorean parameters; floating point with residual
    reporting otherwise.  The scalar block is S^(alpha+beta+gamma+2); the
    2x2 block must equal the displayed form and match the bidisc kernel at
    (alpha, beta+gamma).
    """
    spec.require_tridisc()
    g2_exp = spec.alpha + spec.beta + spec.gamma + 2
    sqrts = pythagorean_sqrts(spec)
    match = tridisc_match_bidisc(spec, trunc)
    notes = []

    if sqrts is not None:
        sb, sg, sbg = sqrts
        u = _unitary_exact(sb, sg, sbg)
        u_res = 0.0 if mat_mul(u, mat_transpose(u)) == tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(3)) for i in range(3)
        ) else float("inf")
        att = _att_series(spec, trunc, sb, sg)
        conj = MatrixSeries(
            3,
            trunc,
            {
                key: mat_mul(mat_mul(u, matrix), mat_transpose(u))
                for key, matrix in att.items()
            },
        )
        off = Fraction(0)
        for _, matrix in conj.items():
            for i, j in ((0, 2), (1, 2), (2, 0), (2, 1)):
                off += abs(matrix[i][j])
        off_res = float(off)
        szego = szego_power_series(g2_exp, trunc)
        g2_ok = all(
            conj.entry_coeff(m, p, 2, 2) == szego.entry_coeff(m, p, 0, 0)
            for m in range(trunc + 1)
            for p in range(trunc + 1)
        )
        g1_display = displayed_g1_symmetrized_series(spec.alpha, spec.beta + spec.gamma, trunc)
        half = [Fraction(1), sbg]
        g1_ok = all(
            conj.entry_coeff(m, p, i, j) * half[i] * half[j]
            == g1_display.entry_coeff(m, p, i, j)
            for m in range(trunc + 1)
            for p in range(trunc + 1)
            for i in range(2)
            for j in range(2)
        )
        family = [matrix for key, matrix in sorted(att.items()) if key != (0, 0)]
        commutant = commutant_basis(family, arithmetic="exact")
        projections = reducing_projections(commutant)
        exact = True
    else:
        import numpy as np

        b, g = float(spec.beta), float(spec.gamma)
        s = (b + g) ** 0.5
        u = np.array([[1, 0, 0], [0, b ** 0.5 / s, g ** 0.5 / s], [0, -(g ** 0.5) / s, b ** 0.5 / s]])
        u_res = float(np.max(np.abs(u @ u.T - np.eye(3))))
        n_series = normalized_symmetrized_series(spec, trunc)
        inv_half = np.diag([1.0, b ** -0.5, g ** -0.5])
        off_res = 0.0
        g2_err = 0.0
        g1_err = 0.0
        szego = szego_power_series(g2_exp, trunc)
        g1_display = displayed_g1_symmetrized_series(spec.alpha, spec.beta + spec.gamma, trunc)
        half = np.diag([1.0, s])
        family = []
        for (m, p), matrix in sorted(n_series.items()):
            a = np.array([[float(x) for x in row] for row in matrix])
            att = inv_half @ a @ inv_half
            conj = u @ att @ u.T
            off_res = max(
                off_res,
                max(abs(conj[i][j]) for i, j in ((0, 2), (1, 2), (2, 0), (2, 1))),
            )
            g2_err = max(g2_err, abs(conj[2][2] - float(szego.entry_coeff(m, p, 0, 0))))
            disp = np.array(
                [
                    [float(g1_display.entry_coeff(m, p, i, j)) for j in range(2)]
                    for i in range(2)
                ]
            )
            g1_err = max(g1_err, float(np.max(np.abs(half @ conj[:2, :2] @ half - disp))))
            if (m, p) != (0, 0):
                family.append(tuple(map(tuple, att)))
        tol = 1e-12
        g2_ok = g2_err < tol
        g1_ok = g1_err < tol
        commutant = commutant_basis(family, arithmetic="numeric", tol=1e-10)
        projections = reducing_projections(commutant)
        exact = False
        notes.append("non-Pythagorean parameters: block checks ran in floating point")

    return TridiscReport(
        spec=spec,
        exact=exact,
        unitary=tuple(map(tuple, u)),
        unitary_residual=u_res,
        off_block_residual=off_res,
        g2_exponent=g2_exp,
        g2_matches_szego=g2_ok,
        g1_matches_display=g1_ok,
        match_bidisc=match,
        reducible=commutant.dimension >= 2,
        commutant=commutant,
        projections=projections,
        notes=notes,
    )


def expected_split_projections(spec: KernelSpec):
    """U^t diag(1,1,0) U and U^t diag(0,0,1) U: the 2 (+) 1 split realized by
    the block diagonalization (exact, Pythagorean parameters only)."""
    sqrts = pythagorean_sqrts(spec)
    if sqrts is None:
        raise ValueError("exact split projections need Pythagorean parameters")
    sb, sg, sbg = sqrts
    u = _unitary_exact(sb, sg, sbg)
    ut = mat_transpose(u)
    d110 = mat([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    d001 = mat([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
    p1 = mat_mul(mat_mul(ut, d110), u)
    p2 = mat_mul(mat_mul(ut, d001), u)
    return p1, p2
