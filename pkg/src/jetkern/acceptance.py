"""The acceptance grid: every check the test suite and `verify-all` share.

Grid conventions: exponent pairs (alpha, beta) range over {1/2, 1, 3/2, 2}^2,
jet orders over {1, 2, 3}, truncation 6 unless a check says otherwise.
Exact checks are bit-level; floating-point checks state their tolerance.
Each check returns a small summary dict and raises CheckFailure with the
first counterexample otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from random import Random

from .curvature import (
    curvature_at_zero,
    curvature_series,
    equivalence_test,
    jet2_curvature_closed_form,
    jet2_eigenvector_residual,
)
from .kernels import (
    bidisc_spec,
    jet_kernel_series,
    jet_kernel_series_bruteforce,
    tridisc_spec,
)
from .linalg import mat, mat_add, mat_equal, mat_inv, mat_mul, is_zero_matrix
from .mobius import (
    binomial_identity_check,
    quasi_invariance_at_zero,
    quasi_invariance_polynomial,
    random_element,
    random_point,
    verify_matrix_cocycle,
    verify_scalar_cocycles,
)
from .normalize import (
    closed_form_coefficient,
    inverse_head_coefficients,
    irreducibility_verdict,
    symmetrized_coeff_from_series,
    verify_inverse_relation,
)
from .scalars import pochhammer
from .normalize import symmetrized_normalized_series
from .tridisc import (
    displayed_g1_symmetrized_series,
    expected_split_projections,
    tridisc_block_diagonalize,
    tridisc_match_bidisc,
)
from .wilkins import kq_partial_sum_error, nilpotency_check

GRID_PARAMS = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]
GRID_ORDERS = [1, 2, 3]
GRID_TRUNC = 6
EVEN_SUM_PAIRS = [
    (Fraction(1), Fraction(1)),
    (Fraction(1, 2), Fraction(3, 2)),
    (Fraction(3, 2), Fraction(1, 2)),
    (Fraction(2), Fraction(2)),
]


class CheckFailure(AssertionError):
    """An acceptance check failed; the message carries the counterexample."""


def _grid_specs():
    for alpha, beta, n in product(GRID_PARAMS, GRID_PARAMS, GRID_ORDERS):
        yield bidisc_spec(alpha, beta, n)


# -- criterion 1 ------------------------------------------------------------


def check_oracle_equivalence(seed: int = 0) -> dict:
    """Closed-form jet series equals the brute-force series bit-exactly."""
    count = 0
    for spec in _grid_specs():
        a = jet_kernel_series(spec, GRID_TRUNC)
        b = jet_kernel_series_bruteforce(spec, GRID_TRUNC)
        mism = a.first_mismatch(b)
        if mism is not None:
            raise CheckFailure(
                f"spec {spec}: closed form and oracle differ at "
                f"(m,p,i,j)={mism[:4]}: {mism[4]} vs {mism[5]}"
            )
        count += 1
    return {"specs": count, "trunc": GRID_TRUNC}


# -- criterion 2 ------------------------------------------------------------


def check_closed_form_coefficients(seed: int = 0) -> dict:
    """a00, am0, a(m+1)1 and ck0 closed forms match the pipeline bit-exactly."""
    checked = 0
    for spec in _grid_specs():
        n = spec.jet_order
        series = jet_kernel_series(spec, n + 1)
        pairs = [("a00", None, series.coeff(0, 0))]
        for m in range(n + 1):
            pairs.append(("am0", m, series.coeff(m, 0)))
            pairs.append(("am1", m, series.coeff(m + 1, 1)))
        heads = inverse_head_coefficients(series, n)
        for k in range(n + 1):
            pairs.append(("ck0", k, heads[k]))
        for name, idx, got in pairs:
            want = closed_form_coefficient(name, spec, idx)
            if not mat_equal(got, want):
                raise CheckFailure(
                    f"spec {spec}: closed form {name}[{idx}] != pipeline: {want} vs {got}"
                )
            checked += 1
    return {"matrices": checked}


# -- criterion 3 ------------------------------------------------------------


def check_single_entry_pattern(seed: int = 0) -> dict:
    """N[k,1] has one nonzero entry, at (n-k+1, n), with the stated value,
    and the band (r, r+k-1) vanishes, for 2 <= k <= n+1."""
    checked = 0
    for spec in _grid_specs():
        n = spec.jet_order
        series = jet_kernel_series(spec, n + 1)
        for k in range(2, n + 2):
            got = symmetrized_coeff_from_series(series, k, 1)
            want = closed_form_coefficient("Ak1", spec, k)
            if not mat_equal(got, want):
                raise CheckFailure(f"spec {spec}: N[{k},1] = {got}, expected {want}")
            # the zero band computed alongside the single entry: r <= n-k,
            # since r = n-k+1 on this band is the nonzero position itself
            for r in range(n - k + 1):
                if got[r][r + k - 1] != 0:
                    raise CheckFailure(
                        f"spec {spec}: N[{k},1][{r},{r + k - 1}] should vanish"
                    )
            checked += 1
    return {"matrices": checked}


# -- criterion 4 ------------------------------------------------------------


def check_irreducibility_grid(seed: int = 0) -> dict:
    """Exact commutant dimension 1 across the whole grid."""
    for spec in _grid_specs():
        report = irreducibility_verdict(spec)
        if report.verdict != "irreducible" or report.dimension != 1:
            raise CheckFailure(
                f"spec {spec}: verdict {report.verdict}, dimension {report.dimension}"
            )
    return {"specs": 48}


# -- criterion 5 ------------------------------------------------------------


def check_curvature_at_zero(seed: int = 0) -> dict:
    """Curvature at 0 equals diag(alpha, ..., alpha + (n+1)(beta+n)); the
    invariant pair separates every distinct parameter pair at fixed order."""
    for spec in _grid_specs():
        n = spec.jet_order
        got = curvature_at_zero(spec)
        want = tuple(
            [spec.alpha] * n + [spec.alpha + (n + 1) * (spec.beta + n)]
        )
        if got != want:
            raise CheckFailure(f"spec {spec}: curvature {got}, expected {want}")
    separated = 0
    for n in GRID_ORDERS:
        pairs = list(product(GRID_PARAMS, GRID_PARAMS))
        for pa, pb in product(pairs, pairs):
            sa = bidisc_spec(pa[0], pa[1], n)
            sb = bidisc_spec(pb[0], pb[1], n)
            equal = equivalence_test(sa, sb)
            if (pa == pb) != equal:
                raise CheckFailure(f"equivalence test wrong on {pa} vs {pb} at n={n}")
            separated += 1
    return {"specs": 48, "pairs": separated}


# -- criterion 6 ------------------------------------------------------------

CURVATURE_POINTS = (0.2 + 0j, 0.3 + 0.2j)


def check_curvature_closed_form(seed: int = 0) -> dict:
    """Series curvature at order one matches the closed form within 1e-8 at
    truncation 20; eigenvector residuals stay below 1e-12."""
    worst = 0.0
    for alpha, beta in product(GRID_PARAMS, GRID_PARAMS):
        spec = bidisc_spec(alpha, beta, 1)
        cs = curvature_series(spec, 20)
        for z in CURVATURE_POINTS:
            got = cs.evaluate_at(z)
            want = jet2_curvature_closed_form(alpha, beta, z)
            err = max(abs(got[i][j] - want[i][j]) for i in range(2) for j in range(2))
            worst = max(worst, err)
            if err > 1e-8:
                raise CheckFailure(
                    f"(alpha,beta)=({alpha},{beta}), z={z}: series vs closed form err {err}"
                )
            res = jet2_eigenvector_residual(alpha, beta, z)
            if res > 1e-12:
                raise CheckFailure(f"eigenvector residual {res} at z={z}")
    return {"pairs": 16, "points": len(CURVATURE_POINTS), "max_error": worst}


# -- criterion 7 ------------------------------------------------------------


def check_binomial_identity(seed: int = 0) -> dict:
    """Exact polynomial identity for all 0 <= k <= i <= j <= 10."""
    checked = 0
    for j in range(11):
        for i in range(j + 1):
            for k in range(i + 1):
                if not binomial_identity_check(i, j, k):
                    raise CheckFailure(f"binomial identity fails at (i,j,k)=({i},{j},{k})")
                checked += 1
    return {"triples": checked}


# -- criterion 8 ------------------------------------------------------------


def check_cocycle_identities(seed: int = 0) -> dict:
    """Scalar chain rules and the matrix cocycle, 100 seeded exact triples
    (integer-exponent parameters, jet orders 1..3), plus a fractional
    floating-point smoke set near the identity (tolerance 1e-10)."""
    rng = Random(seed)
    bound = Fraction(1, 2)
    for trial in range(100):
        g = random_element(rng, radius_bound=bound)
        h = random_element(rng, radius_bound=bound)
        z = random_point(rng, radius_bound=bound)
        if not verify_scalar_cocycles(g, h, z):
            raise CheckFailure(f"scalar cocycle failed on trial {trial}: g={g}, h={h}, z={z}")
        alpha, beta = EVEN_SUM_PAIRS[trial % len(EVEN_SUM_PAIRS)]
        for n in GRID_ORDERS:
            spec = bidisc_spec(alpha, beta, n)
            if not verify_matrix_cocycle(spec, g, h, z, "exact"):
                raise CheckFailure(
                    f"matrix cocycle failed on trial {trial} at n={n}: g={g}, h={h}, z={z}"
                )
    rng = Random(seed + 1)
    smoke = 0
    near_identity = dict(radius_bound=Fraction(1, 10), circle_bound=Fraction(1, 8))
    for _ in range(10):
        g = random_element(rng, **near_identity)
        h = random_element(rng, **near_identity)
        z = complex(random_point(rng, radius_bound=Fraction(3, 10)))
        spec = bidisc_spec(Fraction(1), Fraction(1, 2), 1)
        if not verify_matrix_cocycle(spec, g, h, z, "numeric", tol=1e-10):
            raise CheckFailure(f"fractional-exponent cocycle failed: g={g}, h={h}, z={z}")
        smoke += 1
    return {"exact_trials": 100, "numeric_trials": smoke}


# -- criterion 9 ------------------------------------------------------------


def check_quasi_invariance(seed: int = 0) -> dict:
    """The reduction polynomial identity on the stated grid, and the exact
    transformation rule at the origin on the integer-exponent pairs."""
    for beta in (Fraction(1, 2), Fraction(1), Fraction(5, 2)):
        for j in range(7):
            for i in range(j + 1):
                if not quasi_invariance_polynomial(i, j, beta):
                    raise CheckFailure(f"polynomial identity fails at (i,j)=({i},{j}), beta={beta}")
    rng = Random(seed)
    checked = 0
    for alpha, beta in EVEN_SUM_PAIRS:
        for n in GRID_ORDERS:
            spec = bidisc_spec(alpha, beta, n)
            for _ in range(3):
                g = random_element(rng, radius_bound=Fraction(1, 2))
                if not quasi_invariance_at_zero(spec, g, "exact"):
                    raise CheckFailure(f"transformation rule fails: spec {spec}, g={g}")
                checked += 1
    return {"polynomials": 3 * 28, "at_zero": checked}


# -- criterion 10 -------------------------------------------------------------


def check_wilkins_example(seed: int = 0) -> dict:
    """Partial sums converge to the closed form; the half-difference blocks
    square to zero through p = 50; the half-sum is diagonal when the
    exponents agree."""
    err = kq_partial_sum_error(Fraction(1), Fraction(1), 60, 0.3, 0.3)
    if err > 1e-8:
        raise CheckFailure(f"partial sum error {err} at 60 terms")
    for alpha, beta in product(GRID_PARAMS, GRID_PARAMS):
        for p in range(51):
            if not nilpotency_check(alpha, beta, p):
                raise CheckFailure(f"block checks fail at (alpha,beta,p)=({alpha},{beta},{p})")
    return {"partial_sum_error": err, "blocks": 51 * 16}


# -- criterion 11 -------------------------------------------------------------


def check_tridisc_decomposition(seed: int = 0) -> dict:
    """(alpha, beta, gamma) = (1, 9, 16): bit-exact block diagonalization,
    scalar-block exponent 28, match with the bidisc (1, 25) kernel, commutant
    of dimension >= 2, and the rank 2 (+) 1 projection split."""
    spec = tridisc_spec(1, 9, 16)
    report = tridisc_block_diagonalize(spec)
    if not report.exact:
        raise CheckFailure("expected the exact Pythagorean route")
    if report.g2_exponent != 28:
        raise CheckFailure(f"scalar-block exponent {report.g2_exponent}, expected 28")
    for label, ok in (
        ("unitary", report.unitary_residual == 0.0),
        ("off-block", report.off_block_residual == 0.0),
        ("scalar block", report.g2_matches_szego),
        ("2x2 block", report.g1_matches_display),
        ("bidisc match", report.match_bidisc),
        ("reducible", report.reducible),
    ):
        if not ok:
            raise CheckFailure(f"tridisc check failed: {label}")
    if report.commutant.dimension < 2:
        raise CheckFailure(f"commutant dimension {report.commutant.dimension} < 2")
    p_want = set(expected_split_projections(spec))
    p_got = set(report.projections)
    if p_got != p_want:
        raise CheckFailure(f"projections {p_got} differ from the U-split {p_want}")
    inner = irreducibility_verdict(bidisc_spec(1, 25, 1))
    if inner.verdict != "irreducible":
        raise CheckFailure("bidisc (1, 25) image should be irreducible")
    return {
        "commutant_dimension": report.commutant.dimension,
        "projection_ranks": sorted(sum(p[i][i] for i in range(3)) for p in report.projections),
    }


# -- criterion 12 -------------------------------------------------------------


def check_mutation_sensitivity(seed: int = 0) -> dict:
    """Single +1 perturbations of closed forms, and beta+gamma-1 in the
    tridisc match, must flip the corresponding check to a failure."""
    caught = 0
    spec = bidisc_spec(Fraction(1), Fraction(1), 2)
    series = jet_kernel_series(spec, spec.jet_order + 1)
    for name, idx in (("a00", None), ("am0", 1), ("am1", 1), ("ck0", 1), ("Ak1", 2)):
        want = closed_form_coefficient(name, spec, idx)
        if name == "a00":
            got = series.coeff(0, 0)
        elif name == "am0":
            got = series.coeff(idx, 0)
        elif name == "am1":
            got = series.coeff(idx + 1, 1)
        elif name == "ck0":
            got = inverse_head_coefficients(series, idx)[idx]
        else:
            got = symmetrized_coeff_from_series(series, idx, 1)
        d = len(want)
        for r in range(d):
            for c in range(d):
                perturbed = [list(row) for row in want]
                perturbed[r][c] += 1
                if mat_equal(got, mat(perturbed)):
                    raise CheckFailure(f"{name}[{idx}] +1 at ({r},{c}) went unnoticed")
                caught += 1
    # perturbed inverse relation: bump one c entry
    n = spec.jet_order
    a00_inv = mat_inv(closed_form_coefficient("a00", spec))
    c1 = [list(row) for row in closed_form_coefficient("ck0", spec, 1)]
    c1[0][1] += 1
    total = None
    for m in range(1, n + 1):
        acc = None
        for s in range(m + 1):
            c_s = mat(c1) if s == 1 else closed_form_coefficient("ck0", spec, s)
            a_m = closed_form_coefficient("am0", spec, m - s)
            term = mat_mul(mat_mul(c_s, a00_inv), a_m)
            acc = term if acc is None else mat_add(acc, term)
        total = acc if total is None else mat_add(total, acc)
    if total is None or is_zero_matrix(total):
        raise CheckFailure("perturbed inverse relation still cancels")
    if not verify_inverse_relation(spec, 4):
        raise CheckFailure("unperturbed inverse relation should hold")
    caught += 1
    # criterion-11 parameter mutation: beta+gamma replaced by beta+gamma-1
    tri = tridisc_spec(1, 9, 16)
    lhs = displayed_g1_symmetrized_series(tri.alpha, tri.beta + tri.gamma, GRID_TRUNC)
    wrong = symmetrized_normalized_series(
        jet_kernel_series(bidisc_spec(1, 24, 1), GRID_TRUNC)
    )
    mism = lhs.first_mismatch(wrong)
    if mism is None:
        raise CheckFailure("bidisc match failed to notice beta+gamma-1")
    if not tridisc_match_bidisc(tri):
        raise CheckFailure("unperturbed bidisc match should hold")
    caught += 1
    return {"mutations_detected": caught, "first_tridisc_mismatch": mism[:4]}


ALL_CHECKS = [
    ("oracle-equivalence", check_oracle_equivalence),
    ("closed-form-coefficients", check_closed_form_coefficients),
    ("single-entry-pattern", check_single_entry_pattern),
    ("irreducibility-grid", check_irreducibility_grid),
    ("curvature-at-zero", check_curvature_at_zero),
    ("curvature-closed-form", check_curvature_closed_form),
    ("binomial-identity", check_binomial_identity),
    ("cocycle-identities", check_cocycle_identities),
    ("quasi-invariance", check_quasi_invariance),
    ("wilkins-example", check_wilkins_example),
    ("tridisc-decomposition", check_tridisc_decomposition),
    ("mutation-sensitivity", check_mutation_sensitivity),
]

SLOW_CHECKS = {"oracle-equivalence", "cocycle-identities"}
