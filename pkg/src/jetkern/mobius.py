"""Disc automorphisms over exact complex rationals, the scalar cocycles c and
p, the upper-triangular matrix cocycle, and the polynomial identities behind
quasi-invariance of the jet kernel.

An automorphism is phi_{t,a}(z) = t (z - a) / (1 - abar z) with |t| = 1 and
|a| < 1.  Unit-circle parameters are produced through the rational
parametrization t = ((1 - s^2) + 2 i s) / (1 + s^2), which keeps |t|^2 = 1
bit-exact.  The scalar cocycles, for an arbitrary element g = phi_{s,b}, are

    c(g, z) = g'(z) = s (1 - |b|^2) / (1 - bbar z)^2
    p(g, z) = -bbar / (1 - bbar z)   ( = -(1/2) d/dz log g'(z) )

and satisfy the chain rules c(g o h, z) = c(g, h(z)) c(h, z) and
p(g o h, z) = p(g, h(z)) c(h, z) + p(h, z), see ``verify_scalar_cocycles``.
Exact verification is restricted to integer
powers of c (alpha + beta an even integer); fractional exponents run in
floating point on the principal branch with parameters kept near the
identity.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from random import Random

from .kernels import KernelSpec, jet_entry_closed_form
from .linalg import mat, mat_conj_transpose, mat_mul
from .scalars import CPLX_ONE, CPLX_ZERO, ComplexRational, as_rational, pochhammer


@dataclass(frozen=True)
class MobiusElement:
    """phi_{t,a} with exact |t|^2 = 1 and |a|^2 < 1."""

    t: ComplexRational
    a: ComplexRational

    def __post_init__(self):
        if self.t.abs2() != 1:
            raise ValueError("t must lie on the unit circle exactly")
        if not self.a.abs2() < 1:
            raise ValueError("a must lie strictly inside the disc")

    @staticmethod
    def identity() -> "MobiusElement":
        return MobiusElement(CPLX_ONE, CPLX_ZERO)

    @staticmethod
    def from_circle_param(s, a: ComplexRational) -> "MobiusElement":
        """t from the rational circle parametrization; |t|^2 = 1 exactly."""
        s = as_rational(s)
        den = 1 + s * s
        t = ComplexRational((1 - s * s) / den, 2 * s / den)
        return MobiusElement(t, a)

    def is_identity(self) -> bool:
        return self.t == CPLX_ONE and self.a == CPLX_ZERO


def mobius_apply(g: MobiusElement, z: ComplexRational) -> ComplexRational:
    if not z.abs2() < 1:
        raise ValueError("z must lie strictly inside the disc")
    return g.t * (z - g.a) / (CPLX_ONE - g.a.conjugate() * z)


def mobius_compose(g: MobiusElement, h: MobiusElement) -> MobiusElement:
    """g o h, i.e. z -> g(h(z)).

    With g = phi_{s,b}, h = phi_{t,a}:
        t' = s (t + abar b) / (1 + t a bbar),
        a' = (a + tbar b) / (1 + conj(t a) b).
    """
    s, b = g.t, g.a
    t, a = h.t, h.a
    t_new = s * (t + a.conjugate() * b) / (CPLX_ONE + t * a * b.conjugate())
    a_new = (a + t.conjugate() * b) / (CPLX_ONE + (t * a).conjugate() * b)
    return MobiusElement(t_new, a_new)


def mobius_invert(g: MobiusElement) -> MobiusElement:
    """phi_{t,a}^{-1} = phi_{tbar, -t a}."""
    return MobiusElement(g.t.conjugate(), -(g.t * g.a))


def cocycle_c(g: MobiusElement, z: ComplexRational) -> ComplexRational:
    """Derivative cocycle c(g, z) = g'(z)."""
    if not z.abs2() < 1:
        raise ValueError("z must lie strictly inside the disc")
    s, b = g.t, g.a
    den = CPLX_ONE - b.conjugate() * z
    return s * (CPLX_ONE - ComplexRational.from_rational(b.abs2())) / (den * den)


def cocycle_p(g: MobiusElement, z: ComplexRational) -> ComplexRational:
    """Affine cocycle p(g, z) = -bbar / (1 - bbar z) = -(1/2) (log g')'(z)."""
    if not z.abs2() < 1:
        raise ValueError("z must lie strictly inside the disc")
    b = g.a
    return -b.conjugate() / (CPLX_ONE - b.conjugate() * z)


def verify_scalar_cocycles(g: MobiusElement, h: MobiusElement, z: ComplexRational) -> bool:
    """Chain rules for c and p under composition, bit-exact:

        c(g o h, z) = c(g, h(z)) c(h, z)
        p(g o h, z) = p(g, h(z)) c(h, z) + p(h, z)
    """
    gh = mobius_compose(g, h)
    hz = mobius_apply(h, z)
    c_ok = cocycle_c(gh, z) == cocycle_c(g, hz) * cocycle_c(h, z)
    p_ok = cocycle_p(gh, z) == cocycle_p(g, hz) * cocycle_c(h, z) + cocycle_p(h, z)
    return c_ok and p_ok


# ---------------------------------------------------------------------------
# Matrix cocycle
# ---------------------------------------------------------------------------


def _c_exponent_base(spec: KernelSpec) -> Fraction:
    return -(spec.alpha + spec.beta) / 2


def jmatrix_is_exact(spec: KernelSpec) -> bool:
    """Exact mode needs every power of c integral: alpha + beta in 2Z."""
    return (_c_exponent_base(spec)).denominator == 1


def jmatrix(spec: KernelSpec, g: MobiusElement, z, mode: str = "exact"):
    """Upper-triangular matrix cocycle of the jet kernel at z.

    Entry (i, j), for 0 <= i <= j <= n:

        ((beta)_j / (beta)_i) C(j, i) c(g,z)^{-(alpha+beta)/2 - j} p(g,z)^{j-i}

    and zero below the diagonal.  The diagonal entries are nonzero powers of
    c, so the matrix is invertible on the disc.
    """
    spec.require_bidisc()
    n = spec.jet_order
    beta = spec.beta
    if mode == "exact":
        if not jmatrix_is_exact(spec):
            raise ValueError(
                "exact cocycle needs alpha + beta to be an even integer; "
                "use mode='numeric' for fractional exponents"
            )
        if not isinstance(z, ComplexRational):
            raise TypeError("exact mode takes a ComplexRational point")
        base = int(_c_exponent_base(spec))
        c = cocycle_c(g, z)
        p = cocycle_p(g, z)
        zero = CPLX_ZERO
        rows = []
        for i in range(n + 1):
            row = []
            for j in range(n + 1):
                if i > j:
                    row.append(zero)
                    continue
                scale = pochhammer(beta, j) / pochhammer(beta, i) * comb(j, i)
                row.append(
                    ComplexRational.from_rational(scale) * c ** (base - j) * p ** (j - i)
                )
            rows.append(tuple(row))
        return mat(rows)
    if mode == "numeric":
        zc = complex(z)
        s, b = complex(g.t), complex(g.a)
        den = 1 - b.conjugate() * zc
        c = s * (1 - abs(b) ** 2) / den ** 2
        p = -b.conjugate() / den
        base = float(_c_exponent_base(spec))
        rows = []
        for i in range(n + 1):
            row = []
            for j in range(n + 1):
                if i > j:
                    row.append(0j)
                    continue
                scale = float(pochhammer(beta, j) / pochhammer(beta, i)) * comb(j, i)
                cpow = cmath.exp((base - j) * cmath.log(c))
                row.append(scale * cpow * p ** (j - i))
            rows.append(tuple(row))
        return mat(rows)
    raise ValueError(f"unknown mode {mode!r}")


def verify_matrix_cocycle(
    spec: KernelSpec, g: MobiusElement, h: MobiusElement, z, mode: str = "exact", tol: float = 1e-10
) -> bool:
    """Cocycle product rule: J_{g o h}(z) = J_h(z) J_g(h(z))."""
    if mode == "exact":
        lhs = jmatrix(spec, mobius_compose(g, h), z, mode)
        rhs = mat_mul(jmatrix(spec, h, z, mode), jmatrix(spec, g, mobius_apply(h, z), mode))
        return all(x == y for ra, rb in zip(lhs, rhs) for x, y in zip(ra, rb))
    zc = complex(z)
    sh, bh = complex(h.t), complex(h.a)
    hz = sh * (zc - bh) / (1 - bh.conjugate() * zc)
    lhs = jmatrix(spec, mobius_compose(g, h), zc, mode)
    rhs = mat_mul(jmatrix(spec, h, zc, mode), jmatrix(spec, g, hz, mode))
    dev = max(abs(x - y) for ra, rb in zip(lhs, rhs) for x, y in zip(ra, rb))
    return dev < tol


# ---------------------------------------------------------------------------
# Binomial identity and quasi-invariance
# ---------------------------------------------------------------------------


def binomial_identity_check(i: int, j: int, k: int) -> bool:
    """Polynomial identity in a (degree i - k), checked by exact evaluation:

        sum_{l=0}^{i-k} (-1)^l (l+k)! C(i,l+k) C(j,l+k) C(l+k,l) (a+j)_{i-l-k}
            = k! C(i,k) C(j,k) (a+k)_{i-k}.

    Both sides are evaluated at i - k + 1 distinct rational points, which
    decides equality of polynomials of degree at most i - k.
    """
    if not (0 <= k <= i <= j):
        raise ValueError("need 0 <= k <= i <= j")

    def lhs(a: Fraction) -> Fraction:
        total = Fraction(0)
        for l in range(i - k + 1):
            total += (
                Fraction((-1) ** l)
                * factorial(l + k)
                * comb(i, l + k)
                * comb(j, l + k)
                * comb(l + k, l)
                * pochhammer(a + j, i - l - k)
            )
        return total

    def rhs(a: Fraction) -> Fraction:
        return factorial(k) * comb(i, k) * comb(j, k) * pochhammer(a + k, i - k)

    points = [Fraction(u, 2) + Fraction(1, 3) for u in range(i - k + 1)]
    return all(lhs(a) == rhs(a) for a in points)


def _poly_add(p: list, q: list) -> list:
    out = [Fraction(0)] * max(len(p), len(q))
    for idx, c in enumerate(p):
        out[idx] += c
    for idx, c in enumerate(q):
        out[idx] += c
    return out


def _poly_scale(c, p: list) -> list:
    return [c * x for x in p]


def _poly_mul(p: list, q: list) -> list:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for a, ca in enumerate(p):
        if ca == 0:
            continue
        for b, cb in enumerate(q):
            out[a + b] += ca * cb
    return out


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def quasi_invariance_polynomial(i: int, j: int, beta, n: int | None = None) -> bool:
    """The polynomial identity in x = |z|^2 that quasi-invariance reduces to:

        sum_r r! C(i,r) C(j,r) (beta+j)_{i-r} (1-x)^r x^{i-r}
            = sum_k k! C(i,k) C(j,k) ((beta)_i / (beta)_k) x^{i-k},

    compared exactly coefficient by coefficient.
    """
    if n is not None and not (0 <= i <= j <= n):
        raise ValueError("need 0 <= i <= j <= n")
    if i > j:
        raise ValueError("need i <= j")
    beta = as_rational(beta)
    one_minus_x = [Fraction(1), Fraction(-1)]
    lhs: list = []
    for r in range(i + 1):
        c = factorial(r) * comb(i, r) * comb(j, r) * pochhammer(beta + j, i - r)
        term = [Fraction(0)] * (i - r) + [Fraction(1)]  # x^(i-r)
        pw = [Fraction(1)]
        for _ in range(r):
            pw = _poly_mul(pw, one_minus_x)
        lhs = _poly_add(lhs, _poly_scale(c, _poly_mul(term, pw)))
    rhs: list = []
    for k in range(i + 1):
        c = factorial(k) * comb(i, k) * comb(j, k) * pochhammer(beta, i) / pochhammer(beta, k)
        rhs = _poly_add(rhs, _poly_scale(c, [Fraction(0)] * (i - k) + [Fraction(1)]))
    return _poly_trim(lhs) == _poly_trim(rhs)


def metric_at_point(spec: KernelSpec, z: ComplexRational):
    """h(z) = K(z,z)^t evaluated exactly; needs integer Szego exponents,
    i.e. alpha + beta an integer."""
    spec.require_bidisc()
    d = spec.dim
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            # h_{ij} = K(z,z)_{ji}
            row.append(jet_entry_closed_form(spec, j, i).eval_exact(z, z))
        rows.append(tuple(row))
    return mat(rows)


def quasi_invariance_at_zero(
    spec: KernelSpec, g: MobiusElement, mode: str = "exact", tol: float = 1e-10
) -> bool:
    """Transformation rule at the origin:

        h(g(0)) = conj(J_g(0))^t h(0) J_g(0),

    with h the jet metric.  Checking at 0 suffices: the rule at a general
    point follows by composing with an element that moves 0 there.
    """
    spec.require_bidisc()
    d = spec.dim
    if mode == "exact":
        z0 = mobius_apply(g, CPLX_ZERO)
        lhs = metric_at_point(spec, z0)
        jm = jmatrix(spec, g, CPLX_ZERO, "exact")
        h0 = metric_at_point(spec, CPLX_ZERO)
        rhs = mat_mul(mat_mul(mat_conj_transpose(jm), h0), jm)
        return all(x == y for ra, rb in zip(lhs, rhs) for x, y in zip(ra, rb))
    z0 = complex(mobius_apply(g, CPLX_ZERO))
    lhs_rows = []
    for i in range(d):
        lhs_rows.append(
            tuple(jet_entry_closed_form(spec, j, i).eval_numeric(z0, z0) for j in range(d))
        )
    jm = jmatrix(spec, g, 0j, "numeric")
    h0 = [
        [float(factorial(i) * pochhammer(spec.beta, i)) if i == j else 0.0 for j in range(d)]
        for i in range(d)
    ]
    rhs = mat_mul(mat_mul(mat_conj_transpose(mat(jm)), mat(h0)), mat(jm))
    dev = max(abs(x - y) for ra, rb in zip(lhs_rows, rhs) for x, y in zip(ra, rb))
    return dev < tol


def scalar_cocycle_check(
    exponent, g: MobiusElement, z: ComplexRational, w: ComplexRational,
    mode: str = "exact", tol: float = 1e-10,
) -> bool:
    """Transformation law of the scalar kernel (1 - z wbar)^{-2 e}:

        (1 - z wbar)^{-2e} = c(g,z)^e (1 - g(z) conj(g(w)))^{-2e} conj(c(g,w))^e.
    """
    e = as_rational(exponent)
    if mode == "exact":
        if e.denominator != 1:
            raise ValueError("exact mode needs an integer exponent")
        ei = int(e)
        lhs = (CPLX_ONE - z * w.conjugate()) ** (-2 * ei)
        gz, gw = mobius_apply(g, z), mobius_apply(g, w)
        rhs = (
            cocycle_c(g, z) ** ei
            * (CPLX_ONE - gz * gw.conjugate()) ** (-2 * ei)
            * cocycle_c(g, w).conjugate() ** ei
        )
        return lhs == rhs
    ef = float(e)
    zc, wc = complex(z), complex(w)
    s, b = complex(g.t), complex(g.a)

    def cval(x):
        return s * (1 - abs(b) ** 2) / (1 - b.conjugate() * x) ** 2

    def gval(x):
        return s * (x - b) / (1 - b.conjugate() * x)

    lhs = (1 - zc * wc.conjugate()) ** (-2 * ef)
    rhs = (
        cmath.exp(ef * cmath.log(cval(zc)))
        * (1 - gval(zc) * gval(wc).conjugate()) ** (-2 * ef)
        * cmath.exp(ef * cmath.log(cval(wc)).conjugate())
    )
    return abs(lhs - rhs) < tol


# ---------------------------------------------------------------------------
# Seeded random generators for the verification suites
# ---------------------------------------------------------------------------


def random_point(rng: Random, radius_bound: Fraction = Fraction(7, 10), max_den: int = 8) -> ComplexRational:
    """Random exact disc point with |z| <= radius_bound (rejection sampling)."""
    bound2 = radius_bound * radius_bound
    while True:
        re = Fraction(rng.randint(-max_den, max_den), rng.randint(1, max_den))
        im = Fraction(rng.randint(-max_den, max_den), rng.randint(1, max_den))
        z = ComplexRational(re, im)
        if z.abs2() <= bound2:
            return z


def random_element(
    rng: Random,
    radius_bound: Fraction = Fraction(7, 10),
    max_den: int = 8,
    circle_bound: Fraction | None = None,
) -> MobiusElement:
    """Random element; ``circle_bound`` caps |s| in the circle parametrization,
    which keeps t near 1 (needed by the principal-branch numeric checks)."""
    while True:
        s = Fraction(rng.randint(-max_den, max_den), rng.randint(1, max_den))
        if circle_bound is None or abs(s) <= circle_bound:
            break
    return MobiusElement.from_circle_param(s, random_point(rng, radius_bound, max_den))
