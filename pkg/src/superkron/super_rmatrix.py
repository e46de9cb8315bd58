"""Odd supersymmetric elliptic R-matrices.

Attaches the five-term odd ansatz to the sine-algebra basis functions:

    Phi_a(h + Omega_a | mu)(z_i, z_j | zeta_i, zeta_j | A, B)
      = [A1 (zeta_i - zeta_j) + A2 omega d_h + A3 zeta_i zeta_j omega d_tau
         + A4 zeta_i zeta_j mu d_h + (A5/2)(zeta_i + zeta_j) mu omega d_h^2]
            varphi_a(h + Omega_a, z_ij)
        + B (a2/N) zeta_i zeta_j omega d_h varphi_a(h + Omega_a, z_ij),

where d_tau holds the first argument fixed; at B = A3 the A3 and B
terms reassemble the total tau-derivative through Omega_a(tau), and the
functions become invariant under index shifts a -> a + N (the a2 shift
residual is proportional to (B - A3) zeta_i zeta_j omega d_h varphi_a).

The odd R-matrix is

    R_ij^{h|mu} = sum_a T_a(slot i) T_{-a}(slot j) Phi_a(... | A, B=A3),

an odd element with matrix coefficients on the full triple tensor
product (identity in the spare slot, so graded operator products are
plain exterior-algebra multiplications).  Generator binding is fixed:
tensor slot k carries zeta_k.

Provided residuals: the associative Yang-Baxter equation, the symmetry
R_ij^{h|mu} = R_ji^{-h|-mu}, unitarity with the nilpotent factor
A1*A2*(zeta_i - zeta_j)*omega*N^3*wp'(N*h) + A1*A5*zeta_i*zeta_j*mu*
omega*N^4*wp''(N*h), the two modified quantum Yang-Baxter equations,
and the classical super Yang-Baxter equation in anticommutators.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ansatz import AnsatzCoefficients, OddLike, odd_element
from .elliptic import EllipticContext, Residual, kronecker_jet, weierstrass
from .errors import ConstraintViolated
from .grassmann import (
    OMEGA,
    ZETAS,
    GrassmannElement,
    gmul,
    gscale,
)
from .rmatrix import BasisIndex, basis_indices, t_matrix, two_site

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class SuperBasisParams:
    """Ansatz coefficients plus the free basis-function constant B."""

    a: AnsatzCoefficients
    b: complex

    def shift_invariant(self, rtol: float = 1e-9) -> bool:
        """Index-shift invariance holds iff B = A3."""
        return abs(self.b - self.a.a3) <= rtol * max(abs(self.a.a3), 1.0)


@dataclass
class SuperOperator:
    """Odd operator-valued exterior-algebra element with slot metadata."""

    element: GrassmannElement
    n: int
    slots: tuple[int, int]
    total: int = 3

    @property
    def dim(self) -> int:
        return self.n**self.total

    def norm(self) -> float:
        return self.element.max_abs()


def _zeta(slot: int) -> GrassmannElement:
    return GrassmannElement.from_generator(ZETAS[slot - 1])


def super_basis_phi(ctx: EllipticContext, n: int, params: SuperBasisParams,
                    a: BasisIndex, h: complex, mu: Optional[OddLike], i: int, j: int,
                    z_i: complex, z_j: complex) -> GrassmannElement:
    """Scalar super basis function for one index a and slot pair (i, j)."""
    mu_e = odd_element(mu) if mu is not None else GrassmannElement.zero()
    zi, zj = _zeta(i), _zeta(j)
    om = GrassmannElement.from_generator(OMEGA)
    cs = params.a

    z_ij = z_i - z_j
    u = h + a.omega(ctx.tau, n)
    jet = kronecker_jet(ctx, u, z_ij, (2, 0, 1))
    phi = jet[0, 0, 0]
    d1 = jet[1, 0, 0]
    d2 = 2.0 * jet[2, 0, 0]
    dt = jet[0, 0, 1]
    pref = cmath.exp(TWO_PI_I * a.a2 * z_ij / n)

    zz_om = gmul(gmul(zi, zj), om)
    out = gscale(pref * cs.a1 * phi, zi - zj)
    out = out + gscale(pref * cs.a2 * d1, om)
    out = out + gscale(pref * (cs.a3 * dt + params.b * (a.a2 / n) * d1), zz_om)
    if mu_e.terms:
        out = out + gscale(pref * cs.a4 * d1, gmul(gmul(zi, zj), mu_e))
        out = out + gscale(pref * cs.a5 * d2 / 2.0, gmul(gmul(zi + zj, mu_e), om))
    return out


def shift_residual(ctx: EllipticContext, n: int, params: SuperBasisParams,
                   a: BasisIndex, h: complex, mu: OddLike, i: int, j: int,
                   z_i: complex, z_j: complex, direction: int = 2) -> Residual:
    """Difference of the basis function across an index shift a -> a + N.

    The a1 shift vanishes for any B; the a2 shift is proportional to
    (B - A3) zeta_i zeta_j omega d_h varphi_a and vanishes iff B = A3.
    """
    if direction not in (1, 2):
        raise ValueError("direction must be 1 or 2")
    shifted = BasisIndex(a.a1 + n, a.a2) if direction == 1 else BasisIndex(a.a1, a.a2 + n)
    f0 = super_basis_phi(ctx, n, params, a, h, mu, i, j, z_i, z_j)
    f1 = super_basis_phi(ctx, n, params, shifted, h, mu, i, j, z_i, z_j)
    return Residual(f1 - f0, max(f0.max_abs(), f1.max_abs()))


def _lift(scalar_elem: GrassmannElement, dim: int) -> GrassmannElement:
    """Scalar exterior element times the identity operator."""
    eye = np.eye(dim, dtype=complex)
    return GrassmannElement(
        ("matrix", dim), {m: c * eye for m, c in scalar_elem.terms.items()}
    )


def super_R(ctx: EllipticContext, n: int, a: AnsatzCoefficients, h: complex,
            mu: OddLike, i: int, j: int, z_i: complex, z_j: complex,
            total: int = 3) -> SuperOperator:
    """Odd elliptic R-matrix on slots (i, j), with B fixed to A3."""
    params = SuperBasisParams(a, a.a3)
    dim = n**total
    terms: dict[int, np.ndarray] = {}
    for alpha in basis_indices(n):
        sbp = super_basis_phi(ctx, n, params, alpha, h, mu, i, j, z_i, z_j)
        pair = np.kron(t_matrix(n, alpha).matrix, t_matrix(n, -alpha).matrix)
        emb = two_site(pair, n, i, j, total)
        for mask, c in sbp.terms.items():
            if mask in terms:
                terms[mask] = terms[mask] + c * emb
            else:
                terms[mask] = c * emb
    return SuperOperator(GrassmannElement(("matrix", dim), terms), n, (i, j), total)


def super_aybe_residual(ctx: EllipticContext, n: int, a: AnsatzCoefficients,
                        h1: complex, h2: complex, mu1: OddLike, mu2: OddLike,
                        z1: complex, z2: complex, z3: complex) -> Residual:
    """Associative Yang-Baxter residual for the odd R-matrix; vanishes
    iff A1*A5 = A2*A4."""
    m1, m2 = odd_element(mu1), odd_element(mu2)

    def rr(h, mu, i, j, zi, zj):
        return super_R(ctx, n, a, h, mu, i, j, zi, zj).element

    t1 = gmul(rr(h1, m1, 1, 2, z1, z2), rr(h2, m2, 2, 3, z2, z3))
    t2 = gmul(rr(-h2, -m2, 3, 1, z3, z1), rr(h1 - h2, m1 - m2, 1, 2, z1, z2))
    t3 = gmul(rr(h2 - h1, m2 - m1, 2, 3, z2, z3), rr(-h1, -m1, 3, 1, z3, z1))
    value = t1 + t2 + t3
    return Residual(value, max(t.max_abs() for t in (t1, t2, t3)))


def super_symmetry_residual(ctx: EllipticContext, n: int, a: AnsatzCoefficients,
                            h: complex, mu: OddLike, i: int, j: int,
                            z_i: complex, z_j: complex) -> Residual:
    """Residual of R_ij^{h|mu}(z_i, z_j) = R_ji^{-h|-mu}(z_j, z_i).

    The non-super skew-symmetry loses its overall sign because the odd
    R-matrix has odd parity; both spectral-type arguments flip.
    """
    mu_e = odd_element(mu)
    lhs = super_R(ctx, n, a, h, mu_e, i, j, z_i, z_j).element
    rhs = super_R(ctx, n, a, -h, -mu_e, j, i, z_j, z_i).element
    return Residual(lhs - rhs, max(lhs.max_abs(), rhs.max_abs()))


def _unitarity_prefactor(ctx: EllipticContext, n: int, a: AnsatzCoefficients,
                         h: complex, mu_e: GrassmannElement, i: int,
                         j: int) -> GrassmannElement:
    """A1*A2*(zeta_i - zeta_j)*omega*N^3*wp'(N h)
    + A1*A5*zeta_i*zeta_j*mu*omega*N^4*wp''(N h)."""
    zi, zj = _zeta(i), _zeta(j)
    om = GrassmannElement.from_generator(OMEGA)
    wp1 = weierstrass(ctx, n * h, 1)
    wp2 = weierstrass(ctx, n * h, 2)
    out = gscale(a.a1 * a.a2 * n**3 * wp1, gmul(zi - zj, om))
    if mu_e.terms:
        out = out + gscale(
            a.a1 * a.a5 * n**4 * wp2, gmul(gmul(gmul(zi, zj), mu_e), om)
        )
    return out


def super_unitarity_residual(ctx: EllipticContext, n: int, a: AnsatzCoefficients,
                             h: complex, mu: OddLike, z: complex,
                             i: int = 1, j: int = 2) -> Residual:
    """Residual of R_ij^{h|mu} R_ji^{h|mu} minus its nilpotent
    identity-multiple; requires A1*A5 = A2*A4."""
    if not a.fay_compatible():
        raise ConstraintViolated("unitarity requires A1*A5 = A2*A4")
    mu_e = odd_element(mu)
    r_ij = super_R(ctx, n, a, h, mu_e, i, j, z, 0.0)
    r_ji = super_R(ctx, n, a, h, mu_e, j, i, 0.0, z)
    prod = gmul(r_ij.element, r_ji.element)
    target = _lift(_unitarity_prefactor(ctx, n, a, h, mu_e, i, j), r_ij.dim)
    return Residual(prod - target, max(prod.max_abs(), target.max_abs()))


def modified_qybe_residuals(ctx: EllipticContext, n: int, a: AnsatzCoefficients,
                            h: complex, mu: OddLike, z1: complex, z2: complex,
                            z3: complex) -> tuple[Residual, Residual]:
    """Residuals of the two quantum Yang-Baxter equations with extra terms:

        R12 R13 R23 - R23 R13 R12
            - 2*(unitarity prefactor on slots 2,3 at h) R13^{2h|2mu}
        R12 R13 R23 + R23 R13 R12 + 2 R23 R12^{2h|2mu} R23.

    Requires A1*A5 = A2*A4 (the unitarity substitution assumes it).
    """
    if not a.fay_compatible():
        raise ConstraintViolated("modified Yang-Baxter requires A1*A5 = A2*A4")
    mu_e = odd_element(mu)
    mu2 = 2.0 * mu_e

    r12 = super_R(ctx, n, a, h, mu_e, 1, 2, z1, z2).element
    r13 = super_R(ctx, n, a, h, mu_e, 1, 3, z1, z3).element
    r23 = super_R(ctx, n, a, h, mu_e, 2, 3, z2, z3).element
    r13_2h = super_R(ctx, n, a, 2 * h, mu2, 1, 3, z1, z3).element
    r12_2h = super_R(ctx, n, a, 2 * h, mu2, 1, 2, z1, z2).element

    lhs = gmul(gmul(r12, r13), r23)
    rhs = gmul(gmul(r23, r13), r12)
    dim = n**3
    extra1 = 2.0 * gmul(_lift(_unitarity_prefactor(ctx, n, a, h, mu_e, 2, 3), dim), r13_2h)
    extra2 = 2.0 * gmul(gmul(r23, r12_2h), r23)

    res1 = Residual(
        lhs - rhs - extra1,
        max(lhs.max_abs(), rhs.max_abs(), extra1.max_abs()),
    )
    res2 = Residual(
        lhs + rhs + extra2,
        max(lhs.max_abs(), rhs.max_abs(), extra2.max_abs()),
    )
    return res1, res2


def super_classical_r(ctx: EllipticContext, n: int, a: AnsatzCoefficients,
                      i: int, j: int, z_i: complex, z_j: complex,
                      total: int = 3) -> SuperOperator:
    """Odd classical r-matrix: the alpha != 0 basis sum at h = 0 with the
    odd partner mu removed, which forces A4 = A5 = 0."""
    if a.a4 != 0 or a.a5 != 0:
        raise ConstraintViolated("classical super r-matrix requires A4 = A5 = 0")
    params = SuperBasisParams(a, a.a3)
    dim = n**total
    terms: dict[int, np.ndarray] = {}
    for alpha in basis_indices(n):
        if alpha.a1 == 0 and alpha.a2 == 0:
            continue
        sbp = super_basis_phi(ctx, n, params, alpha, 0.0, None, i, j, z_i, z_j)
        pair = np.kron(t_matrix(n, alpha).matrix, t_matrix(n, -alpha).matrix)
        emb = two_site(pair, n, i, j, total)
        for mask, c in sbp.terms.items():
            if mask in terms:
                terms[mask] = terms[mask] + c * emb
            else:
                terms[mask] = c * emb
    return SuperOperator(GrassmannElement(("matrix", dim), terms), n, (i, j), total)


def super_cybe_residual(ctx: EllipticContext, n: int, a: AnsatzCoefficients,
                        z1: complex, z2: complex, z3: complex) -> Residual:
    """Classical super Yang-Baxter residual in anticommutators:
    {r12, r13} + {r12, r23} + {r13, r23}."""
    r12 = super_classical_r(ctx, n, a, 1, 2, z1, z2).element
    r13 = super_classical_r(ctx, n, a, 1, 3, z1, z3).element
    r23 = super_classical_r(ctx, n, a, 2, 3, z2, z3).element
    value = None
    scale = 0.0
    for x, y in ((r12, r13), (r12, r23), (r13, r23)):
        xy, yx = gmul(x, y), gmul(y, x)
        anti = xy + yx
        value = anti if value is None else value + anti
        scale = max(scale, xy.max_abs(), yx.max_abs())
    return Residual(value, scale)
