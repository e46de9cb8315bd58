"""Baxter-Belavin elliptic R-matrices in the clock-and-shift basis.

The sine-algebra basis of Mat(N) consists of the N^2 matrices

    T_a = exp(pi*i*a1*a2/N) Q^{a1} L^{a2},
    Q_kl = delta_kl exp(2*pi*i*k/N),   L_kl = delta_{k-l+1 = 0 mod N},

with k, l in {1..N}, multiplying as T_a T_b = kappa_{a,b} T_{a+b} with
kappa_{a,b} = exp(pi*i*(b1*a2 - b2*a1)/N).  The attached basis functions

    varphi_a(h + Omega_a, z) = exp(2*pi*i*a2*z/N) phi(h + Omega_a, z),
    Omega_a = (a1 + a2*tau)/N,

are invariant under index shifts a -> a + N in either component, and

    R_12^h(z) = sum_a T_a (x) T_{-a} varphi_a(h + Omega_a, z)

is the quantum elliptic R-matrix.  This module provides the basis, the
R-matrix and classical r-matrix, and operator-valued residuals for the
associative, quantum and classical Yang-Baxter equations, unitarity
against N^2*(wp(N*h) - wp(z)), and the cubic exchange identity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .elliptic import (
    EllipticContext,
    Residual,
    kronecker_jet,
    kronecker_value,
    lattice_distance,
    weierstrass,
)
from .errors import PoleProximity

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class BasisIndex:
    """Index pair of a sine-algebra basis matrix, kept unreduced so that
    shift identities can be expressed."""

    a1: int
    a2: int

    def omega(self, tau: complex, n: int) -> complex:
        return (self.a1 + self.a2 * tau) / n

    def reduced(self, n: int) -> BasisIndex:
        return BasisIndex(self.a1 % n, self.a2 % n)

    def __neg__(self) -> BasisIndex:
        return BasisIndex(-self.a1, -self.a2)

    def __add__(self, other: BasisIndex) -> BasisIndex:
        return BasisIndex(self.a1 + other.a1, self.a2 + other.a2)

    def __sub__(self, other: BasisIndex) -> BasisIndex:
        return BasisIndex(self.a1 - other.a1, self.a2 - other.a2)


@dataclass
class SquareOperator:
    """Dense operator on an n-fold tensor product of C^N factors."""

    matrix: np.ndarray
    n: int
    slots: tuple[int, ...]

    def norm(self) -> float:
        return float(np.abs(self.matrix).max()) if self.matrix.size else 0.0


def basis_indices(n: int) -> list[BasisIndex]:
    return [BasisIndex(a1, a2) for a1 in range(n) for a2 in range(n)]


def t_matrix(n: int, a: BasisIndex) -> SquareOperator:
    """Basis matrix T_a for arbitrary (unreduced) integer index."""
    if n < 1:
        raise ValueError("n must be >= 1")
    phase = cmath.exp(1j * math.pi * a.a1 * a.a2 / n)
    mat = np.zeros((n, n), dtype=complex)
    for row in range(n):
        k = row + 1
        col = (k + a.a2 - 1) % n  # column l with k - l + a2 = 0 mod n
        mat[row, col] = phase * cmath.exp(TWO_PI_I * k * a.a1 / n)
    return SquareOperator(mat, n, (1,))


def structure_constant(n: int, alpha: BasisIndex, beta: BasisIndex) -> complex:
    """kappa_{alpha,beta} in T_alpha T_beta = kappa_{alpha,beta} T_{alpha+beta}."""
    return cmath.exp(1j * math.pi * (beta.a1 * alpha.a2 - beta.a2 * alpha.a1) / n)


def permutation_operator(n: int) -> np.ndarray:
    """P_12 on C^N (x) C^N, swapping the two factors."""
    p = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            p[i * n + j, j * n + i] = 1.0
    return p


def varphi(ctx: EllipticContext, n: int, a: BasisIndex, h: complex, z: complex,
           d_h: int = 0, total_tau: int = 0) -> complex:
    """Basis function derivative d_h^{d_h} (d/dtau)^{total_tau} varphi_a.

    The tau derivative is total: it includes the chain term through
    Omega_a(tau), i.e. acts as d_tau + (a2/n) d_h on the phi factor.
    """
    if total_tau not in (0, 1):
        raise ValueError("total_tau must be 0 or 1")
    omega = a.omega(ctx.tau, n)
    pref = cmath.exp(TWO_PI_I * a.a2 * z / n)
    if total_tau == 0 and d_h == 0:
        return pref * kronecker_value(ctx, h + omega, z)
    jet = kronecker_jet(ctx, h + omega, z, (d_h + total_tau, 0, total_tau))
    val = jet[d_h, 0, 0] * math.factorial(d_h)
    if total_tau == 1:
        val = jet[d_h, 0, 1] * math.factorial(d_h) + (a.a2 / n) * jet[
            d_h + 1, 0, 0
        ] * math.factorial(d_h + 1)
    return pref * complex(val)


def _phi_values(ctx: EllipticContext, n: int, h: complex, z: complex) -> np.ndarray:
    """varphi_a(h + Omega_a, z) for all a in the reduced index grid."""
    vals = np.empty(n * n, dtype=complex)
    for i, a in enumerate(basis_indices(n)):
        omega = a.omega(ctx.tau, n)
        if lattice_distance(h + omega, ctx.tau) <= ctx.pole_margin:
            raise PoleProximity(
                f"h + Omega_a for a=({a.a1},{a.a2})",
                lattice_distance(h + omega, ctx.tau),
                ctx.pole_margin,
            )
        vals[i] = cmath.exp(TWO_PI_I * a.a2 * z / n) * kronecker_value(ctx, h + omega, z)
    return vals


def _t_pairs(n: int) -> list[np.ndarray]:
    """kron(T_a, T_{-a}) for all a in the reduced grid (cache-worthy but
    cheap at n <= 5)."""
    return [
        np.kron(t_matrix(n, a).matrix, t_matrix(n, -a).matrix) for a in basis_indices(n)
    ]


def quantum_R(ctx: EllipticContext, n: int, h: complex, z: complex) -> SquareOperator:
    """Quantum elliptic R-matrix on C^N (x) C^N."""
    vals = _phi_values(ctx, n, h, z)
    mat = np.zeros((n * n, n * n), dtype=complex)
    for pair, v in zip(_t_pairs(n), vals):
        mat += v * pair
    return SquareOperator(mat, n, (1, 2))


def classical_r(ctx: EllipticContext, n: int, z: complex) -> SquareOperator:
    """Classical elliptic r-matrix: the alpha != 0 part of the basis sum
    at vanishing spectral shift h = 0."""
    mat = np.zeros((n * n, n * n), dtype=complex)
    for a, pair in zip(basis_indices(n), _t_pairs(n)):
        if a.a1 == 0 and a.a2 == 0:
            continue
        omega = a.omega(ctx.tau, n)
        if lattice_distance(omega, ctx.tau) <= ctx.pole_margin:
            raise PoleProximity(
                f"Omega_a for a=({a.a1},{a.a2})",
                lattice_distance(omega, ctx.tau),
                ctx.pole_margin,
            )
        mat += cmath.exp(TWO_PI_I * a.a2 * z / n) * kronecker_value(ctx, omega, z) * pair
    return SquareOperator(mat, n, (1, 2))


def two_site(pair: np.ndarray, n: int, slot_a: int, slot_b: int,
             total: int = 3) -> np.ndarray:
    """Embed an operator on factors (slot_a, slot_b) into the full
    product, identity elsewhere.  The pair matrix's first factor acts on
    slot_a, the second on slot_b; slots are 1-based."""
    dims = (n,) * total
    pair4 = pair.reshape(n, n, n, n)
    full = np.zeros(dims * 2, dtype=complex)
    spare = [s for s in range(1, total + 1) if s not in (slot_a, slot_b)]
    idx = np.arange(n)
    grids = np.meshgrid(*([idx] * (2 * total)), indexing="ij")
    ia, ib = grids[slot_a - 1], grids[slot_b - 1]
    ja, jb = grids[total + slot_a - 1], grids[total + slot_b - 1]
    weight = pair4[ia, ib, ja, jb]
    for s in spare:
        weight = weight * (grids[s - 1] == grids[total + s - 1])
    full[...] = weight
    return full.reshape(n**total, n**total)


def _r_slots(ctx: EllipticContext, n: int, h: complex, z: complex,
             slot_a: int, slot_b: int, total: int = 3) -> np.ndarray:
    return two_site(quantum_R(ctx, n, h, z).matrix, n, slot_a, slot_b, total)


def aybe_residual(ctx: EllipticContext, n: int, h1: complex, h2: complex,
                  z1: complex, z2: complex, z3: complex) -> Residual:
    """Associative Yang-Baxter residual

        R_12^{h1}(z12) R_23^{h2}(z23) + R_31^{-h2}(z31) R_12^{h1-h2}(z12)
        + R_23^{h2-h1}(z23) R_31^{-h1}(z31).
    """
    z12, z23, z31 = z1 - z2, z2 - z3, z3 - z1
    t1 = _r_slots(ctx, n, h1, z12, 1, 2) @ _r_slots(ctx, n, h2, z23, 2, 3)
    t2 = _r_slots(ctx, n, -h2, z31, 3, 1) @ _r_slots(ctx, n, h1 - h2, z12, 1, 2)
    t3 = _r_slots(ctx, n, h2 - h1, z23, 2, 3) @ _r_slots(ctx, n, -h1, z31, 3, 1)
    scale = max(np.abs(t1).max(), np.abs(t2).max(), np.abs(t3).max())
    return Residual(SquareOperator(t1 + t2 + t3, n, (1, 2, 3)), float(scale))


def qybe_residual(ctx: EllipticContext, n: int, h: complex,
                  z1: complex, z2: complex, z3: complex) -> Residual:
    """Quantum Yang-Baxter residual R12 R13 R23 - R23 R13 R12 at equal h."""
    r12 = _r_slots(ctx, n, h, z1 - z2, 1, 2)
    r13 = _r_slots(ctx, n, h, z1 - z3, 1, 3)
    r23 = _r_slots(ctx, n, h, z2 - z3, 2, 3)
    lhs = r12 @ r13 @ r23
    rhs = r23 @ r13 @ r12
    scale = max(np.abs(lhs).max(), np.abs(rhs).max())
    return Residual(SquareOperator(lhs - rhs, n, (1, 2, 3)), float(scale))


def cybe_residual(ctx: EllipticContext, n: int,
                  z1: complex, z2: complex, z3: complex) -> Residual:
    """Classical Yang-Baxter residual [r12,r13] + [r12,r23] + [r13,r23]."""
    r12 = two_site(classical_r(ctx, n, z1 - z2).matrix, n, 1, 2)
    r13 = two_site(classical_r(ctx, n, z1 - z3).matrix, n, 1, 3)
    r23 = two_site(classical_r(ctx, n, z2 - z3).matrix, n, 2, 3)
    pairs = [(r12, r13), (r12, r23), (r13, r23)]
    value = np.zeros_like(r12)
    scale = 0.0
    for x, y in pairs:
        xy, yx = x @ y, y @ x
        value += xy - yx
        scale = max(scale, np.abs(xy).max(), np.abs(yx).max())
    return Residual(SquareOperator(value, n, (1, 2, 3)), float(scale))


def unitarity_factor(ctx: EllipticContext, n: int, h: complex, z: complex) -> complex:
    """The normalization N^2 * (wp(N*h) - wp(z))."""
    return n * n * (weierstrass(ctx, n * h) - weierstrass(ctx, z))


def unitarity_residual(ctx: EllipticContext, n: int, h: complex, z: complex) -> Residual:
    """R_12^h(z) R_21^h(-z) - N^2*(wp(N*h) - wp(z)) * Id."""
    r12 = quantum_R(ctx, n, h, z).matrix
    swap = permutation_operator(n)
    r21 = swap @ quantum_R(ctx, n, h, -z).matrix @ swap
    prod = r12 @ r21
    f = unitarity_factor(ctx, n, h, z)
    value = prod - f * np.eye(n * n)
    scale = max(np.abs(prod).max(), abs(f))
    return Residual(SquareOperator(value, n, (1, 2)), float(scale))


def cubic_identity_residual(ctx: EllipticContext, n: int, h: complex,
                            z1: complex, z2: complex, z3: complex) -> Residual:
    """Residual of the cubic exchange identity

        R_23^h R_13^h R_12^h = R_23^h R_12^{2h} R_23^h
                               + N^2*(wp(N*h) - wp(z23)) R_13^{2h}.
    """
    r23 = _r_slots(ctx, n, h, z2 - z3, 2, 3)
    r13 = _r_slots(ctx, n, h, z1 - z3, 1, 3)
    r12 = _r_slots(ctx, n, h, z1 - z2, 1, 2)
    r12_2h = _r_slots(ctx, n, 2 * h, z1 - z2, 1, 2)
    r13_2h = _r_slots(ctx, n, 2 * h, z1 - z3, 1, 3)
    f = unitarity_factor(ctx, n, h, z2 - z3)
    t1 = r23 @ r13 @ r12
    t2 = r23 @ r12_2h @ r23
    t3 = f * r13_2h
    scale = max(np.abs(t1).max(), np.abs(t2).max(), np.abs(t3).max())
    return Residual(SquareOperator(t1 - t2 - t3, n, (1, 2, 3)), float(scale))
