"""Elliptic special functions on the curve C/(Z + tau*Z).

Implements the odd theta function as a truncated half-integer series,
the Kronecker elliptic function

    phi(h, z) = theta'(0) * theta(h + z) / (theta(h) * theta(z)),

its mixed partial derivatives in (h, z, tau) via truncated-jet
arithmetic, Weierstrass p-functions through the second derivative, and
scalar residual checks for the genus-one Fay trisecant identity and the
heat equation 2*pi*i*d_tau phi = d_z d_h phi.

phi has unit residue at z = 0 and satisfies

    phi(h, z + 1) = phi(h, z),    phi(h, z + tau) = exp(-2*pi*i*h) phi(h, z),

and is symmetric in its two arguments, which yields the same
quasi-periodicity in h with exp(-2*pi*i*z) factors.  Arguments are
reduced to the fundamental cell before series evaluation and the
quasi-periodicity factors are multiplied back, keeping the series
well-conditioned for arbitrary inputs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import jets
from ._kernels import theta_series
from .errors import PoleProximity, TailTooLarge

TWO_PI_I = 2j * math.pi

# Jet depth: h-order 4, z-order 2, tau-order 1.  The deepest orders the
# identity checks demand are d1^3 d2 and d_tau d1^2.
MAX_M, MAX_N, MAX_T = 4, 2, 1


@dataclass(frozen=True)
class EllipticContext:
    """Evaluation environment: modulus, truncation, and tolerances."""

    tau: complex
    cutoff: int = 20
    tol: float = 1e-9
    pole_margin: float = 1e-3

    def __post_init__(self):
        if complex(self.tau).imag <= 0:
            raise ValueError(f"Im(tau) must be positive, got {self.tau}")
        if self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not self.pole_margin > 0:
            raise ValueError("pole_margin must be positive")


@dataclass(frozen=True)
class DerivOrder:
    """Mixed partial order: m in h, n in z, t in tau."""

    m: int = 0
    n: int = 0
    t: int = 0

    def __post_init__(self):
        if not (0 <= self.m <= MAX_M and 0 <= self.n <= MAX_N and 0 <= self.t <= MAX_T):
            raise ValueError(
                f"derivative order ({self.m},{self.n},{self.t}) outside "
                f"supported box ({MAX_M},{MAX_N},{MAX_T})"
            )


class Residual(NamedTuple):
    """A residual value together with the pre-cancellation scale."""

    value: object
    scale: float


def _reduce_point(z: complex, tau: complex) -> tuple[complex, int, int]:
    """Split z = z0 + q + p*tau with z0 in the centered fundamental cell."""
    z = complex(z)
    p = round(z.imag / tau.imag)
    w = z - p * tau
    q = round(w.real)
    return w - q, p, q


def lattice_distance(z: complex, tau: complex) -> float:
    """Distance from z to the nearest point of Z + tau*Z."""
    z0, _, _ = _reduce_point(z, tau)
    corners = (0, 1, -1, tau, -tau, 1 + tau, -1 - tau, 1 - tau, -1 + tau)
    return min(abs(z0 - c) for c in corners)


def _check_regular(ctx: EllipticContext, label: str, z: complex) -> None:
    d = lattice_distance(z, ctx.tau)
    if d <= ctx.pole_margin:
        raise PoleProximity(label, d, ctx.pole_margin)


def _theta_table(ctx: EllipticContext, z: complex, max_dz: int, max_dt: int) -> np.ndarray:
    """Theta derivative table with a truncation-tail check."""
    vals, tails = theta_series(complex(z), complex(ctx.tau), ctx.cutoff, max_dz, max_dt)
    if np.any(tails > ctx.tol * np.abs(vals)):
        raise TailTooLarge(
            f"theta series tail exceeds tol*|sum| at z={z}, tau={ctx.tau}, "
            f"cutoff={ctx.cutoff}"
        )
    return vals


def theta(ctx: EllipticContext, z: complex, n_z: int = 0, n_tau: int = 0) -> complex:
    """d^{n_z}/dz^{n_z} d^{n_tau}/dtau^{n_tau} of the odd theta function.

    Computed by term-wise differentiation of the defining series,
    truncated at |k + 1/2| <= ctx.cutoff.  Supports n_z <= 6 and
    n_tau <= 1 (the orders the downstream quotient rules require).
    """
    if not (0 <= n_z <= 6 and 0 <= n_tau <= 1):
        raise ValueError(f"unsupported theta derivative order ({n_z},{n_tau})")
    return complex(_theta_table(ctx, z, n_z, n_tau)[n_z, n_tau])


def _theta_jet(ctx: EllipticContext, w: np.ndarray) -> np.ndarray:
    """Jet of theta(w; tau + dt) for a jet-valued argument w."""
    shape = w.shape
    w0 = w[0, 0, 0]
    delta = w.copy()
    delta[0, 0, 0] = 0.0
    order = jets.max_order(shape)
    vals = _theta_table(ctx, w0, order, shape[2] - 1)

    out = jets.jet_const(shape, vals[0, 0])
    tau_part = jets.jet_const(shape, vals[0, 1]) if shape[2] > 1 else None
    power = jets.jet_const(shape, 1.0)
    for j in range(1, order + 1):
        power = jets.jet_mul(power, delta)
        if not power.any():
            break
        out = out + power * (vals[j, 0] / math.factorial(j))
        if tau_part is not None:
            tau_part = tau_part + power * (vals[j, 1] / math.factorial(j))
    if tau_part is not None:
        dt = jets.jet_const(shape, 0.0)
        dt[0, 0, 1] = 1.0
        out = out + jets.jet_mul(tau_part, dt)
    return out


def kronecker_jet(ctx: EllipticContext, h: complex, z: complex,
                  orders: tuple[int, int, int]) -> np.ndarray:
    """Taylor jet of phi at (h, z, tau) up to the given (m, n, t) box.

    Entry [i, j, s] is the Taylor coefficient; the derivative of order
    (i, j, s) is the entry times i!*j!*s!.
    """
    _check_regular(ctx, "h", h)
    _check_regular(ctx, "z", z)
    _check_regular(ctx, "h+z", h + z)
    shape = (orders[0] + 1, orders[1] + 1, orders[2] + 1)
    tau = complex(ctx.tau)

    z0c, pz, qz = _reduce_point(z, tau)
    h0c, ph, qh = _reduce_point(h, tau)

    tau_jet = jets.jet_var(shape, tau, jets.AXIS_T)
    h_jet = jets.jet_var(shape, h, jets.AXIS_H)
    z_jet = jets.jet_var(shape, z, jets.AXIS_Z)
    z0 = z_jet - pz * tau_jet
    z0[0, 0, 0] -= qz
    h0 = h_jet - ph * tau_jet
    h0[0, 0, 0] -= qh

    tp = _theta_table(ctx, 0.0, 1, shape[2] - 1)
    theta_prime0 = jets.jet_const(shape, tp[1, 0])
    if shape[2] > 1:
        theta_prime0[0, 0, 1] = tp[1, 1]

    num = jets.jet_mul(theta_prime0, _theta_jet(ctx, h0 + z0))
    den = jets.jet_mul(_theta_jet(ctx, h0), _theta_jet(ctx, z0))
    phi = jets.jet_mul(num, jets.jet_inverse(den))
    if pz != 0 or ph != 0:
        pref = jets.jet_exp(-TWO_PI_I * (pz * h_jet + ph * z0))
        phi = jets.jet_mul(pref, phi)
    return phi


def kronecker(ctx: EllipticContext, h: complex, z: complex,
              order: DerivOrder = DerivOrder()) -> complex:
    """Mixed partial d_h^m d_z^n d_tau^t of the Kronecker function."""
    jet = kronecker_jet(ctx, h, z, (order.m, order.n, order.t))
    fac = math.factorial(order.m) * math.factorial(order.n) * math.factorial(order.t)
    return complex(jet[order.m, order.n, order.t]) * fac


def kronecker_value(ctx: EllipticContext, h: complex, z: complex) -> complex:
    """Value-only fast path for phi(h, z)."""
    _check_regular(ctx, "h", h)
    _check_regular(ctx, "z", z)
    _check_regular(ctx, "h+z", h + z)
    tau = complex(ctx.tau)
    z0, pz, qz = _reduce_point(z, tau)
    h0, ph, qh = _reduce_point(h, tau)
    tp = _theta_table(ctx, 0.0, 1, 0)[1, 0]
    num = tp * _theta_table(ctx, h0 + z0, 0, 0)[0, 0]
    den = _theta_table(ctx, h0, 0, 0)[0, 0] * _theta_table(ctx, z0, 0, 0)[0, 0]
    return cmath.exp(-TWO_PI_I * (pz * h + ph * z0)) * num / den


def weierstrass(ctx: EllipticContext, z: complex, d: int = 0) -> complex:
    """Weierstrass p-function (d=0) or its first/second derivative.

    Uses p(z) = -d^2/dz^2 log theta(z) + c(tau), with c(tau) =
    theta'''(0) / (3 theta'(0)) pinned by the Laurent requirement
    p(z) - 1/z^2 -> 0 as z -> 0.
    """
    if d not in (0, 1, 2):
        raise ValueError("d must be 0, 1 or 2")
    _check_regular(ctx, "z", z)
    z0, _, _ = _reduce_point(z, ctx.tau)
    vals = _theta_table(ctx, z0, 2 + d, 0)[:, 0]
    u = vals / vals[0]
    t0 = _theta_table(ctx, 0.0, 3, 0)[:, 0]
    c = t0[3] / (3.0 * t0[1])
    if d == 0:
        return complex(-(u[2] - u[1] ** 2) + c)
    if d == 1:
        return complex(-(u[3] - 3 * u[1] * u[2] + 2 * u[1] ** 3))
    return complex(
        -(u[4] - 4 * u[1] * u[3] - 3 * u[2] ** 2 + 12 * u[1] ** 2 * u[2] - 6 * u[1] ** 4)
    )


def fay_residual(ctx: EllipticContext, h1: complex, h2: complex,
                 z1: complex, z2: complex, z3: complex) -> Residual:
    """Cyclic three-term form of the genus-one Fay trisecant identity.

    Returns phi(h1,z12)phi(h2,z23) + phi(-h2,z31)phi(h1-h2,z12)
    + phi(h2-h1,z23)phi(-h1,z31) together with the largest product
    magnitude as the comparison scale.
    """
    z12, z23, z31 = z1 - z2, z2 - z3, z3 - z1
    t1 = kronecker_value(ctx, h1, z12) * kronecker_value(ctx, h2, z23)
    t2 = kronecker_value(ctx, -h2, z31) * kronecker_value(ctx, h1 - h2, z12)
    t3 = kronecker_value(ctx, h2 - h1, z23) * kronecker_value(ctx, -h1, z31)
    return Residual(t1 + t2 + t3, max(abs(t1), abs(t2), abs(t3)))


def heat_residual(ctx: EllipticContext, h: complex, z: complex) -> Residual:
    """Residual of 2*pi*i*d_tau phi = d_z d_h phi.

    d_tau phi comes from the tau-differentiated theta series, an
    independent direction of the jet, so the check is not circular.
    """
    jet = kronecker_jet(ctx, h, z, (1, 1, 1))
    d_tau = jet[0, 0, 1]
    d_zh = jet[1, 1, 0]
    value = TWO_PI_I * d_tau - d_zh
    return Residual(complex(value), max(abs(TWO_PI_I * d_tau), abs(d_zh)))


def contour_residue(f: Callable[[complex], object], center: complex,
                    radius: float = 0.2, nodes: int = 256):
    """(1/2*pi*i) times the contour integral of f on a circle.

    Trapezoidal rule on the circle; geometrically convergent for
    meromorphic integrands, so modest node counts reach ~1e-12.
    """
    acc = None
    for m in range(nodes):
        w = cmath.exp(2j * math.pi * m / nodes)
        term = f(center + radius * w) * (radius * w)
        acc = term if acc is None else acc + term
    return acc * (1.0 / nodes)
