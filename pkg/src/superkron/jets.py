"""Truncated multivariate Taylor (jet) arithmetic.

A jet is a complex ndarray of shape (m+1, n+1, t+1) whose [i, j, s]
entry is the Taylor coefficient of dh^i dz^j dt^s.  The three
directions are reserved for the two complex arguments and the modulus
of the elliptic functions, but nothing here depends on that meaning.
Products truncate to the box, which is exact for every coefficient
inside it.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ._kernels import jet_mul

__all__ = [
    "jet_const",
    "jet_var",
    "jet_mul",
    "jet_inverse",
    "jet_exp",
    "max_order",
]

AXIS_H, AXIS_Z, AXIS_T = 0, 1, 2


def jet_const(shape: tuple[int, int, int], value: complex) -> np.ndarray:
    out = np.zeros(shape, dtype=complex)
    out[0, 0, 0] = value
    return out


def jet_var(shape: tuple[int, int, int], value: complex, axis: int) -> np.ndarray:
    """Jet of the coordinate function value + d(axis)."""
    out = jet_const(shape, value)
    if shape[axis] > 1:
        idx = [0, 0, 0]
        idx[axis] = 1
        out[tuple(idx)] = 1.0
    return out


def max_order(shape: tuple[int, int, int]) -> int:
    """Largest total degree representable in the box."""
    return sum(shape) - 3


def _nilpotent(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[0, 0, 0] = 0.0
    return out


def jet_inverse(a: np.ndarray) -> np.ndarray:
    """Multiplicative inverse; requires a nonzero constant term.

    Computed as (1/a0) * sum_k (1 - a/a0)^k, a finite geometric series
    since 1 - a/a0 is nilpotent in the truncated algebra.
    """
    a0 = a[0, 0, 0]
    if a0 == 0:
        raise ZeroDivisionError("jet has zero constant term")
    r = -_nilpotent(a) / a0
    out = jet_const(a.shape, 1.0)
    power = out
    for _ in range(max_order(a.shape)):
        power = jet_mul(power, r)
        if not power.any():
            break
        out = out + power
    return out / a0


def jet_exp(a: np.ndarray) -> np.ndarray:
    """Exponential: exp(a0) times the finite series over the nilpotent part."""
    nil = _nilpotent(a)
    out = jet_const(a.shape, 1.0)
    power = out
    for k in range(1, max_order(a.shape) + 1):
        power = jet_mul(power, nil)
        if not power.any():
            break
        out = out + power / math.factorial(k)
    return cmath.exp(a[0, 0, 0]) * out
