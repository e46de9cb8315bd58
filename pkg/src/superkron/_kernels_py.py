"""Pure NumPy implementations of the two numerical hot kernels.

Everything in the package ultimately funnels through these: the odd
theta series summed together with its term-wise derivatives, and the
truncated triple-Taylor ("jet") product. `superkron._core` provides
compiled drop-in replacements; `superkron._kernels` picks one at import.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def theta_series(z: complex, tau: complex, cutoff: int, max_dz: int, max_dtau: int):
    """Sum the odd theta series and its term-wise derivatives.

    The series runs over half-integers k + 1/2 with |k + 1/2| <= cutoff,
    each term exp(pi*i*tau*(k+1/2)^2 + 2*pi*i*(z+1/2)*(k+1/2)).

    Returns
    -------
    vals : complex array, shape (max_dz+1, max_dtau+1)
        vals[j, s] is the order-(j, s) derivative in (z, tau).
    tails : float array, same shape
        Magnitude of the largest first-omitted term for each order,
        for truncation-error checks.
    """
    half = np.arange(-cutoff, cutoff) + 0.5
    terms = np.exp(1j * np.pi * tau * half**2 + 2j * np.pi * (z + 0.5) * half)
    dz_fac = 2j * np.pi * half
    dt_fac = 1j * np.pi * half**2

    half_out = cutoff + 0.5
    tail_mag = max(
        abs(np.exp(1j * np.pi * tau * half_out**2 + 2j * np.pi * (z + 0.5) * half_out)),
        abs(np.exp(1j * np.pi * tau * half_out**2 - 2j * np.pi * (z + 0.5) * half_out)),
    )
    dz_mag = 2.0 * np.pi * half_out
    dt_mag = np.pi * half_out**2

    vals = np.empty((max_dz + 1, max_dtau + 1), dtype=complex)
    tails = np.empty((max_dz + 1, max_dtau + 1), dtype=float)
    row = terms
    for j in range(max_dz + 1):
        col = row
        for s in range(max_dtau + 1):
            vals[j, s] = col.sum()
            tails[j, s] = tail_mag * dz_mag**j * dt_mag**s
            if s < max_dtau:
                col = col * dt_fac
        row = row * dz_fac
    return vals, tails


def jet_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated product of two Taylor jets of identical box shape.

    out[i, j, t] = sum over splits a[p, q, r] * b[i-p, j-q, t-r]; terms
    beyond the box are discarded, which is exact for every coefficient
    inside the box.
    """
    ni, nj, nt = a.shape
    out = np.empty_like(a)
    for i in range(ni):
        for j in range(nj):
            for t in range(nt):
                out[i, j, t] = np.sum(a[: i + 1, : j + 1, : t + 1] * b[i::-1, j::-1, t::-1])
    return out
