"""Scalar special-function kernels compiled with Numba.

Same algorithms as :mod:`ellipsebie.specfun`, restated in scalar form so
the assembly loops in :mod:`ellipsebie._assembly_numba` can inline them.
Only imported when the numba backend is active.
"""

import numpy as np
from numba import njit

EULER_GAMMA = 0.5772156649015328606
SERIES_CUTOFF = 12.0
Z0_SWITCH = 1e-2


@njit(cache=True)
def _pq(mu, x):
    term = 1.0
    p = 1.0
    q = 0.0
    sign_p = -1.0
    sign_q = 1.0
    for m in range(1, 15):
        term = term * (mu - (2 * m - 1) ** 2) / (m * 8.0 * x)
        if m % 2 == 1:
            q += sign_q * term
            sign_q = -sign_q
        else:
            p += sign_p * term
            sign_p = -sign_p
    return p, q


@njit(cache=True)
def j0_s(x):
    if x <= SERIES_CUTOFF:
        q = 0.25 * x * x
        term = 1.0
        s = 1.0
        comp = 0.0
        for j in range(1, 42):
            term = term * (-q) / (j * j)
            t = s + term
            if abs(s) >= abs(term):
                comp += (s - t) + term
            else:
                comp += (term - t) + s
            s = t
        return s + comp
    p, q = _pq(0.0, x)
    chi = x - 0.25 * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


@njit(cache=True)
def j1_s(x):
    if x <= SERIES_CUTOFF:
        q = 0.25 * x * x
        term = 0.5 * x
        s = term
        comp = 0.0
        for j in range(1, 42):
            term = term * (-q) / (j * (j + 1))
            t = s + term
            if abs(s) >= abs(term):
                comp += (s - t) + term
            else:
                comp += (term - t) + s
            s = t
        return s + comp
    p, q = _pq(4.0, x)
    chi = x - 0.75 * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


@njit(cache=True)
def y0_s(x):
    if x <= SERIES_CUTOFF:
        q = 0.25 * x * x
        term = 1.0
        s = 0.0
        h = 0.0
        sign = 1.0
        for j in range(1, 42):
            term = term * q / (j * j)
            h += 1.0 / j
            s += sign * h * term
            sign = -sign
        return (2.0 / np.pi) * ((np.log(0.5 * x) + EULER_GAMMA) * j0_s(x) + s)
    p, q = _pq(0.0, x)
    chi = x - 0.25 * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.sin(chi) + q * np.cos(chi))


@njit(cache=True)
def s_series_s(q, terms):
    term = 1.0
    s = 1.0
    h = 0.0
    hp = 1.0
    for j in range(1, terms):
        term = term * (-q) / (j * (j + 1))
        h += 1.0 / j
        hp += 1.0 / (j + 1)
        s += (h + hp) * term
    return s


@njit(cache=True)
def y1_s(x):
    if x <= SERIES_CUTOFF:
        s = s_series_s(0.25 * x * x, 42)
        return (2.0 / np.pi) * (
            (np.log(0.5 * x) + EULER_GAMMA) * j1_s(x) - 1.0 / x - 0.25 * x * s
        )
    p, q = _pq(4.0, x)
    chi = x - 0.75 * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.sin(chi) + q * np.cos(chi))


@njit(cache=True)
def psi_s(z, k):
    """psi(z, k) = (i pi/2) z H1(z) + (z J1(z)/2) ln(4 z^2/k^2), psi(0) = 1."""
    if z < Z0_SWITCH:
        q = 0.25 * z * z
        const = complex(-EULER_GAMMA + np.log(4.0 / k), 0.5 * np.pi)
        return 1.0 + q * s_series_s(q, 6) + z * j1_s(z) * const
    j1 = j1_s(z)
    y1 = y1_s(z)
    h = complex(j1, y1)
    return 0.5j * np.pi * z * h + 0.5 * z * j1 * np.log(4.0 * z * z / (k * k))


@njit(cache=True)
def phi_s(z):
    """phi(z) = J1(z)/z, phi(0) = 1/2."""
    if z < Z0_SWITCH:
        q = 0.25 * z * z
        term = 0.5
        s = 0.5
        for j in range(1, 6):
            term = term * (-q) / (j * (j + 1))
            s += term
        return s
    return j1_s(z) / z
