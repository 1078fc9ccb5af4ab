"""Pure-NumPy kernel matrix assembly (fallback backend).

Mirrors :mod:`ellipsebie._assembly_numba`; selected when numba is
unavailable or ``ELLIPSEBIE_NO_NUMBA=1``.
"""

import numpy as np

from . import specfun


def laplace_matrix(nodes, eps):
    s = nodes[:, None]
    t = nodes[None, :]
    return (-eps / (2.0 * np.pi)) / (1.0 + eps**2 + (1.0 - eps**2) * np.cos(s + t))


def kress_matrices(nodes, eps, k):
    n = nodes.size
    s = nodes[:, None]
    t = nodes[None, :]
    half_diff = 0.5 * (s - t)
    half_sum = 0.5 * (s + t)
    r = 2.0 * np.abs(np.sin(half_diff)) * np.sqrt(
        np.cos(half_sum) ** 2 + eps**2 * np.sin(half_sum) ** 2
    )
    z = k * r
    kl = (-eps / (2.0 * np.pi)) / (1.0 + eps**2 + (1.0 - eps**2) * np.cos(s + t))

    off = ~np.eye(n, dtype=bool)
    zo = z[off]
    j1 = specfun.bessel_j1(zo)
    y1 = specfun.bessel_y1(zo)
    log_sin = np.log(4.0 * np.sin(half_diff[off]) ** 2)

    k1 = np.zeros((n, n))
    k1[off] = -0.5 * zo * j1 * kl[off]

    k2 = np.zeros((n, n), dtype=np.complex128)
    k2[off] = 0.5 * zo * (1j * np.pi * (j1 + 1j * y1) + j1 * log_sin) * kl[off]
    k2[np.eye(n, dtype=bool)] = np.diag(kl)
    return k1, k2


def psi_matrix(si, tj, k):
    s = si[:, None]
    t = tj[None, :]
    arg = 2.0 * k * np.abs(np.sin(0.5 * (s - t)) * np.cos(0.5 * (s + t)))
    return specfun.psi_regularized(arg, k)


def phi_matrix(si, tj, k):
    s = si[:, None]
    t = tj[None, :]
    half_diff = np.sin(0.5 * (s - t))
    arg = 2.0 * k * np.abs(half_diff * np.cos(0.5 * (s + t)))
    return 2.0 * k**2 * half_diff**2 * specfun.phi_ratio(arg)
