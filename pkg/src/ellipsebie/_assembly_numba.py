"""Numba-compiled kernel matrix assembly (default backend).

Same contracts as :mod:`ellipsebie._assembly_numpy`, written as scalar
loops over the node pairs with the special functions inlined from
:mod:`ellipsebie._scalars`.
"""

import numpy as np
from numba import njit

from ._scalars import j1_s, phi_s, psi_s, y1_s


@njit(cache=True)
def laplace_matrix(nodes, eps):
    n = nodes.size
    out = np.empty((n, n))
    c = -eps / (2.0 * np.pi)
    for i in range(n):
        for j in range(n):
            out[i, j] = c / (1.0 + eps * eps + (1.0 - eps * eps) * np.cos(nodes[i] + nodes[j]))
    return out


@njit(cache=True)
def kress_matrices(nodes, eps, k):
    n = nodes.size
    k1 = np.zeros((n, n))
    k2 = np.zeros((n, n), dtype=np.complex128)
    c = -eps / (2.0 * np.pi)
    for i in range(n):
        si = nodes[i]
        for j in range(n):
            tj = nodes[j]
            kl = c / (1.0 + eps * eps + (1.0 - eps * eps) * np.cos(si + tj))
            if i == j:
                k2[i, j] = kl
                continue
            sd = np.sin(0.5 * (si - tj))
            ss = 0.5 * (si + tj)
            r = 2.0 * abs(sd) * np.sqrt(np.cos(ss) ** 2 + eps * eps * np.sin(ss) ** 2)
            z = k * r
            j1 = j1_s(z)
            y1 = y1_s(z)
            log_sin = np.log(4.0 * sd * sd)
            k1[i, j] = -0.5 * z * j1 * kl
            k2[i, j] = 0.5 * z * (1j * np.pi * complex(j1, y1) + j1 * log_sin) * kl
    return k1, k2


@njit(cache=True)
def psi_matrix(si, tj, k):
    m = si.size
    n = tj.size
    out = np.empty((m, n), dtype=np.complex128)
    for i in range(m):
        for j in range(n):
            arg = 2.0 * k * abs(np.sin(0.5 * (si[i] - tj[j])) * np.cos(0.5 * (si[i] + tj[j])))
            out[i, j] = psi_s(arg, k)
    return out


@njit(cache=True)
def phi_matrix(si, tj, k):
    m = si.size
    n = tj.size
    out = np.empty((m, n))
    for i in range(m):
        for j in range(n):
            sd = np.sin(0.5 * (si[i] - tj[j]))
            arg = 2.0 * k * abs(sd * np.cos(0.5 * (si[i] + tj[j])))
            out[i, j] = 2.0 * k * k * sd * sd * phi_s(arg)
    return out
