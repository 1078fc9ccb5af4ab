"""Real-argument Bessel/Hankel functions and regularized kernel factors.

Evaluation strategy: power series (with compensated accumulation) for
x <= 12, Hankel asymptotic expansion beyond.  The two auxiliary factors
used by the kernel splitting are

    psi(z, k) = (i pi/2) z H1(z) + (z J1(z)/2) ln(4 z^2 / k^2),
    phi(z)    = J1(z) / z,

both analytic at z = 0 with psi(0) = 1, psi'(0) = 0, phi(0) = 1/2.
Below z0 = 1e-2 they switch to explicit power series so the removable
points are exact; above they use the defining formulas.
"""

import numpy as np

EULER_GAMMA = 0.5772156649015328606
SERIES_CUTOFF = 12.0  # series/asymptotic switch for J, Y
Z0_SWITCH = 1e-2  # series branch threshold for psi and phi

_SERIES_TERMS = 42
_ASYMPTOTIC_TERMS = 15


class DomainError(ValueError):
    """Argument outside the documented domain of a special function."""


# ---------------------------------------------------------------------------
# Series on x <= SERIES_CUTOFF
# ---------------------------------------------------------------------------
def _neumaier(s, comp, term):
    """One compensated-summation step; returns updated (sum, compensation)."""
    t = s + term
    comp = comp + np.where(np.abs(s) >= np.abs(term), (s - t) + term, (term - t) + s)
    return t, comp


def _j0_series(x):
    q = 0.25 * x * x
    term = np.ones_like(x)
    s = np.ones_like(x)
    comp = np.zeros_like(x)
    for j in range(1, _SERIES_TERMS):
        term = term * (-q) / (j * j)
        s, comp = _neumaier(s, comp, term)
    return s + comp


def _j1_series(x):
    q = 0.25 * x * x
    term = 0.5 * x
    s = term.copy()
    comp = np.zeros_like(x)
    for j in range(1, _SERIES_TERMS):
        term = term * (-q) / (j * (j + 1))
        s, comp = _neumaier(s, comp, term)
    return s + comp


def _h_sum_series(x):
    """sum_{j>=1} (-1)^(j+1) H_j (x^2/4)^j / (j!)^2 with H_j harmonic."""
    q = 0.25 * x * x
    term = np.ones_like(x)  # q^j/(j!)^2 with alternating sign folded in below
    s = np.zeros_like(x)
    comp = np.zeros_like(x)
    h = 0.0
    sign = 1.0
    for j in range(1, _SERIES_TERMS):
        term = term * q / (j * j)
        h += 1.0 / j
        s, comp = _neumaier(s, comp, sign * h * term)
        sign = -sign
    return s + comp


def _s_series(q, terms=_SERIES_TERMS):
    """S(q) = sum_j (-1)^j (H_j + H_{j+1}) q^j / (j! (j+1)!), q = z^2/4.

    Appears in the Y1 log-series and therefore in psi.
    """
    term = np.ones_like(q)
    s = np.ones_like(q)  # j = 0: (H_0 + H_1) / (0! 1!) = 1
    comp = np.zeros_like(q)
    h = 0.0  # H_j
    hp = 1.0  # H_{j+1}
    for j in range(1, terms):
        term = term * (-q) / (j * (j + 1))
        h += 1.0 / j
        hp += 1.0 / (j + 1)
        s, comp = _neumaier(s, comp, (h + hp) * term)
    return s + comp


def _y0_series(x):
    j0 = _j0_series(x)
    return (2.0 / np.pi) * ((np.log(0.5 * x) + EULER_GAMMA) * j0 + _h_sum_series(x))


def _y1_series(x):
    j1 = _j1_series(x)
    s = _s_series(0.25 * x * x)
    return (2.0 / np.pi) * (
        (np.log(0.5 * x) + EULER_GAMMA) * j1 - 1.0 / x - 0.25 * x * s
    )


# ---------------------------------------------------------------------------
# Hankel asymptotic expansion on x > SERIES_CUTOFF
# ---------------------------------------------------------------------------
def _pq_asymptotic(nu, x):
    """P, Q modulus/phase series of the large-x Bessel expansion."""
    mu = 4.0 * nu * nu
    term = np.ones_like(x)
    p = np.ones_like(x)
    q = np.zeros_like(x)
    sign_p = -1.0
    sign_q = 1.0
    for m in range(1, _ASYMPTOTIC_TERMS):
        term = term * (mu - (2 * m - 1) ** 2) / (m * 8.0 * x)
        if m % 2 == 1:
            q = q + sign_q * term
            sign_q = -sign_q
        else:
            p = p + sign_p * term
            sign_p = -sign_p
    return p, q


def _jy_asymptotic(nu, x):
    p, q = _pq_asymptotic(nu, x)
    chi = x - (0.5 * nu + 0.25) * np.pi
    amp = np.sqrt(2.0 / (np.pi * x))
    c, s = np.cos(chi), np.sin(chi)
    return amp * (p * c - q * s), amp * (p * s + q * c)


# ---------------------------------------------------------------------------
# Public surface
# ---------------------------------------------------------------------------
def _piecewise(x, f_series, f_asym):
    x = np.asarray(x, dtype=np.float64)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    small = x <= SERIES_CUTOFF
    if np.any(small):
        out[small] = f_series(x[small])
    if np.any(~small):
        out[~small] = f_asym(x[~small])
    return out[0] if scalar else out


def _check_nonneg(x, name):
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name}: non-finite argument")
    if np.any(x < 0):
        raise DomainError(f"{name}: negative argument")
    return x


def _check_positive(x, name):
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name}: non-finite argument")
    if np.any(x <= 0):
        raise DomainError(f"{name}: argument must be positive")
    return x


def bessel_j0(x):
    """J0(x) for x >= 0 (scalar or array)."""
    x = _check_nonneg(x, "bessel_j0")
    return _piecewise(x, _j0_series, lambda v: _jy_asymptotic(0.0, v)[0])


def bessel_j1(x):
    """J1(x) for x >= 0 (scalar or array)."""
    x = _check_nonneg(x, "bessel_j1")
    return _piecewise(x, _j1_series, lambda v: _jy_asymptotic(1.0, v)[0])


def bessel_y0(x):
    """Y0(x) for x > 0 (scalar or array)."""
    x = _check_positive(x, "bessel_y0")
    return _piecewise(x, _y0_series, lambda v: _jy_asymptotic(0.0, v)[1])


def bessel_y1(x):
    """Y1(x) for x > 0 (scalar or array)."""
    x = _check_positive(x, "bessel_y1")
    return _piecewise(x, _y1_series, lambda v: _jy_asymptotic(1.0, v)[1])


def bessel_j(order, x):
    """Bessel function of the first kind, orders 0 and 1.

    Parameters
    ----------
    order : int
        0 or 1.
    x : float or array
        Nonnegative, finite argument.
    """
    if order == 0:
        return bessel_j0(x)
    if order == 1:
        return bessel_j1(x)
    raise DomainError(f"bessel_j: unsupported order {order}")


def bessel_y(order, x):
    """Bessel function of the second kind, orders 0 and 1 (x > 0)."""
    if order == 0:
        return bessel_y0(x)
    if order == 1:
        return bessel_y1(x)
    raise DomainError(f"bessel_y: unsupported order {order}")


def hankel1(order, x):
    """Hankel function of the first kind, H_n(x) = J_n(x) + i Y_n(x).

    Parameters
    ----------
    order : int
        0 or 1.
    x : float or array
        Strictly positive (logarithmic/pole singularity at 0).
    """
    x = _check_positive(x, "hankel1")
    return bessel_j(order, x) + 1j * bessel_y(order, x)


def psi_regularized(z, k):
    """Analytic factor psi with H(z) = psi(z) - (z J1(z)/2) ln(4 z^2/k^2).

    H(z) = (i pi/2) z H1(z) is the continuous kernel envelope; psi is its
    logarithm-free part, entire in z, with psi(0) = 1 and psi'(0) = 0.

    Parameters
    ----------
    z : float or array
        Nonnegative argument.
    k : float
        Positive wavenumber entering through ln(4/k).
    """
    z = _check_nonneg(z, "psi_regularized")
    if not (np.isfinite(k) and k > 0):
        raise DomainError("psi_regularized: k must be positive and finite")
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=np.complex128)
    const = 0.5j * np.pi - EULER_GAMMA + np.log(4.0 / k)
    small = z < Z0_SWITCH
    if np.any(small):
        zs = z[small]
        q = 0.25 * zs * zs
        out[small] = 1.0 + q * _s_series(q, terms=6) + zs * _j1_series(zs) * const
    if np.any(~small):
        zl = z[~small]
        h1 = hankel1(1, zl)
        j1 = bessel_j1(zl)
        out[~small] = (0.5j * np.pi) * zl * h1 + 0.5 * zl * j1 * np.log(
            4.0 * zl * zl / (k * k)
        )
    return out[0] if scalar else out


def phi_ratio(z):
    """Analytic ratio phi(z) = J1(z)/z with the removable point phi(0) = 1/2."""
    z = _check_nonneg(z, "phi_ratio")
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)
    small = z < Z0_SWITCH
    if np.any(small):
        q = 0.25 * z[small] ** 2
        # J1(z)/z = (1/2) sum_j (-q)^j / (j! (j+1)!)
        term = np.full(q.shape, 0.5)
        s = term.copy()
        for j in range(1, 6):
            term = term * (-q) / (j * (j + 1))
            s = s + term
        out[small] = s
    if np.any(~small):
        zl = z[~small]
        out[~small] = bessel_j1(zl) / zl
    return out[0] if scalar else out
