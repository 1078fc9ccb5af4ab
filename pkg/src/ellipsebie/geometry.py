"""Ellipse parameterization and the integral-equation kernels.

The boundary is y(t) = (eps*cos t, sin t) with 0 < eps < 1, so eps is
the semi-minor/semi-major ratio and 1/eps the aspect ratio.  Points
with s + t = pi (mod 2pi) face each other across the narrow axis; the
Laplace double-layer kernel peaks like 1/eps there, which is the nearly
singular behavior everything downstream is built around.

All kernel evaluators are vectorized over numpy arrays.  The dense
matrix builders dispatch to a Numba or pure-NumPy backend (see
:mod:`ellipsebie._backend`).
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _backend, specfun


@dataclass(frozen=True)
class EllipseShape:
    """Ellipse (eps*cos t, sin t); ``epsilon`` in (0, 1)."""

    epsilon: float

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")


@dataclass(frozen=True)
class GeneralCurve:
    """Closed curve (eps*y1(t), y2(t)) on [0, period) with mirror map sigma.

    The caller supplies coordinate functions, their first two
    derivatives, and the mirror map sigma satisfying
    y2(sigma(t)) = y2(t).  ``degenerate_params`` lists the self-mirrored
    parameters (bottom/top points, where y2' vanishes); sigma is only
    required away from them.
    """

    period: float
    y1: Callable
    y2: Callable
    dy1: Callable
    dy2: Callable
    d2y1: Callable
    d2y2: Callable
    sigma: Optional[Callable] = None
    degenerate_params: tuple = ()


# ---------------------------------------------------------------------------
# Pointwise geometry
# ---------------------------------------------------------------------------
def ellipse_point(t, shape: EllipseShape):
    """Boundary point (eps*cos t, sin t)."""
    t = np.asarray(t, dtype=np.float64)
    return shape.epsilon * np.cos(t), np.sin(t)


def ellipse_velocity(t, shape: EllipseShape):
    """Tangent vector y'(t) = (-eps*sin t, cos t)."""
    t = np.asarray(t, dtype=np.float64)
    return -shape.epsilon * np.sin(t), np.cos(t)


def ellipse_speed(t, shape: EllipseShape):
    """Arc speed |y'(t)|."""
    vx, vy = ellipse_velocity(t, shape)
    return np.hypot(vx, vy)


def ellipse_normal_times_speed(t, shape: EllipseShape):
    """Outward normal scaled by |y'(t)|, i.e. (cos t, eps*sin t)."""
    t = np.asarray(t, dtype=np.float64)
    return np.cos(t), shape.epsilon * np.sin(t)


def chord_r(s, t, shape: EllipseShape):
    """Euclidean distance |y(s) - y(t)| in its factored trigonometric form."""
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    half_diff = 0.5 * (s - t)
    half_sum = 0.5 * (s + t)
    eps = shape.epsilon
    return 2.0 * np.abs(np.sin(half_diff)) * np.sqrt(
        np.cos(half_sum) ** 2 + eps**2 * np.sin(half_sum) ** 2
    )


def z_eps(s, t, shape: EllipseShape, k: float):
    """Scaled chord k * |y(s) - y(t)|."""
    if k <= 0:
        raise ValueError("wavenumber k must be positive")
    return k * chord_r(s, t, shape)


def laplace_kernel(s, t, shape: EllipseShape):
    """Laplace double-layer kernel on the ellipse.

    K(s, t) = (1/2pi) * (-eps) / (1 + eps^2 + (1 - eps^2) cos(s+t));
    finite everywhere, equal to -1/(4 pi eps) at mirror points.
    """
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    eps = shape.epsilon
    return (-eps / (2.0 * np.pi)) / (1.0 + eps**2 + (1.0 - eps**2) * np.cos(s + t))


def helmholtz_kernel(s, t, shape: EllipseShape, k: float):
    """Sound-hard double-layer kernel H(z_eps) * K_laplace.

    H(z) = (i pi / 2) z H1(z) is continuous with H(0) = 1, so the
    diagonal s = t carries the finite limit K_laplace(s, s).
    """
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    z = z_eps(s, t, shape, k)
    kl = laplace_kernel(s, t, shape)
    out = np.empty(np.broadcast(s, t).shape, dtype=np.complex128)
    z, kl = np.broadcast_arrays(z, np.asarray(kl))
    on_diag = z == 0.0
    if np.any(on_diag):
        out[on_diag] = kl[on_diag]
    off = ~on_diag
    if np.any(off):
        zo = z[off]
        h = 0.5j * np.pi * zo * specfun.hankel1(1, zo)
        out[off] = h * kl[off]
    return out[()] if out.ndim == 0 else out


def kress_k1(s, t, shape: EllipseShape, k: float):
    """Smooth cofactor of the log singularity: -(1/2) z J1(z) K_laplace."""
    z = z_eps(s, t, shape, k)
    return -0.5 * z * specfun.bessel_j1(z) * laplace_kernel(s, t, shape)


def kress_k2(s, t, shape: EllipseShape, k: float):
    """Remainder kernel of the Kress splitting.

    K2 = (1/2) z [i pi H1(z) + J1(z) ln(4 sin^2((s-t)/2))] K_laplace for
    s != t, with diagonal limit K2(s, s) = K_laplace(s, s).  Together
    with :func:`kress_k1`,

        helmholtz_kernel = kress_k1 * ln(4 sin^2((s-t)/2)) + kress_k2.
    """
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    z = z_eps(s, t, shape, k)
    kl = laplace_kernel(s, t, shape)
    z, kl, s_b, t_b = np.broadcast_arrays(z, np.asarray(kl), s, t)
    out = np.empty(z.shape, dtype=np.complex128)
    on_diag = z == 0.0
    if np.any(on_diag):
        out[on_diag] = kl[on_diag]
    off = ~on_diag
    if np.any(off):
        zo = z[off]
        log_sin = np.log(4.0 * np.sin(0.5 * (s_b[off] - t_b[off])) ** 2)
        h1 = specfun.hankel1(1, zo)
        j1 = specfun.bessel_j1(zo)
        out[off] = 0.5 * zo * (1j * np.pi * h1 + j1 * log_sin) * kl[off]
    return out[()] if out.ndim == 0 else out


def psi_factor(s, t, k: float):
    """psi_s(t) = psi(2k |sin((s-t)/2) cos((s+t)/2)|); equals 1 at t = s."""
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    arg = 2.0 * k * np.abs(np.sin(0.5 * (s - t)) * np.cos(0.5 * (s + t)))
    return specfun.psi_regularized(arg, k)


def phi_factor(s, t, k: float):
    """phi_s(t) = 2 k^2 sin^2((s-t)/2) phi(2k |sin((s-t)/2) cos((s+t)/2)|).

    Single expression reproducing both branches of the log-cofactor,
    including the removable point t = pi - s (mod 2pi) where the inner
    argument vanishes and phi(0) = 1/2 applies.
    """
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    half_diff = np.sin(0.5 * (s - t))
    arg = 2.0 * k * np.abs(half_diff * np.cos(0.5 * (s + t)))
    return 2.0 * k**2 * half_diff**2 * specfun.phi_ratio(arg)


def general_curve_laplace_kernel(s, t, epsilon: float, curve: GeneralCurve):
    """Laplace double-layer kernel for a general curve (eps*y1, y2).

    Uses the defining double-layer form with the normal taken at the
    integration point t; specializes to :func:`laplace_kernel` for
    (y1, y2) = (cos, sin).  Nearly singular at mirror points t =
    sigma(s), weakly singular at the degenerate parameters.
    """
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    d1 = curve.y1(s) - curve.y1(t)
    d2 = curve.y2(s) - curve.y2(t)
    num = curve.dy2(t) * d1 - curve.dy1(t) * d2
    den = epsilon**2 * d1**2 + d2**2
    return (epsilon / (2.0 * np.pi)) * num / den


def ellipse_as_general_curve() -> GeneralCurve:
    """The ellipse in general-curve form, parameterized from its bottom.

    Coordinates (sin t, -cos t) place the minimum of y2 at t = 0 and the
    maximum at t = pi, so the degenerate set is {0, pi} and the mirror
    map is sigma(t) = 2 pi - t.
    """
    return GeneralCurve(
        period=2.0 * np.pi,
        y1=np.sin,
        y2=lambda t: -np.cos(t),
        dy1=np.cos,
        dy2=np.sin,
        d2y1=lambda t: -np.sin(t),
        d2y2=np.cos,
        sigma=lambda t: 2.0 * np.pi - np.asarray(t, dtype=np.float64),
        degenerate_params=(0.0, np.pi),
    )


# ---------------------------------------------------------------------------
# Dense kernel matrices (hot path, backend-dispatched)
# ---------------------------------------------------------------------------
if _backend.USE_NUMBA:
    from . import _assembly_numba as _asm
else:
    from . import _assembly_numpy as _asm


def laplace_kernel_matrix(nodes: np.ndarray, shape: EllipseShape) -> np.ndarray:
    """K_laplace(s_i, t_j) over all node pairs; (2N, 2N) real."""
    return _asm.laplace_matrix(np.asarray(nodes, dtype=np.float64), shape.epsilon)


def kress_kernel_matrices(nodes: np.ndarray, shape: EllipseShape, k: float):
    """(K1, K2) entries over all node pairs with their diagonal limits.

    Returns
    -------
    k1 : (2N, 2N) float array, zero diagonal
    k2 : (2N, 2N) complex array, diagonal K_laplace(s_i, s_i)
    """
    return _asm.kress_matrices(np.asarray(nodes, dtype=np.float64), shape.epsilon, k)


def psi_factor_matrix(si: np.ndarray, tj: np.ndarray, k: float) -> np.ndarray:
    """psi_{s_i}(t_j) over the given node sets; complex (len(si), len(tj))."""
    return _asm.psi_matrix(
        np.asarray(si, dtype=np.float64), np.asarray(tj, dtype=np.float64), k
    )


def phi_factor_matrix(si: np.ndarray, tj: np.ndarray, k: float) -> np.ndarray:
    """phi_{s_i}(t_j) over the given node sets; real (len(si), len(tj))."""
    return _asm.phi_matrix(
        np.asarray(si, dtype=np.float64), np.asarray(tj, dtype=np.float64), k
    )
