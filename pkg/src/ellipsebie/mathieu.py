"""Separation-of-variables reference solutions in elliptical coordinates.

Angular functions come from the symmetric tridiagonal eigenproblem of
each symmetry class, normalized so the squared functions integrate to
pi over a period.  Radial functions are evaluated through Bessel
product series in v1 = sqrt(q) e^{-xi}, v2 = sqrt(q) e^{xi}; the series
yields the function up to a per-mode constant, which is fixed exactly
by projecting a plane wave onto the angular basis on a reference
ellipse (the expansion with coefficients 2 i^m times the angular value
at the incidence angle is an identity in this normalization, the same
one in which the radial functions of the first kind degenerate to
Bessel J at large distance).  The constant comes out real to rounding;
a complex residue flags a broken construction.

Radial functions of the first kind are even (ce) or odd (se) in xi, so
for |xi| below a small threshold they are evaluated from an ODE-driven
Taylor expansion about 0 instead of the product series, whose
antisymmetric differences would cancel catastrophically there.  That
regime is exactly where the thin-ellipse boundary xi_eps = artanh(eps)
lives.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import specfun

XI_TAYLOR = 0.05  # switch to the Taylor branch of kind-1 functions below this
_TAYLOR_ORDER = 20
_TRAILING_TOL = 1e-14


class OracleError(RuntimeError):
    """Reference-solution machinery failed to converge or degenerated."""


def q_parameter(k: float, epsilon: float) -> float:
    """Mathieu parameter q = c^2 k^2 / 4 with focal scale c = sqrt(1 - eps^2)."""
    return (1.0 - epsilon**2) * k**2 / 4.0


# ---------------------------------------------------------------------------
# Elliptical coordinates
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class EllipticFrame:
    """Coordinates x = c sinh(xi) sin(eta), y = c cosh(xi) cos(eta).

    The ellipse boundary is the level set xi = xi_b = artanh(eps).
    """

    epsilon: float
    c: float
    xi_b: float

    @classmethod
    def from_epsilon(cls, epsilon: float) -> "EllipticFrame":
        if not (0.0 < epsilon < 1.0):
            raise ValueError("epsilon must lie in (0, 1)")
        c = np.sqrt(1.0 - epsilon**2)
        xi_b = 0.5 * np.log((1.0 + epsilon) / (1.0 - epsilon))
        return cls(epsilon=epsilon, c=c, xi_b=xi_b)

    def to_cartesian(self, xi, eta):
        xi = np.asarray(xi, dtype=np.float64)
        eta = np.asarray(eta, dtype=np.float64)
        return self.c * np.sinh(xi) * np.sin(eta), self.c * np.cosh(xi) * np.cos(eta)

    def to_elliptic(self, x, y):
        """Inverse map; xi >= 0, eta in (-pi, pi].

        Exact on the line x = 0 (focal segment and beyond), where the
        generic inversion would be ambiguous.
        """
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        y = np.atleast_1d(np.asarray(y, dtype=np.float64))
        x, y = np.broadcast_arrays(x, y)
        xi = np.empty(x.shape)
        eta = np.empty(x.shape)

        on_axis = x == 0.0
        if np.any(on_axis):
            ya = y[on_axis]
            ratio = ya / self.c
            xi_a = np.where(np.abs(ratio) <= 1.0, 0.0, np.arccosh(np.minimum(np.abs(ratio), np.inf)))
            eta_a = np.where(
                np.abs(ratio) <= 1.0,
                np.arccos(np.clip(ratio, -1.0, 1.0)),
                np.where(ya > 0, 0.0, np.pi),
            )
            xi[on_axis] = xi_a
            eta[on_axis] = eta_a
        off = ~on_axis
        if np.any(off):
            w = (y[off] + 1j * x[off]) / self.c
            z = np.arccos(w)
            xi_o = np.abs(z.imag)
            eta_o = z.real
            # fix the sign of eta so that x = c sinh(xi) sin(eta)
            flip = np.sign(np.sin(eta_o)) * np.sign(x[off]) < 0
            eta_o = np.where(flip, -eta_o, eta_o)
            xi[off] = xi_o
            eta[off] = eta_o
        return xi, eta


def boundary_eta(s):
    """Elliptic angle of the boundary point y(s): eta = pi/2 - s."""
    return 0.5 * np.pi - np.asarray(s, dtype=np.float64)


# ---------------------------------------------------------------------------
# Angular functions
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class MathieuBasis:
    """One angular function: family 'ce' or 'se', order m, parameter q.

    ``coeffs`` are the Fourier coefficients on ``orders`` (cosines for
    ce, sines for se), normalized so the square integrates to pi, with
    the coefficient at order m positive (q -> 0 recovers cos/sin(m eta)).
    """

    family: str
    order: int
    q: float
    char_value: float
    orders: np.ndarray
    coeffs: np.ndarray

    def value(self, eta):
        eta = np.atleast_1d(np.asarray(eta, dtype=np.float64))
        trig = np.cos if self.family == "ce" else np.sin
        return trig(np.outer(eta, self.orders)) @ self.coeffs

    def deriv(self, eta):
        eta = np.atleast_1d(np.asarray(eta, dtype=np.float64))
        if self.family == "ce":
            return -np.sin(np.outer(eta, self.orders)) @ (self.orders * self.coeffs)
        return np.cos(np.outer(eta, self.orders)) @ (self.orders * self.coeffs)

    def deriv2(self, eta):
        eta = np.atleast_1d(np.asarray(eta, dtype=np.float64))
        trig = np.cos if self.family == "ce" else np.sin
        return -trig(np.outer(eta, self.orders)) @ (self.orders**2 * self.coeffs)


def _tridiagonal_class(family: str, m: int, q: float, size: int):
    """Diagonal/off-diagonal of the symmetry class containing (family, m)."""
    if family == "ce" and m % 2 == 0:
        diag = (2.0 * np.arange(size)) ** 2
        off = np.full(size - 1, q)
        off[0] = np.sqrt(2.0) * q
        orders = 2 * np.arange(size)
        index = m // 2
    elif family == "ce":
        diag = (2.0 * np.arange(size) + 1.0) ** 2
        diag[0] = 1.0 + q
        off = np.full(size - 1, q)
        orders = 2 * np.arange(size) + 1
        index = (m - 1) // 2
    elif family == "se" and m % 2 == 1:
        diag = (2.0 * np.arange(size) + 1.0) ** 2
        diag[0] = 1.0 - q
        off = np.full(size - 1, q)
        orders = 2 * np.arange(size) + 1
        index = (m - 1) // 2
    elif family == "se" and m % 2 == 0 and m >= 2:
        diag = (2.0 * np.arange(size) + 2.0) ** 2
        off = np.full(size - 1, q)
        orders = 2 * np.arange(size) + 2
        index = m // 2 - 1
    else:
        raise ValueError(f"invalid angular function: family={family}, m={m}")
    return diag, off, orders, index


@lru_cache(maxsize=None)
def mathieu_basis(family: str, m: int, q: float) -> MathieuBasis:
    """Angular Mathieu function from the tridiagonal eigenproblem.

    The truncation grows until the trailing coefficient falls below
    1e-14; failure to reach that within the size cap raises
    :class:`OracleError`.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    for size in (48, 96, 192):
        diag, off, orders, index = _tridiagonal_class(family, m, q, size)
        char, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(index, index))
        vec = vecs[:, 0]
        if abs(vec[-1]) <= _TRAILING_TOL:
            coeffs = vec.copy()
            if family == "ce" and m % 2 == 0:
                coeffs[0] /= np.sqrt(2.0)
            pos = int(np.where(orders == m)[0][0])
            if coeffs[pos] < 0:
                coeffs = -coeffs
            keep = max(np.max(np.nonzero(np.abs(coeffs) > 1e-17)[0]) + 1, pos + 1)
            coeffs = np.ascontiguousarray(coeffs[:keep])
            coeffs.flags.writeable = False
            o = np.ascontiguousarray(orders[:keep])
            o.flags.writeable = False
            return MathieuBasis(
                family=family,
                order=m,
                q=q,
                char_value=float(char[0]),
                orders=o,
                coeffs=coeffs,
            )
    raise OracleError(f"angular basis ({family}, m={m}, q={q}) did not converge")


# ---------------------------------------------------------------------------
# Bessel tables for the product series
# ---------------------------------------------------------------------------
def _bessel_j_table(jmax: int, x: np.ndarray) -> np.ndarray:
    """J_j(x) for j in [0, jmax] over an array; shape (jmax+1, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = np.zeros((jmax + 1, x.size))
    small = x < 1.0
    if np.any(small):
        xs = x[small]
        half = 0.5 * xs
        base = np.ones_like(xs)
        for j in range(jmax + 1):
            term = base.copy()
            total = term.copy()
            for i in range(1, 12):
                term = term * (-(half**2)) / (i * (i + j))
                total += term
            out[j, small] = total
            base = base * half / (j + 1)
    large = ~small
    if np.any(large):
        xl = x[large]
        m_start = jmax + int(2.0 * np.sqrt(max(jmax, float(np.max(xl))))) + 22
        f = np.zeros((m_start + 2, xl.size))
        f[m_start] = 1e-30
        for j in range(m_start, 0, -1):
            f[j - 1] = (2.0 * j / xl) * f[j] - f[j + 1]
            big = np.abs(f[j - 1]) > 1e250
            if np.any(big):
                f[:, big] *= 1e-250
        norm = f[0] + 2.0 * np.sum(f[2:m_start:2], axis=0)
        out[:, large] = f[: jmax + 1] / norm
    return out


def _bessel_y_table(jmax: int, x: np.ndarray) -> np.ndarray:
    """Y_j(x) for j in [0, jmax] by upward recurrence (x > 0)."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = np.zeros((jmax + 1, x.size))
    out[0] = specfun.bessel_y0(x)
    if jmax >= 1:
        out[1] = specfun.bessel_y1(x)
    for j in range(1, jmax):
        out[j + 1] = (2.0 * j / x) * out[j] - out[j - 1]
    return out


def _deriv_table(table: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Z'_j from Z_j via Z'_j = Z_{j-1} - (j/x) Z_j (row 0: -Z_1)."""
    jmax = table.shape[0] - 1
    out = np.empty_like(table)
    out[0] = -table[1]
    j = np.arange(1, jmax + 1)[:, None]
    out[1:] = table[:-1] - (j / x[None, :]) * table[1:]
    return out


# ---------------------------------------------------------------------------
# Radial functions
# ---------------------------------------------------------------------------
_NORM_CACHE: Dict[Tuple[str, int, float], float] = {}
_TAYLOR_CACHE: Dict[Tuple[str, int, float], np.ndarray] = {}


def _product_terms(basis: MathieuBasis):
    """Index offsets (p, r) and signed coefficients for the product series.

    The series is sum_j s_j [J_{j+p}(v1) Z_{j+r}(v2) + sym * J_{j+r}(v1) Z_{j+p}(v2)]
    with sym in {0 (single product), +1, -1}.
    """
    m = basis.order
    if basis.family == "ce" and m % 2 == 0:
        n = m // 2
        return 0, 0, 0.0, ((-1.0) ** (np.arange(basis.coeffs.size) - n)) * basis.coeffs
    if basis.family == "ce":
        n = (m - 1) // 2
        return 0, 1, 1.0, ((-1.0) ** (np.arange(basis.coeffs.size) - n)) * basis.coeffs
    if m % 2 == 1:
        n = (m - 1) // 2
        return 0, 1, -1.0, ((-1.0) ** (np.arange(basis.coeffs.size) - n)) * basis.coeffs
    n = m // 2 - 1
    return 0, 2, -1.0, ((-1.0) ** (np.arange(basis.coeffs.size) - n)) * basis.coeffs


def _radial_raw(basis: MathieuBasis, kind: int, xi: np.ndarray):
    """Un-normalized radial value and xi-derivative arrays."""
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    rootq = np.sqrt(basis.q)
    v1 = rootq * np.exp(-xi)
    v2 = rootq * np.exp(xi)
    _, r_off, sym, signed = _product_terms(basis)
    nj = signed.size
    jmax = nj + r_off
    j1 = _bessel_j_table(jmax, v1)
    d1 = _deriv_table(j1, v1)
    if kind == 1:
        z2 = _bessel_j_table(jmax, v2)
    elif kind == 2:
        z2 = _bessel_y_table(jmax, v2)
    else:
        z2 = _bessel_j_table(jmax, v2) + 1j * _bessel_y_table(jmax, v2)
    d2 = _deriv_table(z2, v2)

    js = np.arange(nj)
    a = j1[js]
    da = -v1[None, :] * d1[js]
    b = z2[js + r_off]
    db = v2[None, :] * d2[js + r_off]
    prod = a * b
    dprod = da * b + a * db
    if sym != 0.0:
        a2 = j1[js + r_off]
        da2 = -v1[None, :] * d1[js + r_off]
        b2 = z2[js]
        db2 = v2[None, :] * d2[js]
        prod = prod + sym * a2 * b2
        dprod = dprod + sym * (da2 * b2 + a2 * db2)
    value = signed @ prod
    deriv = signed @ dprod
    return value, deriv


def _best_projection_angle(basis: MathieuBasis) -> Tuple[float, float]:
    best_phi, best_val = 0.0, 0.0
    for phi in (0.0, 0.5 * np.pi, 0.25 * np.pi, np.pi / 3.0, 1.1):
        val = float(basis.value(np.array([phi]))[0])
        if abs(val) > abs(best_val):
            best_phi, best_val = phi, val
    return best_phi, best_val


def _norm_constant(basis: MathieuBasis) -> float:
    """Normalization fixing the plane-wave expansion coefficients 2 i^m.

    Projects exp(i k d . x) onto the angular function on a reference
    ellipse and divides by 2 i^m (angular value at the incidence angle)
    times the raw first-kind radial value.  The result must be real;
    a significant imaginary part raises :class:`OracleError`.
    """
    key = (basis.family, basis.order, basis.q)
    if key in _NORM_CACHE:
        return _NORM_CACHE[key]
    m = basis.order
    rootq = np.sqrt(basis.q)
    w0 = m + 4.0
    xi0 = float(np.arccosh(max(w0 / (2.0 * rootq), 1.2)))
    phi, ang_phi = _best_projection_angle(basis)
    if abs(ang_phi) < 1e-3:
        raise OracleError(f"no usable projection angle for ({basis.family}, {m})")
    npts = 4096
    eta = 2.0 * np.pi * np.arange(npts) / npts
    carg = 2.0 * rootq * np.cosh(xi0) * np.cos(phi)
    sarg = 2.0 * rootq * np.sinh(xi0) * np.sin(phi)
    wave = np.exp(1j * (carg * np.cos(eta) + sarg * np.sin(eta)))
    proj = (wave @ basis.value(eta)) * (2.0 * np.pi / npts) / np.pi
    raw1, _ = _radial_raw(basis, 1, np.array([xi0]))
    denom = 2.0 * (1j**m) * ang_phi * raw1[0]
    if denom == 0:
        raise OracleError(f"degenerate projection for ({basis.family}, {m})")
    const = proj / denom
    if abs(const.imag) > 1e-8 * abs(const):
        raise OracleError(
            f"radial normalization not real for ({basis.family}, {m}): {const!r}"
        )
    _NORM_CACHE[key] = float(const.real)
    return _NORM_CACHE[key]


def _taylor_coefficients(basis: MathieuBasis) -> np.ndarray:
    """Taylor coefficients about xi = 0 of the kind-1 radial function.

    Seeded by the exact value (ce, even in xi) or slope (se, odd in xi)
    at 0 and propagated by w'' = (a - 2 q cosh(2 xi)) w.
    """
    key = (basis.family, basis.order, basis.q)
    if key in _TAYLOR_CACHE:
        return _TAYLOR_CACHE[key]
    value0, deriv0 = _radial_raw(basis, 1, np.array([0.0]))
    norm = _norm_constant(basis)
    coeff = np.zeros(_TAYLOR_ORDER + 1)
    coeff[0] = norm * value0[0]
    coeff[1] = norm * deriv0[0]
    g = np.zeros(_TAYLOR_ORDER + 1)
    g[0] = basis.char_value - 2.0 * basis.q
    for i in range(2, _TAYLOR_ORDER + 1, 2):
        g[i] = -2.0 * basis.q * 2.0**i / factorial(i)
    for p in range(_TAYLOR_ORDER - 1):
        acc = 0.0
        for i in range(0, p + 1, 2):
            acc += g[i] * coeff[p - i]
        coeff[p + 2] = acc / ((p + 1) * (p + 2))
    coeff.flags.writeable = False
    _TAYLOR_CACHE[key] = coeff
    return coeff


def radial_mathieu(kind: int, basis: MathieuBasis, xi) -> Tuple[np.ndarray, np.ndarray]:
    """Radial Mathieu function of the given kind: (value, d/dxi) arrays.

    Kind 1 is regular; kind 3 (first + i * second) is the outgoing
    solution selected by the radiation condition.  Kind-1 values below
    ``XI_TAYLOR`` come from the Taylor branch.
    """
    if kind not in (1, 2, 3):
        raise ValueError("kind must be 1, 2, or 3")
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    if np.any(xi < 0):
        raise ValueError("xi must be nonnegative")
    norm = _norm_constant(basis)

    if kind in (1, 3):
        val1 = np.empty(xi.shape)
        der1 = np.empty(xi.shape)
        small = xi < XI_TAYLOR
        if np.any(small):
            coeff = _taylor_coefficients(basis)
            xs = xi[small]
            powers = xs[None, :] ** np.arange(coeff.size)[:, None]
            val1[small] = coeff @ powers
            dcoeff = coeff[1:] * np.arange(1, coeff.size)
            der1[small] = dcoeff @ powers[:-1]
        if np.any(~small):
            v, d = _radial_raw(basis, 1, xi[~small])
            val1[~small] = norm * v
            der1[~small] = norm * d
        if kind == 1:
            return val1, der1
    v2, d2 = _radial_raw(basis, 2, xi)
    val2 = norm * v2
    der2 = norm * d2
    if kind == 2:
        return val2, der2
    return val1 + 1j * val2, der1 + 1j * der2


def radial_second_deriv(basis: MathieuBasis, xi, value):
    """d^2/dxi^2 from the modified Mathieu equation w'' = (a - 2q cosh 2xi) w."""
    xi = np.asarray(xi, dtype=np.float64)
    return (basis.char_value - 2.0 * basis.q * np.cosh(2.0 * xi)) * value


def radial_kind1_axis(basis: MathieuBasis, xi):
    """Kind-1 value and the focus-regular sinh ratio: (value, ratio).

    ``ratio`` is d/dxi / sinh(xi) for ce bases (even in xi) and
    value / sinh(xi) for se bases (odd in xi).  In each case the
    numerator vanishes with xi, so the ratio extends analytically
    through the focus xi = 0; it is what on-axis chain rules need,
    where plain division by sinh would be 0/0.  Below the Taylor
    threshold the ratio is evaluated as a regular series in xi.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    value = np.empty(xi.shape)
    ratio = np.empty(xi.shape)
    small = xi < XI_TAYLOR
    if np.any(small):
        coeff = _taylor_coefficients(basis)
        xs = xi[small]
        p = np.arange(coeff.size)
        value[small] = coeff @ (xs[None, :] ** p[:, None])
        if basis.family == "ce":
            series = (coeff[2:] * p[2:]) @ (xs[None, :] ** (p[2:, None] - 2))
        else:
            series = coeff[1:] @ (xs[None, :] ** (p[1:, None] - 1))
        sinh_ratio = np.where(xs == 0.0, 1.0, xs / np.sinh(np.where(xs == 0.0, 1.0, xs)))
        ratio[small] = series * sinh_ratio
    big = ~small
    if np.any(big):
        v, d = radial_mathieu(1, basis, xi[big])
        sh = np.sinh(xi[big])
        value[big] = v
        ratio[big] = (d if basis.family == "ce" else v) / sh
    return value, ratio


# ---------------------------------------------------------------------------
# Incident fields
# ---------------------------------------------------------------------------
FD_STEP_FIRST = 1e-5  # 4th-order central first derivatives
FD_STEP_SECOND = 2e-3  # 4th-order second derivative (balances roundoff)


class IncidentFieldModel:
    """Helmholtz field built from regular (kind-1) elliptical modes.

    Supplies the field value and Cartesian derivatives anywhere, exact
    closed-form evaluators on the collapse segment x = 0 (where the
    coordinate chart degenerates and parity-asymptotic solvers sample
    their sources), and boundary traces on the ellipse.

    Parameters
    ----------
    k, epsilon : float
        Wavenumber and ellipse parameter fixing q and the frame.
    modes : list of (family, order, coefficient)
        Complex combination of ce/se modes of the first radial kind.
    tag : str
        Human-readable descriptor (appears in harness output).
    symmetry : {'even', 'odd', None}
        Parity of the boundary trace under s -> pi - s, when known
        a priori; solvers use it to skip identically-zero branches.
    """

    def __init__(self, k: float, epsilon: float, modes, tag: str, symmetry: Optional[str]):
        self.k = float(k)
        self.epsilon = float(epsilon)
        self.frame = EllipticFrame.from_epsilon(self.epsilon)
        self.q = q_parameter(self.k, self.epsilon)
        self.modes = tuple((family, int(m), complex(c)) for family, m, c in modes)
        self.tag = tag
        self.symmetry = symmetry

    def _bases(self):
        return [(mathieu_basis(f, m, self.q), c) for f, m, c in self.modes]

    # -- generic Cartesian evaluators ------------------------------------
    def value(self, x, y):
        """u(x, y), vectorized over broadcastable arrays."""
        xi, eta = self.frame.to_elliptic(x, y)
        out = np.zeros(xi.shape, dtype=np.complex128)
        for basis, c in self._bases():
            r, _ = radial_mathieu(1, basis, xi)
            out += c * r * basis.value(eta)
        return out

    def dx(self, x, y):
        """du/dx by 4th-order central differences (step 1e-5)."""
        h = FD_STEP_FIRST
        x = np.asarray(x, dtype=np.float64)
        return (
            self.value(x - 2 * h, y)
            - 8.0 * self.value(x - h, y)
            + 8.0 * self.value(x + h, y)
            - self.value(x + 2 * h, y)
        ) / (12.0 * h)

    def dy(self, x, y):
        """du/dy by 4th-order central differences (step 1e-5)."""
        h = FD_STEP_FIRST
        y = np.asarray(y, dtype=np.float64)
        return (
            self.value(x, y - 2 * h)
            - 8.0 * self.value(x, y - h)
            + 8.0 * self.value(x, y + h)
            - self.value(x, y + 2 * h)
        ) / (12.0 * h)

    def dxx(self, x, y):
        """d2u/dx2 by a 4th-order stencil with a wider step (2e-3)."""
        h = FD_STEP_SECOND
        x = np.asarray(x, dtype=np.float64)
        return (
            -self.value(x - 2 * h, y)
            + 16.0 * self.value(x - h, y)
            - 30.0 * self.value(x, y)
            + 16.0 * self.value(x + h, y)
            - self.value(x + 2 * h, y)
        ) / (12.0 * h * h)

    # -- exact evaluators on the segment x = 0 ---------------------------
    def _split_axis(self, y0):
        y0 = np.atleast_1d(np.asarray(y0, dtype=np.float64))
        c = self.frame.c
        if np.any(np.abs(np.abs(y0) - c) < _FOCUS_GUARD):
            raise OracleError("axis evaluation requested at a focal point")
        focal = np.abs(y0) < c
        return y0, focal

    def line_value(self, y0):
        """u(0, y0) exactly (focal segment and the tip extensions)."""
        y0, focal = self._split_axis(y0)
        c = self.frame.c
        out = np.zeros(y0.shape, dtype=np.complex128)
        eta_f = np.arccos(np.clip(y0[focal] / c, -1.0, 1.0))
        xi_t = np.arccosh(np.abs(y0[~focal]) / c)
        eta_t = np.where(y0[~focal] > 0, 0.0, np.pi)
        for basis, coeff in self._bases():
            if basis.family == "se":
                continue  # se modes vanish on x = 0
            r0 = radial_mathieu(1, basis, np.array([0.0]))[0][0]
            out[focal] += coeff * r0 * basis.value(eta_f)
            rt, _ = radial_mathieu(1, basis, xi_t)
            out[~focal] += coeff * rt * basis.value(eta_t)
        return out

    def line_dx(self, y0):
        """du/dx on x = 0 exactly; only se modes contribute."""
        y0, focal = self._split_axis(y0)
        c = self.frame.c
        out = np.zeros(y0.shape, dtype=np.complex128)
        eta_f = np.arccos(np.clip(y0[focal] / c, -1.0, 1.0))
        xi_t = np.arccosh(np.abs(y0[~focal]) / c)
        eta_t = np.where(y0[~focal] > 0, 0.0, np.pi)
        for basis, coeff in self._bases():
            if basis.family == "ce":
                continue  # ce modes are even in x
            _, dr0 = radial_mathieu(1, basis, np.array([0.0]))
            out[focal] += coeff * dr0[0] * basis.value(eta_f) / (c * np.sin(eta_f))
            rt, _ = radial_mathieu(1, basis, xi_t)
            out[~focal] += coeff * rt * basis.deriv(eta_t) / (c * np.sinh(xi_t))
        return out

    def line_dy(self, y0):
        """du/dy on x = 0 exactly; only ce modes contribute."""
        y0, focal = self._split_axis(y0)
        c = self.frame.c
        out = np.zeros(y0.shape, dtype=np.complex128)
        eta_f = np.arccos(np.clip(y0[focal] / c, -1.0, 1.0))
        xi_t = np.arccosh(np.abs(y0[~focal]) / c)
        eta_t = np.where(y0[~focal] > 0, 0.0, np.pi)
        for basis, coeff in self._bases():
            if basis.family == "se":
                continue
            r0 = radial_mathieu(1, basis, np.array([0.0]))[0][0]
            out[focal] += -coeff * r0 * basis.deriv(eta_f) / (c * np.sin(eta_f))
            rt, drt = radial_mathieu(1, basis, xi_t)
            out[~focal] += coeff * drt * basis.value(eta_t) / (c * np.sinh(xi_t))
        return out

    def line_dxx(self, y0):
        """d2u/dx2 on x = 0: Helmholtz equation minus a tangential FD.

        d2u/dy2 along the segment uses 4th-order differences of the
        exact line values (step 2e-3), then dxx = -k^2 u - dyy.
        """
        y0 = np.atleast_1d(np.asarray(y0, dtype=np.float64))
        h = FD_STEP_SECOND
        dyy = (
            -self.line_value(y0 - 2 * h)
            + 16.0 * self.line_value(y0 - h)
            - 30.0 * self.line_value(y0)
            + 16.0 * self.line_value(y0 + h)
            - self.line_value(y0 + 2 * h)
        ) / (12.0 * h * h)
        return -self.k**2 * self.line_value(y0) - dyy

    # -- boundary traces ---------------------------------------------------
    def boundary_value(self, s):
        """u at the boundary point y(s), via the modal series directly."""
        eta = boundary_eta(s)
        out = np.zeros(np.atleast_1d(eta).shape, dtype=np.complex128)
        for basis, coeff in self._bases():
            r, _ = radial_mathieu(1, basis, np.array([self.frame.xi_b]))
            out += coeff * r[0] * basis.value(eta)
        return out

    def boundary_flux(self, s):
        """v(s) = du/dn |y'| on the boundary, which equals du/dxi there."""
        eta = boundary_eta(s)
        out = np.zeros(np.atleast_1d(eta).shape, dtype=np.complex128)
        for basis, coeff in self._bases():
            _, dr = radial_mathieu(1, basis, np.array([self.frame.xi_b]))
            out += coeff * dr[0] * basis.value(eta)
        return out


def single_mode_incident(family: str, m: int, k: float, epsilon: float) -> IncidentFieldModel:
    """Incident field from one regular elliptical mode.

    ce modes give a boundary trace even under s -> pi - s; se modes an
    odd one.
    """
    symmetry = "even" if family == "ce" else "odd"
    return IncidentFieldModel(
        k=k,
        epsilon=epsilon,
        modes=[(family, m, 1.0 + 0.0j)],
        tag=f"m{family}:{m}",
        symmetry=symmetry,
    )


PLANE_WAVE_MAX_ORDER = 15


def plane_wave_incident(alpha: float, k: float, epsilon: float) -> IncidentFieldModel:
    """Truncated modal expansion of a plane wave with direction angle alpha.

    Coefficients 2 i^m (angular function at pi/2 - alpha).  At
    alpha = pi/2 every se coefficient vanishes identically and the
    model is tagged even.
    """
    if not (0.0 <= alpha <= 0.5 * np.pi):
        raise ValueError("alpha must lie in [0, pi/2]")
    q = q_parameter(k, epsilon)
    phi = 0.5 * np.pi - alpha
    modes: List[Tuple[str, int, complex]] = []
    for m in range(PLANE_WAVE_MAX_ORDER + 1):
        coeff = 2.0 * (1j**m) * mathieu_basis("ce", m, q).value(np.array([phi]))[0]
        modes.append(("ce", m, coeff))
    se_alive = False
    if alpha != 0.5 * np.pi:
        for m in range(1, PLANE_WAVE_MAX_ORDER + 1):
            coeff = 2.0 * (1j**m) * mathieu_basis("se", m, q).value(np.array([phi]))[0]
            modes.append(("se", m, coeff))
            se_alive = se_alive or abs(coeff) > 1e-14
    return IncidentFieldModel(
        k=k,
        epsilon=epsilon,
        modes=modes,
        tag=f"planewave:{alpha:.6g}",
        symmetry=None if se_alive else "even",
    )


# ---------------------------------------------------------------------------
# Analytic scattering solutions
# ---------------------------------------------------------------------------
def scattering_coefficients(kind: str, model: IncidentFieldModel):
    """Outgoing-mode coefficients of the scattered field.

    Boundary conditions collapse mode by mode: the sound-hard condition
    matches radial derivatives at xi_b, the sound-soft condition the
    values.  Returns a list of (basis, coefficient) pairs.
    """
    if kind not in ("sound-hard", "sound-soft"):
        raise ValueError(f"unknown boundary kind {kind!r}")
    xi_b = np.array([model.frame.xi_b])
    out = []
    for basis, coeff in model._bases():
        r1, dr1 = radial_mathieu(1, basis, xi_b)
        r3, dr3 = radial_mathieu(3, basis, xi_b)
        if kind == "sound-hard":
            denom, numer = dr3[0], dr1[0]
        else:
            denom, numer = r3[0], r1[0]
        if abs(denom) < 1e-14 * max(abs(numer), 1.0):
            raise OracleError(
                f"near-degenerate outgoing mode ({basis.family}, {basis.order}): |denom|={abs(denom):.2e}"
            )
        out.append((basis, -coeff * numer / denom))
    return out


def analytic_boundary_field(kind: str, model: IncidentFieldModel) -> Callable:
    """Exact boundary unknown as a callable on the boundary angle s.

    Sound-hard: the total field u on the boundary.  Sound-soft: the
    weighted normal derivative v = du/dn |y'| = du/dxi at xi_b.
    """
    xi_b = np.array([model.frame.xi_b])
    sc = scattering_coefficients(kind, model)
    terms = []
    for (basis, coeff_in), (_, coeff_sc) in zip(model._bases(), sc):
        r1, dr1 = radial_mathieu(1, basis, xi_b)
        r3, dr3 = radial_mathieu(3, basis, xi_b)
        if kind == "sound-hard":
            amp = coeff_in * r1[0] + coeff_sc * r3[0]
        else:
            amp = coeff_in * dr1[0] + coeff_sc * dr3[0]
        terms.append((basis, amp))

    def field(s):
        eta = boundary_eta(s)
        out = np.zeros(np.atleast_1d(eta).shape, dtype=np.complex128)
        for basis, amp in terms:
            out += amp * basis.value(eta)
        return out

    return field


def integral_scattering_coefficient(
    kind: str, model: IncidentFieldModel, family: str, m: int, quad_points: int = 2048
) -> complex:
    """Scattered-mode coefficient via the boundary-trace projection integral.

    Cross-check path: projects the incident boundary data (flux for
    sound-hard, value for sound-soft) onto the angular function with a
    trapezoid rule instead of using modal orthogonality directly.
    """
    basis = mathieu_basis(family, m, model.q)
    eta = 2.0 * np.pi * np.arange(quad_points) / quad_points
    xi_b = np.array([model.frame.xi_b])
    weights = basis.value(eta) * (2.0 * np.pi / quad_points)
    trace = np.zeros(quad_points, dtype=np.complex128)
    for mode_basis, coeff in model._bases():
        r1, dr1 = radial_mathieu(1, mode_basis, xi_b)
        amp = dr1[0] if kind == "sound-hard" else r1[0]
        trace += coeff * amp * mode_basis.value(eta)
    r3, dr3 = radial_mathieu(3, basis, xi_b)
    denom = dr3[0] if kind == "sound-hard" else r3[0]
    return complex(-(weights @ trace) / (np.pi * denom))


def analytic_exterior_field(kind: str, model: IncidentFieldModel, x, y) -> np.ndarray:
    """Total field at exterior Cartesian points from the modal solution."""
    xi, eta = model.frame.to_elliptic(x, y)
    out = model.value(x, y)
    for basis, coeff_sc in scattering_coefficients(kind, model):
        r3, _ = radial_mathieu(3, basis, xi)
        out = out + coeff_sc * r3 * basis.value(eta)
    return out
