"""Quadrature grid, parity decomposition, and the spectral operators.

Grid convention: 2N equispaced nodes s_i = i*pi/N - pi/2, so index
i and (2N - i) mod 2N are mirror partners (s_i + s_mirror = pi mod 2pi)
and the half grid i in [0, N] spans one side of the major axis.  In the
offset angle theta = s + pi/2 the even/odd parity classes (under
s -> pi - s) become plain cosine/sine series, which is what the DCT/DST
involutions diagonalize.

Sign convention: the diagonalized derivative-like operator here acts as
L1[cos(m theta)] = -m cos(m theta) and L1[sin(m theta)] = +m sin(m theta).
These signs are fixed by the continuous eigenrelations
L1[cos(m t)](s) = (-1)^(m+1) m cos(m s), L1[sin(m t)](s) = (-1)^m m sin(m s)
evaluated on this offset grid, and are validated against the analytic
Laplace density in the test suite.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class QuadratureGrid:
    """2N equispaced nodes s_i = i*pi/N - pi/2 with the mirror-index map."""

    n: int
    nodes: np.ndarray
    spacing: float

    @property
    def size(self) -> int:
        return 2 * self.n

    @property
    def half_nodes(self) -> np.ndarray:
        """Nodes s_0..s_N covering [-pi/2, pi/2]."""
        return self.nodes[: self.n + 1]

    @property
    def interior_half_nodes(self) -> np.ndarray:
        """Nodes s_1..s_{N-1} (odd-part support)."""
        return self.nodes[1 : self.n]

    def mirror_index(self, i):
        """Index of the mirror partner: s_i + s_mirror = pi (mod 2pi)."""
        return (2 * self.n - np.asarray(i)) % (2 * self.n)


@dataclass
class ParityPair:
    """Even part on nodes 0..N, odd part on nodes 1..N-1."""

    even: np.ndarray
    odd: np.ndarray


def build_grid(n: int) -> QuadratureGrid:
    """Quadrature grid with 2N nodes; requires N >= 2."""
    if n < 2:
        raise ValueError(f"grid size N must be >= 2, got {n}")
    spacing = np.pi / n
    nodes = np.arange(2 * n) * spacing - 0.5 * np.pi
    nodes.flags.writeable = False
    return QuadratureGrid(n=n, nodes=nodes, spacing=spacing)


def parity_split(samples, grid: QuadratureGrid) -> ParityPair:
    """Split full-grid samples into even/odd parts under s -> pi - s."""
    f = np.asarray(samples)
    if f.shape != (2 * grid.n,):
        raise ValueError(f"expected {2 * grid.n} samples, got shape {f.shape}")
    n = grid.n
    idx = np.arange(n + 1)
    mirror = grid.mirror_index(idx)
    even = 0.5 * (f[idx] + f[mirror])
    odd = 0.5 * (f[1:n] - f[mirror[1:n]])
    return ParityPair(even=even, odd=odd)


def parity_recombine(pair: ParityPair, grid: QuadratureGrid) -> np.ndarray:
    """Reassemble full-grid samples from a parity pair.

    The mirrored half picks up the odd part with a minus sign (odd
    functions satisfy f(pi - s) = -f(s)); with that sign,
    recombine(split(f)) = f exactly for any samples.
    """
    n = grid.n
    if pair.even.shape != (n + 1,) or pair.odd.shape != (n - 1,):
        raise ValueError("parity pair sizes inconsistent with grid")
    dtype = np.result_type(pair.even, pair.odd)
    out = np.empty(2 * n, dtype=dtype)
    out[0] = pair.even[0]
    out[n] = pair.even[n]
    out[1:n] = pair.even[1:n] + pair.odd
    rear = np.arange(n + 1, 2 * n)
    out[rear] = pair.even[2 * n - rear] - pair.odd[2 * n - rear - 1]
    return out


# ---------------------------------------------------------------------------
# Spectral operators on the half grid
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SpectralOperator:
    """Dense operator on half-grid samples, tagged by parity class."""

    matrix: np.ndarray
    parity: str  # 'even' or 'odd'

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, vec):
        return self.matrix @ vec


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@lru_cache(maxsize=None)
def _dct_cached(n: int) -> np.ndarray:
    i = np.arange(n + 1)[:, None]
    j = np.arange(n + 1)[None, :]
    c = np.sqrt(2.0 / n) * np.cos(i * j * np.pi / n)
    c[:, 0] *= 0.5
    c[:, n] *= 0.5
    return _freeze(c)


@lru_cache(maxsize=None)
def _dst_cached(n: int) -> np.ndarray:
    i = np.arange(1, n)[:, None]
    j = np.arange(1, n)[None, :]
    return _freeze(np.sqrt(2.0 / n) * np.sin(i * j * np.pi / n))


def dct_matrix(n: int) -> SpectralOperator:
    """(N+1)-point cosine-transform involution (half-weight end columns)."""
    if n < 2:
        raise ValueError("N must be >= 2")
    return SpectralOperator(matrix=_dct_cached(n), parity="even")


def dst_matrix(n: int) -> SpectralOperator:
    """(N-1)-point sine-transform involution."""
    if n < 2:
        raise ValueError("N must be >= 2")
    return SpectralOperator(matrix=_dst_cached(n), parity="odd")


@lru_cache(maxsize=None)
def _l1_even_cached(n: int) -> np.ndarray:
    c = _dct_cached(n)
    return _freeze(c @ np.diag(-np.arange(n + 1.0)) @ c)


@lru_cache(maxsize=None)
def _l1_odd_cached(n: int) -> np.ndarray:
    s = _dst_cached(n)
    return _freeze(s @ np.diag(np.arange(1.0, n)) @ s)


def l1_even(n: int) -> SpectralOperator:
    """Even-class first-order operator; annihilates constants."""
    return SpectralOperator(matrix=_l1_even_cached(n), parity="even")


def l1_odd(n: int) -> SpectralOperator:
    """Odd-class first-order operator; invertible (spectrum 1..N-1)."""
    return SpectralOperator(matrix=_l1_odd_cached(n), parity="odd")


@lru_cache(maxsize=None)
def _l1_odd_inverse_cached(n: int) -> np.ndarray:
    s = _dst_cached(n)
    return _freeze(s @ np.diag(1.0 / np.arange(1.0, n)) @ s)


def l1_odd_inverse(n: int) -> SpectralOperator:
    """Spectral inverse of :func:`l1_odd` (no factorization involved)."""
    return SpectralOperator(matrix=_l1_odd_inverse_cached(n), parity="odd")


@lru_cache(maxsize=None)
def _kress_weights_cached(n: int) -> np.ndarray:
    k = np.arange(n + 1)
    m = np.arange(1, n)
    cos_table = np.cos(np.outer(k, m) * np.pi / n)  # (n+1, n-1)
    r = -((-1.0) ** k) * np.pi / n**2 - (2.0 * np.pi / n) * (cos_table @ (1.0 / m))
    return _freeze(r)


def kress_weights(n: int) -> np.ndarray:
    """Log-kernel quadrature weights R_k, k in [0, N].

    Row i of the full-grid rule uses weight R at index |i - j| folded
    into [0, N] by 2N-periodicity (see :func:`kress_weight_matrix`).
    """
    if n < 2:
        raise ValueError("N must be >= 2")
    return _kress_weights_cached(n)


@lru_cache(maxsize=None)
def _kress_weight_matrix_cached(n: int) -> np.ndarray:
    r = _kress_weights_cached(n)
    i = np.arange(2 * n)
    diff = np.abs(i[:, None] - i[None, :]) % (2 * n)
    folded = np.minimum(diff, 2 * n - diff)
    return _freeze(r[folded])


def kress_weight_matrix(grid: QuadratureGrid) -> np.ndarray:
    """(2N, 2N) matrix W with W[i, j] = R_{fold(|i-j|)}.

    Applied to samples of a smooth 2pi-periodic g, row i approximates
    the integral of ln(4 sin^2((s_i - t)/2)) g(t) over the period.
    """
    return _kress_weight_matrix_cached(grid.n)


@lru_cache(maxsize=None)
def _w_even_cached(n: int) -> np.ndarray:
    c = _dct_cached(n)
    diag = np.zeros(n + 1)
    diag[1:] = -2.0 * np.pi / np.arange(1.0, n + 1)
    return _freeze(c @ np.diag(diag) @ c)


def w_even(n: int) -> SpectralOperator:
    """Half-grid log-kernel quadrature for even-class integrands.

    Diagonalized by the cosine involution with eigenvalues 0 (constants)
    and -2 pi / m; consistent with the full-grid Kress rule applied to
    an even-reflected integrand.
    """
    if n < 2:
        raise ValueError("N must be >= 2")
    return SpectralOperator(matrix=_w_even_cached(n), parity="even")


def apply_l1_full(samples, grid: QuadratureGrid) -> np.ndarray:
    """Apply the parity-split first-order operator to full-grid samples."""
    pair = parity_split(samples, grid)
    ev = l1_even(grid.n).matrix @ pair.even
    od = l1_odd(grid.n).matrix @ pair.odd
    return parity_recombine(ParityPair(even=ev, odd=od), grid)
