"""Dense complex linear algebra for the Nystrom systems.

Thin layer over LAPACK LU with partial pivoting (via scipy) adding the
diagnostics the solvers report: pivot growth, a cheap 1-norm condition
estimate, and an ill-conditioning flag.  Factorizations operate on
copies; nothing here mutates caller data.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg


class SingularMatrixError(np.linalg.LinAlgError):
    """Exactly singular pivot encountered during factorization."""


@dataclass
class DenseSystem:
    """Square complex system A x = b."""

    matrix: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=np.complex128)
        b = np.asarray(self.rhs, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"matrix must be square, got shape {a.shape}")
        if b.shape != (a.shape[0],):
            raise ValueError(f"rhs shape {b.shape} does not match order {a.shape[0]}")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("system contains non-finite entries")
        self.matrix = a
        self.rhs = b

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


@dataclass
class LinearSolveResult:
    """Solution vector with factorization diagnostics."""

    x: np.ndarray
    pivot_growth: float
    condition_estimate: float
    ill_conditioned: bool


CONDITION_WARN_THRESHOLD = 1e12
_CONDITION_ITERATIONS = 5


def _inverse_norm_estimate(lu, piv, n: int) -> float:
    """Lower bound on the 1-norm of the inverse by power iteration."""
    x = np.full(n, 1.0 / n, dtype=np.complex128)
    est = 0.0
    for _ in range(_CONDITION_ITERATIONS):
        y = scipy.linalg.lu_solve((lu, piv), x, check_finite=False)
        ny = float(np.sum(np.abs(y)))
        nx = float(np.sum(np.abs(x)))
        if ny == 0.0 or not np.isfinite(ny):
            break
        est = max(est, ny / nx)
        x = y / ny
    return est


def lu_solve(system: DenseSystem) -> LinearSolveResult:
    """Solve A x = b by LU with partial pivoting.

    Raises
    ------
    SingularMatrixError
        If an exactly zero pivot appears.
    """
    a = system.matrix
    n = system.order
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    u_diag = np.abs(np.diag(lu))
    if np.any(u_diag == 0.0):
        raise SingularMatrixError("exactly singular pivot in LU factorization")

    max_a = float(np.max(np.abs(a)))
    pivot_growth = float(np.max(np.abs(np.triu(lu)))) / max_a if max_a > 0 else 1.0

    norm1_a = float(np.max(np.sum(np.abs(a), axis=0)))
    cond = norm1_a * _inverse_norm_estimate(lu, piv, n)
    ill = bool(cond > CONDITION_WARN_THRESHOLD)
    if ill:
        warnings.warn(
            f"estimated 1-norm condition {cond:.2e} exceeds {CONDITION_WARN_THRESHOLD:.0e}",
            RuntimeWarning,
            stacklevel=2,
        )

    x = scipy.linalg.lu_solve((lu, piv), system.rhs, check_finite=False)
    return LinearSolveResult(
        x=x, pivot_growth=pivot_growth, condition_estimate=cond, ill_conditioned=ill
    )


def rel_err_inf(u, v_ref) -> float:
    """Relative infinity-norm error ||u - v_ref||_inf / ||v_ref||_inf."""
    u = np.asarray(u)
    v = np.asarray(v_ref)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    ref = float(np.max(np.abs(v)))
    if ref == 0.0:
        raise ValueError("reference vector has zero infinity norm")
    return float(np.max(np.abs(u - v))) / ref
