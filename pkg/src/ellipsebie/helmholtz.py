"""Sound-hard and sound-soft scattering solvers on the thin ellipse.

Three routes to the boundary unknown (total field u for sound-hard,
weighted normal derivative v for sound-soft):

* ``solve_pqr``  - Nystrom method with the product quadrature handling
  the logarithmic kernel singularity (weights from
  :func:`ellipsebie.parity.kress_weights`),
* ``solve_mpqr`` - same, with the mirror-point quadrature cell of the
  smooth part replaced by its arctan asymptotic value,
* ``solve_qpax`` - parity asymptotic expansion built on the half-grid
  operators assembled here from the spectral first-order operator, the
  even-log quadrature, and the two analytic kernel cofactors.

The systems are (I/2 - K) u = incident trace (sound-hard) and
(I/2 + K) v = incident flux trace (sound-soft).
"""

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg, specfun
from .geometry import (
    EllipseShape,
    ellipse_normal_times_speed,
    ellipse_point,
    kress_kernel_matrices,
    phi_factor_matrix,
    psi_factor_matrix,
)
from .mathieu import IncidentFieldModel
from .parity import (
    ParityPair,
    QuadratureGrid,
    SpectralOperator,
    build_grid,
    kress_weight_matrix,
    l1_even,
    l1_odd,
    parity_recombine,
    w_even,
)

SOUND_HARD = "sound-hard"
SOUND_SOFT = "sound-soft"


@dataclass
class ScatteringProblem:
    """One scattering configuration."""

    epsilon: float
    k: float
    kind: str
    incident: IncidentFieldModel
    n: int

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError("epsilon must lie in (0, 1)")
        if self.k <= 0:
            raise ValueError("wavenumber k must be positive")
        if self.kind not in (SOUND_HARD, SOUND_SOFT):
            raise ValueError(f"unknown boundary kind {self.kind!r}")
        if self.n < 2:
            raise ValueError("grid size N must be >= 2")

    @property
    def shape(self) -> EllipseShape:
        return EllipseShape(self.epsilon)


@dataclass
class BoundaryFieldSolution:
    """Boundary unknown samples at the 2N grid nodes."""

    values: np.ndarray
    method: str
    runtime_ms: float
    ill_conditioned: bool = False


def _incident_trace(problem: ScatteringProblem, nodes: np.ndarray) -> np.ndarray:
    if problem.kind == SOUND_HARD:
        return problem.incident.boundary_value(nodes)
    return problem.incident.boundary_flux(nodes)


def _quadrature_matrix(problem: ScatteringProblem, grid: QuadratureGrid, mirror_correction: bool):
    """Discrete double-layer operator; optionally with the mirror fix."""
    k1, k2 = kress_kernel_matrices(grid.nodes, problem.shape, problem.k)
    weights = kress_weight_matrix(grid)
    quad = weights * k1 + grid.spacing * k2
    if mirror_correction:
        rows = np.arange(grid.size)
        mirrors = grid.mirror_index(rows)
        quad[rows, mirrors] = weights[rows, mirrors] * k1[rows, mirrors] - np.arctan(
            grid.spacing / (4.0 * problem.epsilon)
        ) / np.pi
    return quad


def _nystrom_solve(problem: ScatteringProblem, mirror_correction: bool, method: str):
    start = time.perf_counter()
    grid = build_grid(problem.n)
    quad = _quadrature_matrix(problem, grid, mirror_correction)
    sign = -1.0 if problem.kind == SOUND_HARD else 1.0
    a = sign * quad
    np.fill_diagonal(a, a.diagonal() + 0.5)
    rhs = _incident_trace(problem, grid.nodes)
    result = linalg.lu_solve(linalg.DenseSystem(a, rhs))
    return BoundaryFieldSolution(
        values=result.x,
        method=method,
        runtime_ms=1e3 * (time.perf_counter() - start),
        ill_conditioned=result.ill_conditioned,
    )


def solve_pqr(problem: ScatteringProblem) -> BoundaryFieldSolution:
    """Product-quadrature Nystrom solve (no mirror treatment)."""
    return _nystrom_solve(problem, mirror_correction=False, method="pqr")


def solve_mpqr(problem: ScatteringProblem) -> BoundaryFieldSolution:
    """Product quadrature with the arctan mirror-point correction."""
    return _nystrom_solve(problem, mirror_correction=True, method="mpqr")


# ---------------------------------------------------------------------------
# Parity asymptotic solver
# ---------------------------------------------------------------------------
def assemble_h1(parity: str, k: float, grid: QuadratureGrid) -> SpectralOperator:
    """First-order half-grid operator of the scattering expansion.

    Entrywise product of the spectral first-order operator with the
    analytic cofactor psi, minus the even-log quadrature weighted by the
    symmetrized (even) or antisymmetrized (odd) cofactor phi.  Reduces
    to the Laplace operator as k -> 0 (psi -> 1, phi -> 0).
    """
    n = grid.n
    if parity == "even":
        nodes = grid.half_nodes
        base = l1_even(n).matrix
        wlog = w_even(n).matrix
        pair_sign = 1.0
    elif parity == "odd":
        nodes = grid.interior_half_nodes
        base = l1_odd(n).matrix
        wlog = w_even(n).matrix[1:n, 1:n]
        pair_sign = -1.0
    else:
        raise ValueError("parity must be 'even' or 'odd'")
    psi = psi_factor_matrix(nodes, nodes, k)
    phi_direct = phi_factor_matrix(nodes, nodes, k)
    phi_mirror = phi_factor_matrix(nodes, np.pi - nodes, k)
    matrix = base * psi - wlog * 0.5 * (phi_direct + pair_sign * phi_mirror)
    return SpectralOperator(matrix=matrix, parity=parity)


def _zeros_like_nodes(nodes: np.ndarray) -> np.ndarray:
    return np.zeros(nodes.shape, dtype=np.complex128)


def solve_qpax(problem: ScatteringProblem) -> BoundaryFieldSolution:
    """Parity-asymptotic solve of the scattering problem."""
    start = time.perf_counter()
    grid = build_grid(problem.n)
    incident = problem.incident
    half = grid.half_nodes
    interior = grid.interior_half_nodes
    sym = incident.symmetry
    ill = False

    if problem.kind == SOUND_HARD:
        # even: u_ev = f_ev - eps * H1ev f_ev with f_ev = u_in(0, sin s)
        if sym != "odd":
            f_even = incident.line_value(np.sin(half))
        else:
            f_even = _zeros_like_nodes(half)
        if np.any(f_even):
            h1_even = assemble_h1("even", problem.k, grid)
            u_even = f_even - problem.epsilon * (h1_even.matrix @ f_even)
        else:
            u_even = _zeros_like_nodes(half)
        # odd: H1od u_od = f_od with f_od = cos(s) du_in/dx (0, sin s)
        if sym != "even":
            f_odd = np.cos(interior) * incident.line_dx(np.sin(interior))
        else:
            f_odd = _zeros_like_nodes(interior)
        if np.any(f_odd):
            h1_odd = assemble_h1("odd", problem.k, grid)
            result = linalg.lu_solve(linalg.DenseSystem(h1_odd.matrix, f_odd))
            u_odd = result.x
            ill = result.ill_conditioned
        else:
            u_odd = _zeros_like_nodes(interior)
    else:
        # even: v_ev = -H1ev^{-1} [cos^2 s u_xx + sin s u_y](0, sin s)
        if sym != "odd":
            y0 = np.sin(half)
            f1_even = np.cos(half) ** 2 * incident.line_dxx(y0) + y0 * incident.line_dy(y0)
        else:
            f1_even = _zeros_like_nodes(half)
        if np.any(f1_even):
            h1_even = assemble_h1("even", problem.k, grid)
            result = linalg.lu_solve(linalg.DenseSystem(h1_even.matrix, f1_even))
            u_even = -result.x
            ill = result.ill_conditioned
        else:
            u_even = _zeros_like_nodes(half)
        # odd: v_od = f_od + eps * H1od f_od with f_od = cos(s) du_in/dx
        if sym != "even":
            f_odd = np.cos(interior) * incident.line_dx(np.sin(interior))
        else:
            f_odd = _zeros_like_nodes(interior)
        if np.any(f_odd):
            h1_odd = assemble_h1("odd", problem.k, grid)
            u_odd = f_odd + problem.epsilon * (h1_odd.matrix @ f_odd)
        else:
            u_odd = _zeros_like_nodes(interior)

    values = parity_recombine(ParityPair(even=u_even, odd=u_odd), grid)
    return BoundaryFieldSolution(
        values=values,
        method="qpax",
        runtime_ms=1e3 * (time.perf_counter() - start),
        ill_conditioned=ill,
    )


HELMHOLTZ_SOLVERS = {"pqr": solve_pqr, "mpqr": solve_mpqr, "qpax": solve_qpax}


# ---------------------------------------------------------------------------
# Exterior field evaluation
# ---------------------------------------------------------------------------
MIN_BOUNDARY_CLEARANCE_CELLS = 5.0


class CloseEvaluationError(ValueError):
    """Requested points violate the boundary-clearance precondition."""


def boundary_clearance(points: np.ndarray, shape: EllipseShape, samples: int = 4096) -> np.ndarray:
    """Approximate distance from each point to the ellipse boundary."""
    t = 2.0 * np.pi * np.arange(samples) / samples
    bx, by = ellipse_point(t, shape)
    dx = points[:, 0][:, None] - bx[None, :]
    dy = points[:, 1][:, None] - by[None, :]
    return np.sqrt(np.min(dx**2 + dy**2, axis=1))


def evaluate_exterior_field(
    solution: BoundaryFieldSolution,
    problem: ScatteringProblem,
    points,
) -> np.ndarray:
    """Total exterior field at Cartesian points from the boundary unknown.

    Trapezoid quadrature of the representation formula: double layer
    with density u for sound-hard, single layer with density v for
    sound-soft.  Points closer to the boundary than 5 grid cells are
    refused (close evaluation is a separate problem this package does
    not address).
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if points.shape[1] != 2:
        raise ValueError("points must have shape (M, 2)")
    grid = build_grid(problem.n)
    clearance = boundary_clearance(points, problem.shape)
    min_clear = MIN_BOUNDARY_CLEARANCE_CELLS * grid.spacing
    if np.any(clearance < min_clear):
        bad = int(np.sum(clearance < min_clear))
        raise CloseEvaluationError(
            f"{bad} evaluation point(s) closer than {min_clear:.3g} to the boundary; "
            "close evaluation near the layer is out of scope"
        )
    bx, by = ellipse_point(grid.nodes, problem.shape)
    rx = points[:, 0][:, None] - bx[None, :]
    ry = points[:, 1][:, None] - by[None, :]
    dist = np.sqrt(rx**2 + ry**2)
    kr = problem.k * dist
    if problem.kind == SOUND_HARD:
        nx, ny = ellipse_normal_times_speed(grid.nodes, problem.shape)
        kernel = (
            0.25j
            * problem.k
            * specfun.hankel1(1, kr)
            * (nx[None, :] * rx + ny[None, :] * ry)
            / dist
        )
    else:
        kernel = 0.25j * specfun.hankel1(0, kr)
    scattered = grid.spacing * (kernel @ solution.values)
    incident = problem.incident.value(points[:, 0], points[:, 1])
    return incident + scattered
