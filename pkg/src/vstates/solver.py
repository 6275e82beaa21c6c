"""Newton iteration on the projected boundary equations.

The Jacobian is approximated by one-sided finite differences column by
column and refreshed every iteration; each linear step goes through a
dense LU factorization with partial pivoting.  Convergence is measured
on the largest pointwise residual over the quadrature nodes, not on the
projected coefficients, so a converged report certifies the boundary
equations themselves.

Failure semantics: running out of iterations is an ordinary outcome and
comes back as a report with ``converged=False`` (continuation treats it
as data); geometry degenerating mid-iteration or a singular linear
system raise `GeometryBreakdown` / `SingularJacobian`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .contour import InvalidContour, VortexContourCoeffs
from .residual import DiscreteResidual, assemble

__all__ = [
    "SolverConfig",
    "SolveReport",
    "GeometryBreakdown",
    "SingularJacobian",
    "fd_jacobian",
    "newton_solve",
    "normalize_signs",
]

# LU pivots below this magnitude mean omega sits at (or numerically at)
# a bifurcation eigenvalue or fold of the branch.
MIN_PIVOT = 1e-14

# Coefficients this small are the annulus up to solver noise; genuine
# bifurcated states carry first-mode amplitudes orders above it.
TRIVIAL_AMPLITUDE = 1e-8


class GeometryBreakdown(RuntimeError):
    """Newton update produced a non-positive radius or crossing boundaries."""

    def __init__(self, iteration: int, detail: str):
        super().__init__(
            f"contour degenerated at iteration {iteration}: {detail}"
        )
        self.iteration = iteration


class SingularJacobian(RuntimeError):
    """LU pivot below MIN_PIVOT; the linearization is rank deficient."""

    def __init__(self, pivot: float):
        super().__init__(
            f"Jacobian numerically singular (pivot {pivot:.3e} < {MIN_PIVOT:.0e})"
        )
        self.pivot = pivot


@dataclass
class SolverConfig:
    """Discretization and iteration parameters of one solve.

    modes is the truncation M of the unknown coefficient arrays and
    nodes the quadrature grid size N; N must be a multiple of the fold
    and satisfy N >= 2 m M + 1 (enforced at sampling time).
    """

    modes: int
    nodes: int
    fd_step: float = 1e-9
    tol: float = 1e-12
    max_iter: int = 50

    def __post_init__(self):
        if self.modes < 1:
            raise ValueError(f"modes must be positive, got {self.modes}")
        if self.nodes < 1:
            raise ValueError(f"nodes must be positive, got {self.nodes}")
        if not self.fd_step > 0.0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be positive, got {self.max_iter}")


@dataclass
class SolveReport:
    """Outcome of one Newton run.

    residual_max is re-verified by an independent residual assembly at
    the final (sign-normalized) coefficients, and residual_history
    records the convergence measure before the first and after each
    update.
    """

    coeffs: VortexContourCoeffs
    iterations: int
    residual_max: float
    converged: bool
    trivial: bool
    residual_history: list[float] = field(default_factory=list)


def default_modes(fold: int, nodes: int) -> int:
    """Largest alias-free truncation for an N-node grid at fold m."""
    return (nodes // fold - 1) // 2


def fd_jacobian(
    coeffs: VortexContourCoeffs, omega: float, config: SolverConfig
) -> np.ndarray:
    """One-sided finite-difference Jacobian of the projected residual.

    Column j holds (F(x + h e_j) - F(x)) / h in the flattened ordering
    (a1_1..a1_M, a2_1..a2_M); the Newton update solves J delta = F(x).
    """
    h = config.fd_step
    x0 = coeffs.as_vector()
    base = assemble(coeffs, omega, config.nodes).as_vector()
    size = 2 * coeffs.modes
    jac = np.empty((size, size))
    for j in range(size):
        x = x0.copy()
        x[j] += h
        bumped = VortexContourCoeffs.from_vector(x, coeffs.b, coeffs.fold, coeffs.modes)
        jac[:, j] = (assemble(bumped, omega, config.nodes).as_vector() - base) / h
    return jac


def _lu_solve_checked(jac: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    lu, piv = scipy.linalg.lu_factor(jac)
    smallest = float(np.min(np.abs(np.diag(lu))))
    if smallest < MIN_PIVOT:
        raise SingularJacobian(smallest)
    return scipy.linalg.lu_solve((lu, piv), rhs)


def normalize_signs(coeffs: VortexContourCoeffs) -> VortexContourCoeffs:
    """Canonical branch representative with a_{1,1} > 0.

    Rotating the shape by pi / m flips the sign of every odd-k
    coefficient and leaves the equations invariant, so the two
    representatives are the same V-state.  Applied when a_{1,1} < 0
    (or a_{1,1} = 0 with a_{2,1} > 0); idempotent.
    """
    a1_1 = coeffs.a1[0]
    a2_1 = coeffs.a2[0]
    if a1_1 > 0.0 or (a1_1 == 0.0 and a2_1 <= 0.0):
        return coeffs
    parity = (-1.0) ** np.arange(1, coeffs.modes + 1)
    return coeffs.replace_coefficients(parity * coeffs.a1, parity * coeffs.a2)


def newton_solve(
    b: float,
    omega: float,
    m: int,
    seed: VortexContourCoeffs | None,
    config: SolverConfig,
) -> SolveReport:
    """Solve the fold-m boundary equations at fixed (b, omega).

    Parameters
    ----------
    b, omega, m : float, float, int
        Inner radius, angular velocity and symmetry of the sought state.
    seed : VortexContourCoeffs or None
        Initial shape; None starts from the annulus (and stays on the
        trivial branch).  Must carry the same b, fold and mode count as
        the solve.
    config : SolverConfig
        Discretization and iteration parameters.

    Returns
    -------
    SolveReport
        converged=False when max_iter runs out; iterations counts the
        Newton updates actually applied.

    Raises
    ------
    GeometryBreakdown
        If an update leaves the space of valid shapes.
    SingularJacobian
        If the linear solve meets a pivot below MIN_PIVOT.
    """
    if seed is None:
        seed = VortexContourCoeffs.annulus(b, m, config.modes)
    if seed.b != b or seed.fold != m or seed.modes != config.modes:
        raise ValueError(
            f"seed shape (b={seed.b}, fold={seed.fold}, modes={seed.modes}) "
            f"does not match the requested solve (b={b}, fold={m}, "
            f"modes={config.modes})"
        )

    current = seed
    residual = assemble(current, omega, config.nodes)
    history = [residual.max_abs]
    iterations = 0
    trivial = False
    while True:
        while residual.max_abs >= config.tol:
            if iterations >= config.max_iter:
                return SolveReport(
                    coeffs=current,
                    iterations=iterations,
                    residual_max=residual.max_abs,
                    converged=False,
                    trivial=False,
                    residual_history=history,
                )
            jac = fd_jacobian(current, omega, config)
            step = _lu_solve_checked(jac, residual.as_vector())
            x = current.as_vector() - step
            iterations += 1
            try:
                current = VortexContourCoeffs.from_vector(x, b, m, config.modes)
                residual = assemble(current, omega, config.nodes)
            except InvalidContour as exc:
                raise GeometryBreakdown(iterations, str(exc)) from exc
            history.append(residual.max_abs)
        trivial = float(np.max(np.abs(current.as_vector()))) < TRIVIAL_AMPLITUDE
        normalized = current if trivial else normalize_signs(current)
        if normalized is current:
            break
        # Re-verify the certificate on the normalized representative; if
        # rounding nudged it back over tol the outer loop polishes it.
        current = normalized
        residual = assemble(current, omega, config.nodes)
        history.append(residual.max_abs)
    return SolveReport(
        coeffs=current,
        iterations=iterations,
        residual_max=residual.max_abs,
        converged=True,
        trivial=trivial,
        residual_history=history,
    )
