"""Branch continuation in the angular velocity.

A branch of fold-m states is traced by marching omega over a uniform
grid and warm-starting every Newton solve from the previous converged
coefficients.  The first grid point has no predecessor, so it is
attempted from a ladder of single-mode annulus perturbations; which
mode the ladder displaces follows the sweep direction, matching the
null-direction structure at the two eigenvalues (outer-dominant near
omega_plus, inner-dominant near omega_minus).

Branch ends show up as solves that stop converging, collapse to the
annulus, or break the geometry.  A failed grid point is retried through
a midpoint bridge solve, and, while the branch is still within ladder
reach of the annulus, from the cold-start ladder (near a bifurcation
point the branch amplitude grows like the square root of the omega
offset, so a coarse first step can outrun the warm seed and fall back
onto the annulus).  An unrecoverable grid point is recorded in
``terminated_at`` and the sweep stops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .contour import VortexContourCoeffs, boundary_distance, perturbed_annulus, sample
from .solver import (
    GeometryBreakdown,
    SingularJacobian,
    SolveReport,
    SolverConfig,
    newton_solve,
)

__all__ = [
    "BranchRecord",
    "Branch",
    "EmptyBranch",
    "default_seed_ladder",
    "sweep",
    "distance_profile",
    "minimum_distance",
]

# First-mode amplitudes tried at the first grid point, in order.
LADDER_AMPLITUDES = (0.02, 0.04, 0.06)


def _near_annulus(coeffs: VortexContourCoeffs) -> bool:
    """Whether a state is within cold-start ladder reach of the annulus."""
    return float(np.abs(coeffs.as_vector()).max()) <= max(LADDER_AMPLITUDES)


class EmptyBranch(RuntimeError):
    """No ladder seed produced a nontrivial state at the first grid point."""


@dataclass(frozen=True)
class BranchRecord:
    """One converged nontrivial state along a branch."""

    omega: float
    report: SolveReport
    distance: float


@dataclass
class Branch:
    """Ordered collection of states traced over an omega grid.

    origin names the eigenvalue end the sweep started from (inferred
    from the march direction); terminated_at is the first grid omega
    that failed both directly and through a bridge solve, or None when
    the sweep reached omega_end.
    """

    b: float
    m: int
    records: list[BranchRecord]
    origin: str
    terminated_at: float | None


def default_seed_ladder(
    b: float, m: int, modes: int, descending: bool
) -> list[VortexContourCoeffs]:
    """Single-mode seed shapes for a cold start near one eigenvalue."""
    if descending:
        return [
            perturbed_annulus(b, m, modes, a1_1=amp) for amp in LADDER_AMPLITUDES
        ]
    return [
        perturbed_annulus(b, m, modes, a2_1=-amp) for amp in LADDER_AMPLITUDES
    ]


def _omega_grid(start: float, end: float, step: float) -> np.ndarray:
    if step == 0.0:
        raise ValueError("omega_step must be nonzero")
    if start == end:
        return np.array([start])
    if (end - start) * step <= 0.0:
        raise ValueError(
            f"omega_step {step} does not march from {start} toward {end}"
        )
    count = int(np.floor((end - start) / step + 1e-9))
    grid = start + step * np.arange(count + 1)
    # Land exactly on the requested end; a short final step is fine.
    if abs(end - grid[-1]) > 1e-12 * max(1.0, abs(end)):
        grid = np.append(grid, end)
    else:
        grid[-1] = end
    return grid


def _attempt(
    b: float,
    m: int,
    omega: float,
    seed: VortexContourCoeffs,
    config: SolverConfig,
) -> SolveReport | None:
    """One guarded solve; None for any outcome that is not a usable state."""
    try:
        report = newton_solve(b, omega, m, seed, config)
    except (GeometryBreakdown, SingularJacobian):
        return None
    if not report.converged or report.trivial:
        return None
    return report


def _record(omega: float, report: SolveReport, config: SolverConfig) -> BranchRecord:
    distance = boundary_distance(sample(report.coeffs, config.nodes))
    return BranchRecord(omega=float(omega), report=report, distance=distance)


def sweep(
    b: float,
    m: int,
    omega_start: float,
    omega_end: float,
    omega_step: float,
    config: SolverConfig,
    seed_ladder: Sequence[VortexContourCoeffs] | None = None,
) -> Branch:
    """Trace a fold-m branch from omega_start toward omega_end.

    Parameters
    ----------
    b, m : float, int
        Inner radius and fold of the family.
    omega_start, omega_end, omega_step : float
        Uniform marching grid; the sign of omega_step must point from
        start to end.  Start one step away from an eigenvalue, not on it.
    config : SolverConfig
        Passed through to every solve.
    seed_ladder : sequence of VortexContourCoeffs, optional
        Cold-start seeds for the first point; defaults to
        `default_seed_ladder` for the sweep direction.

    Raises
    ------
    EmptyBranch
        When every ladder seed fails at omega_start.
    """
    grid = _omega_grid(omega_start, omega_end, omega_step)
    descending = omega_step < 0.0
    origin = "omega_plus" if descending else "omega_minus"
    if seed_ladder is None:
        seed_ladder = default_seed_ladder(b, m, config.modes, descending)

    first = None
    for seed in seed_ladder:
        first = _attempt(b, m, grid[0], seed, config)
        if first is not None:
            break
    if first is None:
        raise EmptyBranch(
            f"no ladder seed converged to a nontrivial state at "
            f"omega = {grid[0]} (b = {b}, m = {m})"
        )

    records = [_record(grid[0], first, config)]
    terminated_at = None
    for omega in grid[1:]:
        previous = records[-1]
        report = _attempt(b, m, omega, previous.report.coeffs, config)
        if report is None:
            # Bridge through the midpoint once before terminating.
            midpoint = 0.5 * (previous.omega + omega)
            bridge = _attempt(b, m, midpoint, previous.report.coeffs, config)
            if bridge is not None:
                report = _attempt(b, m, omega, bridge.coeffs, config)
        if report is None and _near_annulus(previous.report.coeffs):
            # Warm seed collapsed onto the annulus; the cold ladder
            # still works near the bifurcation points, where branch
            # amplitude grows like sqrt of the omega offset and can
            # outrun a coarse first step.  On a developed branch a
            # failed solve means the branch is ending, and re-seeding
            # from the annulus would risk hopping onto a different
            # family, so the rescue is limited to small amplitudes.
            for seed in seed_ladder:
                report = _attempt(b, m, omega, seed, config)
                if report is not None:
                    break
        if report is None:
            terminated_at = float(omega)
            break
        records.append(_record(omega, report, config))
    return Branch(b=b, m=m, records=records, origin=origin, terminated_at=terminated_at)


def distance_profile(branch: Branch) -> list[tuple[float, float]]:
    """(omega, boundary distance) along the branch, in sweep order."""
    return [(record.omega, record.distance) for record in branch.records]


def minimum_distance(branch: Branch) -> tuple[float, float]:
    """(omega, distance) of the closest boundary approach on the branch."""
    if not branch.records:
        raise ValueError("branch has no records")
    best = min(branch.records, key=lambda record: record.distance)
    return best.omega, best.distance
