"""Linear theory of the rotating annulus: dispersion relation and
bifurcation eigenvalues.

The annular patch ``b < |z| < 1`` rotates rigidly at any angular
velocity.  Curves of nontrivial m-fold symmetric doubly connected
rotating patches branch off the annulus at special angular velocities
where the linearized boundary equations lose injectivity.  The
linearization decouples into 2x2 blocks indexed by an integer frequency
``n``; a block is singular exactly at the zeros of its determinant

    delta_n(lam, b) = ((1 - lam) + b^2 + n (b^2 - lam)) (n (1 - lam) - lam)
                      + b^(2 n + 2),

where ``lam = 1 - 2 omega`` is the spectral parameter conjugate to the
angular velocity ``omega``.  A perturbation at frequency ``n`` produces
an (n + 1)-fold symmetric shape, so the public entry points here are
indexed by the fold count ``m`` and evaluate the block at ``n = m - 1``.

For each fold ``m >= 3`` there is a critical inner radius ``b_m``
(`critical_radius`) below which delta_{m-1} has two distinct real roots
in lambda, hence two bifurcation angular velocities
(`eigenvalues_for_fold`).  At ``b = b_m`` the pair collides and the
branch point degenerates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

__all__ = [
    "DispersionPoint",
    "Infeasible",
    "FrequencyMatrix",
    "delta",
    "feasibility",
    "critical_radius",
    "eigenvalues_for_fold",
    "frequency_matrix",
    "kernel_vector",
    "double_eigenvalue_locus",
    "double_eigenvalue_radius",
]


def _ipow(base: float, exponent: int) -> float:
    """Integer power by repeated squaring.

    Keeps the rounding error at O(log2(exponent)) multiplications, which
    matters for the large powers of b appearing in the dispersion
    relation.
    """
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    result = 1.0
    square = float(base)
    e = exponent
    while e:
        if e & 1:
            result *= square
        e >>= 1
        if e:
            square *= square
    return result


def _check_inner_radius(b: float) -> None:
    if not 0.0 < b < 1.0:
        raise ValueError(f"inner radius must lie in (0, 1), got {b}")


def delta(n: int, lam: float, b: float) -> float:
    """Determinant of the frequency-n block of the linearized equations.

    Parameters
    ----------
    n : int
        Frequency of the block, n >= 0.
    lam : float
        Spectral parameter, lam = 1 - 2 omega.
    b : float
        Inner radius of the annulus, 0 < b < 1.

    Returns
    -------
    float
        delta_n(lam, b); zeros in lam mark bifurcation points.
    """
    if n < 0:
        raise ValueError(f"frequency must be non-negative, got {n}")
    _check_inner_radius(b)
    b2 = b * b
    outer = (1.0 - lam) + b2 + n * (b2 - lam)
    inner = n * (1.0 - lam) - lam
    return outer * inner + _ipow(b, 2 * n + 2)


def feasibility(m: int, b: float) -> float:
    """Sign certificate for the existence of a fold-m eigenvalue pair.

    Evaluates ``f_m(b) = 1 + b^m - m (1 - b^2) / 2``.  The discriminant
    of the fold-m quadratic factors as a positive quantity times
    ``-f_m(b)``, so two distinct real bifurcation angular velocities
    exist exactly when the returned value is negative.  ``f_m`` is
    strictly increasing in b, which makes its unique sign change the
    critical radius b_m.
    """
    if m < 1:
        raise ValueError(f"fold must be a positive integer, got {m}")
    return 1.0 + _ipow(b, m) - 0.5 * m * (1.0 - b * b)


def _safeguarded_root(
    f: Callable[[float], float],
    df: Callable[[float], float],
    lo: float,
    hi: float,
    f_tol: float = 1e-13,
    width_tol: float = 1e-15,
    max_iter: int = 200,
) -> float:
    """Root of a monotone function on a bracketing interval.

    Bisection supplies the safeguard; Newton steps are taken whenever
    they stay inside the current bracket.  Terminates at |f| <= f_tol or
    bracket width <= width_tol.
    """
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0.0) == (fhi < 0.0):
        raise ValueError("root is not bracketed")
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = f(x)
        if abs(fx) <= f_tol or (hi - lo) <= width_tol:
            return x
        if (fx < 0.0) == (flo < 0.0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        d = df(x)
        if d != 0.0:
            candidate = x - fx / d
            x = candidate if lo < candidate < hi else 0.5 * (lo + hi)
        else:
            x = 0.5 * (lo + hi)
    return x


def critical_radius(m: int) -> float:
    """Largest inner radius admitting a fold-m eigenvalue pair.

    Returns the unique root of `feasibility` in (0, 1), located to
    |f_m| <= 1e-13.  Requires m >= 3: folds 1 and 2 have f_m >= 0 on the
    whole interval and never bifurcate.
    """
    if m < 3:
        raise ValueError(f"fold must be >= 3, got {m}")

    def f(b: float) -> float:
        return feasibility(m, b)

    def df(b: float) -> float:
        return m * (b + _ipow(b, m - 1))

    return _safeguarded_root(f, df, 0.0, 1.0)


@dataclass(frozen=True)
class DispersionPoint:
    """Eigenvalue pair of the fold-m dispersion relation at one (m, b).

    lambda_minus pairs with omega_plus and lambda_plus with omega_minus
    through lam = 1 - 2 omega.
    """

    fold: int
    inner_radius: float
    lambda_minus: float
    lambda_plus: float
    omega_minus: float
    omega_plus: float
    transversal: bool

    @property
    def feasible(self) -> bool:
        return True


@dataclass(frozen=True)
class Infeasible:
    """Marker for (m, b) past the critical radius: no real eigenvalue pair.

    Carries the offending feasibility value f_m(b) >= 0.
    """

    fold: int
    inner_radius: float
    feasibility: float

    @property
    def feasible(self) -> bool:
        return False


def eigenvalues_for_fold(m: int, b: float) -> Union[DispersionPoint, Infeasible]:
    """Both bifurcation angular velocities of fold m at inner radius b.

    Solves delta_{m-1}(lam, b) = 0 in closed form:

        omega_m^{+/-}(b) = (1 - b^2) / 4
                           +/- sqrt((m (1 - b^2) / 2 - 1)^2 - b^(2 m)) / (2 m)

    The discriminant is evaluated in the factored form (g - h)(g + h),
    g = m (1 - b^2) / 2 - 1, h = b^m, to avoid the cancellation the
    squared form suffers near the critical radius.

    Returns an `Infeasible` marker when f_m(b) >= 0 (that is, b >= b_m).
    """
    if m < 3:
        raise ValueError(f"fold must be >= 3, got {m}")
    _check_inner_radius(b)
    f = feasibility(m, b)
    if f >= 0.0:
        return Infeasible(fold=m, inner_radius=b, feasibility=f)
    g = 0.5 * m * (1.0 - b * b) - 1.0
    h = _ipow(b, m)
    # f < 0 forces g > h > 0, so both factors are positive.
    radius = math.sqrt((g - h) * (g + h)) / (2.0 * m)
    center = 0.25 * (1.0 - b * b)
    omega_minus = center - radius
    omega_plus = center + radius
    return DispersionPoint(
        fold=m,
        inner_radius=b,
        lambda_minus=1.0 - 2.0 * omega_plus,
        lambda_plus=1.0 - 2.0 * omega_minus,
        omega_minus=omega_minus,
        omega_plus=omega_plus,
        transversal=True,
    )


@dataclass(frozen=True)
class FrequencyMatrix:
    """2x2 block of the linearized boundary equations at frequency n."""

    n: int
    lam: float
    b: float
    entries: np.ndarray


def frequency_matrix(n: int, lam: float, b: float) -> FrequencyMatrix:
    """Assemble the frequency-n block.

    Its determinant equals b * delta_n(lam, b), so the block drops rank
    exactly at the dispersion roots; the null direction there is
    `kernel_vector`.
    """
    if n < 0:
        raise ValueError(f"frequency must be non-negative, got {n}")
    _check_inner_radius(b)
    b2 = b * b
    entries = np.array(
        [
            [(1.0 - lam) + b2 + n * (b2 - lam), -_ipow(b, n + 2)],
            [_ipow(b, n + 1), b * (n * (1.0 - lam) - lam)],
        ]
    )
    return FrequencyMatrix(n=n, lam=lam, b=b, entries=entries)


def kernel_vector(n: int, lam: float, b: float) -> tuple[float, float]:
    """Null direction (outer, inner amplitude) of the frequency-n block.

    Annihilated by `frequency_matrix` whenever delta_n(lam, b) = 0; away
    from roots it is merely the canonical candidate direction.
    """
    if n < 0:
        raise ValueError(f"frequency must be non-negative, got {n}")
    _check_inner_radius(b)
    return (n * (1.0 - lam) - lam, -_ipow(b, n))


def double_eigenvalue_locus(n: int, b: float) -> float:
    """Defect function whose root marks a double eigenvalue at frequency n.

    Evaluates ``phi_n(b) = (1 - b^2) n - (1 + b^2) - 2 b^(n + 1)``.
    phi_n decreases strictly from n - 1 at b = 0 to -4 at b = 1, so for
    n >= 2 it has exactly one root: the inner radius at which the two
    frequency-n eigenvalues collide.
    """
    if n < 2:
        raise ValueError(f"frequency must be >= 2, got {n}")
    b2 = b * b
    return (1.0 - b2) * n - (1.0 + b2) - 2.0 * _ipow(b, n + 1)


def double_eigenvalue_radius(n: int) -> float:
    """Unique root of `double_eigenvalue_locus` in (0, 1)."""
    if n < 2:
        raise ValueError(f"frequency must be >= 2, got {n}")

    def f(b: float) -> float:
        return double_eigenvalue_locus(n, b)

    def df(b: float) -> float:
        return -2.0 * b * (n + 1.0) - 2.0 * (n + 1.0) * _ipow(b, n)

    return _safeguarded_root(f, df, 0.0, 1.0)
