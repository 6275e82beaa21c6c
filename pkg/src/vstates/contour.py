"""Boundary representation of a doubly connected rotating patch.

Both boundaries are star-shaped graphs over the polar angle,

    z_j(theta) = exp(i theta) rho_j(theta),
    rho_1(theta) = 1 + sum_k a_{1,k} cos(m k theta),
    rho_2(theta) = b + sum_k a_{2,k} cos(m k theta),

truncated at M modes.  The cosine-only ansatz hard-codes the m-fold
rotational symmetry and the reflection symmetry about the real axis;
the annulus itself is the zero-coefficient member.  Sampling happens on
the uniform grid theta_i = 2 pi i / N with N a multiple of m, which
makes the fundamental sector an exact subsampling and lets downstream
quadrature exploit the symmetry.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

FloatArray = NDArray[np.float64]
ComplexArray = NDArray[np.complex128]

__all__ = [
    "InvalidContour",
    "VortexContourCoeffs",
    "SampledContour",
    "FoldReducedContour",
    "BoundaryTrace",
    "perturbed_annulus",
    "sample",
    "boundary_distance",
    "fold_reduce",
    "reconstruct",
]


class InvalidContour(ValueError):
    """A coefficient set whose curves are not a valid patch boundary."""


@dataclass(frozen=True)
class VortexContourCoeffs:
    """Cosine amplitudes of both boundaries at fold m.

    a1 and a2 hold the amplitudes a_{j,k} for k = 1..M; the base radii
    1 and b are implicit.  Arrays are copied and frozen on construction.
    """

    b: float
    fold: int
    modes: int
    a1: FloatArray
    a2: FloatArray

    def __post_init__(self):
        if not 0.0 < self.b < 1.0:
            raise ValueError(f"inner radius must lie in (0, 1), got {self.b}")
        if self.fold < 1:
            raise ValueError(f"fold must be a positive integer, got {self.fold}")
        if self.modes < 1:
            raise ValueError(f"mode count must be positive, got {self.modes}")
        a1 = np.asarray(self.a1, dtype=np.float64).copy()
        a2 = np.asarray(self.a2, dtype=np.float64).copy()
        if a1.shape != (self.modes,) or a2.shape != (self.modes,):
            raise ValueError(
                f"coefficient arrays must have shape ({self.modes},), "
                f"got {a1.shape} and {a2.shape}"
            )
        if not (np.all(np.isfinite(a1)) and np.all(np.isfinite(a2))):
            raise ValueError("coefficients must be finite")
        a1.setflags(write=False)
        a2.setflags(write=False)
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)

    @classmethod
    def annulus(cls, b: float, fold: int, modes: int) -> "VortexContourCoeffs":
        zeros = np.zeros(modes)
        return cls(b=b, fold=fold, modes=modes, a1=zeros, a2=zeros)

    def as_vector(self) -> FloatArray:
        """Flatten to the solver unknown ordering (a1_1..a1_M, a2_1..a2_M)."""
        return np.concatenate([self.a1, self.a2])

    def replace_coefficients(self, a1: FloatArray, a2: FloatArray) -> "VortexContourCoeffs":
        return VortexContourCoeffs(b=self.b, fold=self.fold, modes=self.modes, a1=a1, a2=a2)

    @classmethod
    def from_vector(
        cls, x: FloatArray, b: float, fold: int, modes: int
    ) -> "VortexContourCoeffs":
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (2 * modes,):
            raise ValueError(f"expected vector of length {2 * modes}, got {x.shape}")
        return cls(b=b, fold=fold, modes=modes, a1=x[:modes], a2=x[modes:])


def perturbed_annulus(
    b: float, fold: int, modes: int, a1_1: float = 0.0, a2_1: float = 0.0
) -> VortexContourCoeffs:
    """Annulus with only the first mode of each boundary displaced.

    The standard seed shape for the Newton solver.
    """
    a1 = np.zeros(modes)
    a2 = np.zeros(modes)
    a1[0] = a1_1
    a2[0] = a2_1
    return VortexContourCoeffs(b=b, fold=fold, modes=modes, a1=a1, a2=a2)


class BoundaryTrace(NamedTuple):
    """One sampled boundary: node positions and parameter derivatives."""

    z: ComplexArray
    dz: ComplexArray


@dataclass(frozen=True)
class SampledContour:
    """Both boundaries sampled on the uniform angular grid.

    theta[i] = 2 pi i / N, z_j[i] = exp(i theta) rho_j(theta[i]) and
    dz_j[i] the analytic derivative d z_j / d theta at the node.
    """

    nodes: int
    fold: int
    theta: FloatArray
    z1: ComplexArray
    z2: ComplexArray
    dz1: ComplexArray
    dz2: ComplexArray

    @property
    def outer(self) -> BoundaryTrace:
        return BoundaryTrace(self.z1, self.dz1)

    @property
    def inner(self) -> BoundaryTrace:
        return BoundaryTrace(self.z2, self.dz2)


@dataclass(frozen=True)
class FoldReducedContour:
    """Fundamental-sector slice (N/m leading nodes) of a SampledContour."""

    nodes: int
    fold: int
    theta: FloatArray
    z1: ComplexArray
    z2: ComplexArray
    dz1: ComplexArray
    dz2: ComplexArray


@functools.lru_cache(maxsize=16)
def _basis(nodes: int, fold: int, modes: int) -> tuple[FloatArray, FloatArray, ComplexArray]:
    """Cached sampling matrices for a given grid geometry.

    Returns (C, S, e) with C[i, k] = cos(m (k+1) theta_i),
    S[i, k] = m (k+1) sin(m (k+1) theta_i) and e[i] = exp(i theta_i).
    """
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    freq = fold * np.arange(1, modes + 1)
    phase = theta[:, None] * freq[None, :]
    cos = np.cos(phase)
    sin = np.sin(phase) * freq[None, :]
    cos.setflags(write=False)
    sin.setflags(write=False)
    unit = np.exp(1j * theta)
    unit.setflags(write=False)
    return cos, sin, unit


def sample(coeffs: VortexContourCoeffs, nodes: int) -> SampledContour:
    """Evaluate both boundaries and their derivatives on the N-node grid.

    Parameters
    ----------
    coeffs : VortexContourCoeffs
        Shape to sample.
    nodes : int
        Grid size N; must be a multiple of the fold and satisfy the
        alias-free bound N >= 2 m M + 1.

    Raises
    ------
    InvalidContour
        If either radius function is non-positive or the boundaries
        cross; the message names the violated constraint and an
        offending angle.
    """
    m, M = coeffs.fold, coeffs.modes
    if nodes < 2 * m * M + 1:
        raise ValueError(
            f"nodes={nodes} is below the alias-free sampling bound "
            f"2*m*M + 1 = {2 * m * M + 1}"
        )
    if nodes % m != 0:
        raise ValueError(f"nodes={nodes} must be a multiple of the fold {m}")
    cos, sin, unit = _basis(nodes, m, M)
    theta = 2.0 * np.pi * np.arange(nodes) / nodes

    rho1 = 1.0 + cos @ coeffs.a1
    rho2 = coeffs.b + cos @ coeffs.a2
    drho1 = -(sin @ coeffs.a1)
    drho2 = -(sin @ coeffs.a2)

    worst = int(np.argmin(rho2))
    if rho2[worst] <= 0.0:
        raise InvalidContour(
            f"inner radius must stay positive; rho_2({theta[worst]:.6f}) = "
            f"{rho2[worst]:.6e}"
        )
    worst = int(np.argmin(rho1))
    if rho1[worst] <= 0.0:
        raise InvalidContour(
            f"outer radius must stay positive; rho_1({theta[worst]:.6f}) = "
            f"{rho1[worst]:.6e}"
        )
    gap = rho1 - rho2
    worst = int(np.argmin(gap))
    if gap[worst] <= 0.0:
        raise InvalidContour(
            f"boundaries must not cross; (rho_1 - rho_2)({theta[worst]:.6f}) = "
            f"{gap[worst]:.6e}"
        )

    z1 = unit * rho1
    z2 = unit * rho2
    dz1 = unit * (1j * rho1 + drho1)
    dz2 = unit * (1j * rho2 + drho2)
    return SampledContour(
        nodes=nodes, fold=m, theta=theta, z1=z1, z2=z2, dz1=dz1, dz2=dz2
    )


def fold_reduce(sc: SampledContour) -> FoldReducedContour:
    """Restrict a sampled contour to its fundamental sector.

    The m-fold symmetry makes the remaining m - 1 sectors exact phase
    rotations of the returned slice; `reconstruct` inverts the
    operation.  With fold 1 this is the identity.
    """
    m = sc.fold
    if sc.nodes % m != 0:
        raise ValueError(f"nodes={sc.nodes} is not a multiple of the fold {m}")
    ns = sc.nodes // m
    return FoldReducedContour(
        nodes=sc.nodes,
        fold=m,
        theta=sc.theta[:ns],
        z1=sc.z1[:ns],
        z2=sc.z2[:ns],
        dz1=sc.dz1[:ns],
        dz2=sc.dz2[:ns],
    )


def reconstruct(reduced: FoldReducedContour) -> SampledContour:
    """Rebuild the full grid from a fundamental-sector slice."""
    m = reduced.fold
    rotations = np.exp(2j * np.pi * np.arange(m) / m)

    def tile(values: ComplexArray) -> ComplexArray:
        return (rotations[:, None] * values[None, :]).reshape(-1)

    theta = 2.0 * np.pi * np.arange(reduced.nodes) / reduced.nodes
    return SampledContour(
        nodes=reduced.nodes,
        fold=m,
        theta=theta,
        z1=tile(reduced.z1),
        z2=tile(reduced.z2),
        dz1=tile(reduced.dz1),
        dz2=tile(reduced.dz2),
    )


def _trig_interpolant(values: ComplexArray):
    """Exact band-limited interpolant through equispaced samples.

    Valid because sampling is alias-free by construction; evaluation
    costs O(N) per point.
    """
    n = len(values)
    coef = np.fft.fft(values) / n
    freq = np.fft.fftfreq(n, d=1.0 / n)

    def evaluate(alpha: float) -> complex:
        return complex(np.sum(coef * np.exp(1j * freq * alpha)))

    return evaluate


_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_min(f, lo: float, hi: float, iterations: int = 40) -> float:
    """Golden-section minimizer; returns the interval midpoint at exit."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iterations):
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return 0.5 * (lo + hi)


def boundary_distance(sc: SampledContour, refine: bool = False) -> float:
    """Minimum distance between the outer and inner boundary.

    The default is the discrete minimum over all N x N node pairs.  With
    ``refine=True`` the discrete argmin is polished by golden-section
    coordinate descent on the band-limited interpolants of the two
    curves, which removes the O(grid spacing squared) bias of the node
    minimum.
    """
    diff = np.abs(sc.z1[:, None] - sc.z2[None, :])
    flat = int(np.argmin(diff))
    i, j = divmod(flat, sc.nodes)
    best = float(diff[i, j])
    if not refine:
        return best

    z1_at = _trig_interpolant(sc.z1)
    z2_at = _trig_interpolant(sc.z2)
    spacing = 2.0 * np.pi / sc.nodes
    alpha = sc.theta[i]
    beta = sc.theta[j]
    for _ in range(3):
        alpha = _golden_min(
            lambda a: abs(z1_at(a) - z2_at(beta)), alpha - spacing, alpha + spacing
        )
        beta = _golden_min(
            lambda c: abs(z1_at(alpha) - z2_at(c)), beta - spacing, beta + spacing
        )
    refined = abs(z1_at(alpha) - z2_at(beta))
    return float(min(best, refined))
