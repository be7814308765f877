"""Mapping between a Fresnel propagation (z, R_A, wavelength) and an FrFT order.

On the photon branch the output sphere radius is ``R_B = -R_A`` and::

    mu = z / R_A,   eps**2 = mu / (2 - mu),   sin(alpha) = mu / eps,
    cos(alpha) = 1 - mu,   scale = sqrt(wavelength * eps * R_A)

so ``cos(alpha) + eps*sin(alpha) == 1`` and input and output reduced
coordinates share one scale.  :func:`general_geometry` solves the general
correspondence for an arbitrary ``R_B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import constants

from .errors import InvalidSpec, NoRealSolution, NonpositiveDistance, NonpositiveOrder, OutOfBranch
from .field import SampledField
from .frft import ReducedSignal

__all__ = [
    "FLAT_MU",
    "PropagationGeometry",
    "MassTerm",
    "geometry_from_z",
    "geometry_from_alpha",
    "general_geometry",
    "identity_residuals",
    "q_to_x",
    "x_to_q",
    "reduce_field",
    "unreduce_field",
]

# stand-in mu for a flat (collimated) input when a finite R_A is needed
FLAT_MU = 1e-6


@dataclass(frozen=True)
class PropagationGeometry:
    z: float
    R_A: float
    wavelength: float
    mu: float
    epsilon: float
    alpha: float
    R_B: float
    flat_input: bool = False

    @property
    def scale(self) -> float:
        return math.sqrt(self.wavelength * self.epsilon * self.R_A)

    @property
    def output_factor(self) -> float:
        """``cos(alpha) + eps*sin(alpha)``; exactly 1 on the photon branch."""
        return math.cos(self.alpha) + self.epsilon * math.sin(self.alpha)

    @property
    def output_scale(self) -> float:
        return self.scale / self.output_factor

    def to_json(self) -> dict:
        return {
            "z_m": self.z,
            "R_A_m": None if self.flat_input else self.R_A,
            "R_A_effective_m": self.R_A,
            "lambda_m": self.wavelength,
            "mu": self.mu,
            "epsilon": self.epsilon,
            "alpha_rad": self.alpha,
            "R_B_m": self.R_B,
            "scale_m": self.scale,
        }


@dataclass(frozen=True)
class MassTerm:
    """Effective oscillator mass ``hbar*k/c`` of a field mode."""

    wavelength: float

    @property
    def k(self) -> float:
        return 2 * math.pi / self.wavelength

    @property
    def mass(self) -> float:
        return constants.hbar * self.k / constants.c


def geometry_from_z(z: float, R_A: Optional[float], wavelength: float) -> PropagationGeometry:
    """Photon-branch geometry.  ``R_A=None`` means a flat input wavefront.

    A flat input is represented by ``R_A = z / FLAT_MU``.
    """
    if not z > 0:
        raise NonpositiveDistance(f"z must be positive, got {z!r}")
    if not wavelength > 0:
        raise InvalidSpec(f"wavelength must be positive, got {wavelength!r}")
    flat = R_A is None
    if flat:
        R_A = z / FLAT_MU
    mu = z / R_A
    if not 0 < mu < 2:
        raise OutOfBranch(f"mu = z/R_A = {mu:.6g} lies outside (0, 2)")
    eps = math.sqrt(mu / (2 - mu))
    # sin = mu/eps = sqrt(mu(2-mu)), cos = 1 - mu
    alpha = math.atan2(math.sqrt(mu * (2 - mu)), 1 - mu)
    return PropagationGeometry(z, R_A, wavelength, mu, eps, alpha, -R_A, flat)


def geometry_from_alpha(alpha: float, R_A: float, wavelength: float) -> PropagationGeometry:
    """Inverse map: the distance at which a fixed ``R_A`` yields order ``alpha``."""
    if not 0 < alpha < math.pi:
        raise OutOfBranch(f"alpha = {alpha!r} outside (0, pi)")
    if not R_A > 0:
        raise OutOfBranch("the photon branch needs R_A > 0")
    mu = 1 - math.cos(alpha)
    return geometry_from_z(mu * R_A, R_A, wavelength)


def identity_residuals(g: PropagationGeometry) -> dict:
    """Residuals of the defining relations, for checks and reports."""
    mu, eps, a = g.mu, g.epsilon, g.alpha
    s, c = math.sin(a), math.cos(a)
    return {
        "cot": c / s - eps * (1 - mu) / mu,
        "sin2": s * s - mu * mu / (mu * mu + eps * eps * (1 - mu) ** 2),
        "unit": c + eps * s - 1,
        "sin": s - mu / eps,
        "eps2": eps * eps - mu / (2 - mu),
        "rb": g.R_B + g.R_A,
    }


def general_geometry(z: float, R_A: float, R_B: float, wavelength: float):
    """General correspondence: solve for ``eps`` given both sphere radii.

    Returns ``(alpha, eps)``.  Raises :class:`NoRealSolution` when no real
    nonzero ``eps`` exists.
    """
    if not z > 0:
        raise NonpositiveDistance(f"z must be positive, got {z!r}")
    if R_A == 0 or not math.isfinite(R_A):
        raise InvalidSpec("R_A must be finite and nonzero")
    mu = z / R_A
    lhs = (0.0 if R_B is None else 1.0 / R_B) + 1.0 / z
    tol = 1e-12 / z
    if abs(lhs) <= tol:
        if abs(1 - mu) > 1e-12:
            raise NoRealSolution("1/R_B + 1/z = 0 with mu != 1 forces eps = 0")
        # mu = 1: eps is free; take the photon-branch value
        eps = 1.0
    elif abs(1 - mu) <= 1e-12:
        raise NoRealSolution("mu = 1 requires R_B = -z")
    else:
        denom = (1 - mu) * (1 - lhs * z * (1 - mu))
        if denom == 0:
            raise NoRealSolution("equation for eps has no finite root")
        eps2 = lhs * z * mu * mu / denom
        if not eps2 > 0:
            raise NoRealSolution(f"eps^2 = {eps2:.6g} is not positive")
        eps = math.sqrt(eps2)
    alpha = math.atan2(mu, eps * (1 - mu))
    return alpha, eps


# ---------------------------------------------------------- q <-> x


def q_to_x(q, alpha, mass):
    if not alpha > 0:
        raise NonpositiveOrder(f"alpha must be positive, got {alpha!r}")
    return math.sqrt(alpha / mass) * np.asarray(q, float)


def x_to_q(x, alpha, mass):
    if not alpha > 0:
        raise NonpositiveOrder(f"alpha must be positive, got {alpha!r}")
    return math.sqrt(mass / alpha) * np.asarray(x, float)


# ------------------------------------------------------------- fields


def reduce_field(field: SampledField, g: PropagationGeometry) -> ReducedSignal:
    """Relabel ``field`` (referred to the sphere of radius ``g.R_A``) in units of the scale.

    Amplitudes are not rescaled.
    """
    f = field.referred_to(g.R_A)
    s = g.scale
    return ReducedSignal(f.samples, f.dx / s, f.x0 / s)


def unreduce_field(signal: ReducedSignal, g: PropagationGeometry,
                   plane: str = "output") -> SampledField:
    """Back to physical units on the input (sphere ``R_A``) or output (``R_B``) side."""
    if plane == "output":
        s, radius = g.output_scale, g.R_B
    elif plane == "input":
        s, radius = g.scale, g.R_A
    else:
        raise InvalidSpec(f"plane must be 'input' or 'output', got {plane!r}")
    return SampledField(signal.samples, signal.d * s, signal.start * s, g.wavelength, radius)
