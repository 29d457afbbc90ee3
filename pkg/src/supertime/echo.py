"""Dynamics of the distant test particle under the two branch forces.

Force differences, Loschmidt-echo displacements, the Gaussian overlap of the
echoed state, and the position-vs-momentum discrimination comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .constants import CODATA, PhysicalConstants
from .errors import (
    DipoleApproximationError,
    NoEntanglementError,
    ValidationError,
)

__all__ = [
    "ForcePair",
    "GaussianState",
    "EchoResult",
    "force_difference_gravity",
    "force_difference_coulomb",
    "echo_displacements",
    "echo_overlap",
    "entanglement_time",
    "momentum_route_time",
    "trap_max_width",
]

# Validity gate for the dipole formula Delta F ~ d / R^3.
DIPOLE_GATE_RATIO = 0.1


@dataclass(frozen=True)
class ForcePair:
    """Branch forces on the test particle.

    ``F_L`` and ``F_R`` are the exact monopole forces for the two branch
    positions (diagnostics).  ``delta_F`` is the dipole-approximation force
    difference used by all bound derivations; note the exact monopole
    difference F_L - F_R equals 2 * delta_F to leading order in d/R.
    """

    F_L: float
    F_R: float
    delta_F: float


@dataclass(frozen=True)
class GaussianState:
    """Minimum-uncertainty Gaussian wavepacket.

    ``sigma`` is the position spread Delta X; the momentum spread is
    hbar / (2 sigma).
    """

    x0: float = 0.0
    p0: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0.0 and math.isfinite(self.sigma)):
            raise ValidationError(f"sigma must be positive, got {self.sigma}")

    def momentum_spread(self, hbar: float = 1.0) -> float:
        return hbar / (2.0 * self.sigma)


@dataclass(frozen=True)
class EchoResult:
    """Phase-space content of the Loschmidt echo operator at time t."""

    delta_x: float
    delta_p: float
    cubic_phase: float
    time: float
    overlap: float | None = None


def _check_dipole_geometry(d: float, R: float) -> None:
    if not (d > 0.0 and R > 0.0):
        raise ValidationError(f"d and R must be positive, got d={d}, R={R}")
    if d >= DIPOLE_GATE_RATIO * R:
        raise DipoleApproximationError(
            f"dipole approximation requires d < R/10, got d={d}, R={R}"
        )


def force_difference_gravity(mA: float, mB: float, d: float, R: float,
                             constants: PhysicalConstants = CODATA) -> ForcePair:
    """Gravitational dipole force difference G mA mB d / R^3."""
    if not (mA > 0.0 and mB > 0.0):
        raise ValidationError("masses must be positive")
    _check_dipole_geometry(d, R)
    G = constants.G
    prefactor = G * mA * mB
    return ForcePair(
        F_L=prefactor / (R - d / 2.0) ** 2,
        F_R=prefactor / (R + d / 2.0) ** 2,
        delta_F=prefactor * d / R**3,
    )


def force_difference_coulomb(qA: float, qB: float, d: float, R: float,
                             constants: PhysicalConstants = CODATA) -> ForcePair:
    """Coulomb dipole force difference qA qB d / (4 pi eps0 R^3).

    Charges may carry either sign; delta_F flips sign with them.
    """
    if qA == 0.0 or qB == 0.0:
        raise ValidationError("charges must be nonzero")
    _check_dipole_geometry(d, R)
    k = 1.0 / (4.0 * math.pi * constants.epsilon0)
    prefactor = k * qA * qB
    return ForcePair(
        F_L=prefactor / (R - d / 2.0) ** 2,
        F_R=prefactor / (R + d / 2.0) ** 2,
        delta_F=prefactor * d / R**3,
    )


def echo_displacements(delta_F: float, mB: float, F_sum: float, t: float,
                       constants: PhysicalConstants = CODATA) -> EchoResult:
    """Displacements and cubic phase of the echo operator at time t.

    delta_x = dF t^2 / (2 mB), delta_p = -dF t, and the scalar phase
    dF (F_L + F_R) t^3 / (12 mB hbar).
    """
    if not (mB > 0.0):
        raise ValidationError(f"mB must be positive, got {mB}")
    if not (t >= 0.0 and math.isfinite(t)):
        raise ValidationError(f"t must be non-negative, got {t}")
    return EchoResult(
        delta_x=delta_F * t**2 / (2.0 * mB),
        delta_p=-delta_F * t,
        cubic_phase=delta_F * F_sum * t**3 / (12.0 * mB * constants.hbar),
        time=t,
    )


def echo_overlap(state: GaussianState, echo: EchoResult,
                 constants: PhysicalConstants = CODATA) -> float:
    """Modulus of the echoed-state overlap for a minimum-uncertainty Gaussian.

    |<phi| exp(i (dx P - dp X) / hbar) |phi>|
        = exp(-dx^2 / (8 sigma^2) - dp^2 sigma^2 / (2 hbar^2)).

    The cubic phase is a pure c-number and cannot change the modulus.
    """
    hbar = constants.hbar
    sigma = state.sigma
    exponent = (echo.delta_x**2 / (8.0 * sigma**2)
                + echo.delta_p**2 * sigma**2 / (2.0 * hbar**2))
    return math.exp(-exponent)


def echo_result_with_overlap(state: GaussianState, echo: EchoResult,
                             constants: PhysicalConstants = CODATA) -> EchoResult:
    """Convenience: attach the Gaussian overlap to an EchoResult."""
    return replace(echo, overlap=echo_overlap(state, echo, constants))


def entanglement_time(delta_F: float, mB: float, sigma: float) -> float:
    """Time sqrt(mB sigma / |dF|) for the position shift to reach Delta X.

    Uses the convention under which the trap condition
    sigma^3 <= hbar^2/(mB dF) makes the position route exactly no slower than
    the momentum route.  The main-text entanglement criterion carries an extra
    factor sqrt(2) absorbed here as an order-unity convention.
    """
    if not (mB > 0.0 and sigma > 0.0):
        raise ValidationError("mB and sigma must be positive")
    if delta_F == 0.0:
        raise NoEntanglementError("delta_F = 0: entanglement is never generated")
    return math.sqrt(mB * sigma / abs(delta_F))


def momentum_route_time(delta_F: float, sigma: float,
                        constants: PhysicalConstants = CODATA) -> float:
    """Time hbar / (|dF| sigma) to resolve the momentum kick."""
    if not (sigma > 0.0):
        raise ValidationError("sigma must be positive")
    if delta_F == 0.0:
        raise NoEntanglementError("delta_F = 0: momentum kick never resolvable")
    return constants.hbar / (abs(delta_F) * sigma)


def trap_max_width(mB: float, delta_F: float,
                   constants: PhysicalConstants = CODATA) -> float:
    """Largest trap width (hbar^2 / (mB |dF|))^(1/3) insensitive to dF."""
    if not (mB > 0.0):
        raise ValidationError("mB must be positive")
    if delta_F == 0.0:
        raise NoEntanglementError("delta_F = 0: any trap width is insensitive")
    return (constants.hbar**2 / (mB * abs(delta_F))) ** (1.0 / 3.0)
