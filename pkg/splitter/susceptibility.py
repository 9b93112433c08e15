from enum import Enum
from typing import NamedTuple

import torch
from torch import Tensor

from .medium import AtomicMedium, DriveConfig
from .utils import PreconditionError


class Polarization(Enum):
    SIGMA_PLUS = "sigma_plus"
    SIGMA_MINUS = "sigma_minus"

    @property
    def short(self) -> str:
        return "plus" if self is Polarization.SIGMA_PLUS else "minus"


class ComplexChi(NamedTuple):
    value: Tensor
    """Dimensionless complex susceptibility."""

    delta: Tensor
    """Probe detuning δ/Γ at which `value` was evaluated."""


class Transition(NamedTuple):
    """Which transition a circular component drives, with the rates that apply to it."""

    shift: float
    """Offset added to δ/Γ: 2|B| for |e⟩–|3⟩, 0 for |e⟩–|1⟩."""

    gamma_e: float
    gamma_ground: float


def as_detuning(delta: float | Tensor) -> Tensor:
    return torch.as_tensor(delta, dtype=torch.float64)


def drives_shifted_transition(pol: Polarization, b: float) -> bool:
    """Whether `pol` drives |e⟩–|3⟩, the transition 2|B| away from |e⟩–|1⟩.

    For B >= 0 that is σ⁺. A negative B mirrors the sublevel order, so the two
    polarizations trade transitions.
    """
    return (pol is Polarization.SIGMA_PLUS) != (b < 0)


def transition_for(pol: Polarization, medium: AtomicMedium, b: float) -> Transition:
    if drives_shifted_transition(pol, b):
        return Transition(2 * abs(b), medium.gamma_e3, medium.gamma_23)

    return Transition(0.0, medium.gamma_e1, medium.gamma_12)


def chi_bare(
    delta: float | Tensor, pol: Polarization, medium: AtomicMedium, b: float
) -> ComplexChi:
    """Susceptibility of one circular component without the control field."""
    delta = as_detuning(delta)
    shift, gamma_e, _ = transition_for(pol, medium, b)

    value = medium.alpha * (-1j) / (2 * (1j * (delta + shift) - gamma_e))
    return ComplexChi(value, delta)


def lambda_response(
    detuning: Tensor,
    pump_detuning: float,
    gamma_e: float,
    gamma_ground: float,
    g_rabi: float,
) -> Tensor:
    """Response of a Λ-system to a weak probe, in units of the medium prefactor α.

    `detuning` is measured from the probed transition; the control field couples the
    excited state to the other ground state with Rabi frequency `g_rabi`.
    """
    raman = 1j * (detuning - pump_detuning) - gamma_ground
    denom = (1j * detuning - gamma_e) * raman + g_rabi**2

    if bool((denom.abs() < 1e-30).any()):
        raise PreconditionError(
            "Vanishing susceptibility denominator; the decay rates and control field "
            "describe an unphysical medium"
        )
    return -1j * raman / (2 * denom)


def chi_eit(
    delta: float | Tensor, pol: Polarization, medium: AtomicMedium, drive: DriveConfig
) -> ComplexChi:
    """Susceptibility of one circular component dressed by the control field."""
    if drive.g_rabi == 0:
        return chi_bare(delta, pol, medium, drive.b_zeeman)

    delta = as_detuning(delta)
    shift, gamma_e, gamma_ground = transition_for(pol, medium, drive.b_zeeman)

    response = lambda_response(
        delta + shift, drive.delta_pump, gamma_e, gamma_ground, drive.g_rabi
    )
    return ComplexChi(medium.alpha * response, delta)


def eit_windows(drive: DriveConfig) -> dict[Polarization, float]:
    """Probe detunings δ/Γ of the transparency window seen by each component."""
    b = drive.b_zeeman
    return {
        pol: drive.delta_pump - (2 * abs(b) if drives_shifted_transition(pol, b) else 0)
        for pol in Polarization
    }
