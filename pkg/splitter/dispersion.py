"""Group indices, transit times and the temporal splitting of the two components."""

import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

import einops
import torch
from torch import Tensor
from tqdm.auto import tqdm

from .medium import SPEED_OF_LIGHT, AtomicMedium, DriveConfig
from .susceptibility import Polarization, as_detuning, chi_bare, chi_eit
from .utils import columns_to_csv

DERIVATIVE_STEP = 1e-4
"""Finite-difference step in units of Γ, two decades below the EIT width G²/Γ."""

OFFSETS = torch.arange(-2, 3, dtype=torch.float64)
FIRST_DERIVATIVE = torch.tensor([1, -8, 0, 8, -1], dtype=torch.float64) / 12
SECOND_DERIVATIVE = torch.tensor([-1, 16, -30, 16, -1], dtype=torch.float64) / 12


def central_difference(
    fn: Callable[[Tensor], Tensor], x: Tensor, h: float, order: int = 1
) -> Tensor:
    """Five-point central difference of `fn` at every element of `x`."""
    assert order in (1, 2), f"Only first and second derivatives supported, got {order}"
    stencil = FIRST_DERIVATIVE if order == 1 else SECOND_DERIVATIVE

    points = x.unsqueeze(0) + OFFSETS.view(-1, *[1] * x.ndim) * h
    samples = fn(points)
    weighted = einops.einsum(stencil.to(samples.dtype), samples, "k, k ... -> ...")
    return weighted / h**order


def richardson_derivative(
    fn: Callable[[Tensor], Tensor],
    x: Tensor,
    h: float = DERIVATIVE_STEP,
    order: int = 1,
) -> Tensor:
    """Central difference with one Richardson step (both stencils are O(h⁴))."""
    coarse = central_difference(fn, x, h, order)
    fine = central_difference(fn, x, h / 2, order)
    return fine + (fine - coarse) / 15


def susceptibility_fn(
    pol: Polarization, medium: AtomicMedium, drive: DriveConfig, use_eit: bool = True
) -> Callable[[Tensor], Tensor]:
    """χ of one component as a function of δ/Γ only."""
    if use_eit:
        return lambda delta: chi_eit(delta, pol, medium, drive).value

    return lambda delta: chi_bare(delta, pol, medium, drive.b_zeeman).value


def chi_derivative(
    delta: float | Tensor,
    pol: Polarization,
    medium: AtomicMedium,
    drive: DriveConfig,
    use_eit: bool = True,
    order: int = 1,
) -> Tensor:
    """dⁿχ/dωⁿ in sⁿ."""
    fn = susceptibility_fn(pol, medium, drive, use_eit)
    return richardson_derivative(fn, as_detuning(delta), order=order) / (
        medium.gamma_big**order
    )


class GroupIndexResult(NamedTuple):
    n_g: Tensor
    """Group index."""

    v_g: Tensor
    """Group velocity in cm/s."""

    transit_time: Tensor
    """Time to cross the medium, L n_g / c, in s."""

    pol: Polarization

    delta0: Tensor
    """Detuning δ₀/Γ at which the index was evaluated."""


def group_index(
    delta0: float | Tensor,
    pol: Polarization,
    medium: AtomicMedium,
    drive: DriveConfig,
    use_eit: bool = True,
) -> GroupIndexResult:
    """Group index n_g = 1 + 2πχ + 2πω ∂χ/∂ω from the dispersive part of
    χ, at the central frequency ω = ω₀ + δ₀Γ."""
    delta0 = as_detuning(delta0)
    omega = medium.carrier_omega + delta0 * medium.gamma_big

    chi = susceptibility_fn(pol, medium, drive, use_eit)(delta0).real
    slope = chi_derivative(delta0, pol, medium, drive, use_eit).real

    n_g = 1 + 2 * math.pi * chi + 2 * math.pi * omega * slope
    return GroupIndexResult(
        n_g=n_g,
        v_g=SPEED_OF_LIGHT / n_g,
        transit_time=medium.length * n_g / SPEED_OF_LIGHT,
        pol=pol,
        delta0=delta0,
    )


def separation(
    delta0: float | Tensor, medium: AtomicMedium, drive: DriveConfig
) -> Tensor:
    """Arrival time of σ⁺ minus arrival time of σ⁻, t₊ − t₋, in s."""
    plus = group_index(delta0, Polarization.SIGMA_PLUS, medium, drive)
    minus = group_index(delta0, Polarization.SIGMA_MINUS, medium, drive)
    return plus.transit_time - minus.transit_time


def transmission(
    delta0: float | Tensor,
    pol: Polarization,
    medium: AtomicMedium,
    drive: DriveConfig,
) -> Tensor:
    """Intensity transmission exp(−4πωL Im χ̄ / c) of a monochromatic wave."""
    delta0 = as_detuning(delta0)
    omega = medium.carrier_omega + delta0 * medium.gamma_big
    absorption = chi_eit(delta0, pol, medium, drive).value.imag

    return torch.exp(-4 * math.pi * omega * medium.length * absorption / SPEED_OF_LIGHT)


SWEEP_COLUMNS = (
    "ng_plus",
    "ng_minus",
    "sep_seconds",
    "im_chi_plus",
    "im_chi_minus",
    "transmission_plus",
    "transmission_minus",
)


@dataclass
class SweepTable:
    """Per-point group indices, separation and absorption along a swept parameter."""

    axis: Tensor
    """Values of the swept parameter, strictly increasing."""

    ng_plus: Tensor
    ng_minus: Tensor

    sep_seconds: Tensor
    """t₊ − t₋ in s."""

    im_chi_plus: Tensor
    im_chi_minus: Tensor

    transmission_plus: Tensor
    transmission_minus: Tensor

    gamma_big: float
    """Γ in rad/s, for the dimensionless separation column."""

    def __post_init__(self):
        if len(self.axis) > 1 and not bool((self.axis.diff() > 0).all()):
            raise ValueError("Sweep axis must be strictly increasing")

        for name in SWEEP_COLUMNS:
            column = getattr(self, name)
            assert column.shape == self.axis.shape, f"`{name}` does not match the axis"

    @property
    def gamma_sep(self) -> Tensor:
        """Γ(t₊ − t₋), the dimensionless separation."""
        return self.sep_seconds * self.gamma_big

    def __len__(self) -> int:
        return len(self.axis)

    def columns(self) -> dict[str, Tensor]:
        return {
            "sweep_param": self.axis,
            **{name: getattr(self, name) for name in SWEEP_COLUMNS[:5]},
            "gamma_sep": self.gamma_sep,
            **{name: getattr(self, name) for name in SWEEP_COLUMNS[5:]},
        }

    def rows(self) -> list[dict[str, float]]:
        cols = {k: v.tolist() for k, v in self.columns().items()}
        return [dict(zip(cols, values)) for values in zip(*cols.values())]

    def to_csv(self) -> str:
        return columns_to_csv(self.columns())


def _sweep_point(
    delta0: Tensor, medium: AtomicMedium, drive: DriveConfig
) -> dict[str, Tensor]:
    plus = group_index(delta0, Polarization.SIGMA_PLUS, medium, drive)
    minus = group_index(delta0, Polarization.SIGMA_MINUS, medium, drive)

    point = {
        "ng_plus": plus.n_g,
        "ng_minus": minus.n_g,
        "sep_seconds": plus.transit_time - minus.transit_time,
    }
    for pol in Polarization:
        chi = chi_eit(delta0, pol, medium, drive).value
        point[f"im_chi_{pol.short}"] = chi.imag
        point[f"transmission_{pol.short}"] = transmission(delta0, pol, medium, drive)

    return point


def _stack_points(points: list[dict[str, Tensor]]) -> dict[str, Tensor]:
    return {name: torch.stack([p[name] for p in points]) for name in SWEEP_COLUMNS}


def sweep_ng_vs_pump_detuning(
    delta_range: list[float] | Tensor,
    medium: AtomicMedium,
    drive_template: DriveConfig,
    *,
    progress: bool = False,
) -> SweepTable:
    """Sweep the pump detuning Δ while keeping the probe on the EIT window, δ = Δ."""
    axis = as_detuning(delta_range)

    points = []
    for pump in tqdm(axis.tolist(), desc="Pump detuning", disable=not progress):
        drive = replace(drive_template, delta_pump=pump)
        points.append(_sweep_point(as_detuning(pump), medium, drive))

    return SweepTable(axis, **_stack_points(points), gamma_big=medium.gamma_big)


def sweep_separation_vs_probe_detuning(
    delta_range: list[float] | Tensor, medium: AtomicMedium, drive: DriveConfig
) -> SweepTable:
    """Sweep the probe detuning δ at fixed pump detuning."""
    axis = as_detuning(delta_range)
    point = _sweep_point(axis, medium, drive)
    return SweepTable(axis, **point, gamma_big=medium.gamma_big)


def sweep_separation_vs_density(
    factors: list[float] | Tensor,
    medium: AtomicMedium,
    drive: DriveConfig,
    delta0: float | None = None,
) -> SweepTable:
    """Scale the number density by each factor and evaluate at `delta0`, the EIT
    window δ = Δ by default. Separation grows with density while the detuned
    component is absorbed more strongly."""
    axis = as_detuning(factors)
    if not bool((axis > 0).all()):
        raise ValueError("Density factors must be positive")

    if medium.number_density is None:
        raise ValueError("Density sweep needs a medium with a number density")

    density = medium.number_density
    delta0 = drive.delta_pump if delta0 is None else delta0

    points = [
        _sweep_point(as_detuning(delta0), medium.with_density(f * density), drive)
        for f in axis.tolist()
    ]
    return SweepTable(axis, **_stack_points(points), gamma_big=medium.gamma_big)
