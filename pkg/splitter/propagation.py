"""Propagation of a Gaussian probe pulse through the medium.

Fourier convention, on centered grids t_n = (n - N/2) dt and ν_k = (k - N/2) dν::

    E(t) =       ∫ Ẽ(ν) exp(-iνt) dν
    Ẽ(ν) = 1/2π ∫ E(t) exp(+iνt) dt

with dt dν N = 2π, so that E = dν fftshift(fft(ifftshift(Ẽ))) and
Ẽ = (N dt / 2π) fftshift(ifft(ifftshift(E))). The frequency ν is measured from the
pulse carrier and time is the retarded time τ = t − L/c for transmitted fields.
"""

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import torch
from simple_parsing.helpers import FrozenSerializable
from torch import Tensor

from .dispersion import chi_derivative, group_index
from .medium import SPEED_OF_LIGHT, AtomicMedium, DriveConfig
from .susceptibility import Polarization, chi_eit, eit_windows, transition_for
from .utils import PreconditionError, columns_to_csv

MIN_POINTS = 2**10


@dataclass(frozen=True)
class GaussianPulseSpec(FrozenSerializable):
    """Input pulse E(t) = E₀ exp(−σ²t²/4), linearly polarized."""

    sigma: float = 2 * math.pi * 4775
    """Spectral width σ in rad/s."""

    amplitude: float = 1.0
    """Peak field E₀ of the linearly polarized pulse."""

    center_delta: float = 0.0
    """Detuning δ₀/Γ of the pulse carrier from the |e⟩–|1⟩ transition."""

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"Pulse width must be positive, got {self.sigma}")


@dataclass(frozen=True)
class SpectralGrid(FrozenSerializable):
    """Conjugate time and frequency grids centered on the pulse carrier."""

    span: float
    """Total angular-frequency span in rad/s."""

    n_points: int = 2**14

    def __post_init__(self):
        n = self.n_points
        if n < MIN_POINTS or n & (n - 1):
            raise ValueError(
                f"n_points must be a power of two >= {MIN_POINTS}, got {n}"
            )
        if not self.span > 0:
            raise ValueError(f"Grid span must be positive, got {self.span}")

    @classmethod
    def for_pulse(
        cls, spec: GaussianPulseSpec, n_points: int = 2**14, span_over_sigma: float = 64
    ) -> "SpectralGrid":
        return cls(span=span_over_sigma * spec.sigma, n_points=n_points)

    @property
    def domega(self) -> float:
        return self.span / self.n_points

    @property
    def dt(self) -> float:
        return 2 * math.pi / self.span

    def _centered(self, step: float) -> Tensor:
        n = self.n_points
        return (torch.arange(n, dtype=torch.float64) - n // 2) * step

    @property
    def frequencies(self) -> Tensor:
        """Offsets ν from the carrier, in rad/s."""
        return self._centered(self.domega)

    @property
    def times(self) -> Tensor:
        return self._centered(self.dt)


def to_time_domain(spectrum: Tensor, grid: SpectralGrid) -> Tensor:
    samples = torch.fft.fftshift(torch.fft.fft(torch.fft.ifftshift(spectrum)))
    return samples * grid.domega


def to_spectrum(samples: Tensor, grid: SpectralGrid) -> Tensor:
    scale = grid.n_points * grid.dt / (2 * math.pi)
    return torch.fft.fftshift(torch.fft.ifft(torch.fft.ifftshift(samples))) * scale


def spectral_energy(spectrum: Tensor, grid: SpectralGrid) -> float:
    return 2 * math.pi * float(spectrum.abs().square().sum()) * grid.domega


def temporal_energy(samples: Tensor, grid: SpectralGrid) -> float:
    return float(samples.abs().square().sum()) * grid.dt


def parabolic_peak(times: Tensor, intensity: Tensor) -> tuple[float, float]:
    """Time and height of the maximum of `intensity`, refined by a parabola through
    the three samples around the discrete maximum."""
    i = int(intensity.argmax())
    i = min(max(i, 1), len(intensity) - 2)

    y0, y1, y2 = intensity[i - 1 : i + 2].tolist()
    curvature = y0 - 2 * y1 + y2
    offset = 0.5 * (y0 - y2) / curvature if curvature != 0 else 0.0

    step = float(times[i + 1] - times[i])
    return float(times[i]) + offset * step, y1 - 0.25 * (y0 - y2) * offset


class FieldEnvelope(NamedTuple):
    pol: Polarization | None
    """Circular component, or None for the linearly polarized input."""

    samples: Tensor
    """Complex amplitude on `times`."""

    times: Tensor

    t0: float
    """Offset from `times` to laboratory time (L/c for retarded envelopes)."""

    retarded: bool
    """Whether `times` is the retarded time τ = t − L/c."""

    @property
    def intensity(self) -> Tensor:
        return self.samples.abs().square()

    def peak(self) -> tuple[float, float]:
        """Peak time on `times` and peak intensity."""
        return parabolic_peak(self.times, self.intensity)


class PropagationResult(NamedTuple):
    envelope_plus: FieldEnvelope
    envelope_minus: FieldEnvelope

    input_envelope: FieldEnvelope
    """One circular component of the input, E/√2."""

    peak_time_plus: float
    """Retarded peak time of σ⁺ in s."""

    peak_time_minus: float

    separation_measured: float
    """peak_time_plus − peak_time_minus, in s."""

    peak_intensity_ratio_plus: float
    """Output over input peak |E₊|²."""

    peak_intensity_ratio_minus: float

    vacuum_delay: float
    """L/c, the offset between retarded and laboratory time."""

    def summary(self) -> dict[str, float]:
        return {
            "peak_time_plus": self.peak_time_plus,
            "peak_time_minus": self.peak_time_minus,
            "separation_measured": self.separation_measured,
            "peak_intensity_ratio_plus": self.peak_intensity_ratio_plus,
            "peak_intensity_ratio_minus": self.peak_intensity_ratio_minus,
            "vacuum_delay": self.vacuum_delay,
        }

    def normalized_intensities(self) -> tuple[Tensor, Tensor]:
        """Output intensities in units of the input peak |E|²/2 of each component."""
        _, reference = self.input_envelope.peak()
        return (
            self.envelope_plus.intensity / reference,
            self.envelope_minus.intensity / reference,
        )

    def to_csv(self) -> str:
        plus, minus = self.normalized_intensities()
        return columns_to_csv(
            {
                "tau_seconds": self.envelope_plus.times,
                "intensity_plus": plus,
                "intensity_minus": minus,
            }
        )


class KappaResult(NamedTuple):
    kappa: complex
    """Complex broadening parameter."""

    sigma_prime: complex
    """Spectral width σ/√(1 − iκ) of the transmitted envelope, in rad/s."""


def gaussian_spectrum(spec: GaussianPulseSpec, grid: SpectralGrid) -> Tensor:
    """Spectrum E₀/(σ√π) exp(−ν²/σ²) of the pulse E₀ exp(−σ²t²/4)."""
    if grid.span < 8 * spec.sigma:
        raise PreconditionError(
            f"Grid span {grid.span:.4g} rad/s truncates a pulse of width "
            f"{spec.sigma:.4g} rad/s; need at least 8σ"
        )

    nu = grid.frequencies
    value = spec.amplitude / (spec.sigma * math.sqrt(math.pi)) * torch.exp(
        -(nu**2) / spec.sigma**2
    )
    return value.to(torch.complex128)


def medium_filter(
    delta: Tensor, pol: Polarization, medium: AtomicMedium, drive: DriveConfig
) -> Tensor:
    """Transfer function exp(2πiωLχ̄(ω)/c), without the vacuum phase."""
    omega = medium.carrier_omega + delta * medium.gamma_big
    chi = chi_eit(delta, pol, medium, drive).value
    return torch.exp(2j * math.pi * omega * medium.length * chi / SPEED_OF_LIGHT)


def check_grid(
    spec: GaussianPulseSpec,
    grid: SpectralGrid,
    medium: AtomicMedium,
    drive: DriveConfig,
):
    if grid.span < 16 * spec.sigma:
        raise PreconditionError(
            f"Grid span must be at least 16σ = {16 * spec.sigma:.4g} rad/s, "
            f"got {grid.span:.4g}"
        )

    if drive.g_rabi > 0:
        # Ten samples across the EIT window G²/Γ
        window = drive.g_rabi**2 * medium.gamma_big
        if grid.domega > window / 10:
            raise PreconditionError(
                f"Frequency step {grid.domega:.4g} rad/s does not resolve the EIT "
                f"window of {window:.4g} rad/s; increase n_points or reduce the span"
            )


def propagate_spectral(
    spec: GaussianPulseSpec,
    grid: SpectralGrid,
    medium: AtomicMedium,
    drive: DriveConfig,
) -> PropagationResult:
    """Propagate both circular components through the medium by spectral synthesis."""
    check_grid(spec, grid, medium, drive)

    # Each circular component carries E/√2
    spectrum = gaussian_spectrum(spec, grid) / math.sqrt(2)
    delta = spec.center_delta + grid.frequencies / medium.gamma_big
    vacuum_delay = medium.length / SPEED_OF_LIGHT

    input_envelope = FieldEnvelope(
        None, to_time_domain(spectrum, grid), grid.times, 0.0, False
    )
    _, input_peak = input_envelope.peak()

    envelopes, peaks = {}, {}
    for pol in Polarization:
        transmitted = spectrum * medium_filter(delta, pol, medium, drive)
        envelopes[pol] = FieldEnvelope(
            pol, to_time_domain(transmitted, grid), grid.times, vacuum_delay, True
        )
        peaks[pol] = envelopes[pol].peak()

    (t_plus, i_plus) = peaks[Polarization.SIGMA_PLUS]
    (t_minus, i_minus) = peaks[Polarization.SIGMA_MINUS]
    return PropagationResult(
        envelope_plus=envelopes[Polarization.SIGMA_PLUS],
        envelope_minus=envelopes[Polarization.SIGMA_MINUS],
        input_envelope=input_envelope,
        peak_time_plus=t_plus,
        peak_time_minus=t_minus,
        separation_measured=t_plus - t_minus,
        peak_intensity_ratio_plus=i_plus / input_peak,
        peak_intensity_ratio_minus=i_minus / input_peak,
        vacuum_delay=vacuum_delay,
    )


def compute_kappa(
    spec: GaussianPulseSpec,
    medium: AtomicMedium,
    drive: DriveConfig,
    pol: Polarization = Polarization.SIGMA_MINUS,
) -> KappaResult:
    """κ = (σ²L/2c) d²/dω² {ω[1 + 2πχ(ω)]} at the pulse carrier.

    The second derivative is expanded as 2π(2χ′ + ωχ″) so that the large ω
    term is never differenced.
    """
    delta0 = spec.center_delta
    omega = medium.carrier_omega + delta0 * medium.gamma_big

    slope = complex(chi_derivative(delta0, pol, medium, drive).item())
    curvature = complex(chi_derivative(delta0, pol, medium, drive, order=2).item())

    second = 2 * math.pi * (2 * slope + omega * curvature)
    kappa = spec.sigma**2 * medium.length / (2 * SPEED_OF_LIGHT) * second
    return KappaResult(kappa, spec.sigma / cmath.sqrt(1 - 1j * kappa))


def propagate_gaussian_analytic(
    spec: GaussianPulseSpec,
    medium: AtomicMedium,
    drive: DriveConfig,
    grid: SpectralGrid | None = None,
) -> FieldEnvelope:
    """Transmitted σ⁻ envelope E₀(σ′/σ) exp[−(σ′²/4)(t − L/v_g)²] from
    expanding the propagation phase to second order about the EIT window.

    The envelope is sampled on the retarded time of `grid`; its peak in laboratory
    time is L/v_g.
    """
    pol = Polarization.SIGMA_MINUS
    if transition_for(pol, medium, drive.b_zeeman).gamma_ground != 0:
        raise PreconditionError(
            "The analytic envelope needs a lossless ground coherence"
        )
    if spec.center_delta != eit_windows(drive)[pol]:
        raise PreconditionError(
            f"The analytic envelope is expanded about the EIT window of σ⁻ at "
            f"δ/Γ = {eit_windows(drive)[pol]}, but the pulse is centered at "
            f"{spec.center_delta}"
        )

    grid = grid or SpectralGrid.for_pulse(spec)
    _, sigma_prime = compute_kappa(spec, medium, drive, pol)

    vacuum_delay = medium.length / SPEED_OF_LIGHT
    transit = group_index(spec.center_delta, pol, medium, drive).transit_time.item()

    tau = grid.times - (transit - vacuum_delay)
    samples = spec.amplitude * (sigma_prime / spec.sigma) * torch.exp(
        -(sigma_prime**2 / 4) * tau**2
    )
    return FieldEnvelope(pol, samples, grid.times, vacuum_delay, True)
