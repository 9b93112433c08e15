"""Physical parameters of the four-level medium and the calibration of its strength."""

import math
from dataclasses import dataclass, replace

from simple_parsing.helpers import FrozenSerializable

SPEED_OF_LIGHT = 2.99792458e10
"""Speed of light in cm/s (Gaussian units)."""

ANGSTROM = 1e-8
"""One Ångström in cm."""


@dataclass(frozen=True)
class DriveConfig(FrozenSerializable):
    """
    Control field and magnetic field acting on the medium. All values in units of Γ.
    """

    g_rabi: float = 0.15
    """Control Rabi frequency G."""

    delta_pump: float = 0.0
    """Pump detuning Δ = ω_c − ω_e2."""

    b_zeeman: float = 10.0
    """Zeeman splitting B. A negative value models an opposite Landé factor."""

    def __post_init__(self):
        if not self.g_rabi >= 0:
            raise ValueError(f"Control Rabi frequency must be >= 0, got {self.g_rabi}")

    def flipped(self) -> "DriveConfig":
        """The same drive with the Zeeman splitting reversed."""
        return replace(self, b_zeeman=-self.b_zeeman)


@dataclass(frozen=True)
class AtomicMedium(FrozenSerializable):
    """
    Constants of the atomic vapor. Decay rates other than `gamma_big` are in units
    of Γ.
    """

    alpha: float
    """Dimensionless prefactor ND²/ħΓ multiplying every susceptibility."""

    gamma_big: float = 3.1e7
    """Γ, decay rate of the |e⟩–|j⟩ coherences in rad/s."""

    gamma_e1: float = 1.0
    gamma_e3: float = 1.0

    gamma_12: float = 0.0
    """Decay rate of the |1⟩–|2⟩ ground coherence."""

    gamma_23: float = 0.0
    """Decay rate of the |2⟩–|3⟩ ground coherence."""

    length: float = 1.0
    """Length of the medium in cm."""

    wavelength: float = 5890 * ANGSTROM
    """Wavelength of the |e⟩–|1⟩ transition in cm."""

    carrier_omega: float = 0.0
    """Carrier angular frequency ω₀ in rad/s. Derived from `wavelength` when 0."""

    number_density: float | None = None
    """Atomic number density in cm⁻³. Only `alpha` enters the model."""

    def __post_init__(self):
        if not self.carrier_omega:
            object.__setattr__(
                self, "carrier_omega", 2 * math.pi * SPEED_OF_LIGHT / self.wavelength
            )

        positive = {
            "gamma_big": self.gamma_big,
            "gamma_e1": self.gamma_e1,
            "gamma_e3": self.gamma_e3,
            "length": self.length,
            "wavelength": self.wavelength,
        }
        for name, value in positive.items():
            if not value > 0:
                raise ValueError(f"`{name}` must be positive, got {value}")

        nonnegative = {
            "alpha": self.alpha,
            "gamma_12": self.gamma_12,
            "gamma_23": self.gamma_23,
        }
        for name, value in nonnegative.items():
            if not value >= 0:
                raise ValueError(f"`{name}` must be non-negative, got {value}")

        expected = 2 * math.pi * SPEED_OF_LIGHT / self.wavelength
        if abs(self.carrier_omega - expected) > 1e-12 * expected:
            raise ValueError(
                f"carrier_omega={self.carrier_omega} is inconsistent with "
                f"wavelength={self.wavelength} cm (expected {expected})"
            )

    def with_alpha(self, alpha: float) -> "AtomicMedium":
        return replace(self, alpha=alpha)

    def with_density(self, number_density: float) -> "AtomicMedium":
        """Change the number density, scaling α proportionally."""
        if self.number_density is None or self.number_density <= 0:
            raise ValueError(
                "Cannot rescale a medium without a positive number density"
            )

        scale = number_density / self.number_density
        return replace(self, number_density=number_density, alpha=self.alpha * scale)


def calibrate_alpha(
    target_group_index: float, drive: DriveConfig, medium: AtomicMedium
) -> float:
    """Find α such that the EIT component has group index `target_group_index` at the
    dark point δ = Δ = 0.

    There χ̄ vanishes and its slope is α/(2G²) per unit Γ, so
    n_g − 1 = 2πω₀ α Γ / (2G²) with G in rad/s, which inverts in closed form.
    """
    if drive.g_rabi <= 0:
        raise ValueError("Calibration needs a control field; got G <= 0")
    if target_group_index <= 1:
        raise ValueError(f"Target group index must exceed 1, got {target_group_index}")
    if medium.gamma_12 != 0:
        raise ValueError("Closed-form calibration requires Γ_12 = 0")

    g = drive.g_rabi * medium.gamma_big
    return (target_group_index - 1) * 2 * g**2 / (
        2 * math.pi * medium.carrier_omega * medium.gamma_big
    )


SODIUM_GROUP_INDEX = 3.92e6
"""Group index of the slow component quoted for the sodium configuration."""


def default_sodium_medium(drive: DriveConfig | None = None) -> AtomicMedium:
    """Sodium vapor at 5890 Å, N = 2.2e11 cm⁻³, L = 1 cm, calibrated so that the
    slow component has group index 3.92e6 under `drive` (G = 0.15Γ by default)."""
    drive = drive or DriveConfig()
    medium = AtomicMedium(
        alpha=0.0,
        gamma_big=3.1e7,
        length=1.0,
        wavelength=5890 * ANGSTROM,
        number_density=2.2e11,
    )
    return medium.with_alpha(calibrate_alpha(SODIUM_GROUP_INDEX, drive, medium))
