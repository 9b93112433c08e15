import json
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

from simple_parsing import Serializable

from .medium import (
    ANGSTROM,
    SODIUM_GROUP_INDEX,
    AtomicMedium,
    DriveConfig,
    calibrate_alpha,
)
from .propagation import GaussianPulseSpec, SpectralGrid
from .utils import ConfigError, assert_type


@dataclass
class SplitterConfig(Serializable):
    """
    Parameters of a run, as stored in a JSON config file. Detunings, Rabi frequencies
    and decay rates are in units of Γ.
    """

    gamma_big_per_s: float = 3.1e7
    """Γ, decay rate of the optical coherences, in s⁻¹."""

    lambda_angstrom: float = 5890.0
    """Wavelength of the probed transition in Å."""

    number_density_per_cm3: float = 2.2e11

    length_cm: float = 1.0

    alpha: float | None = None
    """Medium prefactor ND²/ħΓ. If None, calibrated from `target_group_index`."""

    target_group_index: float = SODIUM_GROUP_INDEX
    """Group index of the EIT component at δ = Δ = 0, used to calibrate `alpha`."""

    G_over_gamma: float = 0.15
    Delta_over_gamma: float = 0.0
    B_over_gamma: float = 10.0

    gamma12_over_gamma: float = 0.0
    gamma23_over_gamma: float = 0.0
    gamma_e1_over_gamma: float = 1.0
    gamma_e3_over_gamma: float = 1.0

    sigma_per_s: float = 2 * math.pi * 4775
    """Spectral width σ of the Gaussian probe pulse in rad/s."""

    center_delta_over_gamma: float | None = None
    """Carrier detuning of the pulse. If None, the pulse sits at δ = Δ."""

    n_points: int = 2**14
    """Number of points of the propagation grid."""

    span_over_sigma: float = 64.0
    """Frequency span of the propagation grid in units of σ."""

    def __post_init__(self):
        try:
            self.drive()
            self.medium()
            self.pulse()
            self.grid()
        except ConfigError:
            raise
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid configuration: {e}") from e

    def drive(self) -> DriveConfig:
        return DriveConfig(
            g_rabi=self.G_over_gamma,
            delta_pump=self.Delta_over_gamma,
            b_zeeman=self.B_over_gamma,
        )

    def medium(self) -> AtomicMedium:
        medium = AtomicMedium(
            alpha=self.alpha or 0.0,
            gamma_big=self.gamma_big_per_s,
            gamma_e1=self.gamma_e1_over_gamma,
            gamma_e3=self.gamma_e3_over_gamma,
            gamma_12=self.gamma12_over_gamma,
            gamma_23=self.gamma23_over_gamma,
            length=self.length_cm,
            wavelength=self.lambda_angstrom * ANGSTROM,
            number_density=self.number_density_per_cm3,
        )
        if self.alpha is not None:
            return medium

        drive = self.drive()
        if drive.g_rabi <= 0:
            raise ConfigError("`alpha` must be given when there is no control field")

        return medium.with_alpha(
            calibrate_alpha(self.target_group_index, drive, medium)
        )

    def pulse(self) -> GaussianPulseSpec:
        center = self.center_delta_over_gamma
        return GaussianPulseSpec(
            sigma=self.sigma_per_s,
            center_delta=self.Delta_over_gamma if center is None else center,
        )

    def grid(self) -> SpectralGrid:
        return SpectralGrid.for_pulse(self.pulse(), self.n_points, self.span_over_sigma)

    def resolved(self) -> "SplitterConfig":
        """A copy with `alpha` filled in, which reproduces this run on its own."""
        return replace(self, alpha=self.medium().alpha)

    def with_overrides(self, **overrides: Any) -> "SplitterConfig":
        """Replace every field whose override is not None."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def from_file(cls, path: Path | str) -> "SplitterConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Could not read config file '{path}': {e}") from e

        try:
            data = assert_type(dict, raw)
        except TypeError as e:
            raise ConfigError(f"Config file '{path}' must hold a JSON object") from e

        known = {f.name for f in fields(cls)}
        if unknown := sorted(set(data) - known):
            raise ConfigError(f"Unknown keys in config file '{path}': {unknown}")

        try:
            return cls.from_dict(data)
        except ConfigError:
            raise
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid value in config file '{path}': {e}") from e
