from .config import SplitterConfig
from .dispersion import (
    GroupIndexResult,
    SweepTable,
    group_index,
    separation,
    sweep_ng_vs_pump_detuning,
    sweep_separation_vs_density,
    sweep_separation_vs_probe_detuning,
)
from .experiments import FigureDataset, FigureParams, reproduce, reproduce_all
from .medium import AtomicMedium, DriveConfig, calibrate_alpha
from .propagation import (
    GaussianPulseSpec,
    PropagationResult,
    SpectralGrid,
    compute_kappa,
    propagate_gaussian_analytic,
    propagate_spectral,
)
from .susceptibility import Polarization, chi_bare, chi_eit
from .utils import ConfigError, PreconditionError

__all__ = [
    "AtomicMedium",
    "ConfigError",
    "DriveConfig",
    "FigureDataset",
    "FigureParams",
    "GaussianPulseSpec",
    "GroupIndexResult",
    "Polarization",
    "PreconditionError",
    "PropagationResult",
    "SpectralGrid",
    "SplitterConfig",
    "SweepTable",
    "calibrate_alpha",
    "chi_bare",
    "chi_eit",
    "compute_kappa",
    "group_index",
    "propagate_gaussian_analytic",
    "propagate_spectral",
    "reproduce",
    "reproduce_all",
    "separation",
    "sweep_ng_vs_pump_detuning",
    "sweep_separation_vs_density",
    "sweep_separation_vs_probe_detuning",
]
