"""Deterministic datasets behind the susceptibility, group-index, separation and pulse
figures.

All susceptibility data share one absolute probe-detuning axis δ/Γ, measured from the
|e⟩–|1⟩ transition. The σ⁺ curves are therefore centered on their own
transition at δ = −2B rather than replotted on an offset axis.
"""

import csv
import io
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import torch
from natsort import natsorted
from simple_parsing import Serializable
from torch import Tensor
from tqdm.auto import tqdm

from .config import SplitterConfig
from .dispersion import sweep_ng_vs_pump_detuning, sweep_separation_vs_probe_detuning
from .propagation import gaussian_spectrum, propagate_spectral, to_time_domain
from .susceptibility import Polarization, chi_eit
from .utils import assert_type, atomic_write_text, columns_to_csv

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5a", "fig5b", "li7_signflip")
"""Datasets emitted by `reproduce all`."""

EXTRA_FIGURE_IDS = ("window2_reversal",)
"""Datasets available on request only."""

DEFAULT_AXES = {
    "fig2": (-25.0, 25.0, 5001),
    "fig3": (-20.0, 20.0, 401),
    "fig4": (-20.0, 20.0, 401),
}
"""Sweep range (min, max, points) in units of Γ for the figures that have one."""


@dataclass
class FigureParams(Serializable):
    """Everything needed to recompute one dataset bit for bit."""

    figure_id: str

    config: SplitterConfig = field(default_factory=SplitterConfig)
    """Effective run configuration, with `alpha` resolved."""

    axis_min: float | None = None
    axis_max: float | None = None
    axis_points: int | None = None

    tau_gamma_max: float = 1e4
    """Pulse datasets keep samples with |τΓ| below this value."""

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS + EXTRA_FIGURE_IDS:
            raise ValueError(
                f"Unknown figure id '{self.figure_id}'; expected one of "
                f"{', '.join(FIGURE_IDS + EXTRA_FIGURE_IDS)}"
            )

    @classmethod
    def for_figure(
        cls, figure_id: str, config: SplitterConfig | None = None, **overrides: Any
    ) -> "FigureParams":
        """Fill in the figure's conventions: sweep range, Zeeman sign, pulse center."""
        params = cls(figure_id, (config or SplitterConfig()).resolved())
        cfg = params.config

        if figure_id in DEFAULT_AXES:
            lo, hi, n = DEFAULT_AXES[figure_id]
            params = replace(params, axis_min=lo, axis_max=hi, axis_points=n)

        if figure_id == "li7_signflip":
            cfg = replace(cfg, B_over_gamma=-cfg.B_over_gamma)
        if figure_id == "window2_reversal":
            window = cfg.Delta_over_gamma - 2 * abs(cfg.B_over_gamma)
            cfg = replace(cfg, center_delta_over_gamma=window)

        params = replace(params, config=cfg)
        return replace(params, **{k: v for k, v in overrides.items() if v is not None})

    def axis(self) -> Tensor:
        if self.axis_min is None or self.axis_max is None or self.axis_points is None:
            raise ValueError(f"Figure '{self.figure_id}' has no sweep axis")
        if self.axis_points < 2 or self.axis_max <= self.axis_min:
            raise ValueError("Sweep axis needs at least two increasing points")

        # Each point rounds once, so grid values like 0 and the endpoints are exact
        steps = self.axis_points - 1
        index = torch.arange(self.axis_points, dtype=torch.float64)
        span = self.axis_max - self.axis_min
        return (index * span + self.axis_min * steps) / steps


@dataclass
class FigureDataset:
    figure_id: str

    columns: dict[str, Tensor]
    """Named, equal-length numeric columns in output order."""

    params_echo: FigureParams

    def __post_init__(self):
        lengths = {len(col) for col in self.columns.values()}
        if not self.columns or len(lengths) != 1 or 0 in lengths:
            raise ValueError("Dataset columns must be non-empty and of equal length")

    def to_csv(self) -> str:
        return columns_to_csv(self.columns)


def _susceptibility_columns(params: FigureParams) -> dict[str, Tensor]:
    cfg = params.config
    medium, drive = cfg.medium(), cfg.drive()
    delta = params.axis()

    plus = chi_eit(delta, Polarization.SIGMA_PLUS, medium, drive).value
    minus = chi_eit(delta, Polarization.SIGMA_MINUS, medium, drive).value
    return {
        "delta_over_gamma": delta,
        "re_chi_plus": plus.real,
        "im_chi_plus": plus.imag,
        "re_chi_minus": minus.real,
        "im_chi_minus": minus.imag,
    }


def _pump_sweep_columns(params: FigureParams) -> dict[str, Tensor]:
    cfg = params.config
    table = sweep_ng_vs_pump_detuning(params.axis(), cfg.medium(), cfg.drive())
    return {
        "pump_detuning_over_gamma": table.axis,
        "ng_plus": table.ng_plus,
        "ng_minus": table.ng_minus,
        "sep_seconds": table.sep_seconds,
    }


def _separation_columns(params: FigureParams) -> dict[str, Tensor]:
    cfg = params.config
    table = sweep_separation_vs_probe_detuning(params.axis(), cfg.medium(), cfg.drive())
    return {
        "delta_over_gamma": table.axis,
        "gamma_sep": table.gamma_sep,
        "sep_seconds": table.sep_seconds,
        "im_chi_plus": table.im_chi_plus,
        "im_chi_minus": table.im_chi_minus,
    }


def _window(params: FigureParams, tau: Tensor) -> tuple[Tensor, Tensor]:
    tau_gamma = tau * params.config.gamma_big_per_s
    return tau_gamma, tau_gamma.abs() <= params.tau_gamma_max


def _input_pulse_columns(params: FigureParams) -> dict[str, Tensor]:
    cfg = params.config
    pulse, grid = cfg.pulse(), cfg.grid()

    envelope = to_time_domain(gaussian_spectrum(pulse, grid), grid)
    intensity = envelope.abs().square() / pulse.amplitude**2

    tau_gamma, keep = _window(params, grid.times)
    return {
        "tau_gamma": tau_gamma[keep],
        "intensity": intensity[keep],
        "intensity_component": intensity[keep] / 2,
    }


def _output_pulse_columns(params: FigureParams) -> dict[str, Tensor]:
    cfg = params.config
    result = propagate_spectral(cfg.pulse(), cfg.grid(), cfg.medium(), cfg.drive())
    plus, minus = result.normalized_intensities()

    tau_gamma, keep = _window(params, result.envelope_plus.times)
    return {
        "tau_gamma": tau_gamma[keep],
        "intensity_plus": plus[keep],
        "intensity_minus": minus[keep],
    }


BUILDERS = {
    "fig2": _susceptibility_columns,
    "fig3": _pump_sweep_columns,
    "fig4": _separation_columns,
    "fig5a": _input_pulse_columns,
    "fig5b": _output_pulse_columns,
    "li7_signflip": _output_pulse_columns,
    "window2_reversal": _output_pulse_columns,
}


def reproduce_from_params(params: FigureParams) -> FigureDataset:
    columns = BUILDERS[params.figure_id](params)
    return FigureDataset(params.figure_id, columns, params)


def reproduce(
    figure_id: str, config: SplitterConfig | None = None, **overrides: Any
) -> FigureDataset:
    """Compute one dataset. `overrides` replace fields of `FigureParams`, e.g. the
    sweep range `axis_min`, `axis_max`, `axis_points`."""
    params = FigureParams.for_figure(figure_id, config, **overrides)
    return reproduce_from_params(params)


def write_dataset(dataset: FigureDataset, outdir: Path | str) -> Path:
    """Write `<figure_id>.csv` and `<figure_id>.params.json` into `outdir`."""
    outdir = Path(outdir)
    csv_path = outdir / f"{dataset.figure_id}.csv"
    params_path = outdir / f"{dataset.figure_id}.params.json"

    params = json.dumps(dataset.params_echo.to_dict(), indent=2, sort_keys=True)
    atomic_write_text(csv_path, dataset.to_csv())
    atomic_write_text(params_path, params + "\n")
    return csv_path


def read_dataset(path: Path | str) -> FigureDataset:
    """Load a dataset written by `write_dataset` from its CSV path."""
    path = Path(path)
    params_path = path.with_name(path.name.removesuffix(".csv") + ".params.json")

    with open(params_path) as f:
        params = FigureParams.from_dict(assert_type(dict, json.load(f)))

    reader = csv.reader(io.StringIO(path.read_text()))
    header = next(reader)
    values = [[float(v) for v in row] for row in reader]
    columns = {
        name: torch.tensor([row[i] for row in values], dtype=torch.float64)
        for i, name in enumerate(header)
    }
    return FigureDataset(params.figure_id, columns, params)


def read_many(outdir: Path | str) -> dict[str, FigureDataset]:
    """Load every dataset in `outdir`, keyed by figure id in natural order."""
    files = natsorted(Path(outdir).glob("*.csv"), key=lambda f: f.name)
    return {f.name.removesuffix(".csv"): read_dataset(f) for f in files}


def reproduce_all(
    outdir: Path | str,
    config: SplitterConfig | None = None,
    figure_ids: tuple[str, ...] = FIGURE_IDS,
    *,
    progress: bool = True,
) -> list[Path]:
    paths = []
    for figure_id in tqdm(figure_ids, desc="Reproducing", disable=not progress):
        paths.append(write_dataset(reproduce(figure_id, config), outdir))

    return paths
