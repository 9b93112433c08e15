import json
import os
import sys
from dataclasses import dataclass, replace

import torch
from simple_parsing import ArgumentParser, DashVariant, choice, field, subparsers

from .config import SplitterConfig
from .dispersion import (
    group_index,
    sweep_ng_vs_pump_detuning,
    sweep_separation_vs_density,
    sweep_separation_vs_probe_detuning,
)
from .experiments import EXTRA_FIGURE_IDS, FIGURE_IDS, reproduce, write_dataset
from .propagation import propagate_spectral
from .susceptibility import Polarization, chi_bare, chi_eit
from .utils import (
    ConfigError,
    PreconditionError,
    atomic_write_text,
    columns_to_csv,
    parse_range,
)

OVERRIDABLE = (
    "alpha",
    "length_cm",
    "number_density_per_cm3",
    "G_over_gamma",
    "Delta_over_gamma",
    "B_over_gamma",
    "gamma12_over_gamma",
    "gamma23_over_gamma",
    "sigma_per_s",
    "center_delta_over_gamma",
    "n_points",
    "span_over_sigma",
)
"""Config keys that can be set from the command line. Flags win over the file."""


@dataclass
class CommonArgs:
    config: str | None = field(
        default_factory=lambda: os.environ.get("SPLITTER_CONFIG")
    )
    """JSON config file. Defaults to $SPLITTER_CONFIG."""

    out: str | None = None
    """Output path. Defaults to stdout."""

    alpha: float | None = None
    length_cm: float | None = None
    number_density_per_cm3: float | None = None
    G_over_gamma: float | None = None
    Delta_over_gamma: float | None = None
    B_over_gamma: float | None = None
    gamma12_over_gamma: float | None = None
    gamma23_over_gamma: float | None = None
    sigma_per_s: float | None = None
    center_delta_over_gamma: float | None = None
    n_points: int | None = None
    span_over_sigma: float | None = None

    flip_b: bool = False
    """Reverse the Zeeman splitting, as for an opposite Landé factor."""

    def load_config(self) -> SplitterConfig:
        """Merge the config file with the flags and echo the result to stderr."""
        cfg = SplitterConfig.from_file(self.config) if self.config else SplitterConfig()
        cfg = cfg.with_overrides(**{k: getattr(self, k) for k in OVERRIDABLE})
        if self.flip_b:
            cfg = replace(cfg, B_over_gamma=-cfg.B_over_gamma)

        cfg = cfg.resolved()
        print(json.dumps({"config": cfg.to_dict()}), file=sys.stderr)
        return cfg

    def emit(self, text: str):
        if self.out is None:
            sys.stdout.write(text)
        else:
            atomic_write_text(self.out, text)
            print(f"Wrote {self.out}", file=sys.stderr)


@dataclass
class Chi(CommonArgs):
    """Dressed susceptibilities of both components over a detuning range."""

    delta: str = "-25:25:0.01"
    """Probe detuning range δ/Γ as start:stop:step."""

    no_control: bool = False
    """Switch the control field off and emit the bare susceptibilities."""

    def execute(self):
        cfg = self.load_config()
        medium, drive = cfg.medium(), cfg.drive()

        start, stop, step = parse_range(self.delta)
        n = round((stop - start) / step) + 1
        delta = start + torch.arange(n, dtype=torch.float64) * step

        columns = {"delta": delta}
        for pol in Polarization:
            if self.no_control:
                chi = chi_bare(delta, pol, medium, drive.b_zeeman).value
            else:
                chi = chi_eit(delta, pol, medium, drive).value

            columns[f"re_chi_{pol.short}"] = chi.real
            columns[f"im_chi_{pol.short}"] = chi.imag

        self.emit(columns_to_csv(columns))


@dataclass
class GroupIndex(CommonArgs):
    """Group indices, velocities and transit times of both components."""

    delta: float = 0.0
    """Probe detuning δ₀/Γ of the pulse carrier."""

    bare: bool = False
    """Use the susceptibilities without the control field."""

    def execute(self):
        cfg = self.load_config()
        medium, drive = cfg.medium(), cfg.drive()

        report: dict[str, float] = {"delta0": self.delta}
        for pol in Polarization:
            result = group_index(self.delta, pol, medium, drive, use_eit=not self.bare)
            report[f"ng_{pol.short}"] = result.n_g.item()
            report[f"vg_{pol.short}"] = result.v_g.item()
            report[f"t_{pol.short}"] = result.transit_time.item()

        report["sep_seconds"] = report["t_plus"] - report["t_minus"]
        self.emit(json.dumps(report, indent=2) + "\n")


@dataclass
class Sweep(CommonArgs):
    """Group indices and separation along a swept parameter."""

    kind: str = choice("probe", "pump", "density", default="probe")
    """Swept parameter: probe detuning δ, pump detuning Δ with δ = Δ, or density."""

    values: str = "-20:20:0.1"
    """Swept values as start:stop:step (δ/Γ, Δ/Γ or density factors)."""

    def execute(self):
        cfg = self.load_config()
        medium, drive = cfg.medium(), cfg.drive()

        start, stop, step = parse_range(self.values)
        n = round((stop - start) / step) + 1
        axis = start + torch.arange(n, dtype=torch.float64) * step

        if self.kind == "pump":
            table = sweep_ng_vs_pump_detuning(axis, medium, drive, progress=True)
        elif self.kind == "density":
            if not bool((axis > 0).all()):
                raise ConfigError("Density factors must be positive")
            table = sweep_separation_vs_density(axis, medium, drive)
        else:
            table = sweep_separation_vs_probe_detuning(axis, medium, drive)

        self.emit(table.to_csv())


@dataclass
class Propagate(CommonArgs):
    """Transmitted σ± intensities of the Gaussian probe pulse."""

    def execute(self):
        cfg = self.load_config()
        result = propagate_spectral(cfg.pulse(), cfg.grid(), cfg.medium(), cfg.drive())

        self.emit(result.to_csv())
        print(json.dumps({"summary": result.summary()}), file=sys.stderr)


@dataclass
class Reproduce(CommonArgs):
    """Write figure datasets as <out>/<figure_id>.csv and .params.json."""

    figure_id: str = field(default="all", positional=True, nargs="?")
    """One of the figure ids, or `all`."""

    axis_min: float | None = None
    """Start of the sweep axis in units of Γ, for fig2, fig3 and fig4."""

    axis_max: float | None = None
    axis_points: int | None = None

    def execute(self):
        known = FIGURE_IDS + EXTRA_FIGURE_IDS
        if self.figure_id != "all" and self.figure_id not in known:
            raise ConfigError(
                f"Unknown figure id '{self.figure_id}'; expected 'all' or one of "
                f"{', '.join(known)}"
            )

        cfg = self.load_config()
        outdir = self.out or "out"
        figure_ids = FIGURE_IDS if self.figure_id == "all" else (self.figure_id,)

        overrides = dict(
            axis_min=self.axis_min,
            axis_max=self.axis_max,
            axis_points=self.axis_points,
        )

        # Compute everything before writing anything
        try:
            datasets = [reproduce(fid, cfg, **overrides) for fid in figure_ids]
        except (ConfigError, PreconditionError):
            raise
        except ValueError as e:
            raise ConfigError(str(e)) from e
        for dataset in datasets:
            print(f"Wrote {write_dataset(dataset, outdir)}", file=sys.stderr)


@dataclass
class Program:
    command: Chi | GroupIndex | Sweep | Propagate | Reproduce = subparsers(
        {
            "chi": Chi,
            "groupindex": GroupIndex,
            "sweep": Sweep,
            "propagate": Propagate,
            "reproduce": Reproduce,
        }
    )


class _DashArgumentParser(ArgumentParser):
    # simple-parsing builds subcommand parsers via type(parser)(...) without
    # forwarding the dash-variant setting; default it here so it carries over.
    def __init__(self, *args, **kwargs):
        kwargs.setdefault(
            "add_option_string_dash_variants", DashVariant.UNDERSCORE_AND_DASH
        )
        super().__init__(*args, **kwargs)


def run(argv: list[str] | None = None):
    parser = _DashArgumentParser(
        prog="splitter",
        add_option_string_dash_variants=DashVariant.UNDERSCORE_AND_DASH,
    )
    parser.add_arguments(Program, dest="program")
    program: Program = parser.parse_args(argv).program

    try:
        program.command.execute()
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(2)
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(3)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    run()
