import pytest
import torch

from splitter.dispersion import (
    SweepTable,
    chi_derivative,
    group_index,
    richardson_derivative,
    separation,
    sweep_ng_vs_pump_detuning,
    sweep_separation_vs_density,
    sweep_separation_vs_probe_detuning,
    transmission,
)
from splitter.medium import (
    SPEED_OF_LIGHT,
    AtomicMedium,
    DriveConfig,
    default_sodium_medium,
)
from splitter.susceptibility import Polarization

PLUS, MINUS = Polarization.SIGMA_PLUS, Polarization.SIGMA_MINUS


def test_richardson_derivative():
    x = torch.linspace(-3, 3, 61, dtype=torch.float64)

    first = richardson_derivative(torch.sin, x, h=1e-2)
    torch.testing.assert_close(first, torch.cos(x), rtol=1e-8, atol=1e-10)

    second = richardson_derivative(torch.sin, x, h=1e-2, order=2)
    torch.testing.assert_close(second, -torch.sin(x), rtol=1e-7, atol=1e-9)


def test_derivative_matches_closed_form():
    medium = default_sodium_medium()
    drive = DriveConfig(g_rabi=0.15, delta_pump=0.0)
    delta = torch.linspace(-0.1, 0.1, 201, dtype=torch.float64)

    # Dressed σ⁻ susceptibility α N / 2D and its exact derivative in δ/Γ
    g, gamma_e, gamma_g = drive.g_rabi, medium.gamma_e1, medium.gamma_12
    raman = 1j * (delta - drive.delta_pump) - gamma_g
    numer = (delta - drive.delta_pump) + 1j * gamma_g
    denom = (1j * delta - gamma_e) * raman + g**2
    d_denom = 1j * raman + 1j * (1j * delta - gamma_e)

    exact = medium.alpha * (denom - numer * d_denom) / (2 * denom**2)
    exact = exact / medium.gamma_big

    numeric = chi_derivative(delta, MINUS, medium, drive)
    error = (numeric - exact).abs() / exact.abs()
    assert error.max().item() <= 1e-6


def test_group_index_sodium_configuration():
    drive = DriveConfig()
    medium = default_sodium_medium(drive)

    minus = group_index(0.0, MINUS, medium, drive)
    assert minus.n_g.item() == pytest.approx(3.92e6, rel=1e-10)
    assert minus.pol is MINUS

    # The detuned component is barely slowed
    plus = group_index(0.0, PLUS, medium, drive)
    assert 1 < plus.n_g.item() < 1e3

    for result in (plus, minus):
        assert (result.v_g * result.n_g).item() == pytest.approx(
            SPEED_OF_LIGHT, rel=1e-12
        )
        assert result.transit_time.item() == pytest.approx(
            medium.length * result.n_g.item() / SPEED_OF_LIGHT, rel=1e-12
        )


def test_vacuum_group_index():
    medium = AtomicMedium(alpha=0.0)
    drive = DriveConfig()

    for pol in Polarization:
        for delta in (-5.0, 0.0, 0.3):
            result = group_index(delta, pol, medium, drive)
            assert result.n_g.item() == 1.0
            assert result.v_g.item() == SPEED_OF_LIGHT

    assert separation(0.0, medium, drive).item() == 0.0


def test_separation_and_sign_flip():
    drive = DriveConfig()
    medium = default_sodium_medium(drive)

    sep = separation(0.0, medium, drive).item()
    assert sep == pytest.approx(-130.7e-6, abs=3e-6)

    flipped = separation(0.0, medium, drive.flipped()).item()
    assert flipped == pytest.approx(-sep, rel=1e-6)

    # Still antisymmetric with equal, nonzero ground-coherence decay
    lossy = AtomicMedium(alpha=medium.alpha, gamma_12=0.005, gamma_23=0.005)
    lossy_sep = separation(0.0, lossy, drive).item()
    assert separation(0.0, lossy, drive.flipped()).item() == pytest.approx(
        -lossy_sep, rel=1e-6
    )


def test_transmission():
    drive = DriveConfig()
    medium = default_sodium_medium(drive)

    assert transmission(0.0, MINUS, medium, drive).item() == 1.0
    assert 0.55 < transmission(0.0, PLUS, medium, drive).item() < 0.72

    vacuum = AtomicMedium(alpha=0.0)
    assert transmission(0.0, PLUS, vacuum, drive).item() == 1.0


def test_pump_detuning_sweep():
    drive = DriveConfig()
    medium = default_sodium_medium(drive)
    table = sweep_ng_vs_pump_detuning([-20.0, -10.0, 0.0, 10.0, 20.0], medium, drive)

    assert len(table) == 5
    spread = table.ng_minus.max() - table.ng_minus.min()
    assert (spread / table.ng_minus.mean()).item() < 1e-3
    assert table.ng_minus.mean().item() == pytest.approx(3.92e6, rel=1e-3)

    # The Δ = 0 row is the single-point separation
    assert table.sep_seconds[2].item() == pytest.approx(
        separation(0.0, medium, drive).item(), rel=1e-10
    )
    ones = torch.ones(5, dtype=torch.float64)
    torch.testing.assert_close(table.transmission_minus, ones)


def test_probe_detuning_sweep():
    drive = DriveConfig()
    medium = default_sodium_medium(drive)

    near = torch.linspace(0.0, 0.02, 21, dtype=torch.float64)
    table = sweep_separation_vs_probe_detuning(near, medium, drive)
    magnitude = table.sep_seconds.abs()
    assert bool((magnitude.diff() < 0).all())

    for i in (0, 7, 20):
        assert table.sep_seconds[i].item() == pytest.approx(
            separation(near[i].item(), medium, drive).item(), rel=1e-9
        )

    far = sweep_separation_vs_probe_detuning([-1000.0, 1000.0], medium, drive)
    assert bool((far.sep_seconds.abs() < 1e-3 * magnitude[0]).all())
    torch.testing.assert_close(far.gamma_sep, far.sep_seconds * medium.gamma_big)


def test_density_sweep():
    drive = DriveConfig()
    medium = default_sodium_medium(drive)
    factors = torch.tensor([0.5, 1.0, 2.0], dtype=torch.float64)
    table = sweep_separation_vs_density(factors, medium, drive)

    torch.testing.assert_close(
        table.sep_seconds,
        separation(0.0, medium, drive) * factors,
        rtol=1e-9,
        atol=0,
    )
    # More atoms, more absorption of the detuned component
    assert bool((table.transmission_plus.diff() < 0).all())

    with pytest.raises(ValueError):
        sweep_separation_vs_density([0.0, 1.0], medium, drive)
    with pytest.raises(ValueError):
        sweep_separation_vs_density([1.0], AtomicMedium(alpha=1e-4), drive)


def test_sweep_table():
    drive = DriveConfig()
    medium = default_sodium_medium(drive)
    table = sweep_separation_vs_probe_detuning([-1.0, 0.0, 1.0], medium, drive)

    assert list(table.columns()) == [
        "sweep_param",
        "ng_plus",
        "ng_minus",
        "sep_seconds",
        "im_chi_plus",
        "im_chi_minus",
        "gamma_sep",
        "transmission_plus",
        "transmission_minus",
    ]
    rows = table.rows()
    assert len(rows) == 3
    assert rows[1]["sweep_param"] == 0.0

    csv = table.to_csv().splitlines()
    assert csv[0].startswith("sweep_param,ng_plus,ng_minus,sep_seconds,")
    assert len(csv) == 4

    with pytest.raises(ValueError):
        SweepTable(
            torch.tensor([1.0, 0.0], dtype=torch.float64),
            *[torch.zeros(2, dtype=torch.float64)] * 7,
            gamma_big=1.0,
        )
