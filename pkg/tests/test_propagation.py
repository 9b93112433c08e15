import math
from dataclasses import replace

import pytest
import torch

from splitter.dispersion import group_index, separation
from splitter.medium import (
    SPEED_OF_LIGHT,
    AtomicMedium,
    DriveConfig,
    default_sodium_medium,
)
from splitter.propagation import (
    GaussianPulseSpec,
    SpectralGrid,
    compute_kappa,
    gaussian_spectrum,
    propagate_gaussian_analytic,
    propagate_spectral,
    spectral_energy,
    temporal_energy,
    to_spectrum,
    to_time_domain,
)
from splitter.susceptibility import Polarization
from splitter.utils import PreconditionError


def sodium_setup():
    drive = DriveConfig()
    spec = GaussianPulseSpec()
    return spec, SpectralGrid.for_pulse(spec), default_sodium_medium(drive), drive


def test_spectral_grid():
    grid = SpectralGrid.for_pulse(GaussianPulseSpec())
    assert grid.n_points == 2**14
    assert grid.span == pytest.approx(64 * 2 * math.pi * 4775)
    product = grid.dt * grid.domega * grid.n_points
    assert product == pytest.approx(2 * math.pi, rel=1e-12)

    # Zero sits on the grid
    assert grid.times[grid.n_points // 2].item() == 0.0
    assert grid.frequencies[grid.n_points // 2].item() == 0.0

    with pytest.raises(ValueError):
        SpectralGrid(span=1e6, n_points=1000)
    with pytest.raises(ValueError):
        SpectralGrid(span=1e6, n_points=512)
    with pytest.raises(ValueError):
        SpectralGrid(span=0.0)
    with pytest.raises(ValueError):
        GaussianPulseSpec(sigma=0.0)


def test_gaussian_transform_pair():
    spec = GaussianPulseSpec(amplitude=2.0)
    grid = SpectralGrid.for_pulse(spec)
    assert spec.sigma == pytest.approx(3.0e4, rel=1e-2)

    spectrum = gaussian_spectrum(spec, grid)
    envelope = to_time_domain(spectrum, grid)
    expected = spec.amplitude * torch.exp(-(spec.sigma**2) * grid.times**2 / 4)
    torch.testing.assert_close(
        envelope, expected.to(torch.complex128), rtol=0, atol=1e-10
    )
    assert envelope[grid.n_points // 2].real.item() == pytest.approx(2.0, rel=1e-10)

    torch.testing.assert_close(
        to_spectrum(envelope, grid), spectrum, rtol=1e-9, atol=1e-17
    )

    # Parseval
    assert spectral_energy(spectrum, grid) == pytest.approx(
        temporal_energy(envelope, grid), rel=1e-10
    )

    # |E|² falls to half at t = √(2 ln 2)/σ
    intensity = envelope.abs().square()
    above = intensity >= intensity.max() / 2
    fwhm = above.sum().item() * grid.dt
    expected_fwhm = 2 * math.sqrt(2 * math.log(2)) / spec.sigma
    assert fwhm == pytest.approx(expected_fwhm, abs=2 * grid.dt)

    with pytest.raises(PreconditionError):
        gaussian_spectrum(spec, SpectralGrid(span=4 * spec.sigma))


def test_vacuum_is_identity():
    spec = GaussianPulseSpec()
    grid = SpectralGrid.for_pulse(spec)
    result = propagate_spectral(spec, grid, AtomicMedium(alpha=0.0), DriveConfig())

    reference = result.input_envelope.samples
    scale = reference.abs().max()
    for envelope in (result.envelope_plus, result.envelope_minus):
        error = (envelope.samples - reference).abs().max() / scale
        assert error.item() < 1e-10
        assert envelope.retarded and envelope.t0 == pytest.approx(1 / SPEED_OF_LIGHT)

    assert abs(result.peak_time_plus) < grid.dt
    assert result.separation_measured == 0.0
    assert result.peak_intensity_ratio_minus == pytest.approx(1.0, rel=1e-10)


def test_sodium_configuration():
    spec, grid, medium, drive = sodium_setup()
    result = propagate_spectral(spec, grid, medium, drive)

    # σ⁻ arrives about 4000/Γ after σ⁺
    assert result.separation_measured < 0
    gamma_sep = -result.separation_measured * medium.gamma_big
    assert gamma_sep == pytest.approx(4053, rel=0.05)
    assert result.separation_measured == result.peak_time_plus - result.peak_time_minus
    assert result.peak_time_minus >= 0

    expected = separation(spec.center_delta, medium, drive).item()
    tolerance = max(grid.dt, 0.02 * abs(expected))
    assert abs(result.separation_measured - expected) <= tolerance

    _, sigma_prime = compute_kappa(spec, medium, drive)
    ratio = abs(sigma_prime / spec.sigma) ** 2
    assert result.peak_intensity_ratio_minus == pytest.approx(ratio, abs=0.03)
    assert result.peak_intensity_ratio_minus == pytest.approx(0.856, abs=0.03)

    assert result.vacuum_delay == pytest.approx(medium.length / SPEED_OF_LIGHT)
    assert set(result.summary()) == {
        "peak_time_plus",
        "peak_time_minus",
        "separation_measured",
        "peak_intensity_ratio_plus",
        "peak_intensity_ratio_minus",
        "vacuum_delay",
    }

    plus, minus = result.normalized_intensities()
    ratio_minus = result.peak_intensity_ratio_minus
    assert minus.max().item() == pytest.approx(ratio_minus, rel=1e-2)
    assert plus.max().item() < 1

    header = result.to_csv().splitlines()[0]
    assert header == "tau_seconds,intensity_plus,intensity_minus"


def test_grid_refinement():
    spec, grid, medium, drive = sodium_setup()
    coarse = propagate_spectral(spec, grid, medium, drive)
    fine = propagate_spectral(spec, replace(grid, n_points=2**15), medium, drive)

    assert abs(fine.peak_time_plus - coarse.peak_time_plus) < grid.dt
    assert abs(fine.peak_time_minus - coarse.peak_time_minus) < grid.dt


def test_grid_preconditions():
    spec, _, medium, drive = sodium_setup()

    with pytest.raises(PreconditionError):
        propagate_spectral(spec, SpectralGrid(span=10 * spec.sigma), medium, drive)

    # Too coarse to resolve the transparency window
    coarse = SpectralGrid(span=4096 * spec.sigma, n_points=2**10)
    with pytest.raises(PreconditionError):
        propagate_spectral(spec, coarse, medium, drive)


def test_kappa():
    spec, _, medium, drive = sodium_setup()
    kappa, sigma_prime = compute_kappa(spec, medium, drive)

    assert 0.13 <= kappa.imag <= 0.18
    assert abs(kappa.real) < 0.01 * kappa.imag
    assert sigma_prime == pytest.approx(spec.sigma / (1 - 1j * kappa) ** 0.5, rel=1e-12)

    longer = compute_kappa(spec, replace(medium, length=2.0), drive).kappa
    assert longer == pytest.approx(2 * kappa, rel=1e-12)

    vacuum = compute_kappa(spec, AtomicMedium(alpha=0.0), drive)
    assert vacuum.kappa == 0
    assert vacuum.sigma_prime == spec.sigma


@pytest.mark.parametrize("shrink, tolerance", [(1, 5e-2), (4, 5e-3)])
def test_analytic_matches_spectral(shrink: int, tolerance: float):
    _, _, medium, drive = sodium_setup()
    spec = GaussianPulseSpec(sigma=2 * math.pi * 4775 / shrink)
    grid = SpectralGrid.for_pulse(spec)

    analytic = propagate_gaussian_analytic(spec, medium, drive, grid)
    spectral = propagate_spectral(spec, grid, medium, drive).envelope_minus
    assert analytic.pol is Polarization.SIGMA_MINUS

    # Each spectral component carries E₀/√2; compare phase as well as modulus
    reference = analytic.samples
    error = (spectral.samples * math.sqrt(2) - reference).abs().max()
    assert (error / reference.abs().max()).item() <= tolerance


def test_analytic_envelope():
    spec, grid, medium, drive = sodium_setup()
    envelope = propagate_gaussian_analytic(spec, medium, drive, grid)

    transit = group_index(0.0, Polarization.SIGMA_MINUS, medium, drive).transit_time
    assert transit.item() == pytest.approx(1.307e-4, rel=1e-3)

    peak_time, peak = envelope.peak()
    assert peak_time + envelope.t0 == pytest.approx(transit.item(), abs=grid.dt)

    _, sigma_prime = compute_kappa(spec, medium, drive)
    assert math.sqrt(peak) == pytest.approx(abs(sigma_prime / spec.sigma), rel=1e-3)

    # Without atoms the input is only delayed by L/c
    vacuum = propagate_gaussian_analytic(spec, AtomicMedium(alpha=0.0), drive, grid)
    expected = torch.exp(-(spec.sigma**2) * grid.times**2 / 4)
    torch.testing.assert_close(vacuum.samples.abs(), expected, rtol=0, atol=1e-12)
    assert vacuum.t0 == pytest.approx(1 / SPEED_OF_LIGHT)


def test_analytic_preconditions():
    spec, grid, medium, drive = sodium_setup()

    with pytest.raises(PreconditionError):
        propagate_gaussian_analytic(spec, replace(medium, gamma_12=0.01), drive, grid)
    with pytest.raises(PreconditionError):
        off_window = replace(spec, center_delta=0.5)
        propagate_gaussian_analytic(off_window, medium, drive, grid)
