import math

import numpy as np
import pytest

from robin_dce import (
    Flag,
    FrequencyGrid,
    PhysicalParams,
    ThermalConvention,
    scaled_units_note,
    spectrum_thermal_closed,
    spectrum_total,
    validate_params,
)
from robin_dce.errors import InvalidParameterError


def test_validate_all_conditions_met():
    report = validate_params(PhysicalParams(1.0, 0.01, 1.0, 100.0, 0.0))
    assert report.flags == (Flag.OK,)
    assert report.ok and report.narrowband and report.perturbative and not report.hard


def test_validate_out_of_perturbative_regime():
    report = validate_params(PhysicalParams(1.0, 0.5, 1.0, 100.0, 0.0))
    assert Flag.OUT_OF_PERTURBATIVE_REGIME in report.flags
    assert not report.hard


def test_validate_not_narrowband():
    report = validate_params(PhysicalParams(1.0, 0.01, 1.0, 5.0, 0.0))
    assert report.flags == (Flag.NOT_NARROWBAND,)


@pytest.mark.parametrize("changes", [
    {"gamma0": 0.0}, {"gamma0": -1.0}, {"tau": 0.0}, {"tau": -3.0},
    {"temperature": -0.1}, {"omega0": math.nan}, {"epsilon0": -1.0},
])
def test_validate_degenerate(changes):
    p = PhysicalParams(1.0).replace(**changes)
    report = validate_params(p)
    assert report.hard
    assert Flag.DEGENERATE in report.flags


def test_validate_is_pure_and_idempotent():
    p = PhysicalParams(1.0, 0.5, 1.0, 5.0, 0.1)
    assert validate_params(p) == validate_params(p)
    assert p == PhysicalParams(1.0, 0.5, 1.0, 5.0, 0.1)


def test_scale_factors():
    p = PhysicalParams(gamma0=1.0, epsilon0=0.01, omega0=1.0, tau=100.0)
    note = scaled_units_note(p)
    assert note.spectrum_scale == pytest.approx(2 * math.pi / (0.01**2 * 100.0), rel=1e-15)
    assert note.rate_scale == pytest.approx(2 * math.pi / 0.01**2, rel=1e-15)
    assert note.frequency_unit == 1.0
    assert note.issues == ()


def test_scale_omega0_zero_reported():
    note = scaled_units_note(PhysicalParams(gamma0=1.0, omega0=0.0))
    assert "omega0-zero" in note.issues


def test_scale_round_trip():
    note = scaled_units_note(PhysicalParams(gamma0=2.0, epsilon0=0.03, tau=40.0))
    raw = np.array([1e-3, 0.2, 5.0])
    np.testing.assert_allclose(note.to_raw_spectrum(note.to_scaled_spectrum(raw)), raw, rtol=1e-15)
    np.testing.assert_allclose(note.to_raw_rate(note.to_scaled_rate(raw)), raw, rtol=1e-15)


@pytest.mark.parametrize("points", [[0.0], [0.0, 0.0, 1.0], [1.0, 0.5], [-0.1, 1.0], [0.0, np.inf]])
def test_grid_rejects_bad_points(points):
    with pytest.raises(InvalidParameterError):
        FrequencyGrid(points)


def test_grid_parse():
    grid = FrequencyGrid.parse("0:1.5:301")
    assert len(grid) == 301
    assert grid.points[100] == 0.5
    for bad in ("0:1", "0.4:0.4:1", "1:0:5", "0:1:x"):
        with pytest.raises(InvalidParameterError):
            FrequencyGrid.parse(bad)


def test_spectral_result_invariants():
    grid = FrequencyGrid.parse("0:1.5:151")
    res = spectrum_total(grid, PhysicalParams(gamma0=5.0, temperature=0.07))
    assert res.vacuum.shape == res.thermal.shape == res.total.shape == grid.points.shape
    np.testing.assert_array_equal(res.total, res.vacuum + res.thermal)
    assert np.all(res.vacuum >= 0) and np.all(res.thermal >= 0)


def test_conventions_agree_below_omega0():
    p = PhysicalParams(gamma0=5.0, omega0=2.0, temperature=0.1)
    w = np.linspace(0, 2, 400, endpoint=False)
    np.testing.assert_array_equal(
        spectrum_thermal_closed(w, p, ThermalConvention.AS_PRINTED),
        spectrum_thermal_closed(w, p, ThermalConvention.SELF_CONSISTENT),
    )
