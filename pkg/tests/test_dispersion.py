import logging
import math
from pathlib import Path

import numpy as np
import pytest
import yaml

from qpmkit.dispersion import (
    Axis, ExpansionModel, SellmeierModel, expansion_factor, group_index, load_coefficient_library,
    refractive_index, sellmeier_index, thermo_optic_shift
)
from qpmkit.config import settings
from qpmkit.errors import (
    CoefficientSetNotFound, ConfigurationError, TemperatureRangeError, WavelengthRangeError
)


def test_z_index_at_1560(dispersion):
    assert sellmeier_index(dispersion.z, 1560e-9) == pytest.approx(1.81579, abs=2e-4)


def test_z_index_difference_matches_zzz_mismatch(dispersion):
    n_sh = refractive_index(dispersion.z, 780e-9, 25.0)
    n_f = refractive_index(dispersion.z, 1560e-9, 25.0)
    assert n_sh - n_f == pytest.approx(0.0312, rel=0.02)


def test_index_array_input(dispersion):
    lam = np.array([800e-9, 1000e-9, 1560e-9])
    n = refractive_index(dispersion.y, lam, 25.0)
    assert n.shape == (3,)
    # normal dispersion
    assert np.all(np.diff(n) < 0)


def test_thermo_optic_zero_at_reference(dispersion):
    correction = dispersion.z.temperature_correction
    assert thermo_optic_shift(correction, 1560e-9, correction.reference_temperature_c) == 0.0
    assert refractive_index(dispersion.z, 1560e-9, 25.0) == sellmeier_index(dispersion.z, 1560e-9)


def test_index_increases_with_temperature(dispersion):
    cold = refractive_index(dispersion.z, 1560e-9, 20.0)
    hot = refractive_index(dispersion.z, 1560e-9, 80.0)
    assert hot > cold


def test_wavelength_out_of_range(dispersion):
    with pytest.raises(WavelengthRangeError) as err:
        refractive_index(dispersion.z, 5e-6, 25.0)
    assert "5000.000 nm" in str(err.value)
    with pytest.raises(ValueError):
        sellmeier_index(dispersion.y, np.array([1e-6, 0.2e-6]))


def test_group_index_exceeds_phase_index(dispersion):
    n = refractive_index(dispersion.z, 1560e-9, 25.0)
    assert group_index(dispersion.z, 1560e-9, 25.0) > n


def test_expansion_factor(dispersion):
    expansion = dispersion.expansion
    assert expansion_factor(expansion, expansion.reference_temperature_c) == 1.0
    f = expansion_factor(expansion, 248.7)
    assert 1.0015 <= f <= 1.0021
    dt = 248.7 - expansion.reference_temperature_c
    assert f == pytest.approx(1 + expansion.alpha1 * dt + expansion.alpha2 * dt * dt, rel=1e-15)


def test_expansion_factor_range():
    model = ExpansionModel(alpha1=1e-5)
    with pytest.raises(TemperatureRangeError):
        expansion_factor(model, 401.0)
    with pytest.raises(TemperatureRangeError):
        expansion_factor(model, -60.0)


def test_sellmeier_model_validates_form():
    with pytest.raises(ValueError):
        SellmeierModel(
            name="bad", axis=Axis.Z, form="fan-sellmeier",
            coefficients=[1.0, 2.0], valid_wavelength_range=(0.4e-6, 1.6e-6),
        )
    with pytest.raises(ValueError):
        SellmeierModel(
            name="bad", axis=Axis.Z, form="multipole-sellmeier",
            coefficients=[2.0, 1.0, 0.05], valid_wavelength_range=(0.4e-6, 1.6e-6),
        )


def test_fan_sellmeier_form():
    model = SellmeierModel(
        name="z", axis=Axis.Z, form="fan-sellmeier",
        coefficients=[3.3134, 0.05694, 0.05658, 0.01682],
        valid_wavelength_range=(0.4e-6, 1.6e-6),
    )
    lam2 = 1.064 ** 2
    expected = math.sqrt(3.3134 + 0.05694 / (lam2 - 0.05658) - 0.01682 * lam2)
    assert sellmeier_index(model, 1064e-9) == pytest.approx(expected, rel=1e-14)


def test_library_profiles():
    library = load_coefficient_library()
    assert "ktp-default" in library.names("profiles")
    fan = library.dispersion("ktp-fan")
    assert fan.z.form == "fan-sellmeier"
    assert fan.for_axis(Axis.Y).axis == Axis.Y


def test_library_unknown_set_lists_available():
    library = load_coefficient_library()
    with pytest.raises(CoefficientSetNotFound) as err:
        library.dispersion("lithium-niobate")
    assert "ktp-default" in str(err.value)
    assert isinstance(err.value, KeyError)


def test_library_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_coefficient_library(str(tmp_path / "missing.yaml"))


def test_index_repeat_calls_are_identical(dispersion):
    first = refractive_index(dispersion.z, 1560e-9, 25.0)
    assert refractive_index(dispersion.z, 1560e-9, 25.0) == first


def test_zyy_index_difference(dispersion):
    n_sh = refractive_index(dispersion.z, 780e-9, 25.0)
    n_f = refractive_index(dispersion.y, 1560e-9, 25.0)
    assert n_sh - n_f == pytest.approx(0.1125, rel=0.02)


@pytest.mark.parametrize("temperature_c", [0.0, 25.0, 100.0])
def test_normal_dispersion(dispersion, temperature_c):
    lam = np.linspace(700e-9, 1700e-9, 201)
    for model in (dispersion.y, dispersion.z):
        assert np.all(np.diff(refractive_index(model, lam, temperature_c)) < 0)


@pytest.mark.parametrize("temperature_c", [0.0, 25.0, 100.0])
def test_z_index_exceeds_y(dispersion, temperature_c):
    lo = max(dispersion.y.valid_wavelength_range[0], dispersion.z.valid_wavelength_range[0])
    hi = min(dispersion.y.valid_wavelength_range[1], dispersion.z.valid_wavelength_range[1])
    lam = np.linspace(lo, hi, 301)
    assert np.all(refractive_index(dispersion.z, lam, temperature_c)
                  > refractive_index(dispersion.y, lam, temperature_c))


# |dn/dl| of either axis stays well under this over 700-1700 nm
INDEX_SLOPE_BOUND = 2e5


def test_index_continuity(dispersion):
    delta = 0.1e-9
    lam = np.linspace(700e-9, 1700e-9, 101)
    for model in (dispersion.y, dispersion.z):
        step = np.abs(refractive_index(model, lam + delta, 25.0) - refractive_index(model, lam, 25.0))
        assert np.all(step <= INDEX_SLOPE_BOUND * delta)


def test_expansion_is_increasing(dispersion):
    expansion = dispersion.expansion
    assert expansion_factor(expansion, 300.0) > expansion_factor(expansion, 249.0)
    factors = [expansion_factor(expansion, t) for t in np.linspace(0.0, 350.0, 71)]
    assert np.all(np.diff(factors) > 0)


def test_expansion_model_rejects_decreasing_coefficients():
    with pytest.raises(ValueError, match="not increasing"):
        ExpansionModel(alpha1=-1e-6)
    with pytest.raises(ValueError, match="not increasing"):
        # slope turns negative below about 100 C
        ExpansionModel(alpha1=1e-6, alpha2=1e-8, reference_temperature_c=150.0)


def test_sellmeier_model_rejects_unphysical_index():
    with pytest.raises(ValueError, match="1 < n < 3"):
        SellmeierModel(
            name="dense", axis=Axis.Z, form="fan-sellmeier",
            coefficients=[9.5, 0.05694, 0.05658, 0.01682],
            valid_wavelength_range=(0.4e-6, 1.6e-6),
        )
    with pytest.raises(ValueError, match="1 < n < 3"):
        # n^2 drops below zero at the long end
        SellmeierModel(
            name="steep", axis=Axis.Y, form="fan-sellmeier",
            coefficients=[3.0333, 0.04154, 0.04547, 2.0],
            valid_wavelength_range=(0.4e-6, 1.6e-6),
        )


def test_library_warns_only_for_uncited_coefficient_sets(tmp_path, caplog):
    library = load_coefficient_library()
    with caplog.at_level(logging.WARNING, logger="qpmkit.dispersion.library"):
        library.dispersion("ktp-default")
    assert caplog.records == []

    data = yaml.safe_load(Path(settings.COEFF_FILE).read_text())
    del data["expansion_sets"]["ktp-expansion-emanueli2003"]["source"]
    path = tmp_path / "uncited.yaml"
    path.write_text(yaml.safe_dump(data))
    with caplog.at_level(logging.WARNING, logger="qpmkit.dispersion.library"):
        load_coefficient_library(str(path)).dispersion("ktp-default")
    assert "expansion set 'ktp-expansion-emanueli2003' carries no source citation" in caplog.text
    assert "profile" not in caplog.text


def test_library_malformed_yaml(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("index_sets: [unclosed\n")
    with pytest.raises(ConfigurationError, match="not valid YAML"):
        load_coefficient_library(str(path))
