import logging
import math

import numpy as np
import pytest

from src.forces.geometry import Geometry, reduce_displacement
from src.forces.harmonics import build_harmonic_series, harmonic_integral
from src.forces.observables import (
    PREFACTOR,
    PlateSphereCalculator,
    energy_pp_per_area,
    energy_ps,
    lateral_force_ps,
    normal_force_ps,
    normalization_force_ps0,
)
from src.quadrature.settings import QuadratureSettings
from src.spectral.lamellar import LamellarProfile
from src.utils.exceptions import DomainError

H = 100e-9
R = 10e-6
GRID = np.arange(64) / 64


@pytest.fixture(scope="module")
def calculator(short_grating, fast_settings):
    return PlateSphereCalculator(short_grating, H, R, fast_settings).prepare()


@pytest.fixture(scope="module")
def asymmetric_calculator(asymmetric_grating, fast_settings):
    return PlateSphereCalculator(asymmetric_grating, H, R, fast_settings).prepare()


@pytest.fixture(scope="module")
def uniform_gold(gold, air):
    return LamellarProfile(high=gold, low=air, fill_fraction=1.0, wavelength=200e-9)


def test_reduce_displacement():
    assert reduce_displacement(0.25) == 0.25
    assert reduce_displacement(1.25) == 0.25
    assert reduce_displacement(-0.75) == 0.25
    assert reduce_displacement(0.5) == 0.5
    assert reduce_displacement(-0.5) == -0.5
    assert reduce_displacement(1.5) == -0.5
    for a in np.linspace(-3.0, 3.0, 121):
        assert reduce_displacement(-a) == -reduce_displacement(a)
        assert -0.5 <= reduce_displacement(a) <= 0.5
    with pytest.raises(DomainError):
        reduce_displacement(math.inf)


def test_geometry_validation():
    with pytest.raises(ValueError):
        Geometry(H=0.0)
    with pytest.raises(ValueError):
        Geometry(H=1e-7, R=-1.0)
    with pytest.raises(DomainError):
        Geometry(H=1e-7).require_radius()


def test_derjaguin_validity_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="src.forces.geometry"):
        Geometry(H=1e-7, R=5e-7).require_radius()
    assert "Derjaguin" in caplog.text
    caplog.clear()
    with caplog.at_level(logging.WARNING, logger="src.forces.geometry"):
        Geometry(H=1e-7, R=1e-6).require_radius()
    assert caplog.text == ""


def test_energy_per_area_is_attractive(calculator):
    for a in (0.0, 0.25, 0.5):
        assert calculator.energy_pp_per_area(a).value < 0.0
        assert calculator.normal_force(a).value < 0.0
        assert calculator.energy(a).value < 0.0


def test_normal_force_is_derjaguin_of_energy(calculator):
    for a in (0.0, 0.3):
        energy = calculator.energy_pp_per_area(a)
        force = calculator.normal_force(a)
        assert force.value == pytest.approx(2 * math.pi * R * energy.value, rel=1e-14)
        assert force.error_estimate == pytest.approx(2 * math.pi * R * energy.error_estimate, rel=1e-14)
        assert force.harmonics_used >= 1
        assert force.evaluations > 0


def test_periodicity(calculator):
    for a in (0.0, 0.137, 0.5, 0.81):
        for shift in (1.0, -2.0, 5.0):
            assert calculator.normal_force(a + shift).value == pytest.approx(calculator.normal_force(a).value, rel=1e-12)
            assert calculator.energy(a + shift).value == pytest.approx(calculator.energy(a).value, rel=1e-12)
            assert calculator.lateral_force(a + shift).value == pytest.approx(
                calculator.lateral_force(a).value, rel=1e-9, abs=1e-12 * abs(calculator.normalization_force().value)
            )


def test_parity(asymmetric_calculator):
    for a in (0.0, 0.1, 0.37, 0.5):
        assert asymmetric_calculator.normal_force(-a).value == asymmetric_calculator.normal_force(a).value
        assert asymmetric_calculator.energy(-a).value == asymmetric_calculator.energy(a).value
        assert asymmetric_calculator.lateral_force(-a).value == -asymmetric_calculator.lateral_force(a).value


def test_lateral_force_vanishes_at_symmetry_points(calculator, asymmetric_calculator):
    for calc in (calculator, asymmetric_calculator):
        assert calc.lateral_force(0.0).value == 0.0
        assert calc.lateral_force(0.5).value == 0.0
        assert calc.lateral_force(0.25).value != 0.0


def test_zero_net_lateral_work(asymmetric_calculator):
    results = [asymmetric_calculator.lateral_force(a) for a in GRID]
    # periodic trapezoid rule
    work = np.mean([r.value for r in results])
    assert abs(work) <= 2 * max(r.error_estimate for r in results)


def test_mean_normal_force_is_normalization_force(asymmetric_calculator):
    results = [asymmetric_calculator.normal_force(a) for a in GRID]
    F0 = asymmetric_calculator.normalization_force()
    mean = np.mean([r.value for r in results])
    assert abs(mean - F0.value) <= 2 * max(r.error_estimate for r in results) + 1e-12 * abs(F0.value)


def test_half_filling_antisymmetry(calculator):
    F0 = calculator.normalization_force().value
    for a in (0.0, 0.1, 0.3):
        upper = calculator.normal_force(a + 0.5).value - F0
        lower = calculator.normal_force(a).value - F0
        assert upper == pytest.approx(-lower, rel=1e-9, abs=1e-12 * abs(F0))


def test_aligned_stripes_attract_most(calculator):
    aligned = calculator.normal_force(0.0).value
    assert all(aligned <= calculator.normal_force(a).value for a in GRID)
    assert aligned < calculator.normal_force(0.5).value


def test_lateral_force_is_energy_derivative(asymmetric_calculator):
    step = 1e-4
    wavelength = asymmetric_calculator.wavelength
    for a in (0.137, 0.31, 0.62):
        derivative = (asymmetric_calculator.energy(a + step).value - asymmetric_calculator.energy(a - step).value) / (
            2 * step
        )
        assert asymmetric_calculator.lateral_force(a).value == pytest.approx(-derivative / wavelength, rel=1e-4)


def test_energy_is_gap_integral_of_normal_force(short_grating):
    settings = QuadratureSettings(rel_tol=1e-10, series_tail_tol=1e-10)
    dH = 0.1e-9
    gap = 200e-9
    a = 0.21
    energies = [PlateSphereCalculator(short_grating, h, R, settings).energy(a).value for h in (gap - dH, gap + dH)]
    force = PlateSphereCalculator(short_grating, gap, R, settings).normal_force(a).value
    assert -(energies[1] - energies[0]) / (2 * dH) == pytest.approx(force, rel=1e-4)


def test_uniform_body_null_tests(uniform_gold, gold, fast_settings):
    same = LamellarProfile(high=gold, low=gold, fill_fraction=0.4, wavelength=200e-9)
    for profile in (uniform_gold, same):
        calc = PlateSphereCalculator(profile, H, R, fast_settings)
        F0 = normalization_force_ps0(profile, H, R, fast_settings)
        assert calc.pressure_series.harmonics_used == 1
        for a in (0.0, 0.37, 0.5):
            assert calc.lateral_force(a).value == 0.0
            assert calc.normal_force(a).value == F0.value
        combined = calc.energy_pp_per_area(0.37).error_estimate + calc.energy_pp_per_area(0.0).error_estimate
        assert abs(calc.energy_pp_per_area(0.37).value - calc.energy_pp_per_area(0.0).value) <= 2 * combined


def test_module_functions_match_calculator(calculator, short_grating, fast_settings):
    geom = Geometry(H=H, a=0.3, R=R)
    assert normal_force_ps(short_grating, geom, fast_settings).value == calculator.normal_force(0.3).value
    assert energy_pp_per_area(short_grating, geom, fast_settings).value == calculator.energy_pp_per_area(0.3).value
    assert lateral_force_ps(short_grating, geom, fast_settings).value == calculator.lateral_force(0.3).value
    assert energy_ps(short_grating, geom, fast_settings).value == calculator.energy(0.3).value
    F0 = normalization_force_ps0(short_grating, H, R, fast_settings)
    assert F0.value == calculator.normalization_force().value
    assert F0.harmonics_used == 1


def test_sphere_observables_need_radius(short_grating, fast_settings):
    with pytest.raises(DomainError):
        normal_force_ps(short_grating, Geometry(H=H), fast_settings)


def test_normal_force_decays_with_gap(uniform_gold, fast_settings):
    forces = [abs(normalization_force_ps0(uniform_gold, h, R, fast_settings).value) for h in (50e-9, 100e-9, 200e-9, 400e-9)]
    assert all(b < a for a, b in zip(forces, forces[1:]))


def test_sphere_energy_vanishes_at_large_gap(uniform_gold, fast_settings):
    energies = [abs(PlateSphereCalculator(uniform_gold, h, 1e-3, fast_settings).energy(0.0).value) for h in (1e-7, 1e-5)]
    assert energies[1] < 1e-3 * energies[0]


def test_less_gold_means_weaker_average_force(gold, air, fast_settings):
    quarter = LamellarProfile(high=gold, low=air, fill_fraction=0.2, wavelength=1e-6)
    half = LamellarProfile(high=gold, low=air, fill_fraction=0.5, wavelength=1e-6)
    weak = normalization_force_ps0(quarter, H, 180e-6, fast_settings).value
    strong = normalization_force_ps0(half, H, 180e-6, fast_settings).value
    assert abs(weak) < abs(strong)


def test_harmonics_decay_geometrically(short_grating, fast_settings):
    series = build_harmonic_series(short_grating, H, fast_settings)
    bound = 1.5 * math.exp(-2 * math.pi * H / short_grating.wavelength)
    odd = [t.value for m, t in enumerate(series.terms) if m % 2 == 1]
    assert len(odd) >= 3
    for earlier, later in zip(odd[1:], odd[2:]):
        assert abs(later) < bound * abs(earlier)
    assert all(t.value == 0.0 for m, t in enumerate(series.terms) if m >= 2 and m % 2 == 0)


def test_normalization_uses_zeroth_harmonic_only(short_grating, fast_settings):
    I0 = harmonic_integral(short_grating, short_grating, 0, H, fast_settings)
    F0 = normalization_force_ps0(short_grating, H, R, fast_settings)
    assert F0.value == pytest.approx(-PREFACTOR * 2 * math.pi * R * 0.5 * I0.value, rel=1e-14)


def test_mixed_profiles_are_symmetric(short_grating, asymmetric_grating, fast_settings):
    one = PlateSphereCalculator(short_grating, H, R, fast_settings, upper=asymmetric_grating)
    other = PlateSphereCalculator(asymmetric_grating, H, R, fast_settings, upper=short_grating)
    for a in (0.0, 0.2):
        assert one.energy_pp_per_area(a).value == pytest.approx(other.energy_pp_per_area(a).value, rel=1e-12)


def test_mixed_profiles_need_common_wavelength(short_grating, gold, air, fast_settings):
    longer = LamellarProfile(high=gold, low=air, fill_fraction=0.5, wavelength=400e-9)
    with pytest.raises(DomainError):
        PlateSphereCalculator(short_grating, H, R, fast_settings, upper=longer).energy_pp_per_area(0.0)
