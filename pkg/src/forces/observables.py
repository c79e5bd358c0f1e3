"""
Physical observables assembled from the harmonic series.

    E_pp/A    = −K · Σ′_m cos(2πma) · I_m
    F_nor     = 2πR · E_pp/A                                  (Derjaguin)
    E_ps      = ∫_H^∞ F_nor dH′ = −2πR·K · Σ′_m cos(2πma) · Ĩ_m
    F_lat     = −(1/λ)·∂E_ps/∂a = −(2πR/λ)·K · Σ_{m≥1} 2πm·sin(2πma) · Ĩ_m

with K = ħ/(2π²c²), I_m the pressure-kernel integrals and Ĩ_m their
gap-integrated counterparts. Positive F_lat pushes the upper body towards +x.
"""

import logging
import math
from functools import cached_property
from typing import Optional

from src.forces.geometry import ForceResult, Geometry, reduce_displacement
from src.forces.harmonics import HarmonicSeries, build_harmonic_series, harmonic_integral
from src.materials.dielectric import PHYSICAL_CONSTANTS
from src.quadrature.settings import DEFAULT_SETTINGS, IntegralEstimate, QuadratureSettings
from src.spectral.lamellar import LamellarProfile

logger = logging.getLogger(__name__)

PREFACTOR = PHYSICAL_CONSTANTS.hbar / (2.0 * math.pi**2 * PHYSICAL_CONSTANTS.c**2)


def _result(estimate: IntegralEstimate, factor: float, series: HarmonicSeries) -> ForceResult:
    scaled = estimate.scaled(factor)
    return ForceResult(
        value=scaled.value,
        error_estimate=scaled.error_estimate,
        harmonics_used=series.harmonics_used,
        evaluations=series.evaluations,
    )


class PlateSphereCalculator:
    """
    Every observable of one (profile, H, R) configuration, at any displacement.

    The two harmonic series are built once, on first use, and are immutable
    afterwards; call prepare() before sharing the calculator between threads.

    Args:
        profile: Lower body (and upper body unless `upper` is given)
        H: Gap in metres
        R: Sphere radius in metres; only plate-plate energy works without it
        settings: Quadrature and series tolerances
        upper: Profile of the upper body, same wavelength as `profile`
    """

    def __init__(
        self,
        profile: LamellarProfile,
        H: float,
        R: Optional[float] = None,
        settings: Optional[QuadratureSettings] = None,
        upper: Optional[LamellarProfile] = None,
    ):
        self.geometry = Geometry(H=H, R=R)
        self.profile = profile
        self.upper = upper or profile
        self.settings = settings or DEFAULT_SETTINGS
        if R is not None:
            self.geometry.require_radius()

    @property
    def wavelength(self) -> float:
        return self.profile.wavelength

    @cached_property
    def pressure_series(self) -> HarmonicSeries:
        return build_harmonic_series(self.profile, self.geometry.H, self.settings, False, self.upper)

    @cached_property
    def energy_series(self) -> HarmonicSeries:
        return build_harmonic_series(self.profile, self.geometry.H, self.settings, True, self.upper)

    def prepare(self, pressure: bool = True, gap_integrated: bool = True) -> "PlateSphereCalculator":
        if pressure:
            _ = self.pressure_series
        if gap_integrated:
            _ = self.energy_series
        return self

    def _sphere_factor(self) -> float:
        return 2.0 * math.pi * self.geometry.require_radius()

    def energy_pp_per_area(self, a: float) -> ForceResult:
        """Plate-plate energy per unit area in J/m²."""
        series = self.pressure_series
        return _result(series.cosine_sum(reduce_displacement(a)), -PREFACTOR, series)

    def normal_force(self, a: float) -> ForceResult:
        """Plate-sphere normal force in N; negative means attraction."""
        series = self.pressure_series
        return _result(series.cosine_sum(reduce_displacement(a)), -PREFACTOR * self._sphere_factor(), series)

    def normalization_force(self) -> ForceResult:
        """F⁰, the normal force keeping only the laterally averaged m = 0 term."""
        series = self.pressure_series
        return _result(series.mean(), -PREFACTOR * self._sphere_factor(), series)

    def energy(self, a: float) -> ForceResult:
        """Plate-sphere energy in J, vanishing as H → ∞."""
        series = self.energy_series
        return _result(series.cosine_sum(reduce_displacement(a)), -PREFACTOR * self._sphere_factor(), series)

    def lateral_force(self, a: float) -> ForceResult:
        """Lateral force in N from the analytic a-derivative of the energy."""
        series = self.energy_series
        factor = -PREFACTOR * self._sphere_factor() / self.wavelength
        return _result(series.sine_moment(reduce_displacement(a)), factor, series)


def energy_pp_per_area(
    profile: LamellarProfile,
    geom: Geometry,
    settings: Optional[QuadratureSettings] = None,
    upper: Optional[LamellarProfile] = None,
) -> ForceResult:
    return PlateSphereCalculator(profile, geom.H, None, settings, upper).energy_pp_per_area(geom.a)


def normal_force_ps(
    profile: LamellarProfile,
    geom: Geometry,
    settings: Optional[QuadratureSettings] = None,
    upper: Optional[LamellarProfile] = None,
) -> ForceResult:
    return PlateSphereCalculator(profile, geom.H, geom.R, settings, upper).normal_force(geom.a)


def normalization_force_ps0(
    profile: LamellarProfile,
    H: float,
    R: float,
    settings: Optional[QuadratureSettings] = None,
    upper: Optional[LamellarProfile] = None,
) -> ForceResult:
    """
    The m = 0 part of normal_force_ps, independent of the displacement.

    Only I_0 is computed; the result goes through the same arithmetic as the
    full normal force, so it agrees with it bit for bit on uniform bodies.
    """
    settings = settings or DEFAULT_SETTINGS
    geom = Geometry(H=H, R=R)
    upper = upper or profile
    radius = geom.require_radius()
    series = HarmonicSeries(
        wavelength=profile.wavelength,
        gap=H,
        gap_integrated=False,
        terms=(harmonic_integral(profile, upper, 0, H, settings, False),),
    )
    return _result(series.mean(), -PREFACTOR * (2.0 * math.pi * radius), series)


def lateral_force_ps(
    profile: LamellarProfile,
    geom: Geometry,
    settings: Optional[QuadratureSettings] = None,
    upper: Optional[LamellarProfile] = None,
) -> ForceResult:
    return PlateSphereCalculator(profile, geom.H, geom.R, settings, upper).lateral_force(geom.a)


def energy_ps(
    profile: LamellarProfile,
    geom: Geometry,
    settings: Optional[QuadratureSettings] = None,
    upper: Optional[LamellarProfile] = None,
) -> ForceResult:
    return PlateSphereCalculator(profile, geom.H, geom.R, settings, upper).energy(geom.a)
