"""
m-resolved frequency integrals shared by every observable at fixed gap.

    I_m(H) = ∫_0^∞ dζ  ζ²·K(2πm/λ; ζ, H) · C_m^(d)(iζ)·C_m^(u)(iζ)

with K the gap kernel E (pressure series) or its gap integral (energy series).
A HarmonicSeries is built once per (profiles, H) and is immutable afterwards,
so any number of displacement points, on any number of threads, reuse it.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.kernels.gap_kernel import KernelArgs, scaled_kernel
from src.materials.dielectric import PHYSICAL_CONSTANTS
from src.quadrature.gauss_kronrod import integrate_semi_infinite
from src.quadrature.series import sum_primed_series
from src.quadrature.settings import DEFAULT_SETTINGS, IntegralEstimate, QuadratureSettings
from src.spectral.lamellar import LamellarProfile, coupling_coefficient
from src.spectral.trig import cos_pi, sin_pi
from src.utils.exceptions import DomainError

logger = logging.getLogger(__name__)

_ZERO = IntegralEstimate(0.0, 0.0, 0)


def _vanishes(profile: LamellarProfile, m: int) -> bool:
    return m > 0 and (profile.is_uniform or sin_pi(m * profile.fill_fraction) == 0.0)


def frequency_scale(gap: float) -> float:
    """Decay scale c/(2H) of the ζ integrand."""
    return PHYSICAL_CONSTANTS.c / (2.0 * gap)


def harmonic_integral(
    lower: LamellarProfile,
    upper: LamellarProfile,
    m: int,
    gap: float,
    settings: Optional[QuadratureSettings] = None,
    gap_integrated: bool = False,
) -> IntegralEstimate:
    """
    The ζ integral I_m for one harmonic.

    Args:
        lower: Profile of the lower body
        upper: Profile of the upper body (same wavelength)
        m: Harmonic index
        gap: Separation H in metres
        settings: Outer tolerances; kernels are solved to a tenth of rel_tol
        gap_integrated: Use ∫_H^∞ E dH′ instead of E

    Returns:
        IntegralEstimate whose evaluation count includes the inner kernel quadratures
    """
    settings = settings or DEFAULT_SETTINGS
    if not (gap > 0.0 and math.isfinite(gap)):
        raise DomainError(f"gap H must be positive, got {gap}")
    if _vanishes(lower, m) or _vanishes(upper, m):
        # still validates the wavelength pairing
        coupling_coefficient(lower, upper, m, 1.0)
        return _ZERO

    inner = settings.tightened()
    Q = 2.0 * math.pi * m / lower.wavelength
    kernel_evaluations = 0

    def integrand(zeta: np.ndarray) -> np.ndarray:
        nonlocal kernel_evaluations
        coupling = coupling_coefficient(lower, upper, m, zeta)
        kernel = np.empty_like(zeta)
        for i, z in enumerate(zeta):
            estimate = scaled_kernel(KernelArgs(Q=Q, zeta=float(z), H=gap), inner, gap_integrated)
            kernel[i] = estimate.value
            kernel_evaluations += estimate.evaluations
        return kernel * coupling

    outer = integrate_semi_infinite(integrand, 0.0, frequency_scale(gap), settings)
    logger.debug(
        f"I_{m}(H={gap:.3e}) = {outer.value:.6e} ± {outer.error_estimate:.1e} "
        f"({outer.evaluations} ζ nodes, {kernel_evaluations} kernel nodes)"
    )
    return IntegralEstimate(outer.value, outer.error_estimate, outer.evaluations + kernel_evaluations)


@dataclass(frozen=True)
class HarmonicSeries:
    wavelength: float
    gap: float
    gap_integrated: bool
    terms: tuple[IntegralEstimate, ...]

    @property
    def harmonics_used(self) -> int:
        return len(self.terms)

    @property
    def evaluations(self) -> int:
        return sum(t.evaluations for t in self.terms)

    @property
    def tail_bound(self) -> float:
        """Magnitude of the last harmonic kept, a bound on the first one dropped."""
        return abs(self.terms[-1].value) if len(self.terms) > 1 else 0.0

    def weighted_sum(self, weights: list[float]) -> IntegralEstimate:
        """½·w_0·I_0 + Σ_{m>=1} w_m·I_m over every cached harmonic."""
        parts = [w * t.value for w, t in zip(weights, self.terms)]
        parts[0] *= 0.5
        error = math.fsum(abs(w) * t.error_estimate for w, t in zip(weights, self.terms))
        error -= 0.5 * abs(weights[0]) * self.terms[0].error_estimate
        error += max(abs(w) for w in weights[-2:]) * self.tail_bound
        return IntegralEstimate(math.fsum(parts), error, self.evaluations, len(self.terms) - 1)

    def cosine_sum(self, a: float) -> IntegralEstimate:
        """Σ′_m cos(2πma)·I_m, with a already reduced."""
        return self.weighted_sum([cos_pi(2.0 * m * a) for m in range(len(self.terms))])

    def sine_moment(self, a: float) -> IntegralEstimate:
        """Σ_{m>=1} 2πm·sin(2πma)·I_m, the a-derivative of −cosine_sum."""
        return self.weighted_sum([2.0 * math.pi * m * sin_pi(2.0 * m * a) for m in range(len(self.terms))])

    def mean(self) -> IntegralEstimate:
        """½·I_0, the laterally averaged part."""
        return self.weighted_sum([1.0] + [0.0] * (len(self.terms) - 1))


def build_harmonic_series(
    profile: LamellarProfile,
    gap: float,
    settings: Optional[QuadratureSettings] = None,
    gap_integrated: bool = False,
    upper: Optional[LamellarProfile] = None,
) -> HarmonicSeries:
    """
    Compute I_0, I_1, ... until the aligned (a = 0) series has converged.

    Every |cos(2πma)| <= 1, so truncating where the a = 0 series converges
    bounds the neglected tail at every displacement. Harmonics that vanish
    identically (sin(mπf) = 0) are stored as exact zeros and skipped by the
    tail criterion.
    """
    settings = settings or DEFAULT_SETTINGS
    upper = upper or profile

    if profile.is_uniform or upper.is_uniform:
        coupling_coefficient(profile, upper, 0, 1.0)
        terms = [harmonic_integral(profile, upper, 0, gap, settings, gap_integrated)]
        return HarmonicSeries(profile.wavelength, gap, gap_integrated, tuple(terms))

    terms: list[IntegralEstimate] = []

    def term(m: int) -> IntegralEstimate:
        estimate = harmonic_integral(profile, upper, m, gap, settings, gap_integrated)
        terms.append(estimate)
        return estimate

    def vanishes(m: int) -> bool:
        return _vanishes(profile, m) or _vanishes(upper, m)

    total = sum_primed_series(term, settings, vanishes)
    logger.debug(
        f"{'gap-integrated' if gap_integrated else 'pressure'} series at H={gap:.3e}: "
        f"{len(terms)} harmonics, aligned sum {total.value:.6e}"
    )
    return HarmonicSeries(profile.wavelength, gap, gap_integrated, tuple(terms))
