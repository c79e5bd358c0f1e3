"""
Fourier representation of the contrast ratio of a lamellar heterostructure.

The unit cell holds a high-ε stripe of width f·λ centred at x = 0 and a
low-ε stripe filling the rest, so the profile is even and every coefficient
is real with C_{-m} = C_m.
"""

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.materials.dielectric import DielectricModel, cm_ratio
from src.spectral.trig import cos_pi, sin_pi
from src.utils.exceptions import DomainError

logger = logging.getLogger(__name__)


class LamellarProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    high: DielectricModel
    low: DielectricModel
    fill_fraction: float = Field(ge=0.0, le=1.0, allow_inf_nan=False)
    wavelength: float = Field(gt=0.0, allow_inf_nan=False)

    @property
    def is_uniform(self) -> bool:
        return self.high == self.low or self.fill_fraction in (0.0, 1.0)


def _check_profile(profile: LamellarProfile) -> None:
    # model_construct() bypasses validation, so the invariants are re-checked here
    f = profile.fill_fraction
    if not (0.0 <= f <= 1.0):
        raise DomainError(f"fill fraction must lie in [0, 1], got {f}")
    if not (profile.wavelength > 0.0 and math.isfinite(profile.wavelength)):
        raise DomainError(f"wavelength must be positive, got {profile.wavelength}")


def _check_harmonic(m: int) -> None:
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise DomainError(f"harmonic index must be a non-negative integer, got {m}")


def fourier_coeff(profile: LamellarProfile, m: int, zeta):
    """
    Fourier coefficient C_m(iζ) of the contrast ratio profile.

    Args:
        profile: Lamellar heterostructure
        m: Harmonic index, m >= 0
        zeta: Imaginary frequency in rad/s, scalar or array

    Returns:
        C_0 = f·r_h + (1−f)·r_l, or C_m = sin(mπf)/(mπ)·(r_h − r_l) for m >= 1
    """
    _check_profile(profile)
    _check_harmonic(m)

    r_high = cm_ratio(profile.high, zeta)
    r_low = cm_ratio(profile.low, zeta)
    f = profile.fill_fraction
    if m == 0:
        return f * r_high + (1.0 - f) * r_low
    return sin_pi(m * f) / (m * math.pi) * (r_high - r_low)


def coupling_coefficient(lower: LamellarProfile, upper: LamellarProfile, m: int, zeta):
    """Product C_m^(d)·C_m^(u) coupling harmonic m of the two bodies across the gap."""
    if not math.isclose(lower.wavelength, upper.wavelength, rel_tol=1e-12, abs_tol=0.0):
        raise DomainError(
            f"profiles must share one wavelength, got {lower.wavelength} and {upper.wavelength}"
        )
    c_lower = fourier_coeff(lower, m, zeta)
    if upper == lower:
        return c_lower * c_lower
    return c_lower * fourier_coeff(upper, m, zeta)


def ratio_profile(profile: LamellarProfile, x, zeta: float):
    """Exact step profile of the contrast ratio at lateral position(s) x (metres)."""
    _check_profile(profile)
    lam = profile.wavelength
    x = np.asarray(x, dtype=float)
    # fold into one cell centred on the high stripe
    xr = x - lam * np.round(x / lam)
    inside_high = np.abs(xr) < 0.5 * profile.fill_fraction * lam
    out = np.where(inside_high, cm_ratio(profile.high, zeta), cm_ratio(profile.low, zeta))
    return float(out) if np.ndim(out) == 0 else out


def partial_fourier_sum(profile: LamellarProfile, x: float, zeta: float, m_max: int) -> float:
    """Σ_{|m|<=m_max} C_m·exp(i2πmx/λ), the truncated reconstruction of ratio_profile."""
    _check_profile(profile)
    m = np.arange(1, m_max + 1)
    delta = cm_ratio(profile.high, zeta) - cm_ratio(profile.low, zeta)
    coeffs = sin_pi(m * profile.fill_fraction) / (m * math.pi) * delta
    phases = cos_pi(2.0 * m * x / profile.wavelength)
    return float(fourier_coeff(profile, 0, zeta) + 2.0 * np.sum(coeffs * phases))
