"""
Gap kernel E(Q) coupling equal-wavevector harmonics of two half-spaces.

    E(Q) = ∫_1^∞ dp (2p⁴ − 2p² + 1) / w³ · exp(−(ζH/c)·w),   w = √(4p² + ρ²),  ρ = cQ/ζ

is evaluated in the variable δ = w − w₀ ≥ 0 with w₀ = √(4 + ρ²), so that
p² = 1 + δ(2w₀ + δ)/4 involves no cancellation even when ρ is huge, and the
factor exp(−(ζH/c)·w₀) is pulled out of the quadrature. In that variable

    E = e^{−u w₀} ∫_0^∞ dδ g(p) / (4 p w²) · e^{−u δ},   u = ζH/c,

and the gap-integrated companion ∫_H^∞ E dH′ carries one more power of 1/w
and the prefactor c/ζ.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.materials.dielectric import PHYSICAL_CONSTANTS
from src.quadrature.gauss_kronrod import integrate_semi_infinite
from src.quadrature.settings import DEFAULT_SETTINGS, IntegralEstimate, QuadratureSettings
from src.utils.exceptions import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelArgs:
    Q: float
    zeta: float
    H: float

    def __post_init__(self):
        if not (math.isfinite(self.Q) and self.Q >= 0.0):
            raise DomainError(f"wavevector Q must be finite and >= 0, got {self.Q}")
        if not (math.isfinite(self.zeta) and self.zeta > 0.0):
            raise DomainError(f"kernel requires zeta > 0, got {self.zeta}")
        if not (math.isfinite(self.H) and self.H > 0.0):
            raise DomainError(f"gap H must be positive, got {self.H}")

    @property
    def rho(self) -> float:
        return PHYSICAL_CONSTANTS.c * self.Q / self.zeta

    @property
    def u(self) -> float:
        return self.zeta * self.H / PHYSICAL_CONSTANTS.c


def _reduced_integral(args: KernelArgs, power: int, settings: QuadratureSettings) -> tuple[IntegralEstimate, float]:
    """∫_0^∞ dδ g(p)/(4p·w^power)·e^{−uδ}, together with the factored-out exponent u·w₀."""
    rho = args.rho
    u = args.u
    w0 = math.sqrt(4.0 + rho * rho)

    def integrand(delta: np.ndarray) -> np.ndarray:
        p2 = 1.0 + 0.25 * delta * (2.0 * w0 + delta)
        w = w0 + delta
        g = 2.0 * p2 * p2 - 2.0 * p2 + 1.0
        return g / (4.0 * np.sqrt(p2) * w**power) * np.exp(-u * delta)

    estimate = integrate_semi_infinite(integrand, 0.0, 1.0 / u, settings)
    return estimate, u * w0


def scaled_kernel(
    args: KernelArgs,
    settings: Optional[QuadratureSettings] = None,
    gap_integrated: bool = False,
) -> IntegralEstimate:
    """
    ζ²·E(Q), or ζ²·∫_H^∞ E dH′ when gap_integrated is set.

    This is the form integrated over ζ: it stays finite as ζ → 0 where E
    itself grows like ζ⁻².
    """
    settings = settings or DEFAULT_SETTINGS
    power = 3 if gap_integrated else 2
    reduced, exponent = _reduced_integral(args, power, settings)
    prefactor = args.zeta**2 * math.exp(-exponent)
    if gap_integrated:
        prefactor *= PHYSICAL_CONSTANTS.c / args.zeta
    return reduced.scaled(prefactor)


def kernel_E(args: KernelArgs, settings: Optional[QuadratureSettings] = None) -> float:
    """Gap kernel E(Q; ζ, H), dimensionless."""
    settings = settings or DEFAULT_SETTINGS
    reduced, exponent = _reduced_integral(args, 2, settings)
    return reduced.value * math.exp(-exponent)


def kernel_E_gap_integrated(args: KernelArgs, settings: Optional[QuadratureSettings] = None) -> float:
    """∫_H^∞ dH′ E(Q; ζ, H′) in metres, with the H′ integral done analytically."""
    settings = settings or DEFAULT_SETTINGS
    reduced, exponent = _reduced_integral(args, 3, settings)
    return PHYSICAL_CONSTANTS.c / args.zeta * reduced.value * math.exp(-exponent)
