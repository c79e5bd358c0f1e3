"""
Dielectric response of the supported materials on the imaginary frequency axis.

All models are real and monotone in ζ there. The Clausius-Mossotti ratio
3(ε−1)/(ε+2) is written in closed form for every variant so that the plasma
limit ζ → 0 (ε → ∞) is finite without special cases.
"""

import logging
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import constants

from src.utils.exceptions import DomainError

logger = logging.getLogger(__name__)


class PhysicalConstants(BaseModel):
    model_config = ConfigDict(frozen=True)

    hbar: float = constants.hbar
    c: float = constants.c


PHYSICAL_CONSTANTS = PhysicalConstants()


def _as_frequency(zeta):
    zeta_arr = np.asarray(zeta, dtype=float)
    if np.any(zeta_arr < 0) or not np.all(np.isfinite(zeta_arr)):
        raise DomainError(f"imaginary frequency must be finite and >= 0, got {zeta}")
    return zeta_arr


def _maybe_scalar(value: np.ndarray, like):
    return float(value) if np.ndim(like) == 0 else value


class Vacuum(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["vacuum"] = "vacuum"

    def permittivity(self, zeta: np.ndarray) -> np.ndarray:
        return np.ones_like(zeta)

    def contrast_ratio(self, zeta: np.ndarray) -> np.ndarray:
        return np.zeros_like(zeta)


class Constant(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["constant"] = "constant"
    epsilon: float = Field(ge=1.0, allow_inf_nan=False)

    def permittivity(self, zeta: np.ndarray) -> np.ndarray:
        return np.full_like(zeta, self.epsilon)

    def contrast_ratio(self, zeta: np.ndarray) -> np.ndarray:
        ratio = 3.0 * (self.epsilon - 1.0) / (self.epsilon + 2.0)
        return np.full_like(zeta, ratio)


class Plasma(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["plasma"] = "plasma"
    omega_p: float = Field(gt=0.0, allow_inf_nan=False)

    def permittivity(self, zeta: np.ndarray) -> np.ndarray:
        if np.any(zeta == 0):
            raise DomainError("plasma permittivity diverges at zeta = 0")
        return 1.0 + (self.omega_p / zeta) ** 2

    def contrast_ratio(self, zeta: np.ndarray) -> np.ndarray:
        wp2 = self.omega_p**2
        return 3.0 * wp2 / (wp2 + 3.0 * zeta**2)


class DrudeLorentz(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["drude_lorentz"] = "drude_lorentz"
    omega_p: float = Field(gt=0.0, allow_inf_nan=False)
    omega_0: float = Field(gt=0.0, allow_inf_nan=False)

    def permittivity(self, zeta: np.ndarray) -> np.ndarray:
        return 1.0 + self.omega_p**2 / (zeta**2 + self.omega_0**2)

    def contrast_ratio(self, zeta: np.ndarray) -> np.ndarray:
        wp2 = self.omega_p**2
        return 3.0 * wp2 / (wp2 + 3.0 * (zeta**2 + self.omega_0**2))


DielectricModel = Annotated[
    Union[Vacuum, Constant, Plasma, DrudeLorentz], Field(discriminator="kind")
]


def permittivity(model: DielectricModel, zeta):
    """
    Evaluate ε(iζ) for a material model.

    Args:
        model: Dielectric model variant
        zeta: Imaginary frequency in rad/s, scalar or array, >= 0 (> 0 for Plasma)

    Returns:
        Permittivity, float for scalar input and ndarray otherwise
    """
    zeta_arr = _as_frequency(zeta)
    return _maybe_scalar(model.permittivity(zeta_arr), zeta)


def cm_ratio(model: DielectricModel, zeta):
    """
    Clausius-Mossotti contrast ratio δε/(1 + δε/3) = 3(ε−1)/(ε+2), in [0, 3].

    Finite for every ζ >= 0, including the plasma model at ζ = 0 where it
    takes its limiting value 3.
    """
    zeta_arr = _as_frequency(zeta)
    return _maybe_scalar(model.contrast_ratio(zeta_arr), zeta)
