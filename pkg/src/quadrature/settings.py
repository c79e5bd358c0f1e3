from dataclasses import dataclass
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class QuadratureSettings(BaseModel):
    """Convergence contract shared by every integral and harmonic series."""

    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default=1e-8, gt=0.0, allow_inf_nan=False)
    abs_tol: float = Field(default=1e-300, gt=0.0, allow_inf_nan=False)
    max_subdivisions: int = Field(default=60, ge=0)
    m_max: int = Field(default=512, ge=1)
    series_tail_tol: float = Field(default=1e-10, gt=0.0, allow_inf_nan=False)

    def tightened(self, factor: float = 0.1) -> "QuadratureSettings":
        """Copy with a tighter relative tolerance, used for nested inner integrals."""
        return self.model_copy(update={"rel_tol": self.rel_tol * factor})


DEFAULT_SETTINGS = QuadratureSettings()


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    error_estimate: float
    evaluations: int
    truncation_index: Optional[int] = None

    def scaled(self, factor: float) -> "IntegralEstimate":
        return IntegralEstimate(
            value=self.value * factor,
            error_estimate=self.error_estimate * abs(factor),
            evaluations=self.evaluations,
            truncation_index=self.truncation_index,
        )
