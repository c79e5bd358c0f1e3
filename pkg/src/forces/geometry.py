import logging
import math
from dataclasses import dataclass
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from src.utils.exceptions import DomainError

logger = logging.getLogger(__name__)

# Derjaguin approximation is trusted for R >= DERJAGUIN_MIN_RATIO·H
DERJAGUIN_MIN_RATIO = 10.0


class Geometry(BaseModel):
    """Gap H (m), lateral displacement a (units of λ) and optional sphere radius R (m)."""

    model_config = ConfigDict(frozen=True)

    H: float = Field(gt=0.0, allow_inf_nan=False)
    a: float = Field(default=0.0, allow_inf_nan=False)
    R: Optional[float] = Field(default=None, gt=0.0, allow_inf_nan=False)

    @property
    def reduced_a(self) -> float:
        return reduce_displacement(self.a)

    def require_radius(self) -> float:
        if self.R is None:
            raise DomainError("plate-sphere observables need a sphere radius R")
        if self.R < DERJAGUIN_MIN_RATIO * self.H:
            logger.warning(
                f"Derjaguin approximation outside its validity regime: R={self.R:.3e} m "
                f"is less than {DERJAGUIN_MIN_RATIO:g}×H={self.H:.3e} m"
            )
        return self.R


def reduce_displacement(a: float) -> float:
    """Map a onto [−½, ½]; round-half-even keeps the map odd, so −a maps to minus the image of a."""
    if not math.isfinite(a):
        raise DomainError(f"displacement must be finite, got {a}")
    return a - round(a)


@dataclass(frozen=True)
class ForceResult:
    """A physical observable with its numerical error and bookkeeping."""

    value: float
    error_estimate: float
    harmonics_used: int
    evaluations: int
