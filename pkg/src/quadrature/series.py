import logging
import math
from typing import Callable, Optional, Union

from src.quadrature.settings import DEFAULT_SETTINGS, IntegralEstimate, QuadratureSettings
from src.utils.exceptions import ConvergenceFailure

logger = logging.getLogger(__name__)

Term = Union[float, IntegralEstimate]


def _unpack(term: Term) -> tuple[float, float, int]:
    if isinstance(term, IntegralEstimate):
        return term.value, term.error_estimate, term.evaluations
    return float(term), 0.0, 1


def sum_primed_series(
    term: Callable[[int], Term],
    settings: Optional[QuadratureSettings] = None,
    vanishes: Optional[Callable[[int], bool]] = None,
) -> IntegralEstimate:
    """
    Sum ½·term(0) + Σ_{m>=1} term(m) for a geometrically decaying series.

    The sum stops at the first m for which |term(m)| <= series_tail_tol·|partial sum|
    held for two consecutive indices; single accidental zeros (e.g. cos(2πma) at
    special a) therefore never truncate the series.

    Args:
        term: Function of the harmonic index; may return a float or an IntegralEstimate
            whose error estimate is accumulated
        settings: Provides series_tail_tol and m_max
        vanishes: Optional predicate for indices known to be identically zero; they
            neither count towards nor interrupt the tail criterion

    Returns:
        IntegralEstimate whose truncation_index is the last m evaluated

    Raises:
        ConvergenceFailure: m_max reached before the tail criterion held
    """
    settings = settings or DEFAULT_SETTINGS
    value, error, evaluations = _unpack(term(0))
    parts = [0.5 * value]
    error *= 0.5
    quiet = 0
    last = 0.0

    for m in range(1, settings.m_max + 1):
        value_m, error_m, evals_m = _unpack(term(m))
        parts.append(value_m)
        error += error_m
        evaluations += evals_m
        partial = math.fsum(parts)
        if vanishes is not None and vanishes(m):
            continue
        last = abs(value_m)
        if last <= settings.series_tail_tol * abs(partial):
            quiet += 1
        else:
            quiet = 0
        if quiet >= 2:
            # the first neglected term is bounded by the last one kept
            return IntegralEstimate(partial, error + last, evaluations, truncation_index=m)

    partial = math.fsum(parts)
    raise ConvergenceFailure(
        f"harmonic series not converged at m_max={settings.m_max} "
        f"(partial sum {partial:.6e}, last term {last:.3e})",
        partial_value=partial,
        error_estimate=error + last,
        evaluations=evaluations,
        truncation_index=settings.m_max,
    )
