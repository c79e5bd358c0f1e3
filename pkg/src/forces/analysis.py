"""Summary metrics of force curves sampled over one period of the displacement."""

import math

import numpy as np

from src.utils.exceptions import DomainError


def _curve(values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise DomainError("a curve needs at least two samples")
    if not np.all(np.isfinite(values)):
        raise DomainError("curve contains non-finite samples")
    return values


def _reference(reference: float) -> float:
    if not (math.isfinite(reference) and reference != 0.0):
        raise DomainError(f"reference force must be finite and non-zero, got {reference}")
    return abs(reference)


def peak_to_peak_modulation(values, reference: float) -> float:
    """(max − min) of the curve relative to |reference|."""
    values = _curve(values)
    return float((values.max() - values.min()) / _reference(reference))


def max_deviation_modulation(values, reference: float) -> float:
    """Largest |value − reference| relative to |reference|."""
    values = _curve(values)
    return float(np.max(np.abs(values - reference)) / _reference(reference))


def lateral_amplitude(values) -> float:
    return float(np.max(np.abs(_curve(values))))


def single_harmonic_residual(a, values) -> float:
    """
    Misfit of the best c0 + c1·cos(2πa) + s1·sin(2πa) to a sampled curve.

    Args:
        a: Displacements in units of λ
        values: Observable at each displacement

    Returns:
        max |misfit| divided by the fitted amplitude √(c1² + s1²); 0 for a
        constant curve
    """
    values = _curve(values)
    a = np.asarray(a, dtype=float)
    if a.shape != values.shape:
        raise DomainError(f"displacements {a.shape} and values {values.shape} differ in shape")
    phase = 2.0 * np.pi * a
    design = np.column_stack([np.ones_like(a), np.cos(phase), np.sin(phase)])
    coeffs, *_ = np.linalg.lstsq(design, values, rcond=None)
    misfit = float(np.max(np.abs(values - design @ coeffs)))
    amplitude = math.hypot(coeffs[1], coeffs[2])
    # below this everything is round-off of the constant part
    noise = 1e-12 * float(np.max(np.abs(values)))
    if amplitude <= noise:
        return 0.0 if misfit <= noise else math.inf
    return misfit / amplitude
