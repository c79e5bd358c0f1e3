"""Trigonometric functions of π·x with exact zeros and unit values."""

import numpy as np


def _reduce(x) -> np.ndarray:
    # r = x - 2k in [-1, 1]; exact, and odd in x because np.round is half-even
    x = np.asarray(x, dtype=float)
    return x - 2.0 * np.round(0.5 * x)


def sin_pi(x):
    """sin(π·x), exactly 0 at integers and exactly ±1 at half-integers."""
    r = _reduce(x)
    out = np.sin(np.pi * r)
    out = np.where(np.abs(r) == 0.5, np.sign(r), out)
    out = np.where((r == 0.0) | (np.abs(r) == 1.0), 0.0, out)
    return float(out) if np.ndim(out) == 0 else out


def cos_pi(x):
    """cos(π·x), exactly ±1 at integers and exactly 0 at half-integers."""
    r = _reduce(x)
    out = np.cos(np.pi * r)
    out = np.where(np.abs(r) == 0.5, 0.0, out)
    out = np.where(r == 0.0, 1.0, out)
    out = np.where(np.abs(r) == 1.0, -1.0, out)
    return float(out) if np.ndim(out) == 0 else out
