"""
Adaptive 7/15-point Gauss-Kronrod integration over [a, ∞).

The half line is split into an open head panel [a, a + 1e-6·s], one panel per
decade of (x − a)/s in the logarithmic variable v = ln((x − a)/s) up to 1e4·s,
and a tail panel mapped onto [0, 1) by x = x_T + s·t/(1 − t), where s is the
decay scale of the integrand. Kronrod nodes never touch a panel end, so the
integrand is never evaluated at a or at infinity. The panel with the largest
error estimate is bisected until the global criterion holds.
"""

import heapq
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from src.quadrature.settings import DEFAULT_SETTINGS, IntegralEstimate, QuadratureSettings
from src.utils.exceptions import ConvergenceFailure, DomainError

logger = logging.getLogger(__name__)

# Kronrod abscissae of the 15-point rule; odd positions are the 7 Gauss points
_XGK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

# Full 15-node layout on [-1, 1]
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1:7:2] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[9:15:2] = _WG[2::-1]

_EPMACH = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny

HEAD_FRACTION = 1e-6
TAIL_FRACTION = 1e4

HEAD, LOG, TAIL = "head", "log", "tail"


@dataclass
class Panel:
    kind: str
    lo: float
    hi: float
    value: float = 0.0
    error: float = 0.0


def _map_nodes(kind: str, u: np.ndarray, a: float, scale: float):
    """Map panel-variable nodes u to abscissae x and Jacobians dx/du."""
    if kind == HEAD:
        return u, np.ones_like(u)
    if kind == LOG:
        ev = np.exp(u)
        return a + scale * ev, scale * ev
    # tail: x = x_T + s·t/(1 − t), t in (0, 1)
    x_tail = a + TAIL_FRACTION * scale
    one_minus = 1.0 - u
    return x_tail + scale * u / one_minus, scale / one_minus**2


def evaluate_panels(f: Callable, panels: list[Panel], a: float, scale: float) -> int:
    """
    Apply the Gauss-Kronrod pair to every panel with a single call to f.

    Args:
        f: Vectorised integrand, ndarray -> ndarray
        panels: Panels to evaluate in place (value and error are filled in)
        a: Lower limit of the half line
        scale: Decay scale of the integrand

    Returns:
        Number of integrand evaluations spent
    """
    lo = np.array([p.lo for p in panels])
    hi = np.array([p.hi for p in panels])
    centre = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    u = centre[:, None] + half[:, None] * NODES[None, :]

    x = np.empty_like(u)
    jac = np.empty_like(u)
    for i, panel in enumerate(panels):
        x[i], jac[i] = _map_nodes(panel.kind, u[i], a, scale)

    with np.errstate(over="ignore", under="ignore"):
        fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
        fv = fx * jac
    if not np.all(np.isfinite(fv)):
        bad = x[~np.isfinite(fv)]
        raise DomainError(f"integrand is not finite at x = {bad[:3]}")

    resk = fv @ KRONROD_WEIGHTS
    resg = fv @ GAUSS_WEIGHTS
    resabs = np.abs(fv) @ KRONROD_WEIGHTS
    resasc = np.abs(fv - 0.5 * resk[:, None]) @ KRONROD_WEIGHTS

    ahalf = np.abs(half)
    result = resk * half
    resabs = resabs * ahalf
    resasc = resasc * ahalf
    abserr = np.abs((resk - resg) * half)

    # QUADPACK error scaling and round-off floor
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * abserr / resasc) ** 1.5)
    abserr = np.where((resasc != 0.0) & (abserr != 0.0), scaled, abserr)
    floor = 50.0 * _EPMACH * resabs
    abserr = np.where(resabs > _UFLOW / (50.0 * _EPMACH), np.maximum(floor, abserr), abserr)

    for panel, value, error in zip(panels, result, abserr):
        panel.value = float(value)
        panel.error = float(error)
    return x.size


def initial_panels(a: float, scale: float) -> list[Panel]:
    v_lo = math.log(HEAD_FRACTION)
    decades = int(round(math.log10(TAIL_FRACTION / HEAD_FRACTION)))
    step = (math.log(TAIL_FRACTION) - v_lo) / decades
    panels = [Panel(HEAD, a, a + HEAD_FRACTION * scale)]
    panels += [Panel(LOG, v_lo + k * step, v_lo + (k + 1) * step) for k in range(decades)]
    panels.append(Panel(TAIL, 0.0, 1.0))
    return panels


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    decay_scale: float,
    settings: Optional[QuadratureSettings] = None,
) -> IntegralEstimate:
    """
    Integrate f over [a, ∞) for an integrand decaying at least like exp(−(x − a)/decay_scale).

    Args:
        f: Vectorised integrand, finite on (a, ∞)
        a: Lower limit
        decay_scale: Positive length over which f decays
        settings: Tolerances and subdivision budget

    Returns:
        IntegralEstimate with the value, its error estimate and the evaluation count

    Raises:
        ConvergenceFailure: max_subdivisions bisections did not meet the tolerance
    """
    settings = settings or DEFAULT_SETTINGS
    if not (decay_scale > 0.0 and math.isfinite(decay_scale)):
        raise DomainError(f"decay scale must be positive and finite, got {decay_scale}")
    if not math.isfinite(a):
        raise DomainError(f"lower limit must be finite, got {a}")

    panels = initial_panels(a, decay_scale)
    evaluations = evaluate_panels(f, panels, a, decay_scale)

    # max-heap on error; the sequence number keeps pops deterministic on ties
    heap = [(-p.error, i, p) for i, p in enumerate(panels)]
    heapq.heapify(heap)
    counter = len(panels)
    subdivisions = 0

    while True:
        total = math.fsum(p.value for _, _, p in heap)
        error = math.fsum(p.error for _, _, p in heap)
        if error <= max(settings.rel_tol * abs(total), settings.abs_tol):
            return IntegralEstimate(total, error, evaluations)
        if subdivisions >= settings.max_subdivisions:
            raise ConvergenceFailure(
                f"adaptive quadrature did not converge after {subdivisions} subdivisions "
                f"(value {total:.6e}, error {error:.3e})",
                partial_value=total,
                error_estimate=error,
                evaluations=evaluations,
            )

        _, _, worst = heapq.heappop(heap)
        mid = 0.5 * (worst.lo + worst.hi)
        halves = [Panel(worst.kind, worst.lo, mid), Panel(worst.kind, mid, worst.hi)]
        evaluations += evaluate_panels(f, halves, a, decay_scale)
        for half in halves:
            heapq.heappush(heap, (-half.error, counter, half))
            counter += 1
        subdivisions += 1
