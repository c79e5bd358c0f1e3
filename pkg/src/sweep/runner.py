"""
Parameter sweep over (f, H, a).

Work is done in two phases on a thread pool: first one PlateSphereCalculator
per (f, H) builds its harmonic series, then every displacement of every block
is evaluated from those immutable series. Results are assembled in grid order,
so the table does not depend on the number of threads.
"""

import asyncio
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, TypeVar

from src.forces.analysis import (
    lateral_amplitude,
    max_deviation_modulation,
    peak_to_peak_modulation,
    single_harmonic_residual,
)
from src.forces.observables import PlateSphereCalculator
from src.sweep.spec import SweepSpec
from src.utils import config
from src.utils.env_utils import get_env_value
from src.utils.exceptions import ConvergenceFailure

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_FAILED = "convergence_failure"

T = TypeVar("T")


@dataclass(frozen=True)
class SweepRow:
    material_pair: str
    f: float
    lambda_m: float
    H_m: float
    a: float
    F_normal_N: Optional[float] = None
    F_normal_over_F0: Optional[float] = None
    F_lateral_N: Optional[float] = None
    err_normal_N: Optional[float] = None
    err_lateral_N: Optional[float] = None
    harmonics_used: Optional[int] = None
    status: str = STATUS_OK


@dataclass(frozen=True)
class BlockSummary:
    """Per-(f, H) figures of merit of the sampled curves."""

    material_pair: str
    f: float
    lambda_m: float
    H_m: float
    R_m: float
    F0_N: Optional[float] = None
    modulation_peak_to_peak: Optional[float] = None
    modulation_max_deviation: Optional[float] = None
    lateral_amplitude_N: Optional[float] = None
    normal_harmonic_residual: Optional[float] = None
    lateral_harmonic_residual: Optional[float] = None
    harmonics_used: Optional[int] = None
    status: str = STATUS_OK


@dataclass
class SweepResult:
    rows: list[SweepRow] = field(default_factory=list)
    summaries: list[BlockSummary] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(row.status != STATUS_OK for row in self.rows)


def resolve_threads(requested: Optional[int] = None) -> int:
    """Explicit request, else CASIMIR_SWEEP_THREADS, else 1."""
    if requested is not None:
        return max(1, requested)
    threads = get_env_value(os.environ, config.THREADS_ENV_VAR, 1, int)
    return max(1, threads)


def _block(spec: SweepSpec, f: float, H: float) -> PlateSphereCalculator:
    calculator = PlateSphereCalculator(spec.profile(f), H, spec.R, spec.settings)
    needs_normal = spec.wants("normal") or spec.wants("normal_normalized")
    return calculator.prepare(pressure=needs_normal, gap_integrated=spec.wants("lateral"))


def _harmonics_used(spec: SweepSpec, calculator: PlateSphereCalculator) -> int:
    used = []
    if spec.wants("normal") or spec.wants("normal_normalized"):
        used.append(calculator.pressure_series.harmonics_used)
    if spec.wants("lateral"):
        used.append(calculator.energy_series.harmonics_used)
    return max(used)


def _row(spec: SweepSpec, f: float, H: float, a: float, calculator: PlateSphereCalculator) -> SweepRow:
    values = {}
    if spec.wants("normal") or spec.wants("normal_normalized"):
        normal = calculator.normal_force(a)
        if spec.wants("normal"):
            values["F_normal_N"] = normal.value
            values["err_normal_N"] = normal.error_estimate
        if spec.wants("normal_normalized"):
            F0 = calculator.normalization_force().value
            values["F_normal_over_F0"] = normal.value / F0 if F0 != 0.0 else math.nan
    if spec.wants("lateral"):
        lateral = calculator.lateral_force(a)
        values["F_lateral_N"] = lateral.value
        values["err_lateral_N"] = lateral.error_estimate
    return SweepRow(
        material_pair=spec.material_pair,
        f=f,
        lambda_m=spec.wavelength,
        H_m=H,
        a=a,
        harmonics_used=_harmonics_used(spec, calculator),
        **values,
    )


def _summary(spec: SweepSpec, f: float, H: float, calculator: PlateSphereCalculator) -> BlockSummary:
    grid = spec.a_grid()
    values = {"harmonics_used": _harmonics_used(spec, calculator)}
    if spec.wants("normal") or spec.wants("normal_normalized"):
        F0 = calculator.normalization_force().value
        normal = [calculator.normal_force(a).value for a in grid]
        values["F0_N"] = F0
        if F0 != 0.0:
            values["modulation_peak_to_peak"] = peak_to_peak_modulation(normal, F0)
            values["modulation_max_deviation"] = max_deviation_modulation(normal, F0)
        values["normal_harmonic_residual"] = single_harmonic_residual(grid, normal)
    if spec.wants("lateral"):
        lateral = [calculator.lateral_force(a).value for a in grid]
        values["lateral_amplitude_N"] = lateral_amplitude(lateral)
        values["lateral_harmonic_residual"] = single_harmonic_residual(grid, lateral)
    return BlockSummary(spec.material_pair, f, spec.wavelength, H, spec.R, **values)


def _log_summary(summary: BlockSummary) -> None:
    parts = [f"{summary.material_pair} f={summary.f:g} H={summary.H_m * 1e9:g} nm"]
    if summary.modulation_peak_to_peak is not None:
        parts.append(
            f"F0={summary.F0_N:.4e} N, modulation {100 * summary.modulation_peak_to_peak:.3g}% (peak-to-peak) / "
            f"{100 * summary.modulation_max_deviation:.3g}% (max deviation), "
            f"harmonic residual {summary.normal_harmonic_residual:.3g}"
        )
    if summary.lateral_amplitude_N is not None:
        parts.append(
            f"lateral amplitude {summary.lateral_amplitude_N * 1e12:.4g} pN, "
            f"harmonic residual {summary.lateral_harmonic_residual:.3g}"
        )
    logger.info(", ".join(parts))


async def _gather_ordered(
    executor: ThreadPoolExecutor, threads: int, jobs: list[Callable[[], T]]
) -> list[T | BaseException]:
    loop = asyncio.get_running_loop()
    semaphore = asyncio.Semaphore(threads)

    async def job_wrapper(job: Callable[[], T]) -> T:
        async with semaphore:
            return await loop.run_in_executor(executor, job)

    # gather keeps submission order whatever the completion order
    return await asyncio.gather(*(job_wrapper(job) for job in jobs), return_exceptions=True)


async def run_sweep_async(spec: SweepSpec, threads: Optional[int] = None) -> SweepResult:
    threads = resolve_threads(threads if threads is not None else spec.threads)
    blocks = [(f, H) for f in spec.f_values for H in spec.H_values]
    grid = spec.a_grid()
    logger.info(
        f"Sweep {spec.material_pair}: {len(spec.f_values)} fill fraction(s) × {len(spec.H_values)} gap(s) × "
        f"{len(grid)} displacements, outputs {list(spec.outputs)}, {threads} thread(s)"
    )

    result = SweepResult()
    with ThreadPoolExecutor(max_workers=threads) as executor:
        calculators = await _gather_ordered(
            executor, threads, [lambda f=f, H=H: _block(spec, f, H) for f, H in blocks]
        )

        ready = []
        for (f, H), calculator in zip(blocks, calculators):
            if isinstance(calculator, ConvergenceFailure):
                logger.warning(f"f={f:g} H={H:.3e} m: {calculator}; rows flagged")
            elif isinstance(calculator, BaseException):
                raise calculator
            else:
                ready.append((f, H, calculator))

        row_jobs = [
            lambda f=f, H=H, a=a, c=calculator: _row(spec, f, H, a, c)
            for f, H, calculator in ready
            for a in grid
        ]
        summary_jobs = [lambda f=f, H=H, c=calculator: _summary(spec, f, H, c) for f, H, calculator in ready]
        evaluated = await _gather_ordered(executor, threads, row_jobs + summary_jobs)

    for item in evaluated:
        if isinstance(item, BaseException):
            raise item

    rows = iter(evaluated[: len(row_jobs)])
    summaries = iter(evaluated[len(row_jobs):])
    ready_blocks = {(f, H) for f, H, _ in ready}
    for f, H in blocks:
        if (f, H) in ready_blocks:
            result.rows.extend(next(rows) for _ in grid)
            summary = next(summaries)
            _log_summary(summary)
            result.summaries.append(summary)
        else:
            result.rows.extend(
                SweepRow(spec.material_pair, f, spec.wavelength, H, a, status=STATUS_FAILED) for a in grid
            )
            result.summaries.append(
                BlockSummary(spec.material_pair, f, spec.wavelength, H, spec.R, status=STATUS_FAILED)
            )

    logger.info(f"Sweep finished: {len(result.rows)} rows, failures: {'yes' if result.failed else 'no'}")
    return result


def run_sweep(spec: SweepSpec, threads: Optional[int] = None) -> SweepResult:
    """
    Evaluate every requested observable on the (f, H, a) grid of a spec.

    Rows come out in lexicographic (f, H, a) order of the configured lists. A
    block whose harmonic series fails to converge yields flagged rows instead
    of aborting the sweep.
    """
    return asyncio.run(run_sweep_async(spec, threads))
