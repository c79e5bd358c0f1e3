import math

import pytest

from src.sweep.csv_output import ROW_COLUMNS, SUMMARY_COLUMNS, rows_to_csv, summaries_to_csv, write_result
from src.sweep.runner import STATUS_FAILED, STATUS_OK, resolve_threads, run_sweep
from src.sweep.spec import parse_config

QUICK = """
materials=gold,air
f=0.5,1
lambda=200nm
H=100nm
R=10um
a_points=8
rel_tol=1e-6
series_tail_tol=1e-6
"""


@pytest.fixture(scope="module")
def spec():
    return parse_config(QUICK)


@pytest.fixture(scope="module")
def serial(spec):
    return run_sweep(spec, threads=1)


def test_rows_in_grid_order(spec, serial):
    assert len(serial.rows) == 2 * 8
    keys = [(row.f, row.H_m, row.a) for row in serial.rows]
    assert keys == sorted(keys)
    assert [row.a for row in serial.rows[:8]] == spec.a_grid()
    assert all(row.status == STATUS_OK for row in serial.rows)
    assert not serial.failed


def test_normalized_column_is_ratio(serial):
    for row in serial.rows:
        block = [s for s in serial.summaries if s.f == row.f][0]
        assert row.F_normal_over_F0 == pytest.approx(row.F_normal_N / block.F0_N, rel=1e-15)


def test_uniform_block(serial):
    uniform = [row for row in serial.rows if row.f == 1.0]
    assert all(row.F_lateral_N == 0.0 for row in uniform)
    assert all(row.F_normal_over_F0 == 1.0 for row in uniform)
    assert all(row.harmonics_used == 1 for row in uniform)


def test_average_normal_force_is_F0(serial):
    rows = [row for row in serial.rows if row.f == 0.5]
    summary = [s for s in serial.summaries if s.f == 0.5][0]
    mean = math.fsum(row.F_normal_N for row in rows) / len(rows)
    assert abs(mean - summary.F0_N) <= max(row.err_normal_N for row in rows) + 1e-12 * abs(summary.F0_N)


def test_summary(serial):
    assert len(serial.summaries) == 2
    summary = serial.summaries[0]
    assert summary.f == 0.5
    assert summary.modulation_peak_to_peak > summary.modulation_max_deviation > 0.0
    assert summary.lateral_amplitude_N > 0.0
    assert summary.R_m == 10e-6


def test_csv_is_identical_across_thread_counts(spec, serial):
    parallel = run_sweep(spec, threads=4)
    assert rows_to_csv(parallel.rows) == rows_to_csv(serial.rows)
    assert summaries_to_csv(parallel.summaries) == summaries_to_csv(serial.summaries)


def test_csv_format(serial, tmp_path):
    out = tmp_path / "rows.csv"
    summary = tmp_path / "summary.csv"
    text = write_result(serial, str(out), str(summary))
    raw = out.read_bytes()
    assert raw.decode("utf-8") == text
    assert b"\r" not in raw
    lines = text.split("\n")
    assert lines[0] == ",".join(ROW_COLUMNS)
    assert lines[-1] == ""
    assert len(lines) == len(serial.rows) + 2
    first = dict(zip(ROW_COLUMNS, lines[1].split(",")))
    assert first["material_pair"] == "gold-air"
    assert first["f"] == "5.00000000000e-01"
    assert first["lambda_m"] == "2.00000000000e-07"
    assert first["harmonics_used"].isdigit()
    assert first["status"] == STATUS_OK
    assert float(first["F_normal_N"]) < 0.0
    assert summary.read_text(encoding="utf-8").split("\n")[0] == ",".join(SUMMARY_COLUMNS)


def test_unrequested_outputs_are_empty():
    spec = parse_config(QUICK.replace("f=0.5,1", "f=1") + "outputs=lateral\n")
    result = run_sweep(spec, threads=1)
    lines = rows_to_csv(result.rows).split("\n")
    row = dict(zip(ROW_COLUMNS, lines[1].split(",")))
    assert row["F_normal_N"] == ""
    assert row["F_normal_over_F0"] == ""
    assert row["err_normal_N"] == ""
    assert row["F_lateral_N"] == "0.00000000000e+00"


def test_convergence_failure_flags_rows():
    spec = parse_config(QUICK + "m_max=1\noutputs=normal\n")
    result = run_sweep(spec, threads=2)
    failed = [row for row in result.rows if row.f == 0.5]
    fine = [row for row in result.rows if row.f == 1.0]
    assert result.failed
    assert all(row.status == STATUS_FAILED and row.F_normal_N is None for row in failed)
    assert all(row.status == STATUS_OK for row in fine)
    assert result.summaries[0].status == STATUS_FAILED
    text = rows_to_csv(result.rows)
    assert text.count(STATUS_FAILED) == 8


def test_thread_count_resolution(monkeypatch):
    monkeypatch.setenv("CASIMIR_SWEEP_THREADS", "3")
    assert resolve_threads(None) == 3
    assert resolve_threads(2) == 2
    monkeypatch.setenv("CASIMIR_SWEEP_THREADS", "many")
    assert resolve_threads(None) == 1
    monkeypatch.delenv("CASIMIR_SWEEP_THREADS")
    assert resolve_threads(None) == 1
