"""Plot-ready CSV tables: '.' decimals, 12 significant digits, LF line endings, UTF-8."""

import dataclasses
import logging
from typing import Optional, Sequence

import pandas as pd

from src.sweep.runner import BlockSummary, SweepResult, SweepRow

logger = logging.getLogger(__name__)

ROW_COLUMNS = [f.name for f in dataclasses.fields(SweepRow)]
SUMMARY_COLUMNS = [f.name for f in dataclasses.fields(BlockSummary)]
FLOAT_FORMAT = "%.11e"
INTEGER_COLUMNS = ("harmonics_used",)


def _frame(records: Sequence, columns: list[str]) -> pd.DataFrame:
    frame = pd.DataFrame([dataclasses.asdict(r) for r in records], columns=columns)
    for column in columns:
        if column in INTEGER_COLUMNS:
            frame[column] = frame[column].astype("Int64")
        elif column not in ("material_pair", "status"):
            # + 0.0 folds -0.0 into 0.0
            frame[column] = frame[column].astype(float) + 0.0
    return frame


def _to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    return _to_csv(_frame(rows, ROW_COLUMNS))


def summaries_to_csv(summaries: Sequence[BlockSummary]) -> str:
    return _to_csv(_frame(summaries, SUMMARY_COLUMNS))


def write_result(result: SweepResult, out_path: Optional[str], summary_path: Optional[str] = None) -> str:
    """
    Write the row table to out_path (returned as text when out_path is None)
    and, optionally, the per-block summary table to summary_path.
    """
    text = rows_to_csv(result.rows)
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info(f"Wrote {len(result.rows)} rows to {out_path}")
    if summary_path is not None:
        with open(summary_path, "w", encoding="utf-8", newline="") as f:
            f.write(summaries_to_csv(result.summaries))
        logger.info(f"Wrote {len(result.summaries)} block summaries to {summary_path}")
    return text
