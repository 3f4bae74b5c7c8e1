"""CSV writers for per-tick series and aggregate tables.

Files are UTF-8 with a header line; floats use six significant digits in the
shortest form (``format(x, ".6g")``).
"""
from __future__ import annotations

import csv
import io
import os
import sys
from contextlib import contextmanager

from .metrics import SERIES_COLUMNS, MetricsSeries
from .sweep import ExperimentResult

AGGREGATE_HEADER = ("algorithm", "n_devices", "range", "king_bonus", "mover_count",
                    "metric", "mean", "stddev", "runs")
SERIES_HEADER = ("tick", "time") + SERIES_COLUMNS


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".6g")


@contextmanager
def _open(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle


def aggregate_rows(result: ExperimentResult):
    for row in result.rows:
        k = row.key
        yield (k.algorithm, fmt(k.n_devices), fmt(k.range), fmt(k.king_bonus), fmt(k.mover_count),
               row.metric, fmt(row.mean), fmt(row.stddev), fmt(row.runs))


def write_aggregate(result: ExperimentResult, path: str | os.PathLike | None = None) -> None:
    with _open(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(AGGREGATE_HEADER)
        writer.writerows(aggregate_rows(result))


def write_series(series: MetricsSeries, path: str | os.PathLike | None = None) -> None:
    with _open(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SERIES_HEADER)
        for rec in series.as_rows():
            writer.writerow([fmt(rec[c]) for c in SERIES_HEADER])


def aggregate_text(result: ExperimentResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(AGGREGATE_HEADER)
    writer.writerows(aggregate_rows(result))
    return buf.getvalue()


def read_aggregate(path: str | os.PathLike) -> list[dict]:
    with open(path, encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))
