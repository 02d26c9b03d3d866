"""CSV tables and SVG charts for an analysis run."""

from jobgap.report.figures import emit_charts
from jobgap.report.tables import (
    CoverageRow,
    IntervalTable,
    ReportBundle,
    ReportError,
    TrendRow,
    coverage_rows,
    emit_csv,
    read_csv_bundle,
    read_interval_table,
)

__all__ = [
    "CoverageRow",
    "IntervalTable",
    "ReportBundle",
    "ReportError",
    "TrendRow",
    "coverage_rows",
    "emit_charts",
    "emit_csv",
    "read_csv_bundle",
    "read_interval_table",
]
