"""Report bundle and its CSV serialization."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from jobgap.analysis import GapRow, HalfYearInterval, Trend, TrendFit

COVERAGE_HEADER = ("skill", "count", "pct")
TRENDS_HEADER = ("skill", "m", "b", "n", "trend")
GAPS_HEADER = ("skill", "edu_pct", "job_pct", "gap")
TOTAL_ROW = "TOTAL"

CSV_FILES = ("coverage_edu.csv", "coverage_job.csv", "intervals.csv", "trends.csv", "gaps.csv")


class ReportError(RuntimeError):
    pass


@dataclass(frozen=True)
class CoverageRow:
    skill: str
    count: int
    pct: float


@dataclass(frozen=True)
class IntervalTable:
    """Skill-by-interval document counts with a totals row."""

    intervals: tuple[HalfYearInterval, ...] = ()
    totals: tuple[int, ...] = ()
    rows: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def skills(self) -> list[str]:
        return sorted(self.rows, key=lambda s: (-sum(self.rows[s]), s))

    def series(self, skill: str) -> list[tuple[HalfYearInterval, float]]:
        return [
            (iv, 100.0 * c / t)
            for iv, t, c in zip(self.intervals, self.totals, self.rows[skill])
            if t > 0
        ]


@dataclass(frozen=True)
class TrendRow:
    fit: TrendFit
    trend: Trend


@dataclass
class ReportBundle:
    coverage_edu: list[CoverageRow] = field(default_factory=list)
    coverage_job: list[CoverageRow] = field(default_factory=list)
    interval_table: IntervalTable = field(default_factory=IntervalTable)
    trends: list[TrendRow] = field(default_factory=list)
    gaps: list[GapRow] = field(default_factory=list)

    def __post_init__(self) -> None:
        missing = [t.fit.skill for t in self.trends if t.fit.skill not in self.interval_table.rows]
        if missing:
            raise ReportError(f"trend skills missing from the interval table: {', '.join(missing)}")


def coverage_rows(ratios: dict[str, tuple[int, float]]) -> list[CoverageRow]:
    rows = [CoverageRow(s, c, p) for s, (c, p) in ratios.items()]
    rows.sort(key=lambda r: (-r.count, r.skill))
    return rows


def fmt_pct(value: float) -> str:
    return _fmt(value, 1)


def fmt_num(value: float) -> str:
    return _fmt(value, 3)


def _fmt(value: float, digits: int) -> str:
    # '.' separator always; never emit a negative zero
    text = f"{value:.{digits}f}"
    if text.startswith("-") and float(text) == 0:
        text = text[1:]
    return text


def _write(path: Path, header: Sequence[str], rows: list[Sequence[object]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def emit_csv(bundle: ReportBundle, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ReportError(f"cannot create output directory {out}: {exc}") from exc
    paths = [out / name for name in CSV_FILES]
    table = bundle.interval_table
    try:
        _write(paths[0], COVERAGE_HEADER, [(r.skill, r.count, fmt_pct(r.pct)) for r in bundle.coverage_edu])
        _write(paths[1], COVERAGE_HEADER, [(r.skill, r.count, fmt_pct(r.pct)) for r in bundle.coverage_job])
        interval_rows: list[Sequence[object]] = [(s, *table.rows[s]) for s in table.skills()]
        if table.intervals:
            interval_rows.append((TOTAL_ROW, *table.totals))
        _write(paths[2], ("skill", *map(str, table.intervals)), interval_rows)
        _write(
            paths[3],
            TRENDS_HEADER,
            [(t.fit.skill, fmt_num(t.fit.m), fmt_num(t.fit.b), t.fit.n, t.trend.value) for t in bundle.trends],
        )
        _write(
            paths[4],
            GAPS_HEADER,
            [(g.skill, fmt_pct(g.edu_pct), fmt_pct(g.job_pct), fmt_pct(g.gap)) for g in bundle.gaps],
        )
    except OSError as exc:
        raise ReportError(f"cannot write report to {out}: {exc}") from exc
    return paths


def _read(path: Path) -> tuple[list[str], list[list[str]]]:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ReportError(f"{path}: missing header")
    return rows[0], rows[1:]


def read_interval_table(path: str | Path) -> IntervalTable:
    header, rows = _read(Path(path))
    intervals = tuple(HalfYearInterval.parse(h) for h in header[1:])
    counts: dict[str, tuple[int, ...]] = {}
    totals: tuple[int, ...] = ()
    for row in rows:
        values = tuple(int(v) for v in row[1:])
        if len(values) != len(intervals):
            raise ReportError(f"{path}: row {row[0]!r} has {len(values)} cells for {len(intervals)} intervals")
        if row[0] == TOTAL_ROW:
            totals = values
        else:
            counts[row[0]] = values
    if intervals and not totals:
        raise ReportError(f"{path}: no {TOTAL_ROW} row")
    return IntervalTable(intervals, totals, counts)


def read_csv_bundle(out_dir: str | Path) -> ReportBundle:
    """Rebuild a bundle from emitted CSV files (percentages at 1-decimal precision)."""
    out = Path(out_dir)
    for name in CSV_FILES:
        if not (out / name).is_file():
            raise ReportError(f"{out / name} not found")

    def coverage(name: str) -> list[CoverageRow]:
        _, rows = _read(out / name)
        return [CoverageRow(r[0], int(r[1]), float(r[2])) for r in rows]

    table = read_interval_table(out / "intervals.csv")
    nonempty = [iv for iv, t in zip(table.intervals, table.totals) if t > 0]
    origin = nonempty[0] if nonempty else None
    _, trend_rows = _read(out / "trends.csv")
    trends = [
        TrendRow(TrendFit(r[0], float(r[1]), float(r[2]), int(r[3]), origin), Trend(r[4])) for r in trend_rows
    ]
    _, gap_rows = _read(out / "gaps.csv")
    gaps = [GapRow(r[0], float(r[1]), float(r[2])) for r in gap_rows]
    return ReportBundle(coverage("coverage_edu.csv"), coverage("coverage_job.csv"), table, trends, gaps)
