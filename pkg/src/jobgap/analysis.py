"""Coverage ratios, half-year binning, least-squares trends and gap tables."""

from __future__ import annotations

import datetime as dt
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from jobgap.corpus import Corpus, DocumentKind
from jobgap.skills import MatchSet

DEFAULT_EPSILON = 0.05  # pp/year
YEARS_PER_INTERVAL = Fraction(1, 2)


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class HalfYearInterval:
    year: int
    half: int  # 1 = Jan-Jun, 2 = Jul-Dec

    def __post_init__(self) -> None:
        if self.half not in (1, 2):
            raise ValueError(f"half must be 1 or 2, got {self.half}")

    @classmethod
    def of(cls, date: dt.date) -> "HalfYearInterval":
        return cls(date.year, 1 if date.month <= 6 else 2)

    @classmethod
    def parse(cls, label: str) -> "HalfYearInterval":
        """Parse labels like ``2016H1``."""
        label = label.strip().upper()
        year, sep, half = label.partition("H")
        if not sep or not year.isdigit() or half not in ("1", "2"):
            raise ValueError(f"bad interval label {label!r}")
        return cls(int(year), int(half))

    @property
    def ordinal(self) -> int:
        return self.year * 2 + (self.half - 1)

    @classmethod
    def from_ordinal(cls, ordinal: int) -> "HalfYearInterval":
        return cls(ordinal // 2, ordinal % 2 + 1)

    @property
    def start(self) -> dt.date:
        return dt.date(self.year, 1 if self.half == 1 else 7, 1)

    @property
    def end(self) -> dt.date:
        return dt.date(self.year, 6, 30) if self.half == 1 else dt.date(self.year, 12, 31)

    def next(self) -> "HalfYearInterval":
        return HalfYearInterval.from_ordinal(self.ordinal + 1)

    def __str__(self) -> str:
        return f"{self.year}H{self.half}"


def interval_range(first: HalfYearInterval, last: HalfYearInterval) -> list[HalfYearInterval]:
    if last < first:
        raise AnalysisError(f"empty interval range {first}..{last}")
    return [HalfYearInterval.from_ordinal(o) for o in range(first.ordinal, last.ordinal + 1)]


@dataclass(frozen=True)
class IntervalStat:
    interval: HalfYearInterval
    skill: str
    count: int
    total: int

    def __post_init__(self) -> None:
        if self.total <= 0 or not 0 <= self.count <= self.total:
            raise AnalysisError(f"invalid stat {self.skill}@{self.interval}: {self.count}/{self.total}")

    @property
    def pct(self) -> float:
        return 100.0 * self.count / self.total


@dataclass(frozen=True)
class TrendFit:
    skill: str
    m: float  # percentage points per year
    b: float  # percentage points at the series origin
    n: int
    origin: HalfYearInterval | None = None

    def predict(self, x: float) -> float:
        return self.m * x + self.b


class Trend(str, enum.Enum):
    ABOVE_MARKET = "above_market"
    WITH_MARKET = "with_market"
    BELOW_MARKET = "below_market"


@dataclass(frozen=True)
class GapRow:
    skill: str
    edu_pct: float
    job_pct: float

    @property
    def gap(self) -> float:
        return abs(self.edu_pct - self.job_pct)


@dataclass(frozen=True)
class Binned:
    """Output of :func:`bin_by_interval`."""

    intervals: tuple[HalfYearInterval, ...]
    totals: tuple[int, ...]
    counts: Mapping[str, tuple[int, ...]]
    out_of_range: int

    @property
    def stats(self) -> list[IntervalStat]:
        out = []
        for skill in sorted(self.counts):
            for iv, total, count in zip(self.intervals, self.totals, self.counts[skill]):
                if total > 0:
                    out.append(IntervalStat(iv, skill, count, total))
        return out

    def series(self, skill: str) -> list[tuple[HalfYearInterval, float]]:
        """Percentage series of one skill; empty intervals are left out."""
        counts = self.counts.get(skill, (0,) * len(self.intervals))
        return [(iv, 100.0 * c / t) for iv, t, c in zip(self.intervals, self.totals, counts) if t > 0]


def skill_ratio(
    matches: Iterable[MatchSet], total_docs: int, skills: Iterable[str] = ()
) -> dict[str, tuple[int, float]]:
    """Presence count and percentage of documents per skill.

    Skills named in ``skills`` are reported even when no document has them.
    """
    if total_docs < 1:
        raise AnalysisError("skill ratio is undefined for zero documents")
    counts: dict[str, int] = {s: 0 for s in skills}
    for m in matches:
        for skill in m.skills:
            counts[skill] = counts.get(skill, 0) + 1
    if any(c > total_docs for c in counts.values()):
        raise AnalysisError("more matches than documents; total_docs is too small")
    return {s: (c, 100.0 * c / total_docs) for s, c in counts.items()}


def bin_by_interval(
    corpus: Corpus,
    matches: Sequence[MatchSet],
    first: HalfYearInterval,
    last: HalfYearInterval,
    skills: Iterable[str] = (),
) -> Binned:
    if corpus.kind is not DocumentKind.JOB_POST:
        raise AnalysisError("binning applies to dated (job post) corpora only")
    if len(matches) != len(corpus):
        raise AnalysisError(f"{len(matches)} match sets for {len(corpus)} documents")
    intervals = interval_range(first, last)
    base = first.ordinal
    totals = [0] * len(intervals)
    counts: dict[str, list[int]] = {s: [0] * len(intervals) for s in skills}
    out_of_range = 0
    for doc, m in zip(corpus, matches):
        if doc.published_at is None:
            raise AnalysisError(f"document {doc.id!r} has no publication date")
        if m.document_id and m.document_id != doc.id:
            raise AnalysisError(f"match set for {m.document_id!r} paired with document {doc.id!r}")
        i = HalfYearInterval.of(doc.published_at).ordinal - base
        if not 0 <= i < len(intervals):
            out_of_range += 1
            continue
        totals[i] += 1
        for skill in m.skills:
            row = counts.get(skill)
            if row is None:
                row = counts[skill] = [0] * len(intervals)
            row[i] += 1
    return Binned(
        tuple(intervals),
        tuple(totals),
        {s: tuple(c) for s, c in counts.items()},
        out_of_range,
    )


def fit_line_exact(xs: Sequence[float | Fraction], ys: Sequence[float | Fraction]) -> tuple[Fraction, Fraction]:
    """Least-squares slope and intercept of ``y = m*x + b`` as exact rationals.

    Float inputs are converted exactly, so the only rounding in
    :func:`fit_line` is the final conversion back to float.
    """
    n = len(xs)
    if n != len(ys):
        raise AnalysisError("x and y lengths differ")
    if n < 2:
        raise AnalysisError("a trend needs at least two points")
    fx = [Fraction(x) for x in xs]
    fy = [Fraction(y) for y in ys]
    sx = sum(fx)
    sy = sum(fy)
    sxy = sum(x * y for x, y in zip(fx, fy))
    sxx = sum(x * x for x in fx)
    denom = n * sxx - sx * sx
    if denom == 0:
        raise AnalysisError("degenerate series: all x values are equal")
    m = (n * sxy - sx * sy) / denom
    b = (sy - m * sx) / n
    return m, b


def fit_line(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Correctly rounded closed-form least-squares slope and intercept."""
    m, b = fit_line_exact(xs, ys)
    return float(m), float(b)


def fit_trend(series: Sequence[tuple[HalfYearInterval, float]], skill: str = "") -> TrendFit:
    """Fit a yearly trend to a percentage series.

    x is measured in years from the first interval of the series, so
    consecutive half-years are 0.5 apart and gaps in the series keep their
    true spacing.
    """
    if len(series) < 2:
        raise AnalysisError(f"trend for {skill or 'series'} needs at least two points, got {len(series)}")
    origin = series[0][0]
    xs = [float((iv.ordinal - origin.ordinal) * YEARS_PER_INTERVAL) for iv, _ in series]
    ys = [float(y) for _, y in series]
    m, b = fit_line(xs, ys)
    if not (math.isfinite(m) and math.isfinite(b)):
        raise AnalysisError(f"non-finite trend for {skill}")
    return TrendFit(skill, m, b, len(series), origin)


def trend_classification(fit: TrendFit, epsilon: float = DEFAULT_EPSILON) -> Trend:
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    if fit.m > epsilon:
        return Trend.ABOVE_MARKET
    if fit.m < -epsilon:
        return Trend.BELOW_MARKET
    return Trend.WITH_MARKET


def compute_gap(edu: Mapping[str, float], job: Mapping[str, float]) -> list[GapRow]:
    """Education-vs-industry gap per skill; a skill missing on one side counts as 0%."""
    rows = [GapRow(s, float(edu.get(s, 0.0)), float(job.get(s, 0.0))) for s in set(edu) | set(job)]
    rows.sort(key=lambda r: (-r.edu_pct, r.skill))
    return rows
