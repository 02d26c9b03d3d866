"""Composition of match -> ratio -> bin -> trend -> gap into a report bundle."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from typing import Iterable

from jobgap.analysis import (
    DEFAULT_EPSILON,
    HalfYearInterval,
    bin_by_interval,
    compute_gap,
    fit_trend,
    skill_ratio,
    trend_classification,
)
from jobgap.corpus import Corpus
from jobgap.report.tables import IntervalTable, ReportBundle, TrendRow, coverage_rows
from jobgap.skills import SkillDictionary, match_corpus

DEFAULT_FROM = dt.date(2016, 1, 1)
DEFAULT_TO = dt.date(2021, 12, 31)


@dataclass
class AnalysisResult:
    bundle: ReportBundle
    notices: list[str] = field(default_factory=list)


def analyze(
    dictionary: SkillDictionary,
    jobs: Corpus | None = None,
    syllabi: Corpus | None = None,
    date_from: dt.date = DEFAULT_FROM,
    date_to: dt.date = DEFAULT_TO,
    skills: Iterable[str] | None = None,
    epsilon: float = DEFAULT_EPSILON,
) -> AnalysisResult:
    """Run the whole analysis for whichever corpora are given.

    Job coverage counts posts published in ``[date_from, date_to]``; the
    half-year table spans the intervals containing those two dates.
    ``skills`` restricts the trend rows only.
    """
    if jobs is None and syllabi is None:
        raise ValueError("at least one corpus is required")
    names = dictionary.skills
    notices: list[str] = []
    bundle = ReportBundle()
    edu_pct: dict[str, float] | None = None
    job_pct: dict[str, float] | None = None

    if syllabi is not None:
        if len(syllabi):
            ratios = skill_ratio(match_corpus(syllabi, dictionary), len(syllabi), names)
            bundle.coverage_edu = coverage_rows(ratios)
            edu_pct = {s: p for s, (_, p) in ratios.items()}
        else:
            notices.append("syllabus corpus is empty; education coverage skipped")

    if jobs is None:
        notices.append("no job corpus: interval and trend outputs skipped")
    else:
        matches = match_corpus(jobs, dictionary)
        in_range = [m for d, m in zip(jobs, matches) if date_from <= d.published_at <= date_to]
        if in_range:
            ratios = skill_ratio(in_range, len(in_range), names)
            bundle.coverage_job = coverage_rows(ratios)
            job_pct = {s: p for s, (_, p) in ratios.items()}
        else:
            notices.append(f"no job posts between {date_from} and {date_to}; job coverage skipped")
        binned = bin_by_interval(jobs, matches, HalfYearInterval.of(date_from), HalfYearInterval.of(date_to), names)
        if binned.out_of_range:
            notices.append(f"{binned.out_of_range} job posts outside the interval range were excluded")
        table = IntervalTable(binned.intervals, binned.totals, dict(binned.counts))
        wanted = set(skills) if skills is not None else None
        if wanted is not None:
            unknown = sorted(wanted - set(table.rows))
            if unknown:
                notices.append(f"unknown skills ignored: {', '.join(unknown)}")
        trends = []
        for skill in table.skills():
            if wanted is not None and skill not in wanted:
                continue
            series = table.series(skill)
            if len(series) < 2:
                notices.append(f"{skill}: fewer than two populated intervals, no trend")
                continue
            fit = fit_trend(series, skill)
            trends.append(TrendRow(fit, trend_classification(fit, epsilon)))
        bundle.interval_table = table
        bundle.trends = trends

    if edu_pct is not None and job_pct is not None:
        bundle.gaps = compute_gap(edu_pct, job_pct)
    return AnalysisResult(bundle, notices)
