"""Static SVG charts rendered with matplotlib.

Output is byte-stable: the SVG id salt is fixed, no date is embedded, and
text is drawn as paths so no system font lookup leaks into the file.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

from matplotlib import rc_context  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from jobgap.report.tables import CoverageRow, ReportBundle, ReportError  # noqa: E402

SVG_METADATA = {"Date": None, "Creator": "jobgap"}

STYLE = {
    "svg.hashsalt": "jobgap",
    "svg.fonttype": "path",
    "font.family": "DejaVu Sans",
    "font.size": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "axes.axisbelow": True,
    "grid.linestyle": "--",
    "grid.alpha": 0.4,
}

JOB_COLOR = "#4c72b0"
EDU_COLOR = "#dd8452"


def _save(fig: Figure, path: Path) -> Path:
    fig.savefig(path, format="svg", metadata=SVG_METADATA)
    return path


def _bar_height(n: int) -> float:
    return max(2.0, 0.22 * n + 1.0)


def coverage_chart(rows: list[CoverageRow], title: str, xlabel: str) -> Figure:
    ordered = list(reversed(rows))  # largest bar on top
    fig = Figure(figsize=(6.0, _bar_height(len(rows))))
    ax = fig.add_subplot()
    bars = ax.barh(range(len(ordered)), [r.count for r in ordered], color=JOB_COLOR)
    for i, (bar, row) in enumerate(zip(bars, ordered)):
        bar.set_gid(f"bar-{i}")
        ax.annotate(f"{row.count} ({row.pct:.1f}%)", (bar.get_width(), bar.get_y() + bar.get_height() / 2),
                    xytext=(3, 0), textcoords="offset points", va="center", fontsize=6)
    ax.set_yticks(range(len(ordered)), [r.skill for r in ordered])
    ax.set_xlabel(xlabel)
    ax.set_title(title)
    ax.grid(axis="y", visible=False)
    fig.tight_layout()
    return fig


def gap_chart(bundle: ReportBundle) -> Figure:
    rows = list(reversed(bundle.gaps))
    fig = Figure(figsize=(6.0, _bar_height(2 * len(rows)) * 0.6 + 1))
    ax = fig.add_subplot()
    h = 0.4
    ys = range(len(rows))
    job = ax.barh([y + h / 2 for y in ys], [r.job_pct for r in rows], height=h, color=JOB_COLOR,
                  label="Technologies in job posts")
    edu = ax.barh([y - h / 2 for y in ys], [r.edu_pct for r in rows], height=h, color=EDU_COLOR,
                  label="Technologies in syllabi")
    for i, (jb, eb) in enumerate(zip(job, edu)):
        jb.set_gid(f"job-{i}")
        eb.set_gid(f"edu-{i}")
    ax.set_yticks(list(ys), [r.skill for r in rows])
    ax.set_xlim(0, 100)
    ax.set_xlabel("Percentage %")
    ax.legend(loc="lower right")
    ax.grid(axis="y", visible=False)
    fig.tight_layout()
    return fig


def trend_chart(bundle: ReportBundle) -> Figure:
    table = bundle.interval_table
    labels = [str(iv) for iv in table.intervals]
    index = {iv: i for i, iv in enumerate(table.intervals)}
    fig = Figure(figsize=(8.0, 5.0))
    ax = fig.add_subplot()
    cmap = matplotlib.colormaps["tab20"]
    for k, row in enumerate(bundle.trends):
        fit = row.fit
        series = table.series(fit.skill)
        if not series:
            continue
        color = cmap(k % 20)
        xs = [index[iv] for iv, _ in series]
        (line,) = ax.plot(xs, [y for _, y in series], marker="o", markersize=2.5, linewidth=1.0, color=color,
                          label=f"{fit.skill} ({fit.m:+.2f})")
        line.set_gid(f"series-{k}")
        # fitted line in interval-index coordinates; the fit's x is in years
        x0 = index[fit.origin] if fit.origin in index else xs[0]
        ends = [xs[0], xs[-1]]
        (trend,) = ax.plot(ends, [fit.predict((x - x0) / 2) for x in ends], linestyle="--", linewidth=0.8,
                           color=color)
        trend.set_gid(f"fit-{k}")
    ax.set_xticks(range(len(labels)), labels, rotation=45)
    ax.set_ylabel("Share of job posts (%)")
    ax.set_title("Skill share per half-year with yearly trend")
    if bundle.trends:
        ax.legend(fontsize=6, ncol=2, loc="upper left", bbox_to_anchor=(1.0, 1.0))
    fig.tight_layout()
    return fig


def totals_chart(bundle: ReportBundle) -> Figure:
    table = bundle.interval_table
    fig = Figure(figsize=(5.0, 3.0))
    ax = fig.add_subplot()
    bars = ax.bar(range(len(table.totals)), table.totals, color=JOB_COLOR)
    for i, bar in enumerate(bars):
        bar.set_gid(f"total-{i}")
    ax.set_xticks(range(len(table.intervals)), [str(iv) for iv in table.intervals], rotation=65)
    ax.set_ylabel("Posts")
    ax.grid(axis="x", visible=False)
    fig.tight_layout()
    return fig


def emit_charts(bundle: ReportBundle, out_dir: str | Path) -> list[Path]:
    """Render the bundle's charts; charts without data are not written."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ReportError(f"cannot create output directory {out}: {exc}") from exc
    paths: list[Path] = []
    try:
        with rc_context(STYLE):
            if bundle.coverage_edu:
                paths.append(_save(coverage_chart(bundle.coverage_edu, "Skills in program syllabi", "Programs"),
                                   out / "coverage_edu.svg"))
            if bundle.coverage_job:
                paths.append(_save(coverage_chart(bundle.coverage_job, "Skills in job posts", "Job posts"),
                                   out / "coverage_job.svg"))
            if bundle.gaps:
                paths.append(_save(gap_chart(bundle), out / "gaps.svg"))
            if bundle.interval_table.intervals:
                paths.append(_save(totals_chart(bundle), out / "job_totals.svg"))
            if bundle.trends:
                paths.append(_save(trend_chart(bundle), out / "trends.svg"))
    except OSError as exc:
        raise ReportError(f"cannot write charts to {out}: {exc}") from exc
    return paths
