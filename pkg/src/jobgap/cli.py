"""Command-line entry point: ``jobgap <command> [options]``.

Exit status: 0 on success (possibly with warnings), 1 on usage or
configuration errors, 2 on data errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from jobgap.analysis import AnalysisError
from jobgap.config import ConfigError, RunConfig, load_config
from jobgap.corpus import CorpusBuilder, CorpusError, DocumentKind, load_corpus, save_corpus
from jobgap.ingest import (
    ArchiveQuery,
    IngestError,
    IngestReport,
    fetch_job_posts,
    import_text_dir,
    load_fixture_archive,
    make_client,
)
from jobgap.pipeline import analyze
from jobgap.report import ReportError, emit_charts, emit_csv, read_csv_bundle
from jobgap.skills import DictionaryError, SkillDictionary, load_default_dictionary, load_dictionary, match_corpus

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

log = logging.getLogger("jobgap")


# where ingest and import write when no corpus path is configured
DEFAULT_CORPUS_NAMES = {DocumentKind.JOB_POST: "jobs.jsonl", DocumentKind.SYLLABUS: "syllabi.jsonl"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2, which is our data-error code
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=Path, help="YAML run configuration; flags override it")
    p.add_argument("--from", dest="date_from", help="first date, YYYY-MM-DD")
    p.add_argument("--to", dest="date_to", help="last date, YYYY-MM-DD")
    p.add_argument("--dict", dest="dictionary", type=Path, help="skill dictionary file")
    p.add_argument("--out", dest="out_dir", type=Path, help="output directory")
    p.add_argument("--archive-fixture", type=Path, help="serve the archive from a local fixture file")
    p.add_argument("--base-url", help="archive API endpoint")
    p.add_argument("--skills", help="comma-separated skills to keep in trend output")
    p.add_argument("--page-size", type=int)
    p.add_argument("--epsilon", type=float, help="with-market deadband in pp/year")
    p.add_argument("--jobs", dest="job_corpus", type=Path, help="job post corpus (JSONL)")
    p.add_argument("--syllabi", dest="syllabus_corpus", type=Path, help="syllabus corpus (JSONL)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="jobgap", description="Compare technology skills in job posts and program syllabi.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", parents=[common], help="fetch job posts from the ad archive")
    p.add_argument("--phrase", action="append", dest="phrases", help="search phrase (repeatable)")

    p = sub.add_parser("import", parents=[common], help="import syllabus files from a directory")
    p.add_argument("--input", dest="syllabus_dir", type=Path, help="directory of .pdf/.txt files")

    p = sub.add_parser("match", parents=[common], help="write per-document skill matches")
    p.add_argument("--kind", choices=[k.value for k in DocumentKind], default=None,
                   help="match only this corpus (default: every configured corpus)")

    sub.add_parser("analyze", parents=[common], help="compute coverage, trends and gaps")
    sub.add_parser("report", parents=[common], help="re-render charts from the CSV files in --out")

    p = sub.add_parser("dict-check", parents=[common], help="validate a skill dictionary")
    p.add_argument("path", nargs="?", type=Path, help="dictionary file (default: --dict or the packaged one)")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    overrides = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    return load_config(args.config, overrides)


def _dictionary(cfg: RunConfig) -> SkillDictionary:
    return load_dictionary(cfg.dictionary) if cfg.dictionary else load_default_dictionary()


def _print_report(label: str, report: IngestReport) -> None:
    print(f"{label}: fetched={report.fetched} kept={report.kept_after_dedup} "
          f"pages={report.pages} failures={len(report.failures)}")
    for where, reason in report.failures:
        log.warning("%s %s: %s", label, where, reason)


def cmd_ingest(cfg: RunConfig) -> IngestReport:
    if not cfg.has_archive:
        raise UsageError("no data source configured: give --base-url or --archive-fixture")
    if cfg.job_corpus is None:
        cfg.job_corpus = cfg.out_dir / DEFAULT_CORPUS_NAMES[DocumentKind.JOB_POST]
    fixture = load_fixture_archive(cfg.archive_fixture) if cfg.archive_fixture else None
    base_url = cfg.base_url or "http://archive.fixture"
    sink = CorpusBuilder(DocumentKind.JOB_POST)
    total = IngestReport()
    with make_client(base_url, fixture) as client:
        for phrase in cfg.phrases:
            query = ArchiveQuery(phrase, cfg.date_from, cfg.date_to, cfg.page_size, base_url)
            report = fetch_job_posts(query, sink, client)
            _print_report(f"'{phrase}'", report)
            total = total.merge(report)
    cfg.job_corpus.parent.mkdir(parents=True, exist_ok=True)
    save_corpus(sink.build(sort_by_id=True), cfg.job_corpus)
    _print_report("total", IngestReport(total.fetched, total.kept_after_dedup, total.pages))
    print(f"wrote {len(sink)} job posts to {cfg.job_corpus}")
    return total


def cmd_import(cfg: RunConfig) -> IngestReport:
    if cfg.syllabus_dir is None:
        raise UsageError("no syllabus directory: give --input or syllabus_dir in the config")
    if cfg.syllabus_corpus is None:
        cfg.syllabus_corpus = cfg.out_dir / DEFAULT_CORPUS_NAMES[DocumentKind.SYLLABUS]
    sink = CorpusBuilder(DocumentKind.SYLLABUS)
    report = import_text_dir(cfg.syllabus_dir, DocumentKind.SYLLABUS, sink)
    _print_report("import", report)
    cfg.syllabus_corpus.parent.mkdir(parents=True, exist_ok=True)
    save_corpus(sink.build(), cfg.syllabus_corpus)
    print(f"wrote {len(sink)} syllabi to {cfg.syllabus_corpus}")
    return report


def _corpora(cfg: RunConfig, kind: str | None = None) -> dict[DocumentKind, Path]:
    wanted = [k for k in DocumentKind if kind in (None, k.value)]
    configured = {DocumentKind.JOB_POST: cfg.job_corpus, DocumentKind.SYLLABUS: cfg.syllabus_corpus}
    out = {k: configured[k] for k in wanted if configured[k]}
    if not out:
        # nothing configured: pick up what ingest/import left in the output directory
        for k in wanted:
            path = cfg.out_dir / DEFAULT_CORPUS_NAMES[k]
            if path.is_file():
                print(f"using {path}", file=sys.stderr)
                out[k] = path
    if not out:
        raise UsageError(
            f"no corpus configured: give --jobs and/or --syllabi, or run ingest/import into {cfg.out_dir}"
        )
    for path in out.values():
        if not path.is_file():
            raise FileNotFoundError(f"corpus file not found: {path}")
    return out


def cmd_match(cfg: RunConfig, kind: str | None = None) -> list[Path]:
    dictionary = _dictionary(cfg)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for k, path in _corpora(cfg, kind).items():
        corpus = load_corpus(path, k)
        target = cfg.out_dir / f"matches_{k.value}.jsonl"
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            for m in match_corpus(corpus, dictionary):
                fh.write(json.dumps({"document_id": m.document_id, "skills": sorted(m.skills)},
                                    ensure_ascii=False) + "\n")
        print(f"{k.value}: {len(corpus)} documents -> {target}")
        written.append(target)
    return written


def cmd_analyze(cfg: RunConfig) -> list[Path]:
    dictionary = _dictionary(cfg)
    paths = _corpora(cfg)
    jobs = load_corpus(paths[DocumentKind.JOB_POST], DocumentKind.JOB_POST) if DocumentKind.JOB_POST in paths else None
    syllabi = (load_corpus(paths[DocumentKind.SYLLABUS], DocumentKind.SYLLABUS)
               if DocumentKind.SYLLABUS in paths else None)
    result = analyze(dictionary, jobs, syllabi, cfg.date_from, cfg.date_to, cfg.skills, cfg.epsilon)
    for notice in result.notices:
        print(f"notice: {notice}")
    bundle = result.bundle
    written = emit_csv(bundle, cfg.out_dir) + emit_charts(bundle, cfg.out_dir)

    for label, rows in (("syllabi", bundle.coverage_edu), ("job posts", bundle.coverage_job)):
        if rows:
            top = ", ".join(f"{r.skill} {r.pct:.1f}%" for r in rows[:5])
            print(f"top skills in {label}: {top}")
    if bundle.gaps:
        largest = sorted(bundle.gaps, key=lambda g: (-g.gap, g.skill))[:5]
        print("largest gaps: " + ", ".join(f"{g.skill} {g.gap:.1f}pp" for g in largest))
    print(f"wrote {len(written)} files to {cfg.out_dir}")
    return written


def cmd_report(cfg: RunConfig) -> list[Path]:
    written = emit_charts(read_csv_bundle(cfg.out_dir), cfg.out_dir)
    print(f"rendered {len(written)} charts in {cfg.out_dir}")
    return written


def cmd_dict_check(path: Path | None) -> SkillDictionary:
    dictionary = load_dictionary(path) if path else load_default_dictionary()
    n_keywords = sum(len(e.keywords) for e in dictionary.entries)
    print(f"OK: {len(dictionary)} skills, {n_keywords} keywords, "
          f"{len(dictionary.excluded_keywords)} excluded ({', '.join(dictionary.excluded_keywords)})")
    return dictionary


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cfg = _config(args)
        if args.command == "ingest":
            cmd_ingest(cfg)
        elif args.command == "import":
            cmd_import(cfg)
        elif args.command == "match":
            cmd_match(cfg, args.kind)
        elif args.command == "analyze":
            cmd_analyze(cfg)
        elif args.command == "report":
            cmd_report(cfg)
        elif args.command == "dict-check":
            cmd_dict_check(args.path or cfg.dictionary)
    except (UsageError, ConfigError) as exc:
        print(f"jobgap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, DictionaryError, IngestError, AnalysisError, ReportError, OSError) as exc:
        print(f"jobgap: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
