"""End-to-end CLI runs against committed fixtures and golden CSV files."""

import hashlib
import json
import shutil

import pytest

from jobgap.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from jobgap.config import ConfigError, load_config


@pytest.fixture
def workdir(tmp_path, fixtures_dir):
    for name in ("run.yaml", "ads.jsonl"):
        shutil.copy(fixtures_dir / name, tmp_path / name)
    return tmp_path


def _pipeline(workdir, fixtures_dir, out="out", extra=()):
    out_dir = workdir / out
    assert main(["ingest", "--config", str(workdir / "run.yaml"), "--out", str(out_dir)]) == EXIT_OK
    assert main(["import", "--input", str(fixtures_dir / "syllabi"), "--out", str(out_dir)]) == EXIT_OK
    assert main(["analyze", "--jobs", str(out_dir / "jobs.jsonl"), "--syllabi", str(out_dir / "syllabi.jsonl"),
                 "--out", str(out_dir), *extra]) == EXIT_OK
    return out_dir


def test_golden_run(workdir, fixtures_dir, capsys):
    out = _pipeline(workdir, fixtures_dir)
    for golden in sorted((fixtures_dir / "golden").iterdir()):
        assert (out / golden.name).read_bytes() == golden.read_bytes(), golden.name
    printed = capsys.readouterr().out
    assert "top skills in syllabi: SQL 100.0%" in printed
    assert "largest gaps: SQL 87.5pp" in printed


def test_repeat_run_is_identical(workdir, fixtures_dir):
    def digests(out):
        return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(out.iterdir())}

    assert digests(_pipeline(workdir, fixtures_dir, "a")) == digests(_pipeline(workdir, fixtures_dir, "b"))


def test_ingest_fixture_flag(workdir, capsys):
    out = workdir / "o"
    code = main(["ingest", "--archive-fixture", str(workdir / "ads.jsonl"), "--out", str(out), "--page-size", "10"])
    assert code == EXIT_OK
    ids = [json.loads(l)["id"] for l in (out / "jobs.jsonl").read_text().splitlines()]
    assert len(ids) == 24 and ids == sorted(ids)
    assert "total: fetched=25 kept=24" in capsys.readouterr().out


def test_ingest_without_source(tmp_path, capsys):
    assert main(["ingest", "--out", str(tmp_path)]) == EXIT_USAGE
    assert "no data source" in capsys.readouterr().err


def test_flags_override_config(workdir):
    cfg = load_config(workdir / "run.yaml", {"page_size": 7, "date_from": None})
    assert cfg.page_size == 7
    assert str(cfg.date_from) == "2016-01-01"
    assert cfg.archive_fixture == workdir / "ads.jsonl"


def test_bad_config(tmp_path):
    bad = tmp_path / "c.yaml"
    bad.write_text("colour: blue\n")
    with pytest.raises(ConfigError, match="colour"):
        load_config(bad)
    assert main(["analyze", "--config", str(bad)]) == EXIT_USAGE
    assert main(["analyze", "--epsilon", "-1", "--jobs", "x"]) == EXIT_USAGE
    assert main(["analyze", "--from", "2020-01-01", "--to", "2019-01-01", "--jobs", "x"]) == EXIT_USAGE


def test_syllabi_only(workdir, fixtures_dir, capsys):
    out = workdir / "s"
    assert main(["import", "--input", str(fixtures_dir / "syllabi"), "--out", str(out)]) == EXIT_OK
    assert main(["analyze", "--syllabi", str(out / "syllabi.jsonl"), "--out", str(out)]) == EXIT_OK
    assert "interval and trend outputs skipped" in capsys.readouterr().out
    assert len((out / "coverage_edu.csv").read_text().splitlines()) > 1
    assert (out / "trends.csv").read_text() == "skill,m,b,n,trend\n"
    assert (out / "intervals.csv").read_text() == "skill\n"
    assert not (out / "trends.svg").exists()


def test_skills_filter(workdir, fixtures_dir):
    out = _pipeline(workdir, fixtures_dir, extra=("--skills", "Java,Kubernetes"))
    rows = (out / "trends.csv").read_text().splitlines()[1:]
    assert sorted(r.split(",")[0] for r in rows) == ["Java", "Kubernetes"]


def test_missing_inputs_are_named(tmp_path, capsys):
    assert main(["analyze", "--jobs", str(tmp_path / "nope.jsonl")]) == EXIT_DATA
    assert "nope.jsonl" in capsys.readouterr().err
    assert main(["analyze"]) == EXIT_USAGE


def test_match_command(workdir, fixtures_dir):
    out = _pipeline(workdir, fixtures_dir)
    assert main(["match", "--jobs", str(out / "jobs.jsonl"), "--out", str(out / "m")]) == EXIT_OK
    lines = (out / "m" / "matches_job_post.jsonl").read_text().splitlines()
    assert len(lines) == 24
    first = json.loads(lines[0])
    assert set(first) == {"document_id", "skills"}


def test_report_rerenders_charts(workdir, fixtures_dir):
    out = _pipeline(workdir, fixtures_dir)
    before = (out / "trends.svg").read_bytes()
    (out / "trends.svg").unlink()
    assert main(["report", "--out", str(out)]) == EXIT_OK
    assert (out / "trends.svg").exists()
    assert len((out / "trends.svg").read_bytes()) > 0
    assert before  # rendered from rounded CSV values, so not byte-compared


def test_report_without_csv(tmp_path):
    assert main(["report", "--out", str(tmp_path)]) == EXIT_DATA


def test_dict_check(fixtures_dir, tmp_path, capsys):
    assert main(["dict-check"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("OK: 37 skills")
    dup = tmp_path / "dup.yaml"
    dup.write_text("skills:\n  - {name: A, keywords: [x]}\n  - {name: B, keywords: [X]}\n")
    assert main(["dict-check", str(dup)]) == EXIT_DATA
    assert "'X'" in capsys.readouterr().err
    empty = tmp_path / "empty.yaml"
    empty.write_text("")
    assert main(["dict-check", str(empty)]) == EXIT_DATA


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_USAGE


def test_analyze_picks_up_ingested_corpora(workdir, fixtures_dir, capsys):
    reference = _pipeline(workdir, fixtures_dir, "explicit")
    out = workdir / "chained"
    assert main(["ingest", "--config", str(workdir / "run.yaml"), "--out", str(out)]) == EXIT_OK
    assert main(["import", "--input", str(fixtures_dir / "syllabi"), "--out", str(out)]) == EXIT_OK
    assert main(["analyze", "--out", str(out)]) == EXIT_OK
    assert f"using {out / 'jobs.jsonl'}" in capsys.readouterr().err
    for name in ("coverage_edu.csv", "coverage_job.csv", "gaps.csv", "intervals.csv", "trends.csv"):
        assert (out / name).read_bytes() == (reference / name).read_bytes()


def test_no_corpus_anywhere_is_a_usage_error(tmp_path, capsys):
    assert main(["analyze", "--out", str(tmp_path)]) == EXIT_USAGE
    assert "no corpus configured" in capsys.readouterr().err
