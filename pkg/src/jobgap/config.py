"""Run configuration: a YAML file plus command-line overrides."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

import yaml

from jobgap.analysis import DEFAULT_EPSILON
from jobgap.ingest import SEARCH_PHRASES
from jobgap.pipeline import DEFAULT_FROM, DEFAULT_TO


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    base_url: str | None = None
    archive_fixture: Path | None = None
    phrases: list[str] = field(default_factory=lambda: list(SEARCH_PHRASES))
    date_from: dt.date = DEFAULT_FROM
    date_to: dt.date = DEFAULT_TO
    dictionary: Path | None = None  # None: packaged default
    job_corpus: Path | None = None
    syllabus_corpus: Path | None = None
    syllabus_dir: Path | None = None
    out_dir: Path = Path("out")
    epsilon: float = DEFAULT_EPSILON
    page_size: int = 100
    skills: list[str] | None = None

    def __post_init__(self) -> None:
        for name in ("archive_fixture", "dictionary", "job_corpus", "syllabus_corpus", "syllabus_dir", "out_dir"):
            value = getattr(self, name)
            if value is not None and not isinstance(value, Path):
                setattr(self, name, Path(value))
        for name in ("date_from", "date_to"):
            value = getattr(self, name)
            if isinstance(value, str):
                try:
                    setattr(self, name, dt.date.fromisoformat(value))
                except ValueError as exc:
                    raise ConfigError(f"{name}: {exc}") from exc
        if isinstance(self.skills, str):
            self.skills = [s.strip() for s in self.skills.split(",") if s.strip()]
        if isinstance(self.phrases, str):
            self.phrases = [self.phrases]
        self.epsilon = float(self.epsilon)
        self.page_size = int(self.page_size)
        if self.epsilon < 0:
            raise ConfigError("epsilon must be >= 0")
        if self.page_size < 1:
            raise ConfigError("page_size must be >= 1")
        if self.date_from > self.date_to:
            raise ConfigError(f"date range is empty: {self.date_from} > {self.date_to}")

    @property
    def has_archive(self) -> bool:
        return self.base_url is not None or self.archive_fixture is not None


FIELD_NAMES = frozenset(f.name for f in fields(RunConfig))


def load_config(path: str | Path | None, overrides: dict[str, Any] | None = None) -> RunConfig:
    """Merge a config file with overrides; ``None`` overrides are ignored.

    Relative paths in the file are resolved against the file's directory.
    """
    values: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: config must be a mapping")
        unknown = sorted(set(data) - FIELD_NAMES)
        if unknown:
            raise ConfigError(f"{path}: unknown config keys: {', '.join(unknown)}")
        for key in ("archive_fixture", "dictionary", "job_corpus", "syllabus_corpus", "syllabus_dir", "out_dir"):
            if data.get(key) is not None:
                data[key] = path.parent / data[key]
        values.update(data)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    try:
        return RunConfig(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
