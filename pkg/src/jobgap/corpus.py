"""Unified document model for job posts and syllabi, with JSONL persistence."""

from __future__ import annotations

import datetime as dt
import enum
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator


class CorpusError(ValueError):
    """Raised for invalid documents, corpora or corpus files."""


class DocumentKind(str, enum.Enum):
    JOB_POST = "job_post"
    SYLLABUS = "syllabus"


# Field order of a JSONL record; names are part of the file format.
RECORD_FIELDS = ("id", "kind", "text", "published_at", "source", "search_phrase")


@dataclass(frozen=True)
class Document:
    id: str
    kind: DocumentKind
    text: str
    published_at: dt.date | None = None
    source: str = ""
    search_phrase: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.kind, DocumentKind):
            object.__setattr__(self, "kind", DocumentKind(self.kind))
        if not self.id:
            raise CorpusError("document id must be non-empty")
        if not self.text.strip():
            raise CorpusError(f"document {self.id!r} has empty text")
        if self.kind is DocumentKind.JOB_POST and self.published_at is None:
            raise CorpusError(f"job post {self.id!r} lacks published_at")
        if isinstance(self.published_at, dt.datetime):
            object.__setattr__(self, "published_at", self.published_at.date())

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind.value,
            "text": self.text,
            "published_at": self.published_at.isoformat() if self.published_at else None,
            "source": self.source,
            "search_phrase": self.search_phrase,
        }

    @classmethod
    def from_record(cls, record: dict) -> "Document":
        if not isinstance(record, dict):
            raise CorpusError("record is not an object")
        missing = [f for f in ("id", "kind", "text") if f not in record]
        if missing:
            raise CorpusError(f"missing field(s): {', '.join(missing)}")
        published = record.get("published_at")
        try:
            published_at = dt.date.fromisoformat(published[:10]) if published else None
            kind = DocumentKind(record["kind"])
        except (TypeError, ValueError) as exc:
            raise CorpusError(str(exc)) from exc
        return cls(
            id=str(record["id"]),
            kind=kind,
            text=record["text"],
            published_at=published_at,
            source=record.get("source") or "",
            search_phrase=record.get("search_phrase"),
        )


@dataclass(frozen=True)
class Corpus:
    """An ordered, immutable collection of documents of a single kind."""

    kind: DocumentKind
    documents: tuple[Document, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", DocumentKind(self.kind))
        object.__setattr__(self, "documents", tuple(self.documents))
        seen: set[str] = set()
        for doc in self.documents:
            if doc.kind is not self.kind:
                raise CorpusError(f"document {doc.id!r} is a {doc.kind.value}, corpus holds {self.kind.value}")
            if doc.id in seen:
                raise CorpusError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]


class CorpusBuilder:
    """Append-only collector that drops documents whose id was already seen.

    Ingestion writes through one of these; ``build`` freezes it into a Corpus.
    """

    def __init__(self, kind: DocumentKind | str, documents: Iterable[Document] = ()) -> None:
        self.kind = DocumentKind(kind)
        self._docs: list[Document] = []
        self._ids: set[str] = set()
        for doc in documents:
            self.add(doc)

    def add(self, doc: Document) -> bool:
        if doc.kind is not self.kind:
            raise CorpusError(f"cannot add {doc.kind.value} {doc.id!r} to a {self.kind.value} corpus")
        if doc.id in self._ids:
            return False
        self._ids.add(doc.id)
        self._docs.append(doc)
        return True

    def __len__(self) -> int:
        return len(self._docs)

    def __contains__(self, doc_id: object) -> bool:
        return doc_id in self._ids

    def build(self, sort_by_id: bool = False) -> Corpus:
        docs = sorted(self._docs, key=lambda d: d.id) if sort_by_id else self._docs
        return Corpus(self.kind, tuple(docs))


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    path = Path(path)
    lines = [json.dumps(doc.to_record(), ensure_ascii=False) + "\n" for doc in corpus]
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.writelines(lines)
    except OSError as exc:
        raise CorpusError(f"cannot write corpus to {path}: {exc}") from exc


def load_corpus(path: str | Path, kind: DocumentKind | str | None = None) -> Corpus:
    """Read a JSONL corpus file.

    ``kind`` is only consulted for empty files, where it cannot be inferred;
    it defaults to job posts there.  For non-empty files it must agree with the
    records if given.
    """
    path = Path(path)
    docs: list[Document] = []
    first_line: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                doc = Document.from_record(json.loads(line))
            except (json.JSONDecodeError, CorpusError) as exc:
                raise CorpusError(f"{path}:{lineno}: malformed record: {exc}") from exc
            if doc.id in first_line:
                raise CorpusError(
                    f"{path}:{lineno}: duplicate id {doc.id!r} (first seen on line {first_line[doc.id]})"
                )
            first_line[doc.id] = lineno
            docs.append(doc)
    if docs:
        corpus_kind = docs[0].kind
        if kind is not None and DocumentKind(kind) is not corpus_kind:
            raise CorpusError(f"{path}: expected {DocumentKind(kind).value} corpus, found {corpus_kind.value}")
    else:
        corpus_kind = DocumentKind(kind) if kind is not None else DocumentKind.JOB_POST
    return Corpus(corpus_kind, tuple(docs))


def deduplicate(corpus: Corpus | Iterable[Document], kind: DocumentKind | str | None = None) -> Corpus:
    """Keep the first occurrence of every id, preserving order."""
    if isinstance(corpus, Corpus):
        kind, docs = corpus.kind, corpus.documents
    else:
        docs = tuple(corpus)
        if kind is None:
            if not docs:
                raise CorpusError("kind is required to deduplicate an empty document list")
            kind = docs[0].kind
    return CorpusBuilder(kind, docs).build()
