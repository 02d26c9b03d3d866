"""Corpus ingestion from a paginated job-ad archive and from syllabus files."""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import logging
import os
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping

import httpx

from jobgap.corpus import CorpusBuilder, CorpusError, Document, DocumentKind

log = logging.getLogger(__name__)

SEARCH_PHRASES = (
    "software engineer",
    "software developer",
    "systemutvecklare",
    "mjukvaruutvecklare",
    "programmerare",
)

API_KEY_ENV = "JOBGAP_API_KEY"
FIXTURE_BASE_URL = "http://archive.fixture"
RETRY_ATTEMPTS = 3
RETRY_BACKOFF = 0.5  # seconds, doubled per retry
MAX_CONSECUTIVE_PAGE_FAILURES = 3

_WS = re.compile(r"\s+")


class IngestError(RuntimeError):
    pass


@dataclass(frozen=True)
class ArchiveQuery:
    phrase: str
    date_from: dt.date
    date_to: dt.date
    page_size: int = 100
    base_url: str = FIXTURE_BASE_URL

    def __post_init__(self) -> None:
        if self.date_from > self.date_to:
            raise ValueError(f"date_from {self.date_from} is after date_to {self.date_to}")
        if self.page_size < 1:
            raise ValueError("page_size must be at least 1")

    def params(self, offset: int) -> dict[str, str | int]:
        return {
            "q": self.phrase,
            "published-after": self.date_from.isoformat(),
            "published-before": self.date_to.isoformat(),
            "limit": self.page_size,
            "offset": offset,
        }


@dataclass
class IngestReport:
    fetched: int = 0
    kept_after_dedup: int = 0
    pages: int = 0
    failures: list[tuple[object, str]] = field(default_factory=list)

    def merge(self, other: "IngestReport") -> "IngestReport":
        return IngestReport(
            self.fetched + other.fetched,
            self.kept_after_dedup + other.kept_after_dedup,
            self.pages + other.pages,
            self.failures + other.failures,
        )


def normalize_whitespace(text: str) -> str:
    return _WS.sub(" ", text).strip()


def _parse_date(value: object) -> dt.date:
    if not isinstance(value, str) or len(value) < 10:
        raise ValueError(f"bad publication_date {value!r}")
    return dt.date.fromisoformat(value[:10])


def ad_to_document(record: Mapping, phrase: str | None, source: str) -> Document:
    """Convert one archive record; raises ValueError/CorpusError when malformed."""
    if not isinstance(record, Mapping):
        raise ValueError("record is not an object")
    ad_id = record.get("id")
    if ad_id is None or str(ad_id) == "":
        raise ValueError("record has no id")
    headline = record.get("headline") or ""
    description = record.get("description") or ""
    if not isinstance(headline, str) or not isinstance(description, str):
        raise ValueError(f"ad {ad_id}: headline/description must be strings")
    text = "\n".join(part for part in (headline, description) if part)
    return Document(
        id=str(ad_id),
        kind=DocumentKind.JOB_POST,
        text=text,
        published_at=_parse_date(record.get("publication_date")),
        source=source,
        search_phrase=phrase,
    )


# --- in-process archive ---------------------------------------------------


class FixtureArchive:
    """An in-memory ad archive speaking the same wire format as the live API.

    An ad matches a query phrase when the phrase occurs (case-insensitively)
    in its headline or description.  Results are ordered by publication date
    and id so that offset pagination is stable.
    """

    def __init__(self, records: Iterable[Mapping]) -> None:
        self.records = [dict(r) for r in records]
        self.requests: list[httpx.Request] = []

    def __len__(self) -> int:
        return len(self.records)

    def search(self, phrase: str | None, date_from: dt.date | None, date_to: dt.date | None) -> list[dict]:
        needle = (phrase or "").casefold()
        hits = []
        for r in self.records:
            try:
                published = _parse_date(r.get("publication_date"))
            except ValueError:
                published = None
            if published is not None:
                if date_from and published < date_from:
                    continue
                if date_to and published > date_to:
                    continue
            haystack = f"{r.get('headline') or ''}\n{r.get('description') or ''}".casefold()
            if needle and needle not in haystack:
                continue
            hits.append(r)
        hits.sort(key=lambda r: (str(r.get("publication_date")), str(r.get("id"))))
        return hits

    def page_count(self, page_size: int, phrase: str | None = None,
                   date_from: dt.date | None = None, date_to: dt.date | None = None) -> int:
        n = len(self.search(phrase, date_from, date_to))
        return -(-n // page_size)

    def handle(self, request: httpx.Request) -> httpx.Response:
        self.requests.append(request)
        p = request.url.params
        try:
            date_from = dt.date.fromisoformat(p["published-after"]) if "published-after" in p else None
            date_to = dt.date.fromisoformat(p["published-before"]) if "published-before" in p else None
            limit = int(p.get("limit", "100"))
            offset = int(p.get("offset", "0"))
        except ValueError as exc:
            return httpx.Response(400, json={"error": str(exc)})
        hits = self.search(p.get("q"), date_from, date_to)
        return httpx.Response(200, json=hits[offset : offset + limit])

    def transport(self) -> httpx.MockTransport:
        return httpx.MockTransport(self.handle)

    def client(self, **kwargs) -> httpx.Client:
        return httpx.Client(transport=self.transport(), base_url=FIXTURE_BASE_URL, **kwargs)


def load_fixture_archive(path: str | Path) -> FixtureArchive:
    """Read a fixture file: a JSON array of ad records, or one record per line."""
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    try:
        if stripped.startswith("["):
            records = json.loads(stripped)
        else:
            records = [json.loads(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as exc:
        raise IngestError(f"{path}: malformed archive fixture: {exc}") from exc
    if not all(isinstance(r, dict) for r in records):
        raise IngestError(f"{path}: every fixture record must be an object")
    return FixtureArchive(records)


# --- HTTP client -----------------------------------------------------------


def make_client(base_url: str, fixture: FixtureArchive | None = None, timeout: float = 30.0) -> httpx.Client:
    headers = {"Accept": "application/json"}
    api_key = os.environ.get(API_KEY_ENV)
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"
    if fixture is not None:
        return httpx.Client(transport=fixture.transport(), base_url=base_url, headers=headers, timeout=timeout)
    return httpx.Client(base_url=base_url, headers=headers, timeout=timeout)


def _get_page(
    client: httpx.Client,
    params: dict,
    attempts: int,
    backoff: float,
    sleep: Callable[[float], None],
) -> list:
    delay = backoff
    for attempt in range(1, attempts + 1):
        try:
            response = client.get("", params=params)
            response.raise_for_status()
            body = response.json()
            if isinstance(body, dict) and "hits" in body:
                body = body["hits"]
            if not isinstance(body, list):
                raise IngestError("response body is not a record list")
            return body
        except (httpx.HTTPError, ValueError, IngestError) as exc:
            if attempt == attempts:
                raise IngestError(f"{type(exc).__name__}: {exc}") from exc
            log.warning("page offset=%s attempt %d failed (%s); retrying in %.1fs",
                        params.get("offset"), attempt, exc, delay)
            sleep(delay)
            delay *= 2
    raise AssertionError("unreachable")


def fetch_job_posts(
    query: ArchiveQuery,
    sink: CorpusBuilder,
    client: httpx.Client | None = None,
    *,
    attempts: int = RETRY_ATTEMPTS,
    backoff: float = RETRY_BACKOFF,
    sleep: Callable[[float], None] = time.sleep,
) -> IngestReport:
    """Page through the archive for one search phrase and append ads to ``sink``.

    Paging stops at the first page shorter than ``page_size``.  A page that
    still fails after ``attempts`` tries is recorded and skipped; after
    several consecutive failed pages the phrase is abandoned.
    """
    if sink.kind is not DocumentKind.JOB_POST:
        raise IngestError("job posts can only be appended to a job_post corpus")
    own_client = client is None
    if own_client:
        client = make_client(query.base_url)
    report = IngestReport()
    offset = 0
    page_no = 0
    consecutive_failures = 0
    try:
        while True:
            page_no += 1
            report.pages += 1
            try:
                records = _get_page(client, query.params(offset), attempts, backoff, sleep)
            except IngestError as exc:
                report.failures.append((page_no, str(exc)))
                consecutive_failures += 1
                if consecutive_failures >= MAX_CONSECUTIVE_PAGE_FAILURES:
                    report.failures.append((page_no, "giving up after consecutive page failures"))
                    break
                offset += query.page_size
                continue
            consecutive_failures = 0
            for record in records:
                try:
                    doc = ad_to_document(record, query.phrase, query.base_url)
                except (ValueError, CorpusError) as exc:
                    report.failures.append((page_no, f"skipped record: {exc}"))
                    continue
                if not query.date_from <= doc.published_at <= query.date_to:
                    continue
                report.fetched += 1
                if sink.add(doc):
                    report.kept_after_dedup += 1
            if len(records) < query.page_size:
                break
            offset += query.page_size
    finally:
        if own_client:
            client.close()
    return report


# --- file import -------------------------------------------------------------


def extract_pdf(path: Path) -> str:
    from pypdf import PdfReader

    reader = PdfReader(str(path))
    return "\n".join(page.extract_text() or "" for page in reader.pages)


def extract_txt(path: Path) -> str:
    return path.read_text(encoding="utf-8")


EXTRACTORS: dict[str, Callable[[Path], str]] = {
    ".pdf": extract_pdf,
    ".txt": extract_txt,
}


def import_text_dir(
    path: str | Path,
    kind: DocumentKind | str,
    sink: CorpusBuilder,
    extractors: Mapping[str, Callable[[Path], str]] | None = None,
) -> IngestReport:
    """Convert every supported file in ``path`` (non-recursive) to a document.

    Document ids are the SHA-256 of the file bytes.  Extracted text is
    whitespace-normalized.
    """
    directory = Path(path)
    if not directory.is_dir():
        raise IngestError(f"{directory} is not a directory")
    kind = DocumentKind(kind)
    if kind is not DocumentKind.SYLLABUS:
        raise IngestError("only undated syllabus documents can be imported from files")
    extractors = EXTRACTORS if extractors is None else extractors
    report = IngestReport()
    for file in sorted(p for p in directory.iterdir() if p.is_file()):
        extractor = extractors.get(file.suffix.lower())
        if extractor is None:
            continue
        report.pages += 1
        try:
            digest = hashlib.sha256(file.read_bytes()).hexdigest()
            text = normalize_whitespace(extractor(file))
            if not text:
                raise IngestError("no extractable text")
            doc = Document(id=digest, kind=kind, text=text, source=file.name)
        except Exception as exc:  # noqa: BLE001 - any extractor failure is recorded
            report.failures.append((file.name, f"{type(exc).__name__}: {exc}"))
            continue
        report.fetched += 1
        if sink.add(doc):
            report.kept_after_dedup += 1
    return report
