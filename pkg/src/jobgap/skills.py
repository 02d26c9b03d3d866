"""Skill dictionary and boundary-aware keyword matching.

A keyword occurs in a text when it appears case-insensitively (ASCII folding
only) with neither neighbouring character belonging to the identifier class:
letters, digits, ``#``, ``+`` and ``.``.  The string edges count as outside
the class.  One relaxation applies on the trailing side: a period that is
itself followed by the end of the text or a non-identifier character ends a
sentence and counts as a boundary.  This keeps "Java" out of "JavaScript",
"Node" out of "Node.js" and ".NET" out of "ASP.NET" while still finding
"C++," or "C#." at the end of a sentence.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import yaml

from jobgap.corpus import Corpus

IDENTIFIER_PUNCT = frozenset("#+.")

# joins documents for corpus-wide scanning; non-identifier, so it acts
# exactly like a text edge
_DOC_SEPARATOR = "\x00"

class DictionaryError(ValueError):
    """Raised when a skill dictionary violates its invariants."""


def fold_case(text: str) -> str:
    """Lower-case ASCII letters only; every other character is kept as-is."""
    if text.isascii():
        return text.lower()
    # bytes.lower() is ASCII-only, and UTF-8 multi-byte sequences never
    # contain ASCII bytes
    return text.encode("utf-8", "surrogatepass").lower().decode("utf-8", "surrogatepass")


def is_identifier_char(ch: str) -> bool:
    return ch.isalnum() or ch in IDENTIFIER_PUNCT


def _ends_at(text: str, end: int) -> bool:
    if end == len(text):
        return True
    ch = text[end]
    if ch == ".":
        return end + 1 == len(text) or not is_identifier_char(text[end + 1])
    return not is_identifier_char(ch)


@dataclass(frozen=True)
class SkillEntry:
    skill: str
    keywords: tuple[str, ...]
    category: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "keywords", tuple(self.keywords))
        if not self.skill:
            raise DictionaryError("skill name must be non-empty")
        if not self.keywords:
            raise DictionaryError(f"skill {self.skill!r} has no keywords")
        for kw in self.keywords:
            if not isinstance(kw, str) or not kw.strip():
                raise DictionaryError(f"skill {self.skill!r} has an empty keyword")
            if any(ch < " " for ch in kw):
                raise DictionaryError(f"keyword {kw!r} of skill {self.skill!r} contains a control character")
            if kw.endswith(".") and not any(ch.isspace() for ch in kw):
                raise DictionaryError(f"keyword {kw!r} of skill {self.skill!r} ends with '.'")


@dataclass(frozen=True)
class SkillDictionary:
    entries: tuple[SkillEntry, ...]
    excluded_keywords: tuple[str, ...] = ()
    _index: tuple[tuple[str, str], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "excluded_keywords", tuple(self.excluded_keywords))
        names: set[str] = set()
        owner: dict[str, str] = {}
        excluded = {fold_case(k): k for k in self.excluded_keywords}
        for entry in self.entries:
            if entry.skill in names:
                raise DictionaryError(f"duplicate skill name {entry.skill!r}")
            names.add(entry.skill)
            for kw in entry.keywords:
                key = fold_case(kw)
                if key in excluded:
                    raise DictionaryError(f"keyword {kw!r} of skill {entry.skill!r} is in the exclusion list")
                if key in owner and owner[key] != entry.skill:
                    raise DictionaryError(
                        f"keyword {kw!r} maps to both {owner[key]!r} and {entry.skill!r}"
                    )
                owner[key] = entry.skill
        # (folded keyword, skill), one pair per distinct keyword
        object.__setattr__(self, "_index", tuple(sorted(owner.items())))

    @property
    def skills(self) -> list[str]:
        return [e.skill for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, skill: str) -> SkillEntry:
        for entry in self.entries:
            if entry.skill == skill:
                return entry
        raise KeyError(skill)

    def with_keyword(self, skill: str, keyword: str) -> "SkillDictionary":
        entries = [
            SkillEntry(e.skill, e.keywords + (keyword,), e.category) if e.skill == skill else e
            for e in self.entries
        ]
        return SkillDictionary(tuple(entries), self.excluded_keywords)

    def to_mapping(self) -> dict:
        return {
            "skills": [
                {"name": e.skill, "category": e.category, "keywords": list(e.keywords)} for e in self.entries
            ],
            "excluded": list(self.excluded_keywords),
        }


@dataclass(frozen=True)
class MatchSet:
    document_id: str
    skills: frozenset[str]

    def __contains__(self, skill: object) -> bool:
        return skill in self.skills


def parse_dictionary(data: object) -> SkillDictionary:
    if not isinstance(data, dict) or "skills" not in data:
        raise DictionaryError("dictionary must be a mapping with a 'skills' list")
    raw_skills = data["skills"]
    if not isinstance(raw_skills, list) or not raw_skills:
        raise DictionaryError("'skills' must be a non-empty list")
    entries = []
    for i, item in enumerate(raw_skills):
        if not isinstance(item, dict) or "name" not in item or "keywords" not in item:
            raise DictionaryError(f"skills[{i}] needs 'name' and 'keywords'")
        keywords = item["keywords"]
        if isinstance(keywords, str) or not isinstance(keywords, list):
            raise DictionaryError(f"skills[{i}] ({item['name']!r}): 'keywords' must be a list")
        entries.append(SkillEntry(str(item["name"]), tuple(str(k) for k in keywords), str(item.get("category") or "")))
    excluded = data.get("excluded") or []
    if not isinstance(excluded, list):
        raise DictionaryError("'excluded' must be a list")
    return SkillDictionary(tuple(entries), tuple(str(k) for k in excluded))


def load_dictionary(path: str | Path) -> SkillDictionary:
    """Load and validate a dictionary file (YAML; JSON is accepted as a subset)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise DictionaryError(f"{path}: not valid YAML/JSON: {exc}") from exc
    if data is None:
        raise DictionaryError(f"{path}: dictionary file is empty")
    return parse_dictionary(data)


def default_dictionary_path() -> Path:
    return Path(str(resources.files("jobgap") / "data" / "default_dictionary.yaml"))


def load_default_dictionary() -> SkillDictionary:
    return load_dictionary(default_dictionary_path())


def _is_boundary_hit(folded_text: str, start: int, end: int) -> bool:
    return (start == 0 or not is_identifier_char(folded_text[start - 1])) and _ends_at(folded_text, end)


def keyword_occurs(folded_text: str, folded_keyword: str) -> bool:
    """Boundary-checked search of an already case-folded keyword."""
    n = len(folded_keyword)
    start = folded_text.find(folded_keyword)
    while start != -1:
        if _is_boundary_hit(folded_text, start, start + n):
            return True
        start = folded_text.find(folded_keyword, start + 1)
    return False


def find_skills(text: str, dictionary: SkillDictionary) -> frozenset[str]:
    folded = fold_case(text)
    found: set[str] = set()
    for keyword, skill in dictionary._index:
        if skill in found or keyword not in folded:
            continue
        if keyword_occurs(folded, keyword):
            found.add(skill)
    return frozenset(found)


def match_document(text: str, dictionary: SkillDictionary, document_id: str = "") -> MatchSet:
    return MatchSet(document_id, find_skills(text, dictionary))


def match_corpus(corpus: Corpus | Sequence, dictionary: SkillDictionary) -> list[MatchSet]:
    """Match every document; same result as :func:`match_document` per document.

    All documents are scanned at once: one ``str.find`` sweep per keyword over
    the separator-joined corpus, skipping to the next document as soon as a
    skill is confirmed.
    """
    docs = list(corpus)
    if not docs:
        return []
    folded = [fold_case(d.text) for d in docs]
    starts = []
    offset = 0
    for text in folded:
        starts.append(offset)
        offset += len(text) + 1
    big = _DOC_SEPARATOR.join(folded)
    found: list[set[str]] = [set() for _ in docs]
    last = len(docs) - 1
    for keyword, skill in dictionary._index:
        n = len(keyword)
        pos = big.find(keyword)
        while pos != -1:
            i = bisect_right(starts, pos) - 1
            if skill in found[i] or _is_boundary_hit(big, pos, pos + n):
                found[i].add(skill)
                if i == last:
                    break
                pos = big.find(keyword, starts[i + 1])
            else:
                pos = big.find(keyword, pos + 1)
    return [MatchSet(d.id, frozenset(f)) for d, f in zip(docs, found)]


def skills_in(matches: Iterable[MatchSet]) -> set[str]:
    out: set[str] = set()
    for m in matches:
        out |= m.skills
    return out
