"""Job-market vs. education skill gap analysis."""

from jobgap.corpus import Corpus, CorpusBuilder, Document, DocumentKind, deduplicate, load_corpus, save_corpus
from jobgap.skills import MatchSet, SkillDictionary, SkillEntry, load_dictionary, match_corpus, match_document

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "CorpusBuilder",
    "Document",
    "DocumentKind",
    "MatchSet",
    "SkillDictionary",
    "SkillEntry",
    "deduplicate",
    "load_corpus",
    "load_dictionary",
    "match_corpus",
    "match_document",
    "save_corpus",
]
