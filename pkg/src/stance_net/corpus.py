"""Document model: loading, cleaning, sentence splitting and tokenization.

News articles and short messages are normalized into the same shape: a
Document holding Sentences holding Tokens.  Everything here is a pure
function of its inputs, and Documents are immutable once built, so they
can be shared freely between threads.
"""

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable

from . import resources
from .jsonl import iter_record_lines


class DocumentKind(Enum):
    ARTICLE = "article"
    MESSAGE = "message"


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    is_capitalized: bool


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class Document:
    id: str
    kind: DocumentKind
    raw_text: str
    sentences: tuple[Sentence, ...]

    def all_tokens(self) -> list[Token]:
        return [tok for sent in self.sentences for tok in sent.tokens]


# A word is letters/digits possibly joined by internal apostrophes or
# hyphens ("don't", "ball-tampering"); everything else is punctuation and
# becomes its own token.  Quote characters must surface as tokens because
# speech detection keys on them.
_WORD_RE = re.compile(r"[A-Za-z0-9]+(?:['’-][A-Za-z0-9]+)*|[^\sA-Za-z0-9]")

QUOTE_CHARS = {'"', "“", "”", "'", "‘", "’", "`"}
# Only double-style quotes delimit reported speech; apostrophes are too
# ambiguous with possessives.
SPEECH_QUOTE_CHARS = {'"', "“", "”"}

_URL_RE = re.compile(r"^(https?://|www\.)", re.IGNORECASE)
_WS_RE = re.compile(r"\s+")


def preprocess_message(raw: str) -> str:
    """Strip hashtags, user mentions and URLs from short-message text.

    Whole '#...' and '@...' tokens are dropped, as are tokens with an
    http(s):// or www. prefix; remaining tokens keep their order with
    single spaces between them.
    """
    kept = []
    for tok in _WS_RE.split(raw.strip()):
        if not tok:
            continue
        if tok.startswith("#") or tok.startswith("@"):
            continue
        if _URL_RE.match(tok):
            continue
        kept.append(tok)
    return " ".join(kept)


def tokenize(text: str) -> list[Token]:
    """Split text into word and punctuation tokens.

    Normalization lowercases and drops a possessive 's so that "Modi's"
    and "Modi" count as the same word.
    """
    tokens = []
    for match in _WORD_RE.finditer(text):
        surface = match.group()
        normalized = surface.lower()
        if len(normalized) > 2 and normalized.endswith(("'s", "’s")):
            normalized = normalized[:-2]
        tokens.append(
            Token(
                surface=surface,
                normalized=normalized,
                is_capitalized=surface[0].isupper(),
            )
        )
    return tokens


def is_word(token: Token) -> bool:
    """True for word tokens, False for punctuation."""
    return any(ch.isalnum() for ch in token.normalized)


def _is_sentence_break(text: str, i: int, abbreviations: frozenset[str]) -> bool:
    """Decide whether the terminator at position ``i`` ends a sentence.

    A break requires whitespace after the terminator (plus optional
    closing quotes) followed by an uppercase letter, digit or opening
    quote.  A period directly after a known abbreviation never breaks.
    """
    ch = text[i]
    if ch == ".":
        j = i - 1
        while j >= 0 and not text[j].isspace():
            j -= 1
        word = text[j + 1 : i]
        if word.rstrip(".").lower() in abbreviations:
            return False
        # Initials like "J." (single capital) do not end sentences.
        if len(word) == 1 and word.isupper():
            return False
    k = i + 1
    while k < len(text) and (text[k] in QUOTE_CHARS or text[k] in ".!?)"):
        k += 1
    if k >= len(text):
        return True
    if not text[k].isspace():
        return False
    while k < len(text) and text[k].isspace():
        k += 1
    if k >= len(text):
        return True
    nxt = text[k]
    return nxt.isupper() or nxt.isdigit() or nxt in QUOTE_CHARS


def split_sentences(
    text: str, abbreviations: frozenset[str] | None = None
) -> list[Sentence]:
    """Split text into sentences on '.', '?' and '!' boundaries.

    Every non-whitespace character of the input ends up in exactly one
    sentence, so re-joining the sentence texts reproduces the input
    modulo whitespace.
    """
    if abbreviations is None:
        abbreviations = resources.abbreviations()
    spans = []
    start = 0
    i = 0
    while i < len(text):
        if text[i] in ".!?" and _is_sentence_break(text, i, abbreviations):
            end = i + 1
            while end < len(text) and (
                text[end] in QUOTE_CHARS or text[end] in ".!?)"
            ):
                end += 1
            spans.append((start, end))
            start = end
            i = end
        else:
            i += 1
    if start < len(text):
        spans.append((start, len(text)))

    sentences = []
    for span_start, span_end in spans:
        chunk = text[span_start:span_end].strip()
        if not chunk:
            continue
        sentences.append(
            Sentence(index=len(sentences), text=chunk, tokens=tuple(tokenize(chunk)))
        )
    return sentences


def build_document(
    doc_id: str,
    text: str,
    kind: DocumentKind,
    abbreviations: frozenset[str] | None = None,
) -> Document:
    """Construct a Document; message text is cleaned before segmentation."""
    body = preprocess_message(text) if kind is DocumentKind.MESSAGE else text
    return Document(
        id=doc_id,
        kind=kind,
        raw_text=text,
        sentences=tuple(split_sentences(body, abbreviations)),
    )


def load_documents(
    path: str | Path,
    kind: DocumentKind,
    abbreviations: frozenset[str] | None = None,
) -> tuple[list[Document], list[str]]:
    """Load one Document per line-delimited {"id", "text"} record.

    Malformed records are skipped and reported in the returned error
    list ("line N: reason"); an unreadable file raises OSError.
    """
    documents: list[Document] = []
    errors: list[str] = []
    seen_ids: set[str] = set()
    for lineno, line in iter_record_lines(path):
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            errors.append(f"line {lineno}: invalid JSON: {exc.msg}")
            continue
        if not isinstance(record, dict) or "id" not in record or "text" not in record:
            errors.append(f"line {lineno}: record must be an object with 'id' and 'text'")
            continue
        doc_id = str(record["id"])
        if doc_id in seen_ids:
            errors.append(f"line {lineno}: duplicate document id '{doc_id}'")
            continue
        seen_ids.add(doc_id)
        documents.append(
            build_document(doc_id, str(record["text"]), kind, abbreviations)
        )
    return documents, errors


def documents_from_records(
    records: Iterable[tuple[str, str]], kind: DocumentKind
) -> list[Document]:
    """Build documents from already-parsed (id, text) pairs."""
    return [build_document(doc_id, text, kind) for doc_id, text in records]
