"""Core text data model: documents, sentences, tokens and the guideline catalog.

All types are immutable after construction and safe to share between
concurrent execution contexts.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .errors import ParseError


class Role(Enum):
    ORIGINAL = "original"
    ADAPTED = "adapted"


class Theme(Enum):
    SPORT = "sport"
    LITERATURE = "literature"
    EXHIBITIONS = "exhibitions"
    COMPETITIVE_EXAMINATIONS = "competitive_examinations"
    OTHER = "other"


class TokenKind(Enum):
    WORD = "word"
    NUMBER = "number"
    PUNCTUATION = "punctuation"
    ACRONYM_CANDIDATE = "acronym_candidate"
    ABBREVIATION_CANDIDATE = "abbreviation_candidate"


#: Token kinds that count toward sentence word counts.
COUNTABLE_KINDS = frozenset(
    {
        TokenKind.WORD,
        TokenKind.NUMBER,
        TokenKind.ACRONYM_CANDIDATE,
        TokenKind.ABBREVIATION_CANDIDATE,
    }
)


@dataclass(frozen=True)
class Token:
    """A single token with character offsets relative to its sentence."""

    text: str
    span: tuple[int, int]
    kind: TokenKind

    def __post_init__(self) -> None:
        start, end = self.span
        if not (0 <= start < end):
            raise ValueError(f"invalid token span {self.span}")
        if self.kind is TokenKind.ACRONYM_CANDIDATE:
            letters = [c for c in self.text if c.isalpha()]
            if len(letters) < 2 or not all(c.isupper() for c in letters):
                raise ValueError(
                    f"acronym candidate {self.text!r} must be all-uppercase, length >= 2"
                )


@dataclass(frozen=True)
class Sentence:
    """A sentence with character offsets into its document's raw text."""

    index: int
    text: str
    char_span: tuple[int, int]
    tokens: tuple[Token, ...] = ()

    def __post_init__(self) -> None:
        start, end = self.char_span
        if start < 0 or end < start:
            raise ValueError(f"invalid sentence span {self.char_span}")
        prev_end = 0
        for tok in self.tokens:
            ts, te = tok.span
            if ts < prev_end:
                raise ValueError("token spans must be non-overlapping and increasing")
            if te > len(self.text):
                raise ValueError("token span exceeds sentence length")
            if self.text[ts:te] != tok.text:
                raise ValueError(
                    f"token text {tok.text!r} does not match slice {self.text[ts:te]!r}"
                )
            prev_end = te

    def with_tokens(self, tokens: Iterable[Token]) -> "Sentence":
        return Sentence(self.index, self.text, self.char_span, tuple(tokens))


@dataclass(frozen=True)
class Document:
    id: str
    role: Role
    theme: Theme
    raw_text: str
    sentences: tuple[Sentence, ...] = ()

    def __post_init__(self) -> None:
        if unicodedata.normalize("NFC", self.raw_text) != self.raw_text:
            raise ValueError("raw_text must be NFC-normalized")
        prev_end = 0
        for sent in self.sentences:
            start, end = sent.char_span
            if start < prev_end:
                raise ValueError("sentence spans must be ordered and non-overlapping")
            if end > len(self.raw_text):
                raise ValueError("sentence span exceeds document length")
            if self.raw_text[start:end] != sent.text:
                raise ValueError(
                    f"sentence {sent.index} text does not match raw_text slice"
                )
            prev_end = end


def word_count(sentence: Sentence) -> int:
    """Number of countable tokens (words, numbers, acronyms, abbreviations)."""
    return sum(1 for tok in sentence.tokens if tok.kind in COUNTABLE_KINDS)


def document_word_count(document: Document) -> int:
    return sum(word_count(s) for s in document.sentences)


# ---------------------------------------------------------------------------
# Guideline catalog
# ---------------------------------------------------------------------------

class Checkability(Enum):
    MECHANICAL = "mechanical"
    HEURISTIC = "heuristic"
    UNCHECKED = "unchecked"


@dataclass(frozen=True)
class Guideline:
    """One Easy-to-Read guideline with its standard cross-references.

    ``covered_by`` names another guideline whose check subsumes this one;
    such guidelines never emit diagnostics under their own id.
    """

    id: str
    text: str
    une_ref: str | None
    ue_ref: str | None
    checkability: Checkability
    covered_by: str | None = None


_M = Checkability.MECHANICAL
_H = Checkability.HEURISTIC
_U = Checkability.UNCHECKED

GUIDELINES: dict[str, Guideline] = {
    g.id: g
    for g in [
        Guideline("G1", "One should not write words or phrases with all their letters in uppercase, except when they are acronyms", "6.1.1", None, _M),
        Guideline("G2", "Linked ideas should be separated by a period instead of a comma", "6.1.4", "5.13", _H),
        Guideline("G3", "The semicolon (;) should not be used", "6.1.7", "5.13", _M),
        Guideline("G4", "Use simple and commonly used language", "6.2.1", "5.1", _H),
        Guideline("G5", "Vocabulary should be appropriate for the end user of the document", "6.2.2", "5.4", _U),
        Guideline("G6", "Avoid using abstract, technical, or complex terms", "6.2.4", "5.2", _H, covered_by="G4"),
        Guideline("G7", "Avoid superlatives", "6.2.8", None, _H),
        Guideline("G8", "Avoid using words in other languages unless they are widely known and properly explained", "6.2.10", "5.17", _H),
        Guideline("G9", "Avoid abbreviations", "6.2.11", "5.20", _M),
        Guideline("G10", "Deter from using expressions or metaphors that all readers may not understand unless they are common in everyday language", "6.2.15", "5.15", _H),
        Guideline("G11", "Use the same word throughout the text to refer to the same object or referent", "6.2.17", "5.12", _H),
        Guideline("G12", "Use simple sentences and avoid complex sentences", "6.3.1", "5.7", _H),
        Guideline("G13", "Use the present indicative whenever possible", "6.3.2", None, _H, covered_by="G14"),
        Guideline("G14", "One should avoid compound or uncommon verb tenses, as well as the use of conditionals and subjunctives", "6.3.3", "5.14", _H),
        Guideline("G15", "Avoid using the passive voice", "6.3.4", "5.10", _H),
        Guideline("G16", "Use the imperative only in clear contexts to avoid confusion with the third person singular of the present indicative", "6.3.6", None, _U),
        Guideline("G17", "One should avoid the use of impersonal sentences", "6.3.7", "5.6", _H),
        Guideline("G18", 'One should avoid using two or more verbs in a row, except for periphrases with modal verbs like "should," "want," "know," and "can."', "6.3.9", "5.1", _H),
        Guideline("G19", "Preferably use affirmative sentences, except in cases such as simple prohibitions, where negative forms may be clearer and more direct", "6.3.10", "5.9", _H),
        Guideline("G20", "Avoid negative forms and double negations", "6.3.11", "5.9", _H),
        Guideline("G21", "Include only one main idea in each sentence", "6.3.15", "5.8", _H, covered_by="G2"),
    ]
}

ALL_GUIDELINE_IDS: tuple[str, ...] = tuple(f"G{i}" for i in range(1, 22))

#: Guidelines that can emit diagnostics under their own id.
CHECKABLE_GUIDELINE_IDS: tuple[str, ...] = tuple(
    gid
    for gid in ALL_GUIDELINE_IDS
    if GUIDELINES[gid].checkability is not _U and GUIDELINES[gid].covered_by is None
)

assert len(GUIDELINES) == 21
assert len(CHECKABLE_GUIDELINE_IDS) == 16


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def normalize_text(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def document_to_dict(document: Document) -> dict:
    return {
        "id": document.id,
        "role": document.role.value,
        "theme": document.theme.value,
        "text": document.raw_text,
        "sentences": [
            {"index": s.index, "span": [s.char_span[0], s.char_span[1]], "text": s.text}
            for s in document.sentences
        ],
    }


def document_from_dict(data: dict, tokenizer=None) -> Document:
    """Rebuild a Document from its JSON form.

    Tokens are not serialized; pass ``tokenizer`` (a Sentence -> Sentence
    callable) to re-tokenize, or leave None for untokenized sentences.
    """
    try:
        sentences = []
        for s in data["sentences"]:
            sent = Sentence(int(s["index"]), s["text"], (int(s["span"][0]), int(s["span"][1])))
            if tokenizer is not None:
                sent = tokenizer(sent)
            sentences.append(sent)
        return Document(
            id=data["id"],
            role=Role(data["role"]),
            theme=Theme(data["theme"]),
            raw_text=data["text"],
            sentences=tuple(sentences),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"malformed document record: {exc}") from exc


def save_document(document: Document, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(document_to_dict(document), fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def load_document(path, tokenizer=None) -> Document:
    with open(path, encoding="utf-8") as fh:
        return document_from_dict(json.load(fh), tokenizer=tokenizer)
