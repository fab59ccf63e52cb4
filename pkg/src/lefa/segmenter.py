"""Deterministic rule-based Spanish sentence segmentation and tokenization.

All functions are pure: identical input and config always produce identical
output. No machine-learned components are involved, so alignment built on
top of this segmentation is reproducible.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from importlib import resources as importlib_resources

from .textmodel import Document, Role, Sentence, Theme, Token, TokenKind

_TERMINALS = ".!?"
_CLOSERS = "»\"'”’)]}"
_OPENERS = "¿¡«“‘\"'([{"


def _load_default_abbreviations() -> frozenset[str]:
    data = (
        importlib_resources.files("lefa.resources")
        .joinpath("abbreviations.txt")
        .read_text(encoding="utf-8")
    )
    entries = [line.strip() for line in data.splitlines()]
    return frozenset(e.lower() for e in entries if e and not e.startswith("#"))


DEFAULT_ABBREVIATIONS = _load_default_abbreviations()


@dataclass(frozen=True)
class SegmenterConfig:
    abbreviation_lexicon: frozenset[str] = DEFAULT_ABBREVIATIONS
    ellipsis_is_boundary: bool = False
    newline_is_boundary: bool = True

    def __post_init__(self) -> None:
        bad = [e for e in self.abbreviation_lexicon if not e.endswith(".")]
        if bad:
            raise ValueError(f"abbreviation lexicon entries must end with '.': {bad}")
        # comparisons are case-insensitive
        object.__setattr__(
            self,
            "abbreviation_lexicon",
            frozenset(e.lower() for e in self.abbreviation_lexicon),
        )


DEFAULT_CONFIG = SegmenterConfig()


def _is_abbreviation_dot(text: str, dot: int, lexicon: frozenset[str]) -> bool:
    """True when the '.' at index ``dot`` terminates a lexicon abbreviation."""
    j = dot
    while j > 0 and text[j - 1].isalpha():
        j -= 1
    if j == dot:
        return False
    return (text[j:dot] + ".").lower() in lexicon


def segment(raw_text: str, config: SegmenterConfig = DEFAULT_CONFIG) -> list[Sentence]:
    """Split NFC-normalized text into sentences (without tokens).

    Sentence spans cover every non-whitespace character exactly once.
    """
    if unicodedata.normalize("NFC", raw_text) != raw_text:
        raise ValueError("input must be NFC-normalized")

    boundaries: list[tuple[int, int]] = []  # (start, end) spans
    n = len(raw_text)
    i = 0
    start = -1  # -1 = not inside a sentence
    last_nonws = -1

    def close(end: int) -> None:
        nonlocal start
        if start != -1 and end > start:
            boundaries.append((start, end))
        start = -1

    while i < n:
        c = raw_text[i]
        if c.isspace():
            if c == "\n" and config.newline_is_boundary and start != -1:
                j = i + 1
                while j < n and raw_text[j].isspace():
                    j += 1
                if j < n and (raw_text[j].isupper() or raw_text[j] in "¿¡«“"):
                    close(last_nonws + 1)
            i += 1
            continue
        if start == -1:
            start = i
        last_nonws = i
        if c in _TERMINALS or (c == "…" and config.ellipsis_is_boundary):
            if c == ".":
                # ellipsis spelled as dots
                if i + 1 < n and raw_text[i + 1] == ".":
                    while i < n and raw_text[i] == ".":
                        last_nonws = i
                        i += 1
                    if config.ellipsis_is_boundary:
                        close(i)
                    continue
                # decimal / thousands separator
                if 0 < i < n - 1 and raw_text[i - 1].isdigit() and raw_text[i + 1].isdigit():
                    i += 1
                    continue
                if _is_abbreviation_dot(raw_text, i, config.abbreviation_lexicon):
                    i += 1
                    continue
            # consume terminal run and any attached closers
            i += 1
            while i < n and raw_text[i] in _TERMINALS:
                i += 1
            while i < n and raw_text[i] in _CLOSERS:
                i += 1
            last_nonws = i - 1
            close(i)
            continue
        if c == "…" and not config.ellipsis_is_boundary:
            i += 1
            continue
        i += 1

    close(last_nonws + 1)

    return [
        Sentence(index=k, text=raw_text[s:e], char_span=(s, e))
        for k, (s, e) in enumerate(boundaries)
    ]


def _is_word_char(c: str) -> bool:
    return c.isalpha()


def tokenize(sentence: Sentence, config: SegmenterConfig = DEFAULT_CONFIG) -> Sentence:
    """Attach tokens to a sentence; spans cover all non-whitespace characters."""
    text = sentence.text
    n = len(text)
    tokens: list[Token] = []
    i = 0
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if _is_word_char(c):
            j = i + 1
            while j < n:
                if _is_word_char(text[j]):
                    j += 1
                elif (
                    text[j] in "-'’"
                    and j + 1 < n
                    and _is_word_char(text[j + 1])
                    and _is_word_char(text[j - 1])
                ):
                    j += 1
                else:
                    break
            word = text[i:j]
            if j < n and text[j] == "." and (word + ".").lower() in config.abbreviation_lexicon:
                tokens.append(Token(word + ".", (i, j + 1), TokenKind.ABBREVIATION_CANDIDATE))
                i = j + 1
                continue
            letters = [ch for ch in word if ch.isalpha()]
            if len(letters) >= 2 and all(ch.isupper() for ch in letters):
                kind = TokenKind.ACRONYM_CANDIDATE
            else:
                kind = TokenKind.WORD
            tokens.append(Token(word, (i, j), kind))
            i = j
            continue
        if c.isdigit():
            j = i + 1
            while j < n:
                if text[j].isdigit():
                    j += 1
                elif text[j] in ".," and j + 1 < n and text[j + 1].isdigit():
                    j += 1
                else:
                    break
            tokens.append(Token(text[i:j], (i, j), TokenKind.NUMBER))
            i = j
            continue
        # punctuation: '...' groups into one token, everything else is single
        if c == "." and i + 1 < n and text[i + 1] == ".":
            j = i
            while j < n and text[j] == ".":
                j += 1
            tokens.append(Token(text[i:j], (i, j), TokenKind.PUNCTUATION))
            i = j
            continue
        tokens.append(Token(c, (i, i + 1), TokenKind.PUNCTUATION))
        i += 1
    return sentence.with_tokens(tokens)


def segment_document(
    doc_id: str,
    role: Role,
    theme: Theme,
    raw_text: str,
    config: SegmenterConfig = DEFAULT_CONFIG,
) -> Document:
    """Normalize, segment and tokenize raw text into a Document."""
    normalized = unicodedata.normalize("NFC", raw_text)
    sentences = tuple(tokenize(s, config) for s in segment(normalized, config))
    return Document(id=doc_id, role=role, theme=theme, raw_text=normalized, sentences=sentences)


def tokenize_document(document: Document, config: SegmenterConfig = DEFAULT_CONFIG) -> Document:
    """Return a copy of the document with all sentences tokenized."""
    return Document(
        id=document.id,
        role=document.role,
        theme=document.theme,
        raw_text=document.raw_text,
        sentences=tuple(tokenize(s, config) if not s.tokens else s for s in document.sentences),
    )
