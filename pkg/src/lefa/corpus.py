"""Corpus statistics and (de)serialization of aligned sentence pairs.

JSONL is the canonical pair format; TSV is provided for interoperability.
Both round-trip losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .aligner import AlignedCorpus, AlignmentPair
from .errors import EmptyCorpus, ParseError, SchemaVersionMismatch
from .segmenter import SegmenterConfig, DEFAULT_CONFIG, segment, tokenize
from .textmodel import Document, Role, Sentence, Theme, word_count

SCHEMA_VERSION = "1"


class PairFormat(Enum):
    JSONL = "jsonl"
    TSV = "tsv"


@dataclass(frozen=True)
class CorpusStats:
    sentence_count: int
    original_words: int
    adapted_words: int
    mean_original_words_per_sentence: float
    mean_adapted_words_per_sentence: float
    per_theme: dict[Theme, tuple[int, int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "sentence_count": self.sentence_count,
            "original_words": self.original_words,
            "adapted_words": self.adapted_words,
            "mean_original_words_per_sentence": self.mean_original_words_per_sentence,
            "mean_adapted_words_per_sentence": self.mean_adapted_words_per_sentence,
            "per_theme": {
                theme.value: {"text_count": tc, "sentence_count": sc}
                for theme, (tc, sc) in self.per_theme.items()
            },
        }


def _count_words(text: str, config: SegmenterConfig) -> int:
    total = 0
    for sent in segment(text, config):
        total += word_count(tokenize(sent, config))
    return total


def compute_stats(
    corpus: AlignedCorpus | Sequence[Document],
    segmenter_config: SegmenterConfig = DEFAULT_CONFIG,
) -> CorpusStats:
    """Corpus metrics over an aligned corpus or a set of documents."""
    if isinstance(corpus, AlignedCorpus):
        if not corpus.pairs:
            raise EmptyCorpus("aligned corpus has no pairs")
        orig_words = sum(_count_words(p.original_text, segmenter_config) for p in corpus.pairs)
        adp_words = sum(_count_words(p.adapted_text, segmenter_config) for p in corpus.pairs)
        n = len(corpus.pairs)
        return CorpusStats(
            sentence_count=n,
            original_words=orig_words,
            adapted_words=adp_words,
            mean_original_words_per_sentence=orig_words / n,
            mean_adapted_words_per_sentence=adp_words / n,
        )

    documents = list(corpus)
    if not documents or all(not d.sentences for d in documents):
        raise EmptyCorpus("no sentences in document set")
    orig_words = adp_words = 0
    orig_sentences = adp_sentences = 0
    per_theme: dict[Theme, list[int]] = {}
    for doc in documents:
        counts = [word_count(tokenize(s, segmenter_config) if not s.tokens else s) for s in doc.sentences]
        total = sum(counts)
        if doc.role is Role.ORIGINAL:
            orig_words += total
            orig_sentences += len(doc.sentences)
        else:
            adp_words += total
            adp_sentences += len(doc.sentences)
        entry = per_theme.setdefault(doc.theme, [0, 0])
        entry[0] += 1
        entry[1] += len(doc.sentences)
    return CorpusStats(
        sentence_count=orig_sentences + adp_sentences,
        original_words=orig_words,
        adapted_words=adp_words,
        mean_original_words_per_sentence=(orig_words / orig_sentences) if orig_sentences else 0.0,
        mean_adapted_words_per_sentence=(adp_words / adp_sentences) if adp_sentences else 0.0,
        per_theme={t: (tc, sc) for t, (tc, sc) in per_theme.items()},
    )


# ---------------------------------------------------------------------------
# Pair export / import
# ---------------------------------------------------------------------------

_PAIR_FIELDS = ("orig_doc", "orig_idx", "adp_doc", "adp_idx", "score", "orig_text", "adp_text")


def _pair_record(pair: AlignmentPair) -> dict:
    return {
        "orig_doc": pair.original_ref[0],
        "orig_idx": pair.original_ref[1],
        "adp_doc": pair.adapted_ref[0],
        "adp_idx": pair.adapted_ref[1],
        "score": pair.similarity,
        "orig_text": pair.original_text,
        "adp_text": pair.adapted_text,
    }


def _pair_from_record(rec: dict) -> AlignmentPair:
    return AlignmentPair(
        original_ref=(rec["orig_doc"], int(rec["orig_idx"])),
        adapted_ref=(rec["adp_doc"], int(rec["adp_idx"])),
        similarity=float(rec["score"]),
        original_text=rec["orig_text"],
        adapted_text=rec["adp_text"],
    )


def _tsv_escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _tsv_unescape(value: str) -> str:
    out = []
    i = 0
    while i < len(value):
        c = value[i]
        if c == "\\" and i + 1 < len(value):
            nxt = value[i + 1]
            out.append({"t": "\t", "n": "\n", "\\": "\\"}.get(nxt, "\\" + nxt))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def export_pairs(corpus: AlignedCorpus, path, format: PairFormat = PairFormat.JSONL) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if format is PairFormat.JSONL:
            fh.write(json.dumps({"version": SCHEMA_VERSION, "format": "lefa-aligned"}) + "\n")
            for pair in corpus.pairs:
                fh.write(json.dumps(_pair_record(pair), ensure_ascii=False) + "\n")
        else:
            fh.write("\t".join(_PAIR_FIELDS) + "\n")
            for pair in corpus.pairs:
                rec = _pair_record(pair)
                row = [
                    rec["orig_doc"],
                    str(rec["orig_idx"]),
                    rec["adp_doc"],
                    str(rec["adp_idx"]),
                    repr(rec["score"]),
                    rec["orig_text"],
                    rec["adp_text"],
                ]
                fh.write("\t".join(_tsv_escape(v) for v in row) + "\n")


def import_pairs(path, format: PairFormat | None = None) -> AlignedCorpus:
    if format is None:
        format = PairFormat.TSV if str(path).endswith(".tsv") else PairFormat.JSONL
    pairs: list[AlignmentPair] = []
    with open(path, encoding="utf-8") as fh:
        if format is PairFormat.JSONL:
            header_line = fh.readline()
            try:
                header = json.loads(header_line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad header: {exc}", line=1) from exc
            if not isinstance(header, dict) or "version" not in header:
                raise ParseError("missing schema header", line=1)
            if header["version"] != SCHEMA_VERSION:
                raise SchemaVersionMismatch(
                    f"schema version {header['version']!r}, expected {SCHEMA_VERSION!r}"
                )
            for lineno, line in enumerate(fh, start=2):
                line = line.strip()
                if not line:
                    continue
                try:
                    pairs.append(_pair_from_record(json.loads(line)))
                except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
                    raise ParseError(f"bad pair record: {exc}", line=lineno) from exc
        else:
            header = fh.readline().rstrip("\n")
            if header.split("\t") != list(_PAIR_FIELDS):
                raise ParseError("unexpected TSV header", line=1)
            for lineno, line in enumerate(fh, start=2):
                line = line.rstrip("\n")
                if not line:
                    continue
                cols = line.split("\t")
                if len(cols) != len(_PAIR_FIELDS):
                    raise ParseError(
                        f"expected {len(_PAIR_FIELDS)} columns, got {len(cols)}", line=lineno
                    )
                cols = [_tsv_unescape(c) for c in cols]
                try:
                    rec = dict(zip(_PAIR_FIELDS, cols))
                    pairs.append(_pair_from_record(rec))
                except (ValueError, TypeError) as exc:
                    raise ParseError(f"bad pair record: {exc}", line=lineno) from exc
    return AlignedCorpus(pairs=tuple(pairs))
