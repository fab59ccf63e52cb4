"""Sentence alignment by maximum cosine similarity.

Each original sentence is paired with the adapted sentence whose embedding
is most similar; originals whose best score falls below the threshold are
dropped. ``brute_force_align`` is the deliberately naive reference
implementation kept for oracle testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .embeddings import EmbeddingProviderConfig, cosine, embed_batch
from .errors import EmptyDocument
from .textmodel import Document


class TieBreak(Enum):
    LOWEST_ADAPTED_INDEX = "lowest_adapted_index"


@dataclass(frozen=True)
class AlignmentConfig:
    similarity_threshold: float = 0.5
    allow_many_to_one: bool = True
    tie_break: TieBreak = TieBreak.LOWEST_ADAPTED_INDEX

    def __post_init__(self) -> None:
        if not -1.0 <= self.similarity_threshold <= 1.0:
            raise ValueError("similarity_threshold must lie in [-1, 1]")


@dataclass(frozen=True)
class AlignmentPair:
    original_ref: tuple[str, int]  # (doc_id, sentence_index)
    adapted_ref: tuple[str, int]
    similarity: float
    original_text: str = ""
    adapted_text: str = ""


@dataclass(frozen=True)
class AlignedCorpus:
    pairs: tuple[AlignmentPair, ...]
    dropped_originals: tuple[tuple[tuple[str, int], float], ...] = ()
    stats: object | None = None


def _check_nonempty(original: Document, adapted: Document) -> None:
    if not original.sentences:
        raise EmptyDocument(f"original document {original.id!r} has no sentences")
    if not adapted.sentences:
        raise EmptyDocument(f"adapted document {adapted.id!r} has no sentences")


def _assemble(
    original: Document,
    adapted: Document,
    best: list[tuple[int, float]],
    config: AlignmentConfig,
) -> AlignedCorpus:
    """Turn per-original (argmax index, score) into pairs and drops."""
    matched: dict[int, int | None] = {}  # original index -> adapted index or None
    scores: dict[int, float] = {}
    for oi, (ai, score) in enumerate(best):
        scores[oi] = score
        matched[oi] = ai if score >= config.similarity_threshold else None

    if not config.allow_many_to_one:
        # keep the higher-scoring pair per adapted sentence; losers are
        # dropped outright, never re-matched to their second-best candidate
        winner: dict[int, int] = {}
        for oi in sorted(matched):
            ai = matched[oi]
            if ai is None:
                continue
            if ai not in winner or scores[oi] > scores[winner[ai]]:
                if ai in winner:
                    matched[winner[ai]] = None
                winner[ai] = oi
            else:
                matched[oi] = None

    pairs = []
    dropped = []
    for oi in sorted(matched):
        ai = matched[oi]
        if ai is None:
            dropped.append(((original.id, oi), scores[oi]))
        else:
            pairs.append(
                AlignmentPair(
                    original_ref=(original.id, oi),
                    adapted_ref=(adapted.id, ai),
                    similarity=scores[oi],
                    original_text=original.sentences[oi].text,
                    adapted_text=adapted.sentences[ai].text,
                )
            )
    return AlignedCorpus(pairs=tuple(pairs), dropped_originals=tuple(dropped))


def align(
    original: Document,
    adapted: Document,
    provider: EmbeddingProviderConfig,
    config: AlignmentConfig = AlignmentConfig(),
) -> AlignedCorpus:
    """Pair each original sentence with its best-scoring adapted candidate."""
    _check_nonempty(original, adapted)
    orig_vecs = embed_batch([s.text for s in original.sentences], provider)
    adp_vecs = embed_batch([s.text for s in adapted.sentences], provider)
    om = np.stack([v.as_array() for v in orig_vecs])
    am = np.stack([v.as_array() for v in adp_vecs])
    sims = np.clip(om @ am.T, -1.0, 1.0)  # vectors are unit-norm
    best = []
    for row in sims:
        ai = int(np.argmax(row))  # first maximum = lowest adapted index
        best.append((ai, float(row[ai])))
    return _assemble(original, adapted, best, config)


def brute_force_align(
    original: Document,
    adapted: Document,
    provider: EmbeddingProviderConfig,
    config: AlignmentConfig = AlignmentConfig(),
) -> AlignedCorpus:
    """Reference implementation: plain loops over every sentence pair."""
    _check_nonempty(original, adapted)
    orig_vecs = embed_batch([s.text for s in original.sentences], provider)
    adp_vecs = embed_batch([s.text for s in adapted.sentences], provider)
    best = []
    for ov in orig_vecs:
        best_ai = 0
        best_score = cosine(ov, adp_vecs[0])
        for ai in range(1, len(adp_vecs)):
            score = cosine(ov, adp_vecs[ai])
            if score > best_score:
                best_ai, best_score = ai, score
        best.append((best_ai, best_score))
    return _assemble(original, adapted, best, config)
