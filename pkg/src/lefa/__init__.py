"""lefa: tools for Easy-to-Read (lectura fácil) Spanish text simplification.

The package covers the full pipeline: sentence segmentation and
tokenization, embedding-based sentence alignment of original/adapted
document pairs, corpus statistics and interchange formats, a rule-based
guideline linter with Spanish morphology heuristics, LLM simplification
experiment orchestration, and output evaluation.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .aligner import AlignedCorpus, AlignmentConfig, AlignmentPair, align, brute_force_align
from .corpus import CorpusStats, PairFormat, SCHEMA_VERSION, compute_stats, export_pairs, import_pairs
from .embeddings import (
    EmbeddingProviderConfig,
    EmbeddingVector,
    ProviderKind,
    cosine,
    embed_batch,
    normalize,
    read_store,
    text_sha256,
    write_store,
)
from .errors import (
    DimensionMismatch,
    EmptyCorpus,
    EmptyDocument,
    EmptyResponse,
    EndpointError,
    LefaError,
    MissingEmbedding,
    MissingGuidelines,
    MissingResource,
    ParseError,
    ProviderUnavailable,
    SchemaVersionMismatch,
    StageFailure,
)
from .evaluator import (
    ComplianceDelta,
    ErrorClass,
    ErrorInstance,
    GuidelineCounts,
    compare_compliance,
    detect_agreement_errors,
    detect_term_inconsistency,
    detect_unexplained_terms,
)
from .linter import (
    ApplicabilityReport,
    Diagnostic,
    LintConfig,
    Severity,
    Verdict,
    applicability,
    lint_document,
    lint_sentence,
    load_frequency_lexicon,
    load_lint_config,
)
from .morph import (
    MorphLexicon,
    VerbFormClass,
    classify_verb_form,
    detect_compound,
    detect_double_negation,
    detect_impersonal,
    detect_passive,
    detect_superlative,
    detect_verb_chain,
    load_lexicon,
)
from .segmenter import SegmenterConfig, segment, segment_document, tokenize, tokenize_document
from .simplify import (
    BASE_PROMPT_EN,
    BASE_PROMPT_ES,
    ExperimentConfig,
    PromptKind,
    SimplificationResult,
    build_prompt,
    default_guideline_catalog,
    simplify,
    simplify_and_audit,
)
from .textmodel import (
    ALL_GUIDELINE_IDS,
    CHECKABLE_GUIDELINE_IDS,
    GUIDELINES,
    Checkability,
    Document,
    Guideline,
    Role,
    Sentence,
    Theme,
    Token,
    TokenKind,
    document_from_dict,
    document_to_dict,
    document_word_count,
    load_document,
    normalize_text,
    save_document,
    word_count,
)
