"""Output-error taxonomy and gold-vs-candidate compliance comparison.

Three error classes are detected: determiner/noun agreement errors, term
inconsistency (same referent named by different words, guideline G11) and
technical terms left unexplained (guideline G6).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import linter
from .linter import Diagnostic, LintConfig, Severity, lint_document
from .textmodel import ALL_GUIDELINE_IDS, Document, TokenKind


class ErrorClass(Enum):
    AGREEMENT_ERROR = "agreement_error"
    TERM_INCONSISTENCY = "term_inconsistency"
    UNEXPLAINED_TERM = "unexplained_term"


_RELATED_GUIDELINE = {
    ErrorClass.AGREEMENT_ERROR: None,
    ErrorClass.TERM_INCONSISTENCY: "G11",
    ErrorClass.UNEXPLAINED_TERM: "G6",
}


@dataclass(frozen=True)
class ErrorInstance:
    error_class: ErrorClass
    doc_id: str
    sentence_index: int
    span: tuple[int, int]
    detail: str

    @property
    def related_guideline(self) -> str | None:
        return _RELATED_GUIDELINE[self.error_class]

    def to_dict(self) -> dict:
        return {
            "error_class": self.error_class.value,
            "doc": self.doc_id,
            "sentence": self.sentence_index,
            "span": [self.span[0], self.span[1]],
            "detail": self.detail,
            "related_guideline": self.related_guideline,
        }


# determiner -> (number, gender)
_DETERMINERS = {
    "el": ("sg", "m"),
    "la": ("sg", "f"),
    "los": ("pl", "m"),
    "las": ("pl", "f"),
    "un": ("sg", "m"),
    "una": ("sg", "f"),
    "unos": ("pl", "m"),
    "unas": ("pl", "f"),
}

#: Nouns whose surface shape misleads the agreement heuristics: feminine
#: nouns taking "el" (agua), -a masculines (problema), -o feminines (mano),
#: singular -s words (crisis, lunes).
DEFAULT_AGREEMENT_EXCEPTIONS = frozenset(
    {
        "agua", "águila", "alma", "hacha", "área", "aula", "arma", "hada", "ala", "ama", "acta",
        "día", "mapa", "problema", "tema", "sistema", "idioma", "planeta", "programa", "clima",
        "poema", "drama", "deportista", "futbolista", "atleta",
        "mano", "foto", "moto", "radio",
        "crisis", "análisis", "tesis", "dosis", "virus", "paréntesis",
        "lunes", "martes", "miércoles", "jueves", "viernes",
        "país", "mes", "gas", "autobús", "interés", "inglés", "adiós",
    }
)


def _noun_number(word: str) -> str | None:
    if len(word) >= 5 and word.endswith(("os", "as", "es")):
        return "pl"
    if not word.endswith("s"):
        return "sg"
    return None


def _noun_gender(word: str) -> str | None:
    if word.endswith(("o", "os")):
        return "m"
    if word.endswith(("a", "as")):
        return "f"
    return None


def detect_agreement_errors(
    document: Document,
    exceptions: frozenset[str] = DEFAULT_AGREEMENT_EXCEPTIONS,
) -> list[ErrorInstance]:
    """Determiner/noun pairs whose number or gender disagree."""
    document = linter._ensure_tokens(document)
    findings = []
    for sent in document.sentences:
        tokens = sent.tokens
        for i, tok in enumerate(tokens):
            if tok.kind is not TokenKind.WORD:
                continue
            det = _DETERMINERS.get(tok.text.lower())
            if det is None or i + 1 >= len(tokens):
                continue
            noun_tok = tokens[i + 1]
            if noun_tok.kind is not TokenKind.WORD or noun_tok.text[:1].isupper():
                continue
            noun = noun_tok.text.lower()
            if noun in exceptions:
                continue
            det_num, det_gen = det
            noun_num = _noun_number(noun)
            noun_gen = _noun_gender(noun)
            problems = []
            if noun_num is not None and noun_num != det_num:
                problems.append(f"number ({det_num} determiner, {noun_num} noun)")
            if noun_gen is not None and noun_gen != det_gen:
                problems.append(f"gender ({det_gen} determiner, {noun_gen} noun)")
            if problems:
                findings.append(
                    ErrorInstance(
                        error_class=ErrorClass.AGREEMENT_ERROR,
                        doc_id=document.id,
                        sentence_index=sent.index,
                        span=(tok.span[0], noun_tok.span[1]),
                        detail=f"{tok.text!r} + {noun_tok.text!r}: " + "; ".join(problems),
                    )
                )
    return findings


def detect_term_inconsistency(
    document: Document, synonym_groups: tuple[frozenset[str], ...]
) -> list[ErrorInstance]:
    """One instance per synonym group with two or more distinct members present.

    Shares the linter's G11 trigger so both always agree.
    """
    config = LintConfig(synonym_groups=tuple(synonym_groups))
    document = linter._ensure_tokens(document)
    return [
        ErrorInstance(
            error_class=ErrorClass.TERM_INCONSISTENCY,
            doc_id=diag.doc_id,
            sentence_index=diag.sentence_index,
            span=diag.span,
            detail=diag.message,
        )
        for diag in linter._check_g11(document, config)
    ]


_DEFINITION_MARKERS = frozenset({"es", "son", "significa", "significan"})


def _term_is_defined(document: Document, term: str) -> bool:
    for sent in document.sentences:
        tokens = sent.tokens
        for i, tok in enumerate(tokens):
            if tok.kind is not TokenKind.WORD:
                continue
            if not linter._surface_matches_member(tok.text, term):
                continue
            if i + 1 < len(tokens):
                nxt = tokens[i + 1]
                if nxt.kind is TokenKind.WORD and nxt.text.lower() in _DEFINITION_MARKERS:
                    return True
                if nxt.kind is TokenKind.PUNCTUATION and nxt.text == ":":
                    return True
    return False


def detect_unexplained_terms(
    document: Document,
    glossary: dict[str, str],
    frequency_lexicon: dict[str, int] | None = None,
    rare_rank_threshold: int = 5000,
) -> list[ErrorInstance]:
    """Technical terms used without an accompanying definition sentence."""
    document = linter._ensure_tokens(document)
    # candidate terms: glossary entries, plus rare words when a frequency
    # lexicon is available
    candidates: dict[str, tuple[int, tuple[int, int], str]] = {}
    for sent in document.sentences:
        for i, tok in enumerate(sent.tokens):
            if tok.kind is not TokenKind.WORD:
                continue
            if i > 0 and tok.text[:1].isupper():
                continue  # likely proper noun
            surface = tok.text.lower()
            term = None
            for key in glossary:
                if linter._surface_matches_member(surface, key):
                    term = key
                    break
            if term is None and frequency_lexicon is not None:
                rank = frequency_lexicon.get(surface)
                if rank is not None and rank > rare_rank_threshold:
                    term = surface
            if term is not None and term not in candidates:
                candidates[term] = (sent.index, tok.span, tok.text)
    findings = []
    for term, (sent_idx, span, surface) in sorted(candidates.items()):
        if _term_is_defined(document, term):
            continue
        findings.append(
            ErrorInstance(
                error_class=ErrorClass.UNEXPLAINED_TERM,
                doc_id=document.id,
                sentence_index=sent_idx,
                span=span,
                detail=f"technical term {surface!r} is used but never explained",
            )
        )
    return findings


@dataclass(frozen=True)
class GuidelineCounts:
    gold_violations: int = 0
    gold_advisories: int = 0
    candidate_violations: int = 0
    candidate_advisories: int = 0

    @property
    def net_delta(self) -> int:
        gold = self.gold_violations + self.gold_advisories
        cand = self.candidate_violations + self.candidate_advisories
        return cand - gold


@dataclass(frozen=True)
class ComplianceDelta:
    per_guideline: dict[str, GuidelineCounts]

    def to_dict(self) -> dict:
        return {
            gid: {
                "gold_violations": c.gold_violations,
                "gold_advisories": c.gold_advisories,
                "candidate_violations": c.candidate_violations,
                "candidate_advisories": c.candidate_advisories,
                "net_delta": c.net_delta,
            }
            for gid, c in self.per_guideline.items()
        }


def _tally(diagnostics: list[Diagnostic]) -> dict[str, list[int]]:
    counts = {gid: [0, 0] for gid in ALL_GUIDELINE_IDS}
    for diag in diagnostics:
        counts[diag.guideline][0 if diag.severity is Severity.VIOLATION else 1] += 1
    return counts


def compare_compliance(
    gold: Document, candidate: Document, config: LintConfig = LintConfig()
) -> ComplianceDelta:
    """Lint both documents and tabulate per-guideline diagnostic counts."""
    gold_counts = _tally(lint_document(gold, config))
    cand_counts = _tally(lint_document(candidate, config))
    return ComplianceDelta(
        per_guideline={
            gid: GuidelineCounts(
                gold_violations=gold_counts[gid][0],
                gold_advisories=gold_counts[gid][1],
                candidate_violations=cand_counts[gid][0],
                candidate_advisories=cand_counts[gid][1],
            )
            for gid in ALL_GUIDELINE_IDS
        }
    )
