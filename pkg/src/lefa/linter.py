"""Executable rule set for the 21 Easy-to-Read guidelines.

Mechanical rules (G1, G3, G9) emit Violations; heuristic rules emit
Advisories; unchecked rules (G5, G16) never emit. G6, G13 and G21 are
covered by the G4, G14 and G2 checks respectively and never emit under
their own id.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from . import morph
from .errors import MissingResource
from .morph import MorphLexicon, VerbFormClass
from .segmenter import DEFAULT_CONFIG as DEFAULT_SEGMENTER_CONFIG
from .segmenter import tokenize
from .textmodel import (
    ALL_GUIDELINE_IDS,
    CHECKABLE_GUIDELINE_IDS,
    Checkability,
    Document,
    GUIDELINES,
    Sentence,
    TokenKind,
    word_count,
)


class Severity(Enum):
    VIOLATION = "violation"
    ADVISORY = "advisory"


@dataclass(frozen=True)
class Diagnostic:
    guideline: str
    severity: Severity
    doc_id: str
    sentence_index: int
    span: tuple[int, int]
    message: str
    evidence: str

    def to_dict(self) -> dict:
        return {
            "guideline": self.guideline,
            "severity": self.severity.value,
            "sentence": self.sentence_index,
            "span": [self.span[0], self.span[1]],
            "message": self.message,
            "evidence": self.evidence,
        }


DEFAULT_SUBORDINATORS = frozenset({"que", "cuando", "aunque", "porque", "si", "mientras", "donde", "como"})


@dataclass(frozen=True)
class LintConfig:
    frequency_lexicon: dict[str, int] | None = None
    rare_rank_threshold: int = 5000
    glossary: dict[str, str] | None = None
    synonym_groups: tuple[frozenset[str], ...] = ()
    idiom_list: tuple[str, ...] = ()
    foreign_allowlist: frozenset[str] = frozenset({"kilo", "kiwi", "web", "wifi", "taxi"})
    acronym_allowlist: frozenset[str] = frozenset({"FEMADDI", "LOPIVI"})
    max_simple_sentence_words: int = 25
    max_commas: int = 1
    subordinators: frozenset[str] = DEFAULT_SUBORDINATORS
    morph_lexicon: MorphLexicon = morph.DEFAULT_LEXICON
    enabled: frozenset[str] | None = None  # None = every rule whose resources exist

    def __post_init__(self) -> None:
        if self.rare_rank_threshold <= 0 or self.max_simple_sentence_words <= 0:
            raise ValueError("thresholds must be positive")
        if self.max_commas < 0:
            raise ValueError("max_commas must be non-negative")


_RESOURCE_RULES = {
    "G4": "frequency_lexicon",
    "G8": "frequency_lexicon",
    "G10": "idiom_list",
    "G11": "synonym_groups",
}


def _rule_active(gid: str, config: LintConfig) -> bool:
    resource = _RESOURCE_RULES.get(gid)
    available = resource is None or bool(getattr(config, resource))
    if config.enabled is None:
        return available
    if gid not in config.enabled:
        return False
    if not available:
        raise MissingResource(f"rule {gid} enabled but {resource} is not configured")
    return True


_FINITE_CLASSES = frozenset(
    {
        VerbFormClass.PRESENT_INDICATIVE,
        VerbFormClass.FUTURE_INDICATIVE,
        VerbFormClass.PAST_INDICATIVE,
        VerbFormClass.CONDITIONAL,
        VerbFormClass.SUBJUNCTIVE_PRESENT,
        VerbFormClass.SUBJUNCTIVE_PAST,
        VerbFormClass.IMPERATIVE,
    }
)

_NONPRESENT_CLASSES = frozenset(
    {
        VerbFormClass.FUTURE_INDICATIVE,
        VerbFormClass.CONDITIONAL,
        VerbFormClass.SUBJUNCTIVE_PRESENT,
        VerbFormClass.SUBJUNCTIVE_PAST,
    }
)


def _classes(sentence: Sentence, idx: int, config: LintConfig) -> frozenset[VerbFormClass]:
    token = sentence.tokens[idx]
    if idx > 0 and token.text[:1].isupper():
        return frozenset({VerbFormClass.UNKNOWN})  # proper-noun guard
    return morph.classify_verb_form(token, config.morph_lexicon)


def _check_g1(sentence: Sentence, config: LintConfig):
    tokens = sentence.tokens
    findings = []
    i = 0
    while i < len(tokens):
        if tokens[i].kind is not TokenKind.ACRONYM_CANDIDATE:
            i += 1
            continue
        j = i
        while j + 1 < len(tokens) and tokens[j + 1].kind is TokenKind.ACRONYM_CANDIDATE:
            j += 1
        run = tokens[i : j + 1]
        if len(run) >= 2:
            # multi-word caps runs are phrases, not acronyms, unless every
            # member is explicitly allowlisted
            flagged = not all(t.text in config.acronym_allowlist for t in run)
        else:
            tok = run[0]
            plausible = (
                len([c for c in tok.text if c.isalpha()]) <= 6
                or tok.text in config.acronym_allowlist
            )
            flagged = not plausible
        if flagged:
            findings.append(
                ((run[0].span[0], run[-1].span[1]), "uppercase run is not a plausible acronym")
            )
        i = j + 1
    return findings


def _check_g2(sentence: Sentence, config: LintConfig):
    tokens = sentence.tokens
    commas = [t for t in tokens if t.kind is TokenKind.PUNCTUATION and t.text == ","]
    if len(commas) <= config.max_commas:
        return []
    # at least one comma must introduce a clause carrying a finite verb
    clause_has_verb = False
    after_comma = False
    for idx, tok in enumerate(tokens):
        if tok.kind is TokenKind.PUNCTUATION and tok.text in {",", ";", "."}:
            after_comma = tok.text == ","
            continue
        if after_comma and tok.kind is TokenKind.WORD:
            if _classes(sentence, idx, config) & _FINITE_CLASSES:
                clause_has_verb = True
                break
    if not clause_has_verb:
        return []
    span = (commas[0].span[0], commas[-1].span[1])
    return [(span, f"{len(commas)} commas link independent ideas; split into separate sentences")]


def _check_g3(sentence: Sentence, config: LintConfig):
    return [
        (t.span, "semicolon must not be used")
        for t in sentence.tokens
        if t.kind is TokenKind.PUNCTUATION and t.text == ";"
    ]


def _check_g4(sentence: Sentence, config: LintConfig):
    assert config.frequency_lexicon is not None
    findings = []
    for idx, tok in enumerate(sentence.tokens):
        if tok.kind is not TokenKind.WORD:
            continue
        if idx > 0 and tok.text[:1].isupper():
            continue  # likely proper noun
        surface = tok.text.lower()
        if config.glossary and surface in config.glossary:
            continue
        rank = config.frequency_lexicon.get(surface)
        if rank is None or rank > config.rare_rank_threshold:
            findings.append((tok.span, f"{tok.text!r} is not a commonly used word"))
    return findings


def _check_g7(sentence: Sentence, config: LintConfig):
    return [(span, "superlative form") for span in morph.detect_superlative(sentence)]


def _check_g8(sentence: Sentence, config: LintConfig):
    assert config.frequency_lexicon is not None
    findings = []
    for idx, tok in enumerate(sentence.tokens):
        if tok.kind is not TokenKind.WORD:
            continue
        surface = tok.text.lower()
        if surface in config.foreign_allowlist or surface in config.frequency_lexicon:
            continue
        if idx > 0 and tok.text[:1].isupper():
            continue
        if "k" in surface or "w" in surface or surface.endswith(("ing", "tion")):
            findings.append((tok.span, f"{tok.text!r} looks like a foreign-language word"))
    return findings


def _check_g9(sentence: Sentence, config: LintConfig):
    return [
        (t.span, f"abbreviation {t.text!r}; write the full word")
        for t in sentence.tokens
        if t.kind is TokenKind.ABBREVIATION_CANDIDATE
    ]


def _check_g10(sentence: Sentence, config: LintConfig):
    text = sentence.text.lower()
    findings = []
    for phrase in config.idiom_list:
        for match in re.finditer(r"(?<!\w)" + re.escape(phrase.lower()) + r"(?!\w)", text):
            findings.append((match.span(), f"idiomatic expression {phrase!r}"))
    return findings


def _check_g12(sentence: Sentence, config: LintConfig):
    wc = word_count(sentence)
    subordinators = sum(
        1
        for t in sentence.tokens
        if t.kind is TokenKind.WORD and t.text.lower() in config.subordinators
    )
    reasons = []
    if wc > config.max_simple_sentence_words:
        reasons.append(f"{wc} words exceed the {config.max_simple_sentence_words}-word limit")
    if subordinators >= 2:
        reasons.append(f"{subordinators} subordinating connectors")
    if not reasons:
        return []
    return [((0, len(sentence.text)), "complex sentence: " + "; ".join(reasons))]


def _check_g14(sentence: Sentence, config: LintConfig):
    findings = []
    for idx, tok in enumerate(sentence.tokens):
        if tok.kind is not TokenKind.WORD:
            continue
        classes = _classes(sentence, idx, config)
        # surface-ambiguous forms that may also be present indicative are
        # treated as non-violations
        if VerbFormClass.PRESENT_INDICATIVE in classes:
            continue
        hits = classes & _NONPRESENT_CLASSES
        if hits:
            names = ", ".join(sorted(c.value for c in hits))
            findings.append((tok.span, f"{tok.text!r}: prefer the present indicative ({names})"))
    for span in morph.detect_compound(sentence, config.morph_lexicon):
        findings.append((span, "compound verb tense"))
    return findings


def _check_g15(sentence: Sentence, config: LintConfig):
    return [
        (span, "passive voice; rewrite in the active voice")
        for span in morph.detect_passive(sentence, config.morph_lexicon)
    ]


def _check_g17(sentence: Sentence, config: LintConfig):
    return [
        (span, "impersonal construction; name the subject")
        for span in morph.detect_impersonal(sentence, config.morph_lexicon)
    ]


def _check_g18(sentence: Sentence, config: LintConfig):
    return [
        (span, "two or more verbs in a row (not a modal periphrasis)")
        for span in morph.detect_verb_chain(sentence, config.morph_lexicon)
    ]


def _check_g19(sentence: Sentence, config: LintConfig):
    tokens = sentence.tokens
    if not tokens:
        return []
    first = tokens[0]
    if first.kind is not TokenKind.WORD or first.text.lower() != "no":
        return []
    # simple prohibitions ("No fumar") are explicitly allowed
    if len(tokens) > 1:
        classes = morph.classify_verb_form(tokens[1], config.morph_lexicon)
        if classes & {VerbFormClass.INFINITIVE, VerbFormClass.IMPERATIVE}:
            return []
    return [(first.span, "negative sentence; prefer an affirmative formulation")]


def _check_g20(sentence: Sentence, config: LintConfig):
    return [
        (span, "double negation in one clause")
        for span in morph.detect_double_negation(sentence, config.morph_lexicon)
    ]


_SENTENCE_CHECKS = {
    "G1": _check_g1,
    "G2": _check_g2,
    "G3": _check_g3,
    "G4": _check_g4,
    "G7": _check_g7,
    "G8": _check_g8,
    "G9": _check_g9,
    "G10": _check_g10,
    "G12": _check_g12,
    "G14": _check_g14,
    "G15": _check_g15,
    "G17": _check_g17,
    "G18": _check_g18,
    "G19": _check_g19,
    "G20": _check_g20,
}


def _severity(gid: str) -> Severity:
    if GUIDELINES[gid].checkability is Checkability.MECHANICAL:
        return Severity.VIOLATION
    return Severity.ADVISORY


def _diag_sort_key(d: Diagnostic):
    return (d.sentence_index, d.span[0], int(d.guideline[1:]))


def lint_sentence(
    sentence: Sentence, config: LintConfig = LintConfig(), doc_id: str = ""
) -> list[Diagnostic]:
    """Run every active sentence-level rule; results ordered by position."""
    if not sentence.tokens and sentence.text.strip():
        sentence = tokenize(sentence, DEFAULT_SEGMENTER_CONFIG)
    diagnostics = []
    for gid, check in _SENTENCE_CHECKS.items():
        if not _rule_active(gid, config):
            continue
        for span, message in check(sentence, config):
            diagnostics.append(
                Diagnostic(
                    guideline=gid,
                    severity=_severity(gid),
                    doc_id=doc_id,
                    sentence_index=sentence.index,
                    span=span,
                    message=message,
                    evidence=sentence.text[span[0] : span[1]],
                )
            )
    return sorted(diagnostics, key=_diag_sort_key)


def _surface_matches_member(surface: str, member: str) -> bool:
    surface = surface.lower()
    candidates = {surface}
    if surface.endswith("es") and len(surface) > 4:
        candidates.add(surface[:-2])
    if surface.endswith("s") and len(surface) > 3:
        candidates.add(surface[:-1])
    return member.lower() in candidates


def _check_g11(document: Document, config: LintConfig) -> list[Diagnostic]:
    diagnostics = []
    for group in config.synonym_groups:
        occurrences: dict[str, list[tuple[int, tuple[int, int], str]]] = {}
        for sent in document.sentences:
            for tok in sent.tokens:
                if tok.kind is not TokenKind.WORD:
                    continue
                for member in group:
                    if _surface_matches_member(tok.text, member):
                        occurrences.setdefault(member, []).append((sent.index, tok.span, tok.text))
        if len(occurrences) >= 2:
            all_occ = sorted(
                (occ for occs in occurrences.values() for occ in occs),
                key=lambda o: (o[0], o[1][0]),
            )
            first = all_occ[0]
            listing = ", ".join(f"{text!r}@s{idx}" for idx, _span, text in all_occ)
            diagnostics.append(
                Diagnostic(
                    guideline="G11",
                    severity=Severity.ADVISORY,
                    doc_id=document.id,
                    sentence_index=first[0],
                    span=first[1],
                    message=f"mixed terms for one referent ({sorted(occurrences)}): {listing}",
                    evidence=first[2],
                )
            )
    return diagnostics


def lint_document(document: Document, config: LintConfig = LintConfig()) -> list[Diagnostic]:
    """All sentence diagnostics plus document-level term-consistency (G11)."""
    document = _ensure_tokens(document)
    diagnostics: list[Diagnostic] = []
    for sent in document.sentences:
        diagnostics.extend(lint_sentence(sent, config, doc_id=document.id))
    if _rule_active("G11", config):
        diagnostics.extend(_check_g11(document, config))
    return sorted(diagnostics, key=_diag_sort_key)


def _ensure_tokens(document: Document) -> Document:
    if all(s.tokens or not s.text.strip() for s in document.sentences):
        return document
    from .segmenter import tokenize_document

    return tokenize_document(document)


# ---------------------------------------------------------------------------
# Applicability analysis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    applicable: bool
    reason: str | None = None


@dataclass(frozen=True)
class ApplicabilityReport:
    verdicts: dict[str, Verdict]

    def __post_init__(self) -> None:
        if set(self.verdicts) != set(ALL_GUIDELINE_IDS):
            raise ValueError("report must cover all 21 guidelines")

    def not_applicable_ids(self) -> set[str]:
        return {gid for gid, v in self.verdicts.items() if not v.applicable}

    def to_dict(self) -> dict:
        return {
            gid: {"applicable": v.applicable, **({"reason": v.reason} if v.reason else {})}
            for gid, v in self.verdicts.items()
        }


#: Rules whose applicability depends on a trigger context in the text.
TRIGGER_BASED_IDS = ("G1", "G3", "G7", "G9", "G16")


def applicability(document: Document, config: LintConfig = LintConfig()) -> ApplicabilityReport:
    """Per-guideline applicable / not-applicable verdicts for one document."""
    document = _ensure_tokens(document)
    has_sentences = bool(document.sentences)
    verdicts: dict[str, Verdict] = {}

    def trigger_found(gid: str) -> bool:
        for sent in document.sentences:
            if gid == "G1" and _check_g1(sent, config):
                return True
            if gid == "G3" and _check_g3(sent, config):
                return True
            if gid == "G7" and morph.detect_superlative(sent):
                return True
            if gid == "G9" and any(
                t.kind is TokenKind.ABBREVIATION_CANDIDATE for t in sent.tokens
            ):
                return True
            if gid == "G16":
                for idx, tok in enumerate(sent.tokens):
                    if tok.kind is TokenKind.WORD and VerbFormClass.IMPERATIVE in _classes(
                        sent, idx, config
                    ):
                        return True
        return False

    for gid in ALL_GUIDELINE_IDS:
        rule = GUIDELINES[gid]
        if gid in TRIGGER_BASED_IDS:
            if trigger_found(gid):
                verdicts[gid] = Verdict(True)
            else:
                verdicts[gid] = Verdict(False, reason="trigger context absent from document")
        elif rule.checkability is Checkability.UNCHECKED:
            verdicts[gid] = Verdict(False, reason="not mechanically assessable")
        elif has_sentences:
            verdicts[gid] = Verdict(True)
        else:
            verdicts[gid] = Verdict(False, reason="document has no sentences")
    return ApplicabilityReport(verdicts)


# ---------------------------------------------------------------------------
# Resource loading
# ---------------------------------------------------------------------------

def load_frequency_lexicon(path) -> dict[str, int]:
    lexicon: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            word, _, rank = line.partition("\t")
            lexicon[word.strip().lower()] = int(rank)
    return lexicon


def load_lint_config(resource_dir, **overrides) -> LintConfig:
    """Build a LintConfig from a resource directory.

    Recognized files: frequency_lexicon.tsv, synonym_groups.json,
    glossary.json, idioms.txt, morph_lexicon.json. Missing files simply
    leave the corresponding rules inactive.
    """
    base = Path(resource_dir)
    kwargs: dict = {}
    freq = base / "frequency_lexicon.tsv"
    if freq.exists():
        kwargs["frequency_lexicon"] = load_frequency_lexicon(freq)
    groups = base / "synonym_groups.json"
    if groups.exists():
        data = json.loads(groups.read_text(encoding="utf-8"))
        kwargs["synonym_groups"] = tuple(frozenset(g) for g in data)
    glossary = base / "glossary.json"
    if glossary.exists():
        kwargs["glossary"] = json.loads(glossary.read_text(encoding="utf-8"))
    idioms = base / "idioms.txt"
    if idioms.exists():
        lines = idioms.read_text(encoding="utf-8").splitlines()
        kwargs["idiom_list"] = tuple(l.strip() for l in lines if l.strip() and not l.startswith("#"))
    morph_path = base / "morph_lexicon.json"
    if morph_path.exists():
        kwargs["morph_lexicon"] = morph.load_lexicon(morph_path)
    kwargs.update(overrides)
    return LintConfig(**kwargs)
