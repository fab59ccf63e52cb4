"""Rule-based Spanish morphological heuristics.

Suffix classification with an irregular-form override lexicon. This is a
deliberately shallow analyzer: its consumers emit advisory-level findings,
so occasional false positives are tolerable in exchange for having no
model dependency and fully deterministic behavior.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources as importlib_resources

from .textmodel import Sentence, Token, TokenKind

Span = tuple[int, int]


class VerbFormClass(Enum):
    PRESENT_INDICATIVE = "present_indicative"
    FUTURE_INDICATIVE = "future_indicative"
    PAST_INDICATIVE = "past_indicative"
    CONDITIONAL = "conditional"
    SUBJUNCTIVE_PRESENT = "subjunctive_present"
    SUBJUNCTIVE_PAST = "subjunctive_past"
    IMPERATIVE = "imperative"
    INFINITIVE = "infinitive"
    GERUND = "gerund"
    PARTICIPLE = "participle"
    COMPOUND_FORM = "compound_form"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MorphLexicon:
    irregular_forms: dict[str, frozenset[VerbFormClass]]
    modal_infinitives: frozenset[str] = frozenset({"deber", "querer", "saber", "poder"})
    negation_words: frozenset[str] = frozenset(
        {"no", "nunca", "jamás", "nada", "nadie", "ninguno", "ninguna", "ningún", "tampoco"}
    )
    auxiliary_haber_forms: frozenset[str] = frozenset()
    ser_forms: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        missing = {"deber", "querer", "saber", "poder"} - set(self.modal_infinitives)
        if missing:
            raise ValueError(f"modal set must contain the core modals, missing {missing}")


def load_lexicon(path=None) -> MorphLexicon:
    """Load a lexicon from JSON; None loads the bundled seed lexicon."""
    if path is None:
        raw = (
            importlib_resources.files("lefa.resources")
            .joinpath("morph_lexicon.json")
            .read_text(encoding="utf-8")
        )
        data = json.loads(raw)
    else:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    irregular = {
        surface: frozenset(VerbFormClass(c) for c in classes)
        for surface, classes in data.get("irregular_forms", {}).items()
    }
    return MorphLexicon(
        irregular_forms=irregular,
        modal_infinitives=frozenset(data.get("modals", ["deber", "querer", "saber", "poder"])),
        negation_words=frozenset(data.get("negation", [])) or MorphLexicon.__dataclass_fields__["negation_words"].default,
        auxiliary_haber_forms=frozenset(data.get("haber_forms", [])),
        ser_forms=frozenset(data.get("ser_forms", [])),
    )


DEFAULT_LEXICON = load_lexicon()

_UNKNOWN_ONLY = frozenset({VerbFormClass.UNKNOWN})

_FUTURE_SUFFIXES = ("ré", "rás", "rá", "remos", "réis", "rán")
_COND_SUFFIXES = ("ría", "rías", "ríamos", "ríais", "rían")
_SUBJ_PAST_SUFFIXES_LONG = (
    "iera", "ieras", "ieran", "iéramos", "ierais",
    "iese", "ieses", "iesen", "iésemos", "ieseis",
)
_SUBJ_PAST_SUFFIXES_SHORT = ("ara", "aras", "aran", "áramos", "arais", "ase", "ases", "asen", "ásemos", "aseis")
_PARTICIPLE_SUFFIXES = ("ado", "ados", "ada", "adas", "ido", "idos", "ida", "idas")
_GERUND_SUFFIXES = ("ando", "iendo", "yendo")
_PAST_SUFFIXES = ("aron", "ieron", "aba", "abas", "aban", "ábamos")


def _lookup_irregular(surface: str, lexicon: MorphLexicon) -> frozenset[VerbFormClass] | None:
    """Irregular lookup, extended to number/gender inflections of participles.

    Participles inflect like adjectives (escrito, escritos, escrita,
    escritas); finite forms do not, so inflected hits are accepted only
    when the base form is a participle.
    """
    hit = lexicon.irregular_forms.get(surface)
    if hit is not None:
        return hit
    base = surface[:-1] if surface.endswith("s") else surface
    candidates = []
    if base != surface:
        candidates.append(base)
    if base.endswith("a"):
        candidates.append(base[:-1] + "o")
    for candidate in candidates:
        hit = lexicon.irregular_forms.get(candidate)
        if hit is not None and VerbFormClass.PARTICIPLE in hit:
            return hit
    return None


def classify_verb_form(token: Token, lexicon: MorphLexicon = DEFAULT_LEXICON) -> frozenset[VerbFormClass]:
    """Classify a word token; ambiguity yields multiple members, never empty."""
    if token.kind is not TokenKind.WORD:
        return _UNKNOWN_ONLY
    surface = token.text.lower()
    override = _lookup_irregular(surface, lexicon)
    if override is not None:
        return override

    classes: set[VerbFormClass] = set()
    if len(surface) >= 4 and surface.endswith(_COND_SUFFIXES):
        classes.add(VerbFormClass.CONDITIONAL)
    elif len(surface) >= 4 and surface.endswith(_FUTURE_SUFFIXES):
        classes.add(VerbFormClass.FUTURE_INDICATIVE)
    if len(surface) >= 6 and surface.endswith(_SUBJ_PAST_SUFFIXES_SHORT):
        classes.add(VerbFormClass.SUBJUNCTIVE_PAST)
    if len(surface) >= 6 and surface.endswith(_SUBJ_PAST_SUFFIXES_LONG):
        classes.add(VerbFormClass.SUBJUNCTIVE_PAST)
    if len(surface) >= 5 and surface.endswith(_GERUND_SUFFIXES):
        classes.add(VerbFormClass.GERUND)
    elif len(surface) >= 4 and surface.endswith(_PARTICIPLE_SUFFIXES):
        classes.add(VerbFormClass.PARTICIPLE)
    if (len(surface) >= 3 and surface.endswith("ó")) or (
        len(surface) >= 5 and surface.endswith(_PAST_SUFFIXES)
    ):
        classes.add(VerbFormClass.PAST_INDICATIVE)
    if not classes and len(surface) >= 3 and surface.endswith(("ar", "er", "ir")):
        classes.add(VerbFormClass.INFINITIVE)
    return frozenset(classes) if classes else _UNKNOWN_ONLY


_MODAL_STEMS = {
    "deber": ("deb",),
    "querer": ("quer", "quier", "quis"),
    "saber": ("sab", "sep", "sup"),
    "poder": ("pued", "pod", "pud"),
}


def is_modal_form(surface: str, lexicon: MorphLexicon = DEFAULT_LEXICON) -> bool:
    """True when the surface form conjugates one of the modal infinitives."""
    surface = surface.lower()
    for modal in lexicon.modal_infinitives:
        stems = _MODAL_STEMS.get(modal, (modal[:-2],))
        if surface.startswith(stems):
            return True
    return False


_VERBLIKE = frozenset(VerbFormClass) - {VerbFormClass.UNKNOWN}

_ADVERB_BRIDGE = frozenset({"ya", "muy", "bien", "siempre", "nunca", "también", "solo", "sólo"})


def _is_adverb(surface: str) -> bool:
    return surface.endswith("mente") or surface in _ADVERB_BRIDGE


def _word_indices(sentence: Sentence) -> list[int]:
    return [i for i, t in enumerate(sentence.tokens) if t.kind is TokenKind.WORD]


_DETERMINERS = frozenset(
    {
        "el", "la", "los", "las", "un", "una", "unos", "unas",
        "este", "esta", "estos", "estas", "ese", "esa", "esos", "esas",
        "aquel", "aquella", "aquellos", "aquellas",
        "mi", "mis", "tu", "tus", "su", "sus", "nuestro", "nuestra", "nuestros", "nuestras",
    }
)


def _is_verb_token(sentence: Sentence, idx: int, lexicon: MorphLexicon) -> bool:
    """Verb-likeness with noun guards.

    Non-initial capitalized words are treated as proper nouns, and a word
    directly after a determiner is treated as a noun ("el partido").
    """
    token = sentence.tokens[idx]
    if token.kind is not TokenKind.WORD:
        return False
    if idx > 0 and token.text[:1].isupper():
        return False
    if idx > 0:
        prev = sentence.tokens[idx - 1]
        if prev.kind is TokenKind.WORD and prev.text.lower() in _DETERMINERS:
            return False
    return bool(classify_verb_form(token, lexicon) & _VERBLIKE)


def _has_class(sentence: Sentence, idx: int, cls: VerbFormClass, lexicon: MorphLexicon) -> bool:
    return cls in classify_verb_form(sentence.tokens[idx], lexicon)


def detect_passive(sentence: Sentence, lexicon: MorphLexicon = DEFAULT_LEXICON) -> list[Span]:
    """Periphrastic passive: ser form + participle, allowing adverbs between."""
    spans: list[Span] = []
    tokens = sentence.tokens
    for i, tok in enumerate(tokens):
        if tok.kind is not TokenKind.WORD or tok.text.lower() not in lexicon.ser_forms:
            continue
        hops = 0
        j = i + 1
        while j < len(tokens) and hops < 2:
            nxt = tokens[j]
            if nxt.kind is not TokenKind.WORD:
                break
            surface = nxt.text.lower()
            if _has_class(sentence, j, VerbFormClass.PARTICIPLE, lexicon) and surface not in lexicon.ser_forms:
                spans.append((tok.span[0], nxt.span[1]))
                break
            if _is_adverb(surface) or surface in lexicon.ser_forms:
                j += 1
                hops += 1
                continue
            break
    return spans


_SUBJECT_PRONOUNS = frozenset(
    {"yo", "tú", "él", "ella", "ellos", "ellas", "usted", "ustedes", "nosotros", "nosotras"}
)


def _third_person_verbish(sentence: Sentence, idx: int, lexicon: MorphLexicon) -> bool:
    token = sentence.tokens[idx]
    if token.kind is not TokenKind.WORD:
        return False
    classes = classify_verb_form(token, lexicon)
    if classes & (_VERBLIKE - {VerbFormClass.INFINITIVE, VerbFormClass.GERUND, VerbFormClass.PARTICIPLE}):
        return True
    # loose present-tense fallback: se-constructions use 3rd person forms
    surface = token.text.lower()
    return len(surface) >= 4 and surface.endswith(("a", "e", "an", "en")) and classes == _UNKNOWN_ONLY


def detect_impersonal(sentence: Sentence, lexicon: MorphLexicon = DEFAULT_LEXICON) -> list[Span]:
    """Impersonal constructions: agentless 'se' + verb, and 'hay que' + infinitive."""
    spans: list[Span] = []
    tokens = sentence.tokens
    for i, tok in enumerate(tokens):
        if tok.kind is not TokenKind.WORD:
            continue
        surface = tok.text.lower()
        if surface == "se" and i + 1 < len(tokens) and _third_person_verbish(sentence, i + 1, lexicon):
            prev = tokens[i - 1] if i > 0 else None
            if prev is not None and prev.kind is TokenKind.WORD:
                ps = prev.text
                if ps[:1].isupper() or ps.lower() in _SUBJECT_PRONOUNS:
                    continue  # explicit subject candidate: reflexive, not impersonal
            spans.append((tok.span[0], tokens[i + 1].span[1]))
        elif (
            surface == "hay"
            and i + 2 < len(tokens)
            and tokens[i + 1].text.lower() == "que"
            and _has_class(sentence, i + 2, VerbFormClass.INFINITIVE, lexicon)
        ):
            spans.append((tok.span[0], tokens[i + 2].span[1]))
    return spans


def detect_compound(sentence: Sentence, lexicon: MorphLexicon = DEFAULT_LEXICON) -> list[Span]:
    """Compound tenses: auxiliary haber + participle (reported under G14)."""
    spans: list[Span] = []
    tokens = sentence.tokens
    for i, tok in enumerate(tokens):
        if tok.kind is not TokenKind.WORD or tok.text.lower() not in lexicon.auxiliary_haber_forms:
            continue
        j = i + 1
        hops = 0
        while j < len(tokens) and hops < 2:
            nxt = tokens[j]
            if nxt.kind is not TokenKind.WORD:
                break
            if _has_class(sentence, j, VerbFormClass.PARTICIPLE, lexicon):
                spans.append((tok.span[0], nxt.span[1]))
                break
            if _is_adverb(nxt.text.lower()):
                j += 1
                hops += 1
                continue
            break
    return spans


def detect_verb_chain(sentence: Sentence, lexicon: MorphLexicon = DEFAULT_LEXICON) -> list[Span]:
    """Two or more verbs in a row, minus the allowed periphrases.

    Exempt: modal + verb, haber + participle (compound tense, G14 territory)
    and ser + participle (passive, G15 territory).
    """
    tokens = sentence.tokens
    compound = detect_compound(sentence, lexicon)
    passive = detect_passive(sentence, lexicon)

    def inside_exempt(start: int, end: int) -> bool:
        return any(s <= start and end <= e for s, e in compound + passive)

    spans: list[Span] = []
    i = 0
    while i < len(tokens):
        if not _is_verb_token(sentence, i, lexicon):
            i += 1
            continue
        j = i
        while j + 1 < len(tokens) and _is_verb_token(sentence, j + 1, lexicon):
            j += 1
        if j > i:
            first = tokens[i].text.lower()
            span = (tokens[i].span[0], tokens[j].span[1])
            if not is_modal_form(first, lexicon) and not inside_exempt(*span):
                spans.append(span)
        i = j + 1
    return spans


_CLAUSE_BREAKERS = frozenset({",", ";", ".", ":"})


def detect_double_negation(sentence: Sentence, lexicon: MorphLexicon = DEFAULT_LEXICON) -> list[Span]:
    """Two or more negation words inside one comma-delimited clause."""
    spans: list[Span] = []
    clause_hits: list[Token] = []
    for tok in sentence.tokens:
        if tok.kind is TokenKind.PUNCTUATION and tok.text in _CLAUSE_BREAKERS:
            if len(clause_hits) >= 2:
                spans.append((clause_hits[0].span[0], clause_hits[-1].span[1]))
            clause_hits = []
        elif tok.kind is TokenKind.WORD and tok.text.lower() in lexicon.negation_words:
            clause_hits.append(tok)
    if len(clause_hits) >= 2:
        spans.append((clause_hits[0].span[0], clause_hits[-1].span[1]))
    return spans


_ARTICLES = frozenset({"el", "la", "los", "las", "lo", "un", "una", "unos", "unas"})
_SUPERLATIVE_SUFFIXES = ("ísimo", "ísima", "ísimos", "ísimas")


def detect_superlative(sentence: Sentence) -> list[Span]:
    """-ísimo forms and 'article + más/menos + adjective' patterns.

    'más de' + quantity is a comparison, not a superlative, and is skipped.
    """
    spans: list[Span] = []
    tokens = sentence.tokens
    for i, tok in enumerate(tokens):
        if tok.kind is not TokenKind.WORD:
            continue
        surface = tok.text.lower()
        if surface.endswith(_SUPERLATIVE_SUFFIXES):
            spans.append(tok.span)
            continue
        if surface in _ARTICLES and i + 2 < len(tokens):
            mid, last = tokens[i + 1], tokens[i + 2]
            if (
                mid.kind is TokenKind.WORD
                and mid.text.lower() in {"más", "menos"}
                and last.kind is TokenKind.WORD
                and last.text.lower() != "de"
            ):
                spans.append((tok.span[0], last.span[1]))
    return spans
