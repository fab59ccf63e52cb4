import pytest

from lefa.errors import MissingResource
from lefa.linter import (
    ApplicabilityReport,
    LintConfig,
    Severity,
    TRIGGER_BASED_IDS,
    Verdict,
    applicability,
    lint_document,
    lint_sentence,
    load_frequency_lexicon,
    load_lint_config,
)
from lefa.textmodel import Role, Theme
from tests.conftest import make_doc, make_sentence

COMMON_WORDS = """\
el	1
la	2
los	3
las	4
un	5
una	6
de	7
en	8
y	9
a	10
que	11
no	12
equipo	20
equipos	21
jugador	22
jugadores	23
partido	24
juega	25
juegan	26
gana	27
árbitro	28
escribe	29
nombres	30
acta	31
niño	32
niña	33
lee	34
libro	35
casa	36
come	37
pan	38
agua	39
hoy	40
deportista	41
deportistas	42
parte	43
atrás	44
llama	45
jugar	46
hasta	47
cada	48
solo	49
caben	50
cuando	51
más	52
sus	53
por	54
para	55
con	56
este	57
esta	58
lista	59
firma	60
hace	61
"""


def _freq():
    return {
        line.split("\t")[0]: int(line.split("\t")[1])
        for line in COMMON_WORDS.strip().splitlines()
    }


def gids(diags):
    return [d.guideline for d in diags]


class TestMechanicalRules:
    def test_g1_long_uppercase_word_is_violation(self):
        diags = lint_sentence(make_sentence("La normativa APROBADA rige desde hoy."))
        hits = [d for d in diags if d.guideline == "G1"]
        assert len(hits) == 1 and hits[0].severity is Severity.VIOLATION
        assert hits[0].evidence == "APROBADA"

    def test_g1_short_acronym_allowed(self):
        assert "G1" not in gids(lint_sentence(make_sentence("La ONU y la UNESCO colaboran.")))

    def test_g1_allowlisted_long_acronym(self):
        assert "G1" not in gids(lint_sentence(make_sentence("La liga de FEMADDI empieza.")))

    def test_g1_uppercase_run_is_violation(self):
        diags = lint_sentence(make_sentence("EL TORNEO EMPIEZA mañana."))
        hits = [d for d in diags if d.guideline == "G1"]
        assert len(hits) == 1
        assert hits[0].evidence == "EL TORNEO EMPIEZA"

    def test_g3_semicolon_is_violation_each(self):
        diags = lint_sentence(make_sentence("Vino Juan; vino Ana; vino Luis."))
        hits = [d for d in diags if d.guideline == "G3"]
        assert len(hits) == 2
        assert all(d.severity is Severity.VIOLATION for d in hits)

    def test_g9_abbreviation_is_violation(self):
        diags = lint_sentence(make_sentence("El Sr. Gómez llega hoy."))
        hits = [d for d in diags if d.guideline == "G9"]
        assert len(hits) == 1 and hits[0].severity is Severity.VIOLATION
        assert hits[0].evidence == "Sr."


class TestHeuristicRules:
    def test_g2_multiple_commas_with_clausal_verb(self):
        text = "El equipo ganó, los jugadores celebraron, la afición cantó."
        diags = lint_sentence(make_sentence(text))
        hits = [d for d in diags if d.guideline == "G2"]
        assert len(hits) == 1 and hits[0].severity is Severity.ADVISORY

    def test_g2_enumeration_not_flagged(self):
        assert "G2" not in gids(lint_sentence(make_sentence("Compra pan, agua, fruta y leche.")))

    def test_g2_single_comma_allowed(self):
        assert "G2" not in gids(lint_sentence(make_sentence("Cuando llegó, el partido empezó.")))

    def test_g4_rare_word_flagged(self):
        config = LintConfig(frequency_lexicon=_freq())
        diags = lint_sentence(make_sentence("El equipo firma la homologación."), config)
        hits = [d for d in diags if d.guideline == "G4"]
        assert [d.evidence for d in hits] == ["homologación"]

    def test_g4_glossary_entries_exempt(self):
        config = LintConfig(frequency_lexicon=_freq(), glossary={"homologación": "definición"})
        assert "G4" not in gids(lint_sentence(make_sentence("El equipo firma la homologación."), config))

    def test_g4_inactive_without_lexicon(self):
        assert "G4" not in gids(lint_sentence(make_sentence("La homologación preceptiva.")))

    def test_g7_superlative(self):
        diags = lint_sentence(make_sentence("Es el más rápido del equipo."))
        assert "G7" in gids(diags)

    def test_g8_foreign_looking_word(self):
        config = LintConfig(frequency_lexicon=_freq())
        diags = lint_sentence(make_sentence("El equipo hace un casting."), config)
        assert [d.evidence for d in diags if d.guideline == "G8"] == ["casting"]

    def test_g8_allowlist(self):
        config = LintConfig(frequency_lexicon=_freq())
        assert "G8" not in gids(lint_sentence(make_sentence("El wifi de la casa."), config))

    def test_g10_idiom(self):
        config = LintConfig(idiom_list=("tomar el pelo",))
        diags = lint_sentence(make_sentence("No me quieras tomar el pelo nunca."), config)
        assert any(d.guideline == "G10" and d.evidence == "tomar el pelo" for d in diags)

    def test_g10_requires_word_boundaries(self):
        config = LintConfig(idiom_list=("ser pan",))
        assert "G10" not in gids(lint_sentence(make_sentence("Es pan comido hacerlo."), config))

    def test_g12_long_sentence(self):
        text = " ".join(["palabra"] * 26) + "."
        diags = lint_sentence(make_sentence(text))
        assert "G12" in gids(diags)

    def test_g12_two_subordinators(self):
        text = "Dice que vendrá cuando pueda."
        assert "G12" in gids(lint_sentence(make_sentence(text)))

    def test_g12_short_simple_sentence_ok(self):
        assert "G12" not in gids(lint_sentence(make_sentence("El niño lee un libro.")))

    def test_g14_future_tense(self):
        diags = lint_sentence(make_sentence("El torneo empezará mañana."))
        assert any(d.guideline == "G14" and d.evidence == "empezará" for d in diags)

    def test_g14_conditional_and_subjunctive(self):
        assert "G14" in gids(lint_sentence(make_sentence("Me gustaría participar.")))
        assert "G14" in gids(lint_sentence(make_sentence("Si llegara pronto, mejor.")))

    def test_g14_compound_tense(self):
        diags = lint_sentence(make_sentence("Los equipos han jugado dos partidos."))
        assert any(d.guideline == "G14" and d.evidence == "han jugado" for d in diags)

    def test_g14_present_not_flagged(self):
        assert "G14" not in gids(lint_sentence(make_sentence("El equipo juega hoy.")))

    def test_g15_passive(self):
        diags = lint_sentence(make_sentence("El gol será reflejado por el árbitro."))
        assert any(d.guideline == "G15" and d.evidence == "será reflejado" for d in diags)

    def test_g15_active_not_flagged(self):
        assert "G15" not in gids(lint_sentence(make_sentence("El árbitro escribe los nombres.")))

    def test_g17_impersonal(self):
        diags = lint_sentence(make_sentence("La inscripción se realizará por internet."))
        assert any(d.guideline == "G17" and d.evidence == "se realizará" for d in diags)

    def test_g17_named_subject_not_flagged(self):
        assert "G17" not in gids(lint_sentence(make_sentence("Juan se lava las manos.")))

    def test_g18_verb_chain(self):
        diags = lint_sentence(make_sentence("Los niños van corriendo al parque."))
        assert any(d.guideline == "G18" and d.evidence == "van corriendo" for d in diags)

    def test_g18_modal_periphrasis_exempt(self):
        text = "Los equipos deberán disputar un partido amistoso."
        assert "G18" not in gids(lint_sentence(make_sentence(text)))

    def test_g19_sentence_initial_negation(self):
        diags = lint_sentence(make_sentence("No viene hoy al partido."))
        assert "G19" in gids(diags)

    def test_g19_simple_prohibition_allowed(self):
        assert "G19" not in gids(lint_sentence(make_sentence("No fumar.")))

    def test_g20_double_negation(self):
        diags = lint_sentence(make_sentence("No viene nadie al partido."))
        assert any(d.guideline == "G20" for d in diags)

    def test_heuristic_rules_are_advisories(self):
        text = "No viene nadie, se dice que nunca jamás vendrá, es el más raro."
        for d in lint_sentence(make_sentence(text)):
            if d.guideline not in {"G1", "G3", "G9"}:
                assert d.severity is Severity.ADVISORY


class TestDocumentLevel:
    def test_g11_mixed_terms_across_sentences(self):
        config = LintConfig(synonym_groups=(frozenset({"jugador", "deportista"}),))
        doc = make_doc("Los jugadores entrenan hoy. Los deportistas descansan mañana.")
        diags = lint_document(doc, config)
        hits = [d for d in diags if d.guideline == "G11"]
        assert len(hits) == 1
        assert "jugador" in hits[0].message and "deportista" in hits[0].message

    def test_g11_consistent_term_not_flagged(self):
        config = LintConfig(synonym_groups=(frozenset({"jugador", "deportista"}),))
        doc = make_doc("Los jugadores entrenan. Los jugadores descansan.")
        assert "G11" not in gids(lint_document(doc, config))

    def test_g11_singular_plural_are_same_member(self):
        config = LintConfig(synonym_groups=(frozenset({"jugador", "deportista"}),))
        doc = make_doc("El jugador entrena. Los jugadores descansan.")
        assert "G11" not in gids(lint_document(doc, config))

    def test_diagnostics_sorted_by_position(self):
        doc = make_doc("Vino Juan; no viene nadie. El Sr. Gómez saluda.")
        diags = lint_document(doc)
        keys = [(d.sentence_index, d.span[0]) for d in diags]
        assert keys == sorted(keys)

    def test_untokenized_document_is_tokenized_on_the_fly(self):
        from lefa.textmodel import Document, Sentence

        raw = "Vino Juan; vino Ana."
        doc = Document("d", Role.ORIGINAL, Theme.OTHER, raw, (Sentence(0, raw, (0, len(raw))),))
        assert "G3" in gids(lint_document(doc))

    def test_diagnostic_dict_shape(self):
        doc = make_doc("Vino Juan; vino Ana.")
        data = lint_document(doc)[0].to_dict()
        assert set(data) == {"guideline", "severity", "sentence", "span", "message", "evidence"}


class TestRuleSelection:
    def test_enabled_subset_only(self):
        config = LintConfig(enabled=frozenset({"G3"}))
        doc = make_doc("Vino Juan; el Sr. Gómez no vino nunca jamás.")
        assert set(gids(lint_document(doc, config))) == {"G3"}

    def test_enabling_resource_rule_without_resource_raises(self):
        config = LintConfig(enabled=frozenset({"G4"}))
        with pytest.raises(MissingResource):
            lint_sentence(make_sentence("Hola mundo."), config)

    def test_resource_rules_silently_skip_when_unconfigured(self):
        assert lint_sentence(make_sentence("El niño lee.")) == []


class TestApplicability:
    CLEAN_TEXT = (
        "El equipo juega hoy en casa. "
        "Los jugadores llegan pronto al campo. "
        "El árbitro escribe los nombres en el acta."
    )

    def test_clean_document_marks_trigger_rules_not_applicable(self):
        doc = make_doc(self.CLEAN_TEXT)
        report = applicability(doc)
        not_applicable = report.not_applicable_ids()
        assert set(TRIGGER_BASED_IDS) <= not_applicable
        assert not_applicable & set(TRIGGER_BASED_IDS) == {"G1", "G3", "G7", "G9", "G16"}

    def test_triggers_make_rules_applicable(self):
        doc = make_doc("El REGLAMENTO dice; el Sr. Gómez es el más rápido.")
        report = applicability(doc)
        assert report.verdicts["G1"].applicable
        assert report.verdicts["G3"].applicable
        assert report.verdicts["G7"].applicable
        assert report.verdicts["G9"].applicable

    def test_report_covers_all_guidelines(self):
        report = applicability(make_doc("Hola mundo."))
        assert len(report.verdicts) == 21
        with pytest.raises(ValueError):
            ApplicabilityReport({"G1": Verdict(True)})

    def test_empty_document_nothing_applicable(self):
        from lefa.textmodel import Document

        report = applicability(Document("d", Role.ORIGINAL, Theme.OTHER, ""))
        assert all(not v.applicable for v in report.verdicts.values())

    def test_to_dict_includes_reasons(self):
        report = applicability(make_doc("El equipo juega hoy."))
        data = report.to_dict()
        assert data["G3"] == {"applicable": False, "reason": "trigger context absent from document"}


class TestResourceLoading:
    def test_load_frequency_lexicon(self, tmp_path):
        path = tmp_path / "freq.tsv"
        path.write_text("# comment\ncasa\t10\nPERRO\t20\n")
        lex = load_frequency_lexicon(path)
        assert lex == {"casa": 10, "perro": 20}

    def test_load_lint_config_from_directory(self, tmp_path):
        (tmp_path / "frequency_lexicon.tsv").write_text("casa\t1\n")
        (tmp_path / "synonym_groups.json").write_text('[["jugador", "deportista"]]')
        (tmp_path / "glossary.json").write_text('{"acta": "papel oficial"}')
        (tmp_path / "idioms.txt").write_text("tomar el pelo\n")
        config = load_lint_config(tmp_path)
        assert config.frequency_lexicon == {"casa": 1}
        assert config.synonym_groups == (frozenset({"jugador", "deportista"}),)
        assert config.glossary == {"acta": "papel oficial"}
        assert config.idiom_list == ("tomar el pelo",)

    def test_missing_files_leave_rules_inactive(self, tmp_path):
        config = load_lint_config(tmp_path)
        assert config.frequency_lexicon is None
        assert config.synonym_groups == ()

    def test_overrides_win(self, tmp_path):
        config = load_lint_config(tmp_path, max_commas=3)
        assert config.max_commas == 3

    def test_bundled_seed_resources_load(self):
        from importlib import resources as importlib_resources

        seed = importlib_resources.files("lefa.resources").joinpath("seed")
        config = load_lint_config(str(seed))
        assert config.frequency_lexicon
        assert frozenset({"jugador", "deportista"}) in config.synonym_groups
        assert "acta" in config.glossary
