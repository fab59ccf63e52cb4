import numpy as np
import pytest

from lefa.aligner import AlignmentConfig, align, brute_force_align
from lefa.embeddings import EmbeddingProviderConfig, ProviderKind, write_store
from lefa.errors import EmptyDocument
from lefa.textmodel import Document, Role, Sentence, Theme
from tests.conftest import make_doc


def _doc_from_texts(texts, doc_id, role):
    raw = " ".join(texts)
    sentences = []
    pos = 0
    for i, t in enumerate(texts):
        start = raw.index(t, pos)
        sentences.append(Sentence(i, t, (start, start + len(t))))
        pos = start + len(t)
    return Document(doc_id, role, Theme.OTHER, raw, tuple(sentences))


def _provider(tmp_path, mapping, dims):
    path = tmp_path / "vectors.jsonl"
    write_store(path, mapping)
    return EmbeddingProviderConfig(ProviderKind.FILE_BACKED, str(path), expected_dims=dims)


def _basis(i, dims):
    v = [0.0] * dims
    v[i] = 1.0
    return v


class TestAlign:
    def test_matches_most_similar_adapted_sentence(self, tmp_path):
        orig = _doc_from_texts(["Frase uno.", "Frase dos."], "o", Role.ORIGINAL)
        adp = _doc_from_texts(["Versión dos.", "Versión uno."], "a", Role.ADAPTED)
        mapping = {
            "Frase uno.": [1.0, 0.1, 0.0],
            "Frase dos.": [0.0, 0.1, 1.0],
            "Versión dos.": [0.0, 0.0, 1.0],
            "Versión uno.": [1.0, 0.0, 0.0],
        }
        corpus = align(orig, adp, _provider(tmp_path, mapping, 3))
        matches = {p.original_ref[1]: p.adapted_ref[1] for p in corpus.pairs}
        assert matches == {0: 1, 1: 0}
        assert corpus.pairs[0].original_text == "Frase uno."
        assert corpus.pairs[0].adapted_text == "Versión uno."

    def test_below_threshold_originals_are_dropped_with_best_score(self, tmp_path):
        orig = _doc_from_texts(["Cerca.", "Lejos."], "o", Role.ORIGINAL)
        adp = _doc_from_texts(["Objetivo."], "a", Role.ADAPTED)
        mapping = {
            "Cerca.": [1.0, 0.0],
            "Lejos.": [0.1, 1.0],
            "Objetivo.": [1.0, 0.0],
        }
        corpus = align(orig, adp, _provider(tmp_path, mapping, 2), AlignmentConfig(similarity_threshold=0.5))
        assert [p.original_ref[1] for p in corpus.pairs] == [0]
        assert len(corpus.dropped_originals) == 1
        (ref, best) = corpus.dropped_originals[0]
        assert ref == ("o", 1)
        assert best == pytest.approx(0.1 / np.sqrt(1.01))

    def test_tie_breaks_to_lowest_adapted_index(self, tmp_path):
        orig = _doc_from_texts(["Única."], "o", Role.ORIGINAL)
        adp = _doc_from_texts(["Igual A.", "Igual B."], "a", Role.ADAPTED)
        mapping = {
            "Única.": [1.0, 0.0],
            "Igual A.": [1.0, 0.0],
            "Igual B.": [1.0, 0.0],
        }
        corpus = align(orig, adp, _provider(tmp_path, mapping, 2))
        assert corpus.pairs[0].adapted_ref == ("a", 0)

    def test_many_to_one_allowed_by_default(self, tmp_path):
        orig = _doc_from_texts(["Uno.", "Dos."], "o", Role.ORIGINAL)
        adp = _doc_from_texts(["Resumen."], "a", Role.ADAPTED)
        mapping = {"Uno.": [1.0, 0.0], "Dos.": [0.9, 0.1], "Resumen.": [1.0, 0.0]}
        corpus = align(orig, adp, _provider(tmp_path, mapping, 2))
        assert len(corpus.pairs) == 2
        assert {p.adapted_ref for p in corpus.pairs} == {("a", 0)}

    def test_one_to_one_keeps_higher_scoring_original(self, tmp_path):
        orig = _doc_from_texts(["Uno.", "Dos."], "o", Role.ORIGINAL)
        adp = _doc_from_texts(["Resumen."], "a", Role.ADAPTED)
        mapping = {"Uno.": [0.9, 0.1], "Dos.": [1.0, 0.0], "Resumen.": [1.0, 0.0]}
        corpus = align(
            orig, adp, _provider(tmp_path, mapping, 2), AlignmentConfig(allow_many_to_one=False)
        )
        assert [p.original_ref[1] for p in corpus.pairs] == [1]
        assert [ref for ref, _ in corpus.dropped_originals] == [("o", 0)]

    def test_empty_original_raises(self, tmp_path):
        empty = Document("o", Role.ORIGINAL, Theme.OTHER, "")
        adp = _doc_from_texts(["Algo."], "a", Role.ADAPTED)
        provider = _provider(tmp_path, {"Algo.": [1.0]}, 1)
        with pytest.raises(EmptyDocument):
            align(empty, adp, provider)
        with pytest.raises(EmptyDocument):
            align(adp, empty, provider)

    def test_threshold_must_be_in_range(self):
        with pytest.raises(ValueError):
            AlignmentConfig(similarity_threshold=1.5)


class TestOracleEquivalence:
    def _random_instance(self, rng, tmp_path, case):
        n_orig = int(rng.integers(1, 51))
        n_adp = int(rng.integers(1, 51))
        dims = int(rng.integers(2, 17))
        orig_texts = [f"o{case}-{i}." for i in range(n_orig)]
        adp_texts = [f"a{case}-{i}." for i in range(n_adp)]
        mapping = {}
        for t in orig_texts + adp_texts:
            v = rng.normal(size=dims)
            mapping[t] = (v / np.linalg.norm(v)).tolist()
        orig = _doc_from_texts(orig_texts, f"o{case}", Role.ORIGINAL)
        adp = _doc_from_texts(adp_texts, f"a{case}", Role.ADAPTED)
        path = tmp_path / f"v{case}.jsonl"
        write_store(path, mapping)
        provider = EmbeddingProviderConfig(ProviderKind.FILE_BACKED, str(path), expected_dims=dims)
        return orig, adp, provider

    def test_matrix_and_loop_implementations_agree(self, tmp_path):
        rng = np.random.default_rng(42)
        for case in range(200):
            orig, adp, provider = self._random_instance(rng, tmp_path, case)
            threshold = float(rng.uniform(-0.2, 0.9))
            config = AlignmentConfig(similarity_threshold=threshold)
            fast = align(orig, adp, provider, config)
            slow = brute_force_align(orig, adp, provider, config)
            assert [
                (p.original_ref, p.adapted_ref) for p in fast.pairs
            ] == [(p.original_ref, p.adapted_ref) for p in slow.pairs]
            for pf, ps in zip(fast.pairs, slow.pairs):
                assert pf.similarity == pytest.approx(ps.similarity, abs=1e-9)
            assert [r for r, _ in fast.dropped_originals] == [
                r for r, _ in slow.dropped_originals
            ]

    def test_pairs_plus_dropped_partition_originals(self, tmp_path):
        rng = np.random.default_rng(7)
        for case in range(20):
            orig, adp, provider = self._random_instance(rng, tmp_path, 1000 + case)
            corpus = align(orig, adp, provider, AlignmentConfig(similarity_threshold=0.5))
            paired = {p.original_ref for p in corpus.pairs}
            dropped = {r for r, _ in corpus.dropped_originals}
            assert paired.isdisjoint(dropped)
            assert paired | dropped == {(orig.id, i) for i in range(len(orig.sentences))}


class TestThresholdMonotonicity:
    def test_pair_sets_nest_as_threshold_rises(self, tmp_path):
        rng = np.random.default_rng(11)
        orig_texts = [f"orig {i}." for i in range(20)]
        adp_texts = [f"adap {i}." for i in range(15)]
        mapping = {}
        for t in orig_texts + adp_texts:
            v = rng.normal(size=6)
            mapping[t] = (v / np.linalg.norm(v)).tolist()
        orig = _doc_from_texts(orig_texts, "o", Role.ORIGINAL)
        adp = _doc_from_texts(adp_texts, "a", Role.ADAPTED)
        provider = _provider(tmp_path, mapping, 6)
        sets = []
        for threshold in (0.3, 0.5, 0.7):
            corpus = align(orig, adp, provider, AlignmentConfig(similarity_threshold=threshold))
            sets.append({(p.original_ref, p.adapted_ref) for p in corpus.pairs})
        assert sets[2] <= sets[1] <= sets[0]
