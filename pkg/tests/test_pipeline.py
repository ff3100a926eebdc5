import random

import numpy as np
import pytest

from conftest import analysis, make_resources, random_orthogonal, random_word
from oracles import greedy_f1_oracle
from simplikit.corpus import tokenize
from simplikit.errors import ResourceMissingError
from simplikit.lexres import EmbeddingTable, load_resources
from simplikit.pipeline import (
    CandidateScore,
    PipelineConfig,
    SynonymLexiconSuggester,
    generate_candidates,
    grammaticality,
    identify_complex_word,
    load_config,
    meaning_ranks,
    rank_candidates,
    simplify_sentence,
)


def cwi_resources(extra_cefr=(), extra_morph=None, freq=None):
    cefr = {
        ("they", "PRON"): 1,
        ("the", "DET"): 1,
        ("mitigate", "VERB"): 6,
        ("risk", "NOUN"): 3,
    }
    cefr.update(dict(extra_cefr))
    morph = {"mitigate": (analysis("mitigate", "VERB"),)}
    if extra_morph:
        morph.update(extra_morph)
    return make_resources(
        freq=freq or {"they": 500, "the": 900, "mitigate": 5, "risk": 80},
        cefr=cefr,
        morph=morph,
    )


class TestIdentifyComplexWord:
    def test_picks_highest_level(self):
        res = cwi_resources()
        sent = tokenize("They mitigate risk .")
        assert identify_complex_word(sent, res) == (1, "mitigate")

    def test_tie_prefers_verb(self):
        res = make_resources(
            freq={"assess": 10, "payload": 900},
            cefr={("assess", "VERB"): 5, ("payload", "NOUN"): 5},
            morph={
                "assess": (analysis("assess", "VERB"),),
                "payload": (analysis("payload", "NOUN"),),
            },
        )
        sent = tokenize("payload assess")
        assert identify_complex_word(sent, res) == (1, "assess")

    def test_tie_then_higher_frequency(self):
        res = make_resources(
            freq={"archaic": 10, "antiquated": 50},
            cefr={("archaic", "ADJ"): 6, ("antiquated", "ADJ"): 6},
            morph={},
        )
        sent = tokenize("archaic antiquated")
        assert identify_complex_word(sent, res) == (1, "antiquated")

    def test_tie_everything_leftmost_wins(self):
        res = make_resources(
            freq={"aa": 7, "bb": 7},
            cefr={("aa", "ADJ"): 4, ("bb", "ADJ"): 4},
            morph={},
        )
        assert identify_complex_word(tokenize("aa bb"), res) == (0, "aa")

    def test_floor_yields_none(self):
        res = make_resources(
            freq={"dog": 1, "ran": 2},
            cefr={("dog", "NOUN"): 1, ("ran", "VERB"): 1},
            morph={},
        )
        assert identify_complex_word(tokenize("dog ran"), res) is None

    def test_stoplist_and_nonalpha_excluded(self):
        res = cwi_resources()
        sent = tokenize("They mitigate risk .")
        out = identify_complex_word(sent, res, stoplist=frozenset({"mitigate"}))
        assert out == (2, "risk")

    def test_missing_resource(self):
        res = make_resources(freq={})
        with pytest.raises(ResourceMissingError):
            identify_complex_word(tokenize("a b"), res)

    def test_oov_counts_as_hardest(self):
        res = cwi_resources()
        sent = tokenize("They mitigate the quux .")
        # quux is OOV -> level 6, ties mitigate, loses the verb tie-break
        assert identify_complex_word(sent, res) == (1, "mitigate")
        res2 = cwi_resources(extra_cefr={("mitigate", "VERB"): 5}.items())
        assert identify_complex_word(sent, res2) == (3, "quux")


class TestGenerateCandidates:
    def run_lexicon(self):
        return {
            "ran": (analysis("run", "VERB", [("Tense", "Past")]),),
            "runs": (analysis("run", "VERB"),),
            "running": (analysis("run", "VERB"),),
        }

    def test_lowercase_dedupe_and_target_exclusion(self):
        res = make_resources(morph=self.run_lexicon())
        sent = tokenize("He ran home")
        sugg = lambda s, i: ["Ran", "running", "jogged", "jogged", "moved"]
        assert generate_candidates(sent, 1, sugg, res) == ["jogged", "moved"]

    def test_empty_suggestions(self):
        res = make_resources(morph={})
        assert generate_candidates(tokenize("a b"), 0, lambda s, i: [], res) == []

    def test_truncates_to_n(self):
        res = make_resources(morph={})
        sugg = lambda s, i: [f"cand{c}" for c in "abcdefghijklmnopqrstuvwxy"]
        out = generate_candidates(tokenize("a b"), 0, sugg, res, n=20)
        assert len(out) == 20
        assert out == [f"cand{c}" for c in "abcdefghijklmnopqrst"]


class TestGrammaticality:
    def test_exact_match(self):
        target = [analysis("run", "VERB", [("Tense", "Past")])]
        cand = [analysis("sprint", "VERB", [("Tense", "Past")])]
        assert grammaticality(target, cand) == 1

    def test_no_analysis_pair_matches(self):
        target = [analysis("run", "VERB", [("Tense", "Past")])]
        cand = [analysis("sprint", "VERB", [("Tense", "Pres")]),
                analysis("sprint", "NOUN")]
        assert grammaticality(target, cand) == 0

    def test_unknown_candidate_is_zero(self):
        target = [analysis("run", "VERB", [("Tense", "Past")])]
        assert grammaticality(target, ()) == 0

    def test_features_must_match_fully(self):
        target = [analysis("run", "VERB", [("Tense", "Past"), ("Number", "Sing")])]
        cand = [analysis("jog", "VERB", [("Tense", "Past")])]
        assert grammaticality(target, cand) == 0


class TestMeaningRanks:
    def embeddings(self):
        return EmbeddingTable({
            "target": np.array([1.0, 0.0, 0.0]),
            "near": np.array([9.0, 1.0, 0.0]),
            "far": np.array([1.0, 4.0, 0.0]),
            "same": np.array([1.0, 0.0, 0.0]),
            "filler": np.array([0.0, 0.0, 1.0]),
        })

    def test_singleton(self):
        out = meaning_ranks(tokenize("filler target"), 1, ["near"], self.embeddings())
        assert out == {"near": 1}

    def test_identical_vector_wins_with_f1_one(self):
        table = self.embeddings()
        sent = tokenize("filler target filler")
        ranks = meaning_ranks(sent, 1, ["far", "same"], table)
        assert ranks["same"] == 1 and ranks["far"] == 2
        from simplikit.sentmetrics import embed_similarity_f1
        subst = ["filler", "same", "filler"]
        assert embed_similarity_f1(list(sent.tokens), subst, table).f1 == pytest.approx(1.0)

    def test_matches_brute_force_order(self):
        table = self.embeddings()
        vectors = {w: list(map(float, table.vector(w))) for w in
                   ("target", "near", "far", "same", "filler")}
        sent = tokenize("filler target")
        cands = ["far", "near", "same"]
        f1s = {
            c: greedy_f1_oracle(list(sent.tokens), ["filler", c], vectors)[2]
            for c in cands
        }
        expected_order = sorted(cands, key=lambda c: -f1s[c])
        ranks = meaning_ranks(sent, 1, cands, table)
        assert [c for c, _ in sorted(ranks.items(), key=lambda kv: kv[1])] == expected_order

    def test_ranks_are_permutation(self):
        table = self.embeddings()
        ranks = meaning_ranks(tokenize("filler target"), 1, ["near", "far", "same"], table)
        assert sorted(ranks.values()) == [1, 2, 3]

    def test_rotation_invariance(self):
        rng = np.random.default_rng(11)
        words = ["target", "near", "far", "same", "filler"]
        base = self.embeddings()
        q = random_orthogonal(rng, 3)
        rotated = EmbeddingTable({w: q @ base.vector(w) for w in words})
        sent = tokenize("filler target filler")
        cands = ["near", "far", "same"]
        assert meaning_ranks(sent, 1, cands, base) == meaning_ranks(sent, 1, cands, rotated)


class TestRankCandidates:
    def score(self, cand, g, s, m, n=3, gen=1):
        return CandidateScore(cand, g, s, m, n, gen)

    def test_formula_arithmetic(self):
        a = self.score("a", 1, 2, 1, gen=1)   # 2*2+1 = 5
        b = self.score("b", 1, 1, 4, gen=2)   # 2*1+4 = 6
        c = self.score("c", 0, 1, 2, gen=3)   # excluded
        assert [x.candidate for x in rank_candidates([a, b, c])] == ["a", "b"]
        assert a.combined == 5 and b.combined == 6 and c.combined is None

    def test_all_ungrammatical(self):
        scores = [self.score(f"c{i}", 0, 1, i + 1, gen=i + 1) for i in range(3)]
        assert rank_candidates(scores) == []

    def test_truncation(self):
        scores = [self.score(f"c{i}", 1, 1, i + 1, n=12, gen=i + 1) for i in range(12)]
        assert len(rank_candidates(scores)) == 10

    def test_tie_breaks_on_meaning_then_generation(self):
        # equal combined 2*1+4 == 2*2+2
        a = self.score("a", 1, 1, 4, gen=2)
        b = self.score("b", 1, 2, 2, gen=1)
        assert [x.candidate for x in rank_candidates([a, b])] == ["b", "a"]

    def test_lowering_simplicity_never_hurts(self):
        rng = random.Random(99)
        for _ in range(100):
            n = rng.randint(2, 8)
            ms = rng.sample(range(1, n + 1), n)
            scores = [
                CandidateScore(f"c{i}", 1, rng.randint(2, 6), ms[i], n, i + 1)
                for i in range(n)
            ]
            ranked = rank_candidates(scores)
            probe = rng.randrange(n)
            better = scores[probe]
            improved = CandidateScore(
                better.candidate, 1, better.simplicity - 1,
                better.meaning_rank, n, better.generation_rank,
            )
            new_ranked = rank_candidates([improved if i == probe else s
                                          for i, s in enumerate(scores)])
            old_pos = [c.candidate for c in ranked].index(better.candidate)
            new_pos = [c.candidate for c in new_ranked].index(better.candidate)
            assert new_pos <= old_pos


class TestSimplifySentence:
    def test_fixture_sentence_end_to_end(self, pipeline_dir):
        res = load_resources(
            freq_path=pipeline_dir / "freq.tsv",
            cefr_path=pipeline_dir / "cefr.tsv",
            morph_path=pipeline_dir / "morph.tsv",
            embeddings_path=pipeline_dir / "embeddings.txt",
            stoplist_path=pipeline_dir / "stoplist.txt",
        )
        suggester = SynonymLexiconSuggester.from_file(pipeline_dir / "synonyms.tsv")
        result = simplify_sentence("He sprinted to the house .", res, suggester)
        assert result.target == "sprinted"
        assert result.ranked_words == ("ran", "raced", "jogged", "dashed")
        scores = {c.candidate: c for c in result.scored}
        assert scores["bolted"].grammatical == 0
        assert scores["ran"].combined == 3

    def test_stopword_only_sentence(self):
        res = make_resources(freq={"he": 10}, cefr={("he", "PRON"): 1}, morph={})
        result = simplify_sentence("He .", res, lambda s, i: ["x"],
                                   PipelineConfig(stoplist=frozenset({"he"})))
        assert result.target is None
        assert result.scored == () and result.ranked == ()

    def test_deterministic(self, pipeline_dir):
        res = load_resources(
            freq_path=pipeline_dir / "freq.tsv",
            cefr_path=pipeline_dir / "cefr.tsv",
            morph_path=pipeline_dir / "morph.tsv",
            embeddings_path=pipeline_dir / "embeddings.txt",
        )
        suggester = SynonymLexiconSuggester.from_file(pipeline_dir / "synonyms.tsv")
        first = simplify_sentence("They commenced the feast .", res, suggester)
        second = simplify_sentence("They commenced the feast .", res, suggester)
        assert first == second

    def test_frequency_scaling_leaves_cwi_unchanged(self):
        rng = random.Random(31337)
        for _ in range(50):
            vocab = sorted({random_word(rng) for _ in range(10)})
            freq = {w: rng.randint(0, 500) for w in vocab}
            cefr = {(w, "NOUN"): rng.randint(1, 6) for w in vocab}
            res = make_resources(freq=freq, cefr=cefr, morph={})
            scaled = make_resources(
                freq={w: c * 7 for w, c in freq.items()}, cefr=cefr, morph={})
            sent = tokenize(" ".join(rng.choice(vocab) for _ in range(6)))
            assert identify_complex_word(sent, res) == identify_complex_word(sent, scaled)


class TestSuggesters:
    def test_knn_orders_by_cosine_and_skips_target(self):
        from simplikit.pipeline import EmbeddingNeighborSuggester

        table = EmbeddingTable({
            "hot": np.array([1.0, 0.0]),
            "warm": np.array([9.0, 1.0]),
            "tepid": np.array([3.0, 1.0]),
            "cold": np.array([0.0, 1.0]),
            "void": np.array([0.0, 0.0]),
        })
        suggest = EmbeddingNeighborSuggester(table, k=3)
        out = suggest(tokenize("hot soup"), 0)
        assert out == ["warm", "tepid", "cold"]

    def test_knn_unknown_target_suggests_nothing(self):
        from simplikit.pipeline import EmbeddingNeighborSuggester

        table = EmbeddingTable({"a": np.array([1.0, 0.0])})
        assert EmbeddingNeighborSuggester(table)(tokenize("zzz"), 0) == []

    def test_file_suggester_matches_sentence_and_word(self, tmp_path):
        from simplikit.pipeline import FileCandidateSuggester

        path = tmp_path / "cands.tsv"
        path.write_text("He ran home\tran\tjogged\tmoved\n")
        suggest = FileCandidateSuggester(path)
        assert list(suggest(tokenize("He ran home"), 1)) == ["jogged", "moved"]
        assert list(suggest(tokenize("He ran away"), 1)) == []

    def test_synonym_suggester_is_case_insensitive_on_keys(self, tmp_path):
        path = tmp_path / "syn.tsv"
        path.write_text("Sprinted\tran,raced\n")
        suggest = SynonymLexiconSuggester.from_file(path)
        assert list(suggest(tokenize("he sprinted"), 1)) == ["ran", "raced"]


class TestConfig:
    def test_parse(self, tmp_path):
        stop = tmp_path / "stop.txt"
        stop.write_text("the\nan\n")
        cfg = tmp_path / "pipeline.cfg"
        cfg.write_text("# comment\nn = 5\nlimit = 3\nfloor = 2\nstoplist = stop.txt\n")
        config = load_config(cfg)
        assert config.n_candidates == 5
        assert config.limit == 3
        assert config.floor == 2
        assert config.stoplist == {"the", "an"}

    def test_unknown_key(self, tmp_path):
        cfg = tmp_path / "pipeline.cfg"
        cfg.write_text("bogus = 1\n")
        from simplikit.errors import ParseError
        with pytest.raises(ParseError, match="bogus"):
            load_config(cfg)
