"""Three-stage lexical simplification: identify, generate, rank.

Candidate ranking combines grammaticality G in {0, 1}, simplicity
S in [1, 6] (CEFR level) and meaning preservation M in [1, N] as
``combined = 2*S + M``; G acts as a hard filter and lower combined is
better (S=1 is A1, M=1 preserves meaning best). The top 10 surviving
candidates are kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .corpus import TokenizedSentence, is_wordlike, load_predictions, tokenize
from .errors import ParseError
from .lexres import Analysis, EmbeddingTable, ResourceSet, cosine
from .sentmetrics import embed_similarity_f1

DEFAULT_SUGGESTIONS = 20
DEFAULT_LIMIT = 10
DEFAULT_FLOOR = 1


@dataclass(frozen=True)
class CandidateScore:
    """Scores for one generated candidate."""

    candidate: str
    grammatical: int            # G
    simplicity: int             # S, CEFR level of the candidate
    meaning_rank: int           # M, 1 = best meaning preservation
    total_candidates: int       # N
    generation_rank: int        # 1-based position in the suggester output

    @property
    def combined(self) -> int | None:
        """2*S + M, defined for grammatical candidates only."""
        if self.grammatical != 1:
            return None
        return 2 * self.simplicity + self.meaning_rank


@dataclass(frozen=True)
class SimplificationResult:
    sentence: TokenizedSentence
    target_index: int | None
    target: str | None
    scored: tuple[CandidateScore, ...]
    ranked: tuple[CandidateScore, ...]

    @property
    def ranked_words(self) -> tuple[str, ...]:
        return tuple(c.candidate for c in self.ranked)


@dataclass(frozen=True)
class PipelineConfig:
    n_candidates: int = DEFAULT_SUGGESTIONS
    limit: int = DEFAULT_LIMIT
    floor: int = DEFAULT_FLOOR
    stoplist: frozenset[str] = field(default_factory=frozenset)


def load_config(path) -> PipelineConfig:
    """Parse a ``key = value`` config file (keys: n, limit, floor, stoplist)."""
    from .lexres import load_stoplist

    values: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise ParseError(path, line_no, f"expected 'key = value', got {stripped!r}")
        values[key.strip().lower()] = value.strip()

    known = {"n", "limit", "floor", "stoplist"}
    unknown = set(values) - known
    if unknown:
        raise ParseError(path, 1, f"unknown config keys: {', '.join(sorted(unknown))}")

    def as_int(key, default):
        if key not in values:
            return default
        try:
            return int(values[key])
        except ValueError:
            raise ParseError(path, 1, f"{key} must be an integer, got {values[key]!r}") from None

    stoplist = frozenset()
    if "stoplist" in values:
        stop_path = Path(path).parent / values["stoplist"]
        stoplist = load_stoplist(stop_path)
    return PipelineConfig(
        n_candidates=as_int("n", DEFAULT_SUGGESTIONS),
        limit=as_int("limit", DEFAULT_LIMIT),
        floor=as_int("floor", DEFAULT_FLOOR),
        stoplist=stoplist,
    )


def identify_complex_word(
    sentence: TokenizedSentence,
    resources: ResourceSet,
    stoplist: frozenset[str] = frozenset(),
    floor: int = DEFAULT_FLOOR,
) -> tuple[int, str] | None:
    """Pick the hardest eligible token, or None when nothing qualifies.

    Eligible tokens are alphabetic and not stoplisted. Hardest = highest
    CEFR level (unknown forms count as level 6); ties prefer tokens with
    a verb analysis, then higher corpus frequency, then the leftmost
    position. Returns None when the best level is at or below ``floor``.
    """
    cefr = resources.require_cefr()
    freq = resources.require_freq()
    morph = resources.morph

    best: tuple[int, int, int] | None = None
    best_pos = None
    for i, tok in enumerate(sentence.tokens):
        folded = tok.lower()
        if not is_wordlike(tok) or folded in stoplist:
            continue
        is_verb = 0
        if morph is not None:
            is_verb = int(any(a.upos == "VERB" for a in morph.analyses(folded)))
        key = (cefr.level(folded), is_verb, freq.count(folded))
        if best is None or key > best:
            best = key
            best_pos = i
    if best is None or best[0] <= floor:
        return None
    return best_pos, sentence.tokens[best_pos]


Suggester = Callable[[TokenizedSentence, int], Sequence[str]]


class SynonymLexiconSuggester:
    """Suggestions from a TSV of ``form<TAB>synonym_1,synonym_2,...``."""

    def __init__(self, table: dict[str, Sequence[str]]):
        self._table = {form.lower(): tuple(subs) for form, subs in table.items()}

    @classmethod
    def from_file(cls, path) -> "SynonymLexiconSuggester":
        table: dict[str, list[str]] = {}
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh.read().splitlines(), start=1):
                if not line.strip():
                    continue
                fields = line.split("\t")
                if len(fields) != 2:
                    raise ParseError(path, line_no, f"expected 2 fields, got {len(fields)}")
                subs = [s.strip() for s in fields[1].split(",") if s.strip()]
                table.setdefault(fields[0].strip().lower(), []).extend(subs)
        return cls(table)

    def __call__(self, sentence: TokenizedSentence, target_index: int) -> Sequence[str]:
        return list(self._table.get(sentence.tokens[target_index].lower(), ()))


class EmbeddingNeighborSuggester:
    """Top-k nearest neighbors of the target in an embedding table."""

    def __init__(self, embeddings: EmbeddingTable, k: int = DEFAULT_SUGGESTIONS):
        self._embeddings = embeddings
        self._k = k

    def __call__(self, sentence: TokenizedSentence, target_index: int) -> Sequence[str]:
        target = sentence.tokens[target_index].lower()
        vec = self._embeddings.vector(target)
        if vec is None or not vec.any():
            return []
        scored = []
        for form in self._embeddings.forms():
            if form == target:
                continue
            other = self._embeddings.vector(form)
            if not other.any():
                continue
            scored.append((-cosine(vec, other), form))
        scored.sort()
        return [form for _, form in scored[: self._k]]


class FileCandidateSuggester:
    """Candidates read from a Predictions-TSV override file.

    Lets any external generator's output run through the ranking stages;
    lookups key on (exact raw sentence, lowercased target).
    """

    def __init__(self, path):
        self._table: dict[tuple[str, str], tuple[str, ...]] = {}
        for rec in load_predictions(path):
            if rec.complex_word is None:
                continue
            self._table[(rec.sentence, rec.complex_word.lower())] = rec.candidates

    def __call__(self, sentence: TokenizedSentence, target_index: int) -> Sequence[str]:
        key = (sentence.raw, sentence.tokens[target_index].lower())
        return list(self._table.get(key, ()))


def generate_candidates(
    sentence: TokenizedSentence,
    target_index: int,
    suggester: Suggester,
    resources: ResourceSet,
    n: int = DEFAULT_SUGGESTIONS,
) -> list[str]:
    """Lowercase, deduplicate, exclude target inflections, truncate to n."""
    morph = resources.require_morph()
    target = sentence.tokens[target_index]
    excluded = morph.lemma_forms(target.lower())
    seen: set[str] = set()
    out: list[str] = []
    for suggestion in suggester(sentence, target_index):
        cand = suggestion.lower()
        if cand in seen or cand in excluded:
            continue
        seen.add(cand)
        out.append(cand)
        if len(out) == n:
            break
    return out


def grammaticality(
    target_analyses: Sequence[Analysis],
    candidate_analyses: Sequence[Analysis],
) -> int:
    """1 iff some candidate analysis matches some target analysis exactly
    on coarse POS and the full feature map; unknown forms score 0."""
    for ta in target_analyses:
        for ca in candidate_analyses:
            if ta.matches(ca):
                return 1
    return 0


def meaning_ranks(
    sentence: TokenizedSentence,
    target_index: int,
    candidates: Sequence[str],
    embeddings: EmbeddingTable,
) -> dict[str, int]:
    """Rank candidates by how well substitution preserves the sentence.

    Each candidate replaces the target token; greedy embedding-match F1
    between the original and substituted token sequences orders them
    (best F1 gets M=1). Ties keep generation order.
    """
    original = list(sentence.tokens)
    scored = []
    for gen_rank, cand in enumerate(candidates, start=1):
        substituted = list(original)
        substituted[target_index] = cand
        f1 = embed_similarity_f1(original, substituted, embeddings).f1
        scored.append((-f1, gen_rank, cand))
    scored.sort(key=lambda item: (item[0], item[1]))
    return {cand: rank for rank, (_, _, cand) in enumerate(scored, start=1)}


def rank_candidates(
    scored: Sequence[CandidateScore],
    limit: int = DEFAULT_LIMIT,
) -> list[CandidateScore]:
    """Drop ungrammatical candidates, sort by ascending 2*S + M, truncate.

    Ties break on smaller M, then earlier generation rank.
    """
    survivors = [c for c in scored if c.grammatical == 1]
    survivors.sort(key=lambda c: (c.combined, c.meaning_rank, c.generation_rank))
    return survivors[:limit]


def score_candidates(
    sentence: TokenizedSentence,
    target_index: int,
    candidates: Sequence[str],
    resources: ResourceSet,
) -> list[CandidateScore]:
    """Compute G, S and M for every generated candidate."""
    morph = resources.require_morph()
    cefr = resources.require_cefr()
    embeddings = resources.require_embeddings()
    target_analyses = morph.analyses(sentence.tokens[target_index].lower())
    ranks = meaning_ranks(sentence, target_index, candidates, embeddings)
    total = len(candidates)
    return [
        CandidateScore(
            candidate=cand,
            grammatical=grammaticality(target_analyses, morph.analyses(cand)),
            simplicity=cefr.level(cand),
            meaning_rank=ranks[cand],
            total_candidates=total,
            generation_rank=gen_rank,
        )
        for gen_rank, cand in enumerate(candidates, start=1)
    ]


def simplify_sentence(
    sentence: TokenizedSentence | str,
    resources: ResourceSet,
    suggester: Suggester,
    config: PipelineConfig = PipelineConfig(),
) -> SimplificationResult:
    """Run identification, generation and ranking on one sentence."""
    if isinstance(sentence, str):
        sentence = tokenize(sentence)
    stoplist = config.stoplist | resources.stoplist
    found = identify_complex_word(sentence, resources, stoplist, config.floor)
    if found is None:
        return SimplificationResult(sentence, None, None, (), ())
    index, target = found
    candidates = generate_candidates(sentence, index, suggester, resources, config.n_candidates)
    scored = score_candidates(sentence, index, candidates, resources)
    ranked = rank_candidates(scored, config.limit)
    return SimplificationResult(sentence, index, target, tuple(scored), tuple(ranked))
