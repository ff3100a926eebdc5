"""Sentence-level simplification metrics.

BLEU (corpus-level, clipped n-gram precisions with brevity penalty),
SARI (keep/add/delete n-gram scores against source and references),
iSiM (frequency-based reference-less simplicity), greedy embedding-match
F1, and character-level Levenshtein distance.

Scores are kept in [0, 1]; reports multiply by 100 for display only.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import TokenizedSentence, is_wordlike, tokenize
from .errors import DataError
from .lexres import EmbeddingTable, FreqLexicon

NGRAM_ORDERS = (1, 2, 3, 4)


def _as_tokens(sentence) -> list[str]:
    """Accept a raw string, a TokenizedSentence, or a pre-split token list."""
    if isinstance(sentence, TokenizedSentence):
        return list(sentence.tokens)
    if isinstance(sentence, str):
        return list(tokenize(sentence).tokens)
    return list(sentence)


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(zip(*(tokens[i:] for i in range(n)))) if len(tokens) >= n else Counter()


def _ngram_set(tokens: Sequence[str], n: int) -> frozenset:
    if len(tokens) < n:
        return frozenset()
    return frozenset(zip(*(tokens[i:] for i in range(n))))


@dataclass(frozen=True)
class BleuResult:
    score: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    sys_len: int
    ref_len: int


def bleu(
    outputs: Sequence,
    references: Sequence,
    max_n: int = 4,
    smoothing: bool = False,
    mode: str = "reference",
) -> BleuResult:
    """Corpus-level BLEU.

    ``references`` holds one list of reference sentences per output line.
    In ``refless`` mode it is instead the flat list of source sentences,
    each serving as the single reference for its line. n-gram counts are
    clipped at the per-reference maximum; the effective reference length
    sums, per line, the reference length closest to the output length
    (ties go to the shorter). With smoothing off, any zero precision
    zeroes the score; the optional smoothing adds one to numerator and
    denominator for orders >= 2.
    """
    if mode == "refless":
        references = [[src] for src in references]
    elif mode != "reference":
        raise ValueError(f"unknown BLEU mode {mode!r}")
    if len(outputs) != len(references):
        raise DataError(f"outputs ({len(outputs)}) and references ({len(references)}) disagree")
    if not outputs:
        raise DataError("empty corpus")

    matched = [0] * max_n
    total = [0] * max_n
    sys_len = 0
    ref_len = 0
    for out, refs in zip(outputs, references):
        if not refs:
            raise DataError("a line has no references")
        out_toks = _as_tokens(out)
        ref_toks = [_as_tokens(r) for r in refs]
        sys_len += len(out_toks)
        ref_len += min((abs(len(r) - len(out_toks)), len(r)) for r in ref_toks)[1]
        for n in range(1, max_n + 1):
            out_counts = _ngram_counts(out_toks, n)
            if not out_counts:
                continue
            clip: Counter = Counter()
            for r in ref_toks:
                r_counts = _ngram_counts(r, n)
                for g in out_counts:
                    if r_counts[g] > clip[g]:
                        clip[g] = r_counts[g]
            matched[n - 1] += sum(min(c, clip[g]) for g, c in out_counts.items())
            total[n - 1] += sum(out_counts.values())

    precisions = []
    for n in range(1, max_n + 1):
        num, den = matched[n - 1], total[n - 1]
        if smoothing and n >= 2:
            num, den = num + 1, den + 1
        # an order with no candidate n-grams at all is vacuously perfect,
        # so identity corpora of short sentences still score 1
        precisions.append(num / den if den else 1.0)

    if sys_len == 0:
        bp = 0.0
    elif sys_len >= ref_len:
        bp = 1.0
    else:
        bp = math.exp(1.0 - ref_len / sys_len)

    if any(p == 0.0 for p in precisions) or bp == 0.0:
        score = 0.0
    else:
        score = bp * math.exp(sum(math.log(p) for p in precisions) / max_n)
    return BleuResult(score, tuple(precisions), bp, sys_len, ref_len)


@dataclass(frozen=True)
class SariResult:
    score: float
    keep: tuple[float, ...]    # per n-gram order, corpus mean
    delete: tuple[float, ...]
    add: tuple[float, ...]


def _harmonic(p: float, r: float) -> float:
    return 2.0 * p * r / (p + r) if p + r > 0.0 else 0.0


def _sari_sentence(src_toks, out_toks, ref_toks_list):
    """Per-order (keep, delete, add) components for one sentence."""
    m = len(ref_toks_list)
    keeps, dels, adds = [], [], []
    for n in NGRAM_ORDERS:
        src = _ngram_set(src_toks, n)
        out = _ngram_set(out_toks, n)
        ref_sets = [_ngram_set(r, n) for r in ref_toks_list]
        rho = {}
        for g in set().union(src, out, *ref_sets):
            rho[g] = sum(g in rs for rs in ref_sets) / m

        # keep: n-grams retained from the source, weighted by reference support
        kept = src & out
        kept_mass = sum(rho[g] for g in kept)
        src_mass = sum(rho[g] for g in src)
        kp = kept_mass / len(kept) if kept else 1.0
        kr = kept_mass / src_mass if src_mass > 0.0 else 1.0
        keeps.append(_harmonic(kp, kr))

        # delete: precision only, weighted by reference non-support
        deleted = src - out
        dp = sum(1.0 - rho[g] for g in deleted) / len(deleted) if deleted else 1.0
        dels.append(dp)

        # add: novel n-grams that at least one reference contains
        added = out - src
        good = sum(1 for g in added if rho[g] > 0.0)
        ref_novel = sum(1 for g, w in rho.items() if w > 0.0 and g not in src)
        ap = good / len(added) if added else 1.0
        ar = good / ref_novel if ref_novel else 1.0
        adds.append(_harmonic(ap, ar))
    return keeps, dels, adds


def sari(sources: Sequence, outputs: Sequence, reference_lists: Sequence) -> SariResult:
    """Corpus SARI with set semantics and fractional reference support.

    Per sentence and per order n in 1..4, the keep score is the harmonic
    mean of reference-weighted precision/recall over source n-grams kept
    in the output; deletion is precision-only over dropped n-grams
    weighted by (1 - support); addition scores novel n-grams found in at
    least one reference. Vacuous components (0/0) count as 1. The
    sentence score averages (keep + add + delete)/3 over n; the corpus
    score averages sentences.
    """
    if not (len(sources) == len(outputs) == len(reference_lists)):
        raise DataError("sources, outputs and references must be line-aligned")
    if not sources:
        raise DataError("empty corpus")
    keep_sums = [0.0] * len(NGRAM_ORDERS)
    del_sums = [0.0] * len(NGRAM_ORDERS)
    add_sums = [0.0] * len(NGRAM_ORDERS)
    total = 0.0
    for src, out, refs in zip(sources, outputs, reference_lists):
        if not refs:
            raise DataError("a line has no references")
        keeps, dels, adds = _sari_sentence(
            _as_tokens(src), _as_tokens(out), [_as_tokens(r) for r in refs]
        )
        sent_score = sum(
            (k + a + d) / 3.0 for k, d, a in zip(keeps, dels, adds)
        ) / len(NGRAM_ORDERS)
        total += sent_score
        for idx in range(len(NGRAM_ORDERS)):
            keep_sums[idx] += keeps[idx]
            del_sums[idx] += dels[idx]
            add_sums[idx] += adds[idx]
    count = len(sources)
    return SariResult(
        total / count,
        tuple(s / count for s in keep_sums),
        tuple(s / count for s in del_sums),
        tuple(s / count for s in add_sums),
    )


def isim(sentence, freq: FreqLexicon, stoplist: frozenset[str] = frozenset()) -> float:
    """Mean of log(1+f(w))/log(1+f_max) over content tokens; 0 when none.

    Content tokens are alphabetic (word-like) tokens not in the stoplist.
    """
    if freq.f_max < 1:
        raise DataError("iSiM needs a frequency lexicon with f_max >= 1")
    tokens = _as_tokens(sentence)
    denom = math.log1p(freq.f_max)
    values = [
        math.log1p(freq.count(tok)) / denom
        for tok in tokens
        if is_wordlike(tok) and tok.lower() not in stoplist
    ]
    return sum(values) / len(values) if values else 0.0


@dataclass(frozen=True)
class MatchScore:
    precision: float
    recall: float
    f1: float


def embed_similarity_f1(tokens_a, tokens_b, embeddings: EmbeddingTable) -> MatchScore:
    """Greedy maximum-cosine token matching between two token sequences.

    Recall averages, over tokens of ``a``, the best cosine against tokens
    of ``b``; precision mirrors it from ``b``'s side. A token without an
    embedding (or with a zero vector) contributes 0, and best matches are
    floored at 0 so the scores stay in [0, 1].
    """
    toks_a = _as_tokens(tokens_a)
    toks_b = _as_tokens(tokens_b)
    if not toks_a or not toks_b:
        raise DataError("embedding similarity needs non-empty token sequences")

    def unit_rows(tokens):
        rows = np.zeros((len(tokens), embeddings.dim), dtype=np.float64)
        for i, tok in enumerate(tokens):
            vec = embeddings.vector(tok.lower())
            if vec is not None:
                norm = np.linalg.norm(vec)
                if norm > 0.0:
                    rows[i] = vec / norm
        return rows

    a = unit_rows(toks_a)
    b = unit_rows(toks_b)
    sims = a @ b.T
    recall = float(np.mean(np.maximum(sims.max(axis=1), 0.0)))
    precision = float(np.mean(np.maximum(sims.max(axis=0), 0.0)))
    return MatchScore(precision, recall, _harmonic(precision, recall))


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance over Unicode scalar values, unit costs."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


@dataclass(frozen=True)
class SentReport:
    """Corpus-level sentence-simplification report (scores in [0, 1])."""

    bleu: float
    sari: float
    sari_keep: tuple[float, ...]
    sari_delete: tuple[float, ...]
    sari_add: tuple[float, ...]
    edit_distance: float
    pairs: int
    identity_excluded: bool
    excluded_pairs: int
    isim: float | None = None
    embed_f1: float | None = None

    def to_dict(self) -> dict:
        out: dict[str, object] = {
            "BLEU": self.bleu,
            "SARI": self.sari,
            "EditDistance": self.edit_distance,
            "pairs": self.pairs,
            "identity_excluded": self.identity_excluded,
            "excluded_pairs": self.excluded_pairs,
        }
        for idx, n in enumerate(NGRAM_ORDERS):
            out[f"SARI_keep_{n}"] = self.sari_keep[idx]
            out[f"SARI_del_{n}"] = self.sari_delete[idx]
            out[f"SARI_add_{n}"] = self.sari_add[idx]
        if self.isim is not None:
            out["iSiM"] = self.isim
        if self.embed_f1 is not None:
            out["EmbedF1"] = self.embed_f1
        return out


def evaluate_sentence(
    sources: Sequence[str],
    outputs: Sequence[str],
    reference_lists: Sequence[Sequence[str]],
    exclude_identity: bool = False,
    smoothing: bool = False,
    max_n: int = 4,
    freq: FreqLexicon | None = None,
    embeddings: EmbeddingTable | None = None,
    stoplist: frozenset[str] = frozenset(),
) -> SentReport:
    """Assemble the full sentence report over line-aligned corpora.

    Identity pairs (every reference equal to the source) can be excluded.
    iSiM is computed over outputs when a frequency lexicon is supplied;
    EmbedF1 (max over references, mean over pairs) when an embedding
    table is. Mean edit distance is source-vs-output.
    """
    if not (len(sources) == len(outputs) == len(reference_lists)):
        raise DataError(
            f"line counts disagree (sources: {len(sources)}, outputs: {len(outputs)}, "
            f"references: {len(reference_lists)})"
        )
    triples = list(zip(sources, outputs, reference_lists))
    excluded = 0
    if exclude_identity:
        kept = [t for t in triples if not all(r == t[0] for r in t[2])]
        excluded = len(triples) - len(kept)
        triples = kept
    if not triples:
        raise DataError("no sentence pairs left to evaluate")

    srcs = [t[0] for t in triples]
    outs = [t[1] for t in triples]
    refs = [list(t[2]) for t in triples]
    src_toks = [_as_tokens(s) for s in srcs]
    out_toks = [_as_tokens(o) for o in outs]
    ref_toks = [[_as_tokens(r) for r in rl] for rl in refs]

    bleu_res = bleu(out_toks, ref_toks, max_n=max_n, smoothing=smoothing)
    sari_res = sari(src_toks, out_toks, ref_toks)
    mean_edit = sum(edit_distance(s, o) for s, o in zip(srcs, outs)) / len(triples)

    isim_val = None
    if freq is not None:
        isim_val = sum(isim(toks, freq, stoplist) for toks in out_toks) / len(triples)
    f1_val = None
    if embeddings is not None:
        f1_val = sum(
            max(embed_similarity_f1(o, r, embeddings).f1 for r in rl)
            for o, rl in zip(out_toks, ref_toks)
        ) / len(triples)

    return SentReport(
        bleu=bleu_res.score,
        sari=sari_res.score,
        sari_keep=sari_res.keep,
        sari_delete=sari_res.delete,
        sari_add=sari_res.add,
        edit_distance=mean_edit,
        pairs=len(triples),
        identity_excluded=exclude_identity,
        excluded_pairs=excluded,
        isim=isim_val,
        embed_f1=f1_val,
    )
