"""Translation complexity-drift analysis over parallel corpora.

For each pair id present in both the original and the machine-translated
corpus, computes the change in within-pair cosine similarity and in
within-pair character edit distance, then summarizes the delta
distributions and bins them into histograms.

Sentence embeddings are precomputed externally and supplied as a TSV of
``id<TAB>v1 ... vd`` rows. One file covers all four sentences of a pair
under the keys ``<pair_id>.orig.src``, ``<pair_id>.orig.ref``,
``<pair_id>.mt.src`` and ``<pair_id>.mt.ref``.
"""

from __future__ import annotations

import statistics
from bisect import bisect_right
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .corpus import ParallelPair
from .errors import DataError, ParseError
from .lexres import cosine
from .sentmetrics import edit_distance

ORIGINAL_TAG = "orig"
TRANSLATED_TAG = "mt"


@dataclass(frozen=True)
class DriftPair:
    pair_id: str
    delta_cos: float
    delta_edit: int


def load_sentence_embeddings(path) -> dict[str, np.ndarray]:
    """Load an id-keyed sentence-embedding TSV (no header)."""
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh.read().splitlines(), start=1):
            if not line.strip():
                continue
            key, sep, rest = line.partition("\t")
            if not sep or not rest.strip():
                raise ParseError(path, line_no, "expected 'id<TAB>v1 ... vd'")
            try:
                vec = np.array([float(x) for x in rest.split()], dtype=np.float64)
            except ValueError:
                raise ParseError(path, line_no, "non-numeric vector component") from None
            if dim is None:
                dim = vec.shape[0]
            elif vec.shape[0] != dim:
                raise ParseError(path, line_no, f"expected {dim} components, got {vec.shape[0]}")
            if not np.all(np.isfinite(vec)):
                raise ParseError(path, line_no, "non-finite vector component")
            if key in vectors:
                raise ParseError(path, line_no, f"duplicate id {key!r}")
            vectors[key] = vec
    return vectors


def _pair_similarity(pair: ParallelPair, embeddings, corpus_tag: str) -> float:
    src_key = f"{pair.id}.{corpus_tag}.src"
    ref_key = f"{pair.id}.{corpus_tag}.ref"
    missing = [k for k in (src_key, ref_key) if k not in embeddings]
    if missing:
        raise DataError(f"missing sentence embedding(s): {', '.join(missing)}")
    try:
        return cosine(embeddings[src_key], embeddings[ref_key])
    except ValueError as exc:
        raise DataError(f"pair {pair.id!r}: {exc}") from exc


def _pair_edit(pair: ParallelPair) -> int:
    return edit_distance(pair.source.raw, pair.references[0].raw)


def compute_drift(
    original: Sequence[ParallelPair],
    translated: Sequence[ParallelPair],
    embeddings: Mapping[str, np.ndarray],
) -> list[DriftPair]:
    """One DriftPair per id, in original-corpus order.

    delta_cos = cos(translated pair) - cos(original pair);
    delta_edit likewise for the character edit distance between the
    source and the first reference. Ids must match across corpora.
    """
    orig_by_id = {p.id: p for p in original}
    trans_by_id = {p.id: p for p in translated}
    if len(orig_by_id) != len(original):
        raise DataError("duplicate pair ids in the original corpus")
    if len(trans_by_id) != len(translated):
        raise DataError("duplicate pair ids in the translated corpus")
    only_orig = sorted(set(orig_by_id) - set(trans_by_id))
    only_trans = sorted(set(trans_by_id) - set(orig_by_id))
    if only_orig or only_trans:
        parts = []
        if only_orig:
            parts.append(f"only in original: {', '.join(only_orig[:10])}")
        if only_trans:
            parts.append(f"only in translated: {', '.join(only_trans[:10])}")
        raise DataError("pair ids disagree (" + "; ".join(parts) + ")")

    out = []
    for pair in original:
        trans = trans_by_id[pair.id]
        delta_cos = (
            _pair_similarity(trans, embeddings, TRANSLATED_TAG)
            - _pair_similarity(pair, embeddings, ORIGINAL_TAG)
        )
        delta_edit = _pair_edit(trans) - _pair_edit(pair)
        out.append(DriftPair(pair.id, delta_cos, delta_edit))
    return out


@dataclass(frozen=True)
class DriftSummary:
    count: int
    fraction_positive: float
    fraction_zero: float
    fraction_negative: float
    median: float
    median_positive: float | None
    median_negative: float | None

    def to_dict(self, prefix: str = "") -> dict:
        out: dict[str, object] = {
            f"{prefix}count": self.count,
            f"{prefix}fraction_positive": self.fraction_positive,
            f"{prefix}fraction_zero": self.fraction_zero,
            f"{prefix}fraction_negative": self.fraction_negative,
            f"{prefix}median": float(self.median),
            f"{prefix}median_positive": None if self.median_positive is None else float(self.median_positive),
            f"{prefix}median_negative": None if self.median_negative is None else float(self.median_negative),
        }
        return out


def summarize(deltas: Sequence[float]) -> DriftSummary:
    """Sign fractions plus overall/positive/negative medians.

    Zero deltas form their own category; medians of empty subsets are
    reported absent. Even-count medians are the midpoint of the two
    central values.
    """
    if not deltas:
        raise DataError("no deltas to summarize")
    positives = [d for d in deltas if d > 0]
    negatives = [d for d in deltas if d < 0]
    zeros = len(deltas) - len(positives) - len(negatives)
    n = len(deltas)
    return DriftSummary(
        count=n,
        fraction_positive=len(positives) / n,
        fraction_zero=zeros / n,
        fraction_negative=len(negatives) / n,
        median=statistics.median(deltas),
        median_positive=statistics.median(positives) if positives else None,
        median_negative=statistics.median(negatives) if negatives else None,
    )


@dataclass(frozen=True)
class Histogram:
    edges: tuple[float, ...]
    counts: tuple[int, ...]
    underflow: int
    overflow: int

    def total(self) -> int:
        return sum(self.counts) + self.underflow + self.overflow

    def to_csv(self) -> str:
        """``bin_lo,bin_hi,count`` rows (under/overflow are not bins)."""
        lines = ["bin_lo,bin_hi,count"]
        for i, count in enumerate(self.counts):
            lines.append(f"{self.edges[i]:.6f},{self.edges[i + 1]:.6f},{count}")
        return "\n".join(lines) + "\n"


def histogram(values: Sequence[float], bins: int | Sequence[float] = 10) -> Histogram:
    """Bin values into equal-width bins or explicit ascending edges.

    Values on an interior edge go to the right bin; the maximum goes to
    the last bin. With explicit edges, values outside the range land in
    the underflow/overflow counts. A degenerate all-equal input is
    binned over value +/- 0.5.
    """
    if not values:
        raise DataError("no values to bin")
    if isinstance(bins, int):
        if bins < 1:
            raise ValueError(f"bin count must be >= 1, got {bins}")
        lo = min(values)
        hi = max(values)
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        edges = [lo + (hi - lo) * i / bins for i in range(bins + 1)]
        edges[-1] = hi
    else:
        edges = [float(e) for e in bins]
        if len(edges) < 2 or any(a >= b for a, b in zip(edges, edges[1:])):
            raise ValueError("explicit edges must be >= 2 strictly ascending values")

    counts = [0] * (len(edges) - 1)
    underflow = 0
    overflow = 0
    for v in values:
        if v < edges[0]:
            underflow += 1
        elif v > edges[-1]:
            overflow += 1
        elif v == edges[-1]:
            counts[-1] += 1
        else:
            counts[bisect_right(edges, v) - 1] += 1
    return Histogram(tuple(edges), tuple(counts), underflow, overflow)


def drift_report(pairs: Sequence[DriftPair]) -> dict:
    """Summary dictionary over both delta distributions."""
    cos_summary = summarize([p.delta_cos for p in pairs])
    edit_summary = summarize([float(p.delta_edit) for p in pairs])
    out: dict[str, object] = {"pairs": len(pairs)}
    out.update(cos_summary.to_dict("delta_cos_"))
    out.update(edit_summary.to_dict("delta_edit_"))
    return out
