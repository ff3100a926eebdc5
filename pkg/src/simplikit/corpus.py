"""Sentence data model, tokenization, corpus loaders, and 1:1 alignment.

File formats handled here:

* Gold TSV: ``sentence<TAB>complex_word<TAB>sub_1<TAB>...<TAB>sub_k``,
  one instance per non-empty line, substitutes repeated once per annotator.
* Predictions TSV: ``sentence<TAB>complex_word<TAB>cand_1<TAB>...<TAB>cand_j``
  with j <= 10. A line holding only the sentence means no target was
  identified for it.
* Parallel JSONL: one object per line with ``source`` (string),
  ``references`` (non-empty array of strings) and optional ``id``.
* Plain text: one sentence per line.
"""

from __future__ import annotations

import json
import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ParseError

# Apostrophes and hyphens stay inside a token when flanked by word characters.
_CONNECTORS = frozenset("'’-")


def _is_word_char(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("L", "M", "N")


@dataclass(frozen=True)
class TokenizedSentence:
    """A raw sentence plus its tokens and their character offsets."""

    raw: str
    tokens: tuple[str, ...]
    offsets: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.tokens)


def tokenize(text: str) -> TokenizedSentence:
    """Split ``text`` into tokens deterministically.

    Tokens are maximal runs of letters, digits and combining marks.
    Apostrophes and hyphens are kept when word-internal ("cat's",
    "once-famous"); any other non-whitespace character becomes a
    single-character token. Whitespace is discarded.
    """
    tokens: list[str] = []
    offsets: list[tuple[int, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if _is_word_char(ch):
            j = i + 1
            while j < n:
                c = text[j]
                if _is_word_char(c):
                    j += 1
                elif c in _CONNECTORS and j + 1 < n and _is_word_char(text[j + 1]):
                    j += 2
                else:
                    break
            tokens.append(text[i:j])
            offsets.append((i, j))
            i = j
        else:
            tokens.append(ch)
            offsets.append((i, i + 1))
            i += 1
    return TokenizedSentence(text, tuple(tokens), tuple(offsets))


def is_wordlike(token: str) -> bool:
    """True for tokens made of letters/marks/connectors with >= 1 letter.

    This is the "alphabetic" test used for complex-word eligibility and
    content-token selection; it keeps hyphenated and apostrophe forms.
    """
    has_letter = False
    for ch in token:
        cat = unicodedata.category(ch)
        if cat[0] == "L":
            has_letter = True
        elif cat[0] != "M" and ch not in _CONNECTORS:
            return False
    return has_letter


@dataclass(frozen=True)
class LexInstance:
    """One gold lexical-simplification item.

    ``gold`` is a multiset (Counter) of lowercased substitutes, one entry
    per annotator suggestion. Its distinct elements form the gold set, its
    most frequent elements the top-1 gold.
    """

    sentence: TokenizedSentence
    target_index: int
    gold: Counter

    @property
    def target(self) -> str:
        return self.sentence.tokens[self.target_index]

    @property
    def gold_set(self) -> frozenset[str]:
        return frozenset(self.gold)

    @property
    def gold_modes(self) -> frozenset[str]:
        top = max(self.gold.values())
        return frozenset(w for w, c in self.gold.items() if c == top)


@dataclass(frozen=True)
class PredictionRecord:
    """A system's ranked substitutes for one (sentence, complex word)."""

    sentence: str
    complex_word: str | None
    candidates: tuple[str, ...]


@dataclass(frozen=True)
class ParallelPair:
    """A source sentence with one or more reference simplifications."""

    id: str
    source: TokenizedSentence
    references: tuple[TokenizedSentence, ...]

    @property
    def is_identity(self) -> bool:
        return all(r.raw == self.source.raw for r in self.references)


def _read_lines(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


def load_lines(path) -> list[str]:
    """Read a plain-text file, one sentence per line (blank lines kept)."""
    return _read_lines(path)


def load_lexical_gold(path) -> list[LexInstance]:
    """Parse a Gold TSV file into LexInstances.

    Substitutes are lowercased; per-annotator duplicates are preserved in
    the multiset. The complex word must occur in the sentence.
    """
    instances = []
    for line_no, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) < 3:
            raise ParseError(path, line_no, f"expected >= 3 tab-separated fields, got {len(fields)}")
        sentence = tokenize(fields[0])
        word = fields[1].strip()
        subs = [f.strip().lower() for f in fields[2:] if f.strip()]
        if not word:
            raise ParseError(path, line_no, "empty complex word")
        if not subs:
            raise ParseError(path, line_no, "no gold substitutes")
        index = _find_token(sentence, word)
        if index is None:
            raise ParseError(path, line_no, f"complex word {word!r} not found in sentence")
        instances.append(LexInstance(sentence, index, Counter(subs)))
    return instances


def _find_token(sentence: TokenizedSentence, word: str) -> int | None:
    folded = word.lower()
    for i, tok in enumerate(sentence.tokens):
        if tok.lower() == folded:
            return i
    return None


MAX_PREDICTION_CANDIDATES = 10


def load_predictions(path) -> list[PredictionRecord]:
    """Parse a Predictions TSV file.

    Candidates are lowercased and deduplicated keeping the first
    occurrence. More than 10 candidate fields on a line is a format error.
    """
    records = []
    for line_no, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) == 1:
            records.append(PredictionRecord(fields[0], None, ()))
            continue
        word = fields[1].strip()
        raw_cands = [f.strip() for f in fields[2:] if f.strip()]
        if len(raw_cands) > MAX_PREDICTION_CANDIDATES:
            raise ParseError(
                path, line_no,
                f"{len(raw_cands)} candidates exceed the limit of {MAX_PREDICTION_CANDIDATES}",
            )
        seen = set()
        cands = []
        for c in raw_cands:
            c = c.lower()
            if c not in seen:
                seen.add(c)
                cands.append(c)
        records.append(PredictionRecord(fields[0], word or None, tuple(cands)))
    return records


def load_parallel(path) -> list[ParallelPair]:
    """Parse a Parallel JSONL file; ``id`` defaults to the 1-based line number."""
    pairs = []
    for line_no, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(path, line_no, f"invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise ParseError(path, line_no, "expected a JSON object")
        source = obj.get("source")
        refs = obj.get("references")
        if not isinstance(source, str):
            raise ParseError(path, line_no, "missing or non-string 'source'")
        if not isinstance(refs, list) or not refs:
            raise ParseError(path, line_no, "'references' must be a non-empty array")
        if not all(isinstance(r, str) for r in refs):
            raise ParseError(path, line_no, "'references' entries must be strings")
        pair_id = obj.get("id", str(line_no))
        if not isinstance(pair_id, str):
            pair_id = str(pair_id)
        pairs.append(ParallelPair(pair_id, tokenize(source), tuple(tokenize(r) for r in refs)))
    return pairs


def align_one_to_one(
    src: Sequence,
    tgt: Sequence,
    sim: Callable,
    lo: float = 0.3,
    hi: float = 0.95,
) -> list[tuple[int, int, float]]:
    """Greedy 1:1 alignment of two sentence lists.

    Repeatedly matches the unmatched (i, j) pair of globally maximal
    similarity (ties: smallest i, then smallest j), then discards matches
    with similarity < lo (too dissimilar) or > hi (too similar). The
    result is sorted by source index and injective on both sides.
    """
    if not 0.0 <= lo < hi <= 1.0:
        raise ValueError(f"require 0 <= lo < hi <= 1, got lo={lo}, hi={hi}")
    scored = [
        (-sim(s, t), i, j)
        for i, s in enumerate(src)
        for j, t in enumerate(tgt)
    ]
    scored.sort()
    used_src: set[int] = set()
    used_tgt: set[int] = set()
    matches = []
    for neg, i, j in scored:
        if i in used_src or j in used_tgt:
            continue
        used_src.add(i)
        used_tgt.add(j)
        sim_val = -neg
        if lo <= sim_val <= hi:
            matches.append((i, j, sim_val))
    matches.sort(key=lambda m: m[0])
    return matches


def jaccard_similarity(a: str, b: str) -> float:
    """Token-set Jaccard similarity over lowercased tokens, in [0, 1]."""
    sa = {t.lower() for t in tokenize(a).tokens}
    sb = {t.lower() for t in tokenize(b).tokens}
    if not sa and not sb:
        return 1.0
    return len(sa & sb) / len(sa | sb)


def edit_similarity(a: str, b: str) -> float:
    """1 - edit_distance/max_len over raw characters, in [0, 1]."""
    from .sentmetrics import edit_distance

    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(a, b) / longest
