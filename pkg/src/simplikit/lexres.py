"""Lexical resources: frequency, CEFR, morphology, and word embeddings.

All lookups case-fold with simple Unicode lowercasing. Out-of-vocabulary
policy: frequency 0, CEFR level 6 (hardest), no morphological analyses.

File formats:

* Frequency TSV: ``form<TAB>count`` (non-negative integer). Duplicate
  rows (including case variants that fold together) have their counts
  summed.
* CEFR TSV: ``form<TAB>UPOS<TAB>level`` with level in 1..6. Duplicate
  (form, UPOS) rows must agree on the level.
* Morph TSV: ``form<TAB>lemma<TAB>UPOS<TAB>feats`` where feats is
  ``Key=Val|Key=Val`` sorted by key, or ``_`` when empty. Multiple rows
  per form accumulate analyses.
* Embeddings: first line ``N d``, then N lines ``form v1 ... vd``
  (space-separated decimals). The first row wins when forms collide
  after case-folding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError, ResourceMissingError

CEFR_MIN, CEFR_MAX = 1, 6
OOV_CEFR_LEVEL = CEFR_MAX


class FreqLexicon:
    """Corpus frequency table; lookups of absent forms return 0."""

    def __init__(self, counts: dict[str, int]):
        self._counts = {w.lower(): int(c) for w, c in counts.items()}
        self.f_max = max(self._counts.values(), default=0)

    def count(self, form: str) -> int:
        return self._counts.get(form.lower(), 0)

    def __len__(self) -> int:
        return len(self._counts)


class CefrLexicon:
    """(form, UPOS) -> difficulty level, 1 (A1) .. 6 (C2)."""

    def __init__(self, levels: dict[tuple[str, str], int]):
        self._levels: dict[tuple[str, str], int] = {}
        self._form_min: dict[str, int] = {}
        for (form, pos), level in levels.items():
            level = int(level)
            if not CEFR_MIN <= level <= CEFR_MAX:
                raise ValueError(f"CEFR level {level} for {form!r} outside {CEFR_MIN}..{CEFR_MAX}")
            key = (form.lower(), pos)
            self._levels[key] = level
            cur = self._form_min.get(key[0])
            self._form_min[key[0]] = level if cur is None else min(cur, level)

    def level(self, form: str, pos: str | None = None) -> int:
        """Level of ``form`` (minimum across POS when ``pos`` is None); 6 when unknown."""
        if pos is not None:
            return self._levels.get((form.lower(), pos), OOV_CEFR_LEVEL)
        return self._form_min.get(form.lower(), OOV_CEFR_LEVEL)

    def __contains__(self, form: str) -> bool:
        return form.lower() in self._form_min

    def __len__(self) -> int:
        return len(self._levels)


@dataclass(frozen=True)
class Analysis:
    """One morphological reading: lemma, coarse POS, and a feature map."""

    lemma: str
    upos: str
    feats: tuple[tuple[str, str], ...]  # sorted (key, value) pairs

    def matches(self, other: "Analysis") -> bool:
        """Same coarse POS and identical feature map (lemma ignored)."""
        return self.upos == other.upos and self.feats == other.feats


class MorphLexicon:
    """form -> analyses, plus a lemma -> forms reverse index."""

    def __init__(self, analyses: dict[str, tuple[Analysis, ...]]):
        self._analyses = {f.lower(): tuple(a) for f, a in analyses.items()}
        self._by_lemma: dict[str, set[str]] = {}
        for form, anas in self._analyses.items():
            for ana in anas:
                self._by_lemma.setdefault(ana.lemma, set()).add(form)

    def analyses(self, form: str) -> tuple[Analysis, ...]:
        return self._analyses.get(form.lower(), ())

    def lemma_forms(self, form: str) -> frozenset[str]:
        """All forms sharing any lemma with ``form``; {form} when unknown."""
        folded = form.lower()
        anas = self._analyses.get(folded)
        if not anas:
            return frozenset((folded,))
        forms: set[str] = {folded}
        for ana in anas:
            forms |= self._by_lemma.get(ana.lemma, set())
        return frozenset(forms)

    def __contains__(self, form: str) -> bool:
        return form.lower() in self._analyses

    def __len__(self) -> int:
        return len(self._analyses)


class EmbeddingTable:
    """Word form -> dense float vector, all of one dimension."""

    def __init__(self, vectors: dict[str, np.ndarray]):
        self._vectors: dict[str, np.ndarray] = {}
        self.dim = 0
        for form, vec in vectors.items():
            arr = np.asarray(vec, dtype=np.float64)
            if self.dim == 0:
                self.dim = arr.shape[0]
            elif arr.shape[0] != self.dim:
                raise ValueError(f"vector for {form!r} has dim {arr.shape[0]}, expected {self.dim}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"vector for {form!r} has non-finite components")
            self._vectors.setdefault(form.lower(), arr)

    def vector(self, form: str) -> np.ndarray | None:
        return self._vectors.get(form.lower())

    def forms(self):
        return self._vectors.keys()

    def __contains__(self, form: str) -> bool:
        return form.lower() in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)


def cosine(u, v) -> float:
    """Cosine similarity in [-1, 1]; zero vectors are rejected."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine similarity is undefined for a zero vector")
    return float(np.dot(u, v) / (nu * nv))


def load_freq(path) -> FreqLexicon:
    counts: dict[str, int] = {}
    for line_no, line in enumerate(_read(path), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(path, line_no, f"expected 2 fields, got {len(fields)}")
        form = fields[0].strip().lower()
        try:
            count = int(fields[1])
        except ValueError:
            raise ParseError(path, line_no, f"count {fields[1]!r} is not an integer") from None
        if count < 0:
            raise ParseError(path, line_no, f"negative count {count}")
        counts[form] = counts.get(form, 0) + count
    return FreqLexicon(counts)


def load_cefr(path) -> CefrLexicon:
    levels: dict[tuple[str, str], int] = {}
    for line_no, line in enumerate(_read(path), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(path, line_no, f"expected 3 fields, got {len(fields)}")
        form, pos = fields[0].strip().lower(), fields[1].strip()
        try:
            level = int(fields[2])
        except ValueError:
            raise ParseError(path, line_no, f"level {fields[2]!r} is not an integer") from None
        if not CEFR_MIN <= level <= CEFR_MAX:
            raise ParseError(path, line_no, f"level {level} outside {CEFR_MIN}..{CEFR_MAX}")
        key = (form, pos)
        if key in levels and levels[key] != level:
            raise ParseError(
                path, line_no,
                f"conflicting level for ({form!r}, {pos}): {levels[key]} vs {level}",
            )
        levels[key] = level
    return CefrLexicon(levels)


def load_morph(path) -> MorphLexicon:
    table: dict[str, list[Analysis]] = {}
    for line_no, line in enumerate(_read(path), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise ParseError(path, line_no, f"expected 4 fields, got {len(fields)}")
        form, lemma, upos, feats_str = (f.strip() for f in fields)
        feats: list[tuple[str, str]] = []
        if feats_str != "_":
            seen = set()
            for item in feats_str.split("|"):
                key, sep, value = item.partition("=")
                if not sep or not key or not value:
                    raise ParseError(path, line_no, f"malformed feature {item!r}")
                if key in seen:
                    raise ParseError(path, line_no, f"duplicate feature key {key!r}")
                seen.add(key)
                feats.append((key, value))
        ana = Analysis(lemma.lower(), upos, tuple(sorted(feats)))
        table.setdefault(form.lower(), []).append(ana)
    return MorphLexicon({f: tuple(a) for f, a in table.items()})


def load_embeddings(path) -> EmbeddingTable:
    lines = _read(path)
    if not lines or not lines[0].strip():
        raise ParseError(path, 1, "missing 'N d' header")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(path, 1, f"header must be 'N d', got {lines[0]!r}")
    try:
        declared_n, dim = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(path, 1, f"header must be 'N d', got {lines[0]!r}") from None
    if dim < 1:
        raise ParseError(path, 1, f"dimension must be positive, got {dim}")
    vectors: dict[str, np.ndarray] = {}
    rows = 0
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != dim + 1:
            raise ParseError(path, line_no, f"expected {dim} components, got {len(parts) - 1}")
        try:
            vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
        except ValueError:
            raise ParseError(path, line_no, "non-numeric vector component") from None
        if not np.all(np.isfinite(vec)):
            raise ParseError(path, line_no, "non-finite vector component")
        rows += 1
        vectors.setdefault(parts[0].lower(), vec)
    if rows != declared_n:
        raise ParseError(path, 1, f"header declares {declared_n} rows, file has {rows}")
    return EmbeddingTable(vectors)


def _read(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


@dataclass
class ResourceSet:
    """Bundle of optional resources; accessors raise when a table is absent."""

    freq: FreqLexicon | None = None
    cefr: CefrLexicon | None = None
    morph: MorphLexicon | None = None
    embeddings: EmbeddingTable | None = None
    stoplist: frozenset[str] = field(default_factory=frozenset)

    def require_freq(self) -> FreqLexicon:
        return self._require("freq", self.freq)

    def require_cefr(self) -> CefrLexicon:
        return self._require("cefr", self.cefr)

    def require_morph(self) -> MorphLexicon:
        return self._require("morph", self.morph)

    def require_embeddings(self) -> EmbeddingTable:
        return self._require("embeddings", self.embeddings)

    @staticmethod
    def _require(name, table):
        if table is None:
            raise ResourceMissingError(f"the {name} lexicon is not loaded")
        return table


def load_stoplist(path) -> frozenset[str]:
    """One lowercased form per line; blank lines and '#' comments ignored."""
    words = set()
    for line in _read(path):
        word = line.strip()
        if word and not word.startswith("#"):
            words.add(word.lower())
    return frozenset(words)


def load_resources(
    freq_path=None,
    cefr_path=None,
    morph_path=None,
    embeddings_path=None,
    stoplist_path=None,
) -> ResourceSet:
    """Load whichever resource files are provided; absent ones stay None."""
    return ResourceSet(
        freq=load_freq(freq_path) if freq_path else None,
        cefr=load_cefr(cefr_path) if cefr_path else None,
        morph=load_morph(morph_path) if morph_path else None,
        embeddings=load_embeddings(embeddings_path) if embeddings_path else None,
        stoplist=load_stoplist(stoplist_path) if stoplist_path else frozenset(),
    )


def lemma_forms(form: str, morph: MorphLexicon) -> frozenset[str]:
    """Convenience wrapper over MorphLexicon.lemma_forms."""
    return morph.lemma_forms(form)
