"""Command-line interface: simplify, eval-lexical, eval-sentence, align, drift.

Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 missing
resource. Results go to stdout or --out; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .corpus import (
    align_one_to_one,
    edit_similarity,
    jaccard_similarity,
    load_lines,
    load_parallel,
)
from .driftcheck import compute_drift, drift_report, histogram, load_sentence_embeddings
from .errors import DataError, ParseError, ResourceMissingError
from .lexmetrics import evaluate_lexical
from .lexres import ResourceSet, load_embeddings, load_freq, load_stoplist, load_resources
from .pipeline import (
    EmbeddingNeighborSuggester,
    FileCandidateSuggester,
    PipelineConfig,
    SynonymLexiconSuggester,
    load_config,
    simplify_sentence,
)
from .reports import display_table, format_report
from .sentmetrics import evaluate_sentence

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_RESOURCE = 3

RESOURCE_FILES = {
    "freq": "freq.tsv",
    "cefr": "cefr.tsv",
    "morph": "morph.tsv",
    "embeddings": "embeddings.txt",
}
SYNONYMS_FILE = "synonyms.tsv"
STOPLIST_FILE = "stoplist.txt"

ALIGN_SIMILARITIES = {"jaccard": jaccard_similarity, "edit": edit_similarity}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write_output(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _resource_path(directory: Path, filename: str) -> Path:
    path = directory / filename
    if not path.is_file():
        raise ResourceMissingError(f"resource file not found: {path}")
    return path


def _load_pipeline_resources(resources_dir) -> ResourceSet:
    directory = Path(resources_dir)
    if not directory.is_dir():
        raise ResourceMissingError(f"resources directory not found: {directory}")
    paths = {name: _resource_path(directory, fname) for name, fname in RESOURCE_FILES.items()}
    stoplist_path = directory / STOPLIST_FILE
    return load_resources(
        freq_path=paths["freq"],
        cefr_path=paths["cefr"],
        morph_path=paths["morph"],
        embeddings_path=paths["embeddings"],
        stoplist_path=stoplist_path if stoplist_path.is_file() else None,
    )


def cmd_simplify(args) -> int:
    resources = _load_pipeline_resources(args.resources)
    config = load_config(args.config) if args.config else PipelineConfig()

    if args.suggester == "synonyms":
        synonyms = _resource_path(Path(args.resources), SYNONYMS_FILE)
        suggester = SynonymLexiconSuggester.from_file(synonyms)
    elif args.suggester == "knn":
        suggester = EmbeddingNeighborSuggester(resources.require_embeddings(), config.n_candidates)
    else:
        if not args.candidates:
            raise DataError("--suggester file requires --candidates")
        suggester = FileCandidateSuggester(args.candidates)

    sentences = load_lines(args.input)

    def simplify_one(raw: str) -> str:
        result = simplify_sentence(raw, resources, suggester, config)
        if result.target is None:
            return raw
        return "\t".join([raw, result.target, *result.ranked_words])

    if args.workers > 1 and sentences:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            lines = list(pool.map(simplify_one, sentences))
    else:
        lines = [simplify_one(raw) for raw in sentences]

    _write_output("".join(line + "\n" for line in lines), args.out)
    return EXIT_OK


def _parse_k_grid(text: str) -> tuple[int, ...]:
    try:
        grid = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise DataError(f"--k-grid must be comma-separated integers, got {text!r}") from None
    if not grid:
        raise DataError("--k-grid is empty")
    return grid


def cmd_eval_lexical(args) -> int:
    k_grid = _parse_k_grid(args.k_grid) if args.k_grid else None
    report = evaluate_lexical(args.gold, args.pred, k_grid)
    _write_output(format_report(report.to_dict()), args.out)
    print(display_table(report.values), file=sys.stderr)
    return EXIT_OK


def cmd_eval_sentence(args) -> int:
    sources = load_lines(args.source)
    outputs = load_lines(args.output)
    pairs = load_parallel(args.refs)
    if not (len(sources) == len(outputs) == len(pairs)):
        raise DataError(
            f"line counts disagree ({args.source}: {len(sources)}, "
            f"{args.output}: {len(outputs)}, {args.refs}: {len(pairs)})"
        )
    report = evaluate_sentence(
        sources,
        outputs,
        [[r.raw for r in p.references] for p in pairs],
        exclude_identity=args.exclude_identity,
        smoothing=args.smoothing,
        max_n=args.max_n,
        freq=load_freq(args.freq) if args.freq else None,
        embeddings=load_embeddings(args.embeddings) if args.embeddings else None,
        stoplist=load_stoplist(args.stoplist) if args.stoplist else frozenset(),
    )
    data = report.to_dict()
    _write_output(format_report(data), args.out)
    score_keys = frozenset(k for k in data if k not in ("EditDistance",))
    print(display_table(data, score_keys), file=sys.stderr)
    return EXIT_OK


def cmd_align(args) -> int:
    src = load_lines(args.src)
    tgt = load_lines(args.tgt)
    sim = ALIGN_SIMILARITIES[args.sim]
    matches = align_one_to_one(src, tgt, sim, args.lo, args.hi)
    if not matches:
        print("warning: no alignments survived the similarity band", file=sys.stderr)
    body = "".join(f"{i}\t{j}\t{s:.6f}\n" for i, j, s in matches)
    _write_output(body, args.out)
    return EXIT_OK


def cmd_drift(args) -> int:
    original = load_parallel(args.original)
    translated = load_parallel(args.translated)
    embeddings = load_sentence_embeddings(args.embeddings)
    pairs = compute_drift(original, translated, embeddings)
    report = drift_report(pairs)
    cos_hist = histogram([p.delta_cos for p in pairs], args.bins)
    edit_hist = histogram([float(p.delta_edit) for p in pairs], args.bins)

    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "summary.json").write_text(format_report(report), encoding="utf-8")
        (out_dir / "delta_cos_hist.csv").write_text(cos_hist.to_csv(), encoding="utf-8")
        (out_dir / "delta_edit_hist.csv").write_text(edit_hist.to_csv(), encoding="utf-8")
        from .plots import render_histogram

        render_histogram(
            cos_hist, "Change in cosine similarity after translation",
            "delta cosine similarity", out_dir / "delta_cos_hist.png",
        )
        render_histogram(
            edit_hist, "Change in edit distance after translation",
            "delta edit distance", out_dir / "delta_edit_hist.png",
        )
    _write_output(format_report(report), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simplikit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simplify", help="run the lexical simplification pipeline")
    p.add_argument("--input", required=True, help="one sentence per line")
    p.add_argument("--resources", required=True,
                   help="directory holding freq.tsv, cefr.tsv, morph.tsv, embeddings.txt")
    p.add_argument("--suggester", choices=["synonyms", "knn", "file"], default="synonyms")
    p.add_argument("--candidates", help="Predictions TSV for --suggester file")
    p.add_argument("--config", help="key = value pipeline config")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("eval-lexical", help="score predictions against a gold TSV")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--k-grid", dest="k_grid", help="comma-separated K values, e.g. 1,3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval_lexical)

    p = sub.add_parser("eval-sentence", help="BLEU/SARI/iSiM report for system outputs")
    p.add_argument("--source", required=True, help="source sentences, one per line")
    p.add_argument("--output", required=True, help="system outputs, one per line")
    p.add_argument("--refs", required=True, help="references as Parallel JSONL")
    p.add_argument("--exclude-identity", action="store_true",
                   help="drop pairs whose references all equal the source")
    p.add_argument("--smoothing", action="store_true", help="BLEU add-one smoothing for n >= 2")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--freq", help="frequency TSV enabling the iSiM column")
    p.add_argument("--embeddings", help="word-embedding file enabling the EmbedF1 column")
    p.add_argument("--stoplist")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval_sentence)

    p = sub.add_parser("align", help="greedy 1:1 sentence alignment with a similarity band")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--lo", type=float, default=0.3)
    p.add_argument("--hi", type=float, default=0.95)
    p.add_argument("--sim", choices=sorted(ALIGN_SIMILARITIES), default="jaccard")
    p.add_argument("--out")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("drift", help="translation complexity-drift summary and histograms")
    p.add_argument("--original", required=True, help="original corpus, Parallel JSONL")
    p.add_argument("--translated", required=True, help="translated corpus, Parallel JSONL")
    p.add_argument("--embeddings", required=True,
                   help="sentence embeddings keyed <id>.orig|mt.src|ref")
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--out-dir", dest="out_dir",
                   help="write summary.json, histogram CSVs and PNG charts here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_drift)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceMissingError as exc:
        print(f"simplikit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, DataError) as exc:
        print(f"simplikit: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"simplikit: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:  # invalid flag values (band, bin count, ...)
        print(f"simplikit: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
