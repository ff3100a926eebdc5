"""Lexical simplification metrics, instance-wise and macro-averaged.

ACC@1 (gold-set membership of the top prediction, equal to Potential@1),
ACC@K@top1 (a gold mode within the top K), MAP@K, Potential@K, and
Precision@K / Recall@K with set semantics. All values lie in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .corpus import LexInstance, PredictionRecord, load_lexical_gold, load_predictions
from .errors import DataError

DEFAULT_MAP_GRID = (1, 3, 5, 10)
DEFAULT_POTENTIAL_GRID = (1, 3, 5, 10)
DEFAULT_TOP1_GRID = (1, 2, 3)
DEFAULT_PR_GRID = tuple(range(1, 11))


@dataclass(frozen=True)
class LexEvalItem:
    """A gold instance paired with the system's ranked candidates."""

    gold: LexInstance
    predictions: tuple[str, ...]


def _require_items(items: Sequence[LexEvalItem]) -> None:
    if not items:
        raise DataError("no evaluation instances")


def potential_at_k(items: Sequence[LexEvalItem], k: int) -> float:
    """Fraction of instances whose top-K predictions hit the gold set."""
    _require_items(items)
    hits = sum(
        1 for it in items
        if any(p in it.gold.gold_set for p in it.predictions[:k])
    )
    return hits / len(items)


def acc_at_k_top1(items: Sequence[LexEvalItem], k: int) -> float:
    """Fraction of instances whose top-K predictions contain a gold mode."""
    _require_items(items)
    hits = sum(
        1 for it in items
        if any(p in it.gold.gold_modes for p in it.predictions[:k])
    )
    return hits / len(items)


def acc_at_1(items: Sequence[LexEvalItem]) -> float:
    """Defined as Potential@1: top prediction belongs to the gold set."""
    return potential_at_k(items, 1)


def map_at_k(items: Sequence[LexEvalItem], k: int) -> float:
    """Mean average precision at K, normalized by min(K, |gold set|)."""
    _require_items(items)
    total = 0.0
    for it in items:
        gold_set = it.gold.gold_set
        relevant_seen = 0
        ap = 0.0
        for i, pred in enumerate(it.predictions[:k], start=1):
            if pred in gold_set:
                relevant_seen += 1
                ap += relevant_seen / i
        total += ap / min(k, len(gold_set))
    return total / len(items)


def precision_recall_at_k(items: Sequence[LexEvalItem], k: int) -> tuple[float, float]:
    """Macro-averaged (hits/K, hits/|gold set|) with set semantics."""
    _require_items(items)
    p_total = 0.0
    r_total = 0.0
    for it in items:
        hits = len(set(it.predictions[:k]) & it.gold.gold_set)
        p_total += hits / k
        r_total += hits / len(it.gold.gold_set)
    return p_total / len(items), r_total / len(items)


@dataclass(frozen=True)
class LexReport:
    values: dict[str, float]
    instances: int

    def to_dict(self) -> dict:
        out: dict[str, object] = dict(self.values)
        out["instances"] = self.instances
        return out


def match_predictions(
    gold: Sequence[LexInstance],
    predictions: Sequence[PredictionRecord],
) -> list[LexEvalItem]:
    """Pair gold instances with predictions by (sentence, complex word).

    A gold instance without a prediction line gets an empty prediction;
    duplicate prediction lines for one instance, or predictions matching
    no gold instance, are data errors. Records with no complex word
    (sentences the pipeline left untouched) are ignored.
    """
    table: dict[tuple[str, str], tuple[str, ...]] = {}
    for rec in predictions:
        if rec.complex_word is None:
            continue
        key = (rec.sentence, rec.complex_word.lower())
        if key in table:
            raise DataError(
                f"duplicate prediction line for sentence {rec.sentence!r} "
                f"and word {rec.complex_word!r}"
            )
        table[key] = rec.candidates

    gold_keys = set()
    items = []
    for inst in gold:
        key = (inst.sentence.raw, inst.target.lower())
        gold_keys.add(key)
        items.append(LexEvalItem(inst, table.get(key, ())))
    unmatched = [k for k in table if k not in gold_keys]
    if unmatched:
        sent, word = sorted(unmatched)[0]
        raise DataError(
            f"{len(unmatched)} prediction line(s) match no gold instance "
            f"(first: sentence {sent!r}, word {word!r})"
        )
    return items


def build_report(
    items: Sequence[LexEvalItem],
    map_grid: Sequence[int] = DEFAULT_MAP_GRID,
    potential_grid: Sequence[int] = DEFAULT_POTENTIAL_GRID,
    top1_grid: Sequence[int] = DEFAULT_TOP1_GRID,
    pr_grid: Sequence[int] = DEFAULT_PR_GRID,
) -> LexReport:
    values: dict[str, float] = {"ACC@1": acc_at_1(items)}
    for k in top1_grid:
        values[f"ACC@{k}@top1"] = acc_at_k_top1(items, k)
    for k in map_grid:
        values[f"MAP@{k}"] = map_at_k(items, k)
    for k in potential_grid:
        values[f"Potential@{k}"] = potential_at_k(items, k)
    for k in pr_grid:
        p, r = precision_recall_at_k(items, k)
        values[f"Precision@{k}"] = p
        values[f"Recall@{k}"] = r
    return LexReport(values, len(items))


def evaluate_lexical(gold_path, predictions_path, k_grid: Sequence[int] | None = None) -> LexReport:
    """Evaluate a predictions file against a gold file.

    ``k_grid`` overrides the K values of every @K metric family at once
    (ACC@1 is always reported).
    """
    gold = load_lexical_gold(gold_path)
    predictions = load_predictions(predictions_path)
    items = match_predictions(gold, predictions)
    if k_grid is None:
        return build_report(items)
    grid = tuple(k_grid)
    if not grid or any(k < 1 for k in grid):
        raise DataError(f"k grid must hold integers >= 1, got {grid}")
    return build_report(items, map_grid=grid, potential_grid=grid, top1_grid=grid, pr_grid=grid)
