"""Table-detection scoring: Jaccard over flattened cell text, IoU over boxes.

Candidate pairs are matched greedily one-to-one in descending score order
(ties broken by truth index, then extracted index); a pair becomes a true
positive only when its score reaches the threshold. Unmatched extracted
tables are false positives, unmatched ground-truth tables false negatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import MissingBox
from .text_metrics import normalized_levenshtein_similarity
from .types import BoxPascal, DetectionReport, ExtractedTable, GtTable


@dataclass(frozen=True)
class TableMatchConfig:
    jaccard_threshold: float = 0.75
    iou_thresholds: tuple[float, ...] = (0.6, 0.7)
    text_scorer: str = "jaccard"  # "jaccard" | "levenshtein" (sensitivity switch)

    def __post_init__(self) -> None:
        if not 0.0 < self.jaccard_threshold <= 1.0:
            raise ValueError(f"jaccard_threshold must be in (0, 1]: {self.jaccard_threshold}")
        if not self.iou_thresholds or any(not 0.0 < t <= 1.0 for t in self.iou_thresholds):
            raise ValueError(f"iou_thresholds must all be in (0, 1]: {self.iou_thresholds}")
        if self.text_scorer not in ("jaccard", "levenshtein"):
            raise ValueError(f"unknown text_scorer: {self.text_scorer!r}")


DEFAULT_TABLE_MATCH = TableMatchConfig()


def jaccard_similarity(a: set, b: set) -> float:
    """|a & b| / |a | b|; 1.0 when both sets are empty."""
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def iou(a: BoxPascal, b: BoxPascal) -> float:
    """Intersection area over union area of two axis-aligned boxes."""
    inter_w = min(a.x_max, b.x_max) - max(a.x_min, b.x_min)
    inter_h = min(a.y_max, b.y_max) - max(a.y_min, b.y_min)
    inter = inter_w * inter_h if inter_w > 0 and inter_h > 0 else 0.0
    union = a.area + b.area - inter
    if union <= 0.0:
        return 1.0 if a == b else 0.0
    return inter / union


def _token_set(cell_texts: Sequence[str]) -> frozenset:
    tokens = set()
    for cell in cell_texts:
        tokens.update(cell.split())
    return frozenset(tokens)


def _greedy_match(
    n_extracted: int,
    n_truth: int,
    score: Callable[[int, int], float],
    threshold: float,
) -> DetectionReport:
    """One-to-one matching over the full pairwise score matrix."""
    pairs = [
        (score(ei, ti), ti, ei) for ti in range(n_truth) for ei in range(n_extracted)
    ]
    pairs.sort(key=lambda p: (-p[0], p[1], p[2]))
    used_extracted: set[int] = set()
    used_truth: set[int] = set()
    tp = 0
    for value, ti, ei in pairs:
        if value < threshold:
            break
        if ei in used_extracted or ti in used_truth:
            continue
        used_extracted.add(ei)
        used_truth.add(ti)
        tp += 1
    return DetectionReport.from_counts(tp=tp, fp=n_extracted - tp, fn=n_truth - tp)


def match_tables_text(
    extracted: Sequence[ExtractedTable],
    truth: Sequence[GtTable],
    threshold: float,
    scorer: str = "jaccard",
) -> DetectionReport:
    """Match tables by flattened cell-text content.

    ``scorer="jaccard"`` compares token sets; ``"levenshtein"`` compares the
    space-joined flattened text with normalized similarity (sensitivity
    analysis switch).
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1]: {threshold}")
    if scorer == "jaccard":
        ex_sets = [_token_set(t.cell_texts) for t in extracted]
        gt_sets = [_token_set(t.cell_texts) for t in truth]
        return _greedy_match(
            len(extracted),
            len(truth),
            lambda ei, ti: jaccard_similarity(ex_sets[ei], gt_sets[ti]),
            threshold,
        )
    if scorer == "levenshtein":
        ex_texts = [" ".join(t.cell_texts) for t in extracted]
        gt_texts = [" ".join(t.cell_texts) for t in truth]
        return _greedy_match(
            len(extracted),
            len(truth),
            lambda ei, ti: normalized_levenshtein_similarity(ex_texts[ei], gt_texts[ti]),
            threshold,
        )
    raise ValueError(f"unknown scorer: {scorer!r}")


def match_tables_bbox(
    extracted: Sequence[ExtractedTable],
    truth: Sequence[GtTable],
    iou_threshold: float,
) -> DetectionReport:
    """Match tables by box overlap; every extracted table must carry a box."""
    if not 0.0 < iou_threshold <= 1.0:
        raise ValueError(f"iou_threshold must be in (0, 1]: {iou_threshold}")
    for index, table in enumerate(extracted):
        if table.box is None:
            raise MissingBox(
                f"extracted table {index} has no bounding box; use text-based matching"
            )
    boxes = [t.box for t in extracted]
    return _greedy_match(
        len(extracted),
        len(truth),
        lambda ei, ti: iou(boxes[ei], truth[ti].box),
        iou_threshold,
    )
