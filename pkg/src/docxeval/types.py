"""Shared domain vocabulary: documents, categories, boxes, tokens, metric results.

All types are immutable value objects after construction and safe to share
between concurrent workers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class DocCategory(enum.Enum):
    """The six document categories of the corpus."""

    FINANCIAL = "Financial"
    LAW = "Law"
    MANUAL = "Manual"
    PATENT = "Patent"
    SCIENTIFIC = "Scientific"
    TENDER = "Tender"

    @classmethod
    def parse(cls, label: str) -> "DocCategory":
        """Case-insensitive lookup; round-trips with .value."""
        needle = label.strip().lower()
        for member in cls:
            if member.value.lower() == needle:
                return member
        raise ValueError(f"unknown document category: {label!r}")

    def __str__(self) -> str:
        return self.value


#: The 11 element labels a page cell can carry.
CELL_CATEGORIES = frozenset(
    {
        "Caption",
        "Footnote",
        "Formula",
        "List-item",
        "Page-footer",
        "Page-header",
        "Picture",
        "Section-header",
        "Table",
        "Text",
        "Title",
    }
)

#: Ordered token stream; the default tokenizer guarantees no token contains
#: whitespace and every token has length >= 1.
TokenSequence = tuple[str, ...]


@dataclass(frozen=True)
class BoxCoco:
    """Center-based box: [x_center, y_center, width, height]."""

    x_center: float
    y_center: float
    width: float
    height: float

    def __post_init__(self) -> None:
        if self.width < 0 or self.height < 0:
            raise ValueError(f"negative box extent: w={self.width}, h={self.height}")


@dataclass(frozen=True)
class BoxPascal:
    """Corner-based box: [x_min, y_min, x_max, y_max]."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self) -> None:
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError(
                f"inverted box: ({self.x_min}, {self.y_min}, {self.x_max}, {self.y_max})"
            )

    @property
    def area(self) -> float:
        return (self.x_max - self.x_min) * (self.y_max - self.y_min)


def coco_to_pascal(box: BoxCoco) -> BoxPascal:
    """Convert a center-based box to corner coordinates."""
    half_w = box.width / 2.0
    half_h = box.height / 2.0
    return BoxPascal(
        x_min=box.x_center - half_w,
        y_min=box.y_center - half_h,
        x_max=box.x_center + half_w,
        y_max=box.y_center + half_h,
    )


def topleft_to_pascal(x: float, y: float, width: float, height: float) -> BoxPascal:
    """Convert a top-left-origin [x, y, w, h] box to corner coordinates."""
    if width < 0 or height < 0:
        raise ValueError(f"negative box extent: w={width}, h={height}")
    return BoxPascal(x_min=x, y_min=y, x_max=x + width, y_max=y + height)


@dataclass(frozen=True)
class AnnotationCell:
    """One annotated region of a page: reading-order id, label, text, box."""

    reading_order_id: int
    category: str
    text: str
    box: BoxCoco

    def __post_init__(self) -> None:
        if self.reading_order_id < 0:
            raise ValueError(f"negative reading_order_id: {self.reading_order_id}")
        if self.category not in CELL_CATEGORIES:
            raise ValueError(f"unknown cell category: {self.category!r}")


@dataclass(frozen=True)
class AnnotatedDocument:
    """One page's ground-truth annotations, in as-read cell order."""

    doc_id: str
    category: DocCategory
    cells: tuple[AnnotationCell, ...]

    def __post_init__(self) -> None:
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")

    def cells_in_reading_order(self) -> tuple[AnnotationCell, ...]:
        """Cells sorted by reading_order_id (stable for duplicate ids)."""
        return tuple(sorted(self.cells, key=lambda c: c.reading_order_id))


@dataclass(frozen=True)
class GtTable:
    """Ground-truth table: flattened cell tokens plus its page box."""

    cell_texts: tuple[str, ...]
    box: BoxPascal


@dataclass(frozen=True)
class GroundTruth:
    """Reference text and tables a document's extraction is scored against."""

    combined_text: str
    tokens: TokenSequence
    tables: tuple[GtTable, ...] = ()


@dataclass(frozen=True)
class ExtractedTable:
    """One table reported by a tool: row-major flattened cells, optional box."""

    cell_texts: tuple[str, ...]
    box: BoxPascal | None = None


@dataclass(frozen=True)
class ExtractionResult:
    """One tool's output for one document."""

    doc_id: str
    tool_name: str
    text: str
    tables: tuple[ExtractedTable, ...] = ()


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean; 0 when precision + recall is 0."""
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class MatchReport:
    """Per-document text metrics, each in [0, 1]."""

    precision: float
    recall: float
    f1: float
    bleu4: float
    local_alignment: float

    def __post_init__(self) -> None:
        for name in ("precision", "recall", "f1", "bleu4", "local_alignment"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} out of range [0, 1]: {value}")


#: Score assigned to documents whose extraction is missing or unparseable.
ZERO_MATCH_REPORT = MatchReport(0.0, 0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class DetectionReport:
    """Per-document table-detection counts and derived scores."""

    true_positives: int
    false_positives: int
    false_negatives: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "DetectionReport":
        if min(tp, fp, fn) < 0:
            raise ValueError(f"negative detection counts: tp={tp}, fp={fp}, fn={fn}")
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        return cls(tp, fp, fn, precision, recall, f1_score(precision, recall))
