"""Parse annotation files and synthesize ground-truth text and tables.

Annotation file schema (UTF-8 JSON, one file per document page, file name
stem = doc_id):

    {
      "metadata": {"doc_id": "fin_0001", "category": "Financial"},
      "cells": [
        {"id_box_line": 0, "category": "Page-header", "text": "...",
         "bbox": [x, y, w, h], "precedence": 0},
        ...
      ]
    }

``bbox`` is read per ``IngestConfig.bbox_origin``: ``topleft`` treats it as
[x_min, y_min, w, h] (what the annotation files actually contain), ``center``
as [x_center, y_center, w, h]. Either way cells are normalized to the
center-based representation at load so downstream conversion is uniform.
``precedence`` defaults to 0; when a file mixes precedence values (redundant
multi-annotation), only the precedence-0 set is kept.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .errors import IoFailure, MissingField, SchemaMismatch
from .tokens import DEFAULT_TOKENIZER, TokenizerConfig, tokenize
from .types import (
    AnnotatedDocument,
    AnnotationCell,
    BoxCoco,
    DocCategory,
    GroundTruth,
    GtTable,
    coco_to_pascal,
)

_CELL_FIELDS = ("id_box_line", "category", "text", "bbox")

HEADER_CATEGORY = "Page-header"
FOOTER_CATEGORY = "Page-footer"
TABLE_CATEGORY = "Table"


@dataclass(frozen=True)
class IngestConfig:
    bbox_origin: str = "topleft"  # "topleft" | "center"
    annotation_schema_version: str = "1"

    def __post_init__(self) -> None:
        if self.bbox_origin not in ("topleft", "center"):
            raise ValueError(f"bbox_origin must be 'topleft' or 'center', got {self.bbox_origin!r}")


DEFAULT_INGEST = IngestConfig()


def _parse_box(raw: object, origin: str, index: int) -> BoxCoco:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 4
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw)
    ):
        raise SchemaMismatch(f"cell {index}: bbox must be a list of 4 numbers, got {raw!r}")
    a, b, w, h = (float(v) for v in raw)
    if w < 0 or h < 0:
        raise SchemaMismatch(f"cell {index}: negative bbox extent {raw!r}")
    if origin == "topleft":
        return BoxCoco(x_center=a + w / 2.0, y_center=b + h / 2.0, width=w, height=h)
    return BoxCoco(x_center=a, y_center=b, width=w, height=h)


def _parse_cell(raw: object, origin: str, index: int) -> AnnotationCell:
    if not isinstance(raw, dict):
        raise SchemaMismatch(f"cell {index}: expected an object, got {type(raw).__name__}")
    for key in _CELL_FIELDS:
        if key not in raw:
            raise MissingField(f"cell {index}: missing field {key!r}")
    order_id = raw["id_box_line"]
    if not isinstance(order_id, int) or isinstance(order_id, bool) or order_id < 0:
        raise SchemaMismatch(f"cell {index}: id_box_line must be a non-negative integer")
    category = raw["category"]
    text = raw["text"]
    if not isinstance(category, str) or not isinstance(text, str):
        raise SchemaMismatch(f"cell {index}: category and text must be strings")
    try:
        return AnnotationCell(
            reading_order_id=order_id,
            category=category,
            text=unicodedata.normalize("NFC", text),
            box=_parse_box(raw["bbox"], origin, index),
        )
    except ValueError as exc:
        raise SchemaMismatch(f"cell {index}: {exc}") from exc


def load_annotations(path: str | Path, cfg: IngestConfig = DEFAULT_INGEST) -> AnnotatedDocument:
    """Load one annotation file; cell order is preserved as read."""
    path = Path(path)
    try:
        payload = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read annotation file {path}: {exc}") from exc
    try:
        data = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise SchemaMismatch(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaMismatch(f"{path}: expected a JSON object at top level")

    metadata = data.get("metadata")
    if not isinstance(metadata, dict) or "category" not in metadata:
        raise SchemaMismatch(f"{path}: missing metadata.category")
    try:
        category = DocCategory.parse(str(metadata["category"]))
    except ValueError as exc:
        raise SchemaMismatch(f"{path}: {exc}") from exc

    doc_id = str(metadata.get("doc_id") or path.stem)
    if metadata.get("doc_id") is not None and str(metadata["doc_id"]) != path.stem:
        raise SchemaMismatch(
            f"{path}: metadata doc_id {metadata['doc_id']!r} does not match file stem {path.stem!r}"
        )

    raw_cells = data.get("cells")
    if not isinstance(raw_cells, list):
        raise SchemaMismatch(f"{path}: missing or non-list 'cells'")

    # Redundant multi-annotation: keep the precedence-0 set only.
    precedences = [c.get("precedence", 0) if isinstance(c, dict) else 0 for c in raw_cells]
    if any(p != 0 for p in precedences):
        raw_cells = [c for c, p in zip(raw_cells, precedences) if p == 0]

    cells = tuple(
        _parse_cell(raw, cfg.bbox_origin, index) for index, raw in enumerate(raw_cells)
    )
    return AnnotatedDocument(doc_id=doc_id, category=category, cells=cells)


def _reading_sequence(doc: AnnotatedDocument) -> list[AnnotationCell]:
    """Reading-order cells with headers forced to the front, footers to the back."""
    ordered = doc.cells_in_reading_order()
    headers = [c for c in ordered if c.category == HEADER_CATEGORY]
    footers = [c for c in ordered if c.category == FOOTER_CATEGORY]
    body = [c for c in ordered if c.category not in (HEADER_CATEGORY, FOOTER_CATEGORY)]
    return headers + body + footers


def build_ground_truth_text(
    doc: AnnotatedDocument, tokenizer: TokenizerConfig = DEFAULT_TOKENIZER
) -> GroundTruth:
    """Combine cell texts: same-category neighbours joined by a space, a
    category change by a newline."""
    sequence = _reading_sequence(doc)
    if not sequence:
        return GroundTruth(combined_text="", tokens=())
    pieces = [sequence[0].text]
    for prev, cur in zip(sequence, sequence[1:]):
        pieces.append(" " if cur.category == prev.category else "\n")
        pieces.append(cur.text)
    combined = "".join(pieces)
    return GroundTruth(combined_text=combined, tokens=tokenize(combined, tokenizer))


def build_ground_truth_tables(
    doc: AnnotatedDocument, tokenizer: TokenizerConfig = DEFAULT_TOKENIZER
) -> tuple[GtTable, ...]:
    """One GtTable per Table-category cell, in reading order."""
    return tuple(
        GtTable(cell_texts=tokenize(cell.text, tokenizer), box=coco_to_pascal(cell.box))
        for cell in doc.cells_in_reading_order()
        if cell.category == TABLE_CATEGORY
    )


def build_ground_truth(
    doc: AnnotatedDocument, tokenizer: TokenizerConfig = DEFAULT_TOKENIZER
) -> GroundTruth:
    """Full ground truth for one document: text, tokens, and tables."""
    text_part = build_ground_truth_text(doc, tokenizer)
    return GroundTruth(
        combined_text=text_part.combined_text,
        tokens=text_part.tokens,
        tables=build_ground_truth_tables(doc, tokenizer),
    )
