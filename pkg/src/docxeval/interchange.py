"""Reader for the tool-neutral extraction-result interchange files.

One UTF-8 JSON file per (tool, document) at ``<results_dir>/<tool>/<doc_id>.json``:

    {
      "doc_id": "fin_0001",
      "tool": "pymupdf",
      "text": "full extracted text",
      "tables": [
        {"cells": ["a", "b", ...], "bbox": [xmin, ymin, xmax, ymax] | null}
      ]
    }

An optional ``"error"`` field records a tool crash; such files carry empty
output and are scored zero by the runner.
"""

from __future__ import annotations

import json
import unicodedata
from pathlib import Path

from .errors import IoFailure, SchemaMismatch
from .types import BoxPascal, ExtractedTable, ExtractionResult


def _parse_table(raw: object, index: int, path: Path) -> ExtractedTable:
    if not isinstance(raw, dict) or "cells" not in raw:
        raise SchemaMismatch(f"{path}: table {index} must be an object with 'cells'")
    cells = raw["cells"]
    if not isinstance(cells, list) or not all(isinstance(c, str) for c in cells):
        raise SchemaMismatch(f"{path}: table {index} cells must be a list of strings")
    bbox = raw.get("bbox")
    box = None
    if bbox is not None:
        if (
            not isinstance(bbox, list)
            or len(bbox) != 4
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in bbox)
        ):
            raise SchemaMismatch(f"{path}: table {index} bbox must be null or 4 numbers")
        try:
            box = BoxPascal(*(float(v) for v in bbox))
        except ValueError as exc:
            raise SchemaMismatch(f"{path}: table {index}: {exc}") from exc
    return ExtractedTable(
        cell_texts=tuple(unicodedata.normalize("NFC", c) for c in cells),
        box=box,
    )


def load_extraction_result(path: str | Path) -> ExtractionResult:
    """Parse one interchange file; raises SchemaMismatch on malformed input."""
    path = Path(path)
    try:
        payload = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read extraction result {path}: {exc}") from exc
    try:
        data = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise SchemaMismatch(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaMismatch(f"{path}: expected a JSON object")
    for key in ("doc_id", "tool", "text", "tables"):
        if key not in data:
            raise SchemaMismatch(f"{path}: missing field {key!r}")
    if not isinstance(data["text"], str):
        raise SchemaMismatch(f"{path}: 'text' must be a string")
    if not isinstance(data["tables"], list):
        raise SchemaMismatch(f"{path}: 'tables' must be a list")
    tables = tuple(
        _parse_table(raw, index, path) for index, raw in enumerate(data["tables"])
    )
    return ExtractionResult(
        doc_id=str(data["doc_id"]),
        tool_name=str(data["tool"]),
        text=unicodedata.normalize("NFC", data["text"]),
        tables=tables,
    )
