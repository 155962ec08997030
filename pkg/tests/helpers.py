"""Fixture builders shared across the test modules."""

import json
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def write_annotation(directory: Path, doc_id: str, category: str, cells: list[dict]) -> Path:
    """Write one annotation fixture file and return its path."""
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{doc_id}.json"
    payload = {"metadata": {"doc_id": doc_id, "category": category}, "cells": cells}
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
    return path


def cell(order_id: int, category: str, text: str, bbox=None, **extra) -> dict:
    entry = {
        "id_box_line": order_id,
        "category": category,
        "text": text,
        "bbox": list(bbox) if bbox is not None else [0, 0, 10, 10],
    }
    entry.update(extra)
    return entry


def write_result(
    results_dir: Path, tool: str, doc_id: str, text: str, tables: list[dict] | None = None
) -> Path:
    """Write one extraction-result interchange file."""
    tool_dir = results_dir / tool
    tool_dir.mkdir(parents=True, exist_ok=True)
    path = tool_dir / f"{doc_id}.json"
    payload = {"doc_id": doc_id, "tool": tool, "text": text, "tables": tables or []}
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
    return path
