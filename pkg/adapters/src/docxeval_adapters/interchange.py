"""Writer and validator for the extraction-result interchange format.

One UTF-8 JSON file per (tool, document):

    {
      "doc_id": string,
      "tool": string,
      "text": string,
      "tables": [{"cells": [string, ...], "bbox": [x0, y0, x1, y1] | null}],
      "error": string            # only present for failed extractions
    }

Field names are fixed; the scoring harness consumes these files verbatim.
"""

from __future__ import annotations

import json
from pathlib import Path


def interchange_payload(
    doc_id: str, tool: str, text: str, tables: list[dict], error: str | None = None
) -> dict:
    payload = {
        "doc_id": doc_id,
        "tool": tool,
        "text": text,
        "tables": [
            {"cells": [str(c) for c in t.get("cells", [])], "bbox": t.get("bbox")}
            for t in tables
        ],
    }
    if error is not None:
        payload["error"] = error
    return payload


def write_interchange(path: str | Path, payload: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(payload, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
        newline="\n",
    )


def validate_interchange(payload: object) -> list[str]:
    """Schema check; returns a list of problems, empty when valid."""
    problems = []
    if not isinstance(payload, dict):
        return ["payload is not an object"]
    for key, kind in (("doc_id", str), ("tool", str), ("text", str), ("tables", list)):
        if key not in payload:
            problems.append(f"missing field {key!r}")
        elif not isinstance(payload[key], kind):
            problems.append(f"field {key!r} must be {kind.__name__}")
    if "error" in payload and not isinstance(payload["error"], str):
        problems.append("field 'error' must be a string")
    for index, table in enumerate(payload.get("tables") or []):
        if not isinstance(table, dict):
            problems.append(f"table {index} is not an object")
            continue
        cells = table.get("cells")
        if not isinstance(cells, list) or not all(isinstance(c, str) for c in cells):
            problems.append(f"table {index}: 'cells' must be a list of strings")
        bbox = table.get("bbox", None)
        if bbox is not None and (
            not isinstance(bbox, list)
            or len(bbox) != 4
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in bbox)
        ):
            problems.append(f"table {index}: 'bbox' must be null or 4 numbers")
    return problems
