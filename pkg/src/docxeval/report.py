"""Deterministic report writers: CSV, JSON, and markdown comparison tables.

The same report list always serializes to the same bytes. CSV and JSON carry
full float precision; markdown rounds to four decimals and bolds the best
value per metric within each category.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import IoFailure, SchemaMismatch
from .runner import CategoryReport
from .types import DocCategory

FORMATS = ("csv", "json", "markdown")

_TEXT_METRICS = ("f1", "precision", "recall", "bleu4", "local_alignment")
_TABLE_METRICS = ("f1", "precision", "recall")


def _is_text_mode(reports: list[CategoryReport]) -> bool:
    return all(r.bleu4 is not None for r in reports)


def _metric_names(reports: list[CategoryReport]) -> tuple[str, ...]:
    return _TEXT_METRICS if _is_text_mode(reports) else _TABLE_METRICS


def _render_csv(reports: list[CategoryReport]) -> str:
    metrics = _metric_names(reports)
    lines = ["category,tool,n_docs," + ",".join(metrics)]
    for r in reports:
        values = ",".join(repr(getattr(r, m)) for m in metrics)
        lines.append(f"{r.category.value},{r.tool},{r.n_docs},{values}")
    return "\n".join(lines) + "\n"


def _render_json(reports: list[CategoryReport]) -> str:
    metrics = _metric_names(reports)
    rows = []
    for r in reports:
        row: dict = {"category": r.category.value, "tool": r.tool, "n_docs": r.n_docs}
        for m in metrics:
            row[m] = getattr(r, m)
        rows.append(row)
    mode = "text" if _is_text_mode(reports) else "table"
    return json.dumps({"mode": mode, "reports": rows}, indent=2, ensure_ascii=False) + "\n"


_MD_HEADERS = {
    "f1": "F1",
    "precision": "Precision",
    "recall": "Recall",
    "bleu4": "BLEU",
    "local_alignment": "Local Alignment",
}


def _render_markdown(reports: list[CategoryReport]) -> str:
    metrics = _metric_names(reports)
    header = "| Category | Parser | " + " | ".join(_MD_HEADERS[m] for m in metrics) + " |"
    rule = "|" + "---|" * (2 + len(metrics))

    # best value per (category, metric), for bolding
    best: dict[tuple[DocCategory, str], float] = {}
    for r in reports:
        for m in metrics:
            key = (r.category, m)
            value = getattr(r, m)
            if key not in best or value > best[key]:
                best[key] = value

    lines = [header, rule]
    for r in reports:
        cells = []
        for m in metrics:
            value = getattr(r, m)
            text = f"{value:.4f}"
            if value == best[(r.category, m)]:
                text = f"**{text}**"
            cells.append(text)
        lines.append(f"| {r.category.value} | {r.tool} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def render_report(reports: list[CategoryReport], fmt: str) -> str:
    if not reports:
        raise ValueError("cannot render an empty report list")
    if fmt == "csv":
        return _render_csv(reports)
    if fmt == "json":
        return _render_json(reports)
    if fmt == "markdown":
        return _render_markdown(reports)
    raise ValueError(f"unknown report format: {fmt!r}")


def emit_report(reports: list[CategoryReport], path: str | Path, fmt: str = "csv") -> None:
    """Write the report file; identical inputs produce identical bytes."""
    rendered = render_report(reports, fmt)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(rendered, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise IoFailure(f"cannot write report {path}: {exc}") from exc


def load_report_json(path: str | Path) -> list[CategoryReport]:
    """Read back a JSON report, e.g. to re-render it in another format."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoFailure(f"cannot read report {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaMismatch(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("reports"), list):
        raise SchemaMismatch(f"{path}: expected an object with a 'reports' list")
    reports = []
    for index, row in enumerate(data["reports"]):
        if not isinstance(row, dict):
            raise SchemaMismatch(f"{path}: report {index} is not an object")
        try:
            reports.append(
                CategoryReport(
                    category=DocCategory.parse(row["category"]),
                    tool=str(row["tool"]),
                    n_docs=int(row["n_docs"]),
                    precision=float(row["precision"]),
                    recall=float(row["recall"]),
                    f1=float(row["f1"]),
                    bleu4=float(row["bleu4"]) if row.get("bleu4") is not None else None,
                    local_alignment=(
                        float(row["local_alignment"])
                        if row.get("local_alignment") is not None
                        else None
                    ),
                )
            )
        except (KeyError, ValueError) as exc:
            raise SchemaMismatch(f"{path}: report {index}: {exc}") from exc
    return reports
