"""Per-tool extraction drivers behind one uniform call.

Each driver returns ``(text, tables)`` where tables is a list of
``{"cells": [...], "bbox": [x0, y0, x1, y1] | None}`` with cells flattened
row-major. Third-party tools are imported lazily; a missing installation
raises ToolUnavailable rather than failing at import time. The two ``mini-*``
reference drivers are self-contained and always available.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .miniparse import MultiPagePdf, extract_pdf_text

Table = dict


class ToolUnavailable(Exception):
    """The requested tool is not installed in this environment."""


@dataclass(frozen=True)
class AdapterSpec:
    tool_name: str
    capability: str  # "text" | "tables" | "both"
    version_pin: str

    def __post_init__(self) -> None:
        if self.capability not in ("text", "tables", "both"):
            raise ValueError(f"unknown capability: {self.capability!r}")

    @property
    def extracts_text(self) -> bool:
        return self.capability in ("text", "both")

    @property
    def extracts_tables(self) -> bool:
        return self.capability in ("tables", "both")


SUPPORTED_TOOLS: dict[str, AdapterSpec] = {
    spec.tool_name: spec
    for spec in (
        AdapterSpec("pypdf", "text", "4.3.0"),
        AdapterSpec("pdfminer.six", "text", "20240706"),
        AdapterSpec("pymupdf", "both", "1.24.7"),
        AdapterSpec("pdfplumber", "both", "0.11.2"),
        AdapterSpec("pypdfium2", "text", "4.30.0"),
        AdapterSpec("unstructured", "both", "0.14.10"),
        AdapterSpec("tabula", "tables", "2.9.3"),
        AdapterSpec("camelot", "tables", "0.11.0"),
        # built-in reference extractors; keep the pipeline runnable (and the
        # round-trip checks meaningful) on hosts with no tools installed
        AdapterSpec("mini-stream", "text", "builtin"),
        AdapterSpec("mini-layout", "text", "builtin"),
    )
}

_DISTRIBUTIONS = {
    "pypdf": "pypdf",
    "pdfminer.six": "pdfminer.six",
    "pymupdf": "PyMuPDF",
    "pdfplumber": "pdfplumber",
    "pypdfium2": "pypdfium2",
    "unstructured": "unstructured",
    "tabula": "tabula-py",
    "camelot": "camelot-py",
}


def tool_version(tool_name: str) -> str:
    """Installed version for the manifest; 'builtin' or 'missing' otherwise."""
    if tool_name.startswith("mini-"):
        return "builtin"
    import importlib.metadata

    try:
        return importlib.metadata.version(_DISTRIBUTIONS[tool_name])
    except (KeyError, importlib.metadata.PackageNotFoundError):
        return "missing"


def _reject_multipage(n_pages: int) -> None:
    if n_pages != 1:
        raise MultiPagePdf(f"expected a single page, found {n_pages}")


def _flatten_rows(rows) -> list[str]:
    cells = []
    for row in rows:
        for value in row:
            cells.append("" if value is None else str(value))
    return cells


def _extract_mini_stream(path: Path) -> tuple[str, list[Table]]:
    return extract_pdf_text(path, strategy="stream"), []


def _extract_mini_layout(path: Path) -> tuple[str, list[Table]]:
    return extract_pdf_text(path, strategy="layout"), []


def _extract_pypdf(path: Path) -> tuple[str, list[Table]]:
    try:
        from pypdf import PdfReader
    except ImportError as exc:
        raise ToolUnavailable("pypdf is not installed") from exc
    reader = PdfReader(str(path))
    _reject_multipage(len(reader.pages))
    return reader.pages[0].extract_text() or "", []


def _extract_pdfminer(path: Path) -> tuple[str, list[Table]]:
    try:
        from pdfminer.high_level import extract_text
        from pdfminer.pdfpage import PDFPage
    except ImportError as exc:
        raise ToolUnavailable("pdfminer.six is not installed") from exc
    with open(path, "rb") as handle:
        _reject_multipage(sum(1 for _ in PDFPage.get_pages(handle)))
    return extract_text(str(path)) or "", []


def _extract_pymupdf(path: Path) -> tuple[str, list[Table]]:
    try:
        import fitz
    except ImportError as exc:
        raise ToolUnavailable("pymupdf is not installed") from exc
    doc = fitz.open(str(path))
    try:
        _reject_multipage(doc.page_count)
        page = doc[0]
        text = page.get_text() or ""
        tables = []
        finder = page.find_tables()
        for table in finder.tables:
            x0, y0, x1, y1 = table.bbox
            tables.append({"cells": _flatten_rows(table.extract()), "bbox": [x0, y0, x1, y1]})
        return text, tables
    finally:
        doc.close()


def _extract_pdfplumber(path: Path) -> tuple[str, list[Table]]:
    try:
        import pdfplumber
    except ImportError as exc:
        raise ToolUnavailable("pdfplumber is not installed") from exc
    with pdfplumber.open(str(path)) as doc:
        _reject_multipage(len(doc.pages))
        page = doc.pages[0]
        text = page.extract_text() or ""
        tables = []
        for table in page.find_tables():
            x0, top, x1, bottom = table.bbox
            tables.append(
                {"cells": _flatten_rows(table.extract()), "bbox": [x0, top, x1, bottom]}
            )
        return text, tables


def _extract_pypdfium2(path: Path) -> tuple[str, list[Table]]:
    try:
        import pypdfium2 as pdfium
    except ImportError as exc:
        raise ToolUnavailable("pypdfium2 is not installed") from exc
    doc = pdfium.PdfDocument(str(path))
    try:
        _reject_multipage(len(doc))
        page = doc[0]
        textpage = page.get_textpage()
        return textpage.get_text_range() or "", []
    finally:
        doc.close()


def _extract_unstructured(path: Path) -> tuple[str, list[Table]]:
    try:
        from unstructured.partition.pdf import partition_pdf
    except ImportError as exc:
        raise ToolUnavailable("unstructured is not installed") from exc
    elements = partition_pdf(filename=str(path), strategy="fast")
    pages = {e.metadata.page_number for e in elements if e.metadata.page_number}
    _reject_multipage(max(len(pages), 1))
    text_parts = []
    tables = []
    for element in elements:
        if element.category == "Table":
            tables.append({"cells": (element.text or "").split(), "bbox": None})
        elif element.text:
            text_parts.append(element.text)
    return "\n".join(text_parts), tables


def _extract_tabula(path: Path) -> tuple[str, list[Table]]:
    try:
        import tabula
    except ImportError as exc:
        raise ToolUnavailable("tabula is not installed") from exc
    frames = tabula.read_pdf(str(path), pages=1, silent=True)
    tables = []
    for frame in frames:
        rows = [list(frame.columns)] + frame.fillna("").astype(str).values.tolist()
        tables.append({"cells": _flatten_rows(rows), "bbox": None})
    return "", tables


def _extract_camelot(path: Path) -> tuple[str, list[Table]]:
    try:
        import camelot
    except ImportError as exc:
        raise ToolUnavailable("camelot is not installed") from exc
    found = camelot.read_pdf(str(path), pages="1")
    tables = []
    for table in found:
        bbox = getattr(table, "_bbox", None)
        tables.append(
            {
                "cells": _flatten_rows(table.df.astype(str).values.tolist()),
                "bbox": list(bbox) if bbox else None,
            }
        )
    return "", tables


_DRIVERS = {
    "pypdf": _extract_pypdf,
    "pdfminer.six": _extract_pdfminer,
    "pymupdf": _extract_pymupdf,
    "pdfplumber": _extract_pdfplumber,
    "pypdfium2": _extract_pypdfium2,
    "unstructured": _extract_unstructured,
    "tabula": _extract_tabula,
    "camelot": _extract_camelot,
    "mini-stream": _extract_mini_stream,
    "mini-layout": _extract_mini_layout,
}


def available_tools() -> list[str]:
    """Tool names that can actually run in this environment."""
    names = []
    for name in SUPPORTED_TOOLS:
        if tool_version(name) != "missing":
            names.append(name)
    return names


def extract_with_tool(tool_name: str, pdf_path: str | Path) -> tuple[str, list[Table]]:
    """Run one tool on one PDF; raises ToolUnavailable / PdfParseError."""
    if tool_name not in SUPPORTED_TOOLS:
        raise ValueError(f"unknown tool {tool_name!r}; supported: {sorted(SUPPORTED_TOOLS)}")
    path = Path(pdf_path)
    if not path.is_file():
        raise FileNotFoundError(f"no such PDF: {path}")
    return _DRIVERS[tool_name](path)
