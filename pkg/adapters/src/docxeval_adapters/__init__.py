"""docxeval-adapters: drive PDF extraction tools into interchange files."""

from .drivers import (
    SUPPORTED_TOOLS,
    AdapterSpec,
    ToolUnavailable,
    available_tools,
    extract_with_tool,
    tool_version,
)
from .interchange import interchange_payload, validate_interchange, write_interchange
from .miniparse import MultiPagePdf, PdfParseError, extract_pdf_text
from .runner import extract_document, run_corpus

__version__ = "0.1.0"
