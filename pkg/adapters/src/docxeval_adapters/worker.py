"""Single-extraction subprocess target: ``python -m docxeval_adapters.worker``.

Runs one tool on one PDF and prints the interchange payload to stdout.
Exit codes: 0 success, 2 usage, 3 tool unavailable, 4 unreadable/multi-page
PDF, 1 anything else. The parent process turns nonzero exits into
error-tagged interchange files, so one crashing tool never stalls a corpus.
"""

from __future__ import annotations

import json
import sys
import traceback

from .drivers import SUPPORTED_TOOLS, ToolUnavailable, extract_with_tool
from .interchange import interchange_payload
from .miniparse import PdfParseError


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print("usage: python -m docxeval_adapters.worker TOOL PDF_PATH", file=sys.stderr)
        return 2
    tool, pdf_path = argv
    if tool not in SUPPORTED_TOOLS:
        print(f"unknown tool {tool!r}", file=sys.stderr)
        return 2
    doc_id = pdf_path.rsplit("/", 1)[-1].removesuffix(".pdf")
    try:
        text, tables = extract_with_tool(tool, pdf_path)
    except ToolUnavailable as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except (PdfParseError, FileNotFoundError) as exc:
        print(str(exc), file=sys.stderr)
        return 4
    except Exception:
        traceback.print_exc()
        return 1
    payload = interchange_payload(doc_id, tool, text, tables)
    json.dump(payload, sys.stdout, ensure_ascii=False)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
