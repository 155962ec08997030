"""Minimal pure-Python text extraction for simple digital PDFs.

Covers the subset produced by common single-page generators: classic object
layout (no object streams), content streams filtered with FlateDecode and/or
ASCII85Decode, text drawn through Tj/TJ/'/" with Tm/Td/TD/T* positioning,
Latin-1-compatible simple fonts. Backs the two built-in reference adapters;
installed third-party tools are preferred when present.
"""

from __future__ import annotations

import base64
import re
import zlib
from dataclasses import dataclass
from pathlib import Path


class PdfParseError(Exception):
    """The file is not a PDF this parser can read."""


class MultiPagePdf(PdfParseError):
    """The corpus is one page per document; multi-page inputs are rejected."""


_OBJ_RE = re.compile(rb"(\d+)\s+\d+\s+obj\b(.*?)endobj", re.S)
_STREAM_RE = re.compile(rb"^(.*?)stream\r?\n(.*?)\s*endstream", re.S)
_FILTER_RE = re.compile(rb"/Filter\s*(?:\[([^\]]*)\]|/([A-Za-z0-9]+))")
_NAME_RE = re.compile(rb"/([A-Za-z0-9]+)")
_CONTENTS_REF_RE = re.compile(rb"/Contents\s+(\d+)\s+\d+\s+R")
_CONTENTS_ARR_RE = re.compile(rb"/Contents\s*\[([^\]]*)\]")
_REF_RE = re.compile(rb"(\d+)\s+\d+\s+R")
_PAGE_RE = re.compile(rb"/Type\s*/Page\b")

_NUMBER_RE = re.compile(rb"[-+]?(?:\d+\.?\d*|\.\d+)")
_OPERATOR_RE = re.compile(rb"[A-Za-z'\"][A-Za-z0-9*'\"]*")

_ESCAPES = {
    ord("n"): b"\n",
    ord("r"): b"\r",
    ord("t"): b"\t",
    ord("b"): b"\b",
    ord("f"): b"\f",
    ord("("): b"(",
    ord(")"): b")",
    ord("\\"): b"\\",
}


@dataclass(frozen=True)
class TextItem:
    seq: int
    x: float
    y: float
    text: str


def _scan_objects(data: bytes) -> dict[int, bytes]:
    objects = {}
    for m in _OBJ_RE.finditer(data):
        objects[int(m.group(1))] = m.group(2)
    if not objects:
        raise PdfParseError("no PDF objects found")
    return objects


def _decode_stream(body: bytes) -> bytes:
    m = _STREAM_RE.match(body)
    if m is None:
        raise PdfParseError("object has no stream")
    params, data = m.group(1), m.group(2)
    fm = _FILTER_RE.search(params)
    if fm is None:
        return data
    if fm.group(1) is not None:
        names = [n.group(1) for n in _NAME_RE.finditer(fm.group(1))]
    else:
        names = [fm.group(2)]
    for name in names:
        if name == b"ASCII85Decode":
            data = base64.a85decode(data.strip(), adobe=True, ignorechars=b" \t\r\n\v")
        elif name == b"FlateDecode":
            try:
                data = zlib.decompress(data)
            except zlib.error as exc:
                raise PdfParseError(f"bad Flate stream: {exc}") from exc
        elif name == b"ASCIIHexDecode":
            data = bytes.fromhex(data.replace(b">", b"").decode("ascii", "ignore"))
        else:
            raise PdfParseError(f"unsupported stream filter {name.decode()!r}")
    return data


def _page_content_streams(objects: dict[int, bytes]) -> list[bytes]:
    pages = [body for body in objects.values() if _PAGE_RE.search(body)]
    if not pages:
        raise PdfParseError("no page objects found")
    if len(pages) > 1:
        raise MultiPagePdf(f"expected a single page, found {len(pages)}")
    body = pages[0]
    refs = []
    arr = _CONTENTS_ARR_RE.search(body)
    if arr is not None:
        refs = [int(r.group(1)) for r in _REF_RE.finditer(arr.group(1))]
    else:
        ref = _CONTENTS_REF_RE.search(body)
        if ref is not None:
            refs = [int(ref.group(1))]
    streams = []
    for num in refs:
        if num not in objects:
            raise PdfParseError(f"missing content object {num}")
        streams.append(_decode_stream(objects[num]))
    return streams


def _parse_literal(data: bytes, i: int) -> tuple[bytes, int]:
    """Parse a (...) string starting at the opening paren."""
    out = bytearray()
    depth = 1
    i += 1
    n = len(data)
    while i < n:
        c = data[i]
        if c == 0x5C:  # backslash
            i += 1
            if i >= n:
                break
            e = data[i]
            if e in _ESCAPES:
                out += _ESCAPES[e]
                i += 1
            elif 0x30 <= e <= 0x37:  # octal, up to three digits
                digits = bytearray()
                while i < n and len(digits) < 3 and 0x30 <= data[i] <= 0x37:
                    digits.append(data[i])
                    i += 1
                out.append(int(digits.decode(), 8) & 0xFF)
            elif e in (0x0A, 0x0D):  # line continuation
                i += 1
                if e == 0x0D and i < n and data[i] == 0x0A:
                    i += 1
            else:
                out.append(e)
                i += 1
        elif c == 0x28:
            depth += 1
            out.append(c)
            i += 1
        elif c == 0x29:
            depth -= 1
            if depth == 0:
                return bytes(out), i + 1
            out.append(c)
            i += 1
        else:
            out.append(c)
            i += 1
    raise PdfParseError("unterminated string literal")


def _parse_hex(data: bytes, i: int) -> tuple[bytes, int]:
    end = data.index(b">", i)
    digits = re.sub(rb"\s", b"", data[i + 1 : end])
    if len(digits) % 2:
        digits += b"0"
    return bytes.fromhex(digits.decode("ascii")), end + 1


def _decode_text(raw: bytes) -> str:
    try:
        return raw.decode("cp1252")
    except UnicodeDecodeError:
        return raw.decode("latin-1")


def _parse_content(stream: bytes, items: list[TextItem]) -> None:
    """Walk one content stream, appending shown text with its position."""
    x = y = 0.0
    leading = 0.0
    operands: list = []
    i = 0
    n = len(stream)

    def show(raw: bytes) -> None:
        text = _decode_text(raw)
        if text:
            items.append(TextItem(seq=len(items), x=x, y=y, text=text))

    while i < n:
        c = stream[i]
        if c in b" \t\r\n\x00":
            i += 1
            continue
        if c == 0x25:  # comment
            while i < n and stream[i] not in b"\r\n":
                i += 1
            continue
        if c == 0x28:  # literal string
            raw, i = _parse_literal(stream, i)
            operands.append(raw)
            continue
        if stream.startswith(b"<<", i):  # dictionary (marked content etc.)
            depth = 0
            while i < n - 1:
                if stream.startswith(b"<<", i):
                    depth += 1
                    i += 2
                elif stream.startswith(b">>", i):
                    depth -= 1
                    i += 2
                    if depth == 0:
                        break
                else:
                    i += 1
            continue
        if c == 0x3C:  # hex string
            raw, i = _parse_hex(stream, i)
            operands.append(raw)
            continue
        if c == 0x2F:  # name
            m = _NAME_RE.match(stream, i)
            i = m.end() if m else i + 1
            operands.append(None)
            continue
        if c in b"[]":
            i += 1
            continue
        m = _NUMBER_RE.match(stream, i)
        if m and (chr(c).isdigit() or c in b"+-."):
            operands.append(float(m.group()))
            i = m.end()
            continue
        m = _OPERATOR_RE.match(stream, i)
        if not m:
            i += 1
            continue
        op = m.group()
        i = m.end()

        if op == b"BT":
            x = y = 0.0
            operands.clear()
        elif op == b"Tm":
            numbers = [v for v in operands if isinstance(v, float)]
            if len(numbers) >= 2:
                x, y = numbers[-2], numbers[-1]
            operands.clear()
        elif op in (b"Td", b"TD"):
            numbers = [v for v in operands if isinstance(v, float)]
            if len(numbers) >= 2:
                x += numbers[-2]
                y += numbers[-1]
                if op == b"TD":
                    leading = -numbers[-1]
            operands.clear()
        elif op == b"TL":
            numbers = [v for v in operands if isinstance(v, float)]
            if numbers:
                leading = numbers[-1]
            operands.clear()
        elif op == b"T*":
            y -= leading
            operands.clear()
        elif op == b"Tj":
            raw = next((v for v in reversed(operands) if isinstance(v, bytes)), b"")
            show(raw)
            operands.clear()
        elif op == b"TJ":
            show(b"".join(v for v in operands if isinstance(v, bytes)))
            operands.clear()
        elif op == b"'":
            y -= leading
            raw = next((v for v in reversed(operands) if isinstance(v, bytes)), b"")
            show(raw)
            operands.clear()
        elif op == b'"':
            y -= leading
            raw = next((v for v in reversed(operands) if isinstance(v, bytes)), b"")
            show(raw)
            operands.clear()
        else:
            operands.clear()


def _render_stream_order(items: list[TextItem]) -> str:
    pieces = []
    previous_y = None
    for item in items:
        if previous_y is not None:
            pieces.append("\n" if item.y != previous_y else " ")
        pieces.append(item.text)
        previous_y = item.y
    return "".join(pieces)


def _render_layout(items: list[TextItem]) -> str:
    ordered = sorted(items, key=lambda t: (-round(t.y, 1), t.x, t.seq))
    lines: list[list[str]] = []
    previous_y = None
    for item in ordered:
        key = round(item.y, 1)
        if previous_y is None or key != previous_y:
            lines.append([])
            previous_y = key
        lines[-1].append(item.text)
    return "\n".join(" ".join(parts) for parts in lines)


def extract_pdf_text(path: str | Path, strategy: str = "stream") -> str:
    """Extract the text of a one-page PDF.

    ``strategy="stream"`` keeps content-stream order with line breaks on
    vertical moves; ``"layout"`` re-orders fragments top-down, left-right
    from their page positions.
    """
    if strategy not in ("stream", "layout"):
        raise ValueError(f"unknown strategy: {strategy!r}")
    data = Path(path).read_bytes()
    if not data.startswith(b"%PDF"):
        raise PdfParseError("missing %PDF header")
    objects = _scan_objects(data)
    items: list[TextItem] = []
    for stream in _page_content_streams(objects):
        _parse_content(stream, items)
    if strategy == "stream":
        return _render_stream_order(items)
    return _render_layout(items)
