"""Corpus driver: run tools over a PDF directory with isolation and resume.

Every (tool, pdf) extraction runs in its own subprocess with a wall-clock
timeout; crashes and timeouts produce error-tagged interchange files that the
scoring harness counts as zero. Existing output files are skipped so an
interrupted corpus run picks up where it stopped. A manifest records tool
versions and per-document wall time (timings live only in the manifest, so
interchange files stay byte-deterministic).
"""

from __future__ import annotations

import json
import logging
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .drivers import SUPPORTED_TOOLS, tool_version
from .interchange import interchange_payload, validate_interchange, write_interchange

logger = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 120.0

MANIFEST_NAME = "manifest.json"


def result_path(results_dir: str | Path, tool: str, doc_id: str) -> Path:
    return Path(results_dir) / tool / f"{doc_id}.json"


def extract_document(
    tool: str,
    pdf_path: str | Path,
    results_dir: str | Path,
    timeout: float = DEFAULT_TIMEOUT,
) -> tuple[Path, float, str | None]:
    """Run one tool on one PDF in a subprocess and write the interchange file.

    Returns (output path, wall seconds, error or None). Never raises for
    tool-side failures; those become error-tagged files.
    """
    if tool not in SUPPORTED_TOOLS:
        raise ValueError(f"unknown tool {tool!r}; supported: {sorted(SUPPORTED_TOOLS)}")
    pdf_path = Path(pdf_path)
    doc_id = pdf_path.stem
    out_path = result_path(results_dir, tool, doc_id)
    command = [sys.executable, "-m", "docxeval_adapters.worker", tool, str(pdf_path)]
    started = time.perf_counter()
    error: str | None = None
    payload = None
    try:
        proc = subprocess.run(command, capture_output=True, timeout=timeout)
        if proc.returncode == 0:
            try:
                payload = json.loads(proc.stdout.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                error = f"unparseable worker output: {exc}"
            else:
                problems = validate_interchange(payload)
                if problems:
                    error = "invalid worker payload: " + "; ".join(problems)
                    payload = None
        else:
            detail = proc.stderr.decode("utf-8", "replace").strip().splitlines()
            error = detail[-1] if detail else f"worker exited with {proc.returncode}"
    except subprocess.TimeoutExpired:
        error = f"timeout after {timeout:.0f}s"
    elapsed = time.perf_counter() - started
    if payload is None:
        payload = interchange_payload(doc_id, tool, "", [], error=error or "unknown failure")
        logger.warning("%s/%s failed: %s", tool, doc_id, error)
    write_interchange(out_path, payload)
    return out_path, elapsed, error


def _load_manifest(results_dir: Path) -> dict:
    path = results_dir / MANIFEST_NAME
    if path.is_file():
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            logger.warning("unreadable manifest %s; starting fresh", path)
    return {"tool_versions": {}, "documents": {}}


def run_corpus(
    tools: list[str],
    pdf_dir: str | Path,
    results_dir: str | Path,
    jobs: int = 1,
    timeout: float = DEFAULT_TIMEOUT,
) -> dict:
    """Produce one interchange file per (tool, pdf); returns the manifest.

    Already-present output files are left untouched (resumable).
    """
    pdf_dir = Path(pdf_dir)
    results_dir = Path(results_dir)
    if not pdf_dir.is_dir():
        raise FileNotFoundError(f"pdf directory not found: {pdf_dir}")
    pdfs = sorted(pdf_dir.glob("*.pdf"))
    if not pdfs:
        raise FileNotFoundError(f"no PDFs in {pdf_dir}")
    for tool in tools:
        if tool not in SUPPORTED_TOOLS:
            raise ValueError(f"unknown tool {tool!r}; supported: {sorted(SUPPORTED_TOOLS)}")

    manifest = _load_manifest(results_dir)
    for tool in tools:
        manifest["tool_versions"][tool] = tool_version(tool)

    pending = [
        (tool, pdf)
        for tool in tools
        for pdf in pdfs
        if not result_path(results_dir, tool, pdf.stem).is_file()
    ]
    logger.info("%d extractions to run (%d already present)", len(pending),
                len(tools) * len(pdfs) - len(pending))

    def run_one(item):
        tool, pdf = item
        _, elapsed, error = extract_document(tool, pdf, results_dir, timeout)
        return tool, pdf.stem, elapsed, error

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_one, pending))
    else:
        outcomes = [run_one(item) for item in pending]

    for tool, doc_id, elapsed, error in outcomes:
        record = {"seconds": round(elapsed, 3)}
        if error:
            record["error"] = error
        manifest["documents"][f"{tool}/{doc_id}"] = record

    results_dir.mkdir(parents=True, exist_ok=True)
    (results_dir / MANIFEST_NAME).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return manifest
