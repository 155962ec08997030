"""Command-line entry point: run tools over a PDF directory."""

from __future__ import annotations

import logging
from pathlib import Path

import click

from .drivers import SUPPORTED_TOOLS, available_tools, tool_version
from .runner import DEFAULT_TIMEOUT, run_corpus


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Enable info logging.")
def main(verbose: bool) -> None:
    """Run PDF extraction tools and write interchange files for scoring."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING)


@main.command("run")
@click.option(
    "--tools",
    required=True,
    help="Comma-separated tool names, or 'available' for every installed tool.",
)
@click.option(
    "--pdf-dir",
    required=True,
    type=click.Path(exists=True, file_okay=False, path_type=Path),
)
@click.option("--out", "results_dir", required=True, type=click.Path(path_type=Path))
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option(
    "--timeout",
    type=float,
    default=DEFAULT_TIMEOUT,
    show_default=True,
    help="Per-document wall-clock limit in seconds.",
)
def run_command(tools: str, pdf_dir: Path, results_dir: Path, jobs: int, timeout: float) -> None:
    """Extract every PDF in --pdf-dir with every named tool."""
    if tools == "available":
        names = available_tools()
    else:
        names = [t.strip() for t in tools.split(",") if t.strip()]
    unknown = [t for t in names if t not in SUPPORTED_TOOLS]
    if unknown:
        raise click.ClickException(
            f"unknown tools {unknown}; supported: {sorted(SUPPORTED_TOOLS)}"
        )
    if not names:
        raise click.ClickException("no tools selected")
    manifest = run_corpus(names, pdf_dir, results_dir, jobs=jobs, timeout=timeout)
    failures = sum(1 for record in manifest["documents"].values() if "error" in record)
    click.echo(
        f"extracted {len(manifest['documents'])} (tool, document) pairs, "
        f"{failures} with errors; results in {results_dir}"
    )


@main.command("tools")
def tools_command() -> None:
    """List supported tools and their installation status."""
    for name, spec in sorted(SUPPORTED_TOOLS.items()):
        version = tool_version(name)
        status = version if version != "missing" else "not installed"
        click.echo(f"{name:14} {spec.capability:6} pin={spec.version_pin:10} {status}")


if __name__ == "__main__":
    main()
