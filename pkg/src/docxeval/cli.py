"""Command-line entry points: gt, run, report."""

from __future__ import annotations

import dataclasses
import json
import logging
from pathlib import Path

import click

from .ingest import IngestConfig, build_ground_truth, load_annotations
from .report import FORMATS, emit_report, load_report_json
from .runner import MODES, config_from_dict, run_evaluation

logger = logging.getLogger(__name__)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Enable info logging.")
def main(verbose: bool) -> None:
    """Score PDF extraction outputs against layout-annotation ground truth."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING)


@main.command("gt")
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path))
@click.option(
    "--bbox-origin",
    type=click.Choice(["topleft", "center"]),
    default="topleft",
    show_default=True,
)
def gt_command(corpus_dir: Path, out_dir: Path, bbox_origin: str) -> None:
    """Materialize ground-truth text and tables from annotation files.

    Writes <doc_id>.txt (combined text) and <doc_id>.tables.json per document.
    """
    cfg = IngestConfig(bbox_origin=bbox_origin)
    out_dir.mkdir(parents=True, exist_ok=True)
    count = 0
    for path in sorted(corpus_dir.glob("*.json")):
        doc = load_annotations(path, cfg)
        truth = build_ground_truth(doc)
        (out_dir / f"{doc.doc_id}.txt").write_text(
            truth.combined_text, encoding="utf-8", newline="\n"
        )
        tables = [
            {
                "cells": list(t.cell_texts),
                "bbox": [t.box.x_min, t.box.y_min, t.box.x_max, t.box.y_max],
            }
            for t in truth.tables
        ]
        (out_dir / f"{doc.doc_id}.tables.json").write_text(
            json.dumps(tables, indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8",
            newline="\n",
        )
        count += 1
    click.echo(f"materialized ground truth for {count} documents in {out_dir}")


@main.command("run")
@click.option(
    "--config",
    "config_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option("--seed", type=int, default=None, help="Override sample_seed.")
@click.option("--docs-per-category", type=int, default=None)
@click.option("--mode", type=click.Choice(MODES), default=None)
@click.option("--token-threshold", type=float, default=None)
@click.option("--jaccard-threshold", type=float, default=None)
@click.option(
    "--iou-threshold",
    "iou_thresholds",
    type=float,
    multiple=True,
    help="May be given multiple times; replaces the configured list.",
)
@click.option("--out", "output", type=click.Path(path_type=Path), default=None)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default=None)
def run_command(
    config_path: Path,
    seed: int | None,
    docs_per_category: int | None,
    mode: str | None,
    token_threshold: float | None,
    jaccard_threshold: float | None,
    iou_thresholds: tuple[float, ...],
    output: Path | None,
    fmt: str | None,
) -> None:
    """Run a corpus evaluation from a JSON config file."""
    try:
        raw = json.loads(config_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"cannot read config {config_path}: {exc}")
    if not isinstance(raw, dict):
        raise click.ClickException(f"{config_path}: config must be a JSON object")

    try:
        cfg = config_from_dict(raw, base_dir=config_path.parent)
        if seed is not None:
            cfg = dataclasses.replace(cfg, sample_seed=seed)
        if docs_per_category is not None:
            cfg = dataclasses.replace(cfg, docs_per_category=docs_per_category)
        if mode is not None:
            cfg = dataclasses.replace(cfg, mode=mode)
        if token_threshold is not None:
            cfg = dataclasses.replace(
                cfg,
                text_match=dataclasses.replace(cfg.text_match, token_threshold=token_threshold),
            )
        if jaccard_threshold is not None:
            cfg = dataclasses.replace(
                cfg,
                table_match=dataclasses.replace(
                    cfg.table_match, jaccard_threshold=jaccard_threshold
                ),
            )
        if iou_thresholds:
            cfg = dataclasses.replace(
                cfg,
                table_match=dataclasses.replace(cfg.table_match, iou_thresholds=iou_thresholds),
            )
        if output is not None:
            cfg = dataclasses.replace(cfg, output=output)
        if fmt is not None:
            cfg = dataclasses.replace(cfg, format=fmt)
    except ValueError as exc:
        raise click.ClickException(str(exc))

    if cfg.output is None:
        raise click.ClickException("no output path: set 'output' in the config or pass --out")

    reports = run_evaluation(cfg)
    emit_report(reports, cfg.output, cfg.format)
    click.echo(f"wrote {len(reports)} category reports to {cfg.output}")


@main.command("report")
@click.argument("results_json", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--format", "fmt", required=True, type=click.Choice(FORMATS))
@click.option("--out", "output", required=True, type=click.Path(path_type=Path))
def report_command(results_json: Path, fmt: str, output: Path) -> None:
    """Re-render a JSON report in another format."""
    reports = load_report_json(results_json)
    emit_report(reports, output, fmt)
    click.echo(f"wrote {output}")


if __name__ == "__main__":
    main()
