"""Corpus-scale orchestration: balanced sampling, evaluation, aggregation.

Documents whose extraction result is missing or malformed are scored as
all-zero (the tool failed to parse them) and still counted, so parse
failures depress the aggregate instead of silently vanishing. Aggregation
sorts per-document results by doc_id before summing, making the reported
means independent of evaluation order, worker count, and scheduling.
"""

from __future__ import annotations

import logging
import random
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import HarnessError, InsufficientCategory, IoFailure, SchemaMismatch
from .ingest import DEFAULT_INGEST, IngestConfig, build_ground_truth, load_annotations
from .interchange import load_extraction_result
from .table_metrics import (
    DEFAULT_TABLE_MATCH,
    TableMatchConfig,
    match_tables_bbox,
    match_tables_text,
)
from .text_metrics import (
    DEFAULT_SCORING,
    DEFAULT_TEXT_MATCH,
    AlignScoring,
    TextMatchConfig,
    bleu,
    normalized_local_alignment,
    token_match_counts,
)
from .tokens import DEFAULT_TOKENIZER, TokenizerConfig, combine, tokenize
from .types import (
    AnnotatedDocument,
    DetectionReport,
    DocCategory,
    ExtractionResult,
    f1_score,
)

logger = logging.getLogger(__name__)

MODES = ("text", "table_text", "table_bbox")

DEFAULT_DOCS_TEXT = 800
DEFAULT_DOCS_TABLE = 400


@dataclass(frozen=True)
class RunConfig:
    corpus_dir: Path
    results_dir: Path
    tools: tuple[str, ...]
    mode: str = "text"
    docs_per_category: int | None = None  # None resolves to 800 text / 400 tables
    sample_seed: int = 0
    text_match: TextMatchConfig = DEFAULT_TEXT_MATCH
    table_match: TableMatchConfig = DEFAULT_TABLE_MATCH
    scoring: AlignScoring = DEFAULT_SCORING
    tokenizer: TokenizerConfig = DEFAULT_TOKENIZER
    ingest: IngestConfig = DEFAULT_INGEST
    aggregate: str = "macro"  # macro | micro
    jobs: int = 1
    output: Path | None = None
    format: str = "csv"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}: {self.mode!r}")
        if self.docs_per_category is not None and self.docs_per_category < 1:
            raise ValueError("docs_per_category must be >= 1")
        if self.aggregate not in ("macro", "micro"):
            raise ValueError(f"aggregate must be 'macro' or 'micro': {self.aggregate!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if not self.tools:
            raise ValueError("at least one tool is required")

    def resolved_docs_per_category(self) -> int:
        if self.docs_per_category is not None:
            return self.docs_per_category
        return DEFAULT_DOCS_TEXT if self.mode == "text" else DEFAULT_DOCS_TABLE


@dataclass(frozen=True)
class CategoryReport:
    """Aggregated scores for one (category, tool) pair."""

    category: DocCategory
    tool: str
    n_docs: int
    precision: float
    recall: float
    f1: float
    bleu4: float | None = None
    local_alignment: float | None = None


@dataclass(frozen=True)
class _DocScore:
    """Per-document evaluation payload carried back from workers."""

    doc_id: str
    category: DocCategory
    tool: str
    threshold_label: str  # "" outside table_bbox mode
    precision: float
    recall: float
    f1: float
    bleu4: float = 0.0
    local_alignment: float = 0.0
    # raw counts for micro aggregation
    matched_et: int = 0
    total_et: int = 0
    matched_gt: int = 0
    total_gt: int = 0
    tp: int = 0
    fp: int = 0
    fn: int = 0


def load_corpus(
    corpus_dir: str | Path, cfg: IngestConfig = DEFAULT_INGEST
) -> list[AnnotatedDocument]:
    """Load every annotation file under corpus_dir, sorted by doc_id."""
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise IoFailure(f"corpus directory not found: {corpus_dir}")
    paths = sorted(corpus_dir.glob("*.json"))
    if not paths:
        raise IoFailure(f"no annotation files (*.json) in {corpus_dir}")
    return [load_annotations(path, cfg) for path in paths]


def sample_balanced(
    corpus: Iterable[AnnotatedDocument], k: int, seed: int
) -> list[AnnotatedDocument]:
    """Pick exactly k documents per category with a seeded permutation."""
    if k < 1:
        raise ValueError("k must be >= 1")
    by_category: dict[DocCategory, list[AnnotatedDocument]] = defaultdict(list)
    for doc in corpus:
        by_category[doc.category].append(doc)
    rng = random.Random(seed)
    chosen: list[AnnotatedDocument] = []
    for category in sorted(by_category, key=lambda c: c.value):
        docs = sorted(by_category[category], key=lambda d: d.doc_id)
        if len(docs) < k:
            raise InsufficientCategory(category.value, len(docs), k)
        chosen.extend(rng.sample(docs, k))
    return chosen


def _result_path(cfg: RunConfig, tool: str, doc_id: str) -> Path:
    return Path(cfg.results_dir) / tool / f"{doc_id}.json"


def _load_result_or_empty(cfg: RunConfig, tool: str, doc: AnnotatedDocument) -> ExtractionResult:
    path = _result_path(cfg, tool, doc.doc_id)
    if not path.is_file():
        logger.warning("missing extraction result %s; scoring zero", path)
        return ExtractionResult(doc_id=doc.doc_id, tool_name=tool, text="", tables=())
    try:
        return load_extraction_result(path)
    except (SchemaMismatch, IoFailure) as exc:
        logger.warning("unreadable extraction result %s (%s); scoring zero", path, exc)
        return ExtractionResult(doc_id=doc.doc_id, tool_name=tool, text="", tables=())


def _evaluate_one(args: tuple[AnnotatedDocument, str, RunConfig]) -> list[_DocScore]:
    doc, tool, cfg = args
    truth = build_ground_truth(doc, cfg.tokenizer)
    extraction = _load_result_or_empty(cfg, tool, doc)

    if cfg.mode == "text":
        candidate = tokenize(extraction.text, cfg.tokenizer)
        matched_et, total_et, matched_gt, total_gt = token_match_counts(
            candidate,
            truth.tokens,
            cfg.text_match.token_threshold,
            cfg.text_match.length_prefilter,
        )
        precision = matched_et / total_et if total_et else 0.0
        recall = matched_gt / total_gt if total_gt else 0.0
        return [
            _DocScore(
                doc_id=doc.doc_id,
                category=doc.category,
                tool=tool,
                threshold_label="",
                precision=precision,
                recall=recall,
                f1=f1_score(precision, recall),
                bleu4=bleu(candidate, truth.tokens, cfg.text_match),
                local_alignment=normalized_local_alignment(
                    combine(extraction.text), combine(truth.combined_text), cfg.scoring
                ),
                matched_et=matched_et,
                total_et=total_et,
                matched_gt=matched_gt,
                total_gt=total_gt,
            )
        ]

    if cfg.mode == "table_text":
        report = match_tables_text(
            extraction.tables,
            truth.tables,
            cfg.table_match.jaccard_threshold,
            cfg.table_match.text_scorer,
        )
        return [_detection_score(doc, tool, "", report)]

    scores = []
    for threshold in cfg.table_match.iou_thresholds:
        label = f" @ {int(round(threshold * 100))}"
        try:
            report = match_tables_bbox(extraction.tables, truth.tables, threshold)
        except HarnessError as exc:
            logger.warning(
                "bbox matching failed for %s/%s (%s); scoring zero", tool, doc.doc_id, exc
            )
            report = DetectionReport.from_counts(0, 0, len(truth.tables))
        scores.append(_detection_score(doc, tool, label, report))
    return scores


def _detection_score(
    doc: AnnotatedDocument, tool: str, label: str, report: DetectionReport
) -> _DocScore:
    return _DocScore(
        doc_id=doc.doc_id,
        category=doc.category,
        tool=tool,
        threshold_label=label,
        precision=report.precision,
        recall=report.recall,
        f1=report.f1,
        tp=report.true_positives,
        fp=report.false_positives,
        fn=report.false_negatives,
    )


def _mean(values: list[float]) -> float:
    return sum(values) / len(values) if values else 0.0


def _aggregate(scores: list[_DocScore], cfg: RunConfig) -> list[CategoryReport]:
    groups: dict[tuple[str, str, DocCategory], list[_DocScore]] = defaultdict(list)
    for score in scores:
        groups[(score.tool, score.threshold_label, score.category)].append(score)

    reports = []
    for (tool, label, category), bucket in groups.items():
        bucket = sorted(bucket, key=lambda s: s.doc_id)
        if cfg.aggregate == "micro" and cfg.mode == "text":
            total_et = sum(s.total_et for s in bucket)
            total_gt = sum(s.total_gt for s in bucket)
            precision = sum(s.matched_et for s in bucket) / total_et if total_et else 0.0
            recall = sum(s.matched_gt for s in bucket) / total_gt if total_gt else 0.0
            f1 = f1_score(precision, recall)
        elif cfg.aggregate == "micro":
            tp = sum(s.tp for s in bucket)
            fp = sum(s.fp for s in bucket)
            fn = sum(s.fn for s in bucket)
            pooled = DetectionReport.from_counts(tp, fp, fn)
            precision, recall, f1 = pooled.precision, pooled.recall, pooled.f1
        else:
            precision = _mean([s.precision for s in bucket])
            recall = _mean([s.recall for s in bucket])
            f1 = _mean([s.f1 for s in bucket])
        reports.append(
            CategoryReport(
                category=category,
                tool=tool + label,
                n_docs=len(bucket),
                precision=precision,
                recall=recall,
                f1=f1,
                bleu4=_mean([s.bleu4 for s in bucket]) if cfg.mode == "text" else None,
                local_alignment=(
                    _mean([s.local_alignment for s in bucket]) if cfg.mode == "text" else None
                ),
            )
        )
    reports.sort(key=lambda r: (r.category.value, r.tool))
    return reports


def run_evaluation(cfg: RunConfig) -> list[CategoryReport]:
    """Evaluate every (tool, sampled document) pair and aggregate per category."""
    corpus = load_corpus(cfg.corpus_dir, cfg.ingest)
    sampled = sample_balanced(corpus, cfg.resolved_docs_per_category(), cfg.sample_seed)
    work = [(doc, tool, cfg) for tool in cfg.tools for doc in sampled]

    scores: list[_DocScore] = []
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for batch in pool.map(_evaluate_one, work, chunksize=8):
                scores.extend(batch)
    else:
        for item in work:
            scores.extend(_evaluate_one(item))
    return _aggregate(scores, cfg)


def config_from_dict(raw: dict, base_dir: str | Path = ".") -> RunConfig:
    """Build a RunConfig from a parsed config mapping.

    Relative paths resolve against ``base_dir`` (normally the directory of
    the config file).
    """
    base = Path(base_dir)

    def _path(key: str, required: bool = True) -> Path | None:
        value = raw.get(key)
        if value is None:
            if required:
                raise ValueError(f"config is missing required key {key!r}")
            return None
        path = Path(str(value))
        return path if path.is_absolute() else base / path

    tools = raw.get("tools")
    if not isinstance(tools, list) or not tools:
        raise ValueError("config key 'tools' must be a non-empty list")

    text_match = TextMatchConfig(
        token_threshold=float(raw.get("token_threshold", 0.7)),
        bleu_max_n=int(raw.get("bleu_max_n", 4)),
        bleu_smoothing=bool(raw.get("bleu_smoothing", False)),
        length_prefilter=bool(raw.get("length_prefilter", True)),
    )
    table_match = TableMatchConfig(
        jaccard_threshold=float(raw.get("jaccard_threshold", 0.75)),
        iou_thresholds=tuple(float(t) for t in raw.get("iou_thresholds", (0.6, 0.7))),
        text_scorer=str(raw.get("table_text_scorer", "jaccard")),
    )
    scoring = AlignScoring(
        match=float(raw.get("align_match", 1.0)),
        mismatch=float(raw.get("align_mismatch", -1.0)),
        open_gap=float(raw.get("align_open_gap", -1.0)),
        extend_gap=float(raw.get("align_extend_gap", -0.5)),
    )
    tokenizer = TokenizerConfig(lowercase=bool(raw.get("lowercase", False)))
    ingest = IngestConfig(bbox_origin=str(raw.get("bbox_origin", "topleft")))

    docs = raw.get("docs_per_category")
    return RunConfig(
        corpus_dir=_path("corpus_dir"),
        results_dir=_path("results_dir"),
        tools=tuple(str(t) for t in tools),
        mode=str(raw.get("mode", "text")),
        docs_per_category=int(docs) if docs is not None else None,
        sample_seed=int(raw.get("sample_seed", 0)),
        text_match=text_match,
        table_match=table_match,
        scoring=scoring,
        tokenizer=tokenizer,
        ingest=ingest,
        aggregate=str(raw.get("aggregate", "macro")),
        jobs=int(raw.get("jobs", 1)),
        output=_path("output", required=False),
        format=str(raw.get("format", "csv")),
    )
