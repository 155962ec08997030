"""docxeval: score PDF text and table extraction against layout ground truth."""

from .errors import (
    HarnessError,
    InsufficientCategory,
    IoFailure,
    MissingBox,
    MissingField,
    SchemaMismatch,
)
from .ingest import (
    IngestConfig,
    build_ground_truth,
    build_ground_truth_tables,
    build_ground_truth_text,
    load_annotations,
)
from .interchange import load_extraction_result
from .report import emit_report, load_report_json, render_report
from .runner import (
    CategoryReport,
    RunConfig,
    config_from_dict,
    load_corpus,
    run_evaluation,
    sample_balanced,
)
from .table_metrics import (
    TableMatchConfig,
    iou,
    jaccard_similarity,
    match_tables_bbox,
    match_tables_text,
)
from .text_metrics import (
    AlignScoring,
    SimilarityMatrix,
    TextMatchConfig,
    bleu,
    evaluate_text,
    levenshtein_distance,
    local_alignment_score,
    matrix_prf,
    normalized_levenshtein_similarity,
    normalized_local_alignment,
    similarity_matrix,
    token_match_prf,
)
from .tokens import TokenizerConfig, combine, tokenize
from .types import (
    AnnotatedDocument,
    AnnotationCell,
    BoxCoco,
    BoxPascal,
    DetectionReport,
    DocCategory,
    ExtractedTable,
    ExtractionResult,
    GroundTruth,
    GtTable,
    MatchReport,
    coco_to_pascal,
    topleft_to_pascal,
)

__version__ = "0.1.0"
