import json
import random

import pytest

from helpers import FIXTURES, cell, write_annotation
from docxeval.errors import IoFailure, MissingField, SchemaMismatch
from docxeval.ingest import (
    IngestConfig,
    build_ground_truth,
    build_ground_truth_tables,
    build_ground_truth_text,
    load_annotations,
)
from docxeval.types import BoxPascal, DocCategory
from goldens import GOLDEN_TABLES, GOLDEN_TEXT

ANNOTATIONS = FIXTURES / "annotations"


@pytest.mark.parametrize("doc_id", sorted(GOLDEN_TEXT))
def test_golden_combined_text(doc_id):
    doc = load_annotations(ANNOTATIONS / f"{doc_id}.json")
    truth = build_ground_truth_text(doc)
    assert truth.combined_text == GOLDEN_TEXT[doc_id]


@pytest.mark.parametrize("doc_id", sorted(GOLDEN_TABLES))
def test_golden_tables(doc_id):
    doc = load_annotations(ANNOTATIONS / f"{doc_id}.json")
    tables = build_ground_truth_tables(doc)
    assert [(t.cell_texts, t.box) for t in tables] == GOLDEN_TABLES[doc_id]


def test_tokens_match_combined_text():
    for doc_id in GOLDEN_TEXT:
        truth = build_ground_truth(load_annotations(ANNOTATIONS / f"{doc_id}.json"))
        assert truth.tokens == tuple(truth.combined_text.split())


def test_load_preserves_cell_order_as_read():
    doc = load_annotations(ANNOTATIONS / "g03_header_footer.json")
    assert [c.reading_order_id for c in doc.cells] == [3, 1, 2]
    assert [c.reading_order_id for c in doc.cells_in_reading_order()] == [1, 2, 3]


def test_load_populates_metadata():
    doc = load_annotations(ANNOTATIONS / "g01_sort_same_category.json")
    assert doc.doc_id == "g01_sort_same_category"
    assert doc.category is DocCategory.FINANCIAL
    assert len(doc.cells) == 2


def test_empty_cell_list_yields_empty_ground_truth(tmp_path):
    path = write_annotation(tmp_path, "empty_doc", "Manual", [])
    doc = load_annotations(path)
    assert doc.cells == ()
    truth = build_ground_truth(doc)
    assert truth.combined_text == ""
    assert truth.tokens == ()
    assert truth.tables == ()


def test_missing_field_names_cell_index(tmp_path):
    cells = [cell(1, "Text", "ok"), {"id_box_line": 2, "text": "bad", "bbox": [0, 0, 1, 1]}]
    path = write_annotation(tmp_path, "broken", "Law", cells)
    with pytest.raises(MissingField, match="cell 1"):
        load_annotations(path)


def test_schema_mismatch_cases(tmp_path):
    path = tmp_path / "notjson.json"
    path.write_text("{nope", encoding="utf-8")
    with pytest.raises(SchemaMismatch):
        load_annotations(path)

    path = tmp_path / "list.json"
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(SchemaMismatch):
        load_annotations(path)

    path = tmp_path / "nocat.json"
    path.write_text(json.dumps({"metadata": {}, "cells": []}), encoding="utf-8")
    with pytest.raises(SchemaMismatch):
        load_annotations(path)

    with pytest.raises(SchemaMismatch, match="category"):
        load_annotations(write_annotation(tmp_path, "badcat", "Novel", []))

    bad_cell = write_annotation(tmp_path, "badbox", "Law", [cell(1, "Text", "x", bbox=[1, 2])])
    with pytest.raises(SchemaMismatch, match="bbox"):
        load_annotations(bad_cell)


def test_missing_file_is_io_failure(tmp_path):
    with pytest.raises(IoFailure):
        load_annotations(tmp_path / "absent.json")


def test_doc_id_must_match_file_stem(tmp_path):
    path = tmp_path / "other_name.json"
    payload = {"metadata": {"doc_id": "mismatch", "category": "Law"}, "cells": []}
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(SchemaMismatch, match="stem"):
        load_annotations(path)


def test_precedence_filtering(tmp_path):
    cells = [
        cell(1, "Text", "keep"),
        cell(2, "Text", "drop", precedence=1),
        cell(3, "Text", "keep2", precedence=0),
    ]
    doc = load_annotations(write_annotation(tmp_path, "prec", "Patent", cells))
    assert [c.text for c in doc.cells] == ["keep", "keep2"]


def test_bbox_origin_center(tmp_path):
    cells = [cell(1, "Table", "a", bbox=[5, 5, 4, 2])]
    path = write_annotation(tmp_path, "centerbox", "Tender", cells)
    topleft = build_ground_truth_tables(load_annotations(path))
    centered = build_ground_truth_tables(
        load_annotations(path, IngestConfig(bbox_origin="center"))
    )
    assert topleft[0].box == BoxPascal(5, 5, 9, 7)
    assert centered[0].box == BoxPascal(3, 4, 7, 6)


def test_combined_text_invariant_under_cell_permutation(tmp_path):
    rng = random.Random(5)
    base_cells = [
        cell(0, "Page-header", "head"),
        cell(1, "Title", "title words"),
        cell(2, "Text", "one"),
        cell(3, "Text", "two"),
        cell(4, "Table", "t u v"),
        cell(5, "Page-footer", "foot"),
    ]
    reference = None
    for trial in range(12):
        shuffled = base_cells[:]
        rng.shuffle(shuffled)
        path = write_annotation(tmp_path, f"perm{trial}", "Scientific", shuffled)
        truth = build_ground_truth(load_annotations(path))
        if reference is None:
            reference = truth
        else:
            assert truth.combined_text == reference.combined_text
            assert truth.tables == reference.tables


def test_newline_count_matches_category_transitions(tmp_path):
    # no headers/footers: newlines == number of category changes in id order
    cells = [
        cell(1, "Title", "t"),
        cell(2, "Text", "a"),
        cell(3, "Text", "b"),
        cell(4, "Caption", "c"),
        cell(5, "Text", "d"),
    ]
    doc = load_annotations(write_annotation(tmp_path, "transitions", "Manual", cells))
    combined = build_ground_truth_text(doc).combined_text
    assert combined.count("\n") == 3
