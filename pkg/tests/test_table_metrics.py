import random

import pytest

from docxeval.errors import MissingBox
from docxeval.table_metrics import (
    TableMatchConfig,
    iou,
    jaccard_similarity,
    match_tables_bbox,
    match_tables_text,
)
from docxeval.types import BoxPascal, ExtractedTable, GtTable


def test_jaccard_examples():
    assert jaccard_similarity({"x", "y"}, {"x", "y"}) == 1.0
    assert jaccard_similarity({"x"}, {"y"}) == 0.0
    assert jaccard_similarity({"a", "b", "c"}, {"b", "c", "d"}) == 0.5
    assert jaccard_similarity(set(), set()) == 1.0


def test_iou_examples():
    box = BoxPascal(0, 0, 2, 2)
    assert iou(box, box) == 1.0
    assert iou(box, BoxPascal(5, 5, 7, 7)) == 0.0
    assert iou(box, BoxPascal(1, 0, 3, 2)) == pytest.approx(1 / 3)


def test_iou_degenerate_boxes():
    point = BoxPascal(1, 1, 1, 1)
    assert iou(point, point) == 1.0
    assert iou(point, BoxPascal(2, 2, 2, 2)) == 0.0
    # touching edges only: zero intersection area
    assert iou(BoxPascal(0, 0, 1, 1), BoxPascal(1, 0, 2, 1)) == 0.0


def test_symmetry_and_bounds():
    rng = random.Random(60)
    for _ in range(200):
        a = _random_box(rng)
        b = _random_box(rng)
        v = iou(a, b)
        assert 0.0 <= v <= 1.0
        assert v == pytest.approx(iou(b, a))
    for _ in range(200):
        s = {rng.randrange(6) for _ in range(rng.randrange(5))}
        t = {rng.randrange(6) for _ in range(rng.randrange(5))}
        v = jaccard_similarity(s, t)
        assert 0.0 <= v <= 1.0
        assert v == jaccard_similarity(t, s)


def _random_box(rng):
    x0, y0 = rng.uniform(0, 50), rng.uniform(0, 50)
    return BoxPascal(x0, y0, x0 + rng.uniform(0, 30), y0 + rng.uniform(0, 30))


def _gt(tokens, box=None):
    return GtTable(cell_texts=tuple(tokens), box=box or BoxPascal(0, 0, 10, 10))


def _et(tokens, box=None):
    return ExtractedTable(cell_texts=tuple(tokens), box=box)


def test_match_tables_text_identity():
    truth = [_gt(["a", "b"]), _gt(["c", "d"])]
    extracted = [_et(["a", "b"]), _et(["c", "d"])]
    report = match_tables_text(extracted, truth, 0.75)
    assert (report.true_positives, report.false_positives, report.false_negatives) == (2, 0, 0)
    assert (report.precision, report.recall, report.f1) == (1.0, 1.0, 1.0)


def test_match_tables_text_nothing_detected():
    report = match_tables_text([], [_gt(["a"]), _gt(["b"])], 0.75)
    assert (report.true_positives, report.false_negatives) == (0, 2)
    assert report.recall == 0.0


def test_match_tables_text_partial():
    truth = [_gt(["a", "b", "c", "d"]), _gt(["p", "q", "r", "s"])]
    extracted = [_et(["a", "b", "c", "d"]), _et(["x", "y", "z", "w"])]
    report = match_tables_text(extracted, truth, 0.75)
    assert (report.true_positives, report.false_positives, report.false_negatives) == (1, 1, 1)
    assert (report.precision, report.recall, report.f1) == (0.5, 0.5, 0.5)


def test_match_tables_text_cells_are_tokenized_and_setified():
    # multi-token cells flatten into one token set; duplicates collapse
    truth = [_gt(["a b", "c"])]
    extracted = [_et(["a", "b c", "a"])]
    report = match_tables_text(extracted, truth, 0.75)
    assert report.true_positives == 1


def test_match_tables_text_one_to_one():
    truth = [_gt(["a", "b"])]
    extracted = [_et(["a", "b"]), _et(["a", "b"])]
    report = match_tables_text(extracted, truth, 0.75)
    assert (report.true_positives, report.false_positives, report.false_negatives) == (1, 1, 0)


def test_match_tables_text_levenshtein_scorer():
    truth = [_gt(["tablecontents"])]
    extracted = [_et(["tablecontentz"])]
    assert match_tables_text(extracted, truth, 0.75, scorer="jaccard").true_positives == 0
    assert match_tables_text(extracted, truth, 0.75, scorer="levenshtein").true_positives == 1


def test_match_tables_bbox_identity_and_threshold_split():
    box = BoxPascal(0, 0, 10, 10)
    truth = [_gt(["a"], box)]
    extracted = [_et(["a"], box)]
    perfect = match_tables_bbox(extracted, truth, 0.7)
    assert (perfect.precision, perfect.recall, perfect.f1) == (1.0, 1.0, 1.0)

    # det contained in gt with 65% of its area: IoU 0.65 -> TP at 0.6, FP+FN at 0.7
    gt_box = BoxPascal(0, 0, 100, 10)
    det_box = BoxPascal(0, 0, 65, 10)
    assert iou(det_box, gt_box) == pytest.approx(0.65)
    at60 = match_tables_bbox([_et(["a"], det_box)], [_gt(["a"], gt_box)], 0.6)
    at70 = match_tables_bbox([_et(["a"], det_box)], [_gt(["a"], gt_box)], 0.7)
    assert (at60.true_positives, at60.false_positives, at60.false_negatives) == (1, 0, 0)
    assert (at70.true_positives, at70.false_positives, at70.false_negatives) == (0, 1, 1)


def test_match_tables_bbox_two_detections_one_truth():
    gt_box = BoxPascal(0, 0, 10, 10)
    truth = [_gt(["a"], gt_box)]
    extracted = [_et(["a"], BoxPascal(0, 0, 10, 9)), _et(["b"], BoxPascal(0, 0, 10, 8))]
    report = match_tables_bbox(extracted, truth, 0.6)
    assert (report.true_positives, report.false_positives) == (1, 1)


def test_match_tables_bbox_requires_boxes():
    with pytest.raises(MissingBox):
        match_tables_bbox([_et(["a"], None)], [_gt(["a"])], 0.6)


def _random_instance(rng):
    vocab = ["t%d" % i for i in range(10)]
    truth = [
        _gt(rng.sample(vocab, rng.randrange(1, 6)), _random_box(rng))
        for _ in range(rng.randrange(0, 7))
    ]
    extracted = [
        _et(rng.sample(vocab, rng.randrange(1, 6)), _random_box(rng))
        for _ in range(rng.randrange(0, 7))
    ]
    return extracted, truth


def test_counts_always_partition_inputs():
    rng = random.Random(61)
    for _ in range(150):
        extracted, truth = _random_instance(rng)
        for threshold in (0.3, 0.75):
            r = match_tables_text(extracted, truth, threshold)
            assert r.true_positives + r.false_negatives == len(truth)
            assert r.true_positives + r.false_positives == len(extracted)
            r = match_tables_bbox(extracted, truth, threshold)
            assert r.true_positives + r.false_negatives == len(truth)
            assert r.true_positives + r.false_positives == len(extracted)


def test_tp_monotone_in_threshold():
    rng = random.Random(62)
    sweep = (0.5, 0.6, 0.7, 0.75, 0.9)
    for _ in range(100):
        extracted, truth = _random_instance(rng)
        tps = [match_tables_text(extracted, truth, t).true_positives for t in sweep]
        assert tps == sorted(tps, reverse=True)
        tps = [match_tables_bbox(extracted, truth, t).true_positives for t in sweep]
        assert tps == sorted(tps, reverse=True)


def test_match_invariant_under_reordering():
    rng = random.Random(63)
    for _ in range(50):
        extracted, truth = _random_instance(rng)
        base = match_tables_text(extracted, truth, 0.75)
        for _ in range(4):
            et2 = extracted[:]
            gt2 = truth[:]
            rng.shuffle(et2)
            rng.shuffle(gt2)
            again = match_tables_text(et2, gt2, 0.75)
            assert (again.true_positives, again.false_positives, again.false_negatives) == (
                base.true_positives,
                base.false_positives,
                base.false_negatives,
            )


def test_table_match_config_validation():
    with pytest.raises(ValueError):
        TableMatchConfig(jaccard_threshold=0.0)
    with pytest.raises(ValueError):
        TableMatchConfig(iou_thresholds=())
    with pytest.raises(ValueError):
        TableMatchConfig(text_scorer="cosine")
