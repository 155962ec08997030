"""Text-extraction metrics: similarity-matrix F1, BLEU-4, local alignment.

The token F1 pipeline scores every (extracted token, ground-truth token)
pair with normalized Levenshtein similarity and thresholds the matrix; an
extracted token counts as precision-matched if any ground-truth token clears
the threshold (once per token), and symmetrically for recall. The hot path
(`token_match_prf`) avoids materializing the full matrix by deduplicating
token values, short-circuiting exact matches, and pruning pairs whose length
difference alone puts them below threshold, backed by a banded edit-distance
cutoff. Results are identical to the exact matrix route.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .tokens import DEFAULT_TOKENIZER, TokenizerConfig, combine, tokenize
from .types import ExtractionResult, GroundTruth, MatchReport, f1_score

# grid size above which local alignment switches to the vectorized kernel
_DIAG_KERNEL_CELLS = 10_000


@dataclass(frozen=True)
class TextMatchConfig:
    token_threshold: float = 0.7
    bleu_max_n: int = 4
    bleu_weights: tuple[float, ...] | None = None  # None = uniform 1/N
    bleu_smoothing: bool = False  # zero p_n -> 1/(2c) instead of BLEU 0
    length_prefilter: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.token_threshold <= 1.0:
            raise ValueError(f"token_threshold must be in (0, 1]: {self.token_threshold}")
        if self.bleu_max_n < 1:
            raise ValueError(f"bleu_max_n must be >= 1: {self.bleu_max_n}")
        if self.bleu_weights is not None:
            if len(self.bleu_weights) != self.bleu_max_n:
                raise ValueError("bleu_weights length must equal bleu_max_n")
            if abs(sum(self.bleu_weights) - 1.0) > 1e-9:
                raise ValueError("bleu_weights must sum to 1")


@dataclass(frozen=True)
class AlignScoring:
    match: float = 1.0
    mismatch: float = -1.0
    open_gap: float = -1.0
    extend_gap: float = -0.5

    def __post_init__(self) -> None:
        if self.match <= 0:
            raise ValueError("match score must be positive")
        if self.mismatch > 0 or self.open_gap > 0 or self.extend_gap > 0:
            raise ValueError("mismatch and gap scores must be <= 0")


DEFAULT_TEXT_MATCH = TextMatchConfig()
DEFAULT_SCORING = AlignScoring()


def levenshtein_distance(a: str, b: str) -> int:
    """Unit-cost edit distance (insert/delete/substitute) over code points."""
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    if la > lb:
        a, b, la, lb = b, a, lb, la
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        ca = a[i - 1]
        cur = [i] + [0] * lb
        for j in range(1, lb + 1):
            cost = 0 if ca == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev = cur
    return prev[lb]


def _banded_distance(a: str, b: str, k: int) -> int:
    """Exact distance when it is <= k; any value > k otherwise."""
    la, lb = len(a), len(b)
    if la > lb:
        a, b, la, lb = b, a, lb, la
    if lb - la > k:
        return k + 1
    if la == 0:
        return lb
    inf = k + 1
    prev = [j if j <= k else inf for j in range(lb + 1)]
    for i in range(1, la + 1):
        lo = max(1, i - k)
        hi = min(lb, i + k)
        cur = [inf] * (lb + 1)
        if i <= k:
            cur[0] = i
        ca = a[i - 1]
        best = inf
        for j in range(lo, hi + 1):
            cost = 0 if ca == b[j - 1] else 1
            v = prev[j - 1] + cost
            up = prev[j] + 1
            if up < v:
                v = up
            left = cur[j - 1] + 1
            if left < v:
                v = left
            if v > inf:
                v = inf
            cur[j] = v
            if v < best:
                best = v
        if best > k:
            return inf
        prev = cur
    return prev[lb] if prev[lb] <= k else inf


def normalized_levenshtein_similarity(a: str, b: str) -> float:
    """1 - distance / max(len); 1.0 when both strings are empty."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein_distance(a, b) / longest


def _pair_matches(a: str, b: str, threshold: float, prefilter: bool) -> bool:
    """Whether normalized similarity of (a, b) reaches the threshold.

    With the prefilter enabled, pairs whose length difference alone caps the
    similarity below threshold are rejected without running the DP, and the
    DP itself is banded; decisions are identical to the exact route.
    """
    longest = max(len(a), len(b))
    if longest == 0:
        return True
    if prefilter:
        if abs(len(a) - len(b)) / longest > 1.0 - threshold:
            return False
        k = int((1.0 - threshold) * longest) + 2
        distance = _banded_distance(a, b, k)
        if distance > k:
            return False
    else:
        distance = levenshtein_distance(a, b)
    return 1.0 - distance / longest >= threshold


@dataclass(frozen=True)
class SimilarityMatrix:
    """Token-pair similarity values, l_et rows (extracted) x l_gt columns."""

    values: tuple[tuple[float, ...], ...]
    l_et: int
    l_gt: int


def similarity_matrix(
    extracted: Sequence[str],
    truth: Sequence[str],
    threshold: float | None = None,
) -> SimilarityMatrix:
    """Pairwise normalized Levenshtein similarities.

    With ``threshold`` set, entries provably below it are stored as 0 (the
    length prefilter plus banded cutoff); thresholded precision/recall are
    unaffected. With ``threshold=None`` every entry is exact.
    """
    cache: dict[tuple[str, str], float] = {}

    def sim(a: str, b: str) -> float:
        key = (a, b)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if threshold is not None and not _pair_matches(a, b, threshold, True):
            value = 0.0
        else:
            value = normalized_levenshtein_similarity(a, b)
        cache[key] = value
        return value

    rows = tuple(tuple(sim(a, b) for b in truth) for a in extracted)
    return SimilarityMatrix(values=rows, l_et=len(extracted), l_gt=len(truth))


def matrix_prf(matrix: SimilarityMatrix, threshold: float) -> tuple[float, float, float]:
    """Precision, recall, F1 from a thresholded similarity matrix.

    Each extracted token contributes at most once to precision, each
    ground-truth token at most once to recall.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1]: {threshold}")
    matched_rows = sum(1 for row in matrix.values if any(v >= threshold for v in row))
    matched_cols = 0
    for j in range(matrix.l_gt):
        if any(row[j] >= threshold for row in matrix.values):
            matched_cols += 1
    precision = matched_rows / matrix.l_et if matrix.l_et else 0.0
    recall = matched_cols / matrix.l_gt if matrix.l_gt else 0.0
    return precision, recall, f1_score(precision, recall)


def token_match_counts(
    extracted: Sequence[str],
    truth: Sequence[str],
    threshold: float,
    prefilter: bool = True,
) -> tuple[int, int, int, int]:
    """Threshold-matched token counts: (matched_et, l_et, matched_gt, l_gt).

    Matching is a property of the token value, so unique values are tested
    once and weighted by their multiplicity; values present verbatim on the
    other side match immediately.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1]: {threshold}")
    l_et, l_gt = len(extracted), len(truth)
    if l_et == 0 or l_gt == 0:
        return 0, l_et, 0, l_gt

    et_counts = Counter(extracted)
    gt_counts = Counter(truth)
    et_values = list(et_counts)
    gt_values = list(gt_counts)
    et_set = set(et_values)
    gt_set = set(gt_values)

    matched_et = 0
    for value, count in et_counts.items():
        if value in gt_set or any(
            _pair_matches(value, other, threshold, prefilter) for other in gt_values
        ):
            matched_et += count
    matched_gt = 0
    for value, count in gt_counts.items():
        if value in et_set or any(
            _pair_matches(other, value, threshold, prefilter) for other in et_values
        ):
            matched_gt += count
    return matched_et, l_et, matched_gt, l_gt


def token_match_prf(
    extracted: Sequence[str],
    truth: Sequence[str],
    threshold: float,
    prefilter: bool = True,
) -> tuple[float, float, float]:
    """Fast equivalent of ``matrix_prf(similarity_matrix(...), threshold)``."""
    matched_et, l_et, matched_gt, l_gt = token_match_counts(
        extracted, truth, threshold, prefilter
    )
    precision = matched_et / l_et if l_et else 0.0
    recall = matched_gt / l_gt if l_gt else 0.0
    return precision, recall, f1_score(precision, recall)


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(
    candidate: Sequence[str],
    reference: Sequence[str],
    cfg: TextMatchConfig = DEFAULT_TEXT_MATCH,
) -> float:
    """BLEU with brevity penalty against a single reference.

    Any zero modified n-gram precision yields 0 unless epsilon smoothing is
    enabled; an empty candidate always yields 0.
    """
    c, r = len(candidate), len(reference)
    if c == 0:
        return 0.0
    n_max = cfg.bleu_max_n
    weights = cfg.bleu_weights or tuple(1.0 / n_max for _ in range(n_max))

    log_sum = 0.0
    for n, weight in zip(range(1, n_max + 1), weights):
        total = c - n + 1
        if total <= 0:
            p_n = 0.0
        else:
            cand_counts = _ngram_counts(candidate, n)
            ref_counts = _ngram_counts(reference, n)
            clipped = sum(min(count, ref_counts[gram]) for gram, count in cand_counts.items())
            p_n = clipped / total
        if p_n == 0.0:
            if not cfg.bleu_smoothing:
                return 0.0
            p_n = 1.0 / (2.0 * c)
        log_sum += weight * math.log(p_n)

    bp = 1.0 if c > r else math.exp(1.0 - r / c)
    return min(1.0, bp * math.exp(log_sum))


def local_alignment_score(a: str, b: str, scoring: AlignScoring = DEFAULT_SCORING) -> float:
    """Best-scoring local alignment with affine gaps, floored at 0.

    A run of n gaps costs open_gap + (n - 1) * extend_gap; computed with the
    three-state (match / gap-in-a / gap-in-b) dynamic program. Large inputs
    run on the anti-diagonal vectorized kernel, which applies the identical
    recurrence in the identical order.
    """
    if not a or not b:
        return 0.0
    if len(a) * len(b) >= _DIAG_KERNEL_CELLS:
        return _local_alignment_diag(a, b, scoring)
    match, mismatch = scoring.match, scoring.mismatch
    open_gap, extend_gap = scoring.open_gap, scoring.extend_gap
    lb = len(b)
    neg_inf = float("-inf")

    h_prev = [0.0] * (lb + 1)
    f_prev = [neg_inf] * (lb + 1)
    best = 0.0
    for i in range(1, len(a) + 1):
        ca = a[i - 1]
        h_cur = [0.0] * (lb + 1)
        f_cur = [neg_inf] * (lb + 1)
        e = neg_inf  # gap run consuming b, extends along the row
        for j in range(1, lb + 1):
            e = max(h_cur[j - 1] + open_gap, e + extend_gap)
            f = max(h_prev[j] + open_gap, f_prev[j] + extend_gap)
            s = match if ca == b[j - 1] else mismatch
            h = h_prev[j - 1] + s
            if e > h:
                h = e
            if f > h:
                h = f
            if h < 0.0:
                h = 0.0
            h_cur[j] = h
            f_cur[j] = f
            if h > best:
                best = h
        h_prev, f_prev = h_cur, f_cur
    return best


def _local_alignment_diag(a: str, b: str, scoring: AlignScoring) -> float:
    """Anti-diagonal formulation of the same dynamic program.

    Diagonal d holds cells (i, j) with i + j = d; every state on a diagonal
    depends only on the previous two diagonals, so each diagonal updates as
    one vector operation. Arrays are indexed by i; H boundaries (i = 0 or
    j = 0) are 0, gap-state boundaries are -inf.
    """
    m, n = len(a), len(b)
    codes_a = np.frombuffer(a.encode("utf-32-le"), dtype=np.uint32)
    codes_b = np.frombuffer(b.encode("utf-32-le"), dtype=np.uint32)
    match, mismatch = scoring.match, scoring.mismatch
    open_gap, extend_gap = scoring.open_gap, scoring.extend_gap
    neg_inf = float("-inf")

    h_prev2 = np.zeros(m + 1)  # diagonal d-2
    h_prev = np.zeros(m + 1)  # diagonal d-1
    e_prev = np.full(m + 1, neg_inf)
    f_prev = np.full(m + 1, neg_inf)
    best = 0.0
    for d in range(2, m + n + 1):
        i_lo = max(1, d - n)
        i_hi = min(m, d - 1)
        if i_lo > i_hi:
            continue
        cur = slice(i_lo, i_hi + 1)
        up = slice(i_lo - 1, i_hi)  # index i-1 on the previous diagonals

        e_new = np.full(m + 1, neg_inf)
        f_new = np.full(m + 1, neg_inf)
        h_new = np.zeros(m + 1)

        e_new[cur] = np.maximum(h_prev[cur] + open_gap, e_prev[cur] + extend_gap)
        f_new[cur] = np.maximum(h_prev[up] + open_gap, f_prev[up] + extend_gap)
        # b index for cell (i, d - i) is d - i - 1: a reversed slice of b
        b_slice = codes_b[d - 1 - i_hi : d - i_lo][::-1]
        s = np.where(codes_a[i_lo - 1 : i_hi] == b_slice, match, mismatch)
        h = h_prev2[up] + s
        h = np.maximum(h, e_new[cur])
        h = np.maximum(h, f_new[cur])
        np.maximum(h, 0.0, out=h)
        h_new[cur] = h

        diag_best = h.max()
        if diag_best > best:
            best = float(diag_best)
        h_prev2, h_prev, e_prev, f_prev = h_prev, h_new, e_new, f_new
    return best


def normalized_local_alignment(a: str, b: str, scoring: AlignScoring = DEFAULT_SCORING) -> float:
    """Local alignment score over match * length of the longer string."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return local_alignment_score(a, b, scoring) / (scoring.match * longest)


def evaluate_text(
    extracted: ExtractionResult,
    truth: GroundTruth,
    cfg: TextMatchConfig = DEFAULT_TEXT_MATCH,
    scoring: AlignScoring = DEFAULT_SCORING,
    tokenizer: TokenizerConfig = DEFAULT_TOKENIZER,
) -> MatchReport:
    """All five text metrics for one document."""
    candidate = tokenize(extracted.text, tokenizer)
    precision, recall, f1 = token_match_prf(
        candidate, truth.tokens, cfg.token_threshold, cfg.length_prefilter
    )
    bleu4 = bleu(candidate, truth.tokens, cfg)
    alignment = normalized_local_alignment(
        combine(extracted.text), combine(truth.combined_text), scoring
    )
    return MatchReport(
        precision=precision,
        recall=recall,
        f1=f1,
        bleu4=bleu4,
        local_alignment=alignment,
    )
