"""Retrieval metrics: strict average precision and size-aware variants.

Strict scoring quantizes the active assessment view to binary relevance and
averages interpolated precision over the 100 recall levels 0.01..1.00,
where interpolated precision at level r is the maximum precision among
ranks whose recall reaches r (0 when none does).

The size-aware variants (reported as ``ng-s-reconstructed`` and
``ng-o-reconstructed``) weigh the curve by subtree token counts. Mode ``s``
credits every relevant entry with its full size; mode ``o`` credits only
text units not already covered by earlier entries' subtrees, so nested
re-retrieval earns nothing while still consuming rank positions and text.
Consequently mode ``o`` never scores above mode ``s`` and the two agree on
overlap-free runs.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Mapping, Sequence

from .assessments import AssessmentSet, derive_view
from .corpus import Corpus
from .paths import ElementPath, PathStep

RECALL_LEVELS = tuple(i / 100 for i in range(1, 101))

METRIC_STRICT = "inex-eval"
METRIC_NG_SIZE = "ng-s"
METRIC_NG_OVERLAP = "ng-o"
METRICS = (METRIC_STRICT, METRIC_NG_SIZE, METRIC_NG_OVERLAP)

METRIC_LABELS = {
    METRIC_STRICT: "inex-eval",
    METRIC_NG_SIZE: "ng-s-reconstructed",
    METRIC_NG_OVERLAP: "ng-o-reconstructed",
}

SizeMap = Mapping[tuple[str, ElementPath], int]


@dataclass(frozen=True)
class QuantizedJudgment:
    topic_id: int
    relevant: frozenset[tuple[str, ElementPath]]

    @property
    def recall_base(self) -> int:
        return len(self.relevant)


def quantize(assessment: AssessmentSet, case: str) -> QuantizedJudgment:
    """Binary judgments for the chosen view; the view is the recall base."""
    return QuantizedJudgment(
        topic_id=assessment.topic_id,
        relevant=frozenset(derive_view(assessment, case)),
    )


def interpolated_average_precision(points: Sequence[tuple[float, float]]) -> float:
    """Mean of interpolated precision over the 100 recall levels.

    ``points`` are (recall, precision) after each rank, recall non-decreasing.
    """
    if not points:
        return 0.0
    recalls = [r for r, _ in points]
    best_at_or_after = [0.0] * len(points)
    running = 0.0
    for i in range(len(points) - 1, -1, -1):
        running = max(running, points[i][1])
        best_at_or_after[i] = running
    total = 0.0
    for level in RECALL_LEVELS:
        i = bisect_left(recalls, level)
        if i < len(points):
            total += best_at_or_after[i]
    return total / len(RECALL_LEVELS)


def inex_eval_strict(
    entries: Sequence[tuple[str, ElementPath]],
    judgments: QuantizedJudgment,
) -> float:
    """Average precision with exact (doc, path) matching.

    Raises ValueError when the recall base is empty.
    """
    base = judgments.recall_base
    if base == 0:
        raise ValueError(f"topic {judgments.topic_id}: empty recall base")
    points = []
    hits = 0
    seen: set[tuple[str, ElementPath]] = set()
    for rank, entry in enumerate(entries, start=1):
        if entry in judgments.relevant and entry not in seen:
            hits += 1
            seen.add(entry)
        points.append((hits / base, hits / rank))
    return interpolated_average_precision(points)


class _CoverageLedger:
    """Per-document antichains of already-covered subtree roots.

    Subtrees of distinct elements are either nested or disjoint, so the
    uncovered portion of a new entry is its size minus the sizes of covered
    roots strictly below it, or zero when a covered root encloses it.
    """

    def __init__(self, sizes: SizeMap) -> None:
        self._sizes = sizes
        self._covered: dict[str, set[tuple[PathStep, ...]]] = {}

    def uncovered_size(self, doc: str, path: ElementPath) -> int:
        size = self._sizes.get((doc, path), 0)
        roots = self._covered.get(doc, set())
        steps = path.steps
        depth = len(steps)
        inner = 0
        for root in roots:
            if len(root) <= depth and steps[: len(root)] == root:
                return 0
            if len(root) > depth and root[:depth] == steps:
                inner += self._sizes.get((doc, ElementPath(root)), 0)
        return max(0, size - inner)

    def cover(self, doc: str, path: ElementPath) -> None:
        roots = self._covered.setdefault(doc, set())
        steps = path.steps
        depth = len(steps)
        if any(len(r) <= depth and steps[: len(r)] == r for r in roots):
            return
        roots.difference_update({r for r in roots if len(r) > depth and r[:depth] == steps})
        roots.add(steps)


def inex_eval_ng(
    entries: Sequence[tuple[str, ElementPath]],
    judgments: QuantizedJudgment,
    sizes: SizeMap,
    overlap_mode: str,
) -> float:
    """Size-weighted average precision.

    ``overlap_mode`` is ``"s"`` (full sizes) or ``"o"`` (overlap deducted
    from the relevant credit). Elements missing from ``sizes`` count as
    size 0.
    """
    if overlap_mode not in ("s", "o"):
        raise ValueError(f"unknown overlap mode: {overlap_mode!r}")
    total_relevant = sum(sizes.get(entry, 0) for entry in judgments.relevant)
    if total_relevant <= 0:
        raise ValueError(f"topic {judgments.topic_id}: empty size-weighted recall base")
    ledger = _CoverageLedger(sizes) if overlap_mode == "o" else None
    covered = 0
    consumed = 0
    points = []
    for entry in entries:
        doc, path = entry
        size = sizes.get(entry, 0)
        if ledger is None:
            credit = size
        else:
            credit = ledger.uncovered_size(doc, path)
            ledger.cover(doc, path)
        if entry in judgments.relevant:
            covered += credit
        consumed += size
        recall = covered / total_relevant
        precision = covered / consumed if consumed > 0 else 0.0
        points.append((recall, precision))
    return interpolated_average_precision(points)


def mean_average_precision(per_topic: Mapping[int, float]) -> float:
    if not per_topic:
        raise ValueError("no scoreable topics")
    return sum(per_topic.values()) / len(per_topic)


def build_size_map(
    corpus: Corpus,
    needed: set[tuple[str, ElementPath]],
) -> tuple[dict[tuple[str, ElementPath], int], list[str]]:
    """Subtree token counts for the needed (doc, path) pairs.

    Pairs that do not resolve against the corpus get size 0 and a
    diagnostic; evaluation proceeds regardless.
    """
    sizes: dict[tuple[str, ElementPath], int] = {}
    diagnostics: list[str] = []
    for doc, path in sorted(needed, key=lambda p: (p[0], p[1].steps)):
        tree = corpus.docs.get(doc)
        node = tree.node_at(path) if tree is not None else None
        if node is None:
            sizes[(doc, path)] = 0
            diagnostics.append(f"size unavailable, using 0: {doc} {path}")
        else:
            sizes[(doc, path)] = node.subtree_size
    return sizes, diagnostics
