"""Graded relevance assessments and their derived views.

Input format, one XML file per topic: a root element carrying a
``topic_id`` attribute wraps one ``<file file="doc-id">`` element per
assessed document, each holding ``<path E=".." S=".." path="/article[1]/..."/>``
entries. E grades exhaustivity and S specificity, both 0..3; an element is
highly relevant when both are 3.

Three views of the highly relevant set exist per topic:

* original - every highly relevant element;
* general  - per document, those with no highly relevant proper ancestor;
* specific - per document, those with no highly relevant proper descendant.

A document's only highly relevant element belongs to both reduced views.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path

from .paths import ElementPath

ORIGINAL = "original"
GENERAL = "general"
SPECIFIC = "specific"
RELEVANCE_CASES = (ORIGINAL, GENERAL, SPECIFIC)

BROAD = "broad"
NARROW = "narrow"
NEUTRAL = "neutral"


@dataclass(frozen=True)
class AssessmentEntry:
    doc: str
    path: ElementPath
    exhaustivity: int
    specificity: int

    def __post_init__(self) -> None:
        if not 0 <= self.exhaustivity <= 3:
            raise ValueError(f"exhaustivity out of range: {self.exhaustivity}")
        if not 0 <= self.specificity <= 3:
            raise ValueError(f"specificity out of range: {self.specificity}")


@dataclass
class AssessmentSet:
    topic_id: int
    entries: list[AssessmentEntry]

    def __post_init__(self) -> None:
        seen = set()
        for entry in self.entries:
            key = (entry.doc, entry.path)
            if key in seen:
                raise ValueError(
                    f"duplicate assessment for topic {self.topic_id}: {entry.doc} {entry.path}"
                )
            seen.add(key)


def parse_assessment_file(path: str | Path) -> AssessmentSet:
    """Parse one topic's assessment file; raises ValueError on bad content."""
    source = Path(path)
    root = ET.fromstring(source.read_text(encoding="utf-8"))
    topic_attr = root.get("topic_id")
    if topic_attr is not None:
        topic_id = int(topic_attr)
    else:
        digits = "".join(ch for ch in source.stem if ch.isdigit())
        if not digits:
            raise ValueError(f"cannot determine topic id for {source}")
        topic_id = int(digits)
    entries = []
    for file_el in root.iter("file"):
        doc = file_el.get("file")
        if not doc:
            raise ValueError(f"{source}: <file> without a file attribute")
        for path_el in file_el.iter("path"):
            raw = path_el.get("path")
            if raw is None:
                raise ValueError(f"{source}: <path> without a path attribute")
            entries.append(
                AssessmentEntry(
                    doc=doc,
                    path=ElementPath.from_string(raw),
                    exhaustivity=int(path_el.get("E", "0")),
                    specificity=int(path_el.get("S", "0")),
                )
            )
    return AssessmentSet(topic_id=topic_id, entries=entries)


def load_assessments(directory: str | Path) -> tuple[list[AssessmentSet], list[str]]:
    """Parse every ``*.xml`` file in a directory; malformed files are skipped
    with a diagnostic. Sets come back ordered by topic id."""
    root = Path(directory)
    if not root.is_dir():
        raise FileNotFoundError(f"assessments directory not found: {root}")
    sets: list[AssessmentSet] = []
    diagnostics: list[str] = []
    for path in sorted(root.glob("*.xml")):
        try:
            sets.append(parse_assessment_file(path))
        except (ET.ParseError, ValueError) as exc:
            diagnostics.append(f"{path.name}: skipped ({exc})")
    sets.sort(key=lambda s: s.topic_id)
    return sets, diagnostics


def highly_relevant(assessment: AssessmentSet) -> set[tuple[str, ElementPath]]:
    """Elements graded 3 on both dimensions."""
    return {
        (e.doc, e.path)
        for e in assessment.entries
        if e.exhaustivity == 3 and e.specificity == 3
    }


def derive_view(assessment: AssessmentSet, case: str) -> set[tuple[str, ElementPath]]:
    """The chosen view of the highly relevant set."""
    if case not in RELEVANCE_CASES:
        raise ValueError(f"unknown relevance case: {case!r}")
    relevant = highly_relevant(assessment)
    if case == ORIGINAL:
        return relevant
    by_doc: dict[str, list[ElementPath]] = defaultdict(list)
    for doc, path in relevant:
        by_doc[doc].append(path)
    view: set[tuple[str, ElementPath]] = set()
    for doc, paths in by_doc.items():
        for path in paths:
            if case == GENERAL:
                keep = not any(other.is_ancestor_of(path) for other in paths)
            else:
                keep = not any(path.is_ancestor_of(other) for other in paths)
            if keep:
                view.add((doc, path))
    return view


def element_distribution(assessments: list[AssessmentSet], case: str) -> dict[str, int]:
    """Occurrences of each final path-step tag across all topics for a view."""
    counts: Counter[str] = Counter()
    for assessment in assessments:
        for _, path in derive_view(assessment, case):
            counts[path.tag] += 1
    return dict(counts)


def categorize_topic(assessment: AssessmentSet) -> str:
    """Broad, narrow or neutral, from the general view's composition.

    Whole-document elements are those whose path has a single step. A topic
    with no highly relevant element cannot be categorized and raises.
    """
    general = derive_view(assessment, GENERAL)
    if not general:
        raise ValueError(f"topic {assessment.topic_id} has no highly relevant elements")
    articles = sum(1 for _, path in general if path.depth == 1)
    others = len(general) - articles
    if articles > others:
        return BROAD
    if articles < others:
        return NARROW
    return NEUTRAL
