"""Coherent retrieval elements: identification and heuristic ranking.

Given one article's list of matching-element paths, a coherent element is an
ancestor that contains at least two items (matching elements or other
coherent elements) spread across at least two distinct immediate children.
The qualification is self-referential, so the set is computed bottom-up to a
fixpoint: deeper elements qualify first and then count as items for their
own ancestors.

A single-item input is the special case: the sole matching element is
returned as-is, since nothing supports promoting any of its ancestors.

Ranking uses a three-key heuristic code such as ``MpE``:

* ``M``/``m``: more/fewer containing matches first;
* ``P``/``p``: longer/shorter path first;
* ``B``/``E``: sibling-index sequence nearer the beginning/end of the
  article first (lexicographic on the index projection of the path).

The first two letters are the primary and secondary keys in either order
(one from each pair), the third letter always resolves remaining ties,
giving 16 valid codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .paths import ElementPath, PathStep, SequenceKey

_MATCH_KEYS = ("M", "m")
_PATH_KEYS = ("P", "p")
_TIEBREAKS = ("B", "E")

_KEY_PAIRS = [(a, b) for a in _MATCH_KEYS for b in _PATH_KEYS] + [
    (a, b) for a in _PATH_KEYS for b in _MATCH_KEYS
]
COMBO_CODES: tuple[str, ...] = tuple(a + b + t for a, b in _KEY_PAIRS for t in _TIEBREAKS)


@dataclass(frozen=True)
class HeuristicCombo:
    primary: str
    secondary: str
    tiebreak: str

    def __post_init__(self) -> None:
        code = self.primary + self.secondary + self.tiebreak
        if code not in COMBO_CODES:
            raise ValueError(f"invalid heuristic combination {code!r}")

    @classmethod
    def from_string(cls, code: str) -> "HeuristicCombo":
        if len(code) != 3:
            raise ValueError(f"invalid heuristic combination {code!r}")
        return cls(code[0], code[1], code[2])

    def __str__(self) -> str:
        return self.primary + self.secondary + self.tiebreak


DEFAULT_COMBO = HeuristicCombo.from_string("MpE")


@dataclass(frozen=True)
class CoherentElement:
    doc: str
    path: ElementPath
    matches: int  # matching elements lying strictly below this path
    length: int  # number of path steps
    sequence: SequenceKey  # sibling-index projection of the path

    @classmethod
    def at(cls, doc: str, path: ElementPath, matches: int) -> "CoherentElement":
        return cls(doc=doc, path=path, matches=matches, length=path.depth, sequence=path.sequence())


def identify_cres(doc: str, matching: Sequence[ElementPath]) -> list[CoherentElement]:
    """Coherent elements for one article's matching-element paths.

    Input paths must be unique and share the root step (one document).
    Returns records ordered by path; callers treat the result as a set.
    """
    paths = list(matching)
    if not paths:
        raise ValueError("matching element list is empty")
    steps_list = [p.steps for p in paths]
    if len(set(steps_list)) != len(steps_list):
        raise ValueError("duplicate matching paths")
    root_step = steps_list[0][0]
    if any(s[0] != root_step for s in steps_list):
        raise ValueError("matching paths span more than one document root")

    if len(paths) == 1:
        return [CoherentElement.at(doc, paths[0], matches=1)]

    matching_steps = set(steps_list)
    candidates = {
        steps[:n] for steps in steps_list for n in range(1, len(steps))
    } - matching_steps

    # Deepest-first sweep reaches the fixpoint: every item supporting a
    # candidate is strictly deeper, so it has already been decided.
    items: set[tuple[PathStep, ...]] = set(matching_steps)
    records: list[CoherentElement] = []
    for cand in sorted(candidates, key=len, reverse=True):
        depth = len(cand)
        child_steps = {it[depth] for it in items if len(it) > depth and it[:depth] == cand}
        if len(child_steps) >= 2:
            items.add(cand)
            matches = sum(1 for s in matching_steps if len(s) > depth and s[:depth] == cand)
            records.append(CoherentElement.at(doc, ElementPath(cand), matches))
    records.sort(key=lambda r: r.path.steps)
    return records


def _sort_key(record: CoherentElement, combo: HeuristicCombo):
    def component(letter: str):
        if letter == "M":
            return -record.matches
        if letter == "m":
            return record.matches
        if letter == "P":
            return -record.length
        return record.length

    if combo.tiebreak == "B":
        seq = record.sequence
    else:
        seq = tuple(-i for i in record.sequence)
    # doc + full path make the order total: distinct sibling-index sequences
    # are not guaranteed (e.g. /article[1]/bdy[1] vs /article[1]/bm[1]).
    return (
        component(combo.primary),
        component(combo.secondary),
        seq,
        record.doc,
        record.path.steps,
    )


def rank_cres(
    cres: Sequence[CoherentElement],
    combo: HeuristicCombo = DEFAULT_COMBO,
    limit: int | None = None,
) -> list[CoherentElement]:
    """Total order over coherent elements under a heuristic combination.

    ``limit=None`` keeps the whole list; otherwise the first ``limit``
    records are returned.
    """
    if limit is not None and limit < 1:
        raise ValueError("limit must be positive")
    ranked = sorted(cres, key=lambda r: _sort_key(r, combo))
    return ranked if limit is None else ranked[:limit]
