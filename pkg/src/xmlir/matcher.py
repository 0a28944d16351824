"""Element-level AND/OR keyword search.

Returns the most specific elements whose subtree satisfies the term
predicate: an element matches when its subtree holds the required terms and
no proper descendant's subtree does likewise. Per document the matches form
an antichain listed in document order; across documents they follow the
ingestion order of document identifiers. No ranking happens here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, DocumentTree, ElementNode
from .paths import ElementPath

AND = "and"
OR = "or"


@dataclass(frozen=True)
class ElementQuery:
    terms: frozenset[str]
    mode: str  # AND or OR

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("element query needs at least one term")
        if self.mode not in (AND, OR):
            raise ValueError(f"unknown query mode: {self.mode!r}")

    def satisfied_by(self, present: frozenset[str] | set[str]) -> bool:
        if self.mode == AND:
            return self.terms <= present
        return bool(self.terms & present)


@dataclass(frozen=True)
class MatchingElement:
    doc: str
    path: ElementPath


def match_elements(tree: DocumentTree, query: ElementQuery) -> list[MatchingElement]:
    """Most specific satisfying elements of one document, in document order."""

    def visit(node: ElementNode) -> tuple[set[str], list[MatchingElement], bool]:
        present = set(query.terms & node.token_set)
        matches: list[MatchingElement] = []
        child_satisfied = False
        for child in node.children:
            c_present, c_matches, c_sat = visit(child)
            present |= c_present
            matches.extend(c_matches)
            child_satisfied = child_satisfied or c_sat
        satisfied = query.satisfied_by(present)
        if satisfied and not child_satisfied:
            matches = [MatchingElement(tree.doc, node.path)]
        return present, matches, satisfied

    _, matches, _ = visit(tree.root)
    return matches


def collection_match(corpus: Corpus, query: ElementQuery) -> list[MatchingElement]:
    """Per-document matches concatenated, documents in ingestion order."""
    out: list[MatchingElement] = []
    for tree in corpus.trees():
        out.extend(match_elements(tree, query))
    return out
