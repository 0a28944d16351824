"""XML corpus ingestion: immutable, path-addressable document trees.

Document identifiers are relative file paths with the ``.xml`` suffix
stripped (``ic/1999/w4095``); ingestion order is the sorted order of those
relative paths and defines the total order used for tie-breaking everywhere
downstream.
"""

from __future__ import annotations

import functools
import re
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .paths import ElementPath


@dataclass(frozen=True)
class TokenizerConfig:
    """Term extraction: maximal alphanumeric runs, lowercased.

    No stemming, no stopword removal; attributes and markup never
    contribute terms.
    """

    token_pattern: str = r"[0-9A-Za-z]+"
    lowercase: bool = True

    def tokenize(self, text: str) -> list[str]:
        if not text:
            return []
        if self.lowercase:
            text = text.lower()
        return _compiled(self.token_pattern).findall(text)


@functools.lru_cache(maxsize=None)
def _compiled(pattern: str) -> re.Pattern[str]:
    return re.compile(pattern)


DEFAULT_TOKENIZER = TokenizerConfig()


@dataclass(frozen=True, eq=False)
class ElementNode:
    tag: str
    path: ElementPath
    tokens: tuple[str, ...]  # tokens directly inside this node
    token_set: frozenset[str]
    children: tuple["ElementNode", ...]
    subtree_size: int  # token count of this node plus all descendants

    def walk(self) -> Iterator["ElementNode"]:
        """Pre-order (document order) traversal of this subtree."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass(eq=False)
class DocumentTree:
    doc: str
    root: ElementNode
    nodes: tuple[ElementNode, ...]  # document order
    by_path: dict[ElementPath, ElementNode]

    def node_at(self, path: ElementPath) -> ElementNode | None:
        return self.by_path.get(path)


def _build_node(elem: ET.Element, path: ElementPath, tokenizer: TokenizerConfig) -> ElementNode:
    tokens = list(tokenizer.tokenize(elem.text or ""))
    children = []
    sibling_counts: Counter[str] = Counter()
    for child in elem:
        sibling_counts[child.tag] += 1
        child_path = path.child(child.tag, sibling_counts[child.tag])
        children.append(_build_node(child, child_path, tokenizer))
        # a child's tail text sits directly inside this node
        tokens.extend(tokenizer.tokenize(child.tail or ""))
    size = len(tokens) + sum(c.subtree_size for c in children)
    return ElementNode(
        tag=elem.tag,
        path=path,
        tokens=tuple(tokens),
        token_set=frozenset(tokens),
        children=tuple(children),
        subtree_size=size,
    )


def parse_document(text: str, doc: str, tokenizer: TokenizerConfig = DEFAULT_TOKENIZER) -> DocumentTree:
    """Parse one XML document into an immutable tree; raises ET.ParseError."""
    elem = ET.fromstring(text)
    root = _build_node(elem, ElementPath.root(elem.tag), tokenizer)
    nodes = tuple(root.walk())
    return DocumentTree(doc=doc, root=root, nodes=nodes, by_path={n.path: n for n in nodes})


@dataclass(eq=False)
class Corpus:
    docs: dict[str, DocumentTree]  # insertion order == ingestion order
    tokenizer: TokenizerConfig = DEFAULT_TOKENIZER
    diagnostics: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.docs)

    @property
    def doc_ids(self) -> list[str]:
        return list(self.docs)

    def order_of(self, doc: str) -> int:
        """Ingestion sequence number of a document identifier."""
        return list(self.docs).index(doc)

    def trees(self) -> Iterator[DocumentTree]:
        return iter(self.docs.values())


def ingest_corpus(
    root_directory: str | Path,
    tokenizer_config: TokenizerConfig = DEFAULT_TOKENIZER,
) -> Corpus:
    """Ingest every ``*.xml`` file under a directory.

    Malformed files are skipped with a diagnostic; an unreadable directory
    raises. Re-ingesting an unchanged directory yields identical document
    identifiers, order and trees.
    """
    root = Path(root_directory)
    if not root.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {root}")
    docs: dict[str, DocumentTree] = {}
    diagnostics: list[str] = []
    files = sorted(root.rglob("*.xml"), key=lambda p: p.relative_to(root).as_posix())
    for path in files:
        rel = path.relative_to(root).as_posix()
        doc = rel[: -len(".xml")]
        try:
            text = path.read_text(encoding="utf-8")
            docs[doc] = parse_document(text, doc, tokenizer_config)
        except (ET.ParseError, UnicodeDecodeError) as exc:
            diagnostics.append(f"{rel}: skipped ({exc})")
    return Corpus(docs=docs, tokenizer=tokenizer_config, diagnostics=diagnostics)


def resolve_path(tree: DocumentTree, path: ElementPath) -> ElementNode | None:
    """The unique node at ``path``, or None when no such node exists."""
    return tree.by_path.get(path)


def subtree_terms(tree: DocumentTree, path: ElementPath) -> Counter[str]:
    """Token multiset of the node at ``path`` and all its descendants.

    The total of this multiset is the element's size. Raises ValueError for
    a path that does not resolve.
    """
    node = tree.by_path.get(path)
    if node is None:
        raise ValueError(f"path does not resolve in {tree.doc}: {path}")
    terms: Counter[str] = Counter()
    for n in node.walk():
        terms.update(n.tokens)
    return terms


def element_size(tree: DocumentTree, path: ElementPath) -> int | None:
    """Subtree token count, or None when the path does not resolve."""
    node = tree.by_path.get(path)
    return None if node is None else node.subtree_size
