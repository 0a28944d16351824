"""Per-topic retrieval systems composed into capped, ranked answer lists.

Five system configurations exist:

* ``fulltext``: whole articles by pivoted-cosine score;
* ``xmldb``: element matches for all documents in ingestion order, the AND
  answer list followed by OR answers not already in it, with no scores;
* ``xmldb`` + coherent elements: each document's combined match list is
  replaced by its ranked coherent elements;
* ``hybrid``: per article in ranked-article order, that article's
  AND-then-OR match list;
* ``hybrid`` + coherent elements: likewise with ranked coherent elements.

Every answer list is capped globally (default 1500 entries, cutting
mid-article at the boundary) and per article when a per-article limit is
configured.

Topics arrive in the ``<inex_topic>`` XML format (title, description,
narrative and a comma-separated keywords field); queries are built from the
keywords alone: phrases split on commas, tokenized, and flattened into a
term bag for article ranking and a term set for element matching.

Run files are tab-separated, one entry per line:
``topic_id  rank  doc_id  element_path  score_or_dash  system_tag``.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .corpus import Corpus, DocumentTree, TokenizerConfig, DEFAULT_TOKENIZER
from .cre import DEFAULT_COMBO, HeuristicCombo, identify_cres, rank_cres
from .matcher import AND, OR, ElementQuery, collection_match, match_elements
from .paths import ElementPath
from .ranker import InvertedIndex, RankParams, rank_articles

FULLTEXT = "fulltext"
XMLDB = "xmldb"
HYBRID = "hybrid"
SYSTEMS = (FULLTEXT, XMLDB, HYBRID)


@dataclass(frozen=True)
class Topic:
    id: int
    title: str = ""
    description: str = ""
    narrative: str = ""
    keywords: tuple[str, ...] = ()


@dataclass(frozen=True)
class TopicQuery:
    bag: tuple[str, ...]  # duplicates retained, used for article ranking
    and_query: ElementQuery
    or_query: ElementQuery


@dataclass(frozen=True)
class SystemConfig:
    system: str
    cre: bool = False
    combo: HeuristicCombo = DEFAULT_COMBO
    n_per_article: int | None = None  # None means all
    slope: float = 0.55
    max_results: int = 1500

    def __post_init__(self) -> None:
        if self.system not in SYSTEMS:
            raise ValueError(f"unknown system: {self.system!r}")
        if self.n_per_article is not None and self.n_per_article < 1:
            raise ValueError("n_per_article must be positive")
        RankParams(slope=self.slope, max_results=self.max_results)  # bounds check

    @property
    def tag(self) -> str:
        if self.system != FULLTEXT and self.cre:
            return f"{self.system}-cre"
        return self.system

    @property
    def rank_params(self) -> RankParams:
        return RankParams(slope=self.slope, max_results=self.max_results)


@dataclass(frozen=True)
class RunEntry:
    rank: int
    doc: str
    path: ElementPath
    score: float | None


@dataclass
class RunResult:
    topic_id: int
    system_tag: str
    entries: tuple[RunEntry, ...] = ()


def parse_topics(path: str | Path) -> tuple[list[Topic], list[str]]:
    """Parse a topics file holding one ``<inex_topic>`` or a container of them.

    Structural (non-CO) topics are ignored; a malformed topic element is
    skipped with a diagnostic rather than failing the whole file.
    """
    root = ET.fromstring(Path(path).read_text(encoding="utf-8"))
    if root.tag == "inex_topic":
        elements = [root]
    else:
        elements = root.findall("inex_topic")
    topics = []
    diagnostics = []
    for position, el in enumerate(elements, start=1):
        query_type = el.get("query_type")
        if query_type is not None and query_type != "CO":
            continue  # structural topics are out of scope
        raw_id = el.get("topic_id")
        try:
            topic_id = int(raw_id)
        except (TypeError, ValueError):
            diagnostics.append(f"topic #{position}: bad or missing topic_id {raw_id!r}; skipped")
            continue
        keywords_text = (el.findtext("keywords") or "").strip()
        keywords = tuple(p.strip() for p in keywords_text.split(",") if p.strip())
        topics.append(
            Topic(
                id=topic_id,
                title=(el.findtext("title") or "").strip(),
                description=(el.findtext("description") or "").strip(),
                narrative=(el.findtext("narrative") or "").strip(),
                keywords=keywords,
            )
        )
    return topics, diagnostics


def translate_topic(topic: Topic, tokenizer: TokenizerConfig = DEFAULT_TOKENIZER) -> TopicQuery:
    """Build the article-ranking bag and the AND/OR element queries.

    The bag keeps one occurrence per keyword token; the element queries use
    the distinct term set. Raises ValueError for a topic without usable
    keywords.
    """
    bag: list[str] = []
    for phrase in topic.keywords:
        bag.extend(tokenizer.tokenize(phrase))
    if not bag:
        raise ValueError(f"topic {topic.id}: no keyword terms to query with")
    terms = frozenset(bag)
    return TopicQuery(
        bag=tuple(bag),
        and_query=ElementQuery(terms=terms, mode=AND),
        or_query=ElementQuery(terms=terms, mode=OR),
    )


def _combined_paths(tree: DocumentTree, query: TopicQuery) -> list[ElementPath]:
    """One document's AND matches followed by OR matches not already present."""
    and_paths = [m.path for m in match_elements(tree, query.and_query)]
    and_set = set(and_paths)
    or_paths = [m.path for m in match_elements(tree, query.or_query)]
    return and_paths + [p for p in or_paths if p not in and_set]


def run_fulltext(topic: Topic, corpus: Corpus, index: InvertedIndex, config: SystemConfig) -> RunResult:
    """Whole-article answers in descending score order."""
    query = translate_topic(topic, corpus.tokenizer)
    ranked = rank_articles(index, query.bag, config.rank_params)
    entries = tuple(
        RunEntry(rank=a.rank, doc=a.doc, path=corpus.docs[a.doc].root.path, score=a.score)
        for a in ranked
    )
    return RunResult(topic_id=topic.id, system_tag=config.tag, entries=entries)


def run_xmldb(topic: Topic, corpus: Corpus, config: SystemConfig) -> RunResult:
    """Element answers for the whole collection, documents in ingestion order."""
    query = translate_topic(topic, corpus.tokenizer)
    if config.cre:
        pairs = _cre_pairs_per_doc(corpus.trees(), query, config)
    else:
        and_matches = collection_match(corpus, query.and_query)
        and_set = {(m.doc, m.path) for m in and_matches}
        or_matches = collection_match(corpus, query.or_query)
        combined = and_matches + [m for m in or_matches if (m.doc, m.path) not in and_set]
        pairs = ((m.doc, m.path) for m in combined)
    return RunResult(
        topic_id=topic.id,
        system_tag=config.tag,
        entries=_capped_entries(pairs, config),
    )


def run_hybrid(topic: Topic, corpus: Corpus, index: InvertedIndex, config: SystemConfig) -> RunResult:
    """Element answers drawn from articles in ranked-article order."""
    query = translate_topic(topic, corpus.tokenizer)
    ranked = rank_articles(index, query.bag, config.rank_params)
    trees = (corpus.docs[a.doc] for a in ranked)
    if config.cre:
        pairs = _cre_pairs_per_doc(trees, query, config)
    else:
        pairs = (
            (tree.doc, path) for tree in trees for path in _combined_paths(tree, query)
        )
    return RunResult(
        topic_id=topic.id,
        system_tag=config.tag,
        entries=_capped_entries(pairs, config),
    )


def _cre_pairs_per_doc(
    trees: Iterable[DocumentTree],
    query: TopicQuery,
    config: SystemConfig,
) -> Iterable[tuple[str, ElementPath]]:
    for tree in trees:
        paths = _combined_paths(tree, query)
        if not paths:
            continue
        ranked = rank_cres(identify_cres(tree.doc, paths), config.combo, config.n_per_article)
        for record in ranked:
            yield (tree.doc, record.path)


def _capped_entries(
    pairs: Iterable[tuple[str, ElementPath]],
    config: SystemConfig,
) -> tuple[RunEntry, ...]:
    """Apply the per-article and global caps; element entries carry no score."""
    n = config.n_per_article
    per_doc: dict[str, int] = {}
    entries: list[RunEntry] = []
    for doc, path in pairs:
        if n is not None:
            taken = per_doc.get(doc, 0)
            if taken >= n:
                continue
            per_doc[doc] = taken + 1
        entries.append(RunEntry(rank=len(entries) + 1, doc=doc, path=path, score=None))
        if len(entries) >= config.max_results:
            break
    return tuple(entries)


def execute(topic: Topic, corpus: Corpus, index: InvertedIndex | None, config: SystemConfig) -> RunResult:
    """Dispatch one topic through the configured system."""
    if config.system == FULLTEXT:
        if index is None:
            raise ValueError("fulltext runs need an index")
        return run_fulltext(topic, corpus, index, config)
    if config.system == XMLDB:
        return run_xmldb(topic, corpus, config)
    if index is None:
        raise ValueError("hybrid runs need an index")
    return run_hybrid(topic, corpus, index, config)


def format_run_lines(run: RunResult) -> list[str]:
    lines = []
    for entry in run.entries:
        score = "-" if entry.score is None else f"{entry.score:.6f}"
        lines.append(
            f"{run.topic_id}\t{entry.rank}\t{entry.doc}\t{entry.path}\t{score}\t{run.system_tag}"
        )
    return lines


def write_run_file(path: str | Path, runs: Iterable[RunResult]) -> None:
    lines: list[str] = []
    for run in runs:
        lines.extend(format_run_lines(run))
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def read_run_file(path: str | Path) -> list[RunResult]:
    """Parse a run file back into per-topic results, preserving order."""
    grouped: dict[int, list[RunEntry]] = {}
    tags: dict[int, str] = {}
    for number, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 6:
            raise ValueError(f"{path}: line {number}: expected 6 tab-separated fields")
        topic_id, rank, doc, raw_path, raw_score, tag = parts
        entry = RunEntry(
            rank=int(rank),
            doc=doc,
            path=ElementPath.from_string(raw_path),
            score=None if raw_score == "-" else float(raw_score),
        )
        grouped.setdefault(int(topic_id), []).append(entry)
        tags[int(topic_id)] = tag
    return [
        RunResult(topic_id=topic_id, system_tag=tags[topic_id], entries=tuple(entries))
        for topic_id, entries in grouped.items()
    ]
