"""Shared test machinery: independent oracles and random-input generators.

Everything here checks definitions directly (brute force over all elements,
exact rational arithmetic, token-id region accounting) so the oracles stay
independent of the implementation paths they verify.
"""

from __future__ import annotations

import random
from fractions import Fraction

from xmlir import Corpus, DocumentTree, ElementPath, parse_document
from xmlir.corpus import DEFAULT_TOKENIZER


def corpus_from_strings(docs: dict[str, str]) -> Corpus:
    """In-memory corpus; insertion order of the dict is the ingestion order."""
    trees = {doc: parse_document(text, doc) for doc, text in docs.items()}
    return Corpus(docs=trees, tokenizer=DEFAULT_TOKENIZER)


def write_corpus(directory, docs: dict[str, str]) -> None:
    for doc, text in docs.items():
        path = directory / f"{doc}.xml"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# matcher oracle


def brute_force_matches(tree: DocumentTree, query) -> list[ElementPath]:
    """Most-specific satisfiers checked directly on every element."""

    def subtree_terms(node) -> set[str]:
        terms = set(node.token_set)
        for child in node.children:
            terms |= subtree_terms(child)
        return terms

    satisfied = {
        node.path for node in tree.nodes if query.satisfied_by(subtree_terms(node))
    }
    matches = [
        node.path
        for node in tree.nodes  # tree.nodes is document order
        if node.path in satisfied
        and not any(other != node.path and node.path.is_ancestor_of(other) for other in satisfied)
    ]
    return matches


# ---------------------------------------------------------------------------
# coherent-element oracle


def brute_force_cres(
    all_paths: list[ElementPath],
    matching: list[ElementPath],
) -> dict[ElementPath, int]:
    """Fixpoint of the containment definition over every tree element.

    Returns path -> count of matching elements strictly below. The singleton
    special case mirrors the contract: a one-element input is returned
    unchanged with count 1.
    """
    if len(matching) == 1:
        return {matching[0]: 1}
    matching_set = set(matching)
    items: set[ElementPath] = set(matching)
    qualified: set[ElementPath] = set()
    changed = True
    while changed:
        changed = False
        for candidate in all_paths:
            if candidate in qualified or candidate in matching_set:
                continue
            below = [item for item in items if candidate.is_ancestor_of(item)]
            children = {item.steps[candidate.depth] for item in below}
            if len(children) >= 2:
                qualified.add(candidate)
                items.add(candidate)
                changed = True
    return {
        path: sum(1 for m in matching if path.is_ancestor_of(m))
        for path in qualified
    }


# ---------------------------------------------------------------------------
# assessment-view oracle


def brute_force_views(relevant: set[tuple[str, ElementPath]]):
    """(general, specific) computed by scanning every pair directly."""
    general = {
        (doc, path)
        for doc, path in relevant
        if not any(d == doc and other.is_ancestor_of(path) for d, other in relevant)
    }
    specific = {
        (doc, path)
        for doc, path in relevant
        if not any(d == doc and path.is_ancestor_of(other) for d, other in relevant)
    }
    return general, specific


# ---------------------------------------------------------------------------
# metric oracles


def naive_strict_ap(relevance_flags: list[bool], recall_base: int) -> float:
    """Exact-rational scorer: scan the run per recall level from scratch."""
    assert recall_base > 0
    total = Fraction(0)
    for i in range(1, 101):
        level = Fraction(i, 100)
        best = Fraction(0)
        hits = 0
        for rank, flag in enumerate(relevance_flags, start=1):
            if flag:
                hits += 1
            if Fraction(hits, recall_base) >= level:
                best = max(best, Fraction(hits, rank))
        total += best
    return float(total / 100)


def token_regions(tree: DocumentTree) -> dict[ElementPath, frozenset[int]]:
    """Each element's subtree as a set of concrete token identifiers."""
    counter = [0]
    regions: dict[ElementPath, frozenset[int]] = {}

    def visit(node) -> set[int]:
        ids = set()
        for _ in node.tokens:
            ids.add(counter[0])
            counter[0] += 1
        for child in node.children:
            ids |= visit(child)
        regions[node.path] = frozenset(ids)
        return ids

    visit(tree.root)
    return regions


def naive_ng_ap(
    entries: list[tuple[str, ElementPath]],
    relevant: set[tuple[str, ElementPath]],
    regions: dict[str, dict[ElementPath, frozenset[int]]],
    overlap_mode: str,
) -> float:
    """Region-based size-weighted scorer using real token-id sets."""

    def region(doc: str, path: ElementPath) -> frozenset[int]:
        return regions[doc].get(path, frozenset())

    total_relevant = sum(len(region(doc, path)) for doc, path in relevant)
    assert total_relevant > 0
    covered_tokens: dict[str, set[int]] = {}
    covered = 0
    consumed = 0
    points = []
    for doc, path in entries:
        tokens = region(doc, path)
        seen = covered_tokens.setdefault(doc, set())
        fresh = tokens - seen
        credit = len(tokens) if overlap_mode == "s" else len(fresh)
        seen |= tokens
        if (doc, path) in relevant:
            covered += credit
        consumed += len(tokens)
        recall = Fraction(covered, total_relevant)
        precision = Fraction(covered, consumed) if consumed else Fraction(0)
        points.append((recall, precision))
    total = Fraction(0)
    for i in range(1, 101):
        level = Fraction(i, 100)
        best = max((p for r, p in points if r >= level), default=Fraction(0))
        total += best
    return float(total / 100)


# ---------------------------------------------------------------------------
# random structures


TAG_POOL = ("sec", "p", "ss1", "ip1", "fig")


def random_tree_paths(rng: random.Random, max_nodes: int = 30) -> list[ElementPath]:
    """Paths of a random tree (root included), in creation order."""
    root = ElementPath.root("article")
    paths = [root]
    children_of: dict[ElementPath, dict[str, int]] = {root: {}}
    for _ in range(rng.randint(0, max_nodes - 1)):
        parent = rng.choice(paths)
        tag = rng.choice(TAG_POOL)
        counts = children_of.setdefault(parent, {})
        counts[tag] = counts.get(tag, 0) + 1
        child = parent.child(tag, counts[tag])
        paths.append(child)
        children_of[child] = {}
    return paths


def random_antichain(rng: random.Random, paths: list[ElementPath]) -> list[ElementPath]:
    """Non-empty set of pairwise incomparable paths."""
    target = rng.randint(1, 8)
    chosen: list[ElementPath] = []
    for path in rng.sample(paths, len(paths)):
        if not any(path.is_ancestor_of(c) or c.is_ancestor_of(path) or c == path for c in chosen):
            chosen.append(path)
        if len(chosen) >= target:
            break
    return chosen


def random_xml(rng: random.Random, max_children: int = 3, max_depth: int = 4) -> str:
    """Small random document over a tiny vocabulary."""
    vocab = ["alpha", "beta", "gamma", "delta", "epsilon"]

    def element(tag: str, depth: int) -> str:
        text = " ".join(rng.choices(vocab, k=rng.randint(0, 3)))
        inner = text
        if depth < max_depth:
            for _ in range(rng.randint(0, max_children)):
                inner += element(rng.choice(TAG_POOL), depth + 1)
                inner += " ".join(rng.choices(vocab, k=rng.randint(0, 2)))
        return f"<{tag}>{inner}</{tag}>"

    return element("article", 0)


# ---------------------------------------------------------------------------
# synthetic experiment workspace


N_TOPICS = 10
BROAD_TOPICS = range(1, 6)  # their whole articles are assessed relevant
RELEVANT_DOCS_PER_TOPIC = 2
N_DISTRACTORS = 180


def _topic_terms(topic_id: int) -> tuple[str, str, str, str]:
    t = f"topic{topic_id:02d}"
    # the last term occurs nowhere, keeping every AND answer list empty
    return f"{t}a", f"{t}b", f"{t}c", f"{t}x"


def _relevant_doc(topic_id: int, copy: int) -> str:
    qa, qb, qc, _ = _topic_terms(topic_id)
    pad = f"r{topic_id:02d}{copy}"
    return (
        "<article><bdy>"
        f"<sec><p>{qa} {qa} {qa} notes</p><p>{qb} {qb} details</p></sec>"
        f"<sec><p>{qa} {qb} combined</p><p>{qc} {qc} outcomes</p></sec>"
        f"<sec><p>{pad} methods {pad} review {pad}</p></sec>"
        f"</bdy><bm><app><p>{qc} summary material</p></app></bm></article>"
    )


def _distractor_doc(i: int) -> str:
    qa = _topic_terms(i % N_TOPICS + 1)[0]
    qb = _topic_terms((i + 3) % N_TOPICS + 1)[1]
    pad = " ".join(f"w{i:03d}" for _ in range(3 + i % 5))
    return (
        f"<article><sec><p>{pad} {qa} {pad}</p></sec>"
        f"<sec><p>{pad} unrelated</p><p>{qb} aside</p></sec></article>"
    )


def build_synthetic_workspace(root) -> dict:
    """Corpus, topics and assessments engineered so relevant content
    concentrates in sections of the articles that rank highest.

    Distractor documents sort first in ingestion order and mention query
    terms only in passing; relevant documents sort last, carry dense term
    occurrences, and are assessed on their container elements plus two of
    their five matching paragraphs.
    """
    corpus_dir = root / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    docs = {}
    for i in range(N_DISTRACTORS):
        docs[f"d/{i:04d}"] = _distractor_doc(i)
    for topic_id in range(1, N_TOPICS + 1):
        for copy in range(RELEVANT_DOCS_PER_TOPIC):
            docs[f"r/t{topic_id:02d}-{copy}"] = _relevant_doc(topic_id, copy)
    write_corpus(corpus_dir, docs)

    topic_xml = ["<inex_topics>"]
    for topic_id in range(1, N_TOPICS + 1):
        qa, qb, qc, qx = _topic_terms(topic_id)
        topic_xml.append(
            f'<inex_topic topic_id="{topic_id}" query_type="CO">'
            f"<title>synthetic topic {topic_id}</title>"
            f"<keywords>{qa}, {qb}, {qc}, {qx}</keywords>"
            "</inex_topic>"
        )
    topic_xml.append("</inex_topics>")
    topics_file = root / "topics.xml"
    topics_file.write_text("".join(topic_xml), encoding="utf-8")

    assess_dir = root / "assessments"
    assess_dir.mkdir(parents=True, exist_ok=True)
    for topic_id in range(1, N_TOPICS + 1):
        rows = [f'<assessments topic_id="{topic_id}">']
        container_paths = ["/article[1]", "/article[1]/bdy[1]"] if topic_id in BROAD_TOPICS else []
        container_paths += ["/article[1]/bdy[1]/sec[1]", "/article[1]/bdy[1]/sec[2]"]
        hit_paths = ["/article[1]/bdy[1]/sec[1]/p[1]", "/article[1]/bdy[1]/sec[2]/p[2]"]
        for copy in range(RELEVANT_DOCS_PER_TOPIC):
            rows.append(f'<file file="r/t{topic_id:02d}-{copy}">')
            for path in container_paths + hit_paths:
                rows.append(f'<path E="3" S="3" path="{path}"/>')
            rows.append('<path E="3" S="2" path="/article[1]/bm[1]"/>')
            rows.append("</file>")
        rows.append("</assessments>")
        (assess_dir / f"{topic_id:02d}.xml").write_text("".join(rows), encoding="utf-8")

    return {
        "corpus": corpus_dir,
        "topics": topics_file,
        "assessments": assess_dir,
        "n_docs": len(docs),
    }
