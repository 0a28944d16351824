"""Command-line driver: build index artifacts, execute retrieval runs,
evaluate them against assessments, and emit summary tables.

Subcommands: ``index``, ``run``, ``eval``, ``report``, ``assess-stats``.
Any option may also come from a JSON config file named by the
``XMLIR_CONFIG`` environment variable; explicit command-line values win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import assessments as assess
from . import evaluation, pipeline
from .corpus import Corpus, ingest_corpus
from .cre import COMBO_CODES, HeuristicCombo
from .paths import ElementPath
from .ranker import build_index, save_index

CONFIG_ENV = "XMLIR_CONFIG"

N_CHOICES = ("1", "10", "all")
CATEGORY_CHOICES = ("all", assess.BROAD, assess.NARROW)


def _config_defaults() -> dict[str, Any]:
    named = os.environ.get(CONFIG_ENV)
    if not named:
        return {}
    path = Path(named)
    if not path.is_file():
        raise FileNotFoundError(f"config file from {CONFIG_ENV} not found: {path}")
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError(f"config file must hold a JSON object: {path}")
    return data


def _opt(args: argparse.Namespace, defaults: dict[str, Any], name: str, fallback: Any = None) -> Any:
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name in defaults:
        return defaults[name]
    return fallback


def _parse_n(value: str) -> int | None:
    return None if value == "all" else int(value)


def _system_config(args: argparse.Namespace, defaults: dict[str, Any]) -> pipeline.SystemConfig:
    return pipeline.SystemConfig(
        system=_opt(args, defaults, "system", pipeline.FULLTEXT),
        cre=bool(_opt(args, defaults, "cre", False)),
        combo=HeuristicCombo.from_string(_opt(args, defaults, "combo", "MpE")),
        n_per_article=_parse_n(str(_opt(args, defaults, "n", "all"))),
        slope=float(_opt(args, defaults, "slope", 0.55)),
        max_results=int(_opt(args, defaults, "max_results", 1500)),
    )


def _load_corpus(args: argparse.Namespace, defaults: dict[str, Any]) -> Corpus:
    corpus_dir = _opt(args, defaults, "corpus")
    if not corpus_dir:
        raise ValueError("--corpus is required")
    corpus = ingest_corpus(corpus_dir)
    for line in corpus.diagnostics:
        print(f"corpus: {line}", file=sys.stderr)
    return corpus


def cmd_index(args: argparse.Namespace, defaults: dict[str, Any]) -> int:
    corpus = _load_corpus(args, defaults)
    out_dir = Path(_opt(args, defaults, "out", "index"))
    out_dir.mkdir(parents=True, exist_ok=True)
    index = build_index(corpus)
    save_index(index, out_dir / "index.txt")
    manifest = "".join(
        f"{seq}\t{doc}\t{tree.root.subtree_size}\n"
        for seq, (doc, tree) in enumerate(corpus.docs.items())
    )
    (out_dir / "manifest.tsv").write_text(manifest, encoding="utf-8")
    print(f"indexed {len(corpus)} documents into {out_dir}")
    return 0


def cmd_run(args: argparse.Namespace, defaults: dict[str, Any]) -> int:
    config = _system_config(args, defaults)
    corpus = _load_corpus(args, defaults)
    topics_file = _opt(args, defaults, "topics")
    if not topics_file:
        raise ValueError("--topics is required")
    topics, topic_diagnostics = pipeline.parse_topics(topics_file)
    for line in topic_diagnostics:
        print(f"topics: {line}", file=sys.stderr)
    index = build_index(corpus) if config.system in (pipeline.FULLTEXT, pipeline.HYBRID) else None
    runs = []
    for topic in topics:
        try:
            runs.append(pipeline.execute(topic, corpus, index, config))
        except ValueError as exc:
            print(f"topic {topic.id}: skipped ({exc})", file=sys.stderr)
    out = Path(_opt(args, defaults, "out", f"{config.tag}.run"))
    out.parent.mkdir(parents=True, exist_ok=True)
    pipeline.write_run_file(out, runs)
    print(f"wrote {sum(len(r.entries) for r in runs)} entries for {len(runs)} topics to {out}")
    return 0


def _filter_topics(
    sets: list[assess.AssessmentSet],
    category: str,
) -> dict[int, assess.AssessmentSet]:
    """Assessment sets that fall in the requested category; uncategorizable
    topics (no highly relevant elements) are dropped with a diagnostic."""
    kept: dict[int, assess.AssessmentSet] = {}
    for aset in sets:
        try:
            topic_category = assess.categorize_topic(aset)
        except ValueError as exc:
            print(f"assessments: {exc}; excluded", file=sys.stderr)
            continue
        if category == "all" or topic_category == category:
            kept[aset.topic_id] = aset
    return kept


def _score_runs(
    runs: list[pipeline.RunResult],
    judged: dict[int, assess.AssessmentSet],
    case: str,
    metric: str,
    corpus: Corpus | None,
) -> dict[int, float]:
    per_topic: dict[int, float] = {}
    sizes: dict[tuple[str, ElementPath], int] | None = None
    if metric != evaluation.METRIC_STRICT:
        if corpus is None:
            raise ValueError(f"metric {metric} needs --corpus for element sizes")
        needed: set[tuple[str, ElementPath]] = set()
        for run in runs:
            if run.topic_id in judged:
                needed.update((e.doc, e.path) for e in run.entries)
                needed.update(evaluation.quantize(judged[run.topic_id], case).relevant)
        sizes, diagnostics = evaluation.build_size_map(corpus, needed)
        for line in diagnostics:
            print(f"sizes: {line}", file=sys.stderr)
    for run in runs:
        aset = judged.get(run.topic_id)
        if aset is None:
            print(f"topic {run.topic_id}: no matching assessments; skipped", file=sys.stderr)
            continue
        judgment = evaluation.quantize(aset, case)
        entries = [(e.doc, e.path) for e in run.entries]
        try:
            if metric == evaluation.METRIC_STRICT:
                per_topic[run.topic_id] = evaluation.inex_eval_strict(entries, judgment)
            else:
                mode = "s" if metric == evaluation.METRIC_NG_SIZE else "o"
                per_topic[run.topic_id] = evaluation.inex_eval_ng(entries, judgment, sizes, mode)
        except ValueError as exc:
            print(f"topic {run.topic_id}: skipped ({exc})", file=sys.stderr)
    return per_topic


def _write_lines(out: str | None, lines: list[str]) -> None:
    text = "".join(line + "\n" for line in lines)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_eval(args: argparse.Namespace, defaults: dict[str, Any]) -> int:
    runs = pipeline.read_run_file(args.run_file)
    assessments_dir = _opt(args, defaults, "assessments")
    if not assessments_dir:
        raise ValueError("--assessments is required")
    sets, diagnostics = assess.load_assessments(assessments_dir)
    for line in diagnostics:
        print(f"assessments: {line}", file=sys.stderr)
    case = _opt(args, defaults, "case", assess.ORIGINAL)
    category = _opt(args, defaults, "category", "all")
    metric = _opt(args, defaults, "metric", evaluation.METRIC_STRICT)
    corpus = None
    if metric != evaluation.METRIC_STRICT:
        corpus = _load_corpus(args, defaults)
    judged = _filter_topics(sets, category)
    per_topic = _score_runs(runs, judged, case, metric, corpus)
    label = evaluation.METRIC_LABELS[metric]
    lines = [f"topic\tap\t{label}/{case}/{category}"]
    for topic_id in sorted(per_topic):
        lines.append(f"{topic_id}\t{per_topic[topic_id]:.6f}")
    if per_topic:
        lines.append(f"map\t{evaluation.mean_average_precision(per_topic):.6f}")
    else:
        print("no scoreable topics", file=sys.stderr)
    _write_lines(_opt(args, defaults, "out"), lines)
    return 0


def cmd_report(args: argparse.Namespace, defaults: dict[str, Any]) -> int:
    corpus = _load_corpus(args, defaults)
    topics_file = _opt(args, defaults, "topics")
    assessments_dir = _opt(args, defaults, "assessments")
    if not topics_file or not assessments_dir:
        raise ValueError("--topics and --assessments are required")
    topics, topic_diagnostics = pipeline.parse_topics(topics_file)
    for line in topic_diagnostics:
        print(f"topics: {line}", file=sys.stderr)
    sets, diagnostics = assess.load_assessments(assessments_dir)
    for line in diagnostics:
        print(f"assessments: {line}", file=sys.stderr)
    metric = _opt(args, defaults, "metric", evaluation.METRIC_STRICT)
    combo = HeuristicCombo.from_string(_opt(args, defaults, "combo", "MpE"))
    slope = float(_opt(args, defaults, "slope", 0.55))
    max_results = int(_opt(args, defaults, "max_results", 1500))
    index = build_index(corpus)

    cells: list[tuple[pipeline.SystemConfig, str]] = []
    cells.append((pipeline.SystemConfig(system=pipeline.FULLTEXT, slope=slope, max_results=max_results), "-"))
    for system in (pipeline.XMLDB, pipeline.HYBRID):
        for cre in (False, True):
            for n_label in N_CHOICES:
                config = pipeline.SystemConfig(
                    system=system,
                    cre=cre,
                    combo=combo,
                    n_per_article=_parse_n(n_label),
                    slope=slope,
                    max_results=max_results,
                )
                cells.append((config, n_label))

    judged_by_category = {
        category: _filter_topics(sets, category) for category in CATEGORY_CHOICES
    }
    lines = ["system\tn\tcase\tcategory\tmetric\ttopics\tmap"]
    label = evaluation.METRIC_LABELS[metric]
    for config, n_label in cells:
        runs = []
        for topic in topics:
            try:
                runs.append(pipeline.execute(topic, corpus, index, config))
            except ValueError as exc:
                print(f"topic {topic.id}: skipped ({exc})", file=sys.stderr)
        for case in assess.RELEVANCE_CASES:
            for category in CATEGORY_CHOICES:
                per_topic = _score_runs(runs, judged_by_category[category], case, metric, corpus)
                if per_topic:
                    map_value = f"{evaluation.mean_average_precision(per_topic):.6f}"
                else:
                    map_value = "-"
                lines.append(
                    f"{config.tag}\t{n_label}\t{case}\t{category}\t{label}\t{len(per_topic)}\t{map_value}"
                )
    _write_lines(_opt(args, defaults, "out"), lines)
    return 0


def cmd_assess_stats(args: argparse.Namespace, defaults: dict[str, Any]) -> int:
    assessments_dir = _opt(args, defaults, "assessments")
    if not assessments_dir:
        raise ValueError("--assessments is required")
    sets, diagnostics = assess.load_assessments(assessments_dir)
    for line in diagnostics:
        print(f"assessments: {line}", file=sys.stderr)
    scoreable = [s for s in sets if assess.highly_relevant(s)]
    out_dir = Path(_opt(args, defaults, "out", "assess-stats"))
    out_dir.mkdir(parents=True, exist_ok=True)
    for case in assess.RELEVANCE_CASES:
        counts = assess.element_distribution(scoreable, case)
        lines = [f"tag\tcount\t{case}"]
        for tag in sorted(counts, key=lambda t: (-counts[t], t)):
            lines.append(f"{tag}\t{counts[tag]}")
        (out_dir / f"distribution_{case}.tsv").write_text(
            "".join(line + "\n" for line in lines), encoding="utf-8"
        )
    lines = ["topic\tarticles\tother\tcategory"]
    for aset in scoreable:
        general = assess.derive_view(aset, assess.GENERAL)
        articles = sum(1 for _, path in general if path.depth == 1)
        lines.append(
            f"{aset.topic_id}\t{articles}\t{len(general) - articles}\t{assess.categorize_topic(aset)}"
        )
    (out_dir / "categories.tsv").write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    excluded = len(sets) - len(scoreable)
    if excluded:
        print(f"{excluded} topics without highly relevant elements excluded", file=sys.stderr)
    print(f"wrote assessment statistics to {out_dir}")
    return 0


def _add_corpus_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", help="directory of XML documents")


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--system", choices=pipeline.SYSTEMS)
    parser.add_argument("--cre", action="store_true", default=None,
                        help="replace match lists with ranked coherent elements")
    parser.add_argument("--combo", choices=COMBO_CODES, metavar="{MpB..pME}",
                        help="coherent-element ranking heuristics (default MpE)")
    parser.add_argument("--n", choices=N_CHOICES, help="retrieved elements per article")
    parser.add_argument("--slope", type=float, help="length-normalization slope (default 0.55)")
    parser.add_argument("--max-results", dest="max_results", type=int,
                        help="global answer-list cap (default 1500)")


def _add_eval_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--assessments", help="directory of per-topic assessment files")
    parser.add_argument("--case", choices=assess.RELEVANCE_CASES)
    parser.add_argument("--category", choices=CATEGORY_CHOICES)
    parser.add_argument("--metric", choices=evaluation.METRICS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xmlir",
        description="Hybrid XML retrieval engine and evaluation harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="persist the inverted index and corpus manifest")
    _add_corpus_option(p)
    p.add_argument("--out", help="output directory (default: index)")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("run", help="execute one system over a topics file")
    _add_corpus_option(p)
    p.add_argument("--topics", help="topics file")
    _add_run_options(p)
    p.add_argument("--out", help="run file to write")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("eval", help="score a run file against assessments")
    p.add_argument("run_file", help="run file to score")
    _add_corpus_option(p)
    _add_eval_options(p)
    p.add_argument("--out", help="report file (default: stdout)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("report", help="full system/n/case/category grid of MAP values")
    _add_corpus_option(p)
    p.add_argument("--topics", help="topics file")
    p.add_argument("--assessments", help="directory of per-topic assessment files")
    p.add_argument("--combo", choices=COMBO_CODES, metavar="{MpB..pME}")
    p.add_argument("--slope", type=float)
    p.add_argument("--max-results", dest="max_results", type=int)
    p.add_argument("--metric", choices=evaluation.METRICS)
    p.add_argument("--out", help="grid file (default: stdout)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("assess-stats", help="tag distributions and topic categories")
    p.add_argument("--assessments", help="directory of per-topic assessment files")
    p.add_argument("--out", help="output directory (default: assess-stats)")
    p.set_defaults(func=cmd_assess_stats)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        defaults = _config_defaults()
        return args.func(args, defaults)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
