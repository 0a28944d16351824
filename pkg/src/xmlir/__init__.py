"""Hybrid XML retrieval: article ranking, element matching, coherent
retrieval elements, and an evaluation harness for graded assessments."""

from .assessments import (
    AssessmentEntry,
    AssessmentSet,
    categorize_topic,
    derive_view,
    element_distribution,
    highly_relevant,
    load_assessments,
    parse_assessment_file,
)
from .corpus import (
    Corpus,
    DocumentTree,
    ElementNode,
    TokenizerConfig,
    element_size,
    ingest_corpus,
    parse_document,
    resolve_path,
    subtree_terms,
)
from .cre import (
    COMBO_CODES,
    CoherentElement,
    HeuristicCombo,
    identify_cres,
    rank_cres,
)
from .evaluation import (
    QuantizedJudgment,
    build_size_map,
    inex_eval_ng,
    inex_eval_strict,
    interpolated_average_precision,
    mean_average_precision,
    quantize,
)
from .matcher import ElementQuery, MatchingElement, collection_match, match_elements
from .paths import ElementPath
from .pipeline import (
    RunEntry,
    RunResult,
    SystemConfig,
    Topic,
    execute,
    parse_topics,
    read_run_file,
    run_fulltext,
    run_hybrid,
    run_xmldb,
    translate_topic,
    write_run_file,
)
from .ranker import (
    InvertedIndex,
    RankParams,
    ScoredArticle,
    build_index,
    load_index,
    rank_articles,
    save_index,
)

__version__ = "0.1.0"
