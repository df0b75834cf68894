"""Pairwise readability toolkit.

Turns readability corpora into ordered "which text is harder?" pair
instances, renders them into nine text-to-text formats, scores
predictions (neural or formula-based) into pairwise accuracy with
cross-domain matrices and label-distance breakdowns.
"""

__version__ = "0.1.0"

from .adapters import ingest
from .evaluation import (
    EvalReport,
    PredictionRecord,
    best_epoch,
    matrix,
    merge_reports,
    score,
)
from .formulas import FleschKincaidRanker, TextStats, analyze, fkgl, grade_level, rank_pair
from .permute import PairwisePermuter, permute, permute_distinct, permute_parallel
from .prompts import (
    FormatKind,
    FormatSpec,
    PromptRenderer,
    RenderedInstance,
    builtin_formats,
    format_by_kind,
    parse_output,
    render,
)
from .records import (
    DataError,
    DistinctCorpus,
    Harder,
    PairInstance,
    ParallelCorpus,
    ReadingLevel,
    Slug,
    TextRecord,
    normalize_text,
)
from .splitting import train_dev_test_split

__all__ = [
    "DataError",
    "DistinctCorpus",
    "EvalReport",
    "FleschKincaidRanker",
    "FormatKind",
    "FormatSpec",
    "Harder",
    "PairInstance",
    "PairwisePermuter",
    "ParallelCorpus",
    "PredictionRecord",
    "PromptRenderer",
    "ReadingLevel",
    "RenderedInstance",
    "Slug",
    "TextRecord",
    "TextStats",
    "analyze",
    "best_epoch",
    "builtin_formats",
    "fkgl",
    "format_by_kind",
    "grade_level",
    "ingest",
    "matrix",
    "merge_reports",
    "normalize_text",
    "parse_output",
    "permute",
    "permute_distinct",
    "permute_parallel",
    "rank_pair",
    "render",
    "score",
    "train_dev_test_split",
]
