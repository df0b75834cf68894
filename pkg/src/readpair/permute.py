"""Ordered pairwise permutation of corpora.

Every ordered pair of distinct texts becomes one instance, so each
unordered pair appears twice, once per direction.  Pairs whose two texts
share a reading rank carry no gold answer and are dropped.  Parallel
corpora are permuted within slugs only; distinct corpora corpus-wide.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .records import DistinctCorpus, PairInstance, ParallelCorpus, TextRecord


def _ordered_pairs(
    records: tuple[TextRecord, ...], slug_id: str | None
) -> list[PairInstance]:
    # index-lexicographic order: (0,1), (0,2), ..., (1,0), (1,2), ...
    out = []
    for i, first in enumerate(records):
        for j, second in enumerate(records):
            if i == j or first.level.rank == second.level.rank:
                continue
            out.append(PairInstance.from_records(first, second, slug_id=slug_id))
    return out


def permute_parallel(corpus: ParallelCorpus) -> list[PairInstance]:
    """All ordered same-slug pairs of distinct rank, in slug order.

    A slug of size j yields j*(j-1) instances when all its ranks differ;
    slugs of size < 2 yield none.  Pairs never cross slug boundaries.
    """
    out: list[PairInstance] = []
    for slug in corpus.slugs:
        out.extend(_ordered_pairs(slug.members, slug.slug_id))
    return out


def permute_distinct(corpus: DistinctCorpus) -> list[PairInstance]:
    """All ordered pairs of distinct rank across the whole corpus.

    With N records of which n_l share rank l, the output size is
    N*(N-1) - sum_l n_l*(n_l-1).
    """
    return _ordered_pairs(corpus.records, None)


def permute(corpus: ParallelCorpus | DistinctCorpus) -> list[PairInstance]:
    """Dispatch on corpus kind."""
    if isinstance(corpus, ParallelCorpus):
        return permute_parallel(corpus)
    return permute_distinct(corpus)


class PairwisePermuter(BaseEstimator, TransformerMixin):
    """Estimator-style wrapper so permutation composes in pipelines.

    Stateless: ``fit`` is a no-op and ``transform`` accepts either corpus
    kind and returns the instance list.
    """

    def fit(self, X, y=None):
        return self

    def transform(self, X: ParallelCorpus | DistinctCorpus) -> list[PairInstance]:
        return permute(X)
