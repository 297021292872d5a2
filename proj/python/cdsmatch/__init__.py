"""Sampled exact string matching: character-distance index and OTS baseline."""

from ._core import (
    CdsIndex,
    Corpus,
    FormatError,
    OtsIndex,
    PivotStats,
    SearchOutcome,
    TextMismatchError,
    build_cds_index,
    build_cds_index_pivots,
    build_ots_index,
    compute_distance_sampling,
    distance_stats,
    distances_fast_path,
    distances_from_sample,
    horspool_search,
    kmp_search,
    load_corpus,
    load_index,
    naive_search,
    ots_search,
    rank_characters,
    save_index,
    search,
)

__all__ = [
    "CdsIndex",
    "Corpus",
    "FormatError",
    "OtsIndex",
    "PivotStats",
    "SearchOutcome",
    "TextMismatchError",
    "build_cds_index",
    "build_cds_index_pivots",
    "build_ots_index",
    "compute_distance_sampling",
    "distance_stats",
    "distances_fast_path",
    "distances_from_sample",
    "horspool_search",
    "kmp_search",
    "load_corpus",
    "load_index",
    "naive_search",
    "ots_search",
    "rank_characters",
    "save_index",
    "search",
]
