"""Profile-based authorship attribution for short micro-blogging texts."""

__version__ = "0.1.0"

from .attribution import AuthorProfile, FeatureKind, ProfileConfig, attribute, build_profile, build_query
from .corpus import Corpus, load_corpus, preprocess, split_corpus
from .evaluation import EvaluationReport, SweepConfig, render_report, run_sweep
from .ngram import NGramVector, extract_char_ngrams, extract_word_ngrams, merge_counts, tokenize
from .similarity import Metric, align, distance, overlap_similarity
from .stylometry import idiosyncratic_features, lexical_features, normalize_features, structural_features
from .synthgen import StyleParams, generate_corpus

__all__ = [
    "align",
    "attribute",
    "AuthorProfile",
    "build_profile",
    "build_query",
    "Corpus",
    "distance",
    "EvaluationReport",
    "extract_char_ngrams",
    "extract_word_ngrams",
    "FeatureKind",
    "generate_corpus",
    "idiosyncratic_features",
    "lexical_features",
    "load_corpus",
    "merge_counts",
    "Metric",
    "NGramVector",
    "normalize_features",
    "overlap_similarity",
    "preprocess",
    "ProfileConfig",
    "render_report",
    "run_sweep",
    "split_corpus",
    "structural_features",
    "StyleParams",
    "SweepConfig",
    "tokenize",
]
