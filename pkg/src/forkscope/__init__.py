"""forkscope: find active hard forks and the bug fixes that never made it upstream."""

from .analysis import (
    bubble_radius,
    classify_bugfix,
    divergent_count,
    exclude_merges,
    select_forks,
    unique_commits,
)
from .artifact import AnalysisArtifact, parse_artifact, serialize_artifact
from .model import CommitRecord, CommitSet, ForkUniverse, RepoAnalysis

__version__ = "0.1.0"

__all__ = [
    "AnalysisArtifact",
    "CommitRecord",
    "CommitSet",
    "ForkUniverse",
    "RepoAnalysis",
    "bubble_radius",
    "classify_bugfix",
    "divergent_count",
    "exclude_merges",
    "parse_artifact",
    "select_forks",
    "serialize_artifact",
    "unique_commits",
    "__version__",
]
