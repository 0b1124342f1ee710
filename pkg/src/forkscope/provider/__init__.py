"""Forge access: fork enumeration, commit download, caching, change sizes."""

from .base import FetchResult, ForkTreeEntry, Provider, RawCommit, RepoCommits
from .cache import RepoCache
from .config import ProviderConfig, RetryPolicy
from .github import GitHubForge, GitHubProvider
from .localforge import LocalForge
from .offline import OfflineProvider

__all__ = [
    "FetchResult",
    "ForkTreeEntry",
    "GitHubForge",
    "GitHubProvider",
    "LocalForge",
    "OfflineProvider",
    "Provider",
    "ProviderConfig",
    "RawCommit",
    "RepoCache",
    "RepoCommits",
    "RetryPolicy",
]
