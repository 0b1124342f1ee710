"""Cache-only provider: replays a prior run without any network access."""

from __future__ import annotations

from ..errors import OfflineCacheMiss
from ..model import CommitRecord
from .base import FetchResult, ForkTreeEntry, RepoCommits
from .cache import RepoCache
from .config import ProviderConfig
from .github import measure_with_cache


class OfflineProvider:
    def __init__(self, config: ProviderConfig):
        self.config = config
        self.cache = RepoCache(config.cache_dir)

    def resolve_origin(self, full_name: str) -> ForkTreeEntry:
        cached = self.cache.read_forks(full_name)
        if cached is None:
            raise OfflineCacheMiss(f"fork listing of {full_name}")
        origin, _, _ = cached
        return origin

    def enumerate_forks(
        self, origin: ForkTreeEntry
    ) -> tuple[list[ForkTreeEntry], list[str]]:
        cached = self.cache.read_forks(origin.full_name)
        if cached is None:
            raise OfflineCacheMiss(f"fork listing of {origin.full_name}")
        _, forks, warnings = cached
        return forks, warnings

    def fetch_commit_sets(
        self, origin: ForkTreeEntry, forks: list[ForkTreeEntry]
    ) -> FetchResult:
        result = FetchResult()
        for entry in (origin, *forks):
            repo = self.cache.read_repo(entry.full_name)
            if repo is None:
                raise OfflineCacheMiss(f"commits of {entry.full_name}")
            result.repos[entry.full_name] = repo
        return result

    def measure_change_sizes(
        self, repo: RepoCommits, commits: list[CommitRecord]
    ) -> tuple[list[CommitRecord], list[str]]:
        return measure_with_cache(self.cache, self.config, repo, commits, offline=True)
