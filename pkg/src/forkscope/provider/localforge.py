"""Forge provider over plain local git repositories.

A manifest names the origin, each repository's working directory, and the
fork parentage; commits come straight from git. Used for scripted fixtures
and for priming a cache that offline runs can then replay. Fork detection
on a real forge needs the forge's metadata, hence the explicit manifest.

Manifest shape::

    {
      "origin": "alice/project",
      "url_base": "https://forge.example",
      "repos": [
        {"full_name": "alice/project", "path": "/work/origin", "parent": null},
        {"full_name": "bob/project", "path": "/work/bob", "parent": "alice/project"}
      ]
    }
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable

from ..errors import OriginNotFound
from ..model import CommitRecord
from .base import FetchResult, ForkTreeEntry, RepoCommits
from .cache import RepoCache
from .config import ProviderConfig
from .github import measure_with_cache
from .gitops import list_ref_heads, log_commits


def _utcnow() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


class LocalForge:
    def __init__(
        self,
        manifest: dict[str, Any] | str | Path,
        config: ProviderConfig,
        now_fn: Callable[[], datetime] = _utcnow,
    ):
        if not isinstance(manifest, dict):
            manifest = json.loads(Path(manifest).read_text(encoding="utf-8"))
        self.config = config
        self.cache = RepoCache(config.cache_dir)
        self.origin_name: str = manifest["origin"]
        self.url_base: str = manifest.get("url_base", "https://forge.example").rstrip("/")
        self._now = now_fn
        self._paths: dict[str, Path] = {}
        self._parents: dict[str, str | None] = {}
        for repo in manifest["repos"]:
            self._paths[repo["full_name"]] = Path(repo["path"])
            self._parents[repo["full_name"]] = repo.get("parent")

    def repo_url(self, full_name: str) -> str:
        return f"{self.url_base}/{full_name}"

    def _entry(self, full_name: str) -> ForkTreeEntry:
        return ForkTreeEntry(
            full_name=full_name,
            url=self.repo_url(full_name),
            parent_full_name=self._parents.get(full_name),
            fetched_at=self._now(),
        )

    def resolve_origin(self, full_name: str) -> ForkTreeEntry:
        if full_name != self.origin_name or full_name not in self._paths:
            raise OriginNotFound(full_name)
        return self._entry(full_name)

    def enumerate_forks(
        self, origin: ForkTreeEntry
    ) -> tuple[list[ForkTreeEntry], list[str]]:
        """Manifest parent links walked breadth-first, forks of forks included."""
        entries: list[ForkTreeEntry] = []
        level = [origin.full_name]
        while level:
            next_level = sorted(
                name for name, parent in self._parents.items() if parent in level
            )
            entries.extend(self._entry(name) for name in next_level)
            level = next_level
        self.cache.write_forks(origin, entries, [])
        return entries, []

    def fetch_commit_sets(
        self, origin: ForkTreeEntry, forks: list[ForkTreeEntry]
    ) -> FetchResult:
        result = FetchResult()
        for entry in (origin, *forks):
            path = self._paths[entry.full_name]
            heads = list_ref_heads(
                path, include_pull_refs=entry.full_name == origin.full_name
            )
            commits = log_commits(
                path,
                sorted(set(heads.values())),
                lambda sha, fn=entry.full_name: f"{self.repo_url(fn)}/commit/{sha}",
            )
            repo = RepoCommits(
                entry=entry,
                ref_heads=heads,
                commits=sorted(commits, key=lambda c: (c.timestamp, c.sha)),
                clone_url=str(path),
            )
            self.cache.write_repo(repo)
            result.repos[entry.full_name] = repo
        return result

    def measure_change_sizes(
        self, repo: RepoCommits, commits: list[CommitRecord]
    ) -> tuple[list[CommitRecord], list[str]]:
        return measure_with_cache(self.cache, self.config, repo, commits, offline=False)
