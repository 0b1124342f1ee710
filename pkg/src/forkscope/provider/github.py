"""GitHub-style REST forge client and provider.

Enumerates the full fork tree (forks of forks included), downloads commit
ids and messages for every branch (plus pull-request head refs on the
origin, so PR contents never count as fork divergence), and measures
change sizes from local clones. Every fetch lands in the on-disk cache,
enabling offline replays.
"""

from __future__ import annotations

import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from datetime import datetime, timezone
from typing import Any, Callable

import requests

from ..errors import OriginNotFound, ProviderError, RateLimited
from ..model import CommitRecord, parse_instant
from .base import FetchResult, ForkTreeEntry, RawCommit, RepoCommits
from .cache import RepoCache
from .config import PAGE_SIZE, ProviderConfig
from .gitops import ensure_clone, measure_records


class _NotFound(ProviderError):
    """404 for a repository that is not the requested origin."""


def _utcnow() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


class GitHubForge:
    """Minimal REST wrapper: auth header, pagination, retries, rate limits."""

    def __init__(
        self,
        config: ProviderConfig,
        session: Any | None = None,
        sleeper: Callable[[float], None] = time.sleep,
        clock: Callable[[], float] = time.time,
    ):
        self._config = config
        self._session = session
        self._local = threading.local()
        self._sleeper = sleeper
        self._clock = clock
        self._token = os.environ.get(config.auth_token_env)

    def _get_session(self) -> Any:
        if self._session is not None:
            return self._session
        # requests.Session is not thread-safe; keep one per worker thread.
        if not hasattr(self._local, "session"):
            self._local.session = requests.Session()
        return self._local.session

    def _headers(self) -> dict[str, str]:
        headers = {"Accept": "application/vnd.github+json"}
        if self._token:
            headers["Authorization"] = f"Bearer {self._token}"
        return headers

    def _request(self, url: str, params: dict[str, Any] | None) -> Any:
        policy = self._config.retry
        last_reset: datetime | None = None
        for attempt in range(policy.max_attempts):
            response = self._get_session().get(
                url, headers=self._headers(), params=params, timeout=30
            )
            status = response.status_code
            if status == 200:
                return response
            if status == 404:
                raise _NotFound(f"not found: {url}")
            if status in (403, 429) and response.headers.get("X-RateLimit-Remaining") == "0":
                reset = int(response.headers.get("X-RateLimit-Reset", "0"))
                last_reset = datetime.fromtimestamp(reset, tz=timezone.utc)
                wait_s = reset - self._clock()
                if wait_s > policy.max_rate_limit_wait or attempt + 1 >= policy.max_attempts:
                    raise RateLimited(last_reset)
                self._sleeper(max(wait_s, 0.0) + 1.0)
                continue
            if 500 <= status < 600 and attempt + 1 < policy.max_attempts:
                self._sleeper(policy.backoff_base * 2**attempt)
                continue
            raise ProviderError(f"GET {url} failed with HTTP {status}")
        raise RateLimited(last_reset) if last_reset else ProviderError(f"GET {url}: retries exhausted")

    def get_json(self, path: str, params: dict[str, Any] | None = None) -> Any:
        url = self._config.api_base_url.rstrip("/") + path
        return self._request(url, params).json()

    def paginate(self, path: str, params: dict[str, Any] | None = None) -> list[Any]:
        """Collect every page of a list endpoint, 100 items per page.

        Continuation follows the Link header's rel="next" when the server
        sends one, falling back to a full-page heuristic otherwise.
        """
        url = self._config.api_base_url.rstrip("/") + path
        base_params = {"per_page": PAGE_SIZE, **(params or {})}
        items: list[Any] = []
        page_number = 1
        while True:
            response = self._request(url, {**base_params, "page": page_number})
            page = response.json()
            items.extend(page)
            link_header = response.headers.get("Link", "")
            if link_header:
                if 'rel="next"' not in link_header:
                    break
            elif len(page) < PAGE_SIZE:
                break
            page_number += 1
        return items

    # -- endpoints ---------------------------------------------------------

    def get_repo(self, full_name: str) -> dict[str, Any]:
        return self.get_json(f"/repos/{full_name}")

    def list_forks(self, full_name: str) -> list[dict[str, Any]]:
        return self.paginate(f"/repos/{full_name}/forks")

    def list_branches(self, full_name: str) -> list[dict[str, Any]]:
        return self.paginate(f"/repos/{full_name}/branches")

    def list_commits(self, full_name: str, sha: str) -> list[dict[str, Any]]:
        return self.paginate(f"/repos/{full_name}/commits", {"sha": sha})

    def list_pulls(self, full_name: str) -> list[dict[str, Any]]:
        return self.paginate(f"/repos/{full_name}/pulls", {"state": "all"})


class GitHubProvider:
    """Provider backed by a GitHub-style REST forge plus the local cache."""

    def __init__(
        self,
        config: ProviderConfig,
        session: Any | None = None,
        sleeper: Callable[[float], None] = time.sleep,
        clock: Callable[[], float] = time.time,
        now_fn: Callable[[], datetime] = _utcnow,
    ):
        self.config = config
        self.forge = GitHubForge(config, session=session, sleeper=sleeper, clock=clock)
        self.cache = RepoCache(config.cache_dir)
        self._now = now_fn
        self._fork_counts: dict[str, int] = {}

    # -- enumeration --------------------------------------------------------

    def resolve_origin(self, full_name: str) -> ForkTreeEntry:
        try:
            info = self.forge.get_repo(full_name)
        except _NotFound:
            raise OriginNotFound(full_name) from None
        self._fork_counts[info["full_name"]] = info.get("forks", 0)
        return ForkTreeEntry(
            full_name=info["full_name"],
            url=info["html_url"],
            parent_full_name=None,
            fetched_at=self._now(),
        )

    def enumerate_forks(
        self, origin: ForkTreeEntry
    ) -> tuple[list[ForkTreeEntry], list[str]]:
        """Breadth-first walk of the fork tree, forks of forks included.

        Order is deterministic: by tree level, then full_name. Repositories
        whose own fork listing has vanished are skipped with a warning.
        """
        warnings: list[str] = []
        entries: list[ForkTreeEntry] = []
        seen = {origin.full_name}
        level: list[str] = [origin.full_name]
        while level:
            next_level: list[ForkTreeEntry] = []
            for parent_name in level:
                if self._fork_counts.get(parent_name, 1) == 0:
                    continue
                try:
                    children = self.forge.list_forks(parent_name)
                except _NotFound:
                    warnings.append(f"{parent_name}: fork listing unavailable; skipped")
                    continue
                for child in children:
                    child_name = child["full_name"]
                    if child_name in seen:
                        continue
                    seen.add(child_name)
                    self._fork_counts[child_name] = child.get("forks", 0)
                    next_level.append(
                        ForkTreeEntry(
                            full_name=child_name,
                            url=child["html_url"],
                            parent_full_name=parent_name,
                            fetched_at=self._now(),
                        )
                    )
            next_level.sort(key=lambda e: e.full_name)
            entries.extend(next_level)
            level = [e.full_name for e in next_level]
        self.cache.write_forks(origin, entries, warnings)
        return entries, warnings

    # -- commit download ----------------------------------------------------

    def _current_ref_heads(self, entry: ForkTreeEntry, with_pulls: bool) -> dict[str, str]:
        heads: dict[str, str] = {}
        for branch in self.forge.list_branches(entry.full_name):
            heads[f"heads/{branch['name']}"] = branch["commit"]["sha"]
        if with_pulls:
            for pull in self.forge.list_pulls(entry.full_name):
                heads[f"pull/{pull['number']}/head"] = pull["head"]["sha"]
        return heads

    def _fetch_repo(
        self, entry: ForkTreeEntry, with_pulls: bool
    ) -> tuple[RepoCommits, list[str]]:
        heads = self._current_ref_heads(entry, with_pulls)
        cached = self.cache.read_repo(entry.full_name)
        if cached is not None and cached.ref_heads == heads:
            return cached, []

        warnings: list[str] = []
        by_sha: dict[str, RawCommit] = {}
        for ref in sorted(heads):
            head_sha = heads[ref]
            if head_sha in by_sha:
                continue  # already reachable from a previously walked ref
            try:
                items = self.forge.list_commits(entry.full_name, head_sha)
            except _NotFound:
                if not ref.startswith("pull/"):
                    raise
                # PR heads can point at commits whose source fork is gone.
                warnings.append(
                    f"{entry.full_name}: {ref} is unreachable; skipped"
                )
                continue
            for item in items:
                sha = item["sha"]
                if sha in by_sha:
                    continue
                commit = item["commit"]
                by_sha[sha] = RawCommit(
                    sha=sha,
                    timestamp=parse_instant(commit["committer"]["date"]),
                    message=commit["message"],
                    parents=len(item.get("parents", [])),
                    url=item.get("html_url", f"{entry.url}/commit/{sha}"),
                )
        repo = RepoCommits(
            entry=replace(entry, fetched_at=self._now()),
            ref_heads=heads,
            commits=sorted(by_sha.values(), key=lambda c: (c.timestamp, c.sha)),
            clone_url=f"{entry.url}.git",
        )
        self.cache.write_repo(repo)
        return repo, warnings

    def fetch_commit_sets(
        self, origin: ForkTreeEntry, forks: list[ForkTreeEntry]
    ) -> FetchResult:
        """Download commit sets; origin first, then forks concurrently.

        Fork-level failures are collected (PARTIAL_FETCH is the caller's
        decision); a vanished origin or an exhausted rate limit aborts.
        """
        result = FetchResult()
        try:
            repo, warnings = self._fetch_repo(origin, with_pulls=True)
        except _NotFound:
            raise OriginNotFound(origin.full_name) from None
        result.repos[origin.full_name] = repo
        result.warnings.extend(warnings)

        def fetch_one(entry: ForkTreeEntry) -> RepoCommits:
            repo, fork_warnings = self._fetch_repo(entry, with_pulls=False)
            assert not fork_warnings  # only PR refs produce fetch warnings
            return repo

        if forks:
            with ThreadPoolExecutor(
                max_workers=self.config.max_parallel_fetches
            ) as pool:
                futures = {fork.full_name: pool.submit(fetch_one, fork) for fork in forks}
                for fork in forks:
                    try:
                        result.repos[fork.full_name] = futures[fork.full_name].result()
                    except RateLimited:
                        pool.shutdown(cancel_futures=True)
                        raise
                    except (ProviderError, KeyError, ValueError) as exc:
                        result.failed.append((fork.full_name, str(exc)))
        for full_name, reason in result.failed:
            result.warnings.append(f"{full_name}: fetch failed ({reason})")
        return result

    # -- change sizes ---------------------------------------------------------

    def measure_change_sizes(
        self, repo: RepoCommits, commits: list[CommitRecord]
    ) -> tuple[list[CommitRecord], list[str]]:
        return measure_with_cache(
            self.cache, self.config, repo, commits, offline=False
        )


def measure_with_cache(
    cache: RepoCache,
    config: ProviderConfig,
    repo: RepoCommits,
    commits: list[CommitRecord],
    offline: bool,
) -> tuple[list[CommitRecord], list[str]]:
    """Count added lines per commit from a clone, reusing prior measurements.

    Commits already marked measured keep their cached sizes without touching
    the clone. On clone failure the run continues: affected commits keep
    added_lines = 0 and a warning lands in the artifact.
    """
    raw_by_sha = {c.sha: c for c in repo.commits}
    targets = [
        record
        for record in commits
        if not record.is_merge and not raw_by_sha[record.sha].measured
    ]
    if not targets:
        return list(commits), []

    full_name = repo.entry.full_name
    clone = cache.clone_dir(full_name)
    source = repo.clone_url
    remote = "://" in source and not source.startswith("file://")
    if not (clone / ".git").exists():
        if not source:
            return list(commits), [
                f"{full_name}: no clone source recorded; commit sizes unmeasured"
            ]
        if offline and remote:
            return list(commits), [
                f"{full_name}: no local clone in offline mode; commit sizes unmeasured"
            ]
        try:
            has_pull_refs = any(ref.startswith("pull/") for ref in repo.ref_heads)
            ensure_clone(source, clone, fetch_pull_refs=has_pull_refs)
        except ProviderError as exc:
            return list(commits), [
                f"{full_name}: clone failed; commit sizes unmeasured ({exc})"
            ]

    sizes, warnings = measure_records(
        clone, full_name, targets, config.source_file_filter
    )
    cache.update_sizes(full_name, sizes)
    updated = [
        replace(record, added_lines=sizes.get(record.sha, record.added_lines))
        for record in commits
    ]
    return updated, warnings
