"""End-to-end orchestration: enumerate, fetch, rank, select, classify, measure.

The pipeline is a sequential drive over a (possibly concurrent) provider;
given identical cache contents the emitted artifact is byte-identical
across runs when generated_at is pinned.
"""

from __future__ import annotations

import logging
import os
import re
import tempfile
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from urllib.parse import urlparse

from .analysis import (
    RankedRepo,
    divergent_count,
    exclude_merges,
    rank_forks,
    select_forks,
    unique_commits,
    window_commits,
)
from .artifact import AnalysisArtifact, serialize_artifact
from .errors import PartialFetch, ProviderError
from .model import CommitSet, ForkUniverse, RepoAnalysis
from .provider.base import Provider
from .provider.config import ProviderConfig
from .provider.github import GitHubProvider
from .provider.offline import OfflineProvider

logger = logging.getLogger(__name__)

_OWNER_REPO_RE = re.compile(r"^[^/\s]+/[^/\s]+$")


def parse_origin_ref(ref: str) -> str:
    """Accept either "owner/name" or a repository URL; return "owner/name"."""
    candidate = ref.strip()
    if "://" in candidate:
        path = urlparse(candidate).path.strip("/")
        parts = path.split("/")
        if len(parts) < 2 or not parts[0] or not parts[1]:
            raise ProviderError(f"cannot extract owner/name from URL: {ref}")
        candidate = f"{parts[0]}/{parts[1]}"
    candidate = candidate.removesuffix(".git")
    if not _OWNER_REPO_RE.match(candidate):
        raise ProviderError(f"origin must be owner/name or a repository URL: {ref}")
    return candidate


@dataclass(slots=True)
class PipelineStats:
    forks_enumerated: int = 0
    forks_with_unique_commits: int = 0
    repos_in_artifact: int = 0
    commits_displayed: int = 0


@dataclass(slots=True)
class PipelineResult:
    artifact: AnalysisArtifact
    text: str
    stats: PipelineStats
    out_path: Path | None


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def analyze(
    origin_ref: str,
    config: ProviderConfig,
    top_k: int = 10,
    since: datetime | None = None,
    offline: bool = False,
    allow_partial: bool = False,
    out_path: Path | None = None,
    generated_at: datetime | None = None,
    provider: Provider | None = None,
) -> PipelineResult:
    origin_name = parse_origin_ref(origin_ref)
    if provider is None:
        provider = OfflineProvider(config) if offline else GitHubProvider(config)

    origin_entry = provider.resolve_origin(origin_name)
    fork_entries, warnings = provider.enumerate_forks(origin_entry)
    logger.info("%s: %d forks enumerated", origin_entry.full_name, len(fork_entries))

    fetch = provider.fetch_commit_sets(origin_entry, fork_entries)
    if fetch.failed and not allow_partial:
        raise PartialFetch([name for name, _ in fetch.failed])
    warnings = [*warnings, *fetch.warnings]

    origin_repo = fetch.repos[origin_entry.full_name]
    origin_set = origin_repo.commit_set()

    candidates: list[RankedRepo] = []
    for entry in fork_entries:
        repo = fetch.repos.get(entry.full_name)
        if repo is None:
            continue  # fetch failed; already warned, --allow-partial given
        commits = repo.commit_set()
        candidates.append(
            RankedRepo(
                owner=entry.owner,
                name=entry.name,
                full_name=entry.full_name,
                url=entry.url,
                divergent_count=divergent_count(commits, origin_set),
                commits=commits,
                unique=CommitSet(),
            )
        )

    ranked = rank_forks(candidates)
    uniques = unique_commits([origin_set, *(fork.commits for fork in ranked)])
    origin_ranked = RankedRepo(
        owner=origin_entry.owner,
        name=origin_entry.name,
        full_name=origin_entry.full_name,
        url=origin_entry.url,
        divergent_count=0,
        commits=origin_set,
        unique=uniques[0],
    )
    ranked = [replace(fork, unique=u) for fork, u in zip(ranked, uniques[1:])]

    selection = select_forks(origin_ranked, ranked, top_k=top_k)

    rows: list[RepoAnalysis] = []
    measure_warnings: list[str] = []
    for repo in selection:
        displayed = window_commits(exclude_merges(repo.unique.records()), since)
        measured, mwarn = provider.measure_change_sizes(
            fetch.repos[repo.full_name], displayed
        )
        measure_warnings.extend(mwarn)
        rows.append(
            RepoAnalysis.build(
                owner=repo.owner,
                name=repo.name,
                url=repo.url,
                divergent_count=repo.divergent_count,
                commits=measured,
            )
        )

    artifact = AnalysisArtifact(
        universe=ForkUniverse(origin=rows[0], forks=tuple(rows[1:])),
        generated_at=generated_at
        or datetime.now(timezone.utc).replace(microsecond=0),
        warnings=tuple([*warnings, *measure_warnings]),
    )
    text = serialize_artifact(artifact)
    if out_path is not None:
        _write_atomic(Path(out_path), text)

    stats = PipelineStats(
        forks_enumerated=len(fork_entries),
        forks_with_unique_commits=sum(1 for f in ranked if len(f.unique) > 0),
        repos_in_artifact=len(rows),
        commits_displayed=sum(len(r.unique_commits) for r in rows),
    )
    return PipelineResult(
        artifact=artifact, text=text, stats=stats, out_path=out_path
    )
