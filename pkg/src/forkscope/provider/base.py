"""Shared provider-facing types and the interface the pipeline consumes."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Protocol

from ..analysis import build_commit
from ..model import CommitRecord, CommitSet


@dataclass(frozen=True, slots=True)
class ForkTreeEntry:
    """One repository in the fork tree, as discovered by enumeration."""

    full_name: str
    url: str
    parent_full_name: str | None
    fetched_at: datetime

    @property
    def owner(self) -> str:
        return self.full_name.split("/", 1)[0]

    @property
    def name(self) -> str:
        return self.full_name.split("/", 1)[1]


@dataclass(frozen=True, slots=True)
class RawCommit:
    """A commit as fetched: full message and true parent count retained.

    ``measured`` marks commits whose added_lines were actually counted from
    a clone; unmeasured commits carry 0 and may be measured by a later run.
    """

    sha: str
    timestamp: datetime
    message: str
    parents: int
    url: str
    added_lines: int = 0
    measured: bool = False

    def to_record(self) -> CommitRecord:
        return build_commit(
            sha=self.sha,
            timestamp=self.timestamp,
            message=self.message,
            parents=self.parents,
            url=self.url,
            added_lines=self.added_lines,
        )


@dataclass(slots=True)
class RepoCommits:
    """All commits of one repository (every branch; PR heads for the origin)."""

    entry: ForkTreeEntry
    ref_heads: dict[str, str]
    commits: list[RawCommit]
    clone_url: str = ""

    def records(self) -> list[CommitRecord]:
        return [c.to_record() for c in self.commits]

    def commit_set(self) -> CommitSet:
        return CommitSet(self.records())


@dataclass(slots=True)
class FetchResult:
    repos: dict[str, RepoCommits] = field(default_factory=dict)
    failed: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


class Provider(Protocol):
    """What the pipeline needs from a forge: discovery, commits, sizes."""

    def resolve_origin(self, full_name: str) -> ForkTreeEntry: ...

    def enumerate_forks(
        self, origin: ForkTreeEntry
    ) -> tuple[list[ForkTreeEntry], list[str]]: ...

    def fetch_commit_sets(
        self, origin: ForkTreeEntry, forks: list[ForkTreeEntry]
    ) -> FetchResult: ...

    def measure_change_sizes(
        self, repo: RepoCommits, commits: list[CommitRecord]
    ) -> tuple[list[CommitRecord], list[str]]: ...
