"""Domain types: commits, per-repository analyses, and the fork universe.

All types are immutable; consumers may share them freely across threads.
Commit identity is the 40-hex sha, and every cross-repository comparison
in this package happens by sha only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Iterator

SHA_RE = re.compile(r"^[0-9a-f]{40}$")

EXCERPT_LIMIT = 200


def utc_instant(ts: datetime) -> datetime:
    """Normalize a timezone-aware timestamp to UTC at second precision."""
    if ts.tzinfo is None:
        raise ValueError("timestamp must be timezone-aware")
    return ts.astimezone(timezone.utc).replace(microsecond=0)


def format_instant(ts: datetime) -> str:
    """Render an instant as ISO-8601 with a trailing Z (second precision)."""
    return utc_instant(ts).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_instant(text: str) -> datetime:
    """Parse an ISO-8601 instant; accepts a Z suffix on Python 3.10."""
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    return utc_instant(datetime.fromisoformat(text))


@dataclass(frozen=True, slots=True)
class CommitRecord:
    """One commit: identity, when it landed, what it says, how big it is."""

    sha: str
    timestamp: datetime
    subject: str
    message_excerpt: str
    added_lines: int = 0
    is_merge: bool = False
    is_bugfix: bool = False
    url: str = ""

    def __post_init__(self) -> None:
        if not SHA_RE.match(self.sha):
            raise ValueError(f"invalid commit sha: {self.sha!r}")
        if self.added_lines < 0:
            raise ValueError(f"added_lines must be >= 0, got {self.added_lines}")
        if len(self.message_excerpt) > EXCERPT_LIMIT:
            raise ValueError(f"message_excerpt longer than {EXCERPT_LIMIT} characters")
        object.__setattr__(self, "timestamp", utc_instant(self.timestamp))

    def sort_key(self) -> tuple[datetime, str]:
        return (self.timestamp, self.sha)


def sort_commits(commits: Iterable[CommitRecord]) -> tuple[CommitRecord, ...]:
    """Ascending (timestamp, sha) order used everywhere commits are listed."""
    return tuple(sorted(commits, key=CommitRecord.sort_key))


class CommitSet:
    """A set of commits keyed by sha, with an optional record per sha.

    Membership and all set algebra are exact-match on sha. Sets built from
    bare shas (no records) support the algebra but yield no records.
    """

    __slots__ = ("_entries",)

    def __init__(self, records: Iterable[CommitRecord] = ()):
        self._entries: dict[str, CommitRecord | None] = {}
        for record in records:
            self._entries.setdefault(record.sha, record)

    @classmethod
    def from_shas(cls, shas: Iterable[str]) -> CommitSet:
        commit_set = cls()
        for sha in shas:
            commit_set._entries.setdefault(sha, None)
        return commit_set

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, sha: str) -> bool:
        return sha in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CommitSet):
            return NotImplemented
        return self._entries.keys() == other._entries.keys()

    def __repr__(self) -> str:
        return f"CommitSet({len(self._entries)} commits)"

    def shas(self) -> set[str]:
        return set(self._entries)

    def get(self, sha: str) -> CommitRecord | None:
        return self._entries.get(sha)

    def records(self) -> tuple[CommitRecord, ...]:
        """All commits that carry a record, in (timestamp, sha) order."""
        return sort_commits(r for r in self._entries.values() if r is not None)

    def difference(self, *others: CommitSet) -> CommitSet:
        result = CommitSet()
        result._entries = {
            sha: record
            for sha, record in self._entries.items()
            if not any(sha in other for other in others)
        }
        return result


@dataclass(frozen=True, slots=True)
class RepoAnalysis:
    """One repository with its divergence count and displayable commits.

    ``unique_commits`` holds the commits charged to this repository after
    merge exclusion and any display window, ascending by (timestamp, sha).
    """

    owner: str
    name: str
    full_name: str
    url: str
    divergent_count: int
    unique_commits: tuple[CommitRecord, ...]
    bugfix_count: int

    def __post_init__(self) -> None:
        if self.full_name != f"{self.owner}/{self.name}":
            raise ValueError(
                f"full_name {self.full_name!r} != {self.owner!r}/{self.name!r}"
            )
        if self.divergent_count < 0:
            raise ValueError("divergent_count must be >= 0")
        expected_bugfixes = sum(1 for c in self.unique_commits if c.is_bugfix)
        if self.bugfix_count != expected_bugfixes:
            raise ValueError(
                f"bugfix_count {self.bugfix_count} != {expected_bugfixes} flagged commits"
            )
        if any(c.is_merge for c in self.unique_commits):
            raise ValueError("unique_commits must not contain merge commits")
        if list(self.unique_commits) != list(sort_commits(self.unique_commits)):
            raise ValueError("unique_commits must be sorted by (timestamp, sha)")

    @classmethod
    def build(
        cls,
        owner: str,
        name: str,
        url: str,
        divergent_count: int,
        commits: Iterable[CommitRecord],
    ) -> RepoAnalysis:
        """Construct with sorting and bug-fix counting applied."""
        ordered = sort_commits(commits)
        return cls(
            owner=owner,
            name=name,
            full_name=f"{owner}/{name}",
            url=url,
            divergent_count=divergent_count,
            unique_commits=ordered,
            bugfix_count=sum(1 for c in ordered if c.is_bugfix),
        )

    def shas(self) -> set[str]:
        return {c.sha for c in self.unique_commits}


@dataclass(frozen=True, slots=True)
class ForkUniverse:
    """Origin repository plus its selected forks, most divergent first.

    Fork rows may legitimately carry zero displayable commits (e.g. every
    unique commit was a merge, or a display window filtered them all);
    selection happens on the raw unique set before those filters.
    """

    origin: RepoAnalysis
    forks: tuple[RepoAnalysis, ...] = field(default=())

    def __post_init__(self) -> None:
        order_keys = [(-f.divergent_count, f.full_name) for f in self.forks]
        if order_keys != sorted(order_keys):
            raise ValueError("forks must be ordered by descending divergent_count, then full_name")
        for fork in self.forks:
            if fork.divergent_count < len(fork.unique_commits):
                raise ValueError(
                    f"{fork.full_name}: divergent_count {fork.divergent_count} "
                    f"< {len(fork.unique_commits)} unique commits"
                )
        seen: set[str] = set()
        for repo in self.repos():
            shas = repo.shas()
            overlap = seen & shas
            if overlap:
                raise ValueError(
                    f"{repo.full_name}: commits charged to more than one repository: "
                    f"{sorted(overlap)[:3]}"
                )
            seen |= shas

    def repos(self) -> tuple[RepoAnalysis, ...]:
        return (self.origin, *self.forks)
