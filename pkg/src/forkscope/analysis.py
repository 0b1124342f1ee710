"""Pure analysis operations: bug-fix classification, commit-set algebra,
fork ranking and selection, and bubble sizing.

Everything here is deterministic and side-effect free.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Sequence

from .model import EXCERPT_LIMIT, CommitRecord, CommitSet

BUGFIX_KEYWORDS = ("fix", "bug", "error", "issue")

# "#" immediately followed by at least one ASCII digit, anywhere in the message.
ISSUE_ID_RE = re.compile(r"#[0-9]")

MIN_RADIUS = 3.0
RADIUS_SCALE = 2.0


def classify_bugfix(message: str) -> bool:
    """True iff the message names a fix-like keyword and a #-prefixed issue id.

    Keywords are matched case-insensitively as substrings, so "Bugfix" and
    "prefix" both satisfy the keyword clause; deliberate, recorded as a
    known coarseness of the heuristic.
    """
    lowered = message.lower()
    has_keyword = any(keyword in lowered for keyword in BUGFIX_KEYWORDS)
    return has_keyword and ISSUE_ID_RE.search(message) is not None


def split_message(message: str) -> tuple[str, str]:
    """Split a full commit message into (subject, excerpt).

    Subject is the first line verbatim; the excerpt is the remainder of the
    message with leading blank lines dropped, truncated to 200 characters.
    """
    subject, _, body = message.partition("\n")
    return subject, body.lstrip("\n")[:EXCERPT_LIMIT]


def build_commit(
    sha: str,
    timestamp: datetime,
    message: str,
    parents: int,
    url: str,
    added_lines: int = 0,
) -> CommitRecord:
    """Derive a CommitRecord from a full commit message and parent count."""
    subject, excerpt = split_message(message)
    return CommitRecord(
        sha=sha,
        timestamp=timestamp,
        subject=subject,
        message_excerpt=excerpt,
        added_lines=added_lines,
        is_merge=parents >= 2,
        is_bugfix=classify_bugfix(message),
        url=url,
    )


def divergent_count(fork: CommitSet, origin: CommitSet) -> int:
    """Number of commits in the fork absent from the origin, by sha."""
    return sum(1 for sha in fork if sha not in origin)


def unique_commits(repos: Sequence[CommitSet]) -> list[CommitSet]:
    """Commits of each repository not present in any earlier repository.

    ``repos[0]`` is the origin and keeps its full set; later repositories
    are expected in descending divergence order so shared commits are
    charged to the more active fork. Earlier repos only: a commit shared
    by two forks but missing from the origin still surfaces, once.
    """
    seen: set[str] = set()
    result: list[CommitSet] = []
    for repo in repos:
        unique = CommitSet()
        unique._entries = {  # noqa: SLF001 - same-class construction
            sha: repo.get(sha) for sha in repo if sha not in seen
        }
        result.append(unique)
        seen.update(repo.shas())
    return result


@dataclass(frozen=True, slots=True)
class RankedRepo:
    """A repository with its divergence count and unique-commit set computed."""

    owner: str
    name: str
    full_name: str
    url: str
    divergent_count: int
    commits: CommitSet
    unique: CommitSet


def rank_forks(forks: Iterable[RankedRepo]) -> list[RankedRepo]:
    """Descending divergent_count, ties broken by ascending full_name."""
    return sorted(forks, key=lambda f: (-f.divergent_count, f.full_name))


def select_forks(
    origin: RankedRepo, forks: Sequence[RankedRepo], top_k: int = 10
) -> list[RankedRepo]:
    """Origin first, then the top_k ranked forks with nonempty unique sets.

    Forks whose unique set is empty never appear; selection happens before
    merge exclusion or windowing, so it depends only on the raw sets.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    visible = [fork for fork in rank_forks(forks) if len(fork.unique) > 0]
    return [origin, *visible[:top_k]]


def exclude_merges(commits: Iterable[CommitRecord]) -> list[CommitRecord]:
    """Drop merge commits, preserving order."""
    return [commit for commit in commits if not commit.is_merge]


def window_commits(
    commits: Iterable[CommitRecord], since: datetime | None
) -> list[CommitRecord]:
    """Keep commits at or after ``since``; no-op when since is None."""
    if since is None:
        return list(commits)
    return [commit for commit in commits if commit.timestamp >= since]


def bubble_radius(added_lines: int) -> float:
    """Display radius for a commit bubble: 3 + 2*ln(1 + added_lines).

    Pure-deletion commits (0 added lines) get the minimum dot rather than
    disappearing; deleted lines never contribute.
    """
    if added_lines < 0:
        raise ValueError("added_lines must be >= 0")
    return MIN_RADIUS + RADIUS_SCALE * math.log1p(added_lines)
