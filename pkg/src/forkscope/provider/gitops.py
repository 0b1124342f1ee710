"""Local git plumbing: ref listing, history walks, clones, and line counts.

Used both by the local-fixture forge (as its primary data source) and by
the GitHub provider (clones for change-size measurement). Talks to git via
subprocess; no library dependency.
"""

from __future__ import annotations

import fnmatch
import subprocess
from pathlib import Path
from typing import Callable, Iterable, Sequence

from ..errors import ProviderError
from ..model import CommitRecord, parse_instant
from .base import RawCommit

_RECORD_SEP = "\x1e"
_FIELD_SEP = "\x1f"


def run_git(repo: Path | None, *args: str, check: bool = True) -> str:
    cmd = ["git"]
    if repo is not None:
        cmd += ["-C", str(repo)]
    cmd += list(args)
    result = subprocess.run(cmd, capture_output=True, text=True, timeout=300)
    if check and result.returncode != 0:
        raise ProviderError(f"git {args[0]} failed: {result.stderr.strip()}")
    return result.stdout


def list_ref_heads(repo: Path, include_pull_refs: bool = False) -> dict[str, str]:
    """Map ref name (sans ``refs/``) to head sha for branches, plus PR refs."""
    patterns = ["refs/heads"]
    if include_pull_refs:
        patterns.append("refs/pull")
    out = run_git(repo, "for-each-ref", "--format=%(refname) %(objectname)", *patterns)
    heads: dict[str, str] = {}
    for line in out.splitlines():
        refname, sha = line.rsplit(" ", 1)
        heads[refname.removeprefix("refs/")] = sha
    return heads


def log_commits(
    repo: Path, start_shas: Sequence[str], commit_url: Callable[[str], str]
) -> list[RawCommit]:
    """Every commit reachable from any of the given heads, deduplicated."""
    if not start_shas:
        return []
    out = run_git(
        repo,
        "log",
        f"--format=%H{_FIELD_SEP}%cI{_FIELD_SEP}%P{_FIELD_SEP}%B{_RECORD_SEP}",
        *start_shas,
    )
    commits: list[RawCommit] = []
    for chunk in out.split(_RECORD_SEP):
        if not chunk.strip():
            continue
        sha, committed_at, parents, message = chunk.lstrip("\n").split(_FIELD_SEP)
        commits.append(
            RawCommit(
                sha=sha,
                timestamp=parse_instant(committed_at),
                message=message.rstrip("\n"),
                parents=len(parents.split()) if parents.strip() else 0,
                url=commit_url(sha),
            )
        )
    return commits


def ensure_clone(source: str, dest: Path, fetch_pull_refs: bool = False) -> None:
    """Full clone of ``source`` at ``dest``; reused as-is when present.

    Shallow clones are useless here: first-parent diffs need parent objects.
    """
    if not (dest / ".git").exists():
        dest.parent.mkdir(parents=True, exist_ok=True)
        run_git(None, "clone", "--quiet", source, str(dest))
    if fetch_pull_refs:
        # PR head refs are not copied by a plain clone; best effort.
        run_git(dest, "fetch", "--quiet", "origin", "+refs/pull/*:refs/pull/*", check=False)


def _added_from_numstat(
    lines: Iterable[str], source_filter: Sequence[str] | None
) -> int:
    added = 0
    for line in lines:
        parts = line.split("\t")
        if len(parts) != 3:
            continue
        added_str, _, path = parts
        if added_str == "-":
            continue  # binary file
        if source_filter and not any(fnmatch.fnmatch(path, p) for p in source_filter):
            continue
        added += int(added_str)
    return added


def added_lines_for_commit(
    clone: Path, sha: str, source_filter: Sequence[str] | None
) -> int:
    """Lines added by a commit against its first parent (empty tree for roots)."""
    out = run_git(clone, "show", "--numstat", "--no-renames", "--format=", sha)
    return _added_from_numstat(out.splitlines(), source_filter)


def measure_records(
    clone: Path,
    full_name: str,
    records: Sequence[CommitRecord],
    source_filter: Sequence[str] | None,
) -> tuple[dict[str, int], list[str]]:
    """Measure added_lines for each non-merge commit present in the clone.

    Returns (sha -> added_lines, warnings). A sha missing from the clone is
    reported in the warnings and left out of the sizes map; it keeps its
    prior value (0 for never-measured commits) rather than failing the run.
    """
    sizes: dict[str, int] = {}
    warnings: list[str] = []
    for record in records:
        if record.is_merge:
            continue
        try:
            sizes[record.sha] = added_lines_for_commit(clone, record.sha, source_filter)
        except ProviderError:
            warnings.append(
                f"{full_name}: commit {record.sha} missing from clone; size unmeasured"
            )
    return sizes, warnings
