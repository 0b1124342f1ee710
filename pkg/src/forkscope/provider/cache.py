"""On-disk cache of fetched repositories and clones.

Layout:
    cache_dir/repos/<owner>__<name>.json   one file per repository
    cache_dir/forks/<owner>__<name>.json   fork enumeration per origin
    cache_dir/clones/<owner>/<name>        working clones for size measurement

All writes are atomic (temp file + rename); a reader never sees a torn file.
Repo files carry the artifact's commit fields plus the full message and
parent count so offline replays can re-derive every downstream value.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from ..artifact import dumps_canonical
from ..model import format_instant, parse_instant
from .base import ForkTreeEntry, RawCommit, RepoCommits


def _slug(full_name: str) -> str:
    owner, name = full_name.split("/", 1)
    return f"{owner}__{name}"


class RepoCache:
    def __init__(self, cache_dir: Path):
        self.cache_dir = Path(cache_dir)

    def repo_path(self, full_name: str) -> Path:
        return self.cache_dir / "repos" / f"{_slug(full_name)}.json"

    def forks_path(self, origin_full_name: str) -> Path:
        return self.cache_dir / "forks" / f"{_slug(origin_full_name)}.json"

    def clone_dir(self, full_name: str) -> Path:
        return self.cache_dir / "clones" / full_name

    def _write_json(self, path: Path, tree: Any) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(dumps_canonical(tree))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _read_json(self, path: Path) -> Any | None:
        if not path.exists():
            return None
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)

    # -- repository commit data ---------------------------------------------

    def write_repo(self, repo: RepoCommits) -> None:
        commits = []
        for commit in sorted(repo.commits, key=lambda c: (c.timestamp, c.sha)):
            record = commit.to_record()
            commits.append(
                {
                    "sha": record.sha,
                    "timestamp": format_instant(record.timestamp),
                    "subject": record.subject,
                    "message_excerpt": record.message_excerpt,
                    "added_lines": record.added_lines,
                    "is_bugfix": record.is_bugfix,
                    "url": record.url,
                    "message": commit.message,
                    "parents": commit.parents,
                    "measured": commit.measured,
                }
            )
        tree = {
            "full_name": repo.entry.full_name,
            "url": repo.entry.url,
            "parent_full_name": repo.entry.parent_full_name,
            "clone_url": repo.clone_url,
            "fetched_at": format_instant(repo.entry.fetched_at),
            "ref_heads": dict(sorted(repo.ref_heads.items())),
            "commits": commits,
        }
        self._write_json(self.repo_path(repo.entry.full_name), tree)

    def read_repo(self, full_name: str) -> RepoCommits | None:
        tree = self._read_json(self.repo_path(full_name))
        if tree is None:
            return None
        if tree["full_name"] != full_name:
            raise ValueError(
                f"cache file for {full_name} holds data for {tree['full_name']}"
            )
        entry = ForkTreeEntry(
            full_name=tree["full_name"],
            url=tree["url"],
            parent_full_name=tree.get("parent_full_name"),
            fetched_at=parse_instant(tree["fetched_at"]),
        )
        commits = [
            RawCommit(
                sha=item["sha"],
                timestamp=parse_instant(item["timestamp"]),
                message=item["message"],
                parents=item["parents"],
                url=item["url"],
                added_lines=item["added_lines"],
                measured=item.get("measured", False),
            )
            for item in tree["commits"]
        ]
        return RepoCommits(
            entry=entry,
            ref_heads=dict(tree["ref_heads"]),
            commits=commits,
            clone_url=tree.get("clone_url", ""),
        )

    def update_sizes(self, full_name: str, sizes: dict[str, int]) -> None:
        """Write measured added_lines back and mark those commits measured."""
        path = self.repo_path(full_name)
        tree = self._read_json(path)
        if tree is None:
            return
        for item in tree["commits"]:
            if item["sha"] in sizes:
                item["added_lines"] = sizes[item["sha"]]
                item["measured"] = True
        self._write_json(path, tree)

    # -- fork enumeration -----------------------------------------------------

    def write_forks(
        self, origin: ForkTreeEntry, forks: list[ForkTreeEntry], warnings: list[str]
    ) -> None:
        tree = {
            "origin": self._entry_tree(origin),
            "forks": [self._entry_tree(f) for f in forks],
            "warnings": list(warnings),
        }
        self._write_json(self.forks_path(origin.full_name), tree)

    def read_forks(
        self, origin_full_name: str
    ) -> tuple[ForkTreeEntry, list[ForkTreeEntry], list[str]] | None:
        tree = self._read_json(self.forks_path(origin_full_name))
        if tree is None:
            return None
        origin = self._entry_from_tree(tree["origin"])
        forks = [self._entry_from_tree(f) for f in tree["forks"]]
        return origin, forks, list(tree.get("warnings", []))

    @staticmethod
    def _entry_tree(entry: ForkTreeEntry) -> dict[str, Any]:
        return {
            "full_name": entry.full_name,
            "url": entry.url,
            "parent_full_name": entry.parent_full_name,
            "fetched_at": format_instant(entry.fetched_at),
        }

    @staticmethod
    def _entry_from_tree(tree: dict[str, Any]) -> ForkTreeEntry:
        return ForkTreeEntry(
            full_name=tree["full_name"],
            url=tree["url"],
            parent_full_name=tree.get("parent_full_name"),
            fetched_at=parse_instant(tree["fetched_at"]),
        )
