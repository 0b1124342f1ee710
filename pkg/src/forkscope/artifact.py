"""The JSON artifact handed from the analyzer to the viewer.

Field names, key order, 2-space indentation, UTF-8 and LF endings are all
part of the contract: serializing the same analysis twice must produce
byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime
from typing import Any

import jsonschema

from .errors import InvalidArtifact
from .model import (
    CommitRecord,
    ForkUniverse,
    RepoAnalysis,
    format_instant,
    parse_instant,
)

SCHEMA_VERSION = 1

INSTANT_PATTERN = r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$"

COMMIT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "sha": {"type": "string", "pattern": "^[0-9a-f]{40}$"},
        "timestamp": {"type": "string", "pattern": INSTANT_PATTERN},
        "subject": {"type": "string"},
        "message_excerpt": {"type": "string", "maxLength": 200},
        "added_lines": {"type": "integer", "minimum": 0},
        "is_bugfix": {"type": "boolean"},
        "url": {"type": "string"},
    },
    "required": [
        "sha",
        "timestamp",
        "subject",
        "message_excerpt",
        "added_lines",
        "is_bugfix",
        "url",
    ],
    "additionalProperties": False,
}

REPO_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "owner": {"type": "string", "minLength": 1},
        "name": {"type": "string", "minLength": 1},
        "full_name": {"type": "string", "pattern": "^[^/]+/.+$"},
        "url": {"type": "string"},
        "divergent_count": {"type": "integer", "minimum": 0},
        "bugfix_count": {"type": "integer", "minimum": 0},
        "commits": {"type": "array", "items": COMMIT_SCHEMA},
    },
    "required": [
        "owner",
        "name",
        "full_name",
        "url",
        "divergent_count",
        "bugfix_count",
        "commits",
    ],
    "additionalProperties": False,
}

ARTIFACT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "generated_at": {"type": "string", "pattern": INSTANT_PATTERN},
        "origin": REPO_SCHEMA,
        "forks": {"type": "array", "items": REPO_SCHEMA},
        "warnings": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["schema_version", "generated_at", "origin", "forks", "warnings"],
    "additionalProperties": False,
}

_VALIDATOR = jsonschema.Draft202012Validator(ARTIFACT_SCHEMA)


@dataclass(frozen=True, slots=True)
class AnalysisArtifact:
    """A fork universe plus run metadata, as written to disk."""

    universe: ForkUniverse
    generated_at: datetime
    warnings: tuple[str, ...] = ()
    schema_version: int = SCHEMA_VERSION


def _commit_tree(commit: CommitRecord) -> dict[str, Any]:
    return {
        "sha": commit.sha,
        "timestamp": format_instant(commit.timestamp),
        "subject": commit.subject,
        "message_excerpt": commit.message_excerpt,
        "added_lines": commit.added_lines,
        "is_bugfix": commit.is_bugfix,
        "url": commit.url,
    }


def _repo_tree(repo: RepoAnalysis) -> dict[str, Any]:
    return {
        "owner": repo.owner,
        "name": repo.name,
        "full_name": repo.full_name,
        "url": repo.url,
        "divergent_count": repo.divergent_count,
        "bugfix_count": repo.bugfix_count,
        "commits": [_commit_tree(c) for c in repo.unique_commits],
    }


def artifact_tree(artifact: AnalysisArtifact) -> dict[str, Any]:
    """The artifact as a JSON-ready tree with keys in contract order."""
    return {
        "schema_version": artifact.schema_version,
        "generated_at": format_instant(artifact.generated_at),
        "origin": _repo_tree(artifact.universe.origin),
        "forks": [_repo_tree(f) for f in artifact.universe.forks],
        "warnings": list(artifact.warnings),
    }


def dumps_canonical(tree: Any) -> str:
    """Canonical JSON text: 2-space indent, UTF-8 passthrough, trailing LF."""
    return json.dumps(tree, indent=2, ensure_ascii=False) + "\n"


def serialize_artifact(artifact: AnalysisArtifact) -> str:
    return dumps_canonical(artifact_tree(artifact))


def validate_tree(data: Any) -> None:
    """Raise InvalidArtifact (with a JSON pointer) on any schema violation."""
    error = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(data))
    if error is not None:
        pointer = "/" + "/".join(str(part) for part in error.absolute_path)
        raise InvalidArtifact(pointer if pointer != "/" else "", error.message)


def _parse_commit(tree: dict[str, Any]) -> CommitRecord:
    return CommitRecord(
        sha=tree["sha"],
        timestamp=parse_instant(tree["timestamp"]),
        subject=tree["subject"],
        message_excerpt=tree["message_excerpt"],
        added_lines=tree["added_lines"],
        is_merge=False,
        is_bugfix=tree["is_bugfix"],
        url=tree["url"],
    )


def _parse_repo(tree: dict[str, Any]) -> RepoAnalysis:
    return RepoAnalysis(
        owner=tree["owner"],
        name=tree["name"],
        full_name=tree["full_name"],
        url=tree["url"],
        divergent_count=tree["divergent_count"],
        unique_commits=tuple(_parse_commit(c) for c in tree["commits"]),
        bugfix_count=tree["bugfix_count"],
    )


def parse_artifact(text: str) -> AnalysisArtifact:
    """Parse and fully validate artifact JSON.

    Schema violations and model-invariant violations (ordering, disjointness,
    count consistency) both surface as InvalidArtifact.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArtifact("", f"not valid JSON: {exc}") from exc
    validate_tree(data)
    try:
        universe = ForkUniverse(
            origin=_parse_repo(data["origin"]),
            forks=tuple(_parse_repo(f) for f in data["forks"]),
        )
    except ValueError as exc:
        raise InvalidArtifact("", str(exc)) from exc
    return AnalysisArtifact(
        universe=universe,
        generated_at=parse_instant(data["generated_at"]),
        warnings=tuple(data["warnings"]),
        schema_version=data["schema_version"],
    )
