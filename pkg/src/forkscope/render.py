"""Static-site emitter: wraps an artifact into a self-contained viewer bundle.

The output directory opens straight from the filesystem: data.json is the
artifact byte-for-byte, and index.html additionally embeds the same JSON
inline because browsers refuse fetch() over file:// URLs.
"""

from __future__ import annotations

import html
import json
from importlib import resources
from pathlib import Path

from .artifact import parse_artifact
from .errors import InvalidArtifact

ASSETS = ("viewer.js", "viewer.css")


def _static_text(name: str) -> str:
    return (resources.files("forkscope") / "static" / name).read_text(encoding="utf-8")


def render(artifact_path: Path, out_dir: Path) -> Path:
    raw = Path(artifact_path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidArtifact("", f"artifact is not valid UTF-8: {exc}") from exc
    artifact = parse_artifact(text)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "data.json").write_bytes(raw)
    for asset in ASSETS:
        (out / asset).write_text(_static_text(asset), encoding="utf-8", newline="\n")

    # Re-serialize compactly for inlining; "</" must not appear inside a
    # script element, and the escaped form is still valid JSON.
    inline = json.dumps(json.loads(text), ensure_ascii=False).replace("</", "<\\/")
    page = (
        _static_text("index.html")
        .replace("{{TITLE}}", html.escape(artifact.universe.origin.full_name))
        .replace("{{DATA}}", inline)
    )
    (out / "index.html").write_text(page, encoding="utf-8", newline="\n")
    return out
