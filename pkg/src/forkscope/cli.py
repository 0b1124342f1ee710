"""Command line interface: analyze a repository's forks, render the viewer."""

from __future__ import annotations

import argparse
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

from .errors import ForkscopeError
from .model import parse_instant
from .pipeline import analyze
from .provider.config import ProviderConfig
from .render import render

DEFAULT_CACHE = Path.home() / ".cache" / "forkscope"


def _parse_since(value: str) -> datetime:
    try:
        return datetime.strptime(value, "%Y-%m-%d").replace(tzinfo=timezone.utc)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--since must be YYYY-MM-DD, got {value!r}")


def _parse_timestamp(value: str) -> datetime:
    try:
        return parse_instant(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--timestamp must be ISO 8601, got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forkscope",
        description="Find active hard forks and the bug fixes that never made it upstream.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze_p = sub.add_parser(
        "analyze", help="analyze a repository's forks and write the JSON artifact"
    )
    analyze_p.add_argument("origin", help="repository as owner/name or URL")
    analyze_p.add_argument("--top", type=int, default=10, metavar="K",
                           help="number of fork rows to keep (default 10)")
    analyze_p.add_argument("--out", type=Path, default=Path("analysis.json"),
                           metavar="FILE", help="artifact path (default analysis.json)")
    analyze_p.add_argument("--cache", type=Path, default=DEFAULT_CACHE, metavar="DIR",
                           help=f"cache directory (default {DEFAULT_CACHE})")
    analyze_p.add_argument("--offline", action="store_true",
                           help="replay from the cache; no network access")
    analyze_p.add_argument("--since", type=_parse_since, metavar="YYYY-MM-DD",
                           help="only display commits at or after this date")
    analyze_p.add_argument("--allow-partial", action="store_true",
                           help="proceed when some repositories cannot be fetched")
    analyze_p.add_argument("--timestamp", type=_parse_timestamp, metavar="ISO8601",
                           help="pin the artifact's generated_at (for reproducible runs)")

    render_p = sub.add_parser(
        "render", help="turn an artifact into a self-contained interactive page"
    )
    render_p.add_argument("artifact", type=Path, help="artifact JSON file")
    render_p.add_argument("--out", type=Path, required=True, metavar="DIR",
                          help="output directory for the viewer bundle")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            config = ProviderConfig(cache_dir=args.cache)
            result = analyze(
                args.origin,
                config=config,
                top_k=args.top,
                since=args.since,
                offline=args.offline,
                allow_partial=args.allow_partial,
                out_path=args.out,
                generated_at=args.timestamp,
            )
            stats = result.stats
            print(
                f"wrote {args.out}: {stats.forks_enumerated} forks enumerated, "
                f"{stats.forks_with_unique_commits} with unique commits, "
                f"{stats.repos_in_artifact} repositories in artifact "
                f"({stats.commits_displayed} commits)",
                file=sys.stderr,
            )
        else:
            out = render(args.artifact, args.out)
            print(f"wrote viewer bundle to {out}", file=sys.stderr)
    except ForkscopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
