"""Pipeline orchestration and the command line interface."""

import json
from datetime import datetime, timezone

import pytest

from forkscope.cli import main
from forkscope.errors import (
    OfflineCacheMiss,
    OriginNotFound,
    PartialFetch,
    RateLimited,
)
from forkscope.pipeline import analyze, parse_origin_ref
from forkscope.provider.config import ProviderConfig
from forkscope.provider.localforge import LocalForge

from .fakeforge import FakeForgeSession, FakeRepo, linear_history
from .gitfixtures import build_main_universe


@pytest.fixture(scope="module")
def universe(tmp_path_factory):
    return build_main_universe(tmp_path_factory.mktemp("cli-universe"))


@pytest.fixture(scope="module")
def warm_cache(universe, tmp_path_factory):
    """Cache primed by one LocalForge run; offline runs replay from it."""
    cache_dir = tmp_path_factory.mktemp("warm-cache")
    config = ProviderConfig(cache_dir=cache_dir)
    analyze(universe.origin, config=config, provider=LocalForge(universe.manifest, config))
    return cache_dir


def test_parse_origin_ref_forms():
    assert parse_origin_ref("alice/project") == "alice/project"
    assert parse_origin_ref("https://github.com/alice/project") == "alice/project"
    assert parse_origin_ref("https://github.com/alice/project.git") == "alice/project"
    assert parse_origin_ref("https://github.com/alice/project/tree/main") == "alice/project"
    with pytest.raises(Exception):
        parse_origin_ref("justaname")


def test_offline_cli_run_matches_online_run(universe, warm_cache, tmp_path, capsys):
    out = tmp_path / "artifact.json"
    code = main(
        [
            "analyze",
            universe.origin,
            "--offline",
            "--cache",
            str(warm_cache),
            "--out",
            str(out),
            "--timestamp",
            "2026-01-01T00:00:00Z",
        ]
    )
    assert code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["origin"]["full_name"] == universe.origin
    assert [f["full_name"] for f in data["forks"]] == ["bob/project", "carol/project"]
    summary = capsys.readouterr().err
    assert "3 forks enumerated" in summary
    assert "2 with unique commits" in summary


def test_offline_runs_are_byte_identical(universe, warm_cache, tmp_path):
    outs = []
    for name in ("one.json", "two.json"):
        out = tmp_path / name
        code = main(
            [
                "analyze", universe.origin,
                "--offline", "--cache", str(warm_cache),
                "--out", str(out),
                "--timestamp", "2026-01-01T00:00:00Z",
            ]
        )
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_since_filters_display_but_not_ranking(universe, warm_cache, tmp_path):
    config = ProviderConfig(cache_dir=warm_cache)
    full = analyze(universe.origin, config=config, offline=True)
    # Everything in the fixture predates 2030: windowing empties the rows but
    # the fork ordering and divergence counts stay put.
    windowed = analyze(
        universe.origin,
        config=config,
        offline=True,
        since=datetime(2030, 1, 1, tzinfo=timezone.utc),
    )
    assert [r.full_name for r in windowed.artifact.universe.repos()] == [
        r.full_name for r in full.artifact.universe.repos()
    ]
    assert [r.divergent_count for r in windowed.artifact.universe.forks] == [
        r.divergent_count for r in full.artifact.universe.forks
    ]
    assert all(not r.unique_commits for r in windowed.artifact.universe.repos())

    midpoint = sorted(
        c.timestamp for c in full.artifact.universe.origin.unique_commits
    )[4]
    partial = analyze(universe.origin, config=config, offline=True, since=midpoint)
    for row in partial.artifact.universe.repos():
        assert all(c.timestamp >= midpoint for c in row.unique_commits)


def test_top_k_limits_rows(universe, warm_cache):
    config = ProviderConfig(cache_dir=warm_cache)
    result = analyze(universe.origin, config=config, offline=True, top_k=1)
    assert [r.full_name for r in result.artifact.universe.forks] == ["bob/project"]


def test_offline_cold_cache_exits_4(tmp_path, capsys):
    code = main(
        ["analyze", "nobody/nothing", "--offline", "--cache", str(tmp_path / "empty")]
    )
    assert code == 4
    assert "cache has no entry" in capsys.readouterr().err


def test_cli_error_mapping(monkeypatch, capsys, tmp_path):
    cases = [
        (OriginNotFound("x/y"), 2),
        (RateLimited(datetime(2026, 5, 1, tzinfo=timezone.utc)), 3),
        (OfflineCacheMiss("x/y"), 4),
        (PartialFetch(["a/b", "c/d"]), 5),
    ]
    for error, expected_code in cases:
        def raising_analyze(*args, _err=error, **kwargs):
            raise _err

        monkeypatch.setattr("forkscope.cli.analyze", raising_analyze)
        code = main(["analyze", "x/y", "--cache", str(tmp_path)])
        assert code == expected_code
        capsys.readouterr()


def test_zero_fork_origin_yields_empty_forks(tmp_path):
    manifest = {
        "origin": "solo/repo",
        "url_base": "https://forge.example",
        "repos": [{"full_name": "solo/repo", "path": str(tmp_path / "solo"), "parent": None}],
    }
    from .gitfixtures import Clock, RepoBuilder

    clock = Clock(datetime(2022, 1, 1, tzinfo=timezone.utc))
    builder = RepoBuilder.init(tmp_path / "solo", clock, {})
    builder.new_file("a.txt", 2)
    builder.commit("Only commit")

    config = ProviderConfig(cache_dir=tmp_path / "cache")
    result = analyze("solo/repo", config=config, provider=LocalForge(manifest, config))
    assert result.artifact.universe.forks == ()
    assert len(result.artifact.universe.origin.unique_commits) == 1


def test_partial_fetch_blocks_without_flag(tmp_path):
    forge = FakeForgeSession()
    origin = FakeRepo("alice/app")
    history = linear_history("aa", 2)
    origin.commits = {c.sha: c for c in history}
    origin.branches = {"main": history[-1].sha}
    origin.fork_children = ["lost/app"]
    forge.add_repo(origin)
    forge.add_repo(FakeRepo("lost/app", deleted=True))

    from forkscope.provider.github import GitHubProvider

    config = ProviderConfig(cache_dir=tmp_path / "cache", api_base_url=forge.base_url)
    provider = GitHubProvider(config, session=forge)
    with pytest.raises(PartialFetch):
        analyze("alice/app", config=config, provider=provider)

    result = analyze(
        "alice/app", config=config, provider=provider, allow_partial=True
    )
    assert any("lost/app" in w for w in result.artifact.warnings)
    assert result.artifact.universe.forks == ()


def test_clone_failure_warns_and_keeps_zero_sizes(tmp_path):
    forge = FakeForgeSession()
    origin = FakeRepo("alice/app")
    history = linear_history("ab", 3)
    origin.commits = {c.sha: c for c in history}
    origin.branches = {"main": history[-1].sha}
    forge.add_repo(origin)

    from forkscope.provider.github import GitHubProvider

    config = ProviderConfig(cache_dir=tmp_path / "cache", api_base_url=forge.base_url)
    provider = GitHubProvider(config, session=forge)
    result = analyze("alice/app", config=config, provider=provider)
    assert any("clone failed" in w for w in result.artifact.warnings)
    assert all(
        c.added_lines == 0 for c in result.artifact.universe.origin.unique_commits
    )
