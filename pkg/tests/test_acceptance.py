"""Acceptance suite: one test per release criterion, at stated tolerances.

Each test prints a pass/fail line via the conftest hook. All expected
values come from independent oracles (tests.oracles, tests.expected,
authored fixture records), never from the code paths under test.
"""

import json
import random
import time

import pytest

from forkscope.analysis import (
    RankedRepo,
    classify_bugfix,
    divergent_count,
    select_forks,
    unique_commits,
)
from forkscope.artifact import parse_artifact, serialize_artifact, validate_tree
from forkscope.cli import main
from forkscope.model import CommitSet
from forkscope.pipeline import analyze
from forkscope.provider.config import ProviderConfig
from forkscope.provider.localforge import LocalForge

from .expected import expected_rows
from .genuniverse import random_artifact
from .gitfixtures import build_main_universe, build_pr_universe
from .oracles import (
    oracle_bugfix,
    oracle_divergent,
    oracle_divergent_pairwise,
    oracle_unique,
    oracle_unique_pairwise,
)
from .recorded import synthesize_snapshot
from .topologies import random_topology

pytestmark = pytest.mark.acceptance


@pytest.fixture(scope="module")
def scripted_universe(tmp_path_factory):
    """Scripted origin + 3 forks, cache primed for offline replay."""
    universe = build_main_universe(tmp_path_factory.mktemp("accept-universe"))
    cache_dir = tmp_path_factory.mktemp("accept-cache")
    config = ProviderConfig(cache_dir=cache_dir)
    analyze(universe.origin, config=config, provider=LocalForge(universe.manifest, config))
    return universe, cache_dir


def test_oracle_equivalence_1000_topologies():
    """1000 random fork topologies: d and U match brute force, < 60 s."""
    started = time.monotonic()
    mismatches = 0
    checked_pairwise = 0
    for seed in range(1000):
        rng = random.Random(987_000 + seed)
        repos = random_topology(rng, max_repos=10, max_commits=500)
        sets = [CommitSet.from_shas(r) for r in repos]

        for fork, listing in zip(sets[1:], repos[1:]):
            if divergent_count(fork, sets[0]) != oracle_divergent(listing, repos[0]):
                mismatches += 1
        got = [u.shas() for u in unique_commits(sets)]
        if got != oracle_unique(repos):
            mismatches += 1
        if sum(len(r) for r in repos) <= 250:
            # Small instances additionally face the literal pairwise scan.
            checked_pairwise += 1
            if got != oracle_unique_pairwise(repos):
                mismatches += 1
            for fork, listing in zip(sets[1:], repos[1:]):
                if divergent_count(fork, sets[0]) != oracle_divergent_pairwise(
                    set(listing), repos[0]
                ):
                    mismatches += 1
    elapsed = time.monotonic() - started
    assert mismatches == 0
    assert checked_pairwise > 100
    assert elapsed < 60, f"oracle equivalence took {elapsed:.1f}s"


def test_invariant_suite_and_500_roundtrips():
    """Set-algebra invariants on generated instances; 500 lossless round-trips."""
    for seed in range(300):
        rng = random.Random(55_000 + seed)
        repos = random_topology(rng, max_repos=8, max_commits=120)
        sets = [CommitSet.from_shas(r) for r in repos]
        parts = unique_commits(sets)

        union: set[str] = set()
        for part, listing in zip(parts, repos):
            shas = part.shas()
            assert not (shas & union), "unique sets must be pairwise disjoint"
            assert shas <= set(listing), "U(R) must be a subset of Commits(R)"
            union |= shas
        everything = set().union(*map(set, repos)) if repos else set()
        assert union == everything, "unique sets must cover every commit"

        shuffled = []
        for listing in repos:
            copy = list(listing)
            rng.shuffle(copy)
            shuffled.append(copy)
        again = unique_commits([CommitSet.from_shas(r) for r in shuffled])
        assert [u.shas() for u in again] == [u.shas() for u in parts]

    # Selection ordering is deterministic under input permutation.
    rng = random.Random(77)
    forks = []
    for i in range(40):
        sha_pool = [f"{rng.getrandbits(160):040x}" for _ in range(rng.randint(0, 4))]
        commits = CommitSet.from_shas(sha_pool)
        forks.append(
            RankedRepo(
                owner=f"u{i}",
                name="r",
                full_name=f"u{i}/r",
                url="",
                divergent_count=rng.randint(0, 6),
                commits=commits,
                unique=commits,
            )
        )
    origin = forks.pop()
    baseline = [f.full_name for f in select_forks(origin, forks, top_k=10)]
    for _ in range(5):
        rng.shuffle(forks)
        assert [f.full_name for f in select_forks(origin, forks, top_k=10)] == baseline

    # 500 random artifacts: serialize -> schema-validate -> parse is lossless
    # and repeated serialization is byte-identical.
    rng = random.Random(424242)
    for _ in range(500):
        artifact = random_artifact(rng)
        text = serialize_artifact(artifact)
        validate_tree(json.loads(text))
        parsed = parse_artifact(text)
        assert parsed == artifact
        assert serialize_artifact(parsed) == text


def test_scripted_fixture_end_to_end_offline(scripted_universe, tmp_path, monkeypatch):
    """Origin + 3 forks via `forkscope analyze --offline`: exact rows, < 10 s."""
    universe, cache_dir = scripted_universe

    import requests.sessions

    def no_network(*args, **kwargs):
        raise AssertionError("offline run attempted an HTTP request")

    monkeypatch.setattr(requests.sessions.Session, "request", no_network)

    out = tmp_path / "artifact.json"
    started = time.monotonic()
    code = main(
        [
            "analyze", universe.origin,
            "--offline", "--cache", str(cache_dir),
            "--out", str(out),
            "--timestamp", "2026-02-03T04:05:06Z",
        ]
    )
    elapsed = time.monotonic() - started
    assert code == 0
    assert elapsed < 10, f"offline analyze took {elapsed:.1f}s"

    artifact = parse_artifact(out.read_text(encoding="utf-8"))
    expected = expected_rows(universe)

    assert [r.full_name for r in artifact.universe.repos()] == [
        r.full_name for r in expected
    ]
    assert [r.full_name for r in artifact.universe.forks] == [
        "bob/project", "carol/project",
    ]

    by_name = {r.full_name: r for r in artifact.universe.repos()}
    expected_by_name = {r.full_name: r for r in expected}
    for name, row in by_name.items():
        want = expected_by_name[name]
        assert row.divergent_count == want.divergent_count
        assert row.bugfix_count == want.bugfix_count
        assert [c.sha for c in row.unique_commits] == [c.sha for c in want.commits]

    assert by_name["bob/project"].bugfix_count == 2
    assert len(by_name["bob/project"].unique_commits) == 6

    # carol's displayed count equals the raw set formula |Commits(B) \
    # (Commits(origin) u Commits(A))| because carol has no unique merges.
    sets = {name: universe.commit_shas(name) for name in universe.paths}
    formula = oracle_unique(
        [sets["alice/project"], sets["bob/project"], sets["carol/project"]]
    )[2]
    assert {c.sha for c in by_name["carol/project"].unique_commits} == formula

    merge_shas = {s for s, a in universe.authored.items() if a.parents >= 2}
    assert merge_shas
    for row in artifact.universe.repos():
        assert not merge_shas & {c.sha for c in row.unique_commits}


def test_pull_request_commits_never_count_as_divergence(tmp_path):
    """A commit reachable from the origin's PR head ref is not fork-unique."""
    universe = build_pr_universe(tmp_path / "pr")
    config = ProviderConfig(cache_dir=tmp_path / "cache")
    result = analyze(
        universe.origin,
        config=config,
        provider=LocalForge(universe.manifest, config),
    )
    pr_sha = universe.notes["pr_sha"]
    (fork,) = result.artifact.universe.forks
    assert pr_sha not in {c.sha for c in fork.unique_commits}
    assert fork.divergent_count == 1  # only the non-PR commit diverges
    sets = {n: universe.commit_shas(n) for n in universe.paths}
    assert fork.divergent_count == oracle_divergent(
        sets["frank/gadget"], sets["erin/gadget"]
    )


LABELED_MESSAGES = [
    "Fix crash on startup #123",
    "fix crash on startup #123",
    "FIX CRASH ON STARTUP #123",
    "Fix typo in README",
    "Fixes #1",
    "fixed #0012 properly",
    "Prefix table rebuild (#42)",
    "prefix tables only",
    "hotfix #7",
    "Hotfix without number",
    "bug #88 squashed",
    "Bugfix: trailing whitespace #9",
    "debugging session notes #55",
    "ladybug drawing added",
    "error handling improved #3",
    "terrorist watchlist parser #21",
    "Error: something broke",
    "issue #4711 resolved",
    "tissue samples #12",
    "reissued the release",
    "close #99",
    "closes issue #99",
    "#100 fix",
    "fix #",
    "fix #x",
    "fix # 5",
    "fix #5",
    "fix number five",
    "#123",
    "",
    " ",
    "\n\n\n",
    "Fix\n\n#777 in body",
    "fix\nno id anywhere",
    "Merge pull request #42 from fork/feature",
    "Merge branch 'main'",
    "Revert \"fix #31\"",
    "update dependencies to 1.2.3",
    "release v2.0 #build",
    "FiX mIxEd CaSe #6",
    "bUg RepOrt #0",
    "correction #12 without keywords",
    "problema corregido #14 sin palabras clave",
    "buggy behaviour gone #2",
    "issues everywhere",
    "many issues #one",
    "nissue #5x",
    "fix unicode digit #٣ only",
    "バグ修正 #15",
    "long " + "x" * 400 + " fix tail #16",
]


def test_classifier_conformance_labeled_set():
    """50 labeled messages: 100% agreement with the independent rule."""
    assert len(LABELED_MESSAGES) == 50
    labels = [oracle_bugfix(m) for m in LABELED_MESSAGES]
    assert sum(labels) not in (0, 50), "label set must be mixed to mean anything"
    disagreements = [
        (message, classify_bugfix(message), label)
        for message, label in zip(LABELED_MESSAGES, labels)
        if classify_bugfix(message) != label
    ]
    assert disagreements == []


def test_recorded_snapshots_reproduce_exact_counts(tmp_path):
    """Two recorded production-scale snapshots replay with exact counts, < 30 s."""
    scenarios = [
        ("upstream-a/toolchain", 994, 66, 101),
        ("upstream-b/clipboard", 487, 61, 202),
    ]
    for origin, total, unique, seed in scenarios:
        cache_dir = tmp_path / f"cache-{total}"
        snapshot = synthesize_snapshot(
            cache_dir, origin, total_forks=total, unique_forks=unique, seed=seed
        )

        # The generator's recorded counts must themselves satisfy the formulas.
        fork_sets = [
            snapshot.commit_shas[n]
            for n in snapshot.commit_shas
            if n != origin
        ]
        origin_set = snapshot.commit_shas[origin]
        d = {
            name: oracle_divergent(shas, origin_set)
            for name, shas in snapshot.commit_shas.items()
            if name != origin
        }
        order = sorted(d, key=lambda n: (-d[n], n))
        uniques = oracle_unique([origin_set] + [snapshot.commit_shas[n] for n in order])
        oracle_unique_count = sum(1 for u in uniques[1:] if u)
        assert oracle_unique_count == unique

        config = ProviderConfig(cache_dir=cache_dir)
        started = time.monotonic()
        result = analyze(origin, config=config, offline=True)
        elapsed = time.monotonic() - started
        assert elapsed < 30, f"{origin}: offline replay took {elapsed:.1f}s"

        assert result.stats.forks_enumerated == total
        assert result.stats.forks_with_unique_commits == unique
        assert len(result.artifact.universe.forks) == 10  # default top-10

        wide = analyze(origin, config=config, offline=True, top_k=total)
        assert len(wide.artifact.universe.forks) == unique


def test_change_sizes_match_authored_values(scripted_universe):
    """added_lines equals what the fixture scripts authored, exactly."""
    universe, cache_dir = scripted_universe
    config = ProviderConfig(cache_dir=cache_dir)
    artifact = analyze(universe.origin, config=config, offline=True).artifact

    checked = 0
    for row in artifact.universe.repos():
        for commit in row.unique_commits:
            assert commit.added_lines == universe.authored[commit.sha].added_lines
            checked += 1
    assert checked >= 16

    by_subject = {
        c.subject: c for c in artifact.universe.origin.unique_commits
    }
    assert by_subject["Initial import"].added_lines == 3  # root commit
    assert by_subject["Remove stale notes"].added_lines == 0  # deletion-only
    assert by_subject["Add logo image"].added_lines == 0  # binary payload
    bob = artifact.universe.forks[0]
    assert {c.subject: c for c in bob.unique_commits}[
        "Improve rendering speed"
    ].added_lines == 3  # 3 added, 5 deleted
