"""Commit-set algebra: divergence counts and unique-commit extraction."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from forkscope.analysis import divergent_count, unique_commits
from forkscope.model import CommitSet

from .oracles import oracle_divergent_pairwise, oracle_unique_pairwise
from .topologies import random_topology

# Small sha universe so hypothesis actually generates overlaps.
shas = st.integers(min_value=0, max_value=30).map(lambda n: f"{n:040x}")
sha_lists = st.lists(shas, max_size=40)
repo_families = st.lists(sha_lists, min_size=1, max_size=6)


def _sets(repos):
    return [CommitSet.from_shas(r) for r in repos]


def test_divergent_simple_difference():
    fork = CommitSet.from_shas(["a" * 40, "b" * 40, "c" * 40])
    origin = CommitSet.from_shas(["a" * 40, "b" * 40])
    assert divergent_count(fork, origin) == 1


def test_divergent_identical_sets():
    commits = CommitSet.from_shas(["d" * 40, "e" * 40])
    assert divergent_count(commits, commits) == 0


def test_unique_chain():
    repos = _sets([["a" * 40], ["a" * 40, "b" * 40], ["a" * 40, "b" * 40, "c" * 40]])
    result = unique_commits(repos)
    assert [r.shas() for r in result] == [{"a" * 40}, {"b" * 40}, {"c" * 40}]


def test_unique_shared_commit_charged_to_higher_ranked_fork_only():
    # A commit shared by two forks but absent upstream belongs to the first.
    repos = _sets([["a" * 40], ["a" * 40, "f" * 40], ["a" * 40, "f" * 40]])
    result = unique_commits(repos)
    assert [r.shas() for r in result] == [{"a" * 40}, {"f" * 40}, set()]


def test_unique_origin_keeps_everything():
    repos = _sets([["1" * 40, "2" * 40]])
    assert unique_commits(repos)[0].shas() == {"1" * 40, "2" * 40}


@given(repo_families)
def test_unique_matches_pairwise_bruteforce(repos):
    result = unique_commits(_sets(repos))
    expected = oracle_unique_pairwise(repos)
    assert [r.shas() for r in result] == expected


@given(sha_lists, sha_lists)
def test_divergent_matches_pairwise_bruteforce(fork, origin):
    got = divergent_count(CommitSet.from_shas(fork), CommitSet.from_shas(origin))
    assert got == oracle_divergent_pairwise(set(fork), origin)


@given(repo_families)
def test_unique_sets_are_pairwise_disjoint(repos):
    result = unique_commits(_sets(repos))
    union: set[str] = set()
    for part in result:
        assert not (part.shas() & union)
        union |= part.shas()


@given(repo_families)
def test_unique_covers_every_commit(repos):
    result = unique_commits(_sets(repos))
    covered = set().union(*(r.shas() for r in result)) if result else set()
    everything = set().union(*(set(r) for r in repos)) if repos else set()
    assert covered == everything


@given(repo_families)
def test_unique_is_subset_of_own_commits(repos):
    result = unique_commits(_sets(repos))
    for part, repo in zip(result, repos):
        assert part.shas() <= set(repo)


@given(repo_families, st.randoms(use_true_random=False))
def test_unique_invariant_under_listing_order(repos, rng):
    baseline = [r.shas() for r in unique_commits(_sets(repos))]
    shuffled = []
    for repo in repos:
        permuted = list(repo)
        rng.shuffle(permuted)
        shuffled.append(permuted)
    assert [r.shas() for r in unique_commits(_sets(shuffled))] == baseline


@settings(deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_random_topologies_match_oracles(seed):
    """Seeded spot-check of the generator used by the acceptance suite."""
    rng = random.Random(seed)
    repos = random_topology(rng, max_repos=6, max_commits=40)
    sets = _sets(repos)
    for fork in sets[1:]:
        assert divergent_count(fork, sets[0]) == oracle_divergent_pairwise(
            fork.shas(), repos[0]
        )
    got = [u.shas() for u in unique_commits(sets)]
    assert got == oracle_unique_pairwise(repos)
