"""Exception types mapped to CLI exit codes."""

from __future__ import annotations

from datetime import datetime


class ForkscopeError(Exception):
    """Base for all failures this package raises on purpose."""

    exit_code = 1


class OriginNotFound(ForkscopeError):
    """The origin repository does not exist on the forge."""

    exit_code = 2

    def __init__(self, origin: str):
        super().__init__(f"origin repository not found: {origin}")
        self.origin = origin


class RateLimited(ForkscopeError):
    """The forge refused further requests until the reset instant."""

    exit_code = 3

    def __init__(self, reset_at: datetime | None = None):
        when = reset_at.isoformat() if reset_at else "unknown"
        super().__init__(
            f"forge rate limit exhausted (resets at {when}); "
            "set an API token (GITHUB_TOKEN) for a higher quota"
        )
        self.reset_at = reset_at


class OfflineCacheMiss(ForkscopeError):
    """Offline mode needs data that is not in the cache."""

    exit_code = 4

    def __init__(self, key: str):
        super().__init__(f"offline run, but cache has no entry for {key}")
        self.key = key


class PartialFetch(ForkscopeError):
    """Some repositories could not be fetched; rerun with --allow-partial to proceed."""

    exit_code = 5

    def __init__(self, failed: list[str]):
        names = ", ".join(failed)
        super().__init__(
            f"failed to fetch {len(failed)} repositories ({names}); "
            "pass --allow-partial to analyze the rest"
        )
        self.failed = list(failed)


class InvalidArtifact(ForkscopeError):
    """An artifact file violates the published schema."""

    exit_code = 2

    def __init__(self, pointer: str, reason: str):
        super().__init__(f"invalid artifact at {pointer or '<document>'}: {reason}")
        self.pointer = pointer
        self.reason = reason


class ProviderError(ForkscopeError):
    """Unexpected forge or VCS failure that is not one of the typed cases."""
