"""Provider configuration: forge endpoint, auth, cache, concurrency, retries."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_API_BASE_URL = "https://api.github.com"
DEFAULT_TOKEN_ENV = "GITHUB_TOKEN"
PAGE_SIZE = 100


@dataclass(frozen=True, slots=True)
class RetryPolicy:
    """How often to retry and how long to wait on rate limiting."""

    max_attempts: int = 3
    backoff_base: float = 1.0
    # Never sleep longer than this waiting for a rate-limit reset; beyond it
    # we give up and surface the reset time to the user instead.
    max_rate_limit_wait: float = 300.0

    def __post_init__(self) -> None:
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")


@dataclass(frozen=True, slots=True)
class ProviderConfig:
    cache_dir: Path
    api_base_url: str = DEFAULT_API_BASE_URL
    auth_token_env: str = DEFAULT_TOKEN_ENV
    max_parallel_fetches: int = 4
    retry: RetryPolicy = field(default_factory=RetryPolicy)
    # Glob patterns restricting which files count toward added_lines;
    # None means every (text) file counts.
    source_file_filter: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.max_parallel_fetches < 1:
            raise ValueError("max_parallel_fetches must be >= 1")
        object.__setattr__(self, "cache_dir", Path(self.cache_dir))
