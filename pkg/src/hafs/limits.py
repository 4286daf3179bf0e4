"""Enumeration size bounds, overridable through the HAFS_MAX_U variable."""

import os

DEFAULT_LABELLING_BOUND = 16
DEFAULT_EXTENSION_BOUND = 20
DEFAULT_TERNARY_BOUND = 12

ENV_BOUND = "HAFS_MAX_U"


def universe_bound(default: int) -> int:
    raw = os.environ.get(ENV_BOUND)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENV_BOUND} must be an integer, got {raw!r}") from None
