"""Session-wide defaults."""

import os

DEFAULT_ORDER = 10


def default_order() -> int:
    """Truncation order used when a caller does not pass one.

    The QPMUT_DEFAULT_ORDER environment variable overrides the built-in
    default for the current session.
    """
    raw = os.environ.get("QPMUT_DEFAULT_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"QPMUT_DEFAULT_ORDER must be an integer, got {raw!r}") from exc
    if value < 2:
        raise ValueError("truncation order must be at least 2")
    return value
