"""Worker-count resolution shared by the parallel code paths."""

from __future__ import annotations

import os

THREADS_ENV = "GEXTREME_THREADS"


def resolve_workers(requested: int | None = None) -> int:
    """Worker count: ``requested`` (default: CPU count), capped by ``$GEXTREME_THREADS``."""
    workers = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            workers = min(workers, int(cap))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return max(1, int(workers))
