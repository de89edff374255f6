import os
from concurrent.futures import ThreadPoolExecutor
from logging import getLogger
from typing import Callable
from typing import Final
from typing import Iterable

__all__ = ["WORKERS_ENV_VAR", "resolve_workers", "ordered_map"]

WORKERS_ENV_VAR: Final[str] = "ZONOLAB_WORKERS"


def resolve_workers(workers: int | None = None) -> int:
    """Resolves the worker count from the argument or the environment.

    Args:
        workers:
            An explicit worker count. When None, the ZONOLAB_WORKERS
            environment variable is consulted, then 1 is used.
    """
    if workers is not None:
        return max(1, int(workers))

    raw = os.getenv(WORKERS_ENV_VAR)

    if not raw:
        return 1

    try:
        return max(1, int(raw))
    except ValueError:
        getLogger(__name__).warning(
            f"Ignoring non-integer {WORKERS_ENV_VAR}={raw!r}; using 1 worker."
        )

        return 1


def ordered_map[T, R](
    func: Callable[[T], R], items: Iterable[T], workers: int | None = None
) -> list[R]:
    """Applies func to every item, returning results in submission order."""
    count = resolve_workers(workers)
    items = list(items)

    if count == 1 or len(items) <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(func, items))
