import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, Tuple, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


def split_range(total: int, parts: int) -> List[Tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous, non-empty ranges."""
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0)
        if stop > start:
            ranges.append((start, stop))
        start = stop
    return ranges


def run_tasks(func: Callable[..., T], tasks: Sequence[tuple], jobs: int = 1) -> List[T]:
    """
    Apply func to every argument tuple, in order. With jobs > 1 the tasks run
    in a process pool; results keep the task order either way.
    """
    if jobs <= 1 or len(tasks) <= 1:
        return [func(*args) for args in tasks]
    logger.info("Running %d tasks on %d worker processes", len(tasks), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(func, *args) for args in tasks]
        return [f.result() for f in futures]
