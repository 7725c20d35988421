from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor


def map_rows[T, R](fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """
    Evaluate independent sweep rows, returning results in input order.

    With workers > 1 the rows run on a thread pool; Executor.map keeps the
    input order whatever the completion order.
    """
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="sweep") as pool:
        return list(pool.map(fn, items))
