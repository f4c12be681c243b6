import concurrent.futures
import csv
import io
import pathlib
from typing import Any, Callable, Iterable, Sequence, TypeVar

import numpy as np


def write_file(path: str | pathlib.Path | io.IOBase, content: Any):
    if isinstance(path, io.IOBase):
        path.write(content)
        return
    pathlib.Path(path).parent.mkdir(parents=True, exist_ok=True)
    text = str(content)
    with open(path, "w") as f:
        f.write(text if text.endswith("\n") else text + "\n")
    print(f"wrote file://{pathlib.Path(path).absolute()}")


def format_value(value: Any) -> str:
    """Renders a table cell. Floats keep every significant digit."""
    if value is None:
        return ""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def csv_text(fieldnames: Sequence[str], rows: Iterable[dict[str, Any]]) -> str:
    """Renders rows as CSV text with a header line and '\\n' line endings.

    Missing cells are written empty.
    """
    buf = io.StringIO(newline="")
    w = csv.DictWriter(buf, fieldnames=list(fieldnames), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: format_value(row.get(k)) for k in fieldnames})
    return buf.getvalue()


TItem = TypeVar("TItem")
TResult = TypeVar("TResult")


def parallel_map(
    func: Callable[[TItem], TResult],
    items: Sequence[TItem],
    *,
    workers: int = 1,
    on_result: Callable[[int, TResult], None] | None = None,
) -> list[TResult]:
    """Applies `func` to every item, in worker processes when workers > 1.

    Results come back in the order of `items` regardless of completion order.
    `on_result(index, result)` is called in the calling process as each item
    finishes, which is where progress gets reported.
    """
    if workers < 1:
        raise ValueError(f"not ({workers=} >= 1)")
    results: list[Any] = [None] * len(items)
    if workers == 1 or len(items) <= 1:
        for k, item in enumerate(items):
            results[k] = func(item)
            if on_result is not None:
                on_result(k, results[k])
        return results

    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(func, item): k for k, item in enumerate(items)}
        for future in concurrent.futures.as_completed(futures):
            k = futures[future]
            results[k] = future.result()
            if on_result is not None:
                on_result(k, results[k])
    return results
