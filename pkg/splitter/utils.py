import csv
import io
import os
import tempfile
from pathlib import Path
from typing import Any, Mapping, Type, TypeVar, cast

from torch import Tensor

T = TypeVar("T")

SIGNIFICANT_DIGITS = 12


class ConfigError(ValueError):
    """Invalid or unreadable configuration."""


class PreconditionError(ValueError):
    """A numerical precondition of a computation does not hold."""


def assert_type(typ: Type[T], obj: Any) -> T:
    """Assert that an object is of a given type at runtime and return it."""
    if not isinstance(obj, typ):
        raise TypeError(f"Expected {typ.__name__}, got {type(obj).__name__}")

    return cast(typ, obj)


def parse_range(text: str) -> tuple[float, float, float]:
    """Parse a `start:stop:step` range. Both endpoints are inclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"Expected a range of the form start:stop:step, got '{text}'")

    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as e:
        raise ConfigError(f"Could not parse range '{text}'") from e

    if step <= 0 or stop < start:
        raise ConfigError(f"Range '{text}' must have step > 0 and stop >= start")

    return start, stop, step


def atomic_write_text(path: Path | str, text: str):
    """Write `text` to `path` through a temporary file in the same directory.

    The destination only ever holds complete contents: either the old file or the new
    one, never a partial write.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except OSError as e:
        Path(tmp).unlink(missing_ok=True)
        raise OSError(f"Could not write '{path}': {e}") from e


def columns_to_csv(columns: Mapping[str, Tensor]) -> str:
    """Render equal-length 1-D columns as CSV text with a header row."""
    lengths = {len(col) for col in columns.values()}
    assert len(lengths) == 1, f"Columns must have equal lengths, got {lengths}"

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns.keys())

    fmt = f".{SIGNIFICANT_DIGITS}g"
    for row in zip(*(col.tolist() for col in columns.values())):
        writer.writerow(format(value, fmt) for value in row)

    return buf.getvalue()
