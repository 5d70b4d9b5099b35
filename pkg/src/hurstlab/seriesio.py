"""Plain-text series files: one sample per line, exact decimal round-trip.

Values are written with Python's shortest-repr float formatting, so
read(write(x)) reproduces x bit for bit.  '#' lines and blank lines are
skipped on read; the first line is a format-version comment.
"""

import os
import tempfile

import numpy as np

from .core import TimeSeries, as_samples
from .errors import TraceParseError

__all__ = ["SERIES_VERSION", "dumps_series", "loads_series", "write_series", "read_series", "atomic_write_text"]

SERIES_VERSION = "# hurstlab-series v1"


def dumps_series(x) -> str:
    arr = as_samples(x)
    lines = [SERIES_VERSION]
    lines.extend(repr(float(v)) for v in arr)
    return "\n".join(lines) + "\n"


def loads_series(text: str) -> TimeSeries:
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise TraceParseError(
                f"line {lineno}: not a number: {line!r}", line=lineno
            ) from None
    if not values:
        raise TraceParseError("series file holds no samples")
    return TimeSeries(np.array(values))


def atomic_write_text(path, text: str):
    """Write text to ``path`` via a same-directory temp file and rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".hurstlab-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_series(path, x):
    atomic_write_text(path, dumps_series(x))


def read_series(path) -> TimeSeries:
    with open(path, "r") as fh:
        return loads_series(fh.read())
