"""Packet-trace parsing and binning into uniform count/byte series.

The input format is two whitespace-separated ASCII columns per line,
``timestamp size`` (seconds, bytes), with '#' comment lines and blank
lines skipped.  Timestamps must be non-decreasing (ties allowed).  Bins
are anchored at the first record's timestamp so leading capture silence
never produces a zero prefix; the default 10 ms width is configurable.
"""

import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import TimeSeries
from .errors import InsufficientDataError, InvalidArgumentError, TraceOrderingError, TraceParseError

__all__ = [
    "PacketRecord",
    "BinValue",
    "BinningSpec",
    "parse_trace",
    "serialize_trace",
    "bin_trace",
]

TRACE_VERSION = "# hurstlab-trace v1"


@dataclass(frozen=True)
class PacketRecord:
    timestamp: float
    size: int

    def __post_init__(self):
        if not (math.isfinite(self.timestamp) and self.timestamp >= 0.0):
            raise InvalidArgumentError("timestamp must be finite and >= 0")
        if int(self.size) < 1:
            raise InvalidArgumentError("size must be >= 1 byte")


class BinValue(str, enum.Enum):
    PACKET_COUNT = "packet_count"
    BYTE_COUNT = "byte_count"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BinningSpec:
    bin_width: float = 0.01
    value: BinValue = BinValue.PACKET_COUNT

    def __post_init__(self):
        if not (math.isfinite(self.bin_width) and self.bin_width > 0.0):
            raise InvalidArgumentError("bin_width must be > 0")
        object.__setattr__(self, "value", BinValue(self.value))


def parse_trace(source) -> list:
    """Parse ``timestamp size`` lines into PacketRecords.

    ``source`` is an iterable of lines, a text blob, or a binary blob.
    Raises TraceParseError / TraceOrderingError with the 1-based line
    number on malformed or time-reversed input.
    """
    if isinstance(source, bytes):
        source = source.decode("ascii", errors="replace")
    lines: Iterable[str] = source.splitlines() if isinstance(source, str) else source
    records = []
    prev_ts = -math.inf
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise TraceParseError(
                f"line {lineno}: expected 'timestamp size', got {line!r}", line=lineno
            )
        try:
            ts = float(fields[0])
            size = int(fields[1])
        except ValueError:
            raise TraceParseError(
                f"line {lineno}: non-numeric field in {line!r}", line=lineno
            ) from None
        if not math.isfinite(ts) or ts < 0.0:
            raise TraceParseError(
                f"line {lineno}: timestamp must be finite and >= 0", line=lineno
            )
        if size < 1:
            raise TraceParseError(f"line {lineno}: size must be >= 1", line=lineno)
        if ts < prev_ts:
            raise TraceOrderingError(
                f"line {lineno}: timestamp {ts!r} decreases below {prev_ts!r}",
                line=lineno,
            )
        prev_ts = ts
        records.append(PacketRecord(ts, size))
    return records


def serialize_trace(records) -> str:
    """Inverse of parse_trace on well-formed record sequences."""
    lines = [TRACE_VERSION]
    for r in records:
        lines.append(f"{r.timestamp!r} {r.size}")
    return "\n".join(lines) + "\n"


def bin_trace(records, spec: BinningSpec = BinningSpec()) -> TimeSeries:
    """Bin records into a uniform series of per-bin packet or byte counts.

    Bin k covers [t_first + k*w, t_first + (k+1)*w); empty bins are zero.
    The series length is ceil((t_last - t_first) / w), at least 1 (a record
    landing exactly on the final boundary extends the series by one bin so
    the half-open rule, and conservation, always hold).
    """
    records = list(records)
    if not records:
        raise InsufficientDataError("no records to bin")
    ts = np.array([r.timestamp for r in records])
    t0 = float(ts[0])
    w = spec.bin_width
    idx = np.floor((ts - t0) / w).astype(np.int64)
    length = max(1, int(math.ceil((float(ts[-1]) - t0) / w)), int(idx.max()) + 1)
    weights = (
        np.ones(len(records))
        if spec.value is BinValue.PACKET_COUNT
        else np.array([float(r.size) for r in records])
    )
    series = np.bincount(idx, weights=weights, minlength=length)
    return TimeSeries(series)
