"""Tick CSV ingestion and resampling onto regular intraday session grids.

Timestamps are epoch seconds (or ISO-8601 strings, read as UTC when no
offset is given). Calendar days are UTC days.
"""

import csv
import datetime as dt
import math
from dataclasses import dataclass, field
from pathlib import Path as FsPath

import numpy as np

from .errors import ConfigError, IngestionError, InsufficientDataError

DAY = 86_400


@dataclass(frozen=True)
class TickSeries:
    timestamps: np.ndarray
    prices: np.ndarray
    instrument: str = ""

    def __post_init__(self):
        ts = np.asarray(self.timestamps, dtype=np.float64)
        px = np.asarray(self.prices, dtype=np.float64)
        if ts.shape != px.shape or ts.ndim != 1:
            raise ConfigError("timestamps and prices must be 1-d arrays of equal length")
        if len(ts) > 1 and np.any(np.diff(ts) <= 0):
            raise ConfigError("timestamps must be strictly increasing")
        if np.any(~(px > 0)):
            raise ConfigError("prices must be > 0")
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "prices", px)

    def __len__(self):
        return len(self.timestamps)


def _parse_time(text):
    try:
        return float(text)
    except ValueError:
        pass
    stamp = dt.datetime.fromisoformat(text.strip().replace("Z", "+00:00"))
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=dt.timezone.utc)
    return stamp.timestamp()


def ingest_ticks(path, timestamp_col="timestamp", price_col="price", instrument=None):
    """Read a tick CSV into a validated :class:`TickSeries`.

    Raises
    ------
    IngestionError
        Listing the file line numbers of unparseable, non-positive or
        out-of-order rows.
    InsufficientDataError
        If the file has no data rows.
    """
    path = FsPath(path)
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise InsufficientDataError(f"{path}: empty file")
        missing = {timestamp_col, price_col} - set(reader.fieldnames)
        if missing:
            raise IngestionError(f"{path}: missing column(s) {sorted(missing)}")
        times, prices, bad = [], [], []
        for row in reader:
            line = reader.line_num
            try:
                t = _parse_time(row[timestamp_col])
                p = float(row[price_col])
            except (TypeError, ValueError):
                bad.append((line, "unparseable"))
                continue
            if not (math.isfinite(t) and math.isfinite(p)) or p <= 0:
                bad.append((line, "non-finite or non-positive"))
                continue
            if times and t <= times[-1]:
                bad.append((line, "out of order"))
                continue
            times.append(t)
            prices.append(p)
    if bad:
        shown = ", ".join(f"line {n} ({why})" for n, why in bad[:20])
        more = f" and {len(bad) - 20} more" if len(bad) > 20 else ""
        raise IngestionError(f"{path}: rejected rows: {shown}{more}", rows=[n for n, _ in bad])
    if not times:
        raise InsufficientDataError(f"{path}: no data rows")
    return TickSeries(np.array(times), np.array(prices), instrument or path.stem)


def _seconds(hhmm):
    if isinstance(hhmm, (int, float)):
        return float(hhmm)
    parts = [int(p) for p in str(hhmm).split(":")]
    while len(parts) < 3:
        parts.append(0)
    h, m, s = parts
    return float(h * 3600 + m * 60 + s)


@dataclass(frozen=True)
class Session:
    day: str
    timestamps: np.ndarray
    values: np.ndarray


@dataclass
class Sessionized:
    sessions: list
    dropped: list = field(default_factory=list)
    grid_points: int = 0

    @property
    def paths(self):
        return [s.values for s in self.sessions]


def sessionize(series, start="13:00", end="18:00", interval=30, min_coverage=0.95):
    """Resample each UTC day onto ``start, start + interval, ..., end``.

    Each grid point takes the last tick at or before it on the same day.
    Coverage is the fraction of grid points that have such a tick; days
    below ``min_coverage`` (or with no tick at all) are dropped and listed
    in ``dropped`` as ``(day, coverage)``. Leading grid points of a kept
    day that precede its first tick take that tick's price.
    """
    s0, s1, step = _seconds(start), _seconds(end), float(interval)
    if not 0 <= s0 < s1 <= DAY:
        raise ConfigError("session start must precede end within one day")
    if step <= 0 or (s1 - s0) % step:
        raise ConfigError("interval must divide the session length")
    if not 0 <= min_coverage <= 1:
        raise ConfigError("min_coverage must lie in [0, 1]")
    if len(series) == 0:
        raise InsufficientDataError("empty tick series")
    offsets = s0 + step * np.arange(int(round((s1 - s0) / step)) + 1)
    ts, px = series.timestamps, series.prices
    first_day = int(ts[0] // DAY)
    last_day = int(ts[-1] // DAY)
    kept, dropped = [], []
    for day in range(first_day, last_day + 1):
        day0 = day * DAY
        label = dt.datetime.fromtimestamp(day0, dt.timezone.utc).date().isoformat()
        lo = np.searchsorted(ts, day0, side="left")
        grid = day0 + offsets
        idx = np.searchsorted(ts, grid, side="right") - 1
        covered = idx >= lo
        coverage = float(covered.mean())
        if not covered.any() or coverage < min_coverage:
            dropped.append((label, coverage))
            continue
        idx = np.where(covered, idx, lo)
        kept.append(Session(label, grid, px[idx]))
    if not kept:
        raise InsufficientDataError("no session met the coverage threshold")
    return Sessionized(kept, dropped, len(offsets))


def sessions_to_csv(result, dest):
    """Long-format CSV: ``day, index, timestamp, value``."""
    with FsPath(dest).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["day", "index", "timestamp", "value"])
        for s in result.sessions:
            for i, (t, v) in enumerate(zip(s.timestamps, s.values)):
                w.writerow([s.day, i, repr(float(t)), repr(float(v))])
