"""Edge-stream input: parsing, ordering, de-duplication and seeded RNG handles.

Edge lists are plain text, one record per line: ``u v [ts]``.  Lines starting
with ``#`` and blank lines are skipped.  The optional third token is kept as
metadata only; the arrival index ``t`` (1-based) is what the estimators use.
"""

from __future__ import annotations

import io
import os
import random
import sys
from typing import IO, Iterable, Iterator, NamedTuple


class StreamError(ValueError):
    """Base class for malformed input."""


class EdgeParseError(StreamError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class RecordRejected(StreamError):
    """Raised for records that parse but are not valid simple-graph edges."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class Edge(NamedTuple):
    u: int
    v: int
    t: int
    ts: int | None = None

    @property
    def key(self) -> tuple[int, int]:
        """Unordered endpoint pair, so Edge(u, v).key == Edge(v, u).key."""
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def make_rng(seed: int) -> random.Random:
    """Seeded generator used by every sampler.  Same seed, same draw sequence."""
    if not isinstance(seed, int):
        raise TypeError("seed must be an int")
    return random.Random(seed)


def _parse_int(tok: str, what: str, lineno: int | None) -> int:
    try:
        return int(tok)
    except ValueError:
        raise EdgeParseError(f"{what} {tok!r} is not an integer", lineno) from None


def parse_edge_line(line: str, lineno: int | None = None) -> tuple[int, int, int | None] | None:
    """Parse one edge-list line.

    Returns ``(u, v, ts)`` or ``None`` for comments and blank lines.
    """
    s = line.strip()
    if not s or s.startswith("#"):
        return None
    toks = s.split()
    if len(toks) < 2:
        raise EdgeParseError("expected at least two vertex ids", lineno)
    if len(toks) > 3:
        raise EdgeParseError(f"expected at most three tokens, got {len(toks)}", lineno)
    u = _parse_int(toks[0], "vertex id", lineno)
    v = _parse_int(toks[1], "vertex id", lineno)
    if u < 0 or v < 0:
        raise RecordRejected("vertex ids must be non-negative", lineno)
    ts = _parse_int(toks[2], "timestamp", lineno) if len(toks) == 3 else None
    if u == v:
        raise RecordRejected(f"self-loop on vertex {u}", lineno)
    return u, v, ts


def _open_text(source) -> tuple[IO[str], bool]:
    if isinstance(source, (str, os.PathLike)):
        if str(source) == "-":
            return sys.stdin, False
        return open(source, "r", encoding="utf-8"), True
    return source, False


def _records(fh: Iterable[str]) -> Iterator[tuple[int, int, int | None]]:
    for lineno, line in enumerate(fh, 1):
        rec = parse_edge_line(line, lineno)
        if rec is not None:
            yield rec


def _seekable(fh) -> bool:
    try:
        return fh.seekable()
    except (AttributeError, ValueError, io.UnsupportedOperation):
        return False


def read_stream(
    source,
    shuffle: bool = False,
    seed: int | None = None,
    sort_by_timestamp: bool = False,
) -> Iterator[Edge]:
    """Yield edges in stream order with 1-based arrival indexes.

    ``source`` is a path, ``"-"`` for stdin, or an open text handle.  With
    ``shuffle`` the whole file is read and permuted with ``make_rng(seed)``;
    with ``sort_by_timestamp`` records are stably sorted on their third token.
    Both need a bounded (seekable) source.
    """
    if shuffle and sort_by_timestamp:
        raise ValueError("shuffle and sort_by_timestamp are mutually exclusive")
    if shuffle and seed is None:
        raise ValueError("shuffle requires a seed")
    fh, owned = _open_text(source)
    try:
        if (shuffle or sort_by_timestamp) and not owned and not _seekable(fh):
            raise ValueError("shuffle/sort requested on an unbounded source")
        if shuffle or sort_by_timestamp:
            recs = list(_records(fh))
            if shuffle:
                make_rng(seed).shuffle(recs)
            else:
                if any(r[2] is None for r in recs):
                    raise StreamError("sort by timestamp needs a timestamp on every record")
                recs.sort(key=lambda r: r[2])
            for t, (u, v, ts) in enumerate(recs, 1):
                yield Edge(u, v, t, ts)
        else:
            for t, (u, v, ts) in enumerate(_records(fh), 1):
                yield Edge(u, v, t, ts)
    finally:
        if owned:
            fh.close()


def dedup_stream(src, dst) -> int:
    """Copy ``src`` to ``dst`` keeping only the first occurrence of each
    unordered pair.  Comment and blank lines pass through unchanged.

    Returns the number of records removed.
    """
    seen: set[tuple[int, int]] = set()
    removed = 0
    fin, own_in = _open_text(src)
    if isinstance(dst, (str, os.PathLike)):
        fout, own_out = open(dst, "w", encoding="utf-8", newline="\n"), True
    else:
        fout, own_out = dst, False
    try:
        for lineno, line in enumerate(fin, 1):
            rec = parse_edge_line(line, lineno)
            text = line.rstrip("\r\n")
            if rec is None:
                fout.write(text + "\n")
                continue
            k = edge_key(rec[0], rec[1])
            if k in seen:
                removed += 1
                continue
            seen.add(k)
            fout.write(text + "\n")
    finally:
        if own_in:
            fin.close()
        if own_out:
            fout.close()
    return removed


def write_edges(edges: Iterable[tuple[int, int]], dst) -> None:
    """Write ``u v`` lines, one per edge, in the given order."""
    if isinstance(dst, (str, os.PathLike)):
        with open(dst, "w", encoding="utf-8", newline="\n") as fh:
            fh.writelines(f"{u} {v}\n" for u, v in edges)
    else:
        dst.writelines(f"{u} {v}\n" for u, v in edges)
