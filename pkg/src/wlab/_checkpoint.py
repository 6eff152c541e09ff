"""Line-oriented checkpoint files for resumable sweeps.

Each line records a fully-completed prefix: ``cursor=<n>
counts=<route:tally,...>``.  The last well-formed line wins on resume.
A malformed final line is tolerated (a killed process can tear its last
write) and discarded with a warning; malformed content anywhere earlier
means the file cannot be trusted and raises CheckpointCorrupt.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from .errors import CheckpointCorrupt

ROUTES = ("prime_confirmed", "small_case", "carry_eliminated", "direct_eliminated")

_LINE_RE = re.compile(r"cursor=(\d+) counts=([a-z_]+:\d+(?:,[a-z_]+:\d+)*)")

logger = logging.getLogger(__name__)


@dataclass
class CheckpointState:
    cursor: int
    counts: dict[str, int]


def format_line(cursor: int, counts: dict[str, int]) -> str:
    body = ",".join(f"{name}:{counts.get(name, 0)}" for name in ROUTES)
    return f"cursor={cursor} counts={body}"


def parse_line(line: str) -> CheckpointState:
    """Parse one checkpoint line; raises ValueError when malformed."""
    m = _LINE_RE.fullmatch(line)
    if not m:
        raise ValueError(f"malformed checkpoint line: {line!r}")
    counts: dict[str, int] = {}
    for pair in m.group(2).split(","):
        name, _, tally = pair.partition(":")
        if name not in ROUTES:
            raise ValueError(f"unknown route {name!r} in checkpoint line")
        if name in counts:
            raise ValueError(f"duplicate route {name!r} in checkpoint line")
        counts[name] = int(tally)
    if len(counts) != len(ROUTES):
        raise ValueError("checkpoint line is missing route tallies")
    return CheckpointState(cursor=int(m.group(1)), counts=counts)


def load(path: str) -> CheckpointState | None:
    """State from the last good line, or None for a missing/empty file."""
    try:
        with open(path, encoding="utf-8", errors="replace") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        return None
    state = None
    for i, line in enumerate(lines):
        try:
            state = parse_line(line)
        except ValueError as exc:
            if i == len(lines) - 1:
                logger.warning("%s: dropping corrupt trailing line: %s", path, exc)
                break
            raise CheckpointCorrupt(f"{path}: line {i + 1}: {exc}") from exc
    return state


class Writer:
    """Appends one checkpoint line per completed prefix, flushed eagerly."""

    def __init__(self, path: str, append: bool):
        self._fh = open(path, "a" if append else "w", encoding="utf-8")

    def write(self, cursor: int, counts: dict[str, int]) -> None:
        self._fh.write(format_line(cursor, counts) + "\n")
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()
