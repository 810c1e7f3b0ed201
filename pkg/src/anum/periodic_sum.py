"""Prefix sums of eventually periodic rational sequences in O(delay + period).

A sequence is stored as an explicit head (terms 1 .. delay) followed by a
cycle that repeats forever.  The prefix sum splits N terms into the head,
whole cycles (each contributing period * average), and a partial cycle of
corrections against the average, so the cost never depends on N.

Sequences are strictly 1-indexed here; callers whose natural index starts
at 0 shift by one at the call site.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class EventuallyPeriodicSeq:
    """1-indexed: term i is head[i-1] for i <= delay, then the cycle repeats."""

    head: tuple[Fraction, ...]
    cycle: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be non-empty")

    @property
    def delay(self) -> int:
        return len(self.head)

    @property
    def period(self) -> int:
        return len(self.cycle)

    @property
    def average(self) -> Fraction:
        return sum(self.cycle, Fraction(0)) / len(self.cycle)


def term(seq: EventuallyPeriodicSeq, i: int) -> Fraction:
    """Term i (1-indexed)."""
    if i < 1:
        raise ValueError(f"index must be >= 1, got {i}")
    if i <= seq.delay:
        return seq.head[i - 1]
    return seq.cycle[(i - seq.delay - 1) % seq.period]


def prefix_sum(seq: EventuallyPeriodicSeq, count: int) -> Fraction:
    """Sum of terms 1..count, in time independent of count."""
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if count <= seq.delay:
        return sum(seq.head[:count], Fraction(0))
    in_cycle = count - seq.delay
    avg = seq.average
    total = sum(seq.head, Fraction(0)) + in_cycle * avg
    for k in range(in_cycle % seq.period):
        total += seq.cycle[k] - avg
    return total
