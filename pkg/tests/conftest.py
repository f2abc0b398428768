"""Shared test helpers: brute-force geometric predicates over the
half-integer grid, replay validators for the streaming selectors, and
seeded instance makers."""

from __future__ import annotations

import math

from intervalstream.core import Instance, Interval, Window, intersects
from intervalstream.rng import SplitMix64


def grid_codes(n: int):
    """Position codes of the half-integer grid {1, 1.5, 2, ..., n}."""
    return range(2, 2 * n + 1)


def brute_intersects(a: Interval, b: Interval, n: int) -> bool:
    return any(a.lcode <= c <= a.rcode and b.lcode <= c <= b.rcode
               for c in grid_codes(n))


def brute_contained(a: Interval, w: Window, n: int) -> bool:
    own = [c for c in grid_codes(n) if a.lcode <= c <= a.rcode]
    return all(w.lo_code <= c <= w.hi_code for c in own)


def all_intervals(n: int):
    """Every interval with endpoints in [1, n], all openness combinations."""
    out = []
    for left in range(1, n + 1):
        for right in range(left, n + 1):
            for lo in (False, True):
                for ro in (False, True):
                    if left == right and (lo or ro):
                        continue
                    out.append(Interval(left, right, lo, ro))
    return out


def recompute_leftmost(contained):
    return min(contained, key=lambda iv: (iv.rcode, -iv.lcode))


def recompute_rightmost(contained):
    return min(contained, key=lambda iv: (-iv.lcode, iv.rcode))


def validate_partition(selector, stream, n: int) -> None:
    """Check every selector invariant against a replay of the stream."""
    windows = selector.windows()
    if not stream:
        assert windows == []
        return
    assert windows, "nonempty stream must create windows"
    assert windows[0].lo_code == -math.inf
    assert windows[-1].hi_code == math.inf
    for prev, nxt in zip(windows, windows[1:]):
        assert nxt.lo_code == prev.hi_code + 1, "windows must tile the line"
    stream_set = set(stream)
    solution = selector.solution()
    assert len(solution) == len(windows)
    for i, a in enumerate(solution):
        for b in solution[i + 1:]:
            assert not intersects(a, b), f"solution overlap: {a} vs {b}"
    for w in windows:
        for witness in (w.leftmost, w.rightmost, w.chosen):
            assert witness in stream_set
            assert w.lo_code <= witness.lcode and witness.rcode <= w.hi_code
        contained = [iv for iv in stream
                     if w.lo_code <= iv.lcode and iv.rcode <= w.hi_code]
        assert contained, "every window has seen a contained interval"
        assert w.leftmost == recompute_leftmost(contained)
        assert w.rightmost == recompute_rightmost(contained)
        core_lo, core_hi = w.rightmost.lcode, w.leftmost.rcode
        assert core_lo <= core_hi, "contained intervals must share a point"
        for i, a in enumerate(contained):
            for b in contained[i + 1:]:
                assert intersects(a, b)


def random_instance(n: int, count: int, max_len: int, seed: int,
                    open_fraction: float = 0.0) -> Instance:
    """Seeded instance with optional open/half-open endpoints."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        length = rng.below(max_len + 1)
        left = rng.randrange(1, n - length) if n - length >= 1 else 1
        lo = ro = False
        if length > 0 and open_fraction > 0:
            lo = rng.below(1000) < open_fraction * 1000
            ro = rng.below(1000) < open_fraction * 1000
        out.append(Interval(left, left + length, lo, ro))
    return Instance(n, tuple(out))
