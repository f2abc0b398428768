"""One-pass 2-approximation for interval selection over arbitrary intervals.

The selector maintains a partition of the real line into windows.  Every
window has seen at least one contained interval, all intervals contained in
a window pairwise intersect, and each window carries one chosen solution
interval.  The chosen intervals of the final partition form an independent
set strictly larger than half the optimum.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import List

from .core import Code, Interval, Window, interval_subset


@dataclass
class WindowState:
    lo_code: Code
    hi_code: Code
    leftmost: Interval
    rightmost: Interval
    chosen: Interval

    @property
    def window(self) -> Window:
        return Window(self.lo_code, self.hi_code)


class PartitionSelector:
    """Streaming state machine; feed intervals with process(), read the
    solution at any point with solution()."""

    def __init__(self):
        self._keys: List[Code] = []          # window lo_codes, ascending
        self._windows: List[WindowState] = []
        self.items = 0
        self.searches = 0
        self.peak_windows = 0

    @property
    def window_count(self) -> int:
        return len(self._windows)

    def windows(self) -> List[WindowState]:
        return list(self._windows)

    def solution(self) -> List[Interval]:
        return [w.chosen for w in self._windows]

    def process(self, iv: Interval) -> None:
        self.items += 1
        if not self._windows:
            w = WindowState(-math.inf, math.inf, iv, iv, iv)
            self._windows.append(w)
            self._keys.append(w.lo_code)
            self.peak_windows = max(self.peak_windows, 1)
            return

        # locate the window holding the interval's left endpoint
        self.searches += 1
        idx = bisect_right(self._keys, iv.lcode) - 1
        w = self._windows[idx]
        if iv.rcode > w.hi_code:
            return  # spans a window boundary: contained in no window

        # [ell, r] = leftmost(W) ∩ rightmost(W), the common core of W
        ell = w.rightmost.lcode
        r = w.leftmost.rcode

        if max(ell, iv.lcode) <= min(r, iv.rcode):
            # intersects every interval contained in W: witness updates only
            if ell < iv.lcode or (ell == iv.lcode and interval_subset(iv, w.rightmost)):
                w.rightmost = iv
            if iv.rcode < r or (iv.rcode == r and interval_subset(iv, w.leftmost)):
                w.leftmost = iv
            return

        if iv.lcode > r:
            # new interval to the right of the core: split after r
            carried = w.leftmost
            w1 = WindowState(w.lo_code, r, carried, carried, carried)
            w2 = WindowState(r + 1, w.hi_code, iv, iv, iv)
        else:
            # new interval to the left of the core: split before ell
            carried = w.rightmost
            w1 = WindowState(w.lo_code, ell - 1, iv, iv, iv)
            w2 = WindowState(ell, w.hi_code, carried, carried, carried)
        self._windows[idx:idx + 1] = [w1, w2]
        self._keys[idx:idx + 1] = [w1.lo_code, w2.lo_code]
        self.peak_windows = max(self.peak_windows, len(self._windows))
