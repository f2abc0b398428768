"""Offline ground truth: exact independent-set sizes and segment-tree counts.

Everything here is deterministic and computed with the whole instance in
memory; the streaming modules are validated against these values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Set

from .core import Instance, Interval, Window, intersects
from .selector import PartitionSelector


@dataclass(frozen=True, order=True)
class Segment:
    """Half-open segment [lo, hi) attached to one segment-tree node."""

    lo: int
    hi: int

    @property
    def lo_code(self) -> int:
        return 2 * self.lo

    @property
    def hi_code(self) -> int:
        return 2 * self.hi - 1

    @property
    def size(self) -> int:
        return self.hi - self.lo

    def contains(self, iv: Interval) -> bool:
        return self.lo_code <= iv.lcode and iv.rcode <= self.hi_code

    def contains_segment(self, other: "Segment") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def as_window(self) -> Window:
        return Window(self.lo_code, self.hi_code)

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi})"


class SegTree:
    """Implicit balanced segment tree over elementary segments [i, i+1),
    i in [1, n_pow2], with the universe rounded up to a power of two."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        self.n = n
        self.n_pow2 = 1 << max(0, (n - 1).bit_length())
        self.depth_levels = self.n_pow2.bit_length() - 1  # log2(n_pow2)
        self.root = Segment(1, self.n_pow2 + 1)

    def is_leaf(self, seg: Segment) -> bool:
        return seg.size == 1

    def children(self, seg: Segment):
        if seg.size == 1:
            raise ValueError(f"leaf segment {seg} has no children")
        mid = seg.lo + seg.size // 2
        return Segment(seg.lo, mid), Segment(mid, seg.hi)

    def parent(self, seg: Segment) -> Segment:
        if seg == self.root:
            raise ValueError("root segment has no parent")
        size2 = 2 * seg.size
        lo = 1 + ((seg.lo - 1) // size2) * size2
        return Segment(lo, lo + size2)

    def depth(self, seg: Segment) -> int:
        return self.depth_levels - (seg.size.bit_length() - 1)

    def segments(self) -> List[Segment]:
        """All 2*n_pow2 - 1 segments, parents before children."""
        out = [self.root]
        i = 0
        while i < len(out):
            seg = out[i]
            if seg.size > 1:
                out.extend(self.children(seg))
            i += 1
        return out

    def seg_id(self, seg: Segment) -> int:
        """Injective id of a tree segment [x, y) in [1, n_pow2**2]."""
        return self.n_pow2 * (seg.lo - 1) + (seg.hi - 1)

    def containing_path(self, iv: Interval) -> List[Segment]:
        """Segments containing the interval, root first (a root-to-node path).

        Empty when the interval does not fit in the root, which cannot
        happen for endpoints in [1, n].
        """
        if not self.root.contains(iv):
            return []
        path = [self.root]
        node = self.root
        while node.size > 1:
            left, right = self.children(node)
            if left.contains(iv):
                node = left
            elif right.contains(iv):
                node = right
            else:
                break
            path.append(node)
        return path

    def minimal_container(self, iv: Interval) -> Segment:
        path = self.containing_path(iv)
        if not path:
            raise ValueError(f"{iv} is outside the root segment")
        return path[-1]


def alpha(inst: Instance) -> int:
    """Exact maximum independent-subset size, by earliest-finish greedy."""
    order = sorted(inst.intervals, key=lambda iv: (iv.rcode, iv.lcode))
    count = 0
    last_rcode = -1
    for iv in order:
        if iv.lcode > last_rcode:
            count += 1
            last_rcode = iv.rcode
    return count


def brute_force_alpha(inst: Instance) -> int:
    """Exact alpha by subset enumeration; independent check on alpha()."""
    ivs = list(inst.intervals)
    n = len(ivs)
    if n > 24:
        raise ValueError(f"instance too large for enumeration: {n} > 24")
    best = 0

    def rec(i: int, chosen: List[Interval]):
        nonlocal best
        if len(chosen) + (n - i) <= best:
            return
        if i == n:
            best = max(best, len(chosen))
            return
        iv = ivs[i]
        if all(not intersects(iv, c) for c in chosen):
            chosen.append(iv)
            rec(i + 1, chosen)
            chosen.pop()
        rec(i + 1, chosen)

    rec(0, [])
    return best


def beta(inst: Instance, seg: Segment) -> int:
    """Exact alpha restricted to the intervals contained in the segment."""
    contained = [iv for iv in inst.intervals if seg.contains(iv)]
    return alpha(Instance(inst.n, contained)) if contained else 0


def beta_hat(inst: Instance, seg: Segment) -> int:
    """Size of the one-pass 2-approximation run on the intervals contained
    in the segment, in stream order."""
    sel = PartitionSelector()
    for iv in inst.intervals:
        if seg.contains(iv):
            sel.process(iv)
    return sel.window_count


def gamma(inst: Instance, seg: Segment, tree: SegTree = None) -> int:
    """Number of tree segments inside ``seg`` that contain an input interval."""
    tree = tree or SegTree(inst.n)
    count = 0
    stack = [seg]
    while stack:
        node = stack.pop()
        if any(node.contains(iv) for iv in inst.intervals):
            count += 1
        if node.size > 1:
            stack.extend(tree.children(node))
    return count


def gamma_all(inst: Instance, tree: SegTree = None) -> Dict[Segment, int]:
    """gamma for every tree segment in one bottom-up pass."""
    tree = tree or SegTree(inst.n)
    marked: Set[Segment] = set()
    for iv in inst.intervals:
        marked.add(tree.minimal_container(iv))
    gammas: Dict[Segment, int] = {}
    for seg in reversed(tree.segments()):
        if seg.size == 1:
            below = 0
        else:
            left, right = tree.children(seg)
            below = gammas[left] + gammas[right]
        # a segment contains an interval iff its subtree holds a minimal container
        holds = seg in marked or below > 0
        gammas[seg] = below + (1 if holds else 0)
    return gammas


def active_segments(inst: Instance, tree: SegTree = None) -> Set[Segment]:
    """The root plus every segment whose parent contains an input interval."""
    tree = tree or SegTree(inst.n)
    gammas = gamma_all(inst, tree)
    active = {tree.root}
    for seg in tree.segments():
        if seg.size > 1 and gammas[seg] > 0:
            left_child, right_child = tree.children(seg)
            # gamma(seg) > gamma of children combined iff seg itself holds one
            if gammas[seg] > gammas[left_child] + gammas[right_child]:
                active.add(left_child)
                active.add(right_child)
    return active


def relevance_threshold(n: int, eps: float) -> float:
    tree = SegTree(n)
    return 2.0 * tree.depth_levels ** 2 / eps


def relevant_segments(inst: Instance, eps: float, tree: SegTree = None) -> Set[Segment]:
    """Segments with small gamma whose parent's gamma meets the threshold;
    falls back to the root when no segment qualifies."""
    if not 0 < eps < 0.5:
        raise ValueError(f"eps must be in (0, 1/2), got {eps}")
    tree = tree or SegTree(inst.n)
    gammas = gamma_all(inst, tree)
    threshold = 2.0 * tree.depth_levels ** 2 / eps
    rel = set()
    for seg in tree.segments():
        if seg == tree.root:
            continue
        parent_gamma = gammas[tree.parent(seg)]
        if parent_gamma >= threshold and 1 <= gammas[seg] < threshold:
            rel.add(seg)
    if not rel:
        rel = {tree.root}
    return rel


def relevant_sum(inst: Instance, eps: float) -> int:
    """Sum of 2-approximation sizes over the relevant segments; lies in
    [(1/2 - eps) * alpha, alpha]."""
    tree = SegTree(inst.n)
    return sum(beta_hat(inst, seg) for seg in relevant_segments(inst, eps, tree))
