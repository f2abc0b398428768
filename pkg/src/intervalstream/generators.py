"""Instance generators: seeded uniform streams and the adversarial
bit-membership constructions whose optimum takes one of two values
depending on a single membership bit.
"""

from __future__ import annotations

from typing import Iterable, Set

from .core import Instance, Interval
from .rng import SplitMix64


def gen_uniform(n: int, count: int, max_len: int, seed: int) -> Instance:
    """Closed intervals: length uniform in [0, max_len], left endpoint
    uniform in [1, n - length]."""
    if not 1 <= max_len < n:
        raise ValueError(f"need 1 <= max_len < n, got max_len={max_len}, n={n}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    rng = SplitMix64(seed)
    intervals = []
    for _ in range(count):
        length = rng.below(max_len + 1)
        left = rng.randrange(1, n - length)
        intervals.append(Interval(left, left + length))
    return Instance(n, tuple(intervals))


def gen_uniform_samelen(n: int, count: int, length: int, seed: int) -> Instance:
    """Closed intervals of one fixed length, left endpoint uniform."""
    if not 1 <= length < n:
        raise ValueError(f"need 1 <= length < n, got length={length}, n={n}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    rng = SplitMix64(seed)
    intervals = tuple(Interval(left, left + length)
                      for left in (rng.randrange(1, n - length) for _ in range(count)))
    return Instance(n, intervals)


def _check_members(n_bits: int, members: Iterable[int], i: int) -> Set[int]:
    members = set(members)
    if n_bits < 1:
        raise ValueError(f"n_bits must be >= 1, got {n_bits}")
    if not 1 <= i <= n_bits:
        raise ValueError(f"query index {i} outside [1, {n_bits}]")
    if any(not 1 <= j <= n_bits for j in members):
        raise ValueError(f"members {sorted(members)} not within [1, {n_bits}]")
    return members


def gen_index_samelen(n_bits: int, members: Iterable[int], i: int) -> Instance:
    """Same-length hard instance: one closed length-L interval per member
    bit, then two open flanking intervals for the queried bit.  The optimum
    is 3 when the bit is set, else 2."""
    members = _check_members(n_bits, members, i)
    big = n_bits + 2
    intervals = [Interval(big + j, 2 * big + j) for j in sorted(members)]
    intervals.append(Interval(i, big + i, left_open=True, right_open=True))
    intervals.append(Interval(2 * big + i, 3 * big + i, left_open=True, right_open=True))
    return Instance(3 * big + n_bits, tuple(intervals))


def expected_alpha_index_samelen(members: Iterable[int], i: int) -> int:
    return 3 if i in set(members) else 2


def gen_index_general(n_bits: int, members: Iterable[int], i: int, k: int) -> Instance:
    """General hard instance: a chain of k open intervals per member bit,
    then k+1 zero-length closed intervals for the queried bit.  The optimum
    is 2k+1 when the bit is set, else k+1."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    members = _check_members(n_bits, members, i)
    big = n_bits + 2
    intervals = []
    for j in sorted(members):
        for t in range(k):
            intervals.append(Interval(j + t * big, j + (t + 1) * big,
                                      left_open=True, right_open=True))
    for t in range(k + 1):
        intervals.append(Interval(i + t * big, i + t * big))
    return Instance(k * big + n_bits, tuple(intervals))


def expected_alpha_index_general(members: Iterable[int], i: int, k: int) -> int:
    return 2 * k + 1 if i in set(members) else k + 1


def random_index_input(n_bits: int, seed: int):
    """A seeded (members, i) pair with each bit set with probability 1/2."""
    rng = SplitMix64(seed)
    members = {j for j in range(1, n_bits + 1) if rng.below(2) == 1}
    i = rng.randrange(1, n_bits)
    return members, i
