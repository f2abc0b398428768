import collections
import math
from functools import cmp_to_key

import numpy as np
import pytest

from intervalstream.hashing import (ExactDistinct, HashFamily, KMVDistinct,
                                    KWiseHash, MinSampler, MinWisePermutation,
                                    PolyBank, bulk_below, bulk_u64, next_prime)
from intervalstream.rng import SplitMix64

DRAWS = 20000


def _is_prime_slow(x: int) -> bool:
    return x > 1 and all(x % d for d in range(2, int(math.isqrt(x)) + 1))


def test_family_example():
    fam = HashFamily.create(64, 0.25)
    assert fam.prime == 2053
    assert _is_prime_slow(fam.prime)
    assert fam.prime >= 8 * 64 / 0.25
    assert fam.degree == 8


def test_family_validation_and_determinism():
    with pytest.raises(ValueError):
        HashFamily.create(64, 0.5)
    with pytest.raises(ValueError):
        HashFamily.create(0, 0.25)
    assert HashFamily.create(100, 0.1) == HashFamily.create(100, 0.1)


def test_next_prime():
    assert next_prime(2048) == 2053
    assert next_prime(2) == 2
    assert next_prime(14) == 17
    for x in (10, 100, 1000, 10_000, 1_000_000):
        assert _is_prime_slow(next_prime(x))


def test_perm_less_total_order():
    fam = HashFamily.create(16, 0.25)
    perm = MinWisePermutation(fam, SplitMix64(7))
    xs = list(range(1, 17))
    for x in xs:
        assert not perm.less(x, x)
        for y in xs:
            if x != y:
                assert perm.less(x, y) != perm.less(y, x)
    ranked = sorted(xs, key=cmp_to_key(lambda a, b: -1 if perm.less(a, b) else 1))
    assert sorted(ranked) == xs
    for a, b in zip(ranked, ranked[1:]):
        assert perm.less(a, b)


def test_min_sampler_examples():
    fam = HashFamily.create(64, 0.25)
    perm = MinWisePermutation(fam, SplitMix64(3))
    s = MinSampler(perm)
    s.observe(5)
    assert s.winner == 5
    for _ in range(5):
        s.observe(5)
    assert s.winner == 5

    rng = SplitMix64(11)
    for trial in range(25):
        xs = sorted({rng.randrange(1, 64) for _ in range(rng.randrange(1, 20))})
        perm = MinWisePermutation(fam, rng.spawn(trial))
        samp = MinSampler(perm)
        for x in xs:
            samp.observe(x)
        assert samp.winner == min(xs, key=perm.key)


def test_exact_distinct():
    c = ExactDistinct()
    assert c.estimate() == 0.0
    for x in [3, 3, 5, 9, 5]:
        c.add(x)
    assert c.estimate() == 3.0
    assert c.units == 3


def test_kmv_exact_below_saturation():
    fam = HashFamily.create(1024, 0.25)
    c = KMVDistinct(16, fam, SplitMix64(2))
    for x in list(range(1, 11)) * 3:
        c.add(x)
    assert c.estimate() == 10.0
    assert not c.saturated


def test_kmv_monte_carlo_calibration():
    # 4096 distinct ids at k = ceil(96/0.2^2): within 20% in >= 90 of 100 runs
    fam = HashFamily.create(4096, 0.2)
    k = math.ceil(96.0 / 0.2 ** 2)
    good = 0
    for seed in range(100):
        c = KMVDistinct(k, fam, SplitMix64(seed))
        for x in range(1, 4097):
            c.add(x)
        if abs(c.estimate() - 4096) <= 0.2 * 4096:
            good += 1
    assert good >= 90


def test_kwise_scalar_matches_bank_rows():
    fam = HashFamily.create(256, 0.3)
    bank = PolyBank(8, fam, seed=99)
    xs = [1, 7, 19, 250]
    values = bank.eval(xs)
    for r in range(8):
        h = bank.row_hash(r)
        for j, x in enumerate(xs):
            assert int(values[r, j]) == h(x)
            assert int(bank.keys(xs)[r, j]) == h(x) * bank.key_span + x


def test_bulk_u64_matches_scalar():
    rng = SplitMix64(1234)
    scalar = [rng.next_u64() for _ in range(20)]
    assert bulk_u64(1234, 20).tolist() == scalar
    assert bulk_u64(1234, 10, offset=10).tolist() == scalar[10:]


def test_bulk_below_bounds_and_determinism():
    a = bulk_below(5, 97, 1000)
    b = bulk_below(5, 97, 1000)
    assert (a == b).all()
    assert a.max() < 97


def minwise_frequencies(n=64, eps=0.25, x_count=16, draws=DRAWS, seed=42):
    """Empirical winner frequencies of a fixed set under independent
    permutations; shared with the acceptance suite."""
    fam = HashFamily.create(n, eps)
    xs = list(range(3, 3 + 4 * x_count, 4))
    bank = PolyBank(draws, fam, seed=seed)
    keys = bank.keys(xs)
    winners = np.asarray(xs)[keys.argmin(axis=1)]
    freq = collections.Counter(winners.tolist())
    return xs, winners.tolist(), freq


def test_minwise_statistical_bound():
    eps = 0.25
    xs, _, freq = minwise_frequencies(eps=eps)
    p0 = 1.0 / len(xs)
    sigma = math.sqrt(p0 * (1 - p0) / DRAWS)
    lo = (1 - eps) * p0 - 3 * sigma
    hi = (1 + eps) * p0 + 3 * sigma
    for x in xs:
        assert lo <= freq[x] / DRAWS <= hi, (x, freq[x] / DRAWS, lo, hi)


def test_conditional_sampling_bound():
    eps = 0.25
    xs, winners, _ = minwise_frequencies(eps=eps)
    y_set = set(xs[:4])
    conditioned = [w for w in winners if w in y_set]
    n_cond = len(conditioned)
    assert n_cond > 0
    q0 = 1.0 / len(y_set)
    sigma = math.sqrt(q0 * (1 - q0) / n_cond)
    lo = (1 - 4 * eps) * q0 - 3 * sigma
    hi = (1 + 4 * eps) * q0 + 3 * sigma
    counts = collections.Counter(conditioned)
    for y in y_set:
        assert lo <= counts[y] / n_cond <= hi


def test_pairwise_collision_rate():
    # degree-2 rows: Pr[h(x) = h(y)] = 1/p for fixed x != y
    p = 149
    c0 = bulk_below(17, p, DRAWS).astype(np.int64)
    c1 = bulk_below(18, p, DRAWS).astype(np.int64)
    x, y = 5, 131
    hx = (c0 + c1 * x) % p
    hy = (c0 + c1 * y) % p
    collisions = int((hx == hy).sum())
    expected = DRAWS / p
    sigma = math.sqrt(DRAWS * (1 / p) * (1 - 1 / p))
    assert abs(collisions - expected) <= 3 * sigma


def test_polybank_slow_path_matches_semantics():
    # force the exact-integer fallback with a deliberately huge field
    fam = HashFamily.create(10, 1e-10 if False else 0.4)
    big = HashFamily(universe=10, eps=0.4, prime=next_prime(1 << 40), degree=3)
    bank = PolyBank(4, big, seed=5)
    assert not bank.fast or big.prime ** 2 < (1 << 64)
    xs = [1, 5, 9]
    keys = bank.keys(xs)
    for r in range(4):
        h = bank.row_hash(r)
        for j, x in enumerate(xs):
            assert int(keys[r, j]) == h(x) * bank.key_span + x


def test_polybank_object_mode_forced():
    huge = HashFamily(universe=8, eps=0.3, prime=next_prime(1 << 63), degree=2)
    bank = PolyBank(3, huge, seed=1)
    assert not bank.fast
    keys = bank.keys([1, 2, 8])
    mins = keys.min(axis=1)
    assert mins.shape == (3,)
    for r in range(3):
        assert int(mins[r]) == min(bank.row_key(r, x) for x in (1, 2, 8))
