"""Adversarial instances from bit-membership queries.

Each instance encodes a bit set S and a queried index i.  The first part of
the stream depends only on S, the second only on i, and the optimum takes
one of two values depending on whether i is in S.  Any streaming algorithm
that estimates the optimum tightly enough must therefore carry enough
memory to answer arbitrary membership queries, which is why the 3/2 and 2
approximation factors of the estimators cannot be beaten in small space.
"""

from intervalstream import oracle
from intervalstream.generators import (expected_alpha_index_general,
                                       expected_alpha_index_samelen,
                                       gen_index_general, gen_index_samelen)

members = {1, 3, 4, 6}
print(f"bit set S = {sorted(members)} over 7 bits")

print("\nsame-length family (alpha is 3 iff the queried bit is set):")
for i in (1, 2, 5, 6):
    inst = gen_index_samelen(7, members, i)
    a = oracle.alpha(inst)
    assert a == expected_alpha_index_samelen(members, i)
    mark = "in S" if i in members else "not in S"
    print(f"  i = {i} ({mark:8s}): alpha = {a}, "
          f"{len(inst)} intervals, first = {inst.intervals[0]}, "
          f"last = {inst.intervals[-1]}")

print("\ngeneral family with chains of k = 3 (alpha is 2k+1 = 7 iff set, else k+1 = 4):")
for i in (3, 2):
    inst = gen_index_general(7, members, i, k=3)
    a = oracle.alpha(inst)
    assert a == expected_alpha_index_general(members, i, 3)
    mark = "in S" if i in members else "not in S"
    print(f"  i = {i} ({mark:8s}): alpha = {a}, {len(inst)} intervals "
          f"(open chains + zero-length points)")
