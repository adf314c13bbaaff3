import pytest

from pfschur.partitions import (check_partition, conjugate, contains,
                                enumerate_up_to_weight,
                                even_conjugate_subpartitions,
                                is_even_conjugate, partition_from_points,
                                point_configuration, subpartitions)


def euler_p(n, _cache={0: 1}):
    """Partition counts via Euler's pentagonal recurrence (test oracle)."""
    if n in _cache:
        return _cache[n]
    if n < 0:
        return 0
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        total += sign * (euler_p(n - g1) + euler_p(n - g2))
        k += 1
    _cache[n] = total
    return total


def test_check_partition():
    assert check_partition([3, 1, 0, 0]) == (3, 1)
    assert check_partition([]) == ()
    with pytest.raises(ValueError):
        check_partition([1, 2])
    with pytest.raises(ValueError):
        check_partition([2, -1])


def test_conjugate_examples():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()
    assert conjugate((2, 2)) == (2, 2)


def test_conjugate_involution_and_stats():
    for lam in enumerate_up_to_weight(12):
        assert conjugate(conjugate(lam)) == lam
        assert sum(conjugate(lam)) == sum(lam)
        if lam:
            assert len(conjugate(lam)) == lam[0]


def test_is_even_conjugate_examples():
    assert is_even_conjugate((1, 1))
    assert not is_even_conjugate((1,))
    assert is_even_conjugate((3, 3))  # conjugate (2,2,2)


def test_is_even_conjugate_matches_definition():
    for mu in enumerate_up_to_weight(12):
        by_def = all(p % 2 == 0 for p in conjugate(mu))
        assert is_even_conjugate(mu) == by_def


def test_enumeration_counts_match_euler():
    for L in (0, 2, 4, 12, 20):
        got = len(enumerate_up_to_weight(L))
        want = sum(euler_p(k) for k in range(L + 1))
        assert got == want
    assert enumerate_up_to_weight(0) == ((),)
    assert set(enumerate_up_to_weight(2)) == {(), (1,), (2,), (1, 1)}


def test_enumeration_order_is_weight_major_then_lex_descending():
    lst = enumerate_up_to_weight(4)
    weights = [sum(lam) for lam in lst]
    assert weights == sorted(weights)
    for w in range(5):
        block = [lam for lam in lst if sum(lam) == w]
        assert block == sorted(block, reverse=True)


def test_enumeration_no_duplicates_and_length_cap():
    lst = enumerate_up_to_weight(10, max_length=2)
    assert len(set(lst)) == len(lst)
    assert all(len(lam) <= 2 for lam in lst)


def test_even_conjugate_subpartitions():
    assert even_conjugate_subpartitions(()) == [()]
    assert even_conjugate_subpartitions((1,)) == [()]
    assert set(even_conjugate_subpartitions((2, 1))) == {(), (1, 1)}
    # brute-force filter agreement
    for lam in enumerate_up_to_weight(9):
        brute = {mu for mu in subpartitions(lam) if is_even_conjugate(mu)}
        fast = set(even_conjugate_subpartitions(lam))
        assert brute == fast
        assert len(even_conjugate_subpartitions(lam)) == len(fast)


def test_contains():
    assert contains((3, 1), (2, 1))
    assert not contains((3, 1), (1, 1, 1))
    assert contains((3, 1), ())


def test_point_configuration_examples():
    assert point_configuration((2,), 3) == {1, -2, -3}
    assert point_configuration((), 2) == {-1, -2}
    assert point_configuration((3, 1), 4) == {2, -1, -3, -4}


def test_point_configuration_roundtrip():
    for lam in enumerate_up_to_weight(10):
        n = max(len(lam), 1) + 2
        pts = point_configuration(lam, n)
        assert len(pts) == n  # strictly decreasing values
        assert partition_from_points(pts) == lam
