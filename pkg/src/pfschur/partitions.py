"""Integer partitions as plain tuples of weakly decreasing positive ints.

The empty partition is ``()``. Trailing zeros are never stored, so equality
of tuples is equality of partitions. All functions are pure.
"""

from functools import lru_cache


def check_partition(parts):
    """Normalize an iterable into a partition tuple, dropping trailing zeros.

    Raises ValueError if the entries are not weakly decreasing nonnegative
    integers.
    """
    t = tuple(int(p) for p in parts)
    while t and t[-1] == 0:
        t = t[:-1]
    if any(p <= 0 for p in t):
        raise ValueError(f"partition parts must be positive: {parts!r}")
    if any(t[i] < t[i + 1] for i in range(len(t) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {parts!r}")
    return t


def weight(lam):
    return sum(lam)


def conjugate(lam):
    """Transpose of the Young diagram: row i of the result counts parts >= i+1."""
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1))


def is_even_conjugate(mu):
    """True iff every column length of mu is even, i.e. rows pair up:
    mu_1 = mu_2, mu_3 = mu_4, ... (zero-padded past the last part)."""
    padded = mu + (0,) if len(mu) % 2 else mu
    return all(padded[i] == padded[i + 1] for i in range(0, len(padded), 2))


def contains(lam, mu):
    """Containment of Young diagrams: mu_i <= lam_i for all i."""
    if len(mu) > len(lam):
        return False
    return all(mu[i] <= lam[i] for i in range(len(mu)))


@lru_cache(maxsize=None)
def enumerate_up_to_weight(L, max_length=None):
    """All partitions of weight <= L, weight-major then lexicographically
    descending within a weight. Optional max_length prunes by row count."""
    if L < 0:
        raise ValueError("weight cap must be nonnegative")
    out = [()]

    def rec(prefix, maxpart, rem):
        for p in range(min(maxpart, rem), 0, -1):
            new = prefix + (p,)
            out.append(new)
            if max_length is None or len(new) < max_length:
                rec(new, p, rem - p)

    if max_length != 0:
        rec((), L, L)
    return tuple(sorted(out, key=lambda t: (sum(t), tuple(-x for x in t))))


def subpartitions(lam):
    """All mu contained in lam, each exactly once."""
    out = []

    def rec(prefix, i, prev):
        out.append(tuple(prefix))
        if i < len(lam):
            for p in range(min(prev, lam[i]), 0, -1):
                rec(prefix + [p], i + 1, p)

    rec([], 0, lam[0] if lam else 0)
    return out


def even_conjugate_subpartitions(lam):
    """All mu contained in lam with even conjugate.

    Such mu have the form (a_1,a_1,a_2,a_2,...) with a_1 >= a_2 >= ...;
    containment in lam reduces to a_k <= lam_{2k} (0-indexed lam[2k-1]).
    """
    out = []

    def rec(prefix, k, prev):
        out.append(tuple(prefix))
        if 2 * k + 1 < len(lam):
            for a in range(min(prev, lam[2 * k + 1]), 0, -1):
                rec(prefix + [a, a], k + 1, a)

    rec([], 0, lam[0] if lam else 0)
    return out


def point_configuration(lam, n):
    """The shifted coordinates {lam_i - i : 1 <= i <= n}, lam_i = 0 past the
    stored parts. Strictly decreasing, hence n distinct integers."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return {(lam[i] if i < len(lam) else 0) - (i + 1) for i in range(n)}


def partition_from_points(points):
    """Invert point_configuration: recover the partition from {lam_i - i}.

    The points must be the full configuration for some n >= length(lam).
    """
    vals = sorted(points, reverse=True)
    lam = tuple(v + i + 1 for i, v in enumerate(vals))
    return check_partition(lam)
