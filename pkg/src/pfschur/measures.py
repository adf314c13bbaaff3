"""Pfaffian Schur measure/process weights and brute-force oracles.

The oracles sum the literal product weights over all interlacing sequences
of partitions up to a weight cap. Row counts are pruned by the only
mechanism that kills a weight exactly: a (skew) Schur factor in k variables
vanishes when its shape has more than k rows, which caps length(lam^(i)) by
the number of variables at levels i..m. Everything downstream (kernels,
q-extraction, contour actions) is tested against these sums.
"""

from functools import lru_cache

from .partitions import contains, enumerate_up_to_weight, point_configuration
from .symfunc import (H0, Specialization, cauchy_H, schur, skew_schur, tau)


class ProcessSpec:
    """Level count m plus the specialization families rho^+_1..rho^+_m and
    rho^-_0..rho^-_{m-1}. Entries must be positive reals below 1 so that the
    weights are positive and the closed-form partition function converges."""

    def __init__(self, rho_plus, rho_minus):
        self.rho_plus = tuple(s if isinstance(s, Specialization) else Specialization(s)
                              for s in rho_plus)
        self.rho_minus = tuple(s if isinstance(s, Specialization) else Specialization(s)
                               for s in rho_minus)
        if not self.rho_plus:
            raise ValueError("need at least one level")
        if len(self.rho_minus) != len(self.rho_plus):
            raise ValueError(
                f"need m rho^- families (rho^-_0..rho^-_{{m-1}}), got "
                f"{len(self.rho_minus)} for m={len(self.rho_plus)}")
        for fam in self.rho_plus + self.rho_minus:
            for v in fam:
                if v.imag != 0 or not 0 < v.real < 1:
                    raise ValueError(f"specialization value {v} must be real in (0,1)")

    @property
    def m(self):
        return len(self.rho_plus)

    def all_values(self):
        vals = []
        for fam in self.rho_plus + self.rho_minus:
            vals.extend(fam.values)
        return vals

    def max_abs(self):
        vals = self.all_values()
        return max(abs(v) for v in vals) if vals else 0.0

    def max_abs_plus(self):
        vals = [v for fam in self.rho_plus for v in fam.values]
        return max(abs(v) for v in vals) if vals else 0.0

    def to_json(self):
        return {"rho_plus": [s.to_json() for s in self.rho_plus],
                "rho_minus": [s.to_json() for s in self.rho_minus]}

    @classmethod
    def from_json(cls, data):
        return cls([Specialization.from_json(s) for s in data["rho_plus"]],
                   [Specialization.from_json(s) for s in data["rho_minus"]])


class PointSet:
    """Points (level, position) of the configuration, positions distinct
    within each level."""

    def __init__(self, points):
        self.points = tuple((int(l), int(t)) for l, t in points)
        seen = {}
        for lvl, t in self.points:
            if lvl < 1:
                raise ValueError("levels are 1-based")
            if t in seen.setdefault(lvl, set()):
                raise ValueError(f"duplicate position {t} at level {lvl}")
            seen[lvl].add(t)

    def __len__(self):
        return len(self.points)

    def by_level(self, m):
        """Positions per level 1..m, listing order preserved."""
        out = {lvl: [] for lvl in range(1, m + 1)}
        for lvl, t in self.points:
            if lvl > m:
                raise ValueError(f"point level {lvl} exceeds process level count {m}")
            out[lvl].append(t)
        return out

    def to_json(self):
        return [[lvl, t] for lvl, t in self.points]


def process_weight(lams, mus, spec):
    """Unnormalized sequence weight: the boundary factor at level 1, the
    interlacing skew factors, and the closing Schur factor at level m.
    Invalid interlacing needs no special casing: a skew factor vanishes."""
    m = spec.m
    if len(lams) != m or len(mus) != m - 1:
        raise ValueError(f"need {m} outer and {m - 1} inner partitions")
    lams = [tuple(l) for l in lams]
    mus = [tuple(mu) for mu in mus]
    w = tau(lams[0], spec.rho_minus[0])
    for i in range(1, m):
        w *= skew_schur(lams[i - 1], mus[i - 1], spec.rho_plus[i - 1])
        w *= skew_schur(lams[i], mus[i - 1], spec.rho_minus[i])
    w *= schur(lams[m - 1], spec.rho_plus[m - 1])
    return w.real


def partition_function_closed(spec, kind="pfaffian", h0_union=True):
    """Closed-form normalization.

    kind="schur": prod over 0 <= i < j <= m of H(rho^-_i; rho^+_j).
    kind="pfaffian": the same product times the pair factor of the rho^+
    side. With h0_union=True the pair factor is H0 of the union of all
    rho^+ levels (which expands to per-level H0 factors times the
    cross-level H(rho^+_i; rho^+_j)); h0_union=False drops the cross terms,
    which the truncated-sum oracle rejects for m >= 2 (kept only so the
    adjudication report can show both numbers).
    """
    m = spec.m
    out = 1.0 + 0j
    for i in range(m):
        for j in range(i + 1, m + 1):
            out *= cauchy_H(spec.rho_minus[i], spec.rho_plus[j - 1])
    if kind == "schur":
        return out.real
    if kind != "pfaffian":
        raise ValueError("kind must be 'pfaffian' or 'schur'")
    if h0_union:
        union = Specialization(())
        for s in spec.rho_plus:
            union = union | s
        out *= H0(union)
    else:
        for s in spec.rho_plus:
            out *= H0(s)
    return out.real


def _level_row_caps(spec):
    """Row-count caps: length(lam^(i)) <= #variables at levels i..m on the
    rho^+ side (inner partitions inherit the next level's cap)."""
    m = spec.m
    sizes = [len(s) for s in spec.rho_plus]
    return [sum(sizes[i:]) for i in range(m)]


def _sequence_sum(spec, L, kind="pfaffian", level_weights=None):
    """Dynamic program over levels for sums of process weights times
    optional per-level multipliers (indicator or observable factors)."""
    m = spec.m
    caps = _level_row_caps(spec)
    if kind == "schur":
        caps = list(caps)
        caps[0] = min(caps[0], len(spec.rho_minus[0]))

    def wfactor(i, lam):
        return level_weights[i](lam) if level_weights is not None else 1.0

    h = {}
    for lam in enumerate_up_to_weight(L, caps[0]):
        base = (tau(lam, spec.rho_minus[0]) if kind == "pfaffian"
                else schur(lam, spec.rho_minus[0]))
        if base == 0:
            continue
        val = base * wfactor(0, lam)
        if val != 0:
            h[lam] = val

    for i in range(1, m):
        f = {}
        for mu in enumerate_up_to_weight(L, caps[i]):
            tot = 0j
            for lam, hv in h.items():
                if contains(lam, mu):
                    tot += hv * skew_schur(lam, mu, spec.rho_plus[i - 1])
            if tot != 0:
                f[mu] = tot
        h = {}
        for lam in enumerate_up_to_weight(L, caps[i]):
            tot = 0j
            for mu, fv in f.items():
                if contains(lam, mu):
                    tot += fv * skew_schur(lam, mu, spec.rho_minus[i])
            if tot == 0:
                continue
            val = tot * wfactor(i, lam)
            if val != 0:
                h[lam] = val

    return sum(hv * schur(lam, spec.rho_plus[m - 1]) for lam, hv in h.items())


def partition_function_truncated(spec, kind="pfaffian", L=30):
    """Weight-capped partition function; monotone nondecreasing in L."""
    if L < 0:
        raise ValueError("weight cap must be nonnegative")
    return _sequence_sum(spec, L, kind).real


def truncation_diagnostic(spec, L, kind="pfaffian"):
    """Tail indicator |S_L - S_{L-5}| / S_L; weights decay geometrically so
    this bounds the truncation error up to a modest constant."""
    s_l = partition_function_truncated(spec, kind, L)
    s_prev = partition_function_truncated(spec, kind, max(0, L - 5))
    return abs(s_l - s_prev) / abs(s_l)


def correlation_oracle(spec, T, L=30, n_terms=None):
    """Probability that every point of T lies in the level configurations,
    by truncated enumeration; the denominator is the same truncated sum."""
    if not isinstance(T, PointSet):
        T = PointSet(T)
    m = spec.m
    per_level = T.by_level(m)
    if not T.points:
        return 1.0
    if n_terms is None:
        n_terms = L + max(0, -min(t for _, t in T.points)) + 1
    targets = {lvl: set(ts) for lvl, ts in per_level.items()}

    def make_weight(lvl):
        want = targets.get(lvl + 1, set())
        if not want:
            return lambda lam: 1.0
        return lambda lam: 1.0 if want <= point_configuration(lam, n_terms) else 0.0

    weights = [make_weight(i) for i in range(m)]
    num = _sequence_sum(spec, L, "pfaffian", weights).real
    den = _sequence_sum(spec, L, "pfaffian").real
    return num / den


def observable_expectation_oracle(qs_by_level, spec, L=30, ns=None):
    """Truncated expectation of prod over levels i and their q's of
    sum_{k=1}^{n_i} q^{lam^(i)_k + n_i - k}."""
    m = spec.m
    qs_by_level = [list(map(complex, qs)) for qs in qs_by_level]
    if len(qs_by_level) != m:
        raise ValueError("need one q-list per level")
    if ns is None:
        ns = [len(s) for s in spec.rho_plus]

    def make_weight(i):
        qs, n = qs_by_level[i], ns[i]
        if not qs:
            return lambda lam: 1.0

        def w(lam):
            lamp = tuple(lam) + (0,) * max(0, n - len(lam))
            out = 1.0 + 0j
            for q in qs:
                out *= sum(q ** (lamp[k] + n - k - 1) for k in range(n))
            return out
        return w

    weights = [make_weight(i) for i in range(m)]
    num = _sequence_sum(spec, L, "pfaffian", weights)
    den = _sequence_sum(spec, L, "pfaffian").real
    return num / den
