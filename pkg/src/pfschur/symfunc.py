"""Numerical evaluation of symmetric functions at finite specializations.

A specialization is a finite ordered list of complex numbers. Everything here
is double-precision complex; identities are checked to tolerances, never
symbolically. Schur and skew Schur functions are Jacobi-Trudi determinants
of complete homogeneous functions; the h-tables and the (partition,
specialization) evaluations are memoized because the enumeration oracles in
`measures` hit the same cells millions of times.
"""

from functools import lru_cache
from itertools import permutations

import numpy as np

from .partitions import even_conjugate_subpartitions


class DivergenceError(ValueError):
    """An infinite product fails its |.| < 1 convergence condition."""


class Specialization:
    """Finite ordered list of complex values; hashable, immutable."""

    __slots__ = ("values",)

    def __init__(self, values=()):
        object.__setattr__(self, "values", tuple(complex(v) for v in values))

    def __setattr__(self, *a):
        raise AttributeError("Specialization is immutable")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return isinstance(other, Specialization) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"Specialization({list(self.values)!r})"

    def union(self, other):
        """Disjoint union: power sums add, so values concatenate."""
        ov = other.values if isinstance(other, Specialization) \
            else tuple(complex(v) for v in other)
        return Specialization(self.values + ov)

    __or__ = union

    def max_abs(self):
        if not self.values:
            raise ValueError("empty specialization has no max_abs")
        return max(abs(v) for v in self.values)

    def min_abs(self):
        if not self.values:
            raise ValueError("empty specialization has no min_abs")
        return min(abs(v) for v in self.values)

    def to_json(self):
        """Bare reals where the imaginary part is exactly zero, else [re, im]."""
        return [v.real if v.imag == 0 else [v.real, v.imag] for v in self.values]

    @classmethod
    def from_json(cls, data):
        vals = []
        for v in data:
            if isinstance(v, (list, tuple)):
                vals.append(complex(v[0], v[1]))
            else:
                vals.append(complex(v))
        return cls(vals)


def _values(s):
    return s.values if isinstance(s, Specialization) else tuple(complex(v) for v in s)


def power_sum(r, s):
    """p_r = sum of r-th powers; additive over disjoint unions."""
    if r < 1:
        raise ValueError("power sum index must be >= 1")
    return sum(v ** r for v in _values(s))


@lru_cache(maxsize=65536)
def _h_table(values, degree):
    """h_0..h_degree by one-variable-at-a-time geometric convolution:
    multiplying in x turns h into its running (1-xt)^{-1} convolution."""
    h = [0j] * (degree + 1)
    h[0] = 1.0 + 0j
    for x in values:
        for k in range(1, degree + 1):
            h[k] += x * h[k - 1]
    return tuple(h)


def complete_homogeneous(r, s):
    """h_r(s); h_0 = 1 and h_r = 0 for r < 0 (the Jacobi-Trudi convention)."""
    if r < 0:
        return 0j
    return _h_table(_values(s), r)[r]


def elementary(r, s):
    """e_r(s) via the coefficient of t^r in prod (1 + v t)."""
    vals = _values(s)
    if r < 0:
        return 0j
    if r > len(vals):
        return 0j
    e = [0j] * (r + 1)
    e[0] = 1.0 + 0j
    for v in vals:
        for k in range(r, 0, -1):
            e[k] += v * e[k - 1]
    return e[r]


def monomial(alpha, s):
    """Monomial symmetric polynomial: sum of x^beta over the distinct
    rearrangements beta of alpha zero-padded to len(s). Used only as an
    independent oracle, so the brute-force enumeration is intentional."""
    vals = _values(s)
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) > len(vals):
        raise ValueError("monomial exponent vector longer than the specialization")
    padded = alpha + (0,) * (len(vals) - len(alpha))
    total = 0j
    for beta in set(permutations(padded)):
        term = 1.0 + 0j
        for v, b in zip(vals, beta):
            term *= v ** b
        total += term
    return total


@lru_cache(maxsize=400000)
def _skew_schur_cached(lam, mu, values):
    ell = len(lam)
    if ell == 0:
        return 1.0 + 0j
    mu = mu + (0,) * (ell - len(mu))
    degree = lam[0] + ell  # largest h-index is lam_1 - 1 + ell
    h = _h_table(values, degree)
    M = np.empty((ell, ell), dtype=complex)
    for i in range(ell):
        for j in range(ell):
            idx = lam[i] - mu[j] - i + j
            M[i, j] = h[idx] if idx >= 0 else 0.0
    return complex(np.linalg.det(M))


def schur(lam, s):
    """Schur polynomial via the Jacobi-Trudi determinant det(h_{lam_i - i + j}).

    Vanishes (to rounding) when length(lam) > len(s)."""
    return _skew_schur_cached(tuple(lam), (), _values(s))


def skew_schur(lam, mu, s):
    """Skew Schur det(h_{lam_i - mu_j - i + j}); 0 when mu is not contained
    in lam (a negative-index column makes the determinant vanish exactly)."""
    lam, mu = tuple(lam), tuple(mu)
    if len(mu) > len(lam):
        if any(m > 0 for m in mu[len(lam):]):
            return 0j
        mu = mu[:len(lam)]
    return _skew_schur_cached(lam, mu, _values(s))


@lru_cache(maxsize=200000)
def _tau_cached(lam, values):
    return sum(_skew_schur_cached(lam, mu, values)
               for mu in even_conjugate_subpartitions(lam))


def tau(lam, s):
    """Free-boundary weight: sum of s_{lam/mu} over mu in lam with even
    conjugate."""
    return _tau_cached(tuple(lam), _values(s))


def cauchy_H(sx, sy):
    """prod_{i,j} 1/(1 - x_i y_j); the Cauchy generating factor."""
    xv, yv = _values(sx), _values(sy)
    out = 1.0 + 0j
    for x in xv:
        for y in yv:
            if abs(x * y) >= 1:
                raise DivergenceError(f"|x*y| >= 1 for pair ({x}, {y})")
            out /= (1 - x * y)
    return out


def H0(sx):
    """prod_{i<j} 1/(1 - x_i x_j): the unordered-pair factor, no diagonal."""
    xv = _values(sx)
    out = 1.0 + 0j
    for i in range(len(xv)):
        for j in range(i + 1, len(xv)):
            if abs(xv[i] * xv[j]) >= 1:
                raise DivergenceError(f"|x_i*x_j| >= 1 for pair ({xv[i]}, {xv[j]})")
            out /= (1 - xv[i] * xv[j])
    return out


def H1(s, z, q):
    """prod_i (1 - z x_i) / (1 - q z x_i)."""
    out = 1.0 + 0j
    for x in _values(s):
        den = 1 - q * z * x
        if den == 0:
            raise ValueError(f"pole: q*z*x = 1 at x = {x}")
        out *= (1 - z * x) / den
    return out


def H2(s, z, q):
    """prod_i (1 - x_i/(q z)) / (1 - x_i/z)."""
    if z == 0 or q == 0:
        raise ValueError("H2 requires z != 0 and q != 0")
    out = 1.0 + 0j
    for x in _values(s):
        den = 1 - x / z
        if den == 0:
            raise ValueError(f"pole: z = x at x = {x}")
        out *= (1 - x / (q * z)) / den
    return out


def clear_caches():
    """Drop the h-table and Schur memoization tables (for memory control in
    long randomized batteries)."""
    _h_table.cache_clear()
    _skew_schur_cached.cache_clear()
    _tau_cached.cache_clear()
