"""Macdonald (q,t) difference operators on functions of n variables.

`apply_direct` is the literal finite sum over r-subsets with shift operators;
it is the ground truth every contour formula here is tested against. The
contour routes need care with which poles a contour encloses:

* the one-operator action on a product-form function integrates over small
  circles around the points x_i only;
* the iterated one-row actions (several q's) additionally need, for every
  earlier variable, circles around the shift images q_k x_i of the later
  variables; without them the residues that shift the same variable twice
  are lost and the integral no longer equals the composed operator. The
  bare x-circle contour is kept as ``contour_mode="stated"`` because its
  q-power coefficients are still exactly the correlation quantities (both
  facts are pinned down in the test suite).
"""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import quadrature as quad
from .symfunc import Specialization, H0, cauchy_H, elementary, schur


class ContourConditionError(ValueError):
    """A contour-validity condition fails for the requested configuration."""


# ---------------------------------------------------------------------------
# direct action
# ---------------------------------------------------------------------------

def apply_direct(F, xs, r, q, t=None):
    """Order-r Macdonald difference operator applied to F at the point xs.

    F takes a sequence of len(xs) complex numbers. t defaults to q (the
    Schur case). Coincident points are rejected: the subset weights have
    poles at x_i = x_j.
    """
    if t is None:
        t = q
    xs = [complex(x) for x in xs]
    n = len(xs)
    if not 1 <= r <= n:
        raise ValueError(f"operator order r={r} must be in [1, n={n}]")
    for i in range(n):
        for j in range(i + 1, n):
            if xs[i] == xs[j]:
                raise ValueError("coincident points: the subset weights are singular")
    total = 0j
    for I in combinations(range(n), r):
        inside = set(I)
        w = 1.0 + 0j
        for i in I:
            for j in range(n):
                if j not in inside:
                    w *= (t * xs[i] - xs[j]) / (xs[i] - xs[j])
        shifted = list(xs)
        for i in I:
            shifted[i] = q * shifted[i]
        total += w * F(shifted)
    return q ** (r * (r - 1) // 2) * total


def eigenvalue(lam, n, r, q, t=None):
    """e_r evaluated at the spectrum (q^{lam_1} t^{n-1}, ..., q^{lam_n} t^0)."""
    if t is None:
        t = q
    lam = tuple(lam) + (0,) * (n - len(lam))
    args = [q ** lam[i] * t ** (n - 1 - i) for i in range(n)]
    return elementary(r, Specialization(args))


def eigen_residual(lam, xs, r, q, t=None):
    """Residual of the Schur eigenrelation at the point xs, relative scale
    |s_lam(xs)| + 1."""
    n = len(xs)
    if len(lam) > n:
        raise ValueError("partition has more rows than variables")
    F = lambda v: schur(lam, Specialization(v))
    lhs = apply_direct(F, xs, r, q, t)
    sval = F([complex(x) for x in xs])
    rhs = eigenvalue(lam, n, r, q, t) * sval
    return abs(lhs - rhs) / (abs(sval) + 1.0)


# ---------------------------------------------------------------------------
# product-form functions and the one-operator contour action
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductFormFunction:
    """G(X) = prod_{i<j} f(x_i x_j) * prod_i g(x_i) with numpy-friendly f, g."""
    f: callable
    g: callable

    def value(self, xs):
        xs = [complex(x) for x in xs]
        out = 1.0 + 0j
        for a in range(len(xs)):
            for b in range(a + 1, len(xs)):
                out *= complex(self.f(xs[a] * xs[b]))
            out *= complex(self.g(xs[a]))
        return out

    def __call__(self, xs):
        return self.value(xs)


def contour_radius(xs, q, shrink=0.5, avoid=()):
    """Largest safe radius for circles around the x_i, shrunk by `shrink`:
    circles pairwise disjoint, q-images of every circle outside all circles,
    and user-listed points (poles of f, g compositions) excluded."""
    xs = [complex(x) for x in xs]
    bounds = []
    for i in range(len(xs)):
        for j in range(len(xs)):
            if i != j:
                bounds.append(abs(xs[i] - xs[j]) / 2)
            # q-image of circle i must stay off circle j: |qx_i - x_j| > (|q|+1) rad
            bounds.append(abs(q * xs[i] - xs[j]) / (abs(q) + 1))
        for p in avoid:
            bounds.append(abs(complex(p) - xs[i]))
        bounds.append(abs(xs[i]))  # keep 0 outside
    rad = shrink * min(bounds)
    if rad <= 0:
        raise ContourConditionError("no positive radius satisfies the contour conditions")
    return rad


def apply_via_contour(G, xs, r, q, radius=None, tol=1e-9, nodes=64,
                      avoid=(), full_output=False):
    """Order-r action on a product-form G by the r-fold contour integral.

    The contour is the union of circles around the x_i; all r variables run
    over the same contour. Assumes t = q. f and g must accept numpy arrays.
    """
    if not isinstance(G, ProductFormFunction):
        raise TypeError("G must be a ProductFormFunction")
    xs = [complex(x) for x in xs]
    n = len(xs)
    if radius is None:
        radius = contour_radius(xs, q, avoid=avoid)
    contour = quad.circles_around(xs, radius, nodes=nodes)
    f, g = G.f, G.g

    def one_var(z):
        v = np.ones_like(z)
        for x in xs:
            v = v * (q * z - x) * f(q * z * x) / ((z - x) * f(z * x))
        return v * f(z * z) / f(q * z * z) * g(q * z) / (g(z) * z)

    if r == 1:
        integral, info = quad.integrate(one_var, contour, tol=tol, full_output=True)
    else:
        def integrand(*zs):
            v = 1.0
            for a in range(r):
                for b in range(r):
                    if a != b:
                        v = v * (zs[a] - zs[b]) / ((q * zs[a] - zs[b]) * f(q * zs[a] * zs[b]))
            for a in range(r):
                for b in range(a + 1, r):
                    v = v * f(q * q * zs[a] * zs[b]) * f(zs[a] * zs[b])
            for z in zs:
                v = v * one_var(z)
            return v
        if r == 2:
            integral, info = quad.integrate2(integrand, contour, contour,
                                             tol=tol, full_output=True)
        else:
            integral, info = quad.integrate_n(integrand, [contour] * r,
                                              tol=tol, full_output=True)

    pref = q ** (r * (r - 1) // 2) / (math.factorial(r) * (q - 1) ** r)
    value = G.value(xs) * pref * integral
    if full_output:
        info = dict(info)
        info["radius"] = radius
        return value, info
    return value


# ---------------------------------------------------------------------------
# iterated one-row actions on the two partition functions
# ---------------------------------------------------------------------------

def z_partition(xs, ys):
    """Closed-form partition function with the free-boundary factor:
    prod_{i<j} 1/(1-x_i x_j) * prod_{i,j} 1/(1-x_i y_j)."""
    sx = Specialization(xs)
    return H0(sx) * cauchy_H(sx, Specialization(ys))


def f_partition(xs, ys):
    """Closed-form two-sided partition function prod_{i,j} 1/(1-x_i y_j)."""
    return cauchy_H(Specialization(xs), Specialization(ys))


def _stated_condition_distance(qs, xs, ys):
    """Euclidean distance from the union of shifted/inverted points to the
    x_i; complex q's allowed."""
    pts = []
    for q in qs:
        for x in xs:
            pts += [q * x, x / q, 1 / (q * x)]
        for y in ys:
            pts.append(1 / (q * y))
    for x in xs:
        pts.append(1 / x)
    return min(abs(p - x) for p in pts for x in xs)


def choose_radii(qs, xs, ys, ratio=0.8, safety=0.9):
    """Decreasing radii r_1 > ... > r_d passing the stated distance checks.

    The gap D between the shifted/inverted point set and the x_i must cover
    r_1 + s; r_1 must also stay below s * (upsilon^2 and the |q|-bounds).
    Taking s = D/(1+c) maximizes r_1 = D c/(1+c). Extra caps keep circles
    pairwise disjoint, away from 0 and +-1, and inside the unit disk.
    """
    qs = [complex(q) for q in qs]
    xs = [complex(x) for x in xs]
    ys = [complex(y) for y in ys]
    d = len(qs)
    D = _stated_condition_distance(qs, xs, ys)
    if D <= 0:
        raise ContourConditionError("a shifted point coincides with an x_i")
    ups = min(min(abs(q ** e1 * x ** e2) for e1 in (1, -1) for e2 in (1, -1) for q in qs)
              for x in xs)
    ups = min(ups, min(abs(x) for x in xs))
    c = min(ups ** 2, min(min(abs(q), 1 / abs(q)) for q in qs))
    r1 = safety * D * c / (1 + c)
    # circle-validity caps beyond the stated conditions
    if len(xs) > 1:
        r1 = min(r1, 0.45 * min(abs(a - b) for i, a in enumerate(xs)
                                for b in xs[i + 1:]))
    r1 = min(r1, 0.9 * min(abs(x) for x in xs))
    r1 = min(r1, 0.45 * min(abs(x - s) for x in xs for s in (1, -1)))
    r1 = min(r1, 0.9 * (1 - max(abs(x) for x in xs)))
    if r1 <= 0:
        raise ContourConditionError("stated radius conditions admit no positive r_1")
    return [r1 * ratio ** j for j in range(d)]


def _image_centers(qs, xs):
    """Per-level circle centers for the shift-image contours: level j must
    enclose, besides the x_i, the images q_k * (level-k centers) for k > j."""
    d = len(qs)
    centers = [None] * d
    centers[d - 1] = list(xs)
    for j in range(d - 2, -1, -1):
        pts = list(xs)
        for k in range(j + 1, d):
            pts += [qs[k] * c for c in centers[k]]
        # drop duplicates from repeated q's
        uniq = []
        for p in pts:
            if all(abs(p - u) > 1e-13 for u in uniq):
                uniq.append(p)
        centers[j] = uniq
    return centers


def _locus_excluded(a, rho, c, r):
    """A pole traveling the circle (a, rho) never enters the disk (c, r):
    either the two circles are far apart or the pole circles around the disk."""
    dist = abs(a - c)
    return dist >= rho + r or rho >= dist + r


def _locus_enclosed(a, rho, c, r):
    """The pole stays inside the disk (c, r) for every position on (a, rho)."""
    return abs(a - c) + rho < r


def _validate_disks(qs, centers, radii):
    """Hard checks that each variable's circles enclose exactly the intended
    poles: per-variable circles pairwise disjoint and inside the unit disk
    away from 0, shift-image pole loci cleanly nested at earlier variables,
    and every cross pole locus (z_k/q_j, q_j z_j, z_j/q_k) excluded."""
    d = len(qs)
    for j in range(d):
        cj, rj = centers[j], radii[j]
        for a in range(len(cj)):
            if abs(cj[a]) <= rj:
                raise ContourConditionError("a contour circle encloses 0")
            if abs(cj[a]) + rj >= 1:
                raise ContourConditionError("a contour circle leaves the unit disk")
            for b in range(a + 1, len(cj)):
                if abs(cj[a] - cj[b]) <= 2 * rj:
                    raise ContourConditionError("contour circles of one variable intersect")
    for j in range(d):
        for k in range(j + 1, d):
            for ck in centers[k]:
                # pole z_j = q_k z_k: enclosed by exactly one level-j circle
                img, rimg = qs[k] * ck, abs(qs[k]) * radii[k]
                inside = sum(_locus_enclosed(img, rimg, c, radii[j])
                             for c in centers[j])
                clean = all(_locus_enclosed(img, rimg, c, radii[j])
                            or _locus_excluded(img, rimg, c, radii[j])
                            for c in centers[j])
                if inside != 1 or not clean:
                    raise ContourConditionError(
                        "a shift-image pole is not cleanly enclosed at an earlier variable")
                # pole z_j = z_k / q_j: excluded from level j
                if not all(_locus_excluded(ck / qs[j], radii[k] / abs(qs[j]),
                                           c, radii[j]) for c in centers[j]):
                    raise ContourConditionError("a z_k/q_j pole reaches an earlier variable")
            for cj in centers[j]:
                # poles z_k = q_j z_j and z_k = z_j / q_k: excluded from level k
                for p, rp in ((qs[j] * cj, abs(qs[j]) * radii[j]),
                              (cj / qs[k], radii[j] / abs(qs[k]))):
                    if not all(_locus_excluded(p, rp, c, radii[k])
                               for c in centers[k]):
                        raise ContourConditionError(
                            "an earlier-variable pole reaches a later variable")


def _iterated_integrand(zs, qs, xs, ys, with_boundary):
    """Integrand of the d-fold action; with_boundary toggles the extra
    factors of the free-boundary partition function."""
    d = len(zs)
    v = 1.0
    for j in range(d):
        zj, qj = zs[j], qs[j]
        v = v / ((qj - 1.0) * zj)
        for x in xs:
            v = v * (qj * zj - x) / (zj - x)
        for y in ys:
            v = v * (1 - zj * y) / (1 - qj * zj * y)
        if with_boundary:
            for x in xs:
                v = v * (1 - zj * x) / (1 - qj * zj * x)
            v = v * (1 - qj * zj * zj) / (1 - zj * zj)
    for j in range(d):
        for k in range(j + 1, d):
            zj, zk, qj, qk = zs[j], zs[k], qs[j], qs[k]
            v = v * (qj * zj - qk * zk) * (zj - zk) / ((zj - qk * zk) * (qj * zj - zk))
            if with_boundary:
                v = v * (1 - qk * zk * zj) * (1 - qj * zj * zk) \
                    / ((1 - qj * qk * zj * zk) * (1 - zj * zk))
    return v


def _iterated_action(qs, X, Y, with_boundary, radii, tol, nodes, contour_mode):
    qs = [complex(q) for q in qs]
    xs = [complex(x) for x in X]
    ys = [complex(y) for y in Y]
    d = len(qs)
    if d == 0:
        return z_partition(xs, ys) if with_boundary else f_partition(xs, ys)
    if radii is None:
        radii = choose_radii(qs, xs, ys)
    if len(radii) != d or any(radii[i] <= radii[i + 1] for i in range(d - 1)):
        raise ContourConditionError("radii must strictly decrease, one per operator")
    # stated distance check (hard error per the contract)
    D = _stated_condition_distance(qs, xs, ys)
    if D <= radii[0]:
        raise ContourConditionError(
            f"distance condition fails: gap {D:.3g} <= r_1 {radii[0]:.3g}")

    if contour_mode == "shift_images":
        centers = _image_centers(qs, xs)
        if d > 1:
            _validate_disks(qs, centers, radii)
    elif contour_mode == "stated":
        centers = [list(xs)] * d
    else:
        raise ValueError("contour_mode must be 'shift_images' or 'stated'")

    contours = [quad.circles_around(centers[j], radii[j], nodes=nodes)
                for j in range(d)]
    f = lambda *zs: _iterated_integrand(list(zs), qs, xs, ys, with_boundary)
    if d == 1:
        integral = quad.integrate(f, contours[0], tol=tol)
    elif d == 2:
        integral = quad.integrate2(f, contours[0], contours[1], tol=tol)
    else:
        integral = quad.integrate_n(f, contours, tol=tol)
    base = z_partition(xs, ys) if with_boundary else f_partition(xs, ys)
    return base * integral


def iterated_action_Z(qs, X, Y, radii=None, tol=1e-9, nodes=64,
                      contour_mode="shift_images"):
    """d-fold one-row action on the free-boundary partition function Z(X;Y).

    Returns the operator value (not divided by Z). With the default
    shift-image contours this equals the composition of the d direct
    actions; the "stated" contour keeps bare x-circles only, whose
    q-coefficients are still the correlation quantities.
    """
    return _iterated_action(qs, X, Y, True, radii, tol, nodes, contour_mode)


def iterated_action_F(qs, X, Y, radii=None, tol=1e-9, nodes=64,
                      contour_mode="shift_images"):
    """d-fold one-row action on the two-sided partition function F(X;Y)."""
    return _iterated_action(qs, X, Y, False, radii, tol, nodes, contour_mode)
