"""Contour integrals over unions of oriented circles.

The trapezoidal rule on a circle is spectrally accurate for integrands
analytic in a neighborhood of the contour, so convergence is controlled by
node doubling: the node count doubles until two successive estimates agree.
Integrands are called on numpy arrays of nodes (elementwise expressions
written with +,*,/ and ** broadcast transparently); `integrate2` hands the
two node sets shaped (N,1) and (1,M) so a product-form integrand evaluates
as an outer product without building meshes by hand.

All integrals are normalized by 1/(2*pi*i): `integrate(f, c)` approximates
(1/(2*pi*i)) oint_c f(z) dz.
"""

from dataclasses import dataclass

import numpy as np

MAX_NODES = 2 ** 15
MAX_NODES_2D = 2 ** 13
_CHUNK = 2 ** 21  # elements per evaluation block in 2-D


class QuadratureError(RuntimeError):
    """Node doubling hit the cap without meeting tolerance. Carries the last
    two estimates for diagnosis."""

    def __init__(self, message, estimates):
        super().__init__(message)
        self.estimates = estimates


@dataclass(frozen=True)
class Circle:
    center: complex = 0j
    radius: float = 1.0
    orientation: int = 1  # +1 counterclockwise, -1 clockwise

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("circle radius must be positive")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")


@dataclass(frozen=True)
class ContourSpec:
    circles: tuple
    nodes: int = 64  # starting nodes per circle; power of two >= 8

    def __post_init__(self):
        circles = tuple(self.circles)
        if not circles:
            raise ValueError("a contour needs at least one circle")
        object.__setattr__(self, "circles", circles)
        n = self.nodes
        if n < 8 or (n & (n - 1)) != 0:
            raise ValueError("nodes per circle must be a power of two >= 8")

    def reversed(self):
        return ContourSpec(tuple(Circle(c.center, c.radius, -c.orientation)
                                 for c in self.circles), self.nodes)


def circle(radius=1.0, center=0j, orientation=1, nodes=64):
    """Single origin-or-offset circle as a ContourSpec."""
    return ContourSpec((Circle(complex(center), float(radius), orientation),), nodes)


def circles_around(points, radius, orientation=1, nodes=64):
    """Union of same-radius circles centered at the given points."""
    return ContourSpec(tuple(Circle(complex(p), float(radius), orientation)
                             for p in points), nodes)


def _nodes_weights(c: Circle, n):
    theta = 2 * np.pi * np.arange(n) / n
    z = c.center + c.radius * np.exp(1j * theta)
    # (1/2pi i) oint f dz = (1/n) sum f(z_k) (z_k - center), signed by orientation
    w = c.orientation * (z - c.center) / n
    return z, w


def _estimate1(f, contour, n):
    total = 0j
    for c in contour.circles:
        z, w = _nodes_weights(c, n)
        total += np.sum(np.asarray(f(z)) * w)
    return total


def _converged(new, old, tol):
    return abs(new - old) < tol * max(1.0, abs(new))


def integrate(f, contour, tol=1e-9, max_nodes=MAX_NODES, full_output=False):
    """(1/2pi i) oint f(z) dz over a union of oriented circles.

    Doubles the per-circle node count until successive estimates differ by
    less than tol (relative when the magnitude exceeds 1, absolute below).
    """
    n = contour.nodes
    prev = old = _estimate1(f, contour, n)
    while 2 * n <= max_nodes:
        n *= 2
        new = _estimate1(f, contour, n)
        if _converged(new, old, tol):
            if full_output:
                return new, {"nodes": n, "last_delta": abs(new - old)}
            return new
        old, prev = new, old
    raise QuadratureError(
        f"contour integral did not converge at {max_nodes} nodes/circle",
        (prev, old))


def _estimate2(f, c1, c2, n1, n2):
    total = 0j
    for ca in c1.circles:
        z, wz = _nodes_weights(ca, n1)
        for cb in c2.circles:
            w, ww = _nodes_weights(cb, n2)
            rows = max(1, _CHUNK // max(1, n2))
            for start in range(0, n1, rows):
                zc = z[start:start + rows]
                vals = np.asarray(f(zc.reshape(-1, 1), w.reshape(1, -1)))
                total += np.sum(vals * (wz[start:start + rows].reshape(-1, 1)
                                        * ww.reshape(1, -1)))
    return total


def integrate2(f, c1, c2, tol=1e-9, max_nodes=MAX_NODES_2D, full_output=False):
    """(1/2pi i)^2 double contour integral, tensor-product trapezoid rule.

    f receives node arrays shaped (N,1) and (1,M); broadcasting gives the
    value grid. Both node counts double jointly under one convergence test.
    """
    n1, n2 = c1.nodes, c2.nodes
    prev = old = _estimate2(f, c1, c2, n1, n2)
    while 2 * max(n1, n2) <= max_nodes:
        n1, n2 = 2 * n1, 2 * n2
        new = _estimate2(f, c1, c2, n1, n2)
        if _converged(new, old, tol):
            if full_output:
                return new, {"nodes": (n1, n2), "last_delta": abs(new - old)}
            return new
        old, prev = new, old
    raise QuadratureError(
        f"double contour integral did not converge at {max_nodes} nodes/circle",
        (prev, old))


def integrate_n(f, contours, tol=1e-9, max_nodes=2 ** 10, full_output=False):
    """(1/2pi i)^d iterated integral over d contours, d >= 1.

    f takes d broadcast-ready arrays (the last axis vectorized, outer axes
    looped). Joint node doubling as in integrate2; intended for small d.
    """
    d = len(contours)
    if d == 1:
        return integrate(f, contours[0], tol=tol, full_output=full_output)
    if d == 2:
        return integrate2(f, contours[0], contours[1], tol=tol, full_output=full_output)

    def estimate(n):
        def rec(level, zs, wprod):
            total = 0j
            for c in contours[level].circles:
                z, w = _nodes_weights(c, n)
                if level == d - 1:
                    vals = np.asarray(f(*zs, z))
                    total += np.sum(vals * w) * wprod
                else:
                    for zk, wk in zip(z, w):
                        total += rec(level + 1, zs + [zk], wprod * wk)
            return total
        return rec(0, [], 1.0 + 0j)

    n = max(c.nodes for c in contours)
    prev = old = estimate(n)
    while 2 * n <= max_nodes:
        n *= 2
        new = estimate(n)
        if _converged(new, old, tol):
            if full_output:
                return new, {"nodes": n, "last_delta": abs(new - old)}
            return new
        old, prev = new, old
    raise QuadratureError(
        f"{d}-fold contour integral did not converge at {max_nodes} nodes/circle",
        (prev, old))


def contour_to_dict(contour):
    return {
        "circles": [{"center": [c.center.real, c.center.imag],
                     "radius": c.radius,
                     "orientation": "+" if c.orientation == 1 else "-"}
                    for c in contour.circles],
        "nodes": contour.nodes,
    }


def contour_from_dict(data):
    circles = tuple(
        Circle(complex(c["center"][0], c["center"][1]), float(c["radius"]),
               1 if c.get("orientation", "+") == "+" else -1)
        for c in data["circles"])
    return ContourSpec(circles, int(data.get("nodes", 64)))
