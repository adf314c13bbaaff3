"""Double-contour Pfaffian correlation kernels.

Each configuration point (i, t) owns two slots of the skew matrix. The
kernel entry pairing two slots is a double contour integral over
origin-centered circles whose integrand factorizes into a coupling term, a
per-slot rational factor built from the specializations of the slot's own
level, and the powers z^{-t}:

* both slots "outer" (radius in (1, 1/max|rho^+|), NOT enclosing the
  1/x poles): the K11 entry;
* both slots "inner" (radius below 1): K22, whose coupling carries the
  (zw - 1) sign this whole lab exists to adjudicate;
* mixed: K12, where the only subtlety is which side of the zw = 1 pole the
  inner radius sits on: strictly-earlier levels (i < j) keep it outside
  (|zw| < 1), same or later levels pull it inside (|zw| > 1). K21 is the
  skew partner -K12 with swapped block indices.

Every convention here (signs, the strict dichotomy, the per-slot level
assignment of the rational factors) was fixed by agreement with the
brute-force oracle; the alternatives remain selectable so the compare and
sweep reports can show them failing.
"""

from dataclasses import dataclass, field

import numpy as np

from . import quadrature as quad
from .macdonald import iterated_action_Z, z_partition, ContourConditionError
from .measures import PointSet, ProcessSpec
from .pfaffian import SkewMatrix, pfaffian, schur_pfaffian_matrix
from .symfunc import Specialization

SIGN_PAPER = "paper_zw_minus_1"
SIGN_BR = "borodin_rains_1_minus_zw"


class KernelAssemblyError(RuntimeError):
    """Assembled matrix is too far from skew-symmetric: bad contours."""


@dataclass
class KernelConfig:
    quad_tol: float = 1e-8
    start_nodes: int = 64
    max_nodes: int = quad.MAX_NODES_2D
    sign_convention: str = SIGN_PAPER
    h_assignment: str = "slot"      # "display" reproduces the misprinted pairing
    k12_regime: str = "strict"      # "literal" groups i == j with |zw| < 1
    radii: dict = field(default_factory=dict)

    def validate(self):
        if self.sign_convention not in (SIGN_PAPER, SIGN_BR):
            raise ValueError(f"unknown sign convention {self.sign_convention!r}")
        if self.h_assignment not in ("slot", "display"):
            raise ValueError(f"unknown h_assignment {self.h_assignment!r}")
        if self.k12_regime not in ("strict", "literal"):
            raise ValueError(f"unknown k12_regime {self.k12_regime!r}")
        if self.quad_tol <= 0:
            raise ValueError("quad_tol must be positive")


def default_radii(spec):
    """Admissible-interval midpoints for the four circle families.

    k11 (outer slots) must exceed 1 but stay below every 1/x pole of the
    rho^+ values; k22 (inner slots) sits between the values and 1; the two
    k12 inner radii realize |zw| < 1 and |zw| > 1 against k11.
    """
    mx_plus = spec.max_abs_plus()
    mx_all = spec.max_abs()
    if mx_plus >= 1:
        raise ValueError("specialization values must lie below 1")
    r11 = (1 + 1 / mx_plus) / 2
    return {
        "k11": r11,
        "k12_w_lt": (mx_plus + 1 / r11) / 2,
        "k12_w_gt": (1 / r11 + 1 / mx_all) / 2,
        "k22": (mx_all + 1) / 2,
    }


def _resolved_radii(spec, cfg):
    radii = default_radii(spec)
    radii.update(cfg.radii or {})
    mx_plus = spec.max_abs_plus()
    r11 = radii["k11"]
    checks = [
        (r11 > 1, "k11 radius must exceed 1"),
        (0 < radii["k22"] < 1, "k22 radius must lie in (0,1)"),
        (0 < radii["k12_w_lt"] * r11 < 1, "k12_w_lt must realize |zw| < 1"),
        (radii["k12_w_gt"] * r11 > 1, "k12_w_gt must realize |zw| > 1"),
        (radii["k12_w_gt"] * mx_plus < 1, "k12_w_gt must exclude the 1/x poles"),
    ]
    for ok, msg in checks:
        if not ok:
            raise ValueError(f"inadmissible kernel radii: {msg}")
    return radii


def _slot_values(spec):
    """Per-level value tuples for the two slot factors."""
    m = spec.m
    plus_all = tuple(v for s in spec.rho_plus for v in s.values)
    num1, den1, num2, den2 = {}, {}, {}, {}
    for lvl in range(1, m + 1):
        tail = tuple(v for s in spec.rho_plus[lvl - 1:] for v in s.values)
        minus_below = tuple(v for s in spec.rho_minus[:lvl] for v in s.values)
        num1[lvl] = plus_all + minus_below
        den1[lvl] = tail
        num2[lvl] = tail
        den2[lvl] = plus_all + minus_below
    return num1, den1, num2, den2


def _rational(z, nums, dens):
    v = np.ones_like(z)
    for zeta in nums:
        v = v * (1 - zeta / z)
    for zeta in dens:
        v = v / (1 - zeta * z)
    return v


def _entry_integral(kind, ti, tj, fz, fw, rz, rw, cfg, sign=1.0):
    """Shared quadrature driver; kind selects the coupling prefactor."""
    if kind == "K11":
        def f(z, w):
            return (sign * (z - w) / ((z * z - 1) * (w * w - 1) * (z * w - 1))
                    * fz(z) * fw(w) * z ** (-ti) * w ** (-tj))
    elif kind == "K12":
        def f(z, w):
            return (sign * (z - w) / (w * (z * z - 1) * (z * w - 1))
                    * fz(z) * fw(w) * z ** (-ti) * w ** (-tj))
    elif kind == "K22":
        def f(z, w):
            return (sign * (z - w) / (z * w * (z * w - 1))
                    * fz(z) * fw(w) * z ** (-ti) * w ** (-tj))
    else:
        raise ValueError(kind)
    cz = quad.circle(rz, nodes=cfg.start_nodes)
    cw = quad.circle(rw, nodes=cfg.start_nodes)
    return quad.integrate2(f, cz, cw, tol=cfg.quad_tol,
                           max_nodes=cfg.max_nodes, full_output=True)


def kernel_entry_process(which, i, u, j, v, spec, T, cfg=None, full_output=False):
    """One 2x2-block entry of the process kernel for points (i, u) and (j, v),
    where u, v index the positions listed at levels i and j (1-based)."""
    cfg = cfg or KernelConfig()
    cfg.validate()
    if not isinstance(T, PointSet):
        T = PointSet(T)
    per_level = T.by_level(spec.m)
    ti = per_level[i][u - 1]
    tj = per_level[j][v - 1]
    value, info = _kernel_entry(which, i, ti, j, tj, spec, cfg)
    return (value, info) if full_output else value


def _kernel_entry(which, i, ti, j, tj, spec, cfg):
    radii = _resolved_radii(spec, cfg)
    num1, den1, num2, den2 = _slot_values(spec)
    if which == "K21":
        value, info = _kernel_entry("K12", j, tj, i, ti, spec, cfg)
        return -value, info
    if which == "K11":
        fz = lambda z: _rational(z, num1[i], den1[i])
        fw = lambda w: _rational(w, num1[j], den1[j])
        value, info = _entry_integral("K11", ti, tj, fz, fw,
                                      radii["k11"], radii["k11"], cfg)
    elif which == "K22":
        sign = 1.0 if cfg.sign_convention == SIGN_PAPER else -1.0
        fz = lambda z: _rational(z, num2[i], den2[i])
        fw = lambda w: _rational(w, num2[j], den2[j])
        value, info = _entry_integral("K22", ti, tj, fz, fw,
                                      radii["k22"], radii["k22"], cfg, sign)
    elif which == "K12":
        lt = (i < j) if cfg.k12_regime == "strict" else (i <= j)
        rw = radii["k12_w_lt"] if lt else radii["k12_w_gt"]
        a, b = (i, j) if cfg.h_assignment == "slot" else (j, i)
        fz = lambda z: _rational(z, num1[a], den1[a])
        fw = lambda w: _rational(w, num2[b], den2[b])
        value, info = _entry_integral("K12", ti, tj, fz, fw,
                                      radii["k11"], rw, cfg)
    else:
        raise ValueError(f"unknown kernel block {which!r}")
    return value, info


def kernel_entry_single(which, k, l, X, Y, T, cfg=None, full_output=False):
    """Single-partition kernel entry for points t_k, t_l of T (1-based k, l).

    Wraps the process kernel at m = 1 with rho^+ = X, rho^- = Y. The
    Pfaffian representation is derived under n = |X| = |Y| > max(d, d - min T);
    violations are reported in the info dict, not rejected, because the
    kernel route remains numerically exact beyond that bound.
    """
    cfg = cfg or KernelConfig()
    X = X if isinstance(X, Specialization) else Specialization(X)
    Y = Y if isinstance(Y, Specialization) else Specialization(Y)
    if len(X) != len(Y):
        raise ValueError("the single-partition kernel expects |X| = |Y|")
    spec = ProcessSpec([X], [Y])
    T = [int(t) for t in T]
    pts = PointSet([(1, t) for t in T])
    value, info = kernel_entry_process(which, 1, k, 1, l, spec, pts, cfg,
                                       full_output=True)
    n, d = len(X), len(T)
    if n <= max(d, d - min(T)):
        info = dict(info)
        info["hypothesis_warning"] = (
            f"n={n} <= max(d, d - min T)={max(d, d - min(T))}")
    return (value, info) if full_output else value


def assemble_kernel(spec, T, cfg=None, full_output=False):
    """The 2d x 2d skew matrix over the points of T, ordered level-major with
    listing order within a level. All entries computed independently; the
    skew projection defect is the quadrature-consistency diagnostic and
    aborts assembly when it exceeds 100x the quadrature tolerance."""
    cfg = cfg or KernelConfig()
    cfg.validate()
    if not isinstance(T, PointSet):
        T = PointSet(T)
    per_level = T.by_level(spec.m)
    pts = [(lvl, t) for lvl in range(1, spec.m + 1) for t in per_level[lvl]]
    d = len(pts)
    K = np.zeros((2 * d, 2 * d), dtype=complex)
    nodes = {}
    for p, (i, ti) in enumerate(pts):
        for q_, (j, tj) in enumerate(pts):
            for which, (ro, co) in (("K11", (0, 0)), ("K12", (0, 1)),
                                    ("K21", (1, 0)), ("K22", (1, 1))):
                value, info = _kernel_entry(which, i, ti, j, tj, spec, cfg)
                K[2 * p + ro, 2 * q_ + co] = value
                nodes[f"{which}[{p},{q_}]"] = info["nodes"]
    S = SkewMatrix(K)
    if S.defect > 100 * cfg.quad_tol:
        raise KernelAssemblyError(
            f"skew defect {S.defect:.3g} exceeds 100 x quad_tol; "
            "contours are likely inadmissible")
    if full_output:
        return S, {"points": pts, "nodes": nodes, "defect": S.defect}
    return S


def correlation_via_kernel(spec, T, cfg=None, full_output=False):
    """Pfaffian of the assembled kernel; the imaginary part is pure
    quadrature noise and is reported alongside."""
    cfg = cfg or KernelConfig()
    if not isinstance(T, PointSet):
        T = PointSet(T)
    if not T.points:
        return (1.0, {"imag_defect": 0.0, "defect": 0.0}) if full_output else 1.0
    S, info = assemble_kernel(spec, T, cfg, full_output=True)
    pf = pfaffian(S)
    out = {"imag_defect": abs(pf.imag), "defect": info["defect"],
           "nodes": info["nodes"]}
    return (pf.real, out) if full_output else pf.real


# ---------------------------------------------------------------------------
# q-coefficient extraction route (single partition, d <= 2)
# ---------------------------------------------------------------------------

def _extraction_radii(rq, xs, ys, d):
    """Uniform z-circle radii valid for every q on the circle |q| = rq.

    For positive real data the closest approach of a shifted point to an x_k
    happens at real positive q, so the distance minima reduce to modulus
    arithmetic.
    """
    mods = []
    for x in xs:
        mods += [rq * x, x / rq, 1 / (rq * x), 1 / x]
    for y in ys:
        mods.append(1 / (rq * y))
    D = min(abs(m - x) for m in mods for x in xs)
    ups = min(min(rq * x, x / rq, rq / x, 1 / (rq * x), x) for x in xs)
    c = min(ups * ups, rq)
    r1 = 0.9 * D * c / (1 + c)
    if len(xs) > 1:
        r1 = min(r1, 0.45 * min(abs(a - b) for i, a in enumerate(xs)
                                for b in xs[i + 1:]))
    r1 = min(r1, 0.9 * min(xs), 0.45 * min(abs(x - 1) for x in xs),
             0.9 * (1 - max(xs)))
    if r1 <= 0:
        raise ContourConditionError(f"no admissible z-radii for rq={rq}")
    return [r1 * 0.8 ** k for k in range(d)]


def _pick_rq(xs, ys, d):
    """Scan a small grid of q-circle radii and keep the one with the widest
    contour margins."""
    best, best_r1 = None, -1.0
    for rq in (0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8):
        try:
            radii = _extraction_radii(rq, xs, ys, d)
        except ContourConditionError:
            continue
        if radii[0] > best_r1:
            best, best_r1 = rq, radii[0]
    if best is None:
        raise ContourConditionError("no q-circle radius admits valid contours")
    return best


def correlation_via_q_extraction(X, Y, T, cfg=None, rq=None, full_output=False):
    """Single-partition correlation as the q-power coefficient of the
    iterated one-row action, extracted by quadrature over q-circles.

    Sites below -n are occupied with probability one and are stripped before
    extraction (the coefficient reading is only valid for t >= -n). Cost is
    exponential in d; d <= 2 is supported.
    """
    cfg = cfg or KernelConfig()
    X = X if isinstance(X, Specialization) else Specialization(X)
    Y = Y if isinstance(Y, Specialization) else Specialization(Y)
    if len(X) != len(Y):
        raise ValueError("q-extraction expects |X| = |Y|")
    xs = [v.real for v in X.values]
    ys = [v.real for v in Y.values]
    n = len(xs)
    T_all = [int(t) for t in T]
    T_eff = [t for t in T_all if t >= -n]
    if len(set(T_eff)) != len(T_eff):
        raise ValueError("positions must be distinct")
    d = len(T_eff)
    info = {"stripped_deterministic": sorted(set(T_all) - set(T_eff))}
    if d == 0:
        return (1.0, info) if full_output else 1.0
    if d > 2:
        raise ValueError("q-extraction is quadratically expensive; d <= 2 only")
    if rq is None:
        rq = _pick_rq(xs, ys, d)
    radii = _extraction_radii(rq, xs, ys, d)
    Z0 = z_partition(xs, ys)
    inner_tol = max(cfg.quad_tol, 1e-10)

    def E(qs):
        val = iterated_action_Z(qs, xs, ys, radii=radii, tol=inner_tol,
                                nodes=cfg.start_nodes, contour_mode="stated")
        return val / Z0

    qc = quad.circle(rq, nodes=max(32, cfg.start_nodes // 2))
    if d == 1:
        t = T_eff[0]

        def f(qarr):
            flat = np.asarray(qarr).ravel()
            vals = np.array([E([q]) * q ** (-t - n - 1) for q in flat])
            return vals.reshape(np.shape(qarr))

        value = quad.integrate(f, qc, tol=max(cfg.quad_tol, 1e-9))
    else:
        t1, t2 = T_eff
        cache = {}

        def Epair(q1, q2):
            key = tuple(sorted(((q1.real, q1.imag), (q2.real, q2.imag))))
            if key not in cache:
                cache[key] = E([q1, q2])
            return cache[key]

        def f(qa, qb):
            qa = np.asarray(qa) + 0j
            qb = np.asarray(qb) + 0j
            out = np.empty(np.broadcast(qa, qb).shape, dtype=complex)
            qa_b, qb_b = np.broadcast_arrays(qa, qb)
            for idx in np.ndindex(out.shape):
                q1, q2 = complex(qa_b[idx]), complex(qb_b[idx])
                out[idx] = (Epair(q1, q2)
                            * q1 ** (-t1 - n - 1) * q2 ** (-t2 - n - 1))
            return out

        value = quad.integrate2(f, qc, qc, tol=max(cfg.quad_tol, 1e-7))
    info["imag_defect"] = abs(value.imag)
    info["rq"] = rq
    return (value.real, info) if full_output else value.real


def verify_principal_pfaffian_factorization(qs, zs):
    """Residual between the coupling-product prefactor and the Pfaffian of
    its skew matrix under the interleaving substitution u = (z_1, 1/(q_1 z_1),
    z_2, ...)."""
    qs = [complex(q) for q in qs]
    zs = [complex(z) for z in zs]
    if len(qs) != len(zs):
        raise ValueError("need matching q and z lists")
    d = len(qs)
    prod = 1.0 + 0j
    for j in range(d):
        den = zs[j] - qs[j] * zs[j]
        if den == 0:
            raise ValueError("q_j = 1 makes the diagonal coupling singular")
        prod *= (1 - qs[j] * zs[j] ** 2) / den
    for j in range(d):
        for k in range(j + 1, d):
            den = (zs[j] - qs[k] * zs[k]) * (qs[j] * zs[j] - zs[k]) \
                * (1 - qs[j] * qs[k] * zs[j] * zs[k]) * (1 - zs[j] * zs[k])
            if den == 0:
                raise ValueError("pole coincidence among the z, qz points")
            prod *= (qs[j] * zs[j] - qs[k] * zs[k]) * (zs[j] - zs[k]) \
                * (1 - qs[k] * zs[k] * zs[j]) * (1 - qs[j] * zs[j] * zs[k]) / den
    u = []
    for j in range(d):
        u += [zs[j], 1 / (qs[j] * zs[j])]
    for a in range(2 * d):
        for b in range(a + 1, 2 * d):
            if u[a] == u[b]:
                raise ValueError("coincident substitution points")
    pf = pfaffian(schur_pfaffian_matrix(u))
    return abs(pf - prod) / (abs(prod) + 1.0)


def radius_sweep(spec, T, cfg=None, oracle_value=None, oracle_kwargs=None,
                 samples=3):
    """Scan kernel radius configurations (including a deliberately
    inadmissible k11 that encloses the 1/x poles) and report agreement with
    the enumeration oracle for each."""
    from .measures import correlation_oracle
    cfg = cfg or KernelConfig()
    if not isinstance(T, PointSet):
        T = PointSet(T)
    if oracle_value is None:
        oracle_value = correlation_oracle(spec, T, **(oracle_kwargs or {}))
    mx_plus = spec.max_abs_plus()
    mx_all = spec.max_abs()
    rows = []

    def try_config(radii, note):
        trial = KernelConfig(quad_tol=cfg.quad_tol, start_nodes=cfg.start_nodes,
                             sign_convention=cfg.sign_convention,
                             h_assignment=cfg.h_assignment,
                             k12_regime=cfg.k12_regime, radii=radii)
        try:
            value = correlation_via_kernel(spec, T, trial)
            delta = abs(value - oracle_value)
            rows.append({"radii": radii, "note": note, "value": value,
                         "delta": delta, "pass": bool(delta < 1e-3)})
        except Exception as exc:  # inadmissible configs report their failure
            rows.append({"radii": radii, "note": note, "error": str(exc),
                         "pass": False})

    base = default_radii(spec)
    for fr in np.linspace(0.25, 0.75, samples):
        r11 = 1 + fr * (1 / mx_plus - 1)
        radii = {"k11": r11,
                 "k12_w_lt": (mx_plus + 1 / r11) / 2,
                 "k12_w_gt": (1 / r11 + 1 / mx_all) / 2,
                 "k22": mx_all + fr * (1 - mx_all)}
        try_config(radii, f"admissible fraction {fr:.2f}")
    # the Open Question configuration: k11 enclosing the 1/x poles
    r_bad = 1.15 / min(abs(v) for v in
                       [w for s in spec.rho_plus for w in s.values])
    bad = {"k11": r_bad,
           "k12_w_lt": 1 / (2 * r_bad),
           "k12_w_gt": (1 / r_bad + 1 / mx_plus) / 2,
           "k22": base["k22"]}
    try_config(bad, "k11 encloses 1/x poles (inadmissible reading)")
    return {"oracle": oracle_value, "rows": rows}
