import numpy as np
import pytest

from pfschur.kernels import (SIGN_BR, SIGN_PAPER, KernelConfig,
                             assemble_kernel, correlation_via_kernel,
                             correlation_via_q_extraction, default_radii,
                             kernel_entry_process, kernel_entry_single,
                             radius_sweep,
                             verify_principal_pfaffian_factorization)
from pfschur.measures import PointSet, ProcessSpec, correlation_oracle
from pfschur.pfaffian import pfaffian
from pfschur.symfunc import Specialization

X2 = Specialization([0.5, 0.25])
SPEC_M1 = ProcessSpec([X2], [X2])
SPEC_M2 = ProcessSpec([[0.4], [0.3]], [[0.35], [0.25]])
CFG = KernelConfig()


def test_default_radii_admissible():
    radii = default_radii(SPEC_M2)
    assert 1 < radii["k11"] < 1 / SPEC_M2.max_abs_plus()
    assert 0 < radii["k22"] < 1
    assert radii["k12_w_lt"] * radii["k11"] < 1
    assert radii["k12_w_gt"] * radii["k11"] > 1


def test_k11_antisymmetry():
    T = PointSet([(1, 0), (1, 2)])
    kkk = kernel_entry_process("K11", 1, 1, 1, 1, SPEC_M1, T, CFG)
    assert abs(kkk) < 1e-7  # integrand odd under z <-> w
    kkl = kernel_entry_process("K11", 1, 1, 1, 2, SPEC_M1, T, CFG)
    klk = kernel_entry_process("K11", 1, 2, 1, 1, SPEC_M1, T, CFG)
    assert abs(kkl + klk) < 1e-7
    assert abs(kkl) > 1e-4  # not trivially zero off the diagonal


def test_process_blockwise_skew_relations():
    T = PointSet([(1, 0), (2, 1)])
    for which in ("K11", "K22"):
        a = kernel_entry_process(which, 1, 1, 2, 1, SPEC_M2, T, CFG)
        b = kernel_entry_process(which, 2, 1, 1, 1, SPEC_M2, T, CFG)
        assert abs(a + b) < 1e-7, which
    k21 = kernel_entry_process("K21", 1, 1, 2, 1, SPEC_M2, T, CFG)
    k12 = kernel_entry_process("K12", 2, 1, 1, 1, SPEC_M2, T, CFG)
    assert k21 == -k12


def test_single_equals_process_at_m1():
    T = [0, 2]
    pts = PointSet([(1, t) for t in T])
    for which in ("K11", "K12", "K21", "K22"):
        for (k, l) in ((1, 1), (1, 2), (2, 1)):
            single = kernel_entry_single(which, k, l, X2, X2, T, CFG)
            process = kernel_entry_process(which, 1, k, 1, l, SPEC_M1, pts, CFG)
            assert abs(single - process) < 1e-12, (which, k, l)


def test_single_requires_equal_lengths():
    with pytest.raises(ValueError):
        kernel_entry_single("K11", 1, 1, X2, Specialization([0.5]), [0], CFG)


def test_single_hypothesis_warning():
    _, info = kernel_entry_single("K11", 1, 1, X2, X2, [0, 2], CFG,
                                  full_output=True)
    assert "hypothesis_warning" in info  # n = d - min T is out of bounds
    _, info2 = kernel_entry_single("K11", 1, 1, X2, X2, [0], CFG,
                                   full_output=True)
    assert "hypothesis_warning" not in info2


def test_assemble_structure_d1():
    S, info = assemble_kernel(SPEC_M1, PointSet([(1, 0)]), CFG, full_output=True)
    K = S.matrix
    assert K.shape == (2, 2)
    assert K[0, 0] == 0 and K[1, 1] == 0
    assert K[0, 1] == -K[1, 0]
    assert info["defect"] < 10 * CFG.quad_tol


def test_assemble_permutation_invariance():
    Ta = PointSet([(1, 0), (1, 2)])
    Tb = PointSet([(1, 2), (1, 0)])
    pa = pfaffian(assemble_kernel(SPEC_M1, Ta, CFG))
    pb = pfaffian(assemble_kernel(SPEC_M1, Tb, CFG))
    assert abs(pa - pb) < 1e-8


def test_correlation_empty_T():
    assert correlation_via_kernel(SPEC_M1, PointSet([]), CFG) == 1.0


def test_correlation_matches_oracle_m1():
    for T in ([0], [1], [-1], [0, 2]):
        orc = correlation_oracle(SPEC_M1, [(1, t) for t in T], L=40)
        val, info = correlation_via_kernel(SPEC_M1, [(1, t) for t in T], CFG,
                                           full_output=True)
        assert abs(val - orc) < 1e-4, T
        assert info["imag_defect"] < 10 * CFG.quad_tol


def test_correlation_matches_oracle_m2():
    for T in ([(1, 0), (2, 0)], [(1, 1), (2, 0)]):
        orc = correlation_oracle(SPEC_M2, T, L=20)
        val = correlation_via_kernel(SPEC_M2, T, CFG)
        assert abs(val - orc) < 1e-3, T


def test_correlation_matches_oracle_d3_mixed_levels():
    # three points across two levels with multi-variable specializations:
    # exercises every block family inside one 6x6 Pfaffian
    spec = ProcessSpec([[0.4, 0.2], [0.3]], [[0.35], [0.25, 0.15]])
    T = [(1, 0), (1, 2), (2, -1)]
    orc = correlation_oracle(spec, T, L=16)
    val = correlation_via_kernel(spec, T, CFG)
    assert abs(val - orc) < 1e-6


def test_correlation_deep_negative_site_process():
    spec = ProcessSpec([[0.4, 0.2], [0.3]], [[0.35], [0.25, 0.15]])
    T = [(1, -2), (2, 1)]
    orc = correlation_oracle(spec, T, L=16)
    val = correlation_via_kernel(spec, T, CFG)
    assert abs(val - orc) < 1e-6


def test_sign_adjudication():
    # flipping (zw-1) to (1-zw) in K22 must break the m=2 agreement
    T = [(1, 0), (2, 0)]
    orc = correlation_oracle(SPEC_M2, T, L=20)
    cfg_br = KernelConfig(sign_convention=SIGN_BR)
    val_br = correlation_via_kernel(SPEC_M2, T, cfg_br)
    assert abs(val_br - orc) > 10 * 1e-3
    val_paper = correlation_via_kernel(SPEC_M2, T, KernelConfig())
    assert abs(val_paper - orc) < 1e-3


def test_display_h_assignment_fails_m2():
    T = [(1, 0), (2, 0)]
    orc = correlation_oracle(SPEC_M2, T, L=20)
    val = correlation_via_kernel(SPEC_M2, T, KernelConfig(h_assignment="display"))
    assert abs(val - orc) > 0.05


def test_literal_k12_regime_fails_m2():
    T = [(1, 0), (2, 0)]
    orc = correlation_oracle(SPEC_M2, T, L=20)
    val = correlation_via_kernel(SPEC_M2, T, KernelConfig(k12_regime="literal"))
    assert abs(val - orc) > 0.05


def test_quadrature_stability_under_tol_halving():
    T = PointSet([(1, 0), (1, 2)])
    for which, k, l in (("K11", 1, 2), ("K12", 1, 1), ("K22", 1, 2)):
        loose = kernel_entry_process(which, 1, k, 1, l, SPEC_M1, T,
                                     KernelConfig(quad_tol=1e-6))
        tight = kernel_entry_process(which, 1, k, 1, l, SPEC_M1, T,
                                     KernelConfig(quad_tol=5e-7))
        assert abs(loose - tight) < 1e-6


def test_radius_robustness():
    T = [(1, 0)]
    base = correlation_via_kernel(SPEC_M1, T, CFG)
    radii = default_radii(SPEC_M1)
    for scale in (0.95, 1.05):
        pert = {"k11": radii["k11"] * scale,
                "k12_w_lt": radii["k12_w_lt"] * scale,
                "k12_w_gt": radii["k12_w_gt"],
                "k22": radii["k22"] * scale}
        # keep the perturbed k12_w_gt admissible against the scaled k11
        pert["k12_w_gt"] = (1 / pert["k11"] + 1 / SPEC_M1.max_abs()) / 2
        val = correlation_via_kernel(SPEC_M1, T, KernelConfig(radii=pert))
        assert abs(val - base) < 1e-6


def test_q_extraction_d1():
    orc = correlation_oracle(SPEC_M1, [(1, 0)], L=40)
    val = correlation_via_q_extraction(X2, X2, [0], CFG)
    assert abs(val - orc) < 1e-4


def test_q_extraction_deep_negative_site():
    val, info = correlation_via_q_extraction(X2, X2, [-7], CFG, full_output=True)
    assert val == 1.0
    assert info["stripped_deterministic"] == [-7]


def test_q_extraction_guards():
    with pytest.raises(ValueError):
        correlation_via_q_extraction(X2, X2, [0, 1, 2], CFG)
    with pytest.raises(ValueError):
        correlation_via_q_extraction(X2, Specialization([0.5]), [0], CFG)


def test_principal_pfaffian_factorization():
    rng = np.random.default_rng(9)
    assert verify_principal_pfaffian_factorization([0.4], [0.3]) < 1e-12
    for d, tol in ((2, 1e-10), (3, 1e-9)):
        qs = (0.15 + 0.5 * rng.random(d)) * np.exp(2j * np.pi * rng.random(d))
        zs = (0.15 + 0.5 * rng.random(d)) * np.exp(2j * np.pi * rng.random(d))
        assert verify_principal_pfaffian_factorization(qs, zs) < tol
    with pytest.raises(ValueError):
        verify_principal_pfaffian_factorization([1.0], [0.3])  # q=1 singular


def test_radius_sweep_reports_inadmissible_reading():
    out = radius_sweep(SPEC_M1, [(1, 0)], CFG, samples=2)
    assert any(r["pass"] for r in out["rows"])
    bad = [r for r in out["rows"] if "encloses" in r["note"]]
    assert bad and not bad[0]["pass"]
