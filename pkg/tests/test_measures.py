import numpy as np
import pytest

from pfschur.measures import (PointSet, ProcessSpec, correlation_oracle,
                              observable_expectation_oracle,
                              partition_function_closed,
                              partition_function_truncated, process_weight,
                              truncation_diagnostic)
from pfschur.partitions import enumerate_up_to_weight
from pfschur.symfunc import H0, Specialization, cauchy_H, schur, skew_schur, tau


def test_process_spec_validation():
    with pytest.raises(ValueError):
        ProcessSpec([[0.5]], [])                     # missing rho^-_0
    with pytest.raises(ValueError):
        ProcessSpec([[0.5]], [[0.5], [0.3]])         # too many
    with pytest.raises(ValueError):
        ProcessSpec([[1.5]], [[0.5]])                # out of range
    with pytest.raises(ValueError):
        ProcessSpec([[0.5 + 0.1j]], [[0.5]])         # complex
    spec = ProcessSpec([[0.5], [0.4]], [[0.3], [0.2]])
    assert spec.m == 2
    assert spec.max_abs() == 0.5
    assert ProcessSpec.from_json(spec.to_json()).m == 2


def test_point_set():
    T = PointSet([(1, 0), (2, -1), (1, 3)])
    assert len(T) == 3
    assert T.by_level(2) == {1: [0, 3], 2: [-1]}
    with pytest.raises(ValueError):
        PointSet([(1, 0), (1, 0)])
    with pytest.raises(ValueError):
        PointSet([(0, 0)])
    with pytest.raises(ValueError):
        T.by_level(1)


def test_process_weight_all_empty():
    spec = ProcessSpec([[0.5], [0.4]], [[0.3], [0.2]])
    assert process_weight([(), ()], [()], spec) == 1.0


def test_process_weight_m1_reduction():
    spec = ProcessSpec([[0.5]], [[0.4]])
    lam = (2, 1)
    want = (tau(lam, spec.rho_minus[0]) * schur(lam, spec.rho_plus[0])).real
    assert abs(process_weight([lam], [], spec) - want) < 1e-15


def test_process_weight_m2_singletons():
    a, b, c, e = 0.31, 0.17, 0.23, 0.41
    spec = ProcessSpec([[a], [e]], [[b], [c]])
    w = process_weight([(1,), (1,)], [(1,)], spec)
    assert abs(w - b * e) < 1e-15


def test_process_weight_length_mismatch():
    spec = ProcessSpec([[0.5], [0.4]], [[0.3], [0.2]])
    with pytest.raises(ValueError):
        process_weight([(1,)], [], spec)


def test_partition_function_closed_m1():
    spec = ProcessSpec([[0.5]], [[0.5]])
    assert abs(partition_function_closed(spec, "pfaffian") - 4 / 3) < 1e-14
    want = cauchy_H(Specialization([0.5]), Specialization([0.5])).real
    assert abs(partition_function_closed(spec, "schur") - want) < 1e-15
    # empty rho^-_0 leaves only the pair factor
    spec2 = ProcessSpec([[0.5, 0.25]], [[]])
    assert abs(partition_function_closed(spec2, "pfaffian")
               - H0(Specialization([0.5, 0.25])).real) < 1e-15


def test_partition_function_truncated():
    spec = ProcessSpec([[0.5]], [[0.5]])
    assert partition_function_truncated(spec, "pfaffian", 0) == 1.0
    assert abs(partition_function_truncated(spec, "pfaffian", 40) - 4 / 3) < 1e-10
    # geometric error decay in L
    closed = partition_function_closed(spec, "pfaffian")
    errs = [abs(closed - partition_function_truncated(spec, "pfaffian", L)) / closed
            for L in (10, 20, 30)]
    assert errs[0] > errs[1] > errs[2]
    ratios = [errs[1] / errs[0], errs[2] / errs[1]]
    assert max(ratios) < 0.1


def test_partition_function_monotone_in_L():
    spec = ProcessSpec([[0.5], [0.4]], [[0.45], [0.35]])
    vals = [partition_function_truncated(spec, "pfaffian", L) for L in (0, 4, 8, 12)]
    assert all(vals[i] <= vals[i + 1] for i in range(len(vals) - 1))


def test_h0_union_adjudication():
    # the union form carries the cross-level H(rho^+_i; rho^+_j) factors;
    # the literal per-level product misses them for m >= 2
    spec = ProcessSpec([[0.5], [0.4]], [[0.45], [0.35]])
    trunc = partition_function_truncated(spec, "pfaffian", 40)
    union = partition_function_closed(spec, "pfaffian", h0_union=True)
    literal = partition_function_closed(spec, "pfaffian", h0_union=False)
    assert abs(union - trunc) / trunc < 1e-8
    assert abs(literal - trunc) / trunc > 1e-2


def test_cauchy_identity_truncated():
    X = Specialization([0.5, 0.3])
    Y = Specialization([0.4, 0.2])
    total = sum((schur(lam, X) * schur(lam, Y)).real
                for lam in enumerate_up_to_weight(30, 2))
    assert abs(total - cauchy_H(X, Y).real) < 1e-9


def test_correlation_oracle_geometric_case():
    spec = ProcessSpec([[0.5]], [[0.5]])
    assert abs(correlation_oracle(spec, [(1, 0)], L=40) - 0.1875) < 1e-10
    assert correlation_oracle(spec, [(1, -2)], L=20) == 1.0
    assert correlation_oracle(spec, [], L=10) == 1.0


def test_correlation_monotone_under_superset():
    spec = ProcessSpec([Specialization([0.5, 0.25])], [Specialization([0.5, 0.25])])
    small = correlation_oracle(spec, [(1, 0)], L=24)
    big = correlation_oracle(spec, [(1, 0), (1, 2)], L=24)
    assert big <= small <= 1.0


def test_correlation_window_complementation():
    # sum of one-point correlations over a window equals the expected number
    # of points there, computed by direct enumeration
    X = Specialization([0.5, 0.25])
    spec = ProcessSpec([X], [X])
    L, n_terms = 20, 26
    window = range(-6, L + 1)
    total = sum(correlation_oracle(spec, [(1, t)], L=L, n_terms=n_terms)
                for t in window)

    from pfschur.partitions import point_configuration
    num = 0.0
    den = 0.0
    for lam in enumerate_up_to_weight(L, 2):
        w = (tau(lam, X) * schur(lam, X)).real
        den += w
        pts = point_configuration(lam, n_terms)
        num += w * sum(1 for t in window if t in pts)
    assert abs(total - num / den) < 1e-9


def test_normalized_masses():
    spec = ProcessSpec([[0.5], [0.4]], [[0.45], [0.35]])
    closed = partition_function_closed(spec, "pfaffian")
    masses = [partition_function_truncated(spec, "pfaffian", L) / closed
              for L in (4, 8, 16)]
    assert all(0 < m <= 1 + 1e-12 for m in masses)
    assert masses == sorted(masses)


def test_observable_oracle():
    spec1 = ProcessSpec([[0.5]], [[0.5]])
    assert observable_expectation_oracle([[]], spec1, L=10) == 1.0
    # one variable: E[q^{lam_1}] is geometric
    q, x, y = 0.3, 0.5, 0.5
    want = (1 - x * y) / (1 - q * x * y)
    got = observable_expectation_oracle([[q]], spec1, L=60)
    assert abs(got - want) < 1e-12


def test_truncation_diagnostic_positive_and_small():
    spec = ProcessSpec([[0.5]], [[0.5]])
    d = truncation_diagnostic(spec, 30)
    assert 0 <= d < 1e-12
