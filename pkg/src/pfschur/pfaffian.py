"""Pfaffians of even-dimensional skew-symmetric complex matrices.

Small matrices (dim <= 8) go through recursive first-row expansion; larger
ones through a pivoted skew LTL^T elimination (Parlett-Reid style). The two
paths agree on their overlap and both satisfy Pf(A)^2 = det(A).
"""

import numpy as np


class SkewMatrix:
    """Dense skew-symmetric matrix produced by projecting (A - A^T)/2.

    The asymmetry of the input is not an error: kernel matrices assembled
    from independent quadratures are skew only up to quadrature error, so the
    projection defect is recorded as a quality diagnostic instead.
    """

    def __init__(self, entries):
        A = np.asarray(entries, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("square matrix required")
        S = (A - A.T) / 2
        self.matrix = S
        self.dim = A.shape[0]
        self.defect = float(np.max(np.abs(A + A.T)) / 2) if A.size else 0.0

    def to_json(self):
        return [[[v.real, v.imag] for v in row] for row in self.matrix]


def _pfaffian_expand(A):
    n = A.shape[0]
    if n == 0:
        return 1.0 + 0j
    if n == 2:
        return A[0, 1]
    total = 0j
    rest = list(range(1, n))
    for jpos, j in enumerate(rest):
        aij = A[0, j]
        if aij == 0:
            continue
        keep = [k for k in rest if k != j]
        sign = -1.0 if jpos % 2 else 1.0  # (-1)^j for column j of the first row
        total += sign * aij * _pfaffian_expand(A[np.ix_(keep, keep)])
    return total


def _pfaffian_ltl(A):
    """Pivoted skew elimination: congruence transforms accumulate the Pfaffian
    as the product of the (2k, 2k+1) pivots, with each row/column interchange
    flipping the sign."""
    A = A.copy()
    n = A.shape[0]
    val = 1.0 + 0j
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if kp != k + 1:
            A[[k + 1, kp], k:] = A[[kp, k + 1], k:]
            A[k:, [k + 1, kp]] = A[k:, [kp, k + 1]]
            val = -val
        pivot = A[k + 1, k]
        if pivot == 0:
            return 0j
        val *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2:] / A[k, k + 1]
            A[k + 2:, k + 2:] += (np.outer(tau, A[k + 2:, k + 1])
                                  - np.outer(A[k + 2:, k + 1], tau))
    return val


def pfaffian(A):
    """Pfaffian of a skew-symmetric matrix (SkewMatrix, array, or nested lists).

    dim 0 returns 1 (the empty Pfaffian); odd dim is an error.
    """
    if isinstance(A, SkewMatrix):
        A = A.matrix
    A = np.asarray(A, dtype=complex)
    if A.size == 0:
        return 1.0 + 0j
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ValueError("square matrix required")
    if n % 2 != 0:
        raise ValueError("Pfaffian requires even dimension")
    if n <= 8:
        return complex(_pfaffian_expand(A))
    return complex(_pfaffian_ltl(A))


def schur_pfaffian_matrix(u):
    """The skew matrix with entries (u_j - u_k)/(1 - u_j u_k)."""
    u = np.asarray(u, dtype=complex)
    n = len(u)
    M = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            if j != k:
                den = 1 - u[j] * u[k]
                if den == 0:
                    raise ValueError(f"singular pair u_j*u_k = 1 at ({u[j]}, {u[k]})")
                M[j, k] = (u[j] - u[k]) / den
    return M


def verify_schur_pfaffian(u):
    """Relative residual of Pf[(u_j-u_k)/(1-u_j u_k)] against the closed-form
    product over j<k of the same entries."""
    u = [complex(v) for v in u]
    if len(u) % 2 != 0:
        raise ValueError("need an even number of points")
    M = schur_pfaffian_matrix(u)
    prod = 1.0 + 0j
    for j in range(len(u)):
        for k in range(j + 1, len(u)):
            prod *= M[j, k]
    pf = pfaffian(M)
    return abs(pf - prod) / (abs(prod) + 1.0)
