import logging
from dataclasses import asdict, dataclass, field as dataclass_field
from fractions import Fraction
from math import lcm

import numpy as np

from q_pochhammer import q_powers
from structured_ops import ACCEL_THRESHOLD, build_Dq_power, build_Tq, reciprocal_table
from utils import (COMPLEX, EXACT, DimensionMismatch, SingularMatrix, field_for, format_vector, get_field,
                   json_float)

logger = logging.getLogger(__name__)

PIVOT_TOLERANCE = 1e-14


@dataclass
class CostCounters:
    toeplitz_matvecs: int = 0
    diagonal_scalings: int = 0
    diagonal_inversions: int = 0
    back_substitutions: int = 0

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True, eq=False)
class SolveReport:
    x: np.ndarray
    backend: str
    residual_norm: float = None
    cost_counters: CostCounters = dataclass_field(default_factory=CostCounters)

    def to_dict(self):
        payload = {
            "x": format_vector(self.x, self.backend),
            "backend": self.backend,
        }
        if self.residual_norm is not None:
            payload["residual_norm"] = json_float(self.residual_norm, "residual_norm")
        payload["cost_counters"] = self.cost_counters.to_dict()
        return payload


def apply_vandermonde(q, x, backend=None):
    """V_q x evaluated as the polynomial sum_j x_j t^j at t = q^i (Horner, no dense V)."""
    field = get_field(backend) if backend is not None else field_for(q)
    x = field.vector(x)
    nodes = q_powers(q, len(x), field)
    if field is COMPLEX:
        return np.polyval(x[::-1], np.asarray(nodes, dtype=np.complex128))
    out = field.zeros(len(x))
    for i, t in enumerate(nodes):
        acc = field.zero()
        for coefficient in x[::-1]:
            acc = acc * t + coefficient
        out[i] = acc
    return out


class VandermondeSolver:
    """Solves V_q x = b as x = L^-T D^-1 L^-1 b.

    L^-1 = P_q D_(1/q) T_(1/q) D_q P_q^-1, so every step is a diagonal scaling or
    a Toeplitz matvec; no triangular substitution is performed.
    """

    def __init__(self, factorization, accel_threshold=ACCEL_THRESHOLD):
        f = factorization
        self.factorization = f
        self.field = f.field
        self.accel_threshold = accel_threshold
        self.T_reciprocal = build_Tq(reciprocal_table(f.tbl))
        self.Dq = build_Dq_power(f.q, 1, f.n, f.field)
        self.Dq_inv = build_Dq_power(f.q, -1, f.n, f.field)

    def _check(self, b):
        b = self.field.vector(b)
        if len(b) != self.factorization.n:
            raise DimensionMismatch(self.factorization.n, len(b))
        return b

    def _scale(self, op, x, counters):
        counters.diagonal_scalings += 1
        return op.apply(x)

    def apply_L_inverse(self, b, counters=None):
        counters = CostCounters() if counters is None else counters
        f = self.factorization
        y = self._scale(f.P_inv, self._check(b), counters)
        y = self._scale(self.Dq, y, counters)
        y = self.T_reciprocal.matvec(y, self.accel_threshold)
        counters.toeplitz_matvecs += 1
        y = self._scale(self.Dq_inv, y, counters)
        return self._scale(f.P, y, counters)

    def apply_LT_inverse(self, b, counters=None):
        counters = CostCounters() if counters is None else counters
        f = self.factorization
        y = self._scale(f.P, self._check(b), counters)
        y = self._scale(self.Dq_inv, y, counters)
        y = self.T_reciprocal.rmatvec(y, self.accel_threshold)
        counters.toeplitz_matvecs += 1
        y = self._scale(self.Dq, y, counters)
        return self._scale(f.P_inv, y, counters)

    def solve(self, b):
        f = self.factorization
        b = self._check(b)
        counters = CostCounters()

        y = self.apply_L_inverse(b, counters)
        y = f.d_inverse.apply(y)
        counters.diagonal_inversions += 1
        x = self.apply_LT_inverse(y, counters)

        residual_norm = None
        if self.field is COMPLEX:
            r = apply_vandermonde(f.q, x, self.field) - b
            b_norm = np.linalg.norm(b)
            residual_norm = float(np.linalg.norm(r) / b_norm) if b_norm > 0 else float(np.linalg.norm(r))
            logger.debug(f"🔍 Structured solve n={f.n}, relative residual {residual_norm:.3e}")

        return SolveReport(x=x, backend=f.backend, residual_norm=residual_norm, cost_counters=counters)


def apply_L_inverse(factorization, b):
    return VandermondeSolver(factorization).apply_L_inverse(b)


def apply_LT_inverse(factorization, b):
    return VandermondeSolver(factorization).apply_LT_inverse(b)


def solve(factorization, b):
    return VandermondeSolver(factorization).solve(b)


def _fraction_free_solve(V, b):
    """Bareiss elimination on the denominator-cleared augmented matrix."""
    n = len(b)
    rows = []
    for i in range(n):
        entries = [Fraction(v) for v in V[i]] + [Fraction(b[i])]
        scale = lcm(*(e.denominator for e in entries))
        rows.append([int(e * scale) for e in entries])

    previous = 1
    for k in range(n):
        pivot = next((r for r in range(k, n) if rows[r][k] != 0), None)
        if pivot is None:
            raise SingularMatrix(f"no nonzero pivot in column {k}")
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
        pivot_row = rows[k]
        pivot_value = pivot_row[k]
        for i in range(k + 1, n):
            row = rows[i]
            factor = row[k]
            for j in range(k + 1, n + 1):
                row[j] = (row[j] * pivot_value - factor * pivot_row[j]) // previous
            row[k] = 0
        previous = pivot_value

    # the last pivot is +-det, so det * x is an integer vector (Cramer)
    det = previous
    y = [0] * n
    for i in range(n - 1, -1, -1):
        row = rows[i]
        s = det * row[n]
        for j in range(i + 1, n):
            s -= row[j] * y[j]
        y[i] = s // row[i]
    return EXACT.array(Fraction(v, det) for v in y)


def _partial_pivot_solve(V, b, pivot_tolerance):
    A = np.array(V, dtype=np.complex128)
    x = np.array(b, dtype=np.complex128)
    n = len(x)
    threshold = pivot_tolerance * float(np.max(np.abs(A)))

    for k in range(n):
        p = k + int(np.argmax(np.abs(A[k:, k])))
        if abs(A[p, k]) <= threshold:
            raise SingularMatrix(f"pivot {abs(A[p, k]):.3e} below {threshold:.3e} in column {k}")
        if p != k:
            A[[k, p]] = A[[p, k]]
            x[[k, p]] = x[[p, k]]
        factors = A[k + 1:, k] / A[k, k]
        A[k + 1:, k:] -= np.outer(factors, A[k, k:])
        x[k + 1:] -= factors * x[k]

    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - A[i, i + 1:] @ x[i + 1:]) / A[i, i]
    return x


def dense_solve_oracle(V, b, pivot_tolerance=PIVOT_TOLERANCE):
    """Gaussian elimination oracle: fraction-free on rationals, partial pivoting on floats."""
    V = np.asarray(V)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise ValueError(f"dense_solve_oracle needs a square matrix, got shape {V.shape}")
    if len(b) != V.shape[0]:
        raise DimensionMismatch(V.shape[0], len(b))
    if V.dtype == object:
        return _fraction_free_solve(V, b)
    return _partial_pivot_solve(V, b, pivot_tolerance)
