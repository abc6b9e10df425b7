import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from q_pochhammer import build_qpoch_table, finite_sum_rhs, q_powers, qpochhammer, reciprocal_qpochhammer
from structured_ops import (LowerToeplitz, build_Dq_power, build_Tq, build_Tq_reciprocal, invert_Tq,
                            series_Tq_dense, series_Tq_reciprocal_dense, toeplitz_product)
from utils import COMPLEX, get_field
from vandermonde_factorizer import VandermondeFactorizer, build_vandermonde
from vandermonde_solver import VandermondeSolver, dense_solve_oracle

logger = logging.getLogger(__name__)

FLOAT_TOLERANCE = 1e-8
MAX_BAND = 8


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    deviation: object
    detail: str = ""

    def line(self, field):
        status = "pass" if self.passed else "FAIL"
        if field is COMPLEX:
            deviation = f"{self.deviation:.3e}"
        else:
            deviation = str(Fraction(self.deviation))
        text = f"{self.name}: {status}, deviation {deviation}"
        return f"{text} ({self.detail})" if self.detail else text


def random_vector(field, n, rng):
    """Seeded test vector: small rationals, or a unit-norm complex vector."""
    if field is COMPLEX:
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        return v / np.linalg.norm(v)
    numerators = rng.integers(-50, 51, size=n)
    denominators = rng.integers(1, 51, size=n)
    return field.array(Fraction(int(a), int(b)) for a, b in zip(numerators, denominators))


class IdentityVerifier:
    """Runs the factorization and Toeplitz identity suites for one (q, n)."""

    def __init__(self, q, n, backend, eps=None, seed=0, max_band=MAX_BAND,
                 tolerance=FLOAT_TOLERANCE, dense_cap=None):
        self.field = get_field(backend)
        self.q = self.field.coerce(q)
        self.n = n
        self.eps = eps
        self.seed = seed
        self.max_band = max_band
        self.tolerance = tolerance
        self.factorizer = VandermondeFactorizer(eps, dense_cap)
        # fails fast with DegenerateQ / ZeroQ before any suite runs
        self.tbl = build_qpoch_table(self.q, n, eps, self.field)

    def _result(self, name, deviations, detail=""):
        if self.field is COMPLEX:
            # np.max propagates nan, builtin max drops it depending on order
            worst = float(np.max(deviations)) if len(deviations) else 0.0
        else:
            worst = max(deviations, default=0)
        return SuiteResult(name, self.field.passes(worst, self.tolerance), worst, detail)

    def check_ldlt(self):
        f = self.factorizer.factorize(self.q, self.n, self.field)
        residual = self.factorizer.residual(f)
        L = f.L_dense()
        closed = self.field.zeros((self.n, self.n))
        for i in range(self.n):
            for j in range(i + 1):
                closed[i, j] = f.l_entry(i, j)
        return self._result("ldlt_factorization", [residual, self.field.deviation(L, closed)])

    def check_toeplitz_inverse(self):
        tbl, field, n = self.tbl, self.field, self.n
        Tq = build_Tq(tbl)
        T_rec = build_Tq_reciprocal(tbl)
        inverse = invert_Tq(tbl)
        ones = field.array([1] * n)
        H = toeplitz_product(Tq, T_rec)
        identity = LowerToeplitz.identity(n, field)
        scaled = (build_Dq_power(self.q, -1, n, field).diag[:, None] * T_rec.dense()
                  * build_Dq_power(self.q, 1, n, field).diag[None, :])
        return self._result("toeplitz_inverse", [
            field.deviation(H.col, ones),
            field.deviation(toeplitz_product(Tq, inverse).col, identity.col),
            field.deviation(scaled, inverse.dense()),
        ])

    def check_banded_products(self):
        deviations = []
        flagged = []
        for m in range(1, min(self.n, self.max_band) + 1):
            banded = self.factorizer.banded_product(self.q, m, self.n, self.field)
            deviations.append(banded.deviation())
            flagged.extend(f"m={m}:j={j}" for j in banded.zero_coefficients)
        detail = f"zero coefficients {', '.join(flagged)}" if flagged else ""
        return self._result("banded_product", deviations, detail)

    def check_finite_sum(self):
        powers = q_powers(self.q, (self.n - 1) ** 2 + 1, self.field)
        deviations = []
        for i in range(self.n):
            for j in range(self.n):
                deviations.append(self.field.deviation([finite_sum_rhs(i, j, self.tbl)], [powers[i * j]]))
        return self._result("finite_sum_identity", deviations)

    def check_reciprocal_qpochhammer(self):
        q_inv = 1 / self.q
        deviations = [
            self.field.deviation([qpochhammer(q_inv, q_inv, j)], [reciprocal_qpochhammer(self.q, j)])
            for j in range(self.n)
        ]
        return self._result("reciprocal_qpochhammer", deviations)

    def check_series_expansions(self):
        return self._result("series_expansion", [
            self.field.deviation(series_Tq_dense(self.tbl), build_Tq(self.tbl).dense()),
            self.field.deviation(series_Tq_reciprocal_dense(self.tbl), build_Tq_reciprocal(self.tbl).dense()),
        ])

    def check_solver_roundtrip(self):
        rng = np.random.default_rng(self.seed)
        f = self.factorizer.factorize(self.q, self.n, self.field)
        solver = VandermondeSolver(f)
        x = random_vector(self.field, self.n, rng)
        V = build_vandermonde(self.q, self.n, self.field)
        b = V @ x
        deviations = [self.field.deviation(solver.solve(b).x, x)]
        if self.field is not COMPLEX:
            rhs = random_vector(self.field, self.n, rng)
            deviations.append(self.field.deviation(solver.solve(rhs).x, dense_solve_oracle(V, rhs)))
        return self._result("solver_roundtrip", deviations)

    def run(self):
        checks = [
            self.check_ldlt,
            self.check_toeplitz_inverse,
            self.check_banded_products,
            self.check_finite_sum,
            self.check_reciprocal_qpochhammer,
            self.check_series_expansions,
            self.check_solver_roundtrip,
        ]
        results = []
        for check in checks:
            result = check()
            logger.info(f"{'✅' if result.passed else '❌'} {result.line(self.field)}")
            results.append(result)
        return results

    def report(self, results):
        lines = [f"# qvand-verify q={self.field.format(self.q)} n={self.n} "
                 f"backend={self.field.name} seed={self.seed}"]
        lines.extend(result.line(self.field) for result in results)
        return "\n".join(lines) + "\n"
