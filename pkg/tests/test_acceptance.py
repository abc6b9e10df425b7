"""Identity and oracle checks at full size over seeded samples of rational q.

Marked slow; run with ``pytest -m slow``.
"""

from fractions import Fraction

import numpy as np
import pytest

from q_pochhammer import build_qpoch_table, finite_sum_rhs, q_powers
from structured_ops import LowerToeplitz, build_Dq_power, build_Tq, build_Tq_reciprocal, invert_Tq, toeplitz_product
from tests.strategies import seeded_rational_qs
from utils import EXACT
from vandermonde_factorizer import banded_product, build_vandermonde, factorize, residual
from vandermonde_solver import dense_solve_oracle, solve

pytestmark = pytest.mark.slow

Q_SAMPLE = seeded_rational_qs(50, seed=1)


def test_ldlt_exact_for_every_n_up_to_32():
    for q in Q_SAMPLE:
        for n in range(1, 33):
            assert residual(factorize(q, n)) == 0, (q, n)


def test_finite_sum_grid_up_to_32():
    for q in seeded_rational_qs(10, seed=2):
        tbl = build_qpoch_table(q, 33)
        powers = q_powers(q, 32 * 32 + 1)
        for i in range(33):
            for j in range(33):
                assert finite_sum_rhs(i, j, tbl) == powers[i * j], (q, i, j)


def test_toeplitz_inverse_identities_n32():
    # lower-triangular Toeplitz products truncate consistently, so n = 32 covers every n <= 32
    n = 32
    ones = EXACT.array([1] * n)
    identity = LowerToeplitz.identity(n, EXACT).col
    for q in Q_SAMPLE:
        tbl = build_qpoch_table(q, n)
        Tq = build_Tq(tbl)
        T_rec = build_Tq_reciprocal(tbl)
        inverse = invert_Tq(tbl)
        assert EXACT.deviation(toeplitz_product(Tq, T_rec).col, ones) == 0
        assert EXACT.deviation(toeplitz_product(inverse, Tq).col, identity) == 0
        scaled = (build_Dq_power(q, -1, n).diag[:, None] * T_rec.dense()
                  * build_Dq_power(q, 1, n).diag[None, :])
        assert EXACT.deviation(scaled, inverse.dense()) == 0


def test_banded_products_n32():
    n = 32
    for index, q in enumerate(Q_SAMPLE):
        for m in range(1, 9):
            result = banded_product(q, m, n)
            assert result.deviation() == 0, (q, m)
            assert all(c == 0 for c in result.T.col[m:])
            if index < 3:
                assert result.deviation(full=True) == 0, (q, m)


def test_solver_matches_oracle_up_to_24():
    rng = np.random.default_rng(6)
    for n in range(1, 25):
        for _ in range(50):
            q = seeded_rational_qs(1, seed=int(rng.integers(1 << 30)))[0]
            b = EXACT.array(Fraction(int(a), int(d))
                            for a, d in zip(rng.integers(-50, 51, size=n), rng.integers(1, 51, size=n)))
            V = build_vandermonde(q, n)
            assert EXACT.deviation(solve(factorize(q, n), b).x, dense_solve_oracle(V, b)) == 0, (q, n)
