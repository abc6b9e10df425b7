import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from q_pochhammer import (build_qpoch_table, check_not_in_A_n, find_degenerate_power, finite_sum_rhs,
                          gaussian_binomial, q_powers, qpochhammer, reciprocal_qpochhammer)
from tests.strategies import rational_q, seeded_rational_qs
from utils import DegenerateQ, ZeroQ

F = Fraction

# ---------------------------------------------------------
# q-Pochhammer symbol
# ---------------------------------------------------------

def test_qpochhammer_examples():
    assert qpochhammer(F(5), F(3), 0) == 1
    assert qpochhammer(F(2), F(2), 2) == 3
    assert qpochhammer(F(1), F(7), 3) == 0


def test_qpochhammer_complex():
    z = qpochhammer(2, 1j, 2)
    assert z == pytest.approx((1 - 2) * (1 - 2j))


@settings(max_examples=25, deadline=None)
@given(rational_q, st.integers(min_value=1, max_value=20))
def test_recurrence_consistency(q, k):
    assert qpochhammer(q, q, k) == qpochhammer(q, q, k - 1) * (1 - q ** k)


@settings(max_examples=25, deadline=None)
@given(rational_q, st.integers(min_value=0, max_value=20))
def test_reciprocal_identity(q, j):
    assert qpochhammer(1 / q, 1 / q, j) == reciprocal_qpochhammer(q, j)


def test_reciprocal_identity_up_to_63():
    for q in seeded_rational_qs(10, seed=5):
        for j in range(64):
            assert qpochhammer(1 / q, 1 / q, j) == reciprocal_qpochhammer(q, j)

# ---------------------------------------------------------
# Table and guard
# ---------------------------------------------------------

def test_build_table_examples():
    assert list(build_qpoch_table(F(2), 3, 0).qfac) == [1, -1, 3]
    assert list(build_qpoch_table(F(1, 2), 3, 0).qfac) == [1, F(1, 2), F(3, 8)]


def test_build_table_reciprocals():
    tbl = build_qpoch_table(F(2), 4)
    assert list(tbl.qfac_inv) == [1, -1, F(1, 3), F(-1, 21)]
    assert tbl.backend == "exact"


def test_build_table_rejects_q_one():
    with pytest.raises(DegenerateQ) as excinfo:
        build_qpoch_table(F(1), 2, 0.5)
    assert excinfo.value.j == 1


def test_build_table_rejects_zero():
    with pytest.raises(ZeroQ):
        build_qpoch_table(F(0), 3)
    with pytest.raises(ZeroQ):
        build_qpoch_table(0j, 3)


def test_guard_minimal_witnesses():
    with pytest.raises(DegenerateQ) as excinfo:
        check_not_in_A_n(F(-1), 3, 0)
    assert excinfo.value.j == 2

    cube_root = cmath.exp(2j * cmath.pi / 3)
    with pytest.raises(DegenerateQ) as excinfo:
        check_not_in_A_n(cube_root, 4)
    assert excinfo.value.j == 3
    check_not_in_A_n(cube_root, 3)


def test_guard_accepts_regular_q():
    check_not_in_A_n(F(2), 64, 0)
    check_not_in_A_n(cmath.exp(-2j * cmath.pi / 8), 8, 1e-10)
    assert find_degenerate_power(F(-1), 2) is None
    assert find_degenerate_power(F(-1), 3) == 2


def test_guard_respects_eps():
    near_one = complex(1 + 1e-6, 0)
    assert find_degenerate_power(near_one, 3, eps=1e-10) is None
    assert find_degenerate_power(near_one, 3, eps=1e-5) == 1

# ---------------------------------------------------------
# Gaussian binomials and the finite sum identity
# ---------------------------------------------------------

def test_gaussian_binomial_examples():
    tbl = build_qpoch_table(F(2), 6)
    assert gaussian_binomial(5, 0, tbl) == 1
    assert gaussian_binomial(2, 1, tbl) == 3
    assert gaussian_binomial(4, 2, tbl) == 35
    assert gaussian_binomial(4, 2, tbl) == F((2 ** 4 - 1) * (2 ** 3 - 1), (2 ** 2 - 1) * (2 - 1))


def test_gaussian_binomial_bounds():
    tbl = build_qpoch_table(F(2), 3)
    with pytest.raises(IndexError):
        gaussian_binomial(1, 2, tbl)
    with pytest.raises(IndexError):
        gaussian_binomial(3, 0, tbl)


@settings(max_examples=25, deadline=None)
@given(rational_q, st.integers(min_value=0, max_value=12), st.data())
def test_gaussian_binomial_symmetry(q, i, data):
    j = data.draw(st.integers(min_value=0, max_value=i))
    tbl = build_qpoch_table(q, i + 1)
    assert gaussian_binomial(i, j, tbl) == gaussian_binomial(i, i - j, tbl)


def test_finite_sum_identity_grid():
    for q in seeded_rational_qs(5, seed=11):
        tbl = build_qpoch_table(q, 17)
        powers = q_powers(q, 16 * 16 + 1)
        for i in range(17):
            for j in range(17):
                assert finite_sum_rhs(i, j, tbl) == powers[i * j]


def test_finite_sum_identity_complex():
    q = cmath.exp(-2j * cmath.pi / 8)
    tbl = build_qpoch_table(q, 8)
    for i in range(8):
        for j in range(8):
            assert finite_sum_rhs(i, j, tbl) == pytest.approx(q ** (i * j), abs=1e-10)
