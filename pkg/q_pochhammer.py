import logging
from dataclasses import dataclass

import numpy as np

from utils import EXACT, COMPLEX, DegenerateQ, ZeroQ, field_for, get_field

logger = logging.getLogger(__name__)


def common_field(*values):
    """COMPLEX as soon as one value is complex, else EXACT."""
    fields = {field_for(v) for v in values}
    return COMPLEX if COMPLEX in fields else EXACT


def q_powers(q, count, field=None):
    """[1, q, q^2, ..., q^(count-1)] by iterated multiplication."""
    field = field or field_for(q)
    q = field.coerce(q)
    powers = []
    p = field.one()
    for _ in range(count):
        powers.append(p)
        p = p * q
    return powers


def qpochhammer(z, q, k):
    """(z;q)_k = (1 - z)(1 - zq)...(1 - zq^(k-1)); the empty product is 1."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    field = common_field(z, q)
    z = field.coerce(z)
    q = field.coerce(q)
    result = field.one()
    zq = z
    for _ in range(k):
        result = result * (1 - zq)
        zq = zq * q
    return result


def reciprocal_qpochhammer(q, j):
    """Closed form of (1/q;1/q)_j: (-1)^j q^(-j(j+1)/2) (q;q)_j."""
    field = field_for(q)
    q = field.coerce(q)
    if field.is_zero(q):
        raise ZeroQ()
    sign = -1 if j % 2 else 1
    return sign * (1 / q) ** (j * (j + 1) // 2) * qpochhammer(q, q, j)


def find_degenerate_power(q, n, eps=None, field=None):
    """Smallest 1 <= j <= n-1 with q^j = 1 (|q^j - 1| <= eps on floats), else None."""
    field = field or field_for(q)
    q = field.coerce(q)
    eps = field.default_eps if eps is None else eps
    p = field.one()
    for j in range(1, n):
        p = p * q
        if field.is_one(p, eps):
            return j
    return None


def check_not_in_A_n(q, n, eps=None, field=None):
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    j = find_degenerate_power(q, n, eps, field)
    if j is not None:
        raise DegenerateQ(j)


@dataclass(frozen=True, eq=False)
class QPochTable:
    """(q;q)_0 ... (q;q)_(n-1) and their reciprocals."""

    q: object
    n: int
    field: object
    eps: float
    qfac: np.ndarray
    qfac_inv: np.ndarray

    @property
    def backend(self):
        return self.field.name


def build_qpoch_table(q, n, eps=None, backend=None):
    field = get_field(backend) if backend is not None else field_for(q)
    q = field.coerce(q)
    eps = field.default_eps if eps is None else eps
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if field.is_zero(q):
        raise ZeroQ()
    check_not_in_A_n(q, n, eps, field)

    values = [field.one()]
    p = q
    for _ in range(1, n):
        values.append(values[-1] * (1 - p))
        p = p * q

    qfac = field.array(values)
    qfac_inv = field.array([1 / v for v in values])
    qfac.flags.writeable = False
    qfac_inv.flags.writeable = False
    logger.debug(f"🔍 Built (q;q) table for q={field.format(q)}, n={n}")
    return QPochTable(q=q, n=n, field=field, eps=eps, qfac=qfac, qfac_inv=qfac_inv)


def gaussian_binomial(i, j, tbl):
    """(q;q)_i / ((q;q)_j (q;q)_(i-j)) for 0 <= j <= i <= n-1."""
    if not (0 <= j <= i < tbl.n):
        raise IndexError(f"gaussian_binomial needs 0 <= j <= i < {tbl.n}, got i={i}, j={j}")
    return tbl.qfac[i] * tbl.qfac_inv[j] * tbl.qfac_inv[i - j]


def finite_sum_rhs(i, j, tbl):
    """Right-hand side of the finite sum identity for q^(ij).

    sum_{k=0}^{min(i,j)} (-1)^k q^(k(k-1)/2) (q;q)_i (q;q)_j
                         / ((q;q)_k (q;q)_(i-k) (q;q)_(j-k))
    """
    if not (0 <= i < tbl.n and 0 <= j < tbl.n):
        raise IndexError(f"finite_sum_rhs needs 0 <= i, j < {tbl.n}, got i={i}, j={j}")
    qfac, qfac_inv = tbl.qfac, tbl.qfac_inv
    total = tbl.field.zero()
    triangular = tbl.field.one()  # q^(k(k-1)/2)
    q_k = tbl.field.one()
    for k in range(min(i, j) + 1):
        term = triangular * qfac[i] * qfac[j] * qfac_inv[k] * qfac_inv[i - k] * qfac_inv[j - k]
        total = total - term if k % 2 else total + term
        triangular = triangular * q_k
        q_k = q_k * tbl.q
    return total
