"""Lower-triangular Toeplitz operators stored by their first column.

These matrices form a commutative algebra (polynomials in the shift S truncated
at degree n-1), so products and inverses stay in first-column form.
"""

from dataclasses import dataclass

import numpy as np

from q_pochhammer import build_qpoch_table
from utils import EXACT, DimensionMismatch, ZeroQ

from .shift import ShiftPower

# complex backend switches to FFT convolution from this size on
ACCEL_THRESHOLD = 512


@dataclass(frozen=True, eq=False)
class LowerToeplitz:
    """A[i][j] = col[i-j] for i >= j, zero above the diagonal."""

    col: np.ndarray
    field: object
    unit: bool = False

    def __post_init__(self):
        col = np.array(self.field.vector(self.col))
        if len(col) == 0:
            raise ValueError("LowerToeplitz needs at least one entry")
        if self.unit and not self.field.is_one(col[0]):
            raise ValueError("unit LowerToeplitz must have col[0] = 1")
        col.flags.writeable = False
        object.__setattr__(self, "col", col)

    @classmethod
    def identity(cls, n, field):
        col = field.zeros(n)
        col[0] = field.one()
        return cls(col, field, unit=True)

    @property
    def n(self):
        return len(self.col)

    def matvec(self, x, accel_threshold=ACCEL_THRESHOLD):
        return toeplitz_matvec(self, x, accel_threshold)

    def rmatvec(self, x, accel_threshold=ACCEL_THRESHOLD):
        return toeplitz_rmatvec(self, x, accel_threshold)

    def dense(self):
        out = self.field.zeros((self.n, self.n))
        for k, c in enumerate(self.col):
            for i in range(k, self.n):
                out[i, i - k] = c
        return out


def _fft_convolve(a, b, n):
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.fft(a, size) * np.fft.fft(b, size)
    return np.fft.ifft(spectrum)[:n]


def _convolve(T, x, accel_threshold):
    n = T.n
    if T.field is EXACT:
        col = T.col
        return T.field.array(T.field.dot(col[i::-1], x[:i + 1]) for i in range(n))
    if accel_threshold is not None and n >= accel_threshold:
        return _fft_convolve(T.col, x, n)
    return np.convolve(T.col, x)[:n]


def _check_vector(T, x):
    x = T.field.vector(x)
    if len(x) != T.n:
        raise DimensionMismatch(T.n, len(x))
    return x


def toeplitz_matvec(T, x, accel_threshold=ACCEL_THRESHOLD):
    """y[i] = sum_{j <= i} col[i-j] x[j]."""
    return _convolve(T, _check_vector(T, x), accel_threshold)


def toeplitz_rmatvec(T, x, accel_threshold=ACCEL_THRESHOLD):
    """Transposed product y[j] = sum_{i >= j} col[i-j] x[i], as a reversed convolution."""
    x = _check_vector(T, x)
    if T.field is EXACT:
        n = T.n
        return T.field.array(T.field.dot(T.col[:n - j], x[j:]) for j in range(n))
    return _convolve(T, x[::-1], accel_threshold)[::-1]


def toeplitz_product(A, B):
    if A.n != B.n:
        raise DimensionMismatch(A.n, B.n)
    if A.field is not B.field:
        raise ValueError(f"cannot multiply {A.field.name} and {B.field.name} operators")
    return LowerToeplitz(toeplitz_matvec(A, B.col), A.field, unit=A.unit and B.unit)


def reciprocal_table(tbl):
    """The (1/q;1/q) table matching ``tbl``."""
    if tbl.field.is_zero(tbl.q):
        raise ZeroQ()
    return build_qpoch_table(1 / tbl.q, tbl.n, tbl.eps, tbl.field)


def build_Tq(tbl):
    """T_q: col[k] = 1/(q;q)_k."""
    return LowerToeplitz(tbl.qfac_inv, tbl.field, unit=True)


def build_Tq_reciprocal(tbl):
    """T_(1/q), built from the (1/q;1/q) table."""
    return build_Tq(reciprocal_table(tbl))


def invert_Tq(tbl):
    """(T_q)^-1 = T_(1/q) (I - S), closed form.

    col[0] = 1, col[k] = 1/(1/q;1/q)_k - 1/(1/q;1/q)_(k-1).
    """
    inv = reciprocal_table(tbl).qfac_inv
    col = tbl.field.zeros(tbl.n)
    col[0] = tbl.field.one()
    for k in range(1, tbl.n):
        col[k] = inv[k] - inv[k - 1]
    return LowerToeplitz(col, tbl.field, unit=True)


def series_Tq_dense(tbl):
    """I + sum_{j>=1} S^j / (q;q)_j, summed as dense shift powers."""
    out = tbl.field.identity(tbl.n)
    for j in range(1, tbl.n):
        out = out + ShiftPower(tbl.n, j).dense(tbl.field) * tbl.qfac_inv[j]
    return out


def series_Tq_reciprocal_dense(tbl):
    """I + sum_{j>=1} (-1)^j q^(j(j-1)/2) (qS)^j / (q;q)_j, the expansion of T_(1/q)."""
    out = tbl.field.identity(tbl.n)
    triangular = tbl.field.one()  # q^(j(j-1)/2)
    q_j = tbl.field.one()
    for j in range(1, tbl.n):
        triangular = triangular * q_j
        q_j = q_j * tbl.q
        coefficient = triangular * q_j * tbl.qfac_inv[j]
        if j % 2:
            coefficient = -coefficient
        out = out + ShiftPower(tbl.n, j).dense(tbl.field) * coefficient
    return out
