from dataclasses import dataclass

import numpy as np

from q_pochhammer import q_powers
from utils import DimensionMismatch, SingularD, ZeroQ, field_for, get_field


@dataclass(frozen=True, eq=False)
class DiagonalOp:
    """Diagonal matrix stored as its diagonal. Invertibility is checked on demand."""

    diag: np.ndarray
    field: object

    def __post_init__(self):
        diag = np.array(self.field.vector(self.diag))
        diag.flags.writeable = False
        object.__setattr__(self, "diag", diag)

    @property
    def n(self):
        return len(self.diag)

    def apply(self, x):
        x = self.field.vector(x)
        if len(x) != self.n:
            raise DimensionMismatch(self.n, len(x))
        return self.diag * x

    def inverse(self):
        for i, d in enumerate(self.diag):
            if self.field.is_zero(d):
                raise SingularD(i)
        return DiagonalOp(self.field.array([1 / d for d in self.diag]), self.field)

    def dense(self):
        out = self.field.zeros((self.n, self.n))
        for i, d in enumerate(self.diag):
            out[i, i] = d
        return out


def build_Dq_power(q, m, n, backend=None):
    """D_(q^m): diag[i] = q^(m*i)."""
    field = get_field(backend) if backend is not None else field_for(q)
    q = field.coerce(q)
    if m < 0:
        if field.is_zero(q):
            raise ZeroQ()
        base = (1 / q) ** (-m)
    else:
        base = q ** m
    return DiagonalOp(field.array(q_powers(base, n, field)), field)


def build_Pq(tbl):
    """P_q: the (q;q)_i table on the diagonal."""
    return DiagonalOp(tbl.qfac, tbl.field)
