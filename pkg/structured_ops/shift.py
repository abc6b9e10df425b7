from dataclasses import dataclass

import numpy as np

from utils import COMPLEX, EXACT, field_for_array, get_field


def apply_shift_power(j, x):
    """y = S^j x: y[i] = x[i-j] for i >= j, zero above; all zero once j >= n."""
    if j < 0:
        raise ValueError(f"shift power must be nonnegative, got {j}")
    x = np.asarray(x)
    if x.dtype.kind in "iu":
        x = EXACT.array(x)
    field = field_for_array(x)
    if field is COMPLEX:
        x = x.astype(np.complex128)
    n = len(x)
    y = field.zeros(n)
    if j < n:
        y[j:] = x[:n - j]
    return y


@dataclass(frozen=True)
class ShiftPower:
    n: int
    j: int

    def __post_init__(self):
        if self.j < 0:
            raise ValueError(f"shift power must be nonnegative, got {self.j}")

    def apply(self, x):
        return apply_shift_power(self.j, x)

    def dense(self, backend):
        field = get_field(backend)
        out = field.zeros((self.n, self.n))
        for i in range(self.j, self.n):
            out[i, i - self.j] = field.one()
        return out
