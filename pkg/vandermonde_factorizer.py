import logging
import os
import pickle
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from q_pochhammer import build_qpoch_table, gaussian_binomial, q_powers
from structured_ops import DiagonalOp, LowerToeplitz, build_Dq_power, build_Pq, build_Tq, build_Tq_reciprocal
from utils import COMPLEX, DenseCapExceeded, SingularD, ZeroQ, field_for, format_matrix, format_vector, get_field

logger = logging.getLogger(__name__)

DENSE_CAP = 256


def dense_cap_from_env(default=DENSE_CAP):
    value = os.environ.get("QVAND_DENSE_CAP")
    if value is None or value.strip() == "":
        return default
    return int(value)


def _resolve_field(q, backend):
    return get_field(backend) if backend is not None else field_for(q)


def build_vandermonde(q, n, backend=None):
    """Dense V_q with V[i][j] = q^(ij), read off a cached power table."""
    field = _resolve_field(q, backend)
    q = field.coerce(q)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if field.is_zero(q):
        raise ZeroQ()

    count = (n - 1) * (n - 1) + 1
    index = np.outer(np.arange(n), np.arange(n))
    if field is COMPLEX:
        # cumprod multiplies sequentially, same rounding as the iterated loop
        powers = np.concatenate(([1 + 0j], np.cumprod(np.full(count - 1, q, dtype=np.complex128))))
        return powers[index]

    powers = q_powers(q, count, field)
    V = field.zeros((n, n))
    for i in range(n):
        for j in range(n):
            V[i, j] = powers[index[i, j]]
    return V


def _lower_gram(LD, L, field):
    """LD L^T for lower-triangular L; the sum for (i, j) stops at min(i, j)."""
    n = len(L)
    out = field.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            out[i, j] = out[j, i] = field.dot(LD[i, :j + 1], L[j, :j + 1])
    return out


def build_D(tbl):
    """D[i] = (-1)^i q^(i(i-1)/2) (q;q)_i, with q^(i(i-1)/2) as a running product."""
    field = tbl.field
    values = []
    triangular = field.one()
    q_i = field.one()
    for i in range(tbl.n):
        d = triangular * tbl.qfac[i]
        values.append(-d if i % 2 else d)
        triangular = triangular * q_i
        q_i = q_i * tbl.q
    return DiagonalOp(field.array(values), field)


@dataclass(frozen=True, eq=False)
class QVFactorization:
    """V_q = L D L^T with L kept as the composition P_q T_q P_q^-1."""

    q: object
    n: int
    field: object
    tbl: object
    P: DiagonalOp
    P_inv: DiagonalOp
    Tq: LowerToeplitz
    D: DiagonalOp

    @property
    def backend(self):
        return self.field.name

    def l_entry(self, i, j):
        return gaussian_binomial(i, j, self.tbl)

    def d_entry(self, i):
        if not 0 <= i < self.n:
            raise IndexError(f"d_entry needs 0 <= i < {self.n}, got {i}")
        exponent = i * (i - 1) // 2
        value = self.q ** exponent * self.tbl.qfac[i]
        return -value if i % 2 else value

    @cached_property
    def d_inverse(self):
        values = []
        for i in range(self.n):
            d = self.d_entry(i)
            if self.field.is_zero(d):
                raise SingularD(i)
            values.append(1 / d)
        return DiagonalOp(self.field.array(values), self.field)

    def L_dense(self):
        """P_q T_q P_q^-1 as row and column scalings of T_q."""
        return self.P.diag[:, None] * self.Tq.dense() * self.P_inv.diag[None, :]

    def to_dict(self, with_l=False, residual=None):
        payload = {
            "q": self.field.format(self.q),
            "n": self.n,
            "backend": self.backend,
            "D": format_vector(self.D.diag, self.field),
        }
        if with_l:
            payload["L"] = format_matrix(self.L_dense(), self.field)
        if residual is not None:
            payload["residual"] = residual
        return payload


@dataclass(frozen=True, eq=False)
class BandedToeplitzResult:
    """Closed form of T_q D_(q^-m) T_(1/q) D_(q^m) plus the composition it came from."""

    m: int
    T: LowerToeplitz
    composition: tuple
    zero_coefficients: tuple
    dense_cap: int = DENSE_CAP

    @property
    def field(self):
        return self.T.field

    def compose(self, x):
        Tq, D_neg, T_rec, D_pos = self.composition
        return Tq.matvec(D_neg.apply(T_rec.matvec(D_pos.apply(x))))

    def compose_dense(self):
        n = self.T.n
        if n > self.dense_cap:
            raise DenseCapExceeded(n, self.dense_cap)
        identity = self.field.identity(n)
        out = self.field.zeros((n, n))
        for k in range(n):
            out[:, k] = self.compose(identity[:, k])
        return out

    def deviation(self, full=False):
        """Worst gap between the composition and the closed form.

        D_(q^-m) T_(1/q) D_(q^m) has entries q^(-m(i-j)) c[i-j], so the whole
        composition is lower-triangular Toeplitz and its first column determines
        it. ``full`` compares every column instead.
        """
        if full:
            return self.field.deviation(self.compose_dense(), self.T.dense())
        e0 = self.field.zeros(self.T.n)
        e0[0] = self.field.one()
        return self.field.deviation(self.compose(e0), self.T.col)


class VandermondeFactorizer:
    def __init__(self, eps=None, dense_cap=None):
        self.eps = eps
        self.dense_cap = dense_cap_from_env() if dense_cap is None else dense_cap

    def _check_cap(self, n):
        if n > self.dense_cap:
            raise DenseCapExceeded(n, self.dense_cap)

    def factorize(self, q, n, backend=None, read_from_stub=False, stub_path=None):
        field = _resolve_field(q, backend)
        q = field.coerce(q)
        eps = field.default_eps if self.eps is None else self.eps

        if read_from_stub and stub_path is not None and os.path.exists(stub_path):
            with open(stub_path, 'rb') as f:
                factorization = pickle.load(f)
            if (factorization.n == n and factorization.backend == field.name
                    and factorization.q == q and factorization.tbl.eps == eps):
                logger.info(f"✅ Loaded factorization from stub {stub_path}")
                return factorization
            logger.warning(f"⚠️ Stub {stub_path} holds a different factorization, rebuilding")

        tbl = build_qpoch_table(q, n, eps, field)
        P = build_Pq(tbl)
        factorization = QVFactorization(
            q=q, n=n, field=field, tbl=tbl,
            P=P, P_inv=P.inverse(), Tq=build_Tq(tbl), D=build_D(tbl),
        )
        logger.debug(f"✅ Factorized V_q for q={field.format(q)}, n={n}")

        if stub_path is not None:
            with open(stub_path, 'wb') as f:
                pickle.dump(factorization, f)

        return factorization

    def residual(self, factorization):
        """Exact: max |V - LDL^T| (zero when the identity holds). Complex: relative Frobenius norm."""
        f = factorization
        self._check_cap(f.n)
        V = build_vandermonde(f.q, f.n, f.field)
        L = f.L_dense()
        LD = L * f.D.diag[None, :]
        if f.field is COMPLEX:
            return float(np.linalg.norm(V - LD @ L.T) / np.linalg.norm(V))
        return f.field.deviation(V, _lower_gram(LD, L, f.field))

    def banded_product(self, q, m, n, backend=None):
        if m < 1:
            raise ValueError(f"m must be at least 1, got {m}")
        field = _resolve_field(q, backend)
        q = field.coerce(q)
        tbl = build_qpoch_table(q, n, self.eps, field)

        start = (1 / q) ** (m - 1)  # q^(1-m)
        col = field.zeros(n)
        poch = field.one()  # (q^(1-m); q)_j
        shifted = start
        for j in range(min(m, n)):
            col[j] = poch * tbl.qfac_inv[j]
            poch = poch * (1 - shifted)
            shifted = shifted * q

        zeros = tuple(j for j in range(min(m, n)) if field.is_zero(col[j]))
        if zeros:
            logger.info(f"🔍 Band coefficients vanish at sub-diagonals {zeros} for m={m}")

        composition = (
            build_Tq(tbl),
            build_Dq_power(q, -m, n, field),
            build_Tq_reciprocal(tbl),
            build_Dq_power(q, m, n, field),
        )
        return BandedToeplitzResult(
            m=m, T=LowerToeplitz(col, field, unit=True), composition=composition,
            zero_coefficients=zeros, dense_cap=self.dense_cap,
        )


def factorize(q, n, eps=None, backend=None):
    return VandermondeFactorizer(eps).factorize(q, n, backend)


def l_entry(factorization, i, j):
    return factorization.l_entry(i, j)


def d_entry(factorization, i):
    return factorization.d_entry(i)


def residual(factorization, dense_cap=None):
    return VandermondeFactorizer(dense_cap=dense_cap).residual(factorization)


def banded_product(q, m, n, eps=None, backend=None):
    return VandermondeFactorizer(eps).banded_product(q, m, n, backend)
