from .diagonal import DiagonalOp, build_Dq_power, build_Pq
from .shift import ShiftPower, apply_shift_power
from .toeplitz import (ACCEL_THRESHOLD, LowerToeplitz, build_Tq, build_Tq_reciprocal, invert_Tq,
                       reciprocal_table, series_Tq_dense, series_Tq_reciprocal_dense,
                       toeplitz_matvec, toeplitz_product, toeplitz_rmatvec)

__all__ = [
    'DiagonalOp',
    'build_Dq_power',
    'build_Pq',
    'ShiftPower',
    'apply_shift_power',
    'ACCEL_THRESHOLD',
    'LowerToeplitz',
    'build_Tq',
    'build_Tq_reciprocal',
    'invert_Tq',
    'reciprocal_table',
    'series_Tq_dense',
    'series_Tq_reciprocal_dense',
    'toeplitz_matvec',
    'toeplitz_product',
    'toeplitz_rmatvec',
]
