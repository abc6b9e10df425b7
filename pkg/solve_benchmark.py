import cmath
import logging
import time

import numpy as np
import pandas as pd

from structured_ops import ACCEL_THRESHOLD
from utils import COMPLEX
from vandermonde_factorizer import VandermondeFactorizer, build_vandermonde
from vandermonde_solver import VandermondeSolver, dense_solve_oracle

logger = logging.getLogger(__name__)

CSV_HEADER = "# qvand-bench v1"
CSV_COLUMNS = ["n", "structured_solve_seconds", "dense_oracle_seconds", "residual"]
DEFAULT_LADDER = (128, 256, 512, 1024, 2048)


def dft_root(n):
    """q = exp(-2 pi i / n), the root that turns V_q into the DFT matrix."""
    return cmath.exp(-2j * cmath.pi / n)


def parse_ladder(text):
    """'128,256,512' or the doubling range '128..2048'."""
    text = text.strip()
    if ".." in text:
        low, high = (int(part) for part in text.split("..", 1))
        if low < 1 or high < low:
            raise ValueError(f"bad ladder range {text!r}")
        ladder = []
        n = low
        while n <= high:
            ladder.append(n)
            n *= 2
        return tuple(ladder)
    ladder = tuple(int(part) for part in text.split(",") if part.strip())
    if not ladder or min(ladder) < 1:
        raise ValueError(f"bad ladder {text!r}")
    return ladder


def fit_scaling_exponent(ns, seconds):
    """Slope of log(seconds) against log(n)."""
    slope, _ = np.polyfit(np.log(np.asarray(ns, dtype=float)), np.log(np.asarray(seconds, dtype=float)), 1)
    return float(slope)


class SolveBenchmark:
    def __init__(self, ladder=DEFAULT_LADDER, repetitions=5, eps=None, seed=0,
                 accel_threshold=ACCEL_THRESHOLD):
        self.ladder = tuple(ladder)
        self.repetitions = repetitions
        self.eps = eps
        self.seed = seed
        self.accel_threshold = accel_threshold
        self.factorizer = VandermondeFactorizer(eps, dense_cap=max(self.ladder))

    def _median_seconds(self, fn):
        times = []
        for _ in range(self.repetitions):
            start = time.perf_counter()
            fn()
            times.append(time.perf_counter() - start)
        return float(np.median(times))

    def run_size(self, n):
        q = dft_root(n)
        rng = np.random.default_rng((self.seed, n))
        b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        b /= np.linalg.norm(b)

        factorization = self.factorizer.factorize(q, n, COMPLEX)
        solver = VandermondeSolver(factorization, self.accel_threshold)
        V = build_vandermonde(q, n, COMPLEX)

        structured = self._median_seconds(lambda: solver.solve(b))
        dense = self._median_seconds(lambda: dense_solve_oracle(V, b))
        residual = solver.solve(b).residual_norm
        if not np.isfinite(residual):
            logger.warning(f"⚠️ n={n}: residual is not finite ({residual!r}), float cancellation at this size")
        logger.info(f"✅ n={n}: structured {structured:.4f}s, dense {dense:.4f}s, residual {residual:.3e}")
        return {"n": n, "structured_solve_seconds": structured,
                "dense_oracle_seconds": dense, "residual": residual}

    def run(self):
        logger.info(f"🔍 Benchmarking ladder {list(self.ladder)} with {self.repetitions} repetitions")
        rows = [self.run_size(n) for n in self.ladder]
        df = pd.DataFrame(rows, columns=CSV_COLUMNS)
        if len(df) >= 2:
            logger.info(f"📊 Scaling exponents: structured "
                        f"{fit_scaling_exponent(df['n'], df['structured_solve_seconds']):.2f}, dense "
                        f"{fit_scaling_exponent(df['n'], df['dense_oracle_seconds']):.2f}")
        return df

    def to_csv(self, df):
        return f"{CSV_HEADER}\n# seed {self.seed}\n" + df.to_csv(index=False, lineterminator="\n", na_rep="nan")
