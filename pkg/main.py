import argparse
import logging
import sys

from identity_verifier import MAX_BAND, IdentityVerifier
from run_config import COMMANDS, RunConfig
from solve_benchmark import SolveBenchmark
from utils import DegenerateQ, QVandError, ZeroQ, json_float, read_vector, save_json, save_text
from vandermonde_factorizer import VandermondeFactorizer
from vandermonde_solver import VandermondeSolver

logger = logging.getLogger("qvand")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qvand",
        description="LDL^T factorization and O(n^2) solver for the q-Vandermonde matrix V_q.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--q", type=str, default=None,
                        help="q as 'p/q', 'p' or '[re,im]'")
    parser.add_argument("--n", type=int, default=None, help="matrix dimension")
    parser.add_argument("--backend", choices=("exact", "complex"), default=None,
                        help="exact rationals or double-precision complex")
    parser.add_argument("--eps", type=float, default=None,
                        help="A_n guard tolerance on the complex backend (default 1e-10)")
    parser.add_argument("--m", type=int, default=None,
                        help=f"largest band parameter for verify (default {MAX_BAND})")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--check", action="store_true", help="factor: include the LDL^T residual")
    parser.add_argument("--dft", action="store_true", help="use q = exp(-2 pi i / n)")
    parser.add_argument("--in", dest="input_path", default=None, help="solve: JSON right-hand side")
    parser.add_argument("--out", dest="output_path", default=None, help="write output here instead of stdout")
    parser.add_argument("--ladder", type=str, default=None, help="bench sizes: '128,256' or '128..2048'")
    parser.add_argument("--with-l", dest="with_l", action="store_true", help="factor: include dense L")
    parser.add_argument("--stub", type=str, default=None, help="pickle cache for the factorization")
    parser.add_argument("--verbose", action="store_true")
    return parser


def _factorize(cfg):
    factorizer = VandermondeFactorizer(cfg.eps)
    factorization = factorizer.factorize(cfg.q_value(), cfg.n, cfg.field,
                                         read_from_stub=cfg.stub is not None, stub_path=cfg.stub)
    return factorizer, factorization


def cmd_factor(cfg):
    factorizer, factorization = _factorize(cfg)
    residual = None
    if cfg.check:
        value = factorizer.residual(factorization)
        if cfg.backend == "exact":
            residual = "exact-zero" if value == 0 else cfg.field.format(value)
        else:
            residual = json_float(value, "residual")
    save_json(factorization.to_dict(with_l=cfg.with_l, residual=residual), cfg.output_path)
    return 0


def cmd_solve(cfg):
    b = read_vector(cfg.input_path, cfg.backend)
    _, factorization = _factorize(cfg)
    report = VandermondeSolver(factorization).solve(b)
    save_json(report.to_dict(), cfg.output_path)
    return 0


def cmd_verify(cfg):
    verifier = IdentityVerifier(cfg.q_value(), cfg.n, cfg.backend, eps=cfg.eps, seed=cfg.seed,
                                max_band=cfg.m or MAX_BAND)
    results = verifier.run()
    save_text(verifier.report(results), cfg.output_path)
    if all(result.passed for result in results):
        logger.info("✅ All identity suites passed")
        return 0
    logger.error("❌ Some identity suites failed")
    return 3


def cmd_bench(cfg):
    benchmark = SolveBenchmark(cfg.ladder, eps=cfg.eps, seed=cfg.seed)
    df = benchmark.run()
    save_text(benchmark.to_csv(df), cfg.output_path)
    return 0


HANDLERS = {
    "factor": cmd_factor,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(message)s", stream=sys.stderr, force=True)
    try:
        cfg = RunConfig.from_args(args)
        return HANDLERS[cfg.command](cfg)
    except (DegenerateQ, ZeroQ) as e:
        logger.error(f"❌ Error: {e}")
        return 2
    except (QVandError, ValueError, OSError) as e:
        logger.error(f"❌ Error: {e}")
        return 1


if __name__ == '__main__':
    sys.exit(main())
