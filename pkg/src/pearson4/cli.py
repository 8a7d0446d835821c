"""Command-line front end.

Subcommands and their output columns:

  sample      value, iterations
  density     x, density
  cdf         x, cdf
  gof         one JSON line per check (KS, moments, iteration bound)
  bench       a, s, algorithm, mean_iterations, ns_per_variate
  bayes       value (posterior modes first print mu1, m1)

Exit codes: 0 success, 1 a check failed, 2 usage or domain error,
3 I/O error.  ``--seed`` defaults to $PEARSON4_SEED, then to 20240101.
"""

import argparse
import csv
import json
import math
import os
import sys
import time

import numpy as np

from . import bayes as bayes_mod
from . import core
from .core import PearsonParams
from .errors import DomainError
from .rngkit import RngState
from .samplers import AlgorithmId, PeakBound, in_region, prepare
from .verify import NumericCdf, iteration_stats, ks_one_sample, moment_check

DEFAULT_SEED = 20240101
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

# (algorithm, a, s) cells checked by a default ``gof`` run
DEFAULT_GOF_GRID = (
    ("alg1", 2.0, 1.0),
    ("alg2", 1.5, 0.0), ("alg2", 3.0, 3.0), ("alg2", 9.0, 9.0), ("alg2", 1.0, 5.0),
    ("alg3", 1.0, 1.0), ("alg3", 2.0, 1.0), ("alg3", 3.0, 3.0),
    ("alg4", 16.0, 6.0), ("alg4", 9.0, 1.0), ("alg4", 1.2, 0.0),
    ("alg5", 0.6, 0.5), ("alg5", 0.75, 2.0), ("alg5", 0.9, 1.5), ("alg5", 1.0, 9.0),
    ("skewed_cauchy", 1.0, 9.0),
    ("auto", 0.8, 7.0), ("auto", 1.0, -2.5), ("auto", 2.5, 0.0),
    ("auto", 9.0, 1.0), ("auto", 9.0, 9.0), ("auto", 3.0, -6.0),
)

BENCH_A = (1.0, 3.0, 9.0)
BENCH_S = (1.0, 3.0, 9.0)
BENCH_ALGORITHMS = ("alg1", "alg2", "alg3", "alg4", "alg5")


class UsageError(Exception):
    pass


def iteration_limit(algorithm, params):
    """Upper bound on the mean iteration count, or None if none is proven."""
    if algorithm is AlgorithmId.ALG2:
        return 5.6
    if algorithm is AlgorithmId.ALG4:
        return 4.3
    if algorithm is AlgorithmId.ALG5:
        return 4.6 if abs(params.s) >= 1.0 else 5.1
    return None


def parse_grid(text):
    """``"a:s,a:s,..."`` to a list of (a, s); an empty text is an error."""
    cells = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            a, s = item.split(":")
            cells.append((float(a), float(s)))
        except ValueError:
            raise UsageError(f"bad grid cell {item!r}; expected a:s") from None
    if not cells:
        raise UsageError("grid is empty")
    return cells


def parse_xgrid(text):
    """Either ``lo:hi:count`` or a comma-separated list of points."""
    try:
        if text.count(":") == 2:
            lo, hi, count = text.split(":")
            count = int(count)
            if count < 1:
                raise ValueError
            return [float(v) for v in np.linspace(float(lo), float(hi), count)]
        xs = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad x grid {text!r}") from None
    if not xs:
        raise UsageError("x grid is empty")
    return xs


class Writer:
    """Rows out as CSV (with header) or JSON lines, floats in repr form."""

    def __init__(self, stream, fields, fmt):
        self.stream, self.fields, self.fmt = stream, fields, fmt
        if fmt == "csv":
            self._csv = csv.writer(stream, lineterminator="\n")
            self._csv.writerow(fields)

    def row(self, *values):
        if self.fmt == "csv":
            self._csv.writerow([_fmt(v) for v in values])
        else:
            self.stream.write(json.dumps(dict(zip(self.fields, values))) + "\n")


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get("PEARSON4_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"PEARSON4_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _params(args):
    return PearsonParams(args.a, args.s)


def cmd_sample(args, out):
    params = _params(args)
    used, draw = prepare(params, args.algorithm)
    state = RngState(_resolve_seed(args.seed))
    w = Writer(out, ("value", "iterations"), args.format)
    for _ in range(args.n):
        x, it = draw(state)
        w.row(float(x), it)
    return EXIT_OK


def cmd_density(args, out):
    params = _params(args)
    log_g = core.log_gamma(params)
    w = Writer(out, ("x", "density"), args.format)
    for x in parse_xgrid(args.x):
        w.row(x, math.exp(core.log_density(params, x) + log_g))
    return EXIT_OK


def cmd_cdf(args, out):
    params = _params(args)
    xs = parse_xgrid(args.x)
    table = NumericCdf.for_pearson(params)
    w = Writer(out, ("x", "cdf"), args.format)
    for x, f in zip(xs, table(np.array(xs))):
        w.row(x, float(f))
    return EXIT_OK


def gof_checks(algorithm, params, n, seed, envelope_scale=1.0, cdf_table=None):
    """KS, moment and iteration checks for one cell; returns report dicts."""
    algorithm = AlgorithmId(algorithm)
    options = {"envelope_scale": envelope_scale} if envelope_scale != 1.0 else {}
    used, draw = prepare(params, algorithm, **options)
    state = RngState(seed)
    xs = np.empty(n)
    its = np.empty(n, dtype=np.int64)
    for i in range(n):
        xs[i], its[i] = draw(state)
    table = cdf_table or NumericCdf.for_pearson(params)
    base = {"algorithm": algorithm.value, "used": used.value, "a": params.a, "s": params.s, "n": n}
    ks = ks_one_sample(xs, table)
    reports = [dict(base, check="ks", statistic=ks.statistic, threshold=ks.threshold, passed=ks.passed)]
    stats = iteration_stats(its)
    limit = iteration_limit(used, params)
    reports.append(dict(base, check="iterations", mean=stats.mean, max=stats.max, limit=limit,
                        passed=limit is None or stats.mean <= limit))
    if params.a > 2.5:
        # a finite fourth moment keeps the z-score meaningful
        mc = moment_check(xs, core.mean(params), core.variance(params))
        reports.append(dict(base, check="mean", z=mc.z_mean, passed=mc.passed))
    return reports


def cmd_gof(args, out):
    seed = _resolve_seed(args.seed)
    if args.grid is not None:
        cells = []
        for a, s in parse_grid(args.grid):
            params = PearsonParams(a, s)
            cells += [(alg, a, s) for alg in BENCH_ALGORITHMS if in_region(alg, params)]
            cells.append(("auto", a, s))
    else:
        cells = list(DEFAULT_GOF_GRID)
    scale = 0.5 if args.inject_fault else 1.0
    failures = []
    for k, (alg, a, s) in enumerate(cells):
        params = PearsonParams(a, s)
        checks = gof_checks(alg, params, args.n, seed + k, scale)
        for rep in checks:
            out.write(json.dumps(rep) + "\n")
            if not rep["passed"]:
                failures.append(rep)
    for rep in failures:
        print(f"FAIL {rep['check']} {rep['algorithm']} a={rep['a']} s={rep['s']}", file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


def bench_rows(cells, n, seed, precompute=False, warmup=1000):
    """Mean iterations and wall time per variate for every valid pair."""
    rows = []
    for a, s in cells:
        params = PearsonParams(a, s)
        for alg in BENCH_ALGORITHMS:
            if not in_region(alg, params):
                continue
            state = RngState(seed)
            used, draw = prepare(params, alg)
            for _ in range(warmup):
                draw(state)
            total_it = 0
            t0 = time.perf_counter_ns()
            if precompute:
                for _ in range(n):
                    total_it += draw(state)[1]
            else:
                for _ in range(n):
                    total_it += prepare(params, alg)[1](state)[1]
            elapsed = time.perf_counter_ns() - t0
            rows.append((a, s, alg, total_it / n, elapsed / n))
    return rows


def cmd_bench(args, out):
    if args.grid is not None:
        cells = parse_grid(args.grid)
    else:
        cells = [(a, s) for a in BENCH_A for s in BENCH_S]
    w = Writer(out, ("a", "s", "algorithm", "mean_iterations", "ns_per_variate"), args.format)
    for row in bench_rows(cells, args.n, _resolve_seed(args.seed), args.precompute):
        w.row(*row)
    return EXIT_OK


def cmd_bayes(args, out):
    b = bayes_mod.BayesParams(args.mu0, args.m0, args.n)
    posterior = args.mode.startswith("posterior")
    if posterior and args.y is None:
        raise UsageError(f"--mode {args.mode} needs --y")
    state = RngState(_resolve_seed(args.seed))
    if posterior:
        b = bayes_mod.posterior_update(b, args.y)
        if args.format == "csv":
            out.write(f"# mu1={b.mu0!r},m1={b.m0!r}\n")
        else:
            out.write(json.dumps({"mu1": b.mu0, "m1": b.m0}) + "\n")
    w = Writer(out, ("value",), args.format)
    if args.mode.endswith("mu"):
        used, draw = prepare(bayes_mod.to_pearson(b), AlgorithmId.AUTO)
        for _ in range(args.draws):
            w.row(float(draw(state)[0]))
    else:
        for _ in range(args.draws):
            w.row(float(bayes_mod.predictive_sample(state, b)))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="pearson4", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--format", choices=("csv", "jsonl"), default="csv")
        sp.add_argument("--out", help="output file (default stdout)")
        if seed:
            sp.add_argument("--seed", type=int, default=None)

    def pearson(sp):
        sp.add_argument("--a", type=float, required=True)
        sp.add_argument("--s", type=float, default=0.0)

    sp = sub.add_parser("sample", help="draw variates (columns: value, iterations)")
    pearson(sp)
    common(sp)
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--algorithm", choices=[x.value for x in AlgorithmId], default="auto")
    sp.set_defaults(func=cmd_sample)

    for name, func, column in (("density", cmd_density, "density"), ("cdf", cmd_cdf, "cdf")):
        sp = sub.add_parser(name, help=f"tabulate the {column} (columns: x, {column})")
        pearson(sp)
        common(sp, seed=False)
        sp.add_argument("--x", default="-5:5:101", help="lo:hi:count or comma list")
        sp.set_defaults(func=func)

    sp = sub.add_parser("gof", help="goodness-of-fit suite, JSON lines")
    sp.add_argument("--grid", help='cells "a:s,a:s"; default is the acceptance grid')
    sp.add_argument("--n", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out")
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_gof)

    sp = sub.add_parser("bench", help="iterations and ns per variate per valid cell")
    common(sp)
    sp.add_argument("--grid", help='cells "a:s,a:s"; default a, s in {1, 3, 9}')
    sp.add_argument("--n", type=int, default=100_000)
    sp.add_argument("--precompute", action="store_true",
                    help="set the constants up once instead of per variate")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("bayes", help="draws for the conjugate model (column: value)")
    common(sp)
    sp.add_argument("--mu0", type=float, required=True)
    sp.add_argument("--m0", type=float, required=True)
    sp.add_argument("--n", type=float, default=1.0)
    sp.add_argument("--y", type=float)
    sp.add_argument("--mode", choices=("prior-mu", "posterior-mu", "prior-pred", "posterior-pred"),
                    default="prior-pred")
    sp.add_argument("--draws", type=int, default=10)
    sp.set_defaults(func=cmd_bayes)
    return p


def _attach_values(argv):
    # let "--x -5:5:11" through: argparse would read "-5:5:11" as a flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--x", "--grid"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_attach_values(list(argv)))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    for name in ("n", "draws"):
        if name in args and getattr(args, name) is not None and getattr(args, name) < 1:
            print(f"error: --{name} must be positive", file=sys.stderr)
            return EXIT_USAGE
    try:
        out = open(args.out, "w", newline="") if args.out else sys.stdout
    except OSError as e:
        print(f"error: cannot open output: {e}", file=sys.stderr)
        return EXIT_IO
    try:
        return args.func(args, out)
    except (DomainError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    finally:
        if out is not sys.stdout:
            out.close()
        else:
            out.flush()


if __name__ == "__main__":
    sys.exit(main())
