"""Command-line front end: ``circfrechet {mean,population,predict,simulate}``."""
import argparse
import json
import math
import os
import sys

from . import experiments as ex
from .asymptotics import PredictionError, predict, predicted_mad
from .circle import TWO_PI, SortedSample
from .distributions import (
    CASES, DistributionError, load_distribution, population_means, sim_family,
)
from .frechet import enumerate_candidates, intrinsic_sample_mean, oracle_mean

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_REFUSED = 3


class InputError(Exception):
    pass


def _num(v):
    return format(float(v), ".17g")


def read_angles(path, degrees=False):
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                v = float(text)
            except ValueError:
                raise InputError(f"{path}:{lineno}: cannot parse {text!r} as a number") from None
            if not math.isfinite(v):
                raise InputError(f"{path}:{lineno}: non-finite value")
            if degrees:
                v = math.radians(v)
            if abs(v) > TWO_PI + 1e-9:
                raise InputError(f"{path}:{lineno}: angle {text} outside [-2pi, 2pi]")
            values.append(v)
    if not values:
        raise InputError(f"{path}: no angles found")
    return values


def _distribution(args):
    if args.case and args.input:
        raise InputError("give either --input or --case, not both")
    if args.case:
        return sim_family(CASES[args.case])
    if not args.input:
        raise InputError("a distribution is required (--input FILE or --case LABEL)")
    return load_distribution(args.input)


def cmd_mean(args, out):
    angles = read_angles(args.input, args.degrees)
    s = SortedSample.from_angles(angles)
    res = intrinsic_sample_mean(s)
    print(f"n: {s.n}", file=out)
    print(f"euclidean_average: {_num(s.mean)}", file=out)
    for m in res.global_means:
        print(f"intrinsic_mean: {_num(m)}", file=out)
    print(f"sample_variance: {_num(res.global_value)}", file=out)
    print(f"unique: {str(res.is_unique).lower()}", file=out)
    for c in res.local_minima:
        print(f"local_minimum: index={c.index} location={_num(c.location)} value={_num(c.value)}",
              file=out)
    if args.candidates:
        with open(args.candidates, "w") as fh:
            fh.write("index,location,value,is_local_min\n")
            for c in enumerate_candidates(s):
                fh.write(f"{c.index},{_num(c.location)},{_num(c.value)},{int(c.is_local_min)}\n")
    if args.verify:
        ref = oracle_mean(s, max(args.grid, 4 * s.n))
        agree = (len(ref.global_means) == len(res.global_means)
                 and abs(ref.global_value - res.global_value) <= 1e-10)
        print(f"oracle_value: {_num(ref.global_value)}", file=out)
        print(f"oracle_agrees: {str(agree).lower()}", file=out)
        if not agree:
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_population(args, out):
    dist = _distribution(args)
    res = population_means(dist)
    for m in res.global_means:
        print(f"global_mean: {_num(m)}", file=out)
    for lo, hi in res.flat_intervals:
        print(f"flat_interval: {_num(lo)} {_num(hi)}", file=out)
    print(f"global_value: {_num(res.global_value)}", file=out)
    for (mu, v), c in zip(res.local_minima, res.classifications):
        order = "" if c.kind != "order_k" else f" k={c.k_plus} k_tilde={c.k_minus}"
        print(f"local_minimum: location={_num(mu)} value={_num(v)} antipode={c.kind}{order}",
              file=out)
    return EXIT_OK


def cmd_predict(args, out):
    dist = _distribution(args)
    res = population_means(dist)
    if res.flat_intervals:
        lo, hi = res.flat_intervals[0]
        print(f"refused: density is uniform opposite [{_num(lo)}, {_num(hi)}]; "
              "the mean set is an interval and no limit law applies", file=out)
        return EXIT_REFUSED
    if not res.is_unique:
        print("refused: the population mean is not unique", file=out)
        return EXIT_REFUSED
    mean = res.global_means[0]
    try:
        pred = predict(dist, mean)
    except PredictionError as err:
        print(f"refused ({err.kind}): {err}", file=out)
        return EXIT_REFUSED
    print(f"mean: {_num(mean)}", file=out)
    print(f"case: {pred.case_tag}", file=out)
    print(f"transform_order: {pred.transform_order}", file=out)
    print(f"rate: {_num(-pred.rate_exponent)}", file=out)
    print(f"scale: {_num(pred.scale)}", file=out)
    print(f"sigma_sq: {_num(pred.sigma_sq)}", file=out)
    for n in args.n or []:
        print(f"predicted_mad: n={n} value={_num(predicted_mad(pred, n))}", file=out)
    return EXIT_OK


def _simulate_configs(args):
    cfg = {}
    if args.input:
        with open(args.input) as fh:
            try:
                cfg = json.load(fh)
            except json.JSONDecodeError as err:
                raise InputError(f"invalid config JSON: {err}") from None
        if not isinstance(cfg, dict):
            raise InputError("config must be a JSON object")
        unknown = set(cfg) - {"cases", "n_grid", "replications", "seed", "outputs", "workers"}
        if unknown:
            raise InputError(f"unknown config key {sorted(unknown)[0]!r}")
    cases = [args.case] if args.case else cfg.get("cases", list(CASES))
    for c in cases:
        if c not in CASES:
            raise InputError(f"unknown case {c!r}")
    n_grid = args.n or cfg.get("n_grid", ex.DEFAULT_N_GRID)
    reps = args.reps or cfg.get("replications", 300)
    seed = args.seed if args.seed is not None else cfg.get("seed", ex.DEFAULT_SEED)
    outputs = args.outputs.split(",") if args.outputs else cfg.get("outputs", ["mad_curve"])
    workers = args.workers or cfg.get("workers", 1)
    configs = []
    for c in cases:
        try:
            configs.append(ex.ExperimentConfig.for_case(
                c, n_grid=n_grid, replications=int(reps), master_seed=int(seed),
                outputs=tuple(outputs), workers=int(workers)))
        except (TypeError, ValueError) as err:
            raise InputError(str(err)) from None
    return configs


def cmd_simulate(args, out):
    configs = _simulate_configs(args)
    if not args.output:
        raise InputError("--output directory is required")
    os.makedirs(args.output, exist_ok=True)
    written = []
    try:
        for cfg in configs:
            outputs = list(cfg.outputs)
            if "qq" in outputs and ex.limit_law(cfg.distribution) is None:
                print(f"case {cfg.case}: qq skipped, no limit law applies", file=out)
                outputs.remove("qq")
                cfg.outputs = tuple(outputs)
            results = ex.run(cfg)
            if "mad_curve" in results:
                path = os.path.join(args.output, f"case_{cfg.case}_mad_curve.csv")
                _write(path, ex.mad_curve_csv(results["mad_curve"]), written)
                curve = results["mad_curve"]
                try:
                    slope = _num(ex.estimate_rate(curve))
                except ValueError:
                    slope = "n/a"
                pred = ex.limit_law(cfg.distribution)
                expected = "n/a" if pred is None else _num(-pred.rate_exponent)
                ties = sum(r.ties for r in curve.rows)
                print(f"case {cfg.case}: estimated slope {slope}  predicted slope {expected}"
                      f"  ties {ties}", file=out)
            if "histogram" in results:
                path = os.path.join(args.output, f"case_{cfg.case}_histogram.csv")
                _write(path, ex.histogram_csv(*results["histogram"]), written)
            if "qq" in results:
                path = os.path.join(args.output, f"case_{cfg.case}_qq.csv")
                _write(path, ex.qq_csv(results["qq"]), written)
    except BaseException:
        for path in written:
            if os.path.exists(path):
                os.remove(path)
        raise
    return EXIT_OK


def _write(path, text, written):
    written.append(path)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="circfrechet", description="Intrinsic means on the circle.", allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mean", help="intrinsic mean(s) of a data file", allow_abbrev=False)
    p.add_argument("--input", required=True, help="one angle per line")
    p.add_argument("--degrees", action="store_true", help="angles are in degrees")
    p.add_argument("--candidates", metavar="CSV", help="write every polygon vertex to CSV")
    p.add_argument("--verify", action="store_true", help="cross-check against a grid search")
    p.add_argument("--grid", type=int, default=100_000, help="grid size for --verify")
    p.set_defaults(func=cmd_mean)

    for name, func, text in (("population", cmd_population, "population means of a distribution"),
                             ("predict", cmd_predict, "asymptotic law of the sample mean")):
        p = sub.add_parser(name, help=text, allow_abbrev=False)
        p.add_argument("--input", help="distribution JSON file")
        p.add_argument("--case", choices=sorted(CASES), help="simulation-family case")
        if name == "predict":
            p.add_argument("--n", type=int, action="append", help="sample size (repeatable)")
        p.set_defaults(func=func)

    p = sub.add_parser("simulate", help="Monte Carlo study", allow_abbrev=False)
    p.add_argument("--input", help="experiment config JSON")
    p.add_argument("--output", help="directory for CSV files")
    p.add_argument("--case", choices=sorted(CASES))
    p.add_argument("--n", type=int, action="append", help="sample size (repeatable)")
    p.add_argument("--reps", type=int, help="replications per sample size")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--outputs", help="comma-separated subset of mad_curve,histogram,qq")
    p.add_argument("--workers", type=int, help="worker processes")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, DistributionError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


def main_exit():
    sys.exit(main())
