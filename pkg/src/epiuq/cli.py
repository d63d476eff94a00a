"""Command-line front end.

Exit codes: 0 success, 2 configuration or usage error, 3 too few accepted
draws, 4 simulation stopped at ``--max-steps``.
"""

import argparse
import csv
import io
import json
import sys

import jsonschema
import numpy as np

from . import schemas
from .errors import ConfigError, DomainError, InsufficientSampleError, StepSizeError
from .mce import mce_table
from .ode import OdeConfig, initial_state, integrate
from .r0 import StructureSpec
from .stochastic import EI_ZERO, I_ZERO, EpidemicState, SimConfig, run_ensemble, simulate
from .structural import compare_structures
from .uncertainty import (
    DistributionSpec,
    PointMass,
    SerialIntervalWindow,
    Uniform,
    evaluate,
    percentile_summary,
)

EXIT_OK, EXIT_CONFIG, EXIT_SAMPLE, EXIT_TRUNCATED = 0, 2, 3, 4
DEFAULT_SEED = 8


class UsageError(Exception):
    pass


def fmt(x):
    """Shortest round-tripping text for a number; integral floats print without ``.0``."""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def count(text):
    """Parse counts written as ``1e6`` or ``1000000``."""
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not v.is_integer() or v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive whole number, got {text!r}")
    return int(v)


def period(text):
    """A strictly positive duration in days."""
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not v > 0:
        raise argparse.ArgumentTypeError(f"periods must be positive, got {text!r}")
    return v


def count_list(text):
    return [count(t) for t in text.split(",") if t.strip()]


# -- config -----------------------------------------------------------------


def load_config(path):
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    try:
        jsonschema.validate(cfg, schemas.CONFIG)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid config {path}: {exc.message}")
    return cfg


def _interval(block):
    if block is None:
        return None
    if "point" in block:
        return PointMass(block["point"])
    lo, hi = block["uniform"]
    return Uniform(lo, hi)


def distribution_spec(cfg):
    d = cfg.get("distributions")
    if d is None:
        raise ConfigError("config has no 'distributions' block")
    return DistributionSpec(
        lam=_interval(d["lambda"]),
        infectious_period=_interval(d["infectious_period"]),
        latent_period=_interval(d.get("latent_period")),
    )


def structure_spec(cfg, args):
    block = dict(cfg.get("structure", {}))
    if getattr(args, "structure", None):
        block["kind"] = args.structure
    if getattr(args, "m", None) is not None:
        block["m"] = args.m
    if getattr(args, "n", None) is not None:
        block["n"] = args.n
    if "kind" not in block:
        raise ConfigError("no structure given (config 'structure' block or --structure)")
    return StructureSpec(block["kind"], block.get("m", 1.0), block.get("n", 1.0))


def window_from(cfg, args):
    if getattr(args, "no_window", False):
        return None
    w = args.window if getattr(args, "window", None) is not None else cfg.get("window")
    return None if w is None else SerialIntervalWindow(*w)


def pick(flag, cfg_value, default=None):
    if flag is not None:
        return flag
    return default if cfg_value is None else cfg_value


# -- output -----------------------------------------------------------------


def emit(args, text):
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def json_text(obj, schema):
    jsonschema.validate(obj, schema)
    return json.dumps(obj, indent=2) + "\n"


def write_file(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


# -- commands ---------------------------------------------------------------


def cmd_r0(args):
    s = StructureSpec(args.structure, args.m if args.m is not None else 1.0,
                      args.n if args.n is not None else 1.0)
    gamma = 1.0 / args.infectious_period
    sigma = None
    if s.needs_latent:
        if args.latent_period is None:
            raise UsageError(f"--latent-period is required for --structure {s.kind}")
        sigma = 1.0 / args.latent_period
    if s.kind == "seminr" and (args.m is None or args.n is None):
        raise UsageError("--m and --n are required for --structure seminr")
    print(f"{s.r0(args.lam, gamma, sigma):.6g}")
    return EXIT_OK


def cmd_mc(args):
    cfg = load_config(args.config)
    structure = structure_spec(cfg, args)
    spec = distribution_spec(cfg)
    window = window_from(cfg, args)
    seed = pick(args.seed, cfg.get("seed"), DEFAULT_SEED)
    M = int(pick(args.M, cfg.get("M"), 10**4))
    batch = evaluate(structure, spec, window, M, seed)
    if args.dump_batch:
        batch.to_csv(args.dump_batch)
    s = percentile_summary(batch.accepted_r0(), n_total=len(batch))
    out = s.as_dict() | {"seed": seed}
    if args.format == "json":
        emit(args, json_text(out, schemas.MC_SUMMARY))
    else:
        emit(args, csv_text(list(out), [list(out.values())]))
    return EXIT_OK


def cmd_mce(args):
    cfg = load_config(args.config)
    block = cfg.get("mce", {})
    structure = structure_spec(cfg, args)
    spec = distribution_spec(cfg)
    window = window_from(cfg, args)
    seed = pick(args.seed, cfg.get("seed"), DEFAULT_SEED)
    grid = pick(args.grid, block.get("grid"))
    if grid is None:
        grid = [int(pick(None, cfg.get("M"), 10**4))]
    B = pick(args.B, block.get("B"), 1000)
    statistic = pick(args.statistic, block.get("statistic"), "median")
    rows = mce_table(structure, spec, window, [int(g) for g in grid], B, statistic, seed)
    if args.format == "json":
        emit(args, json_text({"seed": seed, "statistic": statistic, "rows": rows}, schemas.MCE_TABLE))
    else:
        emit(args, csv_text(["M", "B", "mce"], [(r["M"], r["B"], r["mce"]) for r in rows]))
    return EXIT_OK


def sim_config(args):
    initial = EpidemicState(0.0, args.S0, args.E0, args.I0, args.R0)
    return SimConfig(
        beta=args.beta,
        sigma=1.0 / args.latent_period,
        gamma=1.0 / args.infectious_period,
        initial=initial,
        delta_t=args.dt,
        seed=args.seed,
        max_steps=args.max_steps,
        termination=args.termination,
        frequency_dependent=args.frequency_dependent,
    )


def cmd_simulate(args):
    config = sim_config(args)
    traj = simulate(config)
    rows = list(traj.rows())
    if args.format == "json":
        obj = {"columns": ["t", "S", "E", "I", "R"], "rows": [list(r) for r in rows],
               "truncated": traj.truncated, "seed": args.seed}
        emit(args, json_text(obj, schemas.TRAJECTORY))
    else:
        emit(args, csv_text(["t", "S", "E", "I", "R"], rows))
    if traj.truncated:
        print(f"simulation stopped at max_steps={args.max_steps}", file=sys.stderr)
        return EXIT_TRUNCATED
    return EXIT_OK


def cmd_ensemble(args):
    config = sim_config(args)
    ens = run_ensemble(config, args.runs, seed=args.seed, extinction_threshold=args.extinction_threshold,
                       grid_step=args.grid_step)
    bands = {
        name: {
            "q025": ens.bands[name][0].tolist(),
            "q50": ens.bands[name][1].tolist(),
            "q975": ens.bands[name][2].tolist(),
            "mean": ens.bands[name + "_mean"].tolist(),
        }
        for name in "SEIR"
    }
    if args.bands_out:
        band_rows = []
        for j, t in enumerate(ens.grid):
            for name in "SEIR":
                b = bands[name]
                band_rows.append((t, name, b["q025"][j], b["q50"][j], b["q975"][j], b["mean"][j]))
        write_file(args.bands_out, csv_text(["t", "compartment", "q025", "q50", "q975", "mean"], band_rows))
    if args.format == "json":
        major = ens.mean_major_final_size()
        obj = {
            "seed": args.seed,
            "n_runs": ens.n_runs,
            "n_truncated": int(ens.n_truncated),
            "extinction_threshold": ens.extinction_threshold,
            "extinction_fraction": ens.extinction_fraction,
            "mean_major_final_size": None if np.isnan(major) else major,
            "final_size_quantiles": ens.final_size_quantiles(),
            "final_sizes": ens.final_sizes.tolist(),
            "grid": ens.grid.tolist(),
            "bands": bands,
        }
        emit(args, json_text(obj, schemas.ENSEMBLE))
    else:
        rows = zip(range(ens.n_runs), ens.final_sizes, ens.extinct, ens.durations)
        emit(args, csv_text(["run", "final_size", "extinct", "duration"], rows))
    if ens.n_truncated:
        print(f"{ens.n_truncated} runs stopped at max_steps={args.max_steps}", file=sys.stderr)
        return EXIT_TRUNCATED
    return EXIT_OK


def cmd_ode(args):
    s = StructureSpec(args.structure, args.m if args.m is not None else 1, args.n if args.n is not None else 1)
    sigma = None
    if s.needs_latent:
        if args.latent_period is None:
            raise UsageError(f"--latent-period is required for --structure {s.kind}")
        sigma = 1.0 / args.latent_period
    y0 = initial_state(s, args.N, args.I0, E0=args.E0)
    config = OdeConfig(s, args.beta, 1.0 / args.infectious_period, args.N, y0, sigma, args.dt, args.t_end)
    sol = integrate(config)
    keep = slice(None, None, args.every)
    columns = ["t"] + sol.labels
    rows = [[t, *y] for t, y in zip(sol.t[keep], sol.y[keep])]
    if args.format == "json":
        emit(args, json_text({"columns": columns, "rows": rows, "seed": None}, schemas.TRAJECTORY))
    else:
        emit(args, csv_text(columns, rows))
    return EXIT_OK


def cmd_compare(args):
    cfg = load_config(args.config)
    spec = distribution_spec(cfg)
    window = window_from(cfg, args)
    seed = pick(args.seed, cfg.get("seed"), DEFAULT_SEED)
    M = int(pick(args.M, cfg.get("M"), 10**6))
    block = cfg.get("structure", {})
    m = pick(args.m, block.get("m"), 4.5)
    n = pick(args.n, block.get("n"), 3)
    bins = pick(args.bins, cfg.get("compare", {}).get("bins"), 60)
    cmp = compare_structures(spec, window, M, seed, m, n, bins)
    summary = cmp.summary_dict()
    hist = [dict(zip(("structure", "bin_lo", "bin_hi", "count"), r)) for r in cmp.histogram_rows()]
    if args.summary:
        write_file(args.summary, json_text(summary, schemas.COMPARE))
    if args.format == "json":
        emit(args, json_text(summary | {"histogram": hist}, schemas.COMPARE))
    elif args.long:
        emit(args, csv_text(["structure", "draw_r0"], cmp.long_rows()))
    else:
        emit(args, csv_text(["structure", "bin_lo", "bin_hi", "count"], cmp.histogram_rows()))
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def _common(p, seed_default=None):
    p.add_argument("--seed", type=int, default=seed_default,
                   help=f"generator seed (default {DEFAULT_SEED})")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _pipeline(p):
    p.add_argument("--config", help="JSON run config")
    p.add_argument("--structure", choices=("sir", "seir", "seminr"))
    p.add_argument("--m", type=float, help="latent-period shape (SEmInR)")
    p.add_argument("--n", type=float, help="infectious-period shape (SEmInR)")
    p.add_argument("--M", type=count, help="number of parameter draws")
    p.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"),
                   help="serial-interval acceptance window in days (inclusive)")
    p.add_argument("--no-window", action="store_true", help="ignore any window in the config")


def _sim(p):
    p.add_argument("--beta", type=float, required=True, help="transmission rate per infectious individual per day")
    p.add_argument("--latent-period", type=period, required=True, help="mean latent period, days")
    p.add_argument("--infectious-period", type=period, required=True, help="mean infectious period, days")
    p.add_argument("--S0", type=int, required=True)
    p.add_argument("--E0", type=int, default=0)
    p.add_argument("--I0", type=int, default=1)
    p.add_argument("--R0", type=int, default=0, help="initially recovered individuals")
    p.add_argument("--dt", type=float, default=0.25, help="cycle length, days")
    p.add_argument("--max-steps", type=count, default=10**6)
    p.add_argument("--termination", choices=(I_ZERO, EI_ZERO), default=I_ZERO)
    p.add_argument("--frequency-dependent", action="store_true", help="use beta*I/N as the force of infection")


def build_parser():
    parser = argparse.ArgumentParser(prog="epiuq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("r0", help="closed-form R0 from a growth rate and mean periods")
    p.add_argument("--structure", choices=("sir", "seir", "seminr"), required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="growth rate per day")
    p.add_argument("--infectious-period", type=period, required=True, help="days")
    p.add_argument("--latent-period", type=period, help="days")
    p.add_argument("--m", type=float)
    p.add_argument("--n", type=float)
    p.set_defaults(func=cmd_r0)

    p = sub.add_parser("mc", help="Monte Carlo percentile interval for R0")
    _pipeline(p)
    _common(p)
    p.add_argument("--dump-batch", metavar="PATH", help="write every draw as CSV")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("mce", help="Monte Carlo error over replicate runs")
    _pipeline(p)
    _common(p)
    p.add_argument("--grid", type=count_list, help="comma-separated M values, e.g. 1e3,1e4")
    p.add_argument("--B", type=count, help="replicates per M (default 1000)")
    p.add_argument("--statistic", help="median (default), mean, or a quantile level")
    p.set_defaults(func=cmd_mce)

    p = sub.add_parser("simulate", help="one chain-binomial SEIR outbreak")
    _sim(p)
    _common(p, DEFAULT_SEED)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("ensemble", help="many chain-binomial outbreaks")
    _sim(p)
    _common(p, DEFAULT_SEED)
    p.add_argument("--runs", type=count, default=1000)
    p.add_argument("--grid-step", type=float, default=1.0, help="spacing of the band grid, days")
    p.add_argument("--extinction-threshold", type=int, default=20)
    p.add_argument("--bands-out", metavar="PATH", help="write quantile bands as CSV")
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("ode", help="deterministic trajectory by fixed-step RK4")
    p.add_argument("--structure", choices=("sir", "seir", "seminr"), required=True)
    p.add_argument("--beta", type=float, required=True, help="transmission coefficient per day")
    p.add_argument("--infectious-period", type=period, required=True, help="days")
    p.add_argument("--latent-period", type=period, help="days")
    p.add_argument("--m", type=count, help="number of exposed substates")
    p.add_argument("--n", type=count, help="number of infectious substates")
    p.add_argument("--N", type=float, default=1000.0)
    p.add_argument("--I0", type=float, default=1.0)
    p.add_argument("--E0", type=float, default=0.0)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--t-end", type=float, default=100.0)
    p.add_argument("--every", type=count, default=1, help="write every k-th grid point")
    _common(p)
    p.set_defaults(func=cmd_ode)

    p = sub.add_parser("compare", help="R0 under SIR, SEIR and SEmInR on shared draws")
    p.add_argument("--config", required=True, help="JSON run config")
    p.add_argument("--M", type=count)
    p.add_argument("--m", type=float)
    p.add_argument("--n", type=float)
    p.add_argument("--bins", type=count)
    p.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--no-window", action="store_true")
    p.add_argument("--long", action="store_true", help="emit one row per accepted draw")
    p.add_argument("--summary", metavar="PATH", help="also write the JSON summary block")
    _common(p)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"epiuq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, DomainError, StepSizeError) as exc:
        print(f"epiuq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InsufficientSampleError as exc:
        print(
            f"epiuq {args.command}: error: {exc} "
            f"(accepted {exc.n_accepted} of {exc.n_total}, rate {exc.acceptance_rate:.4g})",
            file=sys.stderr,
        )
        return EXIT_SAMPLE


if __name__ == "__main__":
    sys.exit(main())
