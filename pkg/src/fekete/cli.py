"""Command-line front end.

Every subcommand prints one JSON run record on stdout; array payloads can
also be written to a CSV sidecar with ``--out``.  Exit status is 0 on
success, 2 for invalid input and 1 for numerical failures.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .arith import cached_table, gauss_sum, quadratic_correlation
from .errors import DomainError
from .estimate import EXACT, MONTE_CARLO, Estimate
from .quad import QuadConfig

_MODES = {"exact": EXACT, "mc": MONTE_CARLO, "monte_carlo": MONTE_CARLO}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def write_csv(path, header, rows):
    """CSV with '.' decimals and 17 significant digits, independent of locale."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _cfg(args):
    return QuadConfig(nodes=args.nodes, threads=args.threads)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError("missing required option(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _estimate_payload(est: Estimate):
    return {"value": est.value, "std_error": est.std_error, "n_samples": est.n_samples, "seed": est.seed,
            "extras": {"mode": est.mode, "error_estimate": est.error_estimate, **est.extras}}


# ------------------------------------------------------------- subcommands

def cmd_table(args):
    _require(args, "p")
    table = cached_table(args.p)
    sym = table.symbols
    if args.out:
        write_csv(args.out, ["n", "symbol"], ((n, int(s)) for n, s in enumerate(sym)))
    g = gauss_sum(table)
    return {"value": {"p": table.p, "residues": int(np.sum(sym == 1)), "non_residues": int(np.sum(sym == -1)),
                      "gauss_sum": [g.real, g.imag], "quadratic_correlation_1": quadratic_correlation(table, 1)}}


def cmd_eval(args):
    from .eval import fekete_grid_many, gauss_point

    _require(args, "p")
    table = cached_table(args.p)
    grid = args.grid or 8
    off = np.arange(grid) / grid
    F = fekete_grid_many(table, off)
    G = F / gauss_point(table.p)
    if args.out:
        rows = ((k, off[j], G[j, k].real, G[j, k].imag, abs(F[j, k]))
                for k in range(table.p) for j in range(grid))
        write_csv(args.out, ["k", "t", "re_G", "im_G", "abs_F"], rows)
    absF = np.abs(F)
    return {"value": {"p": table.p, "points": int(F.size), "max_abs_F": float(absF.max()),
                      "mean_abs_F2": float(np.mean(absF**2))}}


def cmd_mahler(args):
    from .quad import mahler_fekete

    _require(args, "p")
    est = mahler_fekete(args.p, _cfg(args), cached_table(args.p))
    return _estimate_payload(est)


def cmd_norm(args):
    from .quad import lq_norm_fekete

    _require(args, "p", "q")
    est = lq_norm_fekete(args.p, args.q, _cfg(args), cached_table(args.p))
    return _estimate_payload(est)


def cmd_zeros(args):
    from .quad import circle_zero_count

    _require(args, "p")
    count, ratio = circle_zero_count(args.p, _cfg(args), cached_table(args.p))
    return {"value": {"count": count, "ratio": ratio}}


def cmd_process_sample(args):
    from .process import process_G, sample_pattern

    _require(args, "J")
    count = args.samples or 1
    grid = args.grid or 64
    t = (np.arange(grid) + 0.5) / grid
    rows, patterns = [], []
    for i in range(count):
        pat = sample_pattern(args.J, args.seed, i)
        patterns.append(pat.signs.tolist())
        G = process_G(pat, t)
        rows += [(i, tv, g.real, g.imag) for tv, g in zip(t, G)]
    if args.out:
        write_csv(args.out, ["pattern", "t", "re_G", "im_G"], rows)
    return {"value": {"J": args.J, "patterns": patterns}, "n_samples": count, "seed": args.seed}


def cmd_k0(args):
    from .process import k0_estimate

    _require(args, "J")
    mode = _MODES.get(args.mode or "mc")
    if mode is None:
        raise DomainError(f"unknown mode {args.mode!r}")
    est = k0_estimate(args.J, args.samples or 0, mode, _cfg(args), seed=args.seed)
    return _estimate_payload(est)


def cmd_kq(args):
    from .process import kq_estimate

    _require(args, "q", "J", "samples")
    est = kq_estimate(args.q, args.J, args.samples, seed=args.seed, threads=args.threads)
    return _estimate_payload(est)


def _p_list(text):
    return [int(v) for v in str(text).split(",") if v.strip()]


def cmd_moments(args):
    from .verify import MomentSpec, moment_convergence_report

    p_list = _p_list(args.p_list or "101,1009,10007")
    reports = {
        "second": moment_convergence_report(p_list, args.J, MomentSpec((0.37,), (1,), (1,))),
        "fourth": moment_convergence_report(p_list, args.J, MomentSpec((0.2, 0.7), (1, 1), (1, 1))),
    }
    return {"value": reports}


def cmd_dist(args):
    from .verify import distribution_compare, load_rects

    _require(args, "p", "J")
    rep = distribution_compare(args.p, load_rects(args.rects), args.J, args.samples or 10**5,
                               grid_per_arc=args.grid or 64, seed=args.seed, threads=args.threads)
    if args.out:
        write_csv(args.out, ["rect", "fekete", "process", "process_std_error", "gap"],
                  zip(rep["rects"], rep["fekete"], rep["process"], rep["process_std_error"], rep["gaps"]))
    return {"value": rep, "n_samples": rep["n_draws"], "seed": args.seed}


def cmd_verify(args):
    from .verify import run_suite

    params = {"seed": args.seed}
    if args.p is not None:
        params["p"] = args.p
    rep = run_suite(args.suite, **params)
    return {"value": rep, "passed": bool(rep["passed"])}


COMMANDS = {
    "table": cmd_table,
    "eval": cmd_eval,
    "mahler": cmd_mahler,
    "norm": cmd_norm,
    "zeros": cmd_zeros,
    "process-sample": cmd_process_sample,
    "k0": cmd_k0,
    "kq": cmd_kq,
    "moments": cmd_moments,
    "dist": cmd_dist,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int)
    common.add_argument("--q", type=float)
    common.add_argument("--J", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--nodes", type=int, default=32)
    common.add_argument("--grid", type=int)
    common.add_argument("--rects")
    common.add_argument("--out")
    common.add_argument("--threads", type=int)
    common.add_argument("--mode")
    parser = _Parser(prog="fekete", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "moments":
            sp.add_argument("--p-list", dest="p_list")
        if name == "verify":
            sp.add_argument("--suite", required=True)
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        result = COMMANDS[args.command](args)
    except (DomainError, ValueError, OSError) as exc:
        sys.stderr.write(f"fekete {args.command}: {exc}\n")
        return 2
    except ArithmeticError as exc:
        sys.stderr.write(f"fekete {args.command}: numerical error: {exc}\n")
        return 1
    params = {k: v for k, v in vars(args).items() if k not in ("command",) and v is not None}
    payload = result.get("value")
    record = {
        "command": args.command,
        "params": params,
        "value": payload,
        "std_error": result.get("std_error", 0.0),
        "n_samples": result.get("n_samples", 0),
        "seed": result.get("seed", args.seed),
        "elapsed_seconds": time.perf_counter() - t0,
        "version": __version__,
    }
    for key in ("extras", "passed"):
        if key in result:
            record[key] = result[key]
    stdout.write(json.dumps(_jsonable(record), sort_keys=False) + "\n")
    if result.get("passed") is False:
        return 1
    return 0


def main(argv=None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
