"""``certify`` command-line front end.

Exit codes: 0 success, 1 campaign or selftest failure, 2 usage or config
error, 3 evaluation error (including oracle failure).
"""

import argparse
import inspect
import json
import math
import os
import sys

from . import capvol, packing, scalarfun, trianglegeom, volbounds
from .certify import (builtin_campaign, builtin_config, builtin_names, load_campaign,
                      run_campaign)
from .certify.engine import default_workers
from .certify.schedule import number
from .errors import ConfigError, DomainError, EvaluationError, QuadratureError
from .oracles import ORACLES

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3

# Parameters with these names are parsed as integers; the rest as reals.
_INT_PARAMS = {"n", "k"}


def _registry():
    reg = {"B": scalarfun.ball_volume}
    for mod, names in (
        (scalarfun, "q q_inv f_n xi_n g_k in_interval_I_k ball_volume phi_n psi_angle "
                    "theta_cap_angle"),
        (trianglegeom, "omega omega_bar theta_fn angle_bound_A lambda_fn omega_minus "
                       "omega_bar_plus theta_plus a_plus lambda_plus"),
        (capvol, "kappa iota sigma"),
        (packing, "h3 h2 beta tau density phi_bor vbor tvbor"),
        (volbounds, "w_st w1_st w_minus w1_minus w_sg w_far w_dr w_vsg chi_k psi_k "
                    "chi_minus psi_minus tail_large_d v_ad drill_bound"),
    ):
        for name in names.split():
            reg[name] = getattr(mod, name)
    return reg


FUNCTIONS = _registry()


def _params(fn):
    return list(inspect.signature(getattr(fn, "py_func", fn)).parameters)


def _format(value):
    if isinstance(value, (bool,)) or type(value).__name__ == "bool_":
        return str(bool(value))
    return f"{float(value):.12g}"


def _usage_error(msg):
    print(f"certify: {msg}", file=sys.stderr)
    return EXIT_USAGE


# Commands -------------------------------------------------------------------

def cmd_run(args):
    try:
        if args.campaign in builtin_names():
            campaign = builtin_campaign(args.campaign)
        elif os.path.exists(args.campaign):
            campaign = load_campaign(args.campaign)
        else:
            raise ConfigError(f"{args.campaign!r} is neither a builtin campaign "
                              f"({', '.join(builtin_names())}) nor a file")
        workers = args.workers if args.workers is not None else default_workers()
        report = run_campaign(campaign, workers=workers, continue_on_fail=args.continue_on_fail)
    except ConfigError as exc:
        return _usage_error(f"config error: {exc}")
    except (EvaluationError, DomainError, QuadratureError) as exc:
        print(f"certify: evaluation error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    print(report.summary())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def cmd_list(args):
    if args.dump:
        try:
            cfg = builtin_config(args.dump)
        except ConfigError as exc:
            return _usage_error(str(exc))
        print(json.dumps(cfg, indent=2))
        return EXIT_OK
    for name in builtin_names():
        c = builtin_campaign(name)
        kinds = ", ".join(b.condition_id for b in c.blocks)
        print(f"{name:<16} k={c.k}  v0={c.v0:.12g}  blocks: {kinds}")
    return EXIT_OK


def cmd_eval(args):
    fn = FUNCTIONS.get(args.fn)
    if fn is None:
        return _usage_error(f"unknown function {args.fn!r}; known: {' '.join(sorted(FUNCTIONS))}")
    params = _params(fn)
    if len(args.args) != len(params):
        return _usage_error(f"{args.fn} takes {len(params)} arguments "
                            f"({', '.join(params)}), got {len(args.args)}")
    values = []
    for name, raw in zip(params, args.args):
        try:
            if name in _INT_PARAMS:
                values.append(int(raw))
            else:
                values.append(number(raw))
        except (ValueError, ConfigError):
            return _usage_error(f"bad value {raw!r} for {name}")
    try:
        result = fn(*values)
    except (DomainError, QuadratureError, ZeroDivisionError) as exc:
        print(f"certify: {args.fn}: {exc}", file=sys.stderr)
        return EXIT_EVAL
    print(_format(result))
    return EXIT_OK


def cmd_oracle(args):
    if args.samples is not None and args.target != "cap":
        return _usage_error("--samples applies only to the cap oracle")
    if args.target == "cap":
        samples = args.samples if args.samples is not None else 10**6
        if samples < 10**4:
            return _usage_error("--samples must be at least 10000")
        report = ORACLES["cap"](n_samples=samples, seed=args.seed)
    elif args.target == "triangle":
        report = ORACLES["triangle"](seed=args.seed)
    else:
        report = ORACLES["simplex"]()
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_EVAL


def _selftest_checks():
    """Quick smoke values with known answers: (label, value, expected, tol)."""
    log = math.log
    yield "f_3(log 8) = log 5", scalarfun.f_n(3, log(8)), log(5), 1e-12
    yield "f_1(log 3) = log 3", scalarfun.f_n(1, log(3)), log(3), 1e-12
    yield "kappa(0.8, 0.9) = 0", capvol.kappa(0.8, 0.9), 0.0, 0.0
    yield ("iota coaxial = kappa", capvol.iota(1.0, 0.3, 0.4, 0.0),
           capvol.kappa(1.0, 0.4), 1e-9)
    yield ("drill_bound(0.5637, 0, 5.06)", volbounds.drill_bound(0.5637, 0.0, 5.06),
           3.69019, 5e-5)
    yield ("w_dr point value", volbounds.w_dr(0.5 * log(5), scalarfun.g_k(4, 1.12235),
                                              scalarfun.f_n(1, 1.12235)), 3.6904, 5e-4)


def cmd_selftest(args):
    ok = True
    for label, value, expected, tol in _selftest_checks():
        good = abs(float(value) - expected) <= tol
        ok &= good
        print(f"  {'pass' if good else 'FAIL'}  {label}: {float(value):.12g}")
    for name, fn in (("triangle", lambda: ORACLES["triangle"](n_cases=100)),
                     ("simplex", ORACLES["simplex"]),
                     ("cap", lambda: ORACLES["cap"](n_samples=2 * 10**5, seed=1))):
        report = fn()
        ok &= report.passed
        print(f"  {'pass' if report.passed else 'FAIL'}  {name} oracle ({len(report.cases)} cases)")
    # One small gridded block, to exercise the engine and its kernels.
    cfg = builtin_config("four-free-3.57")
    cfg["blocks"] = [{"kind": "C3a_chi_grid", "id": "C3a", "index_ranges": [[100, 100], [500, 520]]}]
    from .certify import campaign_from_config

    report = run_campaign(campaign_from_config(cfg))
    good = report.overall_pass and report.total_checks == 21
    ok &= good
    print(f"  {'pass' if good else 'FAIL'}  engine smoke run ({report.total_checks} checks)")
    print("selftest", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


# Entry point ----------------------------------------------------------------

def _positive_int(raw):
    try:
        n = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {raw!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="certify", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a builtin campaign or a JSON config file")
    r.add_argument("campaign", help="builtin name or path to a campaign config")
    r.add_argument("--workers", type=_positive_int, default=None,
                   help="worker processes (default: $CERTIFY_WORKERS or 1)")
    r.add_argument("--json", metavar="PATH", help="also write the JSON report here")
    r.add_argument("--continue-on-fail", action="store_true",
                   help="evaluate every check instead of stopping a block at its first failure")
    r.set_defaults(func=cmd_run)

    ls = sub.add_parser("list", help="list builtin campaigns")
    ls.add_argument("--dump", metavar="NAME", help="print the named builtin config as JSON")
    ls.set_defaults(func=cmd_list)

    e = sub.add_parser("eval", help="evaluate one library function")
    e.add_argument("fn")
    e.add_argument("args", nargs="*", help="arguments; reals may be expressions like 'log(8)'")
    e.set_defaults(func=cmd_eval)

    o = sub.add_parser("oracle", help="run an independent validation oracle")
    o.add_argument("target", choices=sorted(ORACLES))
    o.add_argument("--samples", type=int, default=None, help="Monte-Carlo samples (cap only)")
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("selftest", help="fast end-to-end smoke test")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help.
        return exc.code
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
