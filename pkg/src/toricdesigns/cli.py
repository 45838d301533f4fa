"""Command-line front end (``tdf`` / ``python -m toricdesigns``).

Exit codes: 0 success, 1 failed verification or empty search, 2 usage
error, 3 resource guard.  Results go to stdout as JSON wrapped with the
run configuration; ``--json-out`` additionally writes the bare object so it
can be fed back to the matching ``verify`` subcommand.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from ._json import SCHEMA_VERSION
from .approx_designs import ApproxExperiment, required_M, run_experiment
from .combinatorics import crystal_ball, enumerate_St, min_design_size
from .difference_sets import BtSet, bt_size_bound_check, search_sidon, singer_bt_set, sum_set, verify_bt
from .errors import ResourceError, UsageError
from .finite_field import dlog_table, make_field, prime_power
from .quantum_designs import (
    StateDesign,
    almost_minimal_2design,
    frame_potential,
    moment_tensor_check,
    welch_bound,
)
from .repro import run_repro
from .toric_designs import (
    DEFAULT_TOLERANCE,
    WeightedPhaseSet,
    grid_design,
    group_design_from_bt,
    is_minimal,
    quadratic_prime_design,
    verify_design,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _default_threads() -> int:
    env = os.environ.get("TDF_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    # accept either a bare object or the wrapped stdout form
    if isinstance(obj, dict) and "result" in obj and "config" in obj:
        obj = obj["result"]
    return obj


def _add_global_options(parser: argparse.ArgumentParser, default=None) -> None:
    flag_default = False if default is None else default
    parser.add_argument("--threads", type=int, default=default, help="worker budget (default: $TDF_THREADS or CPU count)")
    parser.add_argument("--deterministic", action="store_true", default=flag_default, help="omit the timestamp from output")
    parser.add_argument("--format", choices=("json", "text"), default=default, help="default: text for repro, json otherwise")


class _Sub:
    """Adds subparsers that also accept the global options after the subcommand."""

    def __init__(self, action):
        self.action = action
        self.common = argparse.ArgumentParser(add_help=False)
        _add_global_options(self.common, argparse.SUPPRESS)

    def add_parser(self, name, **kw):
        return self.action.add_parser(name, parents=[self.common], **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tdf", description="Projective toric designs, B_t sets and quantum 2-designs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_global_options(parser)
    sub = _Sub(parser.add_subparsers(dest="command", required=True))

    p = sub.add_parser("field", help="build GF(p^m) with modulus and generator")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--modulus", type=_int_list)
    p.add_argument("--generator", type=_int_list)
    p.add_argument("--dlog", action="store_true", help="include the discrete-log table")

    p = sub.add_parser("singer", help="Singer B_t set from GF(q^(t+1))")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--modulus", type=_int_list)
    p.add_argument("--generator", type=_int_list)
    p.add_argument("--json-out")

    p = sub.add_parser("sidon", help="exhaustive Sidon-set search")
    sp = _Sub(p.add_subparsers(dest="action", required=True))
    s = sp.add_parser("search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--mode", choices=("first", "all", "exists"), default="exists")

    p = sub.add_parser("bt", help="verify a B_t mod m set")
    sp = _Sub(p.add_subparsers(dest="action", required=True))
    for name in ("verify", "bound"):
        s = sp.add_parser(name)
        s.add_argument("--t", type=int, default=2)
        s.add_argument("--m", type=int)
        s.add_argument("--elements", type=_int_list)
        s.add_argument("--file")

    p = sub.add_parser("bound", help="crystal ball numbers and design-size bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("design", help="build or verify P(T^n) designs")
    sp = _Sub(p.add_subparsers(dest="action", required=True))
    s = sp.add_parser("grid")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--json-out")
    s = sp.add_parser("quadratic")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--json-out")
    s = sp.add_parser("group")
    s.add_argument("--t", type=int, default=2)
    s.add_argument("--m", type=int)
    s.add_argument("--elements", type=_int_list)
    s.add_argument("--file", help="B_t set JSON")
    s.add_argument("--json-out")
    for name in ("verify", "minimal"):
        s = sp.add_parser(name)
        s.add_argument("--file", required=True)
        s.add_argument("--t", type=int, required=True)
        s.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)

    p = sub.add_parser("quantum", help="CP^{d-1} designs")
    sp = _Sub(p.add_subparsers(dest="action", required=True))
    s = sp.add_parser("build")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--json-out")
    s = sp.add_parser("verify")
    s.add_argument("--file", required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--tolerance", type=float, default=1e-10)

    p = sub.add_parser("approx", help="approximate designs from random points")
    sp = _Sub(p.add_subparsers(dest="action", required=True))
    s = sp.add_parser("bound")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--delta", type=float, required=True)
    s = sp.add_parser("run")
    s.add_argument("--config", required=True)
    s.add_argument("--out", help="CSV of per-trial results")

    sub.add_parser("repro", help="run the worked-example suite")
    return parser


# ---------------------------------------------------------------------------
# handlers return (exit code, result dict, optional bare object for --json-out)


def _cmd_field(a):
    F = make_field(a.p, a.m, a.modulus, a.generator)
    out = F.to_json()
    if a.dlog:
        out["dlog"] = [[list(e.coeffs), k] for e, k in sorted(dlog_table(F).items(), key=lambda kv: kv[1])]
    return EXIT_OK, out, None


def _cmd_singer(a):
    F = None
    if a.modulus is not None or a.generator is not None:
        p, k = prime_power(a.q)
        F = make_field(p, k * (a.t + 1), a.modulus, a.generator)
    z = singer_bt_set(a.q, a.t, F)
    v = verify_bt(z)
    out = z.to_json()
    out.update({"T": z.provenance["T"], "S": list(z.elements), "sum_set": sum_set(z), "valid": v.valid})
    return (EXIT_OK if v.valid else EXIT_FAIL), out, z.to_json()


def _cmd_sidon(a):
    found = search_sidon(a.n, a.m, a.mode, threads=a.threads)
    out = {"n": a.n, "m": a.m, "mode": a.mode, "exists": bool(found), "count": len(found)}
    if a.mode != "exists":
        out["sets"] = [list(z.elements) for z in found]
    return (EXIT_OK if found else EXIT_FAIL), out, None


def _bt_from_args(a) -> BtSet:
    if a.file:
        return BtSet.from_json(_load_json(a.file))
    if a.m is None or a.elements is None:
        raise UsageError("give --file or both --m and --elements")
    return BtSet(a.t, a.m, tuple(a.elements))


def _cmd_bt(a):
    z = _bt_from_args(a)
    v = verify_bt(z)
    out = {"t": z.t, "m": z.m, "elements": list(z.elements), "valid": v.valid, "distinct_sums": v.distinct_sums}
    if v.witness:
        out["witness"] = [list(v.witness[0]), list(v.witness[1])]
    if v.difference_form:
        out["difference_form"] = list(v.difference_form)
    if a.action == "bound":
        if not v.valid:
            return EXIT_FAIL, out, None
        b = bt_size_bound_check(z)
        out.update({"bound": b.bound, "satisfied": b.satisfied, "saturated": b.saturated})
        return (EXIT_OK if b.satisfied else EXIT_FAIL), out, None
    return (EXIT_OK if v.valid else EXIT_FAIL), out, None


def _cmd_bound(a):
    out = {
        "n": a.n,
        "t": a.t,
        "crystal_ball": crystal_ball(a.n, a.t),
        "min_design_size": min_design_size(a.n, a.t),
        "S_size": len(enumerate_St(a.n, a.t)),
    }
    return EXIT_OK, out, None


def _design_summary(X: WeightedPhaseSet) -> dict:
    return {"n": X.n, "size": len(X), "design": X.to_json()}


def _cmd_design(a):
    if a.action == "grid":
        X = grid_design(a.n, a.t)
    elif a.action == "quadratic":
        X = quadratic_prime_design(a.n)
    elif a.action == "group":
        X = group_design_from_bt(_bt_from_args(a))
    else:
        X = WeightedPhaseSet.from_json(_load_json(a.file))
        rep = verify_design(X, a.t, a.tolerance)
        out = {"size": len(X), "n": X.n, **rep.to_json()}
        if a.action == "minimal":
            if not rep.passed:
                return EXIT_FAIL, out, None
            out["minimal"] = is_minimal(X, a.t, a.tolerance)
            out["bound"] = min_design_size(X.n, a.t)
            return (EXIT_OK if out["minimal"] else EXIT_FAIL), out, None
        return (EXIT_OK if rep.passed else EXIT_FAIL), out, None
    return EXIT_OK, _design_summary(X), X.to_json()


def _cmd_quantum(a):
    if a.action == "build":
        D = almost_minimal_2design(a.d)
        out = {"d": D.d, "size": len(D), "design": D.to_json()}
        return EXIT_OK, out, D.to_json()
    D = StateDesign.from_json(_load_json(a.file))
    rep = moment_tensor_check(D, a.t, a.tolerance)
    fp = frame_potential(D, a.t)
    out = {"d": D.d, "size": len(D), "frame_potential": fp, "welch_bound": welch_bound(D.d, a.t), **rep.to_json()}
    return (EXIT_OK if rep.passed else EXIT_FAIL), out, None


def _cmd_approx(a):
    if a.action == "bound":
        M = required_M(a.n, a.t, a.eps, a.delta)
        out = {"n": a.n, "t": a.t, "eps": a.eps, "delta": a.delta, "G": crystal_ball(a.n, a.t), "M": M}
        return EXIT_OK, out, None
    cfg = ApproxExperiment.from_dict(_load_json(a.config))
    fh = writer = None
    if a.out:
        fh = open(a.out, "w", newline="", encoding="utf-8")
        writer = csv.writer(fh)
        writer.writerow(["trial", "max_deviation", "pass"])
    try:
        sink = None if writer is None else (lambda r: writer.writerow([r.trial, repr(r.max_deviation), int(r.passed)]))
        res = run_experiment(cfg, threads=a.threads, sink=sink)
    finally:
        if fh:
            fh.close()
    out = {
        "experiment": cfg.to_dict(),
        "required_M": required_M(cfg.n, cfg.t, cfg.epsilon, cfg.delta),
        "success_rate": res.success_rate,
        "mean_deviation": res.mean_deviation,
    }
    return EXIT_OK, out, None


def _cmd_repro(a):
    items = run_repro()
    rows = [
        {"item": it.number, "name": it.name, "pass": it.passed, "seconds": round(it.seconds, 3), "detail": it.detail}
        for it in items
    ]
    ok = all(it.passed for it in items)
    return (EXIT_OK if ok else EXIT_FAIL), {"items": rows, "all_pass": ok}, None


_HANDLERS = {
    "field": _cmd_field,
    "singer": _cmd_singer,
    "sidon": _cmd_sidon,
    "bt": _cmd_bt,
    "bound": _cmd_bound,
    "design": _cmd_design,
    "quantum": _cmd_quantum,
    "approx": _cmd_approx,
    "repro": _cmd_repro,
}

_GLOBAL_KEYS = {"deterministic", "format"}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _GLOBAL_KEYS and k != "json_out"}


def _print_text(command: str, result: dict, out) -> None:
    if command == "repro":
        print(f"{'#':>2}  {'check':<36} {'result':<6} {'time':>8}  detail", file=out)
        for row in result["items"]:
            status = "PASS" if row["pass"] else "FAIL"
            print(f"{row['item']:>2}  {row['name']:<36} {status:<6} {row['seconds']:>7.3f}s  {row['detail']}", file=out)
        return
    for k, v in result.items():
        print(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}", file=out)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is None:
        args.threads = _default_threads()
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, result, bare = _HANDLERS[args.command](args)
    except (UsageError, argparse.ArgumentTypeError, KeyError, json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE

    config = _config(args)
    json_out = getattr(args, "json_out", None)
    if json_out and bare is not None:
        bare = dict(bare)
        bare.setdefault("provenance", {})
        bare["provenance"] = {**bare["provenance"], "run_config": config}
        Path(json_out).write_text(json.dumps(bare, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    fmt = args.format or ("text" if args.command == "repro" else "json")
    if fmt == "text":
        _print_text(args.command, result, sys.stdout)
    else:
        payload = {"schema_version": SCHEMA_VERSION, "config": config, "result": result}
        if not args.deterministic:
            payload["timestamp"] = datetime.now(timezone.utc).isoformat()
        print(json.dumps(payload, indent=2, sort_keys=True))
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
