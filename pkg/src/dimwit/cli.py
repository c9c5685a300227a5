"""Command-line interface.

Exit codes: 0 success, 1 bad input (unknown name, malformed file),
2 enumeration too large, 3 I/O failure, 4 certify found no violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .certify import DEFAULT_K, certify, counts_to_json, load_counts, parse_counts
from .classical import DEFAULT_LIMIT, classical_bound
from .errors import DimwitError, TooLarge
from .quantum_opt import (
    SeesawConfig,
    SeesawResult,
    embed_classical,
    load_strategy,
    optimize,
    quantum_value,
    seesaw,
)
from .report import ReportRow, write_csv, write_svg
from .settings import EXPERIMENT_IDS, experiment
from .simulate import RunConfig, WitnessEstimate, estimate, simulate_counts, simulate_table
from .witness import BoundTable, catalog, load_witness

EXIT_OK, EXIT_INPUT, EXIT_TOO_LARGE, EXIT_IO, EXIT_NO_VIOLATION = 0, 1, 2, 3, 4


def _num(v: float) -> str:
    return f"{v:.6g}"


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def _seesaw_cfg(args) -> SeesawConfig:
    return SeesawConfig(restarts=args.restarts, max_iters=args.max_iters,
                        conv_tol=args.conv_tol, seed=args.seed, zero_tie=args.zero_tie)


def _result_json(res: SeesawResult) -> dict:
    return {
        "value": res.best_value,
        "best_restart": res.best_restart,
        "per_restart_values": res.per_restart_values,
        "iterations_used": res.iterations_used,
        "strategy": res.best_strategy.to_json(),
    }


def _print_diagnostics(res: SeesawResult) -> None:
    hits = sum(abs(v - res.best_value) < 1e-6 for v in res.per_restart_values)
    n = len(res.per_restart_values)
    print(f"restarts reaching best (1e-6): {hits}/{n}; "
          f"iterations per restart: max {max(res.iterations_used)}, "
          f"mean {sum(res.iterations_used) / n:.1f}")


def cmd_bounds(args) -> int:
    w = load_witness(args.witness)
    if args.model == "classical":
        try:
            value, strat = classical_bound(w, args.dim, limit=args.limit)
        except TooLarge as exc:
            print(f"error: {exc}; lower --dim or raise --limit", file=sys.stderr)
            return EXIT_TOO_LARGE
        if args.json:
            _emit_json({"witness": w.name, "model": "classical", "dim": args.dim, "value": value,
                        "labels": list(strat.labels), "responses": [list(f) for f in strat.responses]})
        else:
            print(_num(value))
            print(f"labels {list(strat.labels)}  responses {[list(f) for f in strat.responses]}")
        if args.strategy_out and strat.d in (2, 3, 4):
            _write_json(args.strategy_out, embed_classical(strat).to_json())
        return EXIT_OK

    res = optimize(w, args.dim, _seesaw_cfg(args))
    if args.json:
        _emit_json({"witness": w.name, "model": "quantum", "dim": args.dim, **_result_json(res)})
    else:
        print(_num(res.best_value))
        _print_diagnostics(res)
    if args.strategy_out:
        _write_json(args.strategy_out, res.best_strategy.to_json())
    return EXIT_OK


def cmd_optimize(args) -> int:
    w = load_witness(args.witness)
    if args.init:
        start = load_strategy(args.init)
        best = None
        for sign in ((1, -1) if w.take_abs else (1,)):
            strat, hist = seesaw(w, start, sign, args.max_iters, args.conv_tol, args.zero_tie)
            val = quantum_value(strat, w)
            if best is None or val > best.best_value:
                best = SeesawResult(val, strat, [val], [len(hist) - 1], 0)
        res = best
    else:
        if args.dim is None:
            print("error: --dim is required without --init", file=sys.stderr)
            return EXIT_INPUT
        res = optimize(w, args.dim, _seesaw_cfg(args))
    if args.json:
        _emit_json({"witness": w.name, **_result_json(res)})
    else:
        print(_num(res.best_value))
        _print_diagnostics(res)
    if args.out:
        _write_json(args.out, res.best_strategy.to_json())
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = RunConfig(rate=args.rate, duration=args.duration, seed=args.seed)
    extra = {}
    if args.experiment:
        spec = experiment(args.experiment)
        w = spec.witness
        records = simulate_counts(spec, cfg)
        extra = {"experiment": spec.id, "label": spec.label, "theory": spec.expected_value}
    elif args.strategy and args.witness:
        w = load_witness(args.witness)
        strat = load_strategy(args.strategy)
        records = simulate_table(w, strat.expectations(), cfg)
        extra = {"label": Path(args.strategy).stem, "theory": quantum_value(strat, w)}
    else:
        print("error: give --experiment, or --strategy with --witness", file=sys.stderr)
        return EXIT_INPUT
    est = estimate(w, records)
    counts = counts_to_json(w.name, records, **extra)
    if args.out:
        _write_json(args.out, counts)
    if args.estimate_out:
        _write_json(args.estimate_out, {**est.to_json(), **extra})
    if args.json:
        _emit_json({"estimate": {**est.to_json(), **extra}, "counts": counts})
    else:
        print(f"{w.name} = {_num(est.value)} ± {_num(est.sigma)}")
    if est.degenerate_variance:
        print("warning: degenerate-variance (a setting had all counts in one outcome; "
              "sigma is an underestimate)", file=sys.stderr)
    return EXIT_OK


def _load_estimate(path, merge, witness):
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict) and "records" not in data and "value" in data:
        # a pre-computed estimate (value, sigma) rather than raw counts
        name = str(data["witness"])
        return name, WitnessEstimate(name, float(data["value"]), float(data["sigma"]),
                                     degenerate_variance=bool(data.get("degenerate_variance")))
    name, records = load_counts(path, merge=merge)
    return name, estimate(witness or catalog(name)[0], records)


def cmd_certify(args) -> int:
    witness = bounds = None
    if args.witness_file:
        witness = load_witness(args.witness_file)
    if args.bounds_file:
        bounds = BoundTable.from_json(json.loads(Path(args.bounds_file).read_text()))
    name, est = _load_estimate(args.counts, args.merge, witness)
    cert = certify(name, est, args.k, witness=witness, bounds=bounds)
    _emit_json(cert.to_json())
    for msg in cert.warnings:
        print(f"warning: {msg}", file=sys.stderr)
    return EXIT_OK if cert.nontrivial else EXIT_NO_VIOLATION


def _row_from_file(path: Path) -> ReportRow:
    data = json.loads(path.read_text())
    if "records" in data:
        name, records = parse_counts(data, str(path))
        est = estimate(catalog(name)[0], records)
        value, sigma = est.value, est.sigma
    else:
        name, value, sigma = data["witness"], float(data["value"]), float(data["sigma"])
    catalog(name)
    theory = data.get("theory")
    if theory is None and data.get("experiment"):
        theory = experiment(data["experiment"]).expected_value
    label = data.get("label") or data.get("experiment") or path.stem
    return ReportRow(label, value, sigma, math.nan if theory is None else float(theory), name)


def cmd_report(args) -> int:
    rows, seen = [], {}
    for p in args.files:
        r = _row_from_file(Path(p))
        seen[r.label] = seen.get(r.label, 0) + 1
        if seen[r.label] > 1:
            r = ReportRow(f"{r.label} #{seen[r.label]}", r.value, r.sigma, r.theory, r.witness)
        rows.append(r)
    write_svg(rows, args.svg)
    if args.csv:
        write_csv(rows, args.csv)
    if args.json:
        _emit_json([{"label": r.label, "witness": r.witness, "value": r.value,
                     "sigma": r.sigma, "theory": r.theory} for r in rows])
    else:
        for r in rows:
            print(f"{r.label}: {_num(r.value)} ± {_num(r.sigma)} (theory {_num(r.theory)})")
    return EXIT_OK


def cmd_settings(args) -> int:
    if args.action == "list":
        for eid in EXPERIMENT_IDS:
            spec = experiment(eid)
            print(f"{eid:12s} {spec.witness_name} d={spec.d} {spec.model:9s} {_num(spec.expected_value)}")
        return EXIT_OK
    if not args.id:
        print("error: settings export needs --id", file=sys.stderr)
        return EXIT_INPUT
    data = experiment(args.id).quantum_strategy().to_json()
    if args.out:
        _write_json(args.out, data)
    else:
        _emit_json(data)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--restarts", type=int, default=64)
    solver.add_argument("--max-iters", type=int, default=500)
    solver.add_argument("--conv-tol", type=float, default=1e-10)
    solver.add_argument("--zero-tie", type=int, choices=(1, -1), default=1)

    parser = argparse.ArgumentParser(prog="dimwit", description="Device-independent dimension witnesses")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common, solver], help="classical or quantum bound of a witness")
    p.add_argument("--witness", required=True, help="catalog name (i3, i4) or witness JSON path")
    p.add_argument("--model", choices=("classical", "quantum"), required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="classical enumeration guard")
    p.add_argument("--strategy-out", help="write the optimal strategy as JSON")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("optimize", parents=[common, solver], help="see-saw optimization")
    p.add_argument("--witness", required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--init", help="start from this strategy JSON instead of random restarts")
    p.add_argument("--out", help="write the best strategy as JSON")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("simulate", parents=[common], help="simulate photon counts")
    p.add_argument("--experiment", choices=EXPERIMENT_IDS)
    p.add_argument("--strategy", help="strategy JSON to simulate instead of a catalog experiment")
    p.add_argument("--witness", help="witness for --strategy")
    p.add_argument("--rate", type=float, default=2e4, help="detections per second")
    p.add_argument("--duration", type=float, default=30.0, help="seconds per setting")
    p.add_argument("--out", help="counts JSON output path")
    p.add_argument("--estimate-out", help="estimate JSON output path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("certify", parents=[common], help="certify dimensions from a counts file")
    p.add_argument("counts", help="counts JSON, or an estimate JSON with value and sigma")
    p.add_argument("--k", type=float, default=DEFAULT_K, help="confidence in sigmas")
    p.add_argument("--merge", action="store_true", help="sum duplicate (x, y) records")
    p.add_argument("--witness-file", help="custom witness JSON")
    p.add_argument("--bounds-file", help="bound table JSON for a custom witness")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("report", parents=[common], help="SVG chart and CSV from counts/estimate files")
    p.add_argument("files", nargs="+")
    p.add_argument("--svg", required=True)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("settings", parents=[common], help="reference experiment catalog")
    p.add_argument("action", choices=("export", "list"))
    p.add_argument("--id", choices=EXPERIMENT_IDS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_settings)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except DimwitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KeyError, ValueError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
