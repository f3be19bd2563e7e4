"""Command-line front end: ``sprt-coherent {closed-form,optimize,simulate,unambiguous}``.

Every command emits plot-ready CSV or JSON. Each file written to disk gets a
``<file>.manifest.json`` companion recording the exact invocation, which
``sprt-coherent --from-manifest <manifest>`` replays.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
import time
from dataclasses import dataclass, asdict

from . import __version__
from .batch_strategy import BatchProblem, CaseClass, analyze, recommended_l, success_probability
from .montecarlo import SimulationConfig, closed_form_prediction, exact_prediction, run_simulation
from .unambiguous import QubitPair, batched_success_unambiguous, success_unambiguous

SCHEMA_VERSION = 1
EXIT_OK, EXIT_PARAM, EXIT_IO = 0, 2, 3


class ParameterError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    argv: list
    parameters: dict
    seed: int | None
    tool_version: str
    outputs: list
    duration_s: float
    schema_version: int = SCHEMA_VERSION


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    return "%.15g" % x


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(fmt(v) for v in r) + "\n")
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _clean(x):
    # JSON has no inf/nan; undefined quantities become null.
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _problem(args) -> BatchProblem:
    try:
        return BatchProblem.from_values(args.n, args.theta0, args.theta1, args.alpha, args.beta)
    except ValueError as e:
        raise ParameterError(str(e)) from None


def _l_values(args, n):
    if args.l is not None and args.l_range is not None:
        raise ParameterError("use either --l or --l-range, not both")
    if args.l_range is None:
        ls = [args.l if args.l is not None else 1]
    else:
        try:
            lo, hi = (int(v) for v in args.l_range.split(":"))
        except ValueError:
            raise ParameterError(f"--l-range must look like LO:HI, got {args.l_range!r}") from None
        ls = list(range(lo, hi + 1))
    bad = [l for l in ls if not 1 <= l <= n]
    if bad or not ls:
        raise ParameterError(f"l must lie in [1, n={n}]")
    return ls


def cmd_closed_form(args):
    prob = _problem(args)
    rows = []
    for l in _l_values(args, prob.n_total):
        r = success_probability(l, prob)
        rows.append((l, r.p0, r.p1, r.p_s))
    if args.json:
        text = json_text({
            "schema_version": SCHEMA_VERSION, "command": "closed-form",
            "parameters": _hyp_params(args),
            "rows": [{"l": l, "p0": a, "p1": b, "ps": c} for l, a, b, c in rows],
        })
    else:
        text = csv_text(["l", "p0", "p1", "ps"], rows)
    return [(args.out, text)]


def _hyp_params(args):
    return {"n": args.n, "theta0": args.theta0, "theta1": args.theta1,
            "alpha": args.alpha, "beta": args.beta}


def optimize_report(prob: BatchProblem) -> dict:
    an = analyze(prob)
    case = an.best.case
    notes = []
    if prob.symmetric:
        notes.append("l-invariant")
    if case is CaseClass.CASE_I:
        rec = "random guess"
    elif case is CaseClass.CASE_III:
        rec = "any l in [l_min, l_max]"
    else:
        rec = "use l_argmax"
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "optimize",
        "case": case.value,
        "l_argmax": an.best.l,
        "p_s_max": an.best.p_s,
        "p0": an.best.p0,
        "p1": an.best.p1,
        "l_opt_closed_form": an.l_opt,
        "l_opt_recommended": recommended_l(an.l_opt, prob.n_total),
        "l_min": an.l_min,
        "l_max": an.l_max,
        "note": ", ".join(notes) or None,
        "recommendation": rec,
    }


def cmd_optimize(args):
    report = optimize_report(_problem(args))
    report["parameters"] = _hyp_params(args)
    text = json_text({k: _clean(v) for k, v in report.items()})
    return [(args.out, text)]


def cmd_simulate(args):
    prob = _problem(args)
    if not 1 <= args.l <= prob.n_total:
        raise ParameterError(f"--l must lie in [1, n={prob.n_total}]")
    try:
        cfg = SimulationConfig(args.seed, args.trajectories, args.truth, prob, args.l)
    except ValueError as e:
        raise ParameterError(str(e)) from None
    res = run_simulation(cfg, keep_paths=args.paths_out is not None)
    outputs = [(args.mean_out, csv_text(["n", "z_mean"],
                                        [(i + 1, v) for i, v in enumerate(res.mean_path)]))]
    if args.paths_out:
        header = ["trajectory"] + [f"z{i + 1}" for i in range(cfg.horizon)]
        outputs.append((args.paths_out,
                        csv_text(header, [(i, *row) for i, row in enumerate(res.paths)])))
    th = cfg.wald
    est = {
        "schema_version": SCHEMA_VERSION,
        "command": "simulate",
        "parameters": {**_hyp_params(args), "l": args.l, "truth": args.truth,
                       "trajectories": args.trajectories, "seed": args.seed},
        "horizon_batches": cfg.horizon,
        "discarded_copies": cfg.leftover,
        "log_a": th.log_a,
        "log_b": th.log_b,
        "horizon_estimate": asdict(res.horizon_estimate),
        "first_crossing_estimate": asdict(res.first_crossing_estimate),
        "closed_form_prediction": closed_form_prediction(cfg),
        "exact_prediction": exact_prediction(cfg),
        "final_mean_z": float(res.mean_path[-1]),
    }
    summary = json_text(est)
    outputs.append((args.summary_out, summary))
    return outputs


def cmd_unambiguous(args):
    if (args.overlap is None) == (args.theta_angle is None):
        raise ParameterError("give exactly one of --overlap or --theta-angle")
    try:
        c = args.overlap if args.overlap is not None else QubitPair(args.theta_angle).overlap
        single = success_unambiguous(c, args.n)
        batched = batched_success_unambiguous(c, args.n, args.l)
    except ValueError as e:
        raise ParameterError(str(e)) from None
    if single != batched:
        raise AssertionError(f"batched {batched!r} != unbatched {single!r}")
    if args.json:
        text = json_text({"schema_version": SCHEMA_VERSION, "command": "unambiguous",
                          "overlap": c, "n": args.n, "l": args.l,
                          "unbatched": single, "batched": batched})
    else:
        text = csv_text(["overlap", "n", "l", "unbatched", "batched"],
                        [(c, args.n, args.l, single, batched)])
    return [(args.out, text)]


def _add_hyp(p):
    p.add_argument("--n", type=int, required=True, help="total number of copies N")
    p.add_argument("--theta0", type=float, required=True, help="q-quadrature mean under hypothesis 0")
    p.add_argument("--theta1", type=float, required=True, help="q-quadrature mean under hypothesis 1")
    p.add_argument("--alpha", type=float, required=True, help="Type-I error bound")
    p.add_argument("--beta", type=float, required=True, help="Type-II error bound")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sprt-coherent", allow_abbrev=False,
                                     description="SPRT batch-size analysis for coherent states.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--from-manifest", metavar="PATH",
                        help="replay the invocation recorded in a run manifest")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("closed-form", allow_abbrev=False,
                       help="closed-form p0, p1, ps per batch size")
    _add_hyp(p)
    p.add_argument("--l", type=int, help="single batch size")
    p.add_argument("--l-range", metavar="LO:HI", help="inclusive range of batch sizes")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    p.add_argument("--out", help="write output here instead of stdout")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("optimize", allow_abbrev=False, help="optimal batch size and case")
    _add_hyp(p)
    p.add_argument("--out", help="write JSON report here instead of stdout")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("simulate", allow_abbrev=False, help="Monte Carlo SPRT martingales")
    _add_hyp(p)
    p.add_argument("--l", type=int, required=True, help="batch size")
    p.add_argument("--truth", type=int, choices=(0, 1), required=True, help="hypothesis generating data")
    p.add_argument("--trajectories", type=int, default=1000, help="number of trajectories")
    p.add_argument("--seed", type=int, required=True, help="unsigned 64-bit seed")
    p.add_argument("--mean-out", help="CSV of the mean path (n,z_mean); stdout if omitted")
    p.add_argument("--paths-out", help="CSV of every trajectory")
    p.add_argument("--summary-out", help="JSON summary; stdout if omitted")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("unambiguous", allow_abbrev=False,
                       help="unambiguous discrimination with and without batching")
    p.add_argument("--overlap", type=float, help="state overlap c in [0, 1]")
    p.add_argument("--theta-angle", type=float, help="state angle theta in [0, pi/4]; c = cos(2 theta)")
    p.add_argument("--n", type=int, required=True, help="number of copies")
    p.add_argument("--l", type=int, default=1, help="batch size (must divide n)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    p.add_argument("--out", help="write output here instead of stdout")
    p.set_defaults(func=cmd_unambiguous)
    return parser


def _write(outputs, manifest):
    for path, text in outputs:
        if path is None:
            sys.stdout.write(text)
            continue
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    files = [p for p, _ in outputs if p is not None]
    if not files:
        return
    manifest.outputs = files
    body = json_text(asdict(manifest))
    for path in files:
        with open(path + ".manifest.json", "w", encoding="utf-8", newline="\n") as f:
            f.write(body)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.from_manifest:
        if args.command:
            parser.error("--from-manifest cannot be combined with a subcommand")
        try:
            with open(args.from_manifest, encoding="utf-8") as f:
                argv = json.load(f)["argv"]
        except (OSError, ValueError, KeyError) as e:
            print(f"error: cannot read manifest: {e}", file=sys.stderr)
            return EXIT_IO
        args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_PARAM

    t0 = time.perf_counter()
    try:
        outputs = args.func(args)
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAM
    params = {k: v for k, v in vars(args).items() if k not in ("func", "from_manifest")}
    manifest = RunManifest(args.command, argv, params, params.get("seed"), __version__, [],
                           time.perf_counter() - t0)
    try:
        _write(outputs, manifest)
    except OSError as e:
        print(f"error: cannot write output: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
