"""Command line front end.

Subcommands:

  solve-angles     print the measurement angles for (n, theta)
  tolerance        print tolerance thresholds for a calibration file
  run              simulate every input and report the test verdict
  sweep-distance   repeat the two-qubit run across line placements

Exit status is 0 when the requested check passes (informational commands
always pass on success), 1 when an experiment runs to completion but
fails the test, and 2 on bad arguments, malformed files, or any other
error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import tolerance_report
from .config import DEFAULT_CONFIDENCE, DEFAULT_SHOTS
from .harness import (
    ExperimentConfig,
    render_csv,
    render_json,
    render_sweep_json,
    run_experiment,
    sweep_distance,
)
from .noise import DEPOLARIZING, THERMODYNAMICAL, load_calibration
from .protocol import PBRParams, build_test_circuit, theta_min
from .routing import load_coupling_map

_MODEL_ALIASES = {"dep": DEPOLARIZING, "thermo": THERMODYNAMICAL}
_MODEL_CHOICES = (DEPOLARIZING, THERMODYNAMICAL, "dep", "thermo")


def _model(name: str) -> str:
    return _MODEL_ALIASES.get(name, name)


def _theta(args) -> float:
    base = theta_min(args.n) if args.theta is None else args.theta
    return base * args.theta_scale


def _parse_place(text: str) -> tuple[int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"--place wants two qubits like 3,7 (got {text!r})")
    return int(parts[0]), int(parts[1])


def _parse_spans(text: str) -> list[int]:
    spans: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            spans.extend(range(int(lo), int(hi) + 1))
        else:
            spans.append(int(part))
    if not spans:
        raise ValueError(f"no spans in {text!r}")
    return spans


def _emit(text: str, out_path) -> None:
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)


def _write_csv(reports, path) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(render_csv(reports))


def _cmd_solve_angles(args) -> int:
    theta = _theta(args)
    params = PBRParams.solve(args.n, theta)
    doc = {
        "kind": "pbr-angles",
        "n": args.n,
        "theta": theta,
        "theta_min": theta_min(args.n),
        "alpha": params.alpha,
        "beta": params.beta,
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_tolerance(args) -> int:
    theta = _theta(args)
    params = PBRParams.solve(args.n, theta)
    cal = load_calibration(args.calib)
    rep = tolerance_report(params, cal, build_test_circuit(0, params), _model(args.model))
    doc = {
        "kind": "pbr-tolerance",
        "n": args.n,
        "theta": theta,
        "model": rep.model,
        "d_quantum": rep.d_quantum,
        "d_noisy": rep.d_noisy,
        "eps_tol_ideal": rep.eps_tol_ideal,
        "eps_tol_noisy": rep.eps_tol_noisy,
        "eps_tol_noisy_spread": rep.eps_tol_noisy_spread,
        "eps_dep": rep.eps_dep,
        "eps_dec": rep.eps_dec,
        "eps_dec_cumulative": rep.eps_dec_cumulative,
        "qubit_ids": list(rep.qubit_ids),
        "eps_prep": list(rep.eps_prep),
        "eps_tol_per_qubit": list(rep.eps_tol_per_qubit),
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _experiment_config(args, n: int) -> ExperimentConfig:
    coupling = placement = None
    if getattr(args, "map", None) or getattr(args, "place", None):
        if not (args.map and args.place):
            raise ValueError("--map and --place go together")
        coupling = load_coupling_map(args.map)
        placement = _parse_place(args.place)
    return ExperimentConfig(
        n=n,
        theta=_theta(args),
        model=_model(args.model),
        calibration=load_calibration(args.calib),
        shots=args.shots,
        seed=args.seed,
        coupling=coupling,
        placement=placement,
        confidence=args.confidence,
    )


def _cmd_run(args) -> int:
    report = run_experiment(_experiment_config(args, args.n))
    _emit(render_json(report), args.out)
    _write_csv(report, args.csv)
    return 0 if report.passed else 1


def _cmd_sweep(args) -> int:
    args.n = 2
    args.map = args.place = None
    cfg = _experiment_config(args, 2)
    reports = sweep_distance(cfg, _parse_spans(args.spans))
    _emit(render_sweep_json(reports), args.out)
    _write_csv(reports, args.csv)
    return 0 if all(r.passed for r in reports) else 1


def _add_theta_args(sub, with_n: bool = True) -> None:
    if with_n:
        sub.add_argument("--n", type=int, required=True, help="number of test qubits")
    sub.add_argument(
        "--theta", type=float, default=None, help="preparation angle (default: theta_min)"
    )
    sub.add_argument(
        "--theta-scale", type=float, default=1.0, help="multiplier applied to theta"
    )


def _add_experiment_args(sub) -> None:
    sub.add_argument("--calib", required=True, help="calibration snapshot JSON")
    sub.add_argument("--model", required=True, choices=_MODEL_CHOICES)
    sub.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--confidence", type=float, default=DEFAULT_CONFIDENCE)
    sub.add_argument("--csv", default=None, help="also write a per-input CSV here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pbrsim", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve-angles", help="print alpha and beta for (n, theta)")
    _add_theta_args(p)
    p.add_argument("--out", default=None, help="also write the JSON here")
    p.set_defaults(func=_cmd_solve_angles)

    p = subs.add_parser("tolerance", help="print tolerance thresholds")
    _add_theta_args(p)
    p.add_argument("--calib", required=True, help="calibration snapshot JSON")
    p.add_argument("--model", required=True, choices=_MODEL_CHOICES)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_tolerance)

    p = subs.add_parser("run", help="simulate the test end to end")
    _add_theta_args(p)
    _add_experiment_args(p)
    p.add_argument("--map", default=None, help="coupling map JSON for routed runs")
    p.add_argument("--place", default=None, help="physical placement A,B for routed runs")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_run)

    p = subs.add_parser("sweep-distance", help="two-qubit runs across line spans")
    _add_theta_args(p, with_n=False)
    _add_experiment_args(p)
    p.add_argument("--spans", required=True, help="comma list or range like 1..8")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
