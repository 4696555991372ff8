"""Command line front end for reproducible witness workflows.

Every command that writes files drops a sibling manifest next to each
artifact; replaying the manifest re-runs the exact command with its
resolved seed and reproduces the bytes. Exit codes follow one
convention: 0 success, 2 numerical warning (a result is printed but some
solve did not certify), 64 usage, 74 I/O.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .bounds import (
    BoundResult,
    WeightedPair,
    certified_bound,
    compose_sep_bound,
    grid_bound,
    seesaw_bound,
    sep_bound_curve,
    trace_region,
)
from .noise import fit_alpha, noisy_povm, spin1_moment_pairs, spin_flip_channel
from .operators import (
    DensityMatrix,
    HermitianOperator,
    MomentPair,
    PureState,
    expectation,
    projective_povm,
    spin1_components,
)
from .simulate import (
    SampleConfig,
    TestStateParams,
    make_singlet,
    make_test_state,
    run_calibration,
    sample_variance_tuple,
    theta1_sweep,
    theta2_sweep,
)
from .svgplot import svg_line_plot
from .witness import (
    bound_interpolant,
    build_global_moments,
    detection_window,
    evaluate_witness_from_tuple,
)

ENV_SEED = "VARWIT_SEED"

EXIT_OK = 0
EXIT_NUMERICAL = 2
EXIT_USAGE = 64
EXIT_IO = 74


class _UsageError(Exception):
    pass


class _CliParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass(frozen=True)
class RunManifest:
    """Record of one CLI run, written next to every artifact it produced."""

    command: str
    parameters: dict
    seed: int
    artifact_paths: Tuple[str, ...]
    tool_version: str

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "artifact_paths": list(self.artifact_paths),
            "tool_version": self.tool_version,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunManifest":
        return cls(
            command=data["command"],
            parameters=dict(data["parameters"]),
            seed=int(data["seed"]),
            artifact_paths=tuple(data["artifact_paths"]),
            tool_version=data["tool_version"],
        )


def _resolve_seed(args) -> int:
    seed = getattr(args, "seed", None)
    if seed is not None:
        return int(seed)
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"{ENV_SEED} must be an integer, got {env!r}")
    return 0


_SKIP_KEYS = {"command", "func", "seed"}

_FLAG_NAMES = {"lam": "--lambda", "tuple_": "--tuple"}


def _manifest_parameters(args, seed: int) -> dict:
    params: Dict[str, object] = {}
    for key, value in vars(args).items():
        if key in _SKIP_KEYS:
            continue
        params[key] = value
    params["seed"] = seed
    params["argv"] = _replay_argv(args.command, params)
    return params


def _replay_argv(command: str, params: dict) -> List[str]:
    argv = [command]
    for key, value in params.items():
        if value is None or key == "argv":
            continue
        flag = _FLAG_NAMES.get(key, "--" + key.replace("_", "-"))
        if isinstance(value, bool):
            if key == "adapted":
                argv.append("--adapted" if value else "--non-adapted")
            elif value:
                argv.append(flag)
            continue
        argv.extend([flag, str(value)])
    return argv


def _emit_manifests(args, seed: int, artifact_paths: Sequence[str]) -> None:
    manifest = RunManifest(
        command=args.command,
        parameters=_manifest_parameters(args, seed),
        seed=seed,
        artifact_paths=tuple(artifact_paths),
        tool_version=__version__,
    )
    payload = json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n"
    for path in artifact_paths:
        with open(path + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(payload)


def replay_manifest(path: str) -> int:
    """Re-run the command recorded in a manifest; outputs are bit-identical."""
    with open(path, encoding="utf-8") as fh:
        manifest = RunManifest.from_dict(json.load(fh))
    return main(list(manifest.parameters["argv"]))


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(cell) for cell in row])


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _load_state(source: str) -> DensityMatrix:
    """A state source: the name 'singlet' or a JSON file path.

    The file may hold a pure state ({"amplitudes": [[re,im],...]}) or a
    density matrix in operator form ({"entries": [[[re,im],...],...]}).
    """
    if source == "singlet":
        return make_singlet().density()
    with open(source, encoding="utf-8") as fh:
        data = json.load(fh)
    if "amplitudes" in data:
        return PureState.from_dict(data).density()
    if "entries" in data:
        return DensityMatrix(HermitianOperator.from_dict(data))
    raise _UsageError(f"state file {source!r} has neither amplitudes nor entries")


def _parse_tuple(text: str) -> Tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise _UsageError(f"--tuple expects 'd2x,d2y', got {text!r}")
    try:
        d2x, d2y = float(parts[0]), float(parts[1])
    except ValueError:
        raise _UsageError(f"--tuple expects two numbers, got {text!r}")
    return d2x, d2y


def _parse_lambdas(text: str) -> List[float]:
    try:
        count = int(text)
    except ValueError:
        try:
            return [float(v) for v in text.split(",")]
        except ValueError:
            raise _UsageError(f"--lambdas expects a count or comma-separated values, got {text!r}")
    if count < 1:
        raise _UsageError(f"--lambdas count must be >= 1, got {count}")
    return [float(l) for l in np.linspace(0.0, 1.0, count + 2)[1:-1]]


def _global_variance_tuple(
    state: DensityMatrix, pairs: Tuple[MomentPair, MomentPair]
) -> Tuple[float, float]:
    """Variance tuple of the joint x_A + x_B outcomes in a two-party state."""
    out = []
    for pair in pairs:
        gm = build_global_moments(pair)
        v = expectation(state, gm.m2) - expectation(state, gm.m1) ** 2
        # exact spin-zero states land at zero up to rounding dust
        out.append(max(v, 0.0))
    return out[0], out[1]


def _std(values: Sequence[float]) -> float:
    return float(np.std(values, ddof=1)) if len(values) > 1 else 0.0


def cmd_bound(args) -> int:
    seed = _resolve_seed(args)
    alpha_b = args.alpha_b if args.alpha_b is not None else args.alpha
    pair_a = WeightedPair(args.lam, args.mu, *spin1_moment_pairs(args.alpha))
    pair_b = (
        pair_a
        if alpha_b == args.alpha
        else WeightedPair(args.lam, args.mu, *spin1_moment_pairs(alpha_b))
    )
    methods = ["seesaw", "grid"] if args.method == "both" else [args.method]
    results: Dict[str, dict] = {}
    warn = False
    for method in methods:
        if method == "seesaw":
            res_a = seesaw_bound(pair_a, starts=args.starts, seed=seed)
            res_b = res_a if pair_b is pair_a else seesaw_bound(pair_b, starts=args.starts, seed=seed)
        else:
            res_a = grid_bound(pair_a, grid_n=args.grid_n)
            res_b = res_a if pair_b is pair_a else grid_bound(pair_b, grid_n=args.grid_n)
        certified = (res_a.converged or res_a.method != "seesaw") and (
            res_b.converged or res_b.method != "seesaw"
        )
        c_sep = compose_sep_bound(res_a, res_b) if certified else res_a.value + res_b.value
        warn = warn or not (res_a.converged and res_b.converged)
        results[method] = {
            "local_a": res_a.to_dict(),
            "local_b": res_b.to_dict(),
            "c_sep": c_sep,
        }
    if len(results) == 2:
        if abs(results["seesaw"]["c_sep"] - results["grid"]["c_sep"]) > 1e-4:
            warn = True
    primary = "seesaw" if "seesaw" in results else methods[0]
    _print_json(
        {
            "lambda": args.lam,
            "mu": args.mu,
            "alpha": args.alpha,
            "alpha_b": alpha_b,
            "c_sep": results[primary]["c_sep"],
            "results": results,
        }
    )
    return EXIT_NUMERICAL if warn else EXIT_OK


def cmd_region(args) -> int:
    seed = _resolve_seed(args)
    lambdas = _parse_lambdas(args.lambdas)
    x, y = spin1_moment_pairs(args.alpha)
    region = trace_region(x, y, lambdas, starts=args.starts, seed=seed)
    os.makedirs(args.output_dir, exist_ok=True)
    csv_path = os.path.join(args.output_dir, "region.csv")
    rows = [
        [lam, c, point[0], point[1]]
        for lam, c, point in zip(region.lambdas, region.bounds, region.points)
    ]
    _write_csv(csv_path, ["lambda", "c", "delta2x", "delta2y"], rows)
    paths = [csv_path]
    if args.svg:
        svg_path = os.path.join(args.output_dir, "region.svg")
        svg_line_plot(
            svg_path,
            [("boundary", [p[0] for p in region.points], [p[1] for p in region.points])],
            title=f"variance region boundary, alpha={args.alpha}",
            xlabel="delta2 X",
            ylabel="delta2 Y",
        )
        paths.append(svg_path)
    _emit_manifests(args, seed, paths)
    # A stalled multi-start run is only a warning if the mesh oracle
    # disagrees with the value it reported.
    uncertified = 0
    for lam, value, ok in zip(region.lambdas, region.bounds, region.converged):
        if ok:
            continue
        check = grid_bound(WeightedPair(lam, 1.0 - lam, x, y))
        if abs(check.value - value) > 1e-4:
            uncertified += 1
    if uncertified:
        print(f"varwit: {uncertified} region point(s) did not certify", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_witness(args) -> int:
    seed = _resolve_seed(args)
    noisy_pairs = spin1_moment_pairs(args.alpha)
    bound_pairs = noisy_pairs if args.adapted else spin1_moment_pairs(0.0)
    if args.tuple_ is not None:
        d2x, d2y = _parse_tuple(args.tuple_)
    else:
        state = _load_state(args.state)
        d2x, d2y = _global_variance_tuple(state, noisy_pairs)
    local = certified_bound(
        WeightedPair(args.lam, 1.0 - args.lam, *bound_pairs), starts=args.starts, seed=seed
    )
    c_sep = (
        compose_sep_bound(local, local) if local.converged or local.method != "seesaw"
        else 2.0 * local.value
    )
    verdict = evaluate_witness_from_tuple(d2x, d2y, args.lam, 1.0 - args.lam, c_sep)
    paths: List[str] = []
    if args.output_dir is not None:
        os.makedirs(args.output_dir, exist_ok=True)
        lams, cs = sep_bound_curve(
            *bound_pairs, num=args.lambda_grid, starts=args.starts, seed=seed
        )
        rows = []
        for lam, c in zip(lams, cs):
            v = evaluate_witness_from_tuple(d2x, d2y, float(lam), float(1.0 - lam), float(c))
            rows.append([float(lam), v.v_value, float(c), v.detected])
        csv_path = os.path.join(args.output_dir, "witness_sweep.csv")
        _write_csv(csv_path, ["lambda", "V", "c", "detected"], rows)
        paths.append(csv_path)
        _emit_manifests(args, seed, paths)
    _print_json(
        {
            "alpha": args.alpha,
            "adapted": args.adapted,
            "d2x": d2x,
            "d2y": d2y,
            "lambda": verdict.lam,
            "mu": verdict.mu,
            "v_value": verdict.v_value,
            "c_sep": verdict.c_sep,
            "detected": verdict.detected,
            "margin": verdict.margin,
        }
    )
    return EXIT_OK if local.converged else EXIT_NUMERICAL


def cmd_simulate(args) -> int:
    seed = _resolve_seed(args)
    state = _load_state(args.state)
    lx, ly, _ = spin1_components()
    channel = spin_flip_channel(args.alpha)
    povm_x = noisy_povm(channel, projective_povm(lx))
    povm_y = noisy_povm(channel, projective_povm(ly))
    config = SampleConfig(shots=args.shots, seed=seed, trials=args.trials)
    d2x, d2y, per_trial = sample_variance_tuple(state, povm_x, povm_x, povm_y, povm_y, config)
    _print_json(
        {
            "alpha": args.alpha,
            "shots": args.shots,
            "trials": args.trials,
            "seed": seed,
            "d2x": d2x,
            "d2y": d2y,
            "d2x_std": _std([t[0] for t in per_trial]),
            "d2y_std": _std([t[1] for t in per_trial]),
            "v_half_half": 0.5 * d2x + 0.5 * d2y,
            "per_trial": [[t[0], t[1]] for t in per_trial],
        }
    )
    return EXIT_OK


def _load_sweep_file(path: str) -> List[TestStateParams]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
    if not rows or "theta1_deg" not in rows[0] or "theta2_deg" not in rows[0]:
        raise OSError(f"sweep file {path!r} needs columns theta1_deg,theta2_deg")
    return [
        TestStateParams(theta1=float(r["theta1_deg"]), theta2=float(r["theta2_deg"]))
        for r in rows
    ]


def cmd_calibrate(args) -> int:
    seed = _resolve_seed(args)
    if args.sweep == "theta1":
        sweep = theta1_sweep(args.steps)
    elif args.sweep == "theta2":
        sweep = theta2_sweep(args.steps)
    else:
        sweep = _load_sweep_file(args.sweep)
    config = SampleConfig(shots=args.shots, seed=seed, trials=args.trials)
    records = run_calibration(sweep, args.alpha, config)
    os.makedirs(args.output_dir, exist_ok=True)
    csv_path = os.path.join(args.output_dir, "calibration.csv")
    rows = [
        [r.params.theta1, r.params.theta2, r.v_ideal, r.v_noisy, r.v_sampled_mean, r.v_sampled_std]
        for r in records
    ]
    _write_csv(
        csv_path, ["theta1", "theta2", "V_ideal", "V_noisy", "V_mean", "V_std"], rows
    )
    paths = [csv_path]
    if args.svg:
        theta1s = [r.params.theta1 for r in records]
        varying_theta1 = len(set(theta1s)) > 1
        xs = theta1s if varying_theta1 else [r.params.theta2 for r in records]
        svg_path = os.path.join(args.output_dir, "calibration.svg")
        svg_line_plot(
            svg_path,
            [
                ("V ideal", xs, [r.v_ideal for r in records]),
                ("V noisy", xs, [r.v_noisy for r in records]),
                ("V sampled", xs, [r.v_sampled_mean for r in records]),
            ],
            title=f"calibration sweep, alpha={args.alpha}",
            xlabel="theta1 (deg)" if varying_theta1 else "theta2 (deg)",
            ylabel="V at weights (1/2, 1/2)",
        )
        paths.append(svg_path)
    _emit_manifests(args, seed, paths)
    return EXIT_OK


def cmd_fit_noise(args) -> int:
    with open(args.input, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
    if rows and {"theta1_deg", "theta2_deg", "V_measured"}.issubset(rows[0].keys()):
        t1_col, t2_col, v_col = "theta1_deg", "theta2_deg", "V_measured"
    elif rows and {"theta1", "theta2", "V_mean"}.issubset(rows[0].keys()):
        # the calibrate command's own output feeds straight back in
        t1_col, t2_col, v_col = "theta1", "theta2", "V_mean"
    else:
        raise OSError(
            f"calibration file {args.input!r} needs columns theta1_deg,theta2_deg,V_measured"
        )
    calibration = [
        (
            make_test_state(
                TestStateParams(theta1=float(r[t1_col]), theta2=float(r[t2_col]))
            ),
            float(r[v_col]),
        )
        for r in rows
    ]
    fit = fit_alpha(calibration, weights=(args.lam, args.mu))
    _print_json(
        {
            "alpha": fit.alpha,
            "residual": fit.residual,
            "per_state_residuals": list(fit.per_state_residuals),
        }
    )
    return EXIT_OK


def cmd_report(args) -> int:
    seed = _resolve_seed(args)
    ideal_pairs = spin1_moment_pairs(0.0)
    noisy_pairs = ideal_pairs if args.alpha == 0.0 else spin1_moment_pairs(args.alpha)
    if args.tuple_ is not None:
        tuple_ideal = tuple_noisy = _parse_tuple(args.tuple_)
    else:
        state = _load_state(args.state)
        tuple_ideal = _global_variance_tuple(state, ideal_pairs)
        tuple_noisy = (
            tuple_ideal if args.alpha == 0.0 else _global_variance_tuple(state, noisy_pairs)
        )
    lams, c_noiseless = sep_bound_curve(
        *ideal_pairs, num=args.lambda_grid, starts=args.starts, seed=seed
    )
    if noisy_pairs is ideal_pairs:
        c_adapted = c_noiseless
    else:
        _, c_adapted = sep_bound_curve(
            *noisy_pairs, num=args.lambda_grid, starts=args.starts, seed=seed
        )
    interp_nl = bound_interpolant(lams, c_noiseless)
    interp_ad = bound_interpolant(lams, c_adapted)
    windows = {
        "ideal": detection_window(*tuple_ideal, interp_nl, resolution=args.resolution),
        "adapted": detection_window(*tuple_noisy, interp_ad, resolution=args.resolution),
        "non_adapted": detection_window(*tuple_noisy, interp_nl, resolution=args.resolution),
    }
    rows = []
    for k, lam in enumerate(lams):
        lam = float(lam)
        v_id = evaluate_witness_from_tuple(
            tuple_ideal[0], tuple_ideal[1], lam, 1.0 - lam, float(c_noiseless[k])
        )
        v_ad = evaluate_witness_from_tuple(
            tuple_noisy[0], tuple_noisy[1], lam, 1.0 - lam, float(c_adapted[k])
        )
        v_na = evaluate_witness_from_tuple(
            tuple_noisy[0], tuple_noisy[1], lam, 1.0 - lam, float(c_noiseless[k])
        )
        rows.append(
            [
                lam,
                v_id.v_value,
                v_ad.v_value,
                float(c_noiseless[k]),
                float(c_adapted[k]),
                v_id.detected,
                v_ad.detected,
                v_na.detected,
            ]
        )
    os.makedirs(args.output_dir, exist_ok=True)
    csv_path = os.path.join(args.output_dir, "report.csv")
    _write_csv(
        csv_path,
        [
            "lambda",
            "v_ideal",
            "v_noisy",
            "c_noiseless",
            "c_adapted",
            "detected_ideal",
            "detected_adapted",
            "detected_non_adapted",
        ],
        rows,
    )
    windows_path = os.path.join(args.output_dir, "windows.json")
    summary = {
        "alpha": args.alpha,
        "resolution": args.resolution,
        "tuple_ideal": [tuple_ideal[0], tuple_ideal[1]],
        "tuple_noisy": [tuple_noisy[0], tuple_noisy[1]],
        "windows": {key: [w.to_dict() for w in ws] for key, ws in windows.items()},
        "detected": bool(windows["adapted"]),
    }
    with open(windows_path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    paths = [csv_path, windows_path]
    if args.svg:
        svg_path = os.path.join(args.output_dir, "report.svg")
        series = [
            ("c noiseless", lams, c_noiseless),
            ("c adapted", lams, c_adapted),
            (
                "V measured",
                lams,
                [lam * tuple_noisy[0] + (1 - lam) * tuple_noisy[1] for lam in lams],
            ),
        ]
        svg_line_plot(
            svg_path,
            series,
            title=f"witness sweep, alpha={args.alpha}",
            xlabel="lambda",
            ylabel="value",
        )
        paths.append(svg_path)
    _emit_manifests(args, seed, paths)
    _print_json(summary)
    return EXIT_OK


def build_parser() -> _CliParser:
    parser = _CliParser(
        prog="varwit",
        description="Noise-adapted variance witnesses: bounds, verdicts, simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_CliParser)

    def add_seed(p):
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help=f"RNG seed (default: ${ENV_SEED} or 0)",
        )

    b = sub.add_parser("bound", help="local uncertainty bound and composed two-party bound")
    b.add_argument("--lambda", dest="lam", type=float, required=True)
    b.add_argument("--mu", type=float, required=True)
    b.add_argument("--alpha", type=float, default=0.0)
    b.add_argument("--alpha-b", dest="alpha_b", type=float, default=None,
                   help="noise on the second party (default: same as --alpha)")
    b.add_argument("--method", choices=["seesaw", "grid", "both"], default="both")
    b.add_argument("--grid-n", dest="grid_n", type=int, default=201)
    b.add_argument("--starts", type=int, default=16)
    add_seed(b)
    b.set_defaults(func=cmd_bound)

    r = sub.add_parser("region", help="trace the variance region lower boundary")
    r.add_argument("--lambdas", required=True,
                   help="interior point count, or comma-separated lambda values")
    r.add_argument("--alpha", type=float, default=0.0)
    r.add_argument("--starts", type=int, default=16)
    r.add_argument("--output-dir", dest="output_dir", default=".")
    r.add_argument("--svg", action="store_true")
    add_seed(r)
    r.set_defaults(func=cmd_region)

    w = sub.add_parser("witness", help="witness verdict for a state or variance tuple")
    src = w.add_mutually_exclusive_group(required=True)
    src.add_argument("--state", help="'singlet' or a JSON state file")
    src.add_argument("--tuple", dest="tuple_", help="measured variances 'd2x,d2y'")
    w.add_argument("--alpha", type=float, default=0.0)
    w.add_argument("--lambda", dest="lam", type=float, default=0.5)
    w.add_argument("--lambda-grid", dest="lambda_grid", type=int, default=201)
    w.add_argument("--adapted", dest="adapted", action="store_true", default=True,
                   help="judge against the noise-adapted bound (default)")
    w.add_argument("--non-adapted", dest="adapted", action="store_false",
                   help="judge against the noiseless bound")
    w.add_argument("--starts", type=int, default=16)
    w.add_argument("--output-dir", dest="output_dir", default=None,
                   help="also write the lambda sweep CSV here")
    add_seed(w)
    w.set_defaults(func=cmd_witness)

    s = sub.add_parser("simulate", help="finite-statistics variance tuple of a state")
    s.add_argument("--state", default="singlet")
    s.add_argument("--alpha", type=float, default=0.0)
    s.add_argument("--shots", type=int, default=20000)
    s.add_argument("--trials", type=int, default=100)
    add_seed(s)
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("calibrate", help="sweep test states through the measurement box")
    c.add_argument("--sweep", required=True,
                   help="'theta1', 'theta2', or a CSV file with theta1_deg,theta2_deg")
    c.add_argument("--alpha", type=float, default=0.0)
    c.add_argument("--steps", type=int, default=45)
    c.add_argument("--shots", type=int, default=20000)
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--output-dir", dest="output_dir", default=".")
    c.add_argument("--svg", action="store_true")
    add_seed(c)
    c.set_defaults(func=cmd_calibrate)

    f = sub.add_parser("fit-noise", help="fit the noise parameter from calibration data")
    f.add_argument("--input", required=True,
                   help="CSV with columns theta1_deg,theta2_deg,V_measured")
    f.add_argument("--lambda", dest="lam", type=float, default=0.5)
    f.add_argument("--mu", type=float, default=0.5)
    f.set_defaults(func=cmd_fit_noise)

    rep = sub.add_parser("report", help="full sweep: bound curves, verdicts, windows")
    rsrc = rep.add_mutually_exclusive_group(required=True)
    rsrc.add_argument("--state", help="'singlet' or a JSON state file")
    rsrc.add_argument("--tuple", dest="tuple_", help="measured variances 'd2x,d2y'")
    rep.add_argument("--alpha", type=float, default=0.0)
    rep.add_argument("--lambda-grid", dest="lambda_grid", type=int, default=201)
    rep.add_argument("--resolution", type=float, default=1e-3)
    rep.add_argument("--starts", type=int, default=16)
    rep.add_argument("--output-dir", dest="output_dir", default=".")
    rep.add_argument("--svg", action="store_true")
    add_seed(rep)
    rep.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"varwit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"varwit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"varwit: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"varwit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
