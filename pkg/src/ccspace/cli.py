"""Command-line front end: axiom suites and experiments over named instances.

Every subcommand dispatches to one library operation and serializes its
report; identical configuration and seed produce byte-identical output.
Exit codes: 0 all checks pass (or a documented expected failure confirmed),
1 violation found, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Optional

from . import fixtures
from .axioms import AxiomReport, check_axioms, check_cancellation
from .embedding import embedding_suite
from .instances import SPACE_NAMES, get_space
from .limits import (
    ConvergenceTrace,
    CyclicTransformation,
    convexification_rate,
    ergodic_run,
    raw_vs_convex_average_run,
    scaling_counterexample,
    slln_run,
    rational_jensen_suite,
    weight_perturbation_suite,
)
from .probability import (
    conditional_suite,
    dyadic_filtration,
    martingale_convergence_trace,
    martingale_sequence,
)

SEED_ENV_VAR = "CCSPACE_SEED"

COMMANDS = (
    "check-axioms",
    "cancellation",
    "slln",
    "ergodic",
    "martingale",
    "jensen",
    "embed-verify",
    "convexify-rate",
    "counterexample",
    "prop52",
    "prop55",
)

# Short statement of the result each subcommand exercises (report metadata).
PAPER_REFS = {
    "check-axioms": "combination axioms and convexification-operator laws",
    "cancellation": "metric cancellation law on convex points",
    "slln": "strong law of large numbers for equal-weight combinations",
    "ergodic": "pointwise ergodic averages under a measure-preserving rotation",
    "martingale": "martingale convergence of conditional expectations along a filtration",
    "jensen": "Jensen inequality for expectation and conditional expectation",
    "embed-verify": "isometric affine embedding of convex compacta via support functions",
    "convexify-rate": "convergence of equal-weight self-combinations to the convexification",
    "counterexample": "failure of the weight-perturbation bound without convexification",
    "prop52": "weight-perturbation bound for combinations of convexified points",
    "prop55": "asymptotic equivalence of raw and convexified equal-weight averages",
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    space: str = "euclidean"
    dim: int = 1
    r: float = 2.0
    seed: int = 0
    trials: int = 1000
    n_max: int = 1000
    tolerance: Optional[float] = None
    out: Optional[str] = None
    fmt: str = "json"
    fixture: Optional[str] = None
    fixture_file: Optional[str] = None
    mode: str = "convex_track"
    p: int = 1
    modulus: int = 1000
    step: int = 7
    scale: float = 1.0
    raw_points: bool = False
    params: dict = field(default_factory=dict)


_CONFIG_KEYS = {
    "space": str,
    "dim": int,
    "r": float,
    "seed": int,
    "trials": int,
    "n_max": int,
    "tolerance": float,
    "out": str,
    "fmt": str,
    "fixture": str,
    "fixture_file": str,
    "mode": str,
    "p": int,
    "modulus": int,
    "step": int,
    "scale": float,
    "raw_points": lambda v: v.lower() in ("1", "true", "yes"),
}


def load_config_file(path: str) -> dict:
    """``key = value`` lines mirroring the flag names; '#' starts a comment."""
    out = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _CONFIG_KEYS[key](value.strip())
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccspace",
        description=(
            "Axiom suites and limit experiments over convex combination space "
            "instances: euclidean, power, compact-sets, distributions."
        ),
        epilog=(
            f"The environment variable {SEED_ENV_VAR} overrides the default seed. "
            "Point serialization: euclidean/power points are comma-separated "
            "coordinates ('1.5,2'); compact sets are whitespace-separated "
            "coordinate tuples ('0 1' or '0,0 1,1'), with a 'hull:' prefix for "
            "convex polytopes; distributions are atom:prob pairs ('0:0.5 1:0.5'). "
            "Fixture files hold one 'label ; prob ; value' line per atom."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        cmd = sub.add_parser(name, help=PAPER_REFS[name])
        cmd.add_argument("--space", choices=SPACE_NAMES, default=None)
        cmd.add_argument("--dim", type=int, default=None)
        cmd.add_argument("--r", type=float, default=None, help="power-space exponent (> 1)")
        cmd.add_argument("--seed", type=int, default=None)
        cmd.add_argument("--trials", type=int, default=None)
        cmd.add_argument("--n-max", dest="n_max", type=int, default=None)
        cmd.add_argument("--tolerance", type=float, default=None)
        cmd.add_argument("--out", default=None, help="report path (default: stdout)")
        cmd.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
        cmd.add_argument("--config", default=None, help="key = value config file; flags win")
        cmd.add_argument("--fixture", default=None, help="named fixture")
        cmd.add_argument("--fixture-file", dest="fixture_file", default=None)
        cmd.add_argument("--mode", choices=("convex_track", "raw_track"), default=None)
        cmd.add_argument("--p", type=int, choices=(1, 2), default=None)
        cmd.add_argument("--modulus", type=int, default=None)
        cmd.add_argument("--step", type=int, default=None)
        cmd.add_argument("--scale", type=float, default=None)
        cmd.add_argument("--raw-points", dest="raw_points", action="store_true", default=None)
    return parser


_DEFAULTS = dict(
    space="euclidean",
    dim=1,
    r=2.0,
    trials=1000,
    n_max=1000,
    tolerance=None,
    out=None,
    fmt="json",
    fixture=None,
    fixture_file=None,
    mode="convex_track",
    p=1,
    modulus=1000,
    step=7,
    scale=1.0,
    raw_points=False,
)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = dict(_DEFAULTS)
    values["seed"] = int(os.environ.get(SEED_ENV_VAR, "0"))
    if args.config:
        values.update(load_config_file(args.config))
    for key in list(values):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    cfg = RunConfig(command=args.command, **values)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if cfg.space not in SPACE_NAMES:
        raise UsageError(f"unknown space {cfg.space!r}")
    if cfg.space == "power" and not cfg.r > 1.0:
        raise UsageError("power space needs --r greater than 1")
    if cfg.space != "power" and cfg.r != _DEFAULTS["r"]:
        raise UsageError("--r applies to the power space only")
    if cfg.space == "compact-sets" and cfg.dim not in (1, 2):
        raise UsageError("compact-sets supports --dim 1 or 2")
    if cfg.space == "euclidean" and cfg.dim not in (1, 2, 3):
        raise UsageError("euclidean supports --dim 1, 2, or 3")
    if cfg.trials < 1 or cfg.n_max < 1:
        raise UsageError("--trials and --n-max must be positive")


def _space_for(cfg: RunConfig):
    return get_space(cfg.space, dim=cfg.dim, r=cfg.r)


def _report_payload(cfg: RunConfig, verdict: str, details: dict, params: dict) -> dict:
    return {
        "command": cfg.command,
        "space": cfg.space,
        "params": params,
        "seed": cfg.seed,
        "verdict": verdict,
        "details": details,
        "paper_ref": PAPER_REFS[cfg.command],
    }


def _suite_details(report: AxiomReport) -> dict:
    return {
        "tolerance": report.tolerance,
        "checks": {
            name: {
                "worst_violation": repr(c.worst_violation),
                "trials": c.trials,
                "verdict": "pass" if c.passed else "fail",
                "witness": c.witness,
            }
            for name, c in sorted(report.checks.items())
        },
    }


def _suite_csv(report: AxiomReport) -> list[str]:
    lines = ["check,worst_violation,trials,verdict"]
    for name, worst, trials, verdict in report.rows():
        lines.append(f"{name},{worst!r},{trials},{verdict}")
    return lines


def _trace_csv(trace: ConvergenceTrace) -> list[str]:
    lines = ["n,distance"]
    for n, d in trace.csv_rows():
        lines.append(f"{n},{d!r}")
    return lines


def run(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    """Execute one subcommand; returns (exit code, json payload, csv lines)."""
    command = cfg.command
    if command == "check-axioms":
        space = _space_for(cfg)
        report = check_axioms(space, trials=cfg.trials, tol=cfg.tolerance, seed=cfg.seed)
        verdict = "pass" if report.passed else "fail"
        params = {"trials": cfg.trials, "dim": cfg.dim, "tolerance": report.tolerance}
        if cfg.space == "power":
            params["r"] = cfg.r
        return (
            0 if report.passed else 1,
            _report_payload(cfg, verdict, _suite_details(report), params),
            _suite_csv(report),
        )

    if command == "cancellation":
        space = _space_for(cfg)
        raw = cfg.raw_points or cfg.space == "power"
        report = check_cancellation(
            space, trials=cfg.trials, tol=cfg.tolerance, seed=cfg.seed,
            convex_points=not raw,
        )
        if raw:
            # raw points are the documented counterexample; finding the
            # discrepancy is the expected outcome
            confirmed = not report.passed
            verdict = "expected_fail_confirmed" if confirmed else "expected_fail_missing"
            code = 0 if confirmed else 1
        else:
            verdict = "pass" if report.passed else "fail"
            code = 0 if report.passed else 1
        params = {"trials": cfg.trials, "dim": cfg.dim, "raw_points": raw}
        return code, _report_payload(cfg, verdict, _suite_details(report), params), _suite_csv(report)

    if command == "slln":
        space = _space_for(cfg)
        fixture = cfg.fixture or ("bernoulli" if cfg.space == "euclidean" else "interval-pair")
        law = fixtures.slln_law(cfg.space, fixture)
        tol = cfg.tolerance if cfg.tolerance is not None else 0.05
        trace = slln_run(space, law, n_max=cfg.n_max, seed=cfg.seed, mode=cfg.mode, tolerance=tol)
        params = {"fixture": fixture, "n_max": cfg.n_max, "mode": cfg.mode, "tolerance": tol}
        verdict = "pass" if trace.verdict else "fail"
        return (
            0 if trace.verdict else 1,
            _report_payload(cfg, verdict, trace.to_json_dict(), params),
            _trace_csv(trace),
        )

    if command == "ergodic":
        space = _space_for(cfg)
        tau = CyclicTransformation(cfg.modulus, cfg.step)
        x = fixtures.ergodic_element(space, cfg.space, cfg.modulus)
        tol = cfg.tolerance if cfg.tolerance is not None else 1e-12
        n_max = min(cfg.n_max, cfg.modulus) if cfg.n_max else cfg.modulus
        trace = ergodic_run(tau, x, n_max=max(n_max, cfg.modulus), tolerance=tol)
        params = {"modulus": cfg.modulus, "step": cfg.step, "tolerance": tol}
        verdict = "pass" if trace.verdict else "fail"
        return (
            0 if trace.verdict else 1,
            _report_payload(cfg, verdict, trace.to_json_dict(), params),
            _trace_csv(trace),
        )

    if command == "martingale":
        space = _space_for(cfg)
        if cfg.fixture_file:
            x = fixtures.load_fixture_file(space, cfg.space, cfg.fixture_file)
        else:
            x = fixtures.martingale_element(space, cfg.space, n_atoms=16)
        filt = dyadic_filtration(x.sample_space)
        martingale_sequence(x, filt)
        forward = martingale_convergence_trace(x, filt, p=cfg.p, direction="forward")
        reverse = martingale_convergence_trace(x, filt, p=cfg.p, direction="reverse")
        tol = cfg.tolerance if cfg.tolerance is not None else 1e-12
        trace = ConvergenceTrace.build(
            range(1, len(forward) + 1), forward, "conditional expectation at the finest level", tol
        )
        details = trace.to_json_dict()
        details["reverse_distances"] = [repr(d) for d in reverse]
        details["reverse_final"] = repr(reverse[-1])
        ok = trace.verdict and reverse[-1] <= tol
        params = {"p": cfg.p, "atoms": 16, "tolerance": tol}
        return (
            0 if ok else 1,
            _report_payload(cfg, "pass" if ok else "fail", details, params),
            _trace_csv(trace),
        )

    if command == "jensen":
        space = _space_for(cfg)
        tol = cfg.tolerance if cfg.tolerance is not None else space.default_tolerance
        if cfg.fixture_file:
            from .core import convexify
            from .probability import DistanceTo, FinitePartition, jensen_check

            x = fixtures.load_fixture_file(space, cfg.space, cfg.fixture_file)
            anchor = convexify(space, next(iter(x.values.values())))
            phi = DistanceTo(space, anchor)
            report = jensen_check(x, phi, conditional=None, tol=tol)
            atoms = x.sample_space.atoms
            half = FinitePartition.of(
                [atoms[: max(1, len(atoms) // 2)], atoms[max(1, len(atoms) // 2):]]
                if len(atoms) > 1
                else [atoms],
                x.sample_space,
            )
            conditional = jensen_check(x, phi, conditional=half, tol=tol)
            report.checks.update(conditional.checks)
            params = {"fixture_file": cfg.fixture_file, "tolerance": tol}
        else:
            report = conditional_suite(space, trials=cfg.trials, tol=tol, seed=cfg.seed)
            params = {"trials": cfg.trials, "dim": cfg.dim, "tolerance": tol}
        verdict = "pass" if report.passed else "fail"
        return (
            0 if report.passed else 1,
            _report_payload(cfg, verdict, _suite_details(report), params),
            _suite_csv(report),
        )

    if command == "embed-verify":
        report = embedding_suite(trials=cfg.trials, seed=cfg.seed)
        verdict = "pass" if report.passed else "fail"
        params = {"trials": cfg.trials}
        return (
            0 if report.passed else 1,
            _report_payload(cfg, verdict, _suite_details(report), params),
            _suite_csv(report),
        )

    if command == "convexify-rate":
        space = _space_for(cfg)
        fixture = cfg.fixture or ("two-point" if cfg.space == "compact-sets" else "unit")
        point = fixtures.convexify_point(cfg.space, fixture, dim=cfg.dim)
        n_max = cfg.n_max if cfg.n_max != _DEFAULTS["n_max"] else 64
        tol = cfg.tolerance if cfg.tolerance is not None else 1.0
        trace = convexification_rate(space, point, list(range(1, n_max + 1)), tolerance=tol)
        params = {"fixture": fixture, "n_max": n_max, "tolerance": tol}
        verdict = "pass" if trace.verdict else "fail"
        return (
            0 if trace.verdict else 1,
            _report_payload(cfg, verdict, trace.to_json_dict(), params),
            _trace_csv(trace),
        )

    if command == "counterexample":
        result = scaling_counterexample(scale=cfg.scale)
        confirmed = result.verdict == "fails"
        details = {
            "lhs": repr(result.lhs),
            "rhs": repr(result.rhs),
            "inequality": "raw-point weight-perturbation bound",
            "verdict": result.verdict,
        }
        params = {"scale": cfg.scale}
        payload = _report_payload(
            cfg, "expected_fail_confirmed" if confirmed else "expected_fail_missing",
            details, params,
        )
        csv_lines = ["lhs,rhs,verdict", f"{result.lhs!r},{result.rhs!r},{result.verdict}"]
        return (0 if confirmed else 1, payload, csv_lines)

    if command == "prop52":
        space = _space_for(cfg)
        tol = cfg.tolerance if cfg.tolerance is not None else space.default_tolerance
        report = weight_perturbation_suite(space, trials=cfg.trials, tol=tol, seed=cfg.seed)
        jensen = rational_jensen_suite(space, trials=cfg.trials, tol=tol, seed=cfg.seed)
        for name, check in jensen.checks.items():
            report.checks[name] = check
        verdict = "pass" if report.passed else "fail"
        params = {"trials": cfg.trials, "dim": cfg.dim, "tolerance": tol}
        return (
            0 if report.passed else 1,
            _report_payload(cfg, verdict, _suite_details(report), params),
            _suite_csv(report),
        )

    if command == "prop55":
        space = _space_for(cfg)
        fixture = cfg.fixture or ("two-point-family" if cfg.space == "compact-sets" else "unit")
        family = fixtures.family_points(cfg.space, fixture)
        n_max = cfg.n_max if cfg.n_max != _DEFAULTS["n_max"] else 12
        tol = cfg.tolerance if cfg.tolerance is not None else 0.5
        trace = raw_vs_convex_average_run(space, family, n_max=n_max, tolerance=tol)
        params = {"fixture": fixture, "n_max": n_max, "tolerance": tol}
        verdict = "pass" if trace.verdict else "fail"
        return (
            0 if trace.verdict else 1,
            _report_payload(cfg, verdict, trace.to_json_dict(), params),
            _trace_csv(trace),
        )

    raise UsageError(f"unknown command {command!r}")


def _write_atomic(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ccspace-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = resolve_config(args)
        code, payload, csv_lines = run(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(csv_lines) + "\n"
    if cfg.out:
        _write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
