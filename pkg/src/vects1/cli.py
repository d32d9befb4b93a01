"""Command-line front end.

Exit codes: 0 on success, 2 on an invalid configuration, 3 on a numeric or
verification failure. Each command prints a one-line summary to stdout and
writes its data files into ``--out``.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .config import Command, FlowSettings, RunConfig, parse_k_range
from .exceptions import InvalidConfigError, Vects1Error, VerificationFailure
from .expressions import parse_series
from .flows import burgers_oracle_error, evolve
from .fourier import differentiate, random_trig_polynomial
from .lie_poisson import CocycleSpec, RegularFunctional, cocycle_report, gradient_audit, gradient_symmetry_check
from .obstruction import (
    SCAN_HEADER,
    classify_range,
    expected_leading_term,
    m0_leading_term,
    scan,
)
from .sobolev import h_k_functional, h_tilde_functional
from .utils.reports import write_csv, write_json, write_records

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILURE = 3

GRADIENT_TOLERANCE = 1e-6
LEADING_TERM_TOLERANCE = 1e-8
CHARACTERISTICS_TOLERANCE = 1e-6


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------
def run_classify(config: RunConfig) -> str:
    results = classify_range(config.k_values, config.n_max, mode=config.mode)
    for result in results:
        write_json(config.out_dir / f"classify_k{result.k}.json", result.to_json())
    return "; ".join(f"k={r.k}: {r.kind.value} ({r.equation})" for r in results)


def run_scan(config: RunConfig) -> str:
    result = scan(
        config.k_values,
        config.scan_ns,
        config.scan_grid(),
        mode=config.mode,
        workers=config.workers(),
    )
    write_csv(
        config.out_dir / "scan.csv",
        SCAN_HEADER,
        (row.as_csv() for row in result.rows),
        footer={"max_discrepancy": f"{result.max_discrepancy:.3e}"},
    )
    result.check()
    return f"{len(result.rows)} cells, max discrepancy {result.max_discrepancy:.3e}"


def run_cocycle_check(config: RunConfig) -> str:
    spec = CocycleSpec(parse_series(config.m0, mode=config.mode), config.number(config.beta))
    report = cocycle_report(spec, config.bound)
    write_json(config.out_dir / "cocycle.json", report.to_json())
    if not report.passed:
        raise VerificationFailure(
            f"cocycle condition fails: defect {report.max_defect:.3e} at {report.worst_triple}"
        )
    return f"{report.triples_checked} triples, max defect {report.max_defect:.3e}"


def run_evolve(config: RunConfig) -> str:
    flow = config.flow
    m0 = parse_series(flow.init)
    summaries = []
    for k in config.k_values:
        try:
            trace = evolve(
                m0,
                k,
                flow.T,
                flow.dt,
                flow.grid_points,
                breaking_threshold=flow.breaking_threshold,
                record_every=flow.record_every,
            )
        except ValueError as exc:
            raise InvalidConfigError(str(exc)) from exc
        drifts = trace.drifts()
        manifest: dict[str, Any] = {
            "command": config.command.value,
            "init": flow.init,
            "note": "initial datum and horizon are user-chosen",
            **trace.manifest(),
        }
        if k == 0 and not trace.breaking:
            error = burgers_oracle_error(trace)
            manifest["characteristics_error"] = error
            manifest["characteristics_match"] = error <= CHARACTERISTICS_TOLERANCE
        write_records(
            config.out_dir / f"trace_k{k}.csv",
            trace.rows(include_coefficients=flow.dump_coefficients),
            footer={f"drift_{name}": f"{value:.3e}" for name, value in drifts.items()},
        )
        write_json(config.out_dir / f"manifest_k{k}.json", manifest)
        status = "breaking" if trace.breaking else "completed"
        worst = max(drifts.values(), default=0.0)
        summaries.append(f"k={k}: {status} at t={trace.final_time:g}, max drift {worst:.3e}")
    return "; ".join(summaries)


def run_crosscheck(config: RunConfig) -> str:
    m0 = parse_series(config.m0, mode=config.mode)
    if m0.bandwidth == 0:
        raise InvalidConfigError("crosscheck needs a nonconstant m0")
    records = []
    worst = 0.0
    for k in config.k_values:
        r_values = list(range(2, 4 * k + 6))
        for x in config.x_values:
            degree, coefficient = m0_leading_term(k, m0, x, r_values)
            expected_degree, expected = expected_leading_term(k, m0, x)
            gap = abs(coefficient - expected) / max(abs(expected), 1e-300)
            if degree != expected_degree:
                gap = float("inf")
            worst = max(worst, gap)
            records.append(
                {
                    "k": k,
                    "x": x,
                    "degree": degree,
                    "expected_degree": expected_degree,
                    "leading_coefficient": coefficient,
                    "expected_coefficient": expected,
                    "relative_error": gap,
                }
            )
    write_json(config.out_dir / "crosscheck.json", {"m0": m0.to_json(), "cases": records})
    if worst > LEADING_TERM_TOLERANCE:
        raise VerificationFailure(f"leading-term mismatch, worst relative error {worst:.3e}")
    return f"{len(records)} cases, worst relative error {worst:.3e}"


def _planted_non_gradient() -> RegularFunctional:
    return RegularFunctional(value=lambda m: 0.0, gradient=differentiate, name="planted_m_x")


def run_gradcheck(config: RunConfig) -> str:
    functionals = [h_k_functional(k) for k in config.k_values]
    functionals += [h_tilde_functional(0), h_tilde_functional(1)]
    points = [
        random_trig_polynomial(4, seed=config.seed + i, scale=0.3) for i in range(config.samples)
    ]
    records = []
    worst = 0.0
    for functional in functionals:
        for index, m in enumerate(points):
            audit = gradient_audit(functional, m)
            symmetry = gradient_symmetry_check(functional, m)
            worst = max(worst, audit, symmetry)
            records.append({"functional": functional.name, "sample": index, "audit": audit, "symmetry": symmetry})
    planted = gradient_symmetry_check(_planted_non_gradient(), points[0])
    write_json(
        config.out_dir / "gradcheck.json",
        {"seed": config.seed, "checks": records, "planted_asymmetry": planted},
    )
    if worst > GRADIENT_TOLERANCE:
        raise VerificationFailure(f"gradient audit failed, worst defect {worst:.3e}")
    if planted <= 1.0:
        raise VerificationFailure(f"planted non-gradient went undetected (asymmetry {planted:.3e})")
    return f"{len(records)} audits, worst defect {worst:.3e}, planted asymmetry {planted:.3f}"


HANDLERS: dict[Command, Callable[[RunConfig], str]] = {
    Command.CLASSIFY: run_classify,
    Command.SCAN: run_scan,
    Command.COCYCLE_CHECK: run_cocycle_check,
    Command.EVOLVE: run_evolve,
    Command.CROSSCHECK: run_crosscheck,
    Command.GRADCHECK: run_gradcheck,
}


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------
# Options whose values may start with a minus sign, e.g. "-1,1" or "-cos2x".
_SIGNED_VALUE_OPTIONS = frozenset({"--alpha-beta", "--beta", "--m0", "--init"})


def _attach_signed_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--alpha-beta -1,1`` as ``--alpha-beta=-1,1``.

    argparse only accepts a dash-led value when it looks like a plain negative
    number, so pairs and expressions are glued to their option first.
    """
    tokens = list(argv)
    out: list[str] = []
    i = 0
    while i < len(tokens):
        token = tokens[i]
        value = tokens[i + 1] if i + 1 < len(tokens) else ""
        if token in _SIGNED_VALUE_OPTIONS and len(value) > 1 and value[0] == "-" and value[1] in "0123456789.cs":
            out.append(f"{token}={value}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def _alpha_beta(text: str) -> list[tuple[str, str]]:
    pairs = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        alpha, _, beta = chunk.partition(",")
        pairs.append((alpha.strip(), beta.strip()))
    return pairs


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["float", "rational"], default="float", help="scalar arithmetic")
    common.add_argument("--out", type=Path, default=Path("vects1-out"), help="output directory")
    common.add_argument("--k", default=None, help='k values: "3", "0..5" or "0,1,3"')
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    common.add_argument("--quiet", "-q", action="store_true", help="warnings only")

    parser = argparse.ArgumentParser(prog="vects1", description="Bi-Hamiltonian H^k verification and geodesic flows.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", parents=[common], help="admissible (alpha, beta) per k")
    classify.add_argument("--n-max", type=int, default=6)

    scan_cmd = sub.add_parser("scan", parents=[common], help="closed form vs matrix oracle grid")
    scan_cmd.add_argument("--n", dest="n_values", default=None, help='n values: "1..8" or "2"')
    scan_cmd.add_argument("--n-max", type=int, default=8)
    scan_cmd.add_argument("--alpha-beta", default="1,0;0,1;-1,1;2,-2", help='pairs "a,b;a,b"; a leading minus may follow a space or "="')
    scan_cmd.add_argument("--threads", type=int, default=None)

    cocycle = sub.add_parser("cocycle-check", parents=[common], help="cocycle identity over triples")
    cocycle.add_argument("--m0", default="cos")
    cocycle.add_argument("--beta", default="0")
    cocycle.add_argument("--bound", type=int, default=6)

    evolve_cmd = sub.add_parser("evolve", parents=[common], help="integrate m_t = -X_k(m)")
    evolve_cmd.add_argument("--init", default="2cos")
    evolve_cmd.add_argument("--T", dest="T", type=float, default=1.0)
    evolve_cmd.add_argument("--dt", type=float, default=1e-3)
    evolve_cmd.add_argument("--grid-points", type=int, default=128)
    evolve_cmd.add_argument("--breaking-threshold", type=float, default=1e3)
    evolve_cmd.add_argument("--record-every", type=int, default=1)
    evolve_cmd.add_argument("--dump-coefficients", action="store_true")

    cross = sub.add_parser("crosscheck", parents=[common], help="leading term for nonconstant m0")
    cross.add_argument("--m0", default="cos")
    cross.add_argument("--x", dest="x_values", type=float, nargs="+", default=None)

    grad = sub.add_parser("gradcheck", parents=[common], help="finite-difference gradient audits")
    grad.add_argument("--seed", type=int, default=0)
    grad.add_argument("--samples", type=int, default=3)
    return parser


_DEFAULT_K = {
    "classify": "0..5",
    "scan": "0..3",
    "cocycle-check": "0",
    "evolve": "1",
    "crosscheck": "0..2",
    "gradcheck": "0..3",
}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Translate parsed arguments into a validated :class:`RunConfig`."""
    values: dict[str, Any] = {
        "command": args.command,
        "k_values": args.k if args.k is not None else _DEFAULT_K[args.command],
        "mode": args.mode,
        "out_dir": args.out,
    }
    if args.command in ("classify", "scan"):
        values["n_max"] = args.n_max
    if args.command == "scan":
        values["alpha_beta"] = _alpha_beta(args.alpha_beta)
        values["threads"] = args.threads
        if args.n_values is not None:
            values["n_values"] = parse_k_range(args.n_values)
    if args.command == "cocycle-check":
        values.update(m0=args.m0, beta=args.beta, bound=args.bound)
    if args.command == "crosscheck":
        values["m0"] = args.m0
        if args.x_values:
            values["x_values"] = args.x_values
    if args.command == "gradcheck":
        values.update(seed=args.seed, samples=args.samples)
    if args.command == "evolve":
        try:
            values["flow"] = FlowSettings(
                T=args.T,
                dt=args.dt,
                grid_points=args.grid_points,
                init=args.init,
                breaking_threshold=args.breaking_threshold,
                record_every=args.record_every,
                dump_coefficients=args.dump_coefficients,
            )
        except ValueError as exc:
            raise InvalidConfigError(str(exc)) from exc
    return RunConfig.build(**values)


def _configure_logging(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_attach_signed_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    _configure_logging(args.verbose, args.quiet)

    try:
        config = config_from_args(args)
        summary = HANDLERS[config.command](config)
    except (InvalidConfigError, ValueError) as exc:
        logger.error("Invalid configuration: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (Vects1Error, ArithmeticError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(f"{config.command.value}: {summary}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
