"""Command-line interface.

Subcommands: transform, riesz, lemma1, lemma2, norms, project, decompose,
ensemble, growth, verify. Exit codes: 0 success with every check inside
tolerance, 1 a check failed, 2 usage or input-format error. All files are
written atomically and every JSON artifact echoes the fully resolved
configuration that produced it. This module is the only place performing
file I/O; the math modules stay pure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .config import (
    DEFAULT_TOLERANCES,
    LEMMA1_PATTERN_TOL,
    MASS_TOL,
    Tolerances,
)
from .errors import ChaosError
from .measures import (
    lemma1_measure,
    lemma1_pattern_residual,
    lemma2_measure,
    lemma2_pattern_residual,
    riesz_density,
)
from .chaos import (
    convolve_with_measure,
    decomposition_residual,
    linf_norm,
    lq_norm,
    polynomial_spectrum,
    project_J,
    project_order,
    sidon_ratio,
)
from .experiments import (
    ExperimentConfig,
    growth_study,
    random_ensemble_study,
    verify_suite,
)
from .transform import Spectrum, StepFunction, forward, inverse
from . import serialization as ser


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x != ""]


def _complex_list(text: str) -> list[complex]:
    return [complex(x) for x in text.split(",") if x != ""]


def _tolerances(args) -> Tolerances:
    tol = DEFAULT_TOLERANCES
    for item in args.tol or []:
        name, _, value = item.partition("=")
        name = name.replace("-", "_")
        if name not in ("construction", "transform", "solve_residual") or not value:
            raise ChaosError(
                f"--tol expects construction|transform|solve-residual=VALUE, got {item!r}"
            )
        tol = tol.with_overrides(**{name: float(value)})
    return tol


def _echo(config: dict) -> dict:
    return {"format_version": ser.FORMAT_VERSION, "config": config}


def _emit(args, payload: dict) -> None:
    if getattr(args, "out", None):
        ser.write_json_atomic(args.out, payload)
        print(f"wrote {args.out}")
    else:
        print(ser.dump_json(payload), end="")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def cmd_transform(args) -> int:
    obj = ser.load_grid(args.input)
    direction = args.direction
    if direction == "auto":
        direction = "forward" if isinstance(obj, StepFunction) else "inverse"
    if direction == "forward":
        if not isinstance(obj, StepFunction):
            raise ChaosError(f"{args.input}: forward transform needs kind 'cells'")
        result = forward(obj)
        ser.save_spectrum(args.out, result, extras=_echo({"direction": "forward"}))
    else:
        if not isinstance(obj, Spectrum):
            raise ChaosError(f"{args.input}: inverse transform needs kind 'paley'")
        result = inverse(obj)
        ser.save_step_function(args.out, result, extras=_echo({"direction": "inverse"}))
    print(f"{direction}: p={obj.p} level={obj.level} -> {args.out}")
    return 0


def cmd_riesz(args) -> int:
    a = _complex_list(args.a)
    j = _int_list(args.j)
    density = riesz_density(args.p, args.level, a, j, args.max_cells)
    spectrum = forward(density)
    variation = float(np.abs(density.values).sum() * args.p**-args.level)
    integral = density.integral()
    min_density = float(density.values.real.min())
    checks = {
        "integral_error": abs(integral - 1.0),
        "variation_error": abs(variation - 1.0),
        "min_density": min_density,
    }
    ok = (
        checks["integral_error"] <= MASS_TOL
        and checks["variation_error"] <= MASS_TOL
        and min_density >= -MASS_TOL
    )
    if args.out:
        from .measures import MeasureRep

        measure = MeasureRep(
            spectrum,
            variation,
            {
                "construction": "riesz",
                "p": args.p,
                "a": [complex(x) for x in a],
                "j": tuple(j),
            },
        )
        config = {"p": args.p, "level": args.level, "a": args.a, "j": args.j}
        ser.save_measure(args.out, measure, extras=_echo(config) | {"checks": checks})
    print(
        f"riesz: p={args.p} level={args.level} integral={integral.real:.12f} "
        f"variation={variation:.12f} min={min_density:.3e} "
        f"[{'ok' if ok else 'FAIL'}]"
    )
    return 0 if ok else 1


def cmd_lemma1(args) -> int:
    J = _int_list(args.J)
    level = args.N + 1
    measure = lemma1_measure(args.p, args.d, J, level, args.max_cells)
    matched, mismatched = lemma1_pattern_residual(measure, args.d, J, args.N)
    ok = matched <= LEMMA1_PATTERN_TOL and mismatched <= LEMMA1_PATTERN_TOL
    config = {"p": args.p, "d": args.d, "J": J, "N": args.N}
    summary = {
        "matched_residual": matched,
        "mismatched_residual": mismatched,
        "tolerance": LEMMA1_PATTERN_TOL,
        "passed": ok,
    }
    if args.out:
        ser.save_measure(
            args.out, measure, extras=_echo(config) | {"pattern_check": summary}
        )
    print(
        f"lemma1: p={args.p} d={args.d} N={args.N} matched={matched:.3e} "
        f"mismatched={mismatched:.3e} variation={measure.variation:.6f} "
        f"bound={measure.provenance['variation_bound']:.6f} [{'ok' if ok else 'FAIL'}]"
    )
    return 0 if ok else 1


def cmd_lemma2(args) -> int:
    tol = _tolerances(args)
    level = args.N + 1
    measure = lemma2_measure(args.p, args.d, args.s, level, args.max_cells)
    kept, killed = lemma2_pattern_residual(measure, args.d, args.s, args.N)
    ok = kept <= tol.construction and killed <= tol.construction
    config = {"p": args.p, "d": args.d, "s": args.s, "N": args.N}
    summary = {
        "kept_residual": kept,
        "killed_residual": killed,
        "tolerance": tol.construction,
        "passed": ok,
    }
    if args.out:
        ser.save_measure(
            args.out, measure, extras=_echo(config) | {"pattern_check": summary}
        )
    print(
        f"lemma2: p={args.p} d={args.d} s={args.s} N={args.N} kept={kept:.3e} "
        f"killed={killed:.3e} variation={measure.variation:.6f} "
        f"[{'ok' if ok else 'FAIL'}]"
    )
    return 0 if ok else 1


def cmd_norms(args) -> int:
    Q = ser.load_polynomial(args.poly)
    sup, cell = linf_norm(Q, args.max_cells)
    vector = Q.coefficient_vector()
    q = args.q if args.q is not None else Q.sidon_exponent
    payload = _echo({"poly": args.poly, "q": q}) | {
        "linf": sup,
        "argmax_cell": cell.index,
        "l1": lq_norm(vector, 1.0),
        "lq": lq_norm(vector, q),
        "sidon_ratio": sidon_ratio(Q, args.max_cells),
        "orders": list(Q.orders),
        "terms": len(vector),
    }
    _emit(args, payload)
    return 0


def cmd_project(args) -> int:
    tol = _tolerances(args)
    Q = ser.load_polynomial(args.poly)
    if (args.J is None) == (args.order is None):
        raise ChaosError("exactly one of --J and --order is required")
    level = Q.N + 1
    if args.J is not None:
        J = _int_list(args.J)
        result = project_J(Q, J)
        measure = lemma1_measure(Q.p, Q.order, J, level, args.max_cells)
        mode = {"J": J}
    else:
        result = project_order(Q, args.order)
        measure = lemma2_measure(Q.p, Q.order, args.order, level, args.max_cells)
        mode = {"order": args.order}
    route = convolve_with_measure(Q, measure)
    direct = polynomial_spectrum(result, level)
    residual = float(np.abs(route.coeffs - direct.coeffs).max())
    ok = residual <= tol.construction
    config = _echo({"poly": args.poly} | mode)
    if args.out:
        ser.save_polynomial(
            args.out,
            result,
            extras=config | {"route_residual": residual, "passed": ok},
        )
    print(
        f"project: terms {len(Q.coeffs)} -> {len(result.coeffs)}, "
        f"route residual {residual:.3e} [{'ok' if ok else 'FAIL'}]"
    )
    return 0 if ok else 1


def cmd_decompose(args) -> int:
    tol = _tolerances(args)
    Q = ser.load_polynomial(args.poly)
    residual = decomposition_residual(Q, args.max_sequences)
    ok = residual <= tol.transform
    print(
        f"decompose: p={Q.p} N={Q.N} order={Q.order} residual={residual:.3e} "
        f"[{'ok' if ok else 'FAIL'}]"
    )
    return 0 if ok else 1


def _study_csv(path: str, report) -> None:
    fieldnames = [
        "format_version",
        "p",
        "d",
        "N",
        "ensemble",
        "trials",
        "seed",
        "q",
        "median_l1_ratio",
        "max_l1_ratio",
        "median_lq_ratio",
        "max_lq_ratio",
    ]
    rows = [
        {"format_version": ser.FORMAT_VERSION} | row.to_dict() for row in report.rows
    ]
    ser.write_csv_atomic(path, fieldnames, rows)


def cmd_ensemble(args) -> int:
    cfg = ExperimentConfig(
        p=args.p,
        d=args.d,
        N_values=tuple(_int_list(args.N)),
        trials=args.trials,
        seed=args.seed,
        ensemble=args.ensemble,
        max_cells=args.max_cells,
    )
    report = random_ensemble_study(cfg)
    payload = {"format_version": ser.FORMAT_VERSION} | report.to_dict()
    if args.csv:
        _study_csv(args.csv, report)
        print(f"wrote {args.csv}")
    _emit(args, payload)
    return 0 if report.passed else 1


def cmd_growth(args) -> int:
    cfg = ExperimentConfig(
        p=args.p,
        d=args.d,
        N_values=tuple(_int_list(args.N)),
        trials=args.trials,
        seed=args.seed,
        ensemble=args.ensemble,
        max_cells=args.max_cells,
    )
    report = growth_study(cfg)
    payload = {"format_version": ser.FORMAT_VERSION} | report.to_dict()
    if args.csv:
        _study_csv(args.csv, report)
        print(f"wrote {args.csv}")
    _emit(args, payload)
    for failure in report.failures:
        print(f"FAIL {failure}", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    report = verify_suite(
        _int_list(args.p),
        _int_list(args.d),
        args.N,
        seed=args.seed,
        tolerances=tol,
        max_cells=args.max_cells,
    )
    payload = {"format_version": ser.FORMAT_VERSION} | report.to_dict()
    _emit(args, payload)
    for check in report.checks:
        status = "ok" if check.passed else "FAIL"
        print(
            f"[{status}] {check.name}: residual {check.residual:.3e} "
            f"(tol {check.tolerance:.1e})",
            file=sys.stderr,
        )
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pchaos",
        description="Transforms, Riesz product measures and chaos coefficient "
        "inequalities on p-adic cell grids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False):
        p.add_argument("--max-cells", type=int, default=None, help="cell guard override")
        p.add_argument(
            "--tol",
            action="append",
            metavar="NAME=VALUE",
            help="override a tolerance tier (construction, transform, solve-residual)",
        )
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("transform", help="apply the fast transform to a grid file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument(
        "--direction", choices=("auto", "forward", "inverse"), default="auto"
    )
    common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("riesz", help="build a Riesz product measure")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--a", required=True, help="comma-separated complex coefficients")
    p.add_argument("--j", required=True, help="comma-separated exponents")
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_riesz)

    p = sub.add_parser("lemma1", help="build the exponent-selector measure")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--J", required=True, help="comma-separated exponents, length N+1")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_lemma1)

    p = sub.add_parser("lemma2", help="build the order-selector measure")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_lemma2)

    p = sub.add_parser("norms", help="norms and ratio of a polynomial file")
    p.add_argument("--poly", required=True)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_norms)

    p = sub.add_parser("project", help="exponent or order projection")
    p.add_argument("--poly", required=True)
    p.add_argument("--J", help="comma-separated exponents, length N+1")
    p.add_argument("--order", type=int)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("decompose", help="exponent-averaging identity residual")
    p.add_argument("--poly", required=True)
    p.add_argument("--max-sequences", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_decompose)

    for name, handler in (("ensemble", cmd_ensemble), ("growth", cmd_growth)):
        p = sub.add_parser(name, help=f"run the {name} study")
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--N", required=True, help="comma-separated top positions")
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--ensemble", choices=("signs", "unimodular"), default="signs")
        p.add_argument("--out")
        p.add_argument("--csv")
        common(p, seed=True)
        p.set_defaults(func=handler)

    p = sub.add_parser("verify", help="run the full verification suite")
    p.add_argument("--p", required=True, help="comma-separated bases")
    p.add_argument("--d", required=True, help="comma-separated orders")
    p.add_argument("--N", type=int, default=6)
    p.add_argument("--out")
    common(p, seed=True)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ChaosError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
