"""Command-line front-end.

Every output carries a manifest block {command, seed, version} so a run
can be reproduced exactly. JSON outputs embed it under "manifest"; CSV
outputs carry it as a leading ``#`` comment line. Exit codes: 0 success,
1 usage error, 2 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__, classical
from .core import TWO_PI, AngleSample, char_fn, density, sample
from .errors import NntsError
from .fixtures import EXPECTED_COUNTS, fixture_names, load_fixture
from .harness import (
    CLASSICAL_METHODS,
    SimulationPlan,
    make_alternative,
    power_study,
    simulate_critical_values,
)
from .io import AngleUnit, params_from_json, read_angles
from .mle import fit
from .sums import sum_params_closed_form, sum_params_solver, spectrum_product, spectrum_to_params
from .uniformity import TestMethod, run_uniformity_test

USAGE_ERROR = 1
COMPUTATION_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _manifest(command: str, seed) -> dict:
    return {"command": command, "seed": seed, "version": __version__}


def _write(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(doc: dict, command: str, seed, output) -> None:
    doc = dict(doc)
    doc["manifest"] = _manifest(command, seed)
    _write(json.dumps(doc, indent=2) + "\n", output)


def _emit_csv(header: str, rows, command: str, seed, output) -> None:
    lines = ["# manifest: " + json.dumps(_manifest(command, seed)), header]
    lines.extend(",".join(str(v) for v in row) for row in rows)
    _write("\n".join(lines) + "\n", output)


def _load_sample(args) -> AngleSample:
    if getattr(args, "fixture", None):
        return load_fixture(args.fixture)
    if not args.input:
        raise NntsError("either --input or --fixture is required")
    unit = AngleUnit.DEGREES if args.degrees else AngleUnit.RADIANS
    return read_angles(args.input, unit=unit, header=args.header)


def _add_sample_source(p):
    p.add_argument("--input", help="angle file, one value per row")
    p.add_argument("--fixture", choices=fixture_names(), help="embedded dataset")
    p.add_argument("--degrees", action="store_true", help="input angles are in degrees")
    p.add_argument("--header", action="store_true", help="skip one header row")


def _read_params(path):
    with open(path, encoding="utf-8") as fh:
        return params_from_json(fh.read())


def _density_rows(params, grid: int):
    thetas = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    dens = density(params, thetas)
    return [(f"{t:.10f}", f"{d:.10f}") for t, d in zip(thetas, np.atleast_1d(dens))]


def _cmd_fit(args) -> int:
    sample_ = _load_sample(args)
    fr = fit(sample_, args.m, seed=args.seed)
    _emit_json(
        {
            "params": fr.params.to_dict(),
            "log_lik": fr.log_lik,
            "converged": fr.converged,
            "iterations": fr.iterations,
            "grad_norm": fr.grad_norm,
            "n": sample_.n,
        },
        "fit",
        args.seed,
        args.output,
    )
    return 0


def _cmd_test(args) -> int:
    sample_ = _load_sample(args)
    if args.method in ("nnts1", "nnts2"):
        outcome = run_uniformity_test(
            sample_,
            m=args.m,
            alpha=args.alpha,
            method=TestMethod(args.method),
            p_value_reps=args.pvalue_reps,
            seed=args.seed,
        )
        _emit_json(outcome.to_dict(), "test", args.seed, args.output)
        return 0
    method = CLASSICAL_METHODS[args.method]
    stat = classical.classical_statistic(method, sample_)
    reps = args.pvalue_reps or 10000
    p = classical.mc_p_value(method, sample_, reps, args.seed)
    _emit_json(
        {
            "method": args.method,
            "statistic": stat.value,
            "n": sample_.n,
            "p_value": p,
            "p_value_reps": reps,
        },
        "test",
        args.seed,
        args.output,
    )
    return 0


def _cmd_sum(args) -> int:
    parts = [_read_params(p) for p in args.params]
    if args.method == "solver":
        result = sum_params_solver(parts)
    elif args.method == "spectral":
        spec = spectrum_product([char_fn(p) for p in parts])
        params = spectrum_to_params(spec)
        from .sums import SumMethod, SumResult

        gap = float(np.max(np.abs(char_fn(params).phi_nonneg - spec.phi_nonneg)))
        result = SumResult(params, params.m, SumMethod.SPECTRAL_FACTORIZATION, 0.0, gap)
    else:
        result = sum_params_closed_form(parts)
    _emit_json(
        {
            "params": result.params.to_dict(),
            "method": result.method.value,
            "residual": result.residual,
            "spectrum_gap": result.spectrum_gap,
        },
        "sum",
        None,
        args.output,
    )
    if args.density_csv:
        _emit_csv(
            "theta,density", _density_rows(result.params, args.grid), "sum", None, args.density_csv
        )
    return 0


def _cmd_sample(args) -> int:
    params = _read_params(args.params)
    draws = sample(params, args.n, seed=args.seed)
    _emit_csv("theta", [(f"{t:.10f}",) for t in draws.angles], "sample", args.seed, args.output)
    return 0


def _cmd_density(args) -> int:
    params = _read_params(args.params)
    _emit_csv("theta,density", _density_rows(params, args.grid), "density", None, args.output)
    return 0


def _cmd_charfn(args) -> int:
    params = _read_params(args.params)
    spec = char_fn(params)
    rows = [(t, f"{v.real:.12f}", f"{v.imag:.12f}") for t, v in enumerate(spec.phi_nonneg)]
    _emit_csv("t,real,imag", rows, "charfn", None, args.output)
    return 0


def _cmd_critvals(args) -> int:
    plan = SimulationPlan(
        test=TestMethod(args.test), m=args.m, n=args.n, reps=args.reps, base_seed=args.seed
    )
    values = simulate_critical_values(plan)
    rows = [(args.m, alpha, args.n, value) for alpha, value in sorted(values.items(), reverse=True)]
    _emit_csv("m,alpha,n,value", rows, "critvals", args.seed, args.output)
    return 0


def _cmd_power(args) -> int:
    alt = make_alternative(args.m, args.c0, seed=args.alt_seed)
    report = power_study(
        alt,
        n=args.n,
        alpha=args.alpha,
        reps=args.reps,
        methods=args.methods,
        base_seed=args.seed,
        fit_m=args.fit_m,
    )
    rows = [(method, pct) for method, pct in report.rejection_pct.items()]
    _emit_csv("method,rejection_pct", rows, "power", args.seed, args.output)
    return 0


def _cmd_fixtures(args) -> int:
    if args.name:
        fx = load_fixture(args.name)
        _emit_csv("theta", [(f"{t:.10f}",) for t in fx.angles], "fixtures", None, args.output)
    else:
        rows = [(name, EXPECTED_COUNTS[name]) for name in fixture_names()]
        _emit_csv("name,count", rows, "fixtures", None, args.output)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="nntscirc", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="maximum-likelihood fit of order m")
    _add_sample_source(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True, help="seed for optimizer restarts")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("test", help="test circular uniformity")
    _add_sample_source(p)
    p.add_argument(
        "--method",
        required=True,
        choices=["nnts1", "nnts2", "rayleigh", "hro", "hrm", "pycke"],
    )
    p.add_argument("--m", type=int, default=1, help="alternative order (likelihood tests)")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--pvalue-reps", type=int, help="Monte-Carlo p-value replicates")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_test)

    p = sub.add_parser("sum", help="distribution of a sum mod 2pi")
    p.add_argument("--params", nargs="+", required=True, help="two or more params JSON files")
    p.add_argument("--method", choices=["closed", "solver", "spectral"], default="closed")
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--density-csv", help="also write the sum density over the grid")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("sample", help="draw i.i.d. angles")
    p.add_argument("--params", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("density", help="density on a grid (CSV)")
    p.add_argument("--params", required=True)
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("charfn", help="characteristic function values")
    p.add_argument("--params", required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_charfn)

    p = sub.add_parser("critvals", help="simulate critical values")
    p.add_argument("--test", choices=["nnts1", "nnts2"], default="nnts2")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, default=10000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_critvals)

    p = sub.add_parser("power", help="rejection rates under an alternative")
    p.add_argument("--m", type=int, required=True, help="order of the alternative")
    p.add_argument("--c0", type=float, required=True)
    p.add_argument("--alt-seed", type=int, default=0, help="seed fixing the alternative's shape")
    p.add_argument("--fit-m", type=int, help="fitting order for the likelihood tests")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument(
        "--methods",
        nargs="+",
        default=["nnts1", "nnts2", "rayleigh", "hrm", "pycke"],
        choices=["nnts1", "nnts2", "rayleigh", "hro", "hrm", "pycke"],
    )
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_power)

    p = sub.add_parser("fixtures", help="embedded datasets")
    p.add_argument("--name", choices=fixture_names())
    p.add_argument("--output")
    p.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NntsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return COMPUTATION_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return COMPUTATION_ERROR


if __name__ == "__main__":
    sys.exit(main())
