"""Command-line surface: geometry reports, geodesic queries, dt scans, and
the verification suite.

Problem files are UTF-8 JSON.  Complex numbers are [re, im] pairs, a matrix
is a list of rows, and a Hamiltonian may instead be given in two-level form
{"omega": w, "n": [nx, ny, nz], "epsilon": e}.  Example::

    {
      "hamiltonian": [[[0,0],[0,0],[0,0]],
                      [[0,0],[1,0],[0,0]],
                      [[0,0],[0,0],[3,0]]],
      "state": [[0.57735026918962576,0],
                [0.57735026918962576,0],
                [0.57735026918962576,0]],
      "constants": {"hbar": 1.0, "gamma": 2.0}
    }

Exit codes: 0 success, 1 verification failure, 2 parse/validation error,
3 stationary state (only with --require-dimensionless), 4 orthogonal
endpoints, 5 flat scan curve.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .core import PhysicalConstants, as_hermitian, as_state
from .curvature import DegeneratePlane, OrthogonalStates, geometry_report
from .geodesics import (
    OrthogonalEndpoints,
    geodesic_between,
    geodesic_length,
    point_theta,
    point_xi,
)
from .geometry import wootters_distance
from .oracles import (
    FlatCurve,
    NonPositiveValues,
    curvature_deviation_curve,
    fit_power_law,
    torsion_deviation_curve,
    two_level_hamiltonian,
)
from .verify import DEFAULT_SEED, run_checks

__all__ = ["ProblemSpec", "SpecFileError", "load_problem_spec",
           "load_state_file", "main", "serialize_problem_spec"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_STATIONARY = 3
EXIT_ORTHOGONAL = 4
EXIT_FLAT = 5

#: parsed states may be off unit norm by at most this before it is an error
STATE_NORM_SLACK = 1e-6


class SpecFileError(Exception):
    """A problem file failed to parse or validate; ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(message)


@dataclass(frozen=True)
class ProblemSpec:
    """Validated Hamiltonian, state, and constants from one problem file."""

    hamiltonian: np.ndarray
    state: np.ndarray
    constants: PhysicalConstants


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _parse_complex(node, field: str) -> complex:
    if not (isinstance(node, list) and len(node) == 2 and all(_is_number(v) for v in node)):
        raise SpecFileError(field, f"{field}: complex entries must be [re, im] number pairs")
    return complex(float(node[0]), float(node[1]))


def _parse_state_vector(node, field: str) -> np.ndarray:
    if not (isinstance(node, list) and len(node) >= 2):
        raise SpecFileError(field, f"{field}: expected a list of at least 2 complex entries")
    raw = np.array(
        [_parse_complex(entry, f"{field}[{k}]") for k, entry in enumerate(node)],
        dtype=complex,
    )
    norm = float(np.linalg.norm(raw))
    if abs(norm - 1.0) > STATE_NORM_SLACK:
        raise SpecFileError(
            field,
            f"{field}: norm {norm!r} differs from 1 by more than {STATE_NORM_SLACK}",
        )
    return as_state(raw)


def _parse_dense_hamiltonian(node, field: str) -> np.ndarray:
    if not (isinstance(node, list) and len(node) >= 2):
        raise SpecFileError(field, f"{field}: expected a list of at least 2 matrix rows")
    dim = len(node)
    rows = []
    for r, row in enumerate(node):
        if not (isinstance(row, list) and len(row) == dim):
            raise SpecFileError(
                field, f"{field}[{r}]: expected a row of {dim} complex entries"
            )
        rows.append([_parse_complex(entry, f"{field}[{r}][{c}]")
                     for c, entry in enumerate(row)])
    return np.array(rows, dtype=complex)


def _parse_two_level(node: dict, field: str) -> np.ndarray:
    allowed = {"omega", "n", "epsilon"}
    for key in node:
        if key not in allowed:
            raise SpecFileError(field, f"{field}.{key}: unknown two-level key")
    if "omega" not in node or not _is_number(node["omega"]):
        raise SpecFileError(field, f"{field}.omega: required number")
    n = node.get("n")
    if not (isinstance(n, list) and len(n) == 3 and all(_is_number(v) for v in n)):
        raise SpecFileError(field, f"{field}.n: required list of 3 real numbers")
    epsilon = node.get("epsilon", 0.0)
    if not _is_number(epsilon):
        raise SpecFileError(field, f"{field}.epsilon: must be a number")
    try:
        return two_level_hamiltonian(float(node["omega"]), [float(v) for v in n],
                                     float(epsilon))
    except ValueError as exc:
        raise SpecFileError(field, f"{field}.n: {exc}") from exc


def _parse_constants(node) -> PhysicalConstants:
    if node is None:
        return PhysicalConstants()
    if not isinstance(node, dict):
        raise SpecFileError("constants", "constants: expected an object")
    allowed = {"hbar", "gamma"}
    for key in node:
        if key not in allowed:
            raise SpecFileError("constants", f"constants.{key}: unknown key")
    values = {}
    for key in allowed:
        if key in node:
            if not _is_number(node[key]):
                raise SpecFileError("constants", f"constants.{key}: must be a number")
            values[key] = float(node[key])
    try:
        return PhysicalConstants(**values)
    except ValueError as exc:
        raise SpecFileError("constants", f"constants: {exc}") from exc


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise SpecFileError(path, f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFileError(path, f"{path}: invalid JSON ({exc})") from exc


def load_problem_spec(path: str) -> ProblemSpec:
    """Parse and validate a problem file."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise SpecFileError(path, f"{path}: top level must be an object")
    allowed = {"hamiltonian", "state", "constants"}
    for key in data:
        if key not in allowed:
            raise SpecFileError(key, f"{key}: unknown top-level key")
    if "hamiltonian" not in data:
        raise SpecFileError("hamiltonian", "hamiltonian: required")
    if "state" not in data:
        raise SpecFileError("state", "state: required")

    node = data["hamiltonian"]
    if isinstance(node, dict):
        hamiltonian = _parse_two_level(node, "hamiltonian")
    else:
        hamiltonian = _parse_dense_hamiltonian(node, "hamiltonian")
    try:
        hamiltonian = as_hermitian(hamiltonian)
    except ValueError as exc:
        raise SpecFileError("hamiltonian", f"hamiltonian: {exc}") from exc

    state = _parse_state_vector(data["state"], "state")
    if state.size != hamiltonian.shape[0]:
        raise SpecFileError(
            "state",
            f"state: dimension {state.size} does not match hamiltonian "
            f"dimension {hamiltonian.shape[0]}",
        )
    return ProblemSpec(hamiltonian, state, _parse_constants(data.get("constants")))


def load_state_file(path: str) -> np.ndarray:
    """Parse a state file: either a bare amplitude list or {"state": [...]}."""
    data = _load_json(path)
    if isinstance(data, dict):
        if "state" not in data:
            raise SpecFileError("state", f"{path}: object form requires a 'state' key")
        data = data["state"]
    return _parse_state_vector(data, "state")


def _complex_pairs(vector: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in vector]


def serialize_problem_spec(spec: ProblemSpec) -> dict:
    """Canonical JSON form (dense matrix); reparsing reproduces the values bit-for-bit."""
    return {
        "hamiltonian": [_complex_pairs(row) for row in spec.hamiltonian],
        "state": _complex_pairs(spec.state),
        "constants": {"hbar": spec.constants.hbar, "gamma": spec.constants.gamma},
    }


def _print_json(payload) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _cmd_report(args) -> int:
    spec = load_problem_spec(args.spec_file)
    report = geometry_report(spec.hamiltonian, spec.state, spec.constants)
    if args.require_dimensionless and report.kappa_bar is None:
        return _fail("state is stationary: dimensionless coefficients are undefined",
                     EXIT_STATIONARY)
    _print_json({
        "speed": report.speed,
        "kappa": report.kappa,
        "kappa_bar": report.kappa_bar,
        "tau": report.tau,
        "tau_bar": report.tau_bar,
        "radius": report.radius,
        "moments": {
            "mean": report.moments.mean,
            "var": report.moments.var,
            "central3": report.moments.central3,
            "central4": report.moments.central4,
        },
    })
    return EXIT_OK


def _cmd_geodesic(args) -> int:
    spec = load_problem_spec(args.spec_file)
    psi1 = load_state_file(args.psi1_file)
    if psi1.size != spec.state.size:
        raise SpecFileError("state", f"state: psi1 dimension {psi1.size} does not match "
                                     f"{spec.state.size}")
    try:
        family = geodesic_between(spec.state, psi1)
    except OrthogonalEndpoints as exc:
        return _fail(f"{exc}", EXIT_ORTHOGONAL)
    if args.xi is not None:
        if not 0.0 <= args.xi <= 1.0:
            return _fail(f"--xi must lie in [0, 1], got {args.xi}", EXIT_PARSE)
        point = point_xi(family, args.xi)
    else:
        if not 0.0 <= args.theta <= math.pi:
            return _fail(f"--theta must lie in [0, pi], got {args.theta}", EXIT_PARSE)
        point = point_theta(family, args.theta)
    _print_json({
        "point": _complex_pairs(point),
        "length": geodesic_length(family, spec.constants),
        "wootters": wootters_distance(spec.state, psi1, spec.constants),
    })
    return EXIT_OK


def _cmd_scan(args) -> int:
    spec = load_problem_spec(args.spec_file)
    if args.dt_start <= 0:
        return _fail(f"--dt-start must be positive, got {args.dt_start}", EXIT_PARSE)
    if args.points < 6:
        return _fail(f"--points must be at least 6, got {args.points}", EXIT_PARSE)
    if not 0.0 < args.ratio < 1.0:
        return _fail(f"--ratio must lie in (0, 1), got {args.ratio}", EXIT_PARSE)
    if args.dt_prime_ratio <= 0:
        return _fail(f"--dt-prime-ratio must be positive, got {args.dt_prime_ratio}",
                     EXIT_PARSE)
    dts = [args.dt_start * args.ratio**i for i in range(args.points)]

    constants = spec.constants
    try:
        if args.mode == "curvature":
            curve = curvature_deviation_curve(spec.hamiltonian, spec.state, dts, constants)
        else:
            curve = torsion_deviation_curve(spec.hamiltonian, spec.state, dts,
                                            args.dt_prime_ratio, constants)
    except OrthogonalEndpoints as exc:
        return _fail(f"{exc} (dt too large)", EXIT_ORTHOGONAL)
    except OrthogonalStates as exc:
        return _fail(f"{exc} (dt too large)", EXIT_ORTHOGONAL)
    except DegeneratePlane as exc:
        return _fail(f"{exc} (dt too small)", EXIT_PARSE)

    with open(args.out, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["dt", "value"])
        for dt, value in curve:
            writer.writerow([format(dt, ".17g"), format(value, ".17g")])

    try:
        fit = fit_power_law(curve)
    except (FlatCurve, NonPositiveValues):
        return _fail("scan curve is flat at numerical zero: fewer than 5 points "
                     "survive the noise floor", EXIT_FLAT)

    report = geometry_report(spec.hamiltonian, spec.state, constants)
    hbar = constants.hbar
    if args.mode == "curvature":
        predicted = constants.gamma**2 * report.kappa / (4.0 * hbar**4)
    else:
        ratio = args.dt_prime_ratio
        predicted = report.tau * ratio**2 * (1.0 + ratio) ** 2 / (4.0 * hbar**4)
    _print_json({
        "exponent": fit.exponent,
        "prefactor": fit.prefactor,
        "predicted_prefactor": predicted,
        "relative_error": abs(fit.prefactor / predicted - 1.0) if predicted else math.inf,
        "residual": fit.residual,
    })
    return EXIT_OK


def _cmd_verify(args) -> int:
    outcomes = run_checks(seed=args.seed, level=args.level)
    width = max(len(outcome.name) for outcome in outcomes)
    print(f"{'check'.ljust(width)}  status  detail")
    print(f"{'-' * width}  ------  ------")
    for outcome in outcomes:
        status = "PASS" if outcome.passed else "FAIL"
        print(f"{outcome.name.ljust(width)}  {status:<6}  {outcome.detail}")
    failed = sum(not outcome.passed for outcome in outcomes)
    print(f"{len(outcomes) - failed}/{len(outcomes)} checks passed "
          f"(seed {args.seed}, level {args.level})")
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stategeom",
        description="Geometry of quantum evolution: reports, geodesics, dt scans, "
                    "and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    report = sub.add_parser("report", help="geometric coefficients of one problem")
    report.add_argument("spec_file")
    report.add_argument("--require-dimensionless", action="store_true",
                        help="fail (exit 3) when the state is stationary")

    geodesic = sub.add_parser("geodesic", help="evaluate the geodesic between two states")
    geodesic.add_argument("spec_file")
    geodesic.add_argument("psi1_file")
    which = geodesic.add_mutually_exclusive_group(required=True)
    which.add_argument("--xi", type=float, help="parameter in [0, 1]")
    which.add_argument("--theta", type=float, help="angle parameter in [0, pi]")

    scan = sub.add_parser("scan", help="dt-scaling scan of the deviation curves")
    scan.add_argument("spec_file")
    scan.add_argument("--mode", choices=("curvature", "torsion"), required=True)
    scan.add_argument("--dt-start", type=float, required=True)
    scan.add_argument("--points", type=int, required=True)
    scan.add_argument("--ratio", type=float, required=True)
    scan.add_argument("--dt-prime-ratio", type=float, default=1.0)
    scan.add_argument("--out", required=True, help="CSV output path (columns dt,value)")

    verify = sub.add_parser("verify", help="run the verification suites")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--level", choices=("quick", "full"), default="quick")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "report": _cmd_report,
        "geodesic": _cmd_geodesic,
        "scan": _cmd_scan,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except SpecFileError as exc:
        return _fail(str(exc), EXIT_PARSE)


if __name__ == "__main__":
    raise SystemExit(main())
