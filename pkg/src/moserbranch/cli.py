"""Command-line surface: solve, branch, quantize, count, eigen, identities,
prooflab, plot.

Conventions shared by every command:
  * floats print with 17 significant digits (lossless double round-trip);
  * single objects and certificates are JSON on stdout, tables are CSV
    with a frozen header, plots are standalone SVG;
  * exit code 2 for validation problems, 3 for solver failures, with a
    machine-readable error JSON on stderr;
  * --config points at a line-oriented ``key = value`` file with one
    section per command; command-line flags win over config values;
  * branch sweeps cache their CSV under --cache-dir (or the
    MOSERBRANCH_CACHE_DIR environment variable), guarded by a checksum
    sidecar; a corrupted cache entry is recomputed, never trusted.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import io
import math
import os
import sys
import tempfile
from typing import Optional

import numpy as np

from . import __version__, branch as branch_mod, identities, svg
from .eigen import EigenBracketError, eigen_residual, first_eigenvalue
from .integrate import (DEFAULT_CONFIG, IntegrationError, IntegratorConfig,
                        defining_residual)
from .model import (EUCLIDEAN, HYPERBOLIC, PERTURBED, SHIFTED, STANDARD,
                    DomainError, UnsupportedIdentity, make_problem)
from .series import contradiction_certificate, verify_pair_relations
from .shoot import MultiplicityWarning, ShootingError, lambda_of_alpha, \
    solve_for_lambda

SCHEMA_VERSION = "1"
BRANCH_CSV_HEADER = "alpha,lambda,Lambda,energy,du_boundary,res_pohozaev," \
    "res_nehari"
CACHE_ENV = "MOSERBRANCH_CACHE_DIR"

EXIT_VALIDATION = 2
EXIT_SOLVER = 3


class CliValidationError(ValueError):
    pass


def _f17(x: float) -> str:
    return format(float(x), ".17g")


def _json_value(v, indent, level) -> str:
    pad = " " * (indent * (level + 1))
    closing = " " * (indent * level)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f'{pad}"{k}": {_json_value(x, indent, level + 1)}'
                 for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + closing + "}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        items = [f"{pad}{_json_value(x, indent, level + 1)}" for x in v]
        return "[\n" + ",\n".join(items) + "\n" + closing + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, float):
        if math.isnan(v):
            return '"nan"'
        return _f17(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    s = str(v).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def emit_json(obj: dict, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(_json_value(obj, 2, 0) + "\n")


def _error_json(code: int, exc: Exception) -> None:
    payload = {"error": {"code": code, "type": type(exc).__name__,
                         "message": str(exc)}}
    emit_json(payload, sys.stderr)


# ----------------------------------------------------------------------
# shared flag handling

def _add_problem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", choices=["euclid", "hyper"],
                   default="euclid", help="geometry")
    p.add_argument("--radius", type=float, default=1.0,
                   help="disc radius (euclid) or geodesic radius (hyper)")
    p.add_argument("--nonlinearity",
                   choices=[STANDARD, PERTURBED, SHIFTED], default=STANDARD)
    p.add_argument("--lambda-shift", type=float, default=0.0,
                   dest="lambda_shift",
                   help="linear shift moved onto the operator "
                        "(shifted variant only)")
    p.add_argument("--tol", type=float, default=DEFAULT_CONFIG.rel_tol,
                   help="integrator relative tolerance")


def _problem_from_args(args) -> tuple:
    geometry = EUCLIDEAN if args.problem == "euclid" else HYPERBOLIC
    problem = make_problem(geometry, args.radius, args.nonlinearity,
                           args.lambda_shift)
    config = IntegratorConfig(rel_tol=args.tol,
                              abs_tol=min(args.tol * 1e-2, 1e-12))
    return problem, config


def _apply_config_file(parser, subparsers, argv):
    """Pre-scan for --config and install section values as subcommand
    defaults (flags given on the command line still win)."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = cp.read(known.config)
    if not read:
        raise CliValidationError(f"config file {known.config!r} not readable")
    for section in cp.sections():
        if section not in subparsers.choices:
            raise CliValidationError(f"config section [{section}] does not "
                                     f"match a command")
        sub = subparsers.choices[section]
        defaults = {}
        for key, raw in cp.items(section):
            dest = key.replace("-", "_")
            action = next((a for a in sub._actions if a.dest == dest), None)
            if action is None:
                raise CliValidationError(
                    f"unknown key {key!r} in config section [{section}]")
            if action.type is not None:
                defaults[dest] = action.type(raw)
            elif isinstance(action.default, bool) or \
                    action.const is not None:
                defaults[dest] = raw.strip().lower() in ("1", "true", "yes")
            else:
                defaults[dest] = raw
        sub.set_defaults(**defaults)


# ----------------------------------------------------------------------
# cache

def _cache_dir(args) -> Optional[str]:
    return args.cache_dir or os.environ.get(CACHE_ENV)


def _cache_lookup(directory: str, key: str) -> Optional[str]:
    path = os.path.join(directory, f"branch-{key}.csv")
    side = path + ".sha256"
    if not (os.path.exists(path) and os.path.exists(side)):
        return None
    with open(path, "rb") as fh:
        payload = fh.read()
    with open(side, "r", encoding="ascii") as fh:
        recorded = fh.read().strip()
    if hashlib.sha256(payload).hexdigest() != recorded:
        return None  # checksum mismatch: recompute, never trust
    return payload.decode("utf-8")


def _cache_store(directory: str, key: str, text: str) -> None:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f"branch-{key}.csv")
    payload = text.encode("utf-8")
    digest = hashlib.sha256(payload).hexdigest()
    for target, data in ((path, payload),
                         (path + ".sha256", (digest + "\n").encode("ascii"))):
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


# ----------------------------------------------------------------------
# commands

def cmd_solve(args) -> int:
    if (args.lam is None) == (args.alpha is None):
        raise CliValidationError("exactly one of --lambda/--alpha required")
    problem, config = _problem_from_args(args)
    if args.alpha is not None:
        if args.alpha <= 0.0:
            raise CliValidationError("alpha must be positive")
        lam, sol = lambda_of_alpha(problem, args.alpha, config)
    else:
        sol = solve_for_lambda(problem, args.lam, config)
        lam = args.lam
    try:
        poh = identities.pohozaev_residual(sol).max_relative
    except UnsupportedIdentity:
        poh = None
    payload = {
        "schema_version": SCHEMA_VERSION,
        "problem": problem.describe(),
        "lambda": lam,
        "alpha": sol.alpha,
        "Lambda": sol.Lambda,
        "energy": sol.energy(),
        "du_boundary": sol.du_at_boundary,
        "residuals": {
            "pohozaev": poh,
            "nehari": identities.nehari_residual(sol).max_relative,
            "defining": defining_residual(sol).max_relative,
        },
    }
    emit_json(payload)
    return 0


def _branch_csv(table) -> str:
    out = io.StringIO()
    out.write(BRANCH_CSV_HEADER + "\n")
    for p in table.points:
        row = [p.alpha, p.lam, p.Lambda, p.energy, p.du_at_boundary,
               p.res_pohozaev, p.res_nehari]
        out.write(",".join(_f17(x) for x in row) + "\n")
    return out.getvalue()


def _branch_json(table) -> str:
    buf = io.StringIO()
    emit_json({
        "schema_version": SCHEMA_VERSION,
        "problem": table.problem.describe(),
        "provenance": table.provenance,
        "points": [{"alpha": p.alpha, "lambda": p.lam, "Lambda": p.Lambda,
                    "energy": p.energy, "du_boundary": p.du_at_boundary,
                    "res_pohozaev": p.res_pohozaev,
                    "res_nehari": p.res_nehari}
                   for p in table.points],
    }, buf)
    return buf.getvalue()


def cmd_branch(args) -> int:
    problem, config = _problem_from_args(args)
    if args.points < 1 or args.alpha_min <= 0 or \
            args.alpha_max <= args.alpha_min:
        raise CliValidationError("need 0 < alpha-min < alpha-max, points >= 1")
    grid = branch_mod.default_alpha_grid(args.alpha_min, args.alpha_max,
                                         args.points)
    key = hashlib.sha256(
        f"{SCHEMA_VERSION}|{problem!r}|{config!r}|{args.alpha_min}|"
        f"{args.alpha_max}|{args.points}|{args.format}".encode()
    ).hexdigest()[:24]
    directory = _cache_dir(args)
    text = None
    if directory:
        text = _cache_lookup(directory, key)
    if text is None:
        table = branch_mod.trace_branch(problem, grid, config,
                                        workers=args.workers)
        text = _branch_csv(table) if args.format == "csv" \
            else _branch_json(table)
        if directory:
            _cache_store(directory, key, text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_quantize(args) -> int:
    problem, config = _problem_from_args(args)
    tail = [float(x) for x in args.alphas.split(",")]
    report = branch_mod.quantization_report(problem, tail, config)
    if args.format == "csv":
        sys.stdout.write("alpha,lambda,Lambda,energy,half_energy_radius\n")
        for r in report.rows:
            sys.stdout.write(",".join(_f17(x) for x in (
                r.alpha, r.lam, r.Lambda, r.energy,
                r.half_energy_radius)) + "\n")
        return 0
    rich = None
    if report.richardson is not None:
        rich = {"limit": report.richardson.limit,
                "decay_per_unit_alpha":
                    report.richardson.decay_per_unit_alpha,
                "used_alphas": list(report.richardson.used_alphas)}
    emit_json({
        "schema_version": SCHEMA_VERSION,
        "problem": problem.describe(),
        "rows": [{"alpha": r.alpha, "lambda": r.lam, "Lambda": r.Lambda,
                  "energy": r.energy,
                  "half_energy_radius": r.half_energy_radius}
                 for r in report.rows],
        "lambda_decreasing": report.lambda_decreasing,
        "gap_to_4pi_decreasing": report.gap_to_4pi_decreasing,
        "half_radius_decreasing": report.half_radius_decreasing,
        "energy_increasing": report.energy_increasing,
        "energy_below_2pi": report.energy_below_2pi,
        "richardson": rich,
    })
    return 0


def cmd_count(args) -> int:
    problem, config = _problem_from_args(args)
    if args.gamma <= 0.0:
        raise CliValidationError("gamma must be positive")
    grid = branch_mod.default_alpha_grid(args.alpha_min, args.alpha_max,
                                         args.points)
    table = branch_mod.trace_branch(problem, grid, config,
                                    workers=args.workers)
    count, crossings = branch_mod.count_critical_points(table, args.gamma)
    if args.format == "csv":
        sys.stdout.write("alpha,lambda\n")
        for a, l in crossings:
            sys.stdout.write(f"{_f17(a)},{_f17(l)}\n")
        return 0
    emit_json({
        "schema_version": SCHEMA_VERSION,
        "problem": problem.describe(),
        "gamma": args.gamma,
        "count": count,
        "crossings": [{"alpha": a, "lambda": l} for a, l in crossings],
    })
    return 0


def cmd_eigen(args) -> int:
    problem, config = _problem_from_args(args)
    mu1, profile = first_eigenvalue(problem)
    emit_json({
        "schema_version": SCHEMA_VERSION,
        "problem": problem.describe(),
        "mu_1": mu1,
        "rayleigh_quotient": profile.rayleigh_quotient(),
        "residual": eigen_residual(profile).max_relative,
    })
    return 0


def cmd_identities(args) -> int:
    if (args.lam is None) == (args.alpha is None):
        raise CliValidationError("exactly one of --lambda/--alpha required")
    problem, config = _problem_from_args(args)
    if args.alpha is not None:
        lam, sol = lambda_of_alpha(problem, args.alpha, config)
    else:
        sol = solve_for_lambda(problem, args.lam, config)
        lam = args.lam
    reports = {"nehari": None, "pohozaev": None, "defining": None,
               "boundary_derivatives": None}
    neh = identities.nehari_residual(sol)
    reports["nehari"] = {"max_relative": neh.max_relative,
                         "pass": neh.passed}
    dfn = defining_residual(sol)
    reports["defining"] = {"max_relative": dfn.max_relative,
                           "pass": dfn.passed}
    try:
        poh = identities.pohozaev_residual(sol)
        reports["pohozaev"] = {
            "radii": list(poh.radii),
            "relative": list(poh.relative),
            "max_relative": poh.max_relative,
            "pass": poh.passed,
            "note": "lambda-restored form; the unscaled variant fails "
                    "numerically for lambda != 1",
        }
        bd = identities.boundary_derivatives(sol)
        reports["boundary_derivatives"] = {
            "values": list(bd.values),
            "fd_check_u2_rel": bd.fd_rel_err_u2,
            "fd_check_u3_rel": bd.fd_rel_err_u3,
            "flagged": bd.flagged,
        }
    except UnsupportedIdentity as exc:
        reports["pohozaev"] = {"unsupported": str(exc)}
    emit_json({
        "schema_version": SCHEMA_VERSION,
        "problem": problem.describe(),
        "lambda": lam,
        "alpha": sol.alpha,
        "reports": reports,
    })
    return 0


def cmd_prooflab(args) -> int:
    cert = contradiction_certificate()
    payload = cert.to_dict()
    if args.pair_relations:
        rep = verify_pair_relations()
        payload["pair_relations"] = {
            "low_orders_vanish": rep.low_orders_vanish,
            "diff5": rep.diff5,
            "diff6": rep.diff6,
            "diff5_factor_computed": rep.diff5_factor_computed,
            "diff6_factor_computed": rep.diff6_factor_computed,
            "diff5_factor_printed": rep.diff5_factor_printed,
            "diff6_factor_printed": rep.diff6_factor_printed,
            "equal_slopes_vanish": rep.equal_slopes_vanish,
        }
    emit_json(payload)
    return 0


def cmd_plot(args) -> int:
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise CliValidationError(f"cannot read {args.input!r}: {exc}")
    if not lines or lines[0] != BRANCH_CSV_HEADER:
        raise CliValidationError(
            f"{args.input!r} is not a branch CSV (expected header "
            f"{BRANCH_CSV_HEADER!r})")
    rows = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != 7:
            raise CliValidationError(f"malformed CSV row: {ln!r}")
        rows.append([float(c) for c in cells])
    if not rows:
        raise CliValidationError(f"{args.input!r} holds no data rows")
    alphas = [r[0] for r in rows]
    lambdas = [r[1] for r in rows]
    Lambdas = [r[2] for r in rows]
    text = svg.render_branch_svg(alphas, lambdas, Lambdas)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    return 0


# ----------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="moserbranch",
        description="radial solutions, branch analysis and proof "
                    "verification for critical exponential nonlinearities")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", default=None,
                        help="key = value file with one section per command")
    parser.add_argument("--cache-dir", default=None, dest="cache_dir",
                        help=f"cache directory (or ${CACHE_ENV})")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve", help="one solution, JSON summary")
    _add_problem_flags(p)
    p.add_argument("--lambda", type=float, default=None, dest="lam")
    p.add_argument("--alpha", type=float, default=None)
    p.set_defaults(func=cmd_solve)

    p = subs.add_parser("branch", help="trace the branch, CSV output")
    _add_problem_flags(p)
    p.add_argument("--alpha-min", type=float, default=0.05)
    p.add_argument("--alpha-max", type=float, default=6.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_branch)

    p = subs.add_parser("quantize", help="large-alpha tail diagnostics")
    _add_problem_flags(p)
    p.add_argument("--alphas", default="4,5,6",
                   help="comma-separated tail alphas (each >= 3)")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_quantize)

    p = subs.add_parser("count",
                        help="critical points at an energy level gamma")
    _add_problem_flags(p)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--alpha-min", type=float, default=0.05)
    p.add_argument("--alpha-max", type=float, default=6.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_count)

    p = subs.add_parser("eigen", help="first Dirichlet eigenvalue")
    _add_problem_flags(p)
    p.set_defaults(func=cmd_eigen)

    p = subs.add_parser("identities",
                        help="identity residual reports for one solution")
    _add_problem_flags(p)
    p.add_argument("--lambda", type=float, default=None, dest="lam")
    p.add_argument("--alpha", type=float, default=None)
    p.set_defaults(func=cmd_identities)

    p = subs.add_parser("prooflab",
                        help="boundary-expansion contradiction certificate")
    p.add_argument("--pair-relations", action="store_true",
                   dest="pair_relations",
                   help="include the derivative pair-relation report")
    p.set_defaults(func=cmd_prooflab)

    p = subs.add_parser("plot", help="branch CSV to SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_plot)

    return parser, subs


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        _apply_config_file(parser, subs, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except (CliValidationError, DomainError, UnsupportedIdentity,
            ValueError) as exc:
        _error_json(EXIT_VALIDATION, exc)
        return EXIT_VALIDATION
    except (IntegrationError, ShootingError, MultiplicityWarning,
            EigenBracketError, branch_mod.GridRangeError,
            branch_mod.AmbiguousCountError, branch_mod.EnergyBoundViolation,
            branch_mod.BranchResidualError) as exc:
        _error_json(EXIT_SOLVER, exc)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
