"""
Command-line front end: soliton-cs <subcommand> [flags]

Settings resolve in the order Config defaults, --config file (KEY=value
lines), command-line flags. Exit codes: 0 success, 1 failed check,
2 invalid parameters, 3 numerical failure.
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from dotenv import dotenv_values
from pydantic import ValidationError

from .basis import UniformGrid
from .coherent import coherent_checks, state_samples
from .config import Config
from .darboux import bound_states, soliton_potential, verify_darboux
from .models import RunConfig, VerificationReport
from .resolution import (build_rho_density, density_frame_rho, density_frame_xi, rho_checks,
                         solve_omega_xi, xi_checks)
from .storage import write_csv, write_json
from .symmetry import as_symbol, s_inverse_block, s_matrix
from .utils import InvalidParameterError, NumericalFailure, format_number, setup_logger

logger = logging.getLogger("soliton_coherent")

COMPUTE_COMMANDS = ["density-xi", "density-rho", "smatrix", "sinverse", "potential", "bound-states", "coherent"]
SUITE_CHOICES = Config.SUITES + ["all"]

# config-file key -> RunConfig field
FILE_KEYS = {
    "ALPHAS": "alphas", "SHIFTS": "shifts", "N_MAX": "n_max", "QUAD_ORDER": "quad_order",
    "GRID": "grid", "P_MAX": "p_max", "P_POINTS": "p_points", "Z": "z", "STATE": "state",
    "REP": "rep", "T": "t",
}
TOLERANCE_KEYS = {"TOL_MEASURE": "measure", "TOL_FUNCTIONAL": "functional", "TOL_DARBOUX": "darboux"}
OUTPUT_KEYS = {"FORMAT": "format", "OUT": "path"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="soliton-cs", description=__doc__.strip().splitlines()[0])
    parser.add_argument("command", choices=COMPUTE_COMMANDS + ["verify"])
    parser.add_argument("--suite", choices=SUITE_CHOICES, default="all", help="verification suite")
    parser.add_argument("--alphas", help="comma separated alphas, e.g. 1,2")
    parser.add_argument("--shifts", help="comma separated shifts c_j")
    parser.add_argument("--n-max", type=int, dest="n_max")
    parser.add_argument("--quad-order", type=int, dest="quad_order")
    parser.add_argument("--grid", help="x grid as min:max:points")
    parser.add_argument("--z", help="coherent-state label, e.g. 0.7+0.2i")
    parser.add_argument("--state", choices=["psi", "xi_free", "rho", "phi", "eta"])
    parser.add_argument("--rep", choices=["position", "momentum"])
    parser.add_argument("--t", type=float)
    parser.add_argument("--format", choices=["csv", "json"])
    parser.add_argument("--out", help="output path, '-' for stdout")
    parser.add_argument("--config", help="KEY=value configuration file")
    parser.add_argument("--tol-measure", type=float, dest="tol_measure")
    parser.add_argument("--tol-functional", type=float, dest="tol_functional")
    parser.add_argument("--tol-darboux", type=float, dest="tol_darboux")
    parser.add_argument("--log-level", default=Config.LOG_LEVEL, dest="log_level")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge the config file and the flags into a validated RunConfig."""
    fields: Dict[str, Any] = {}
    tolerances: Dict[str, Any] = {}
    output: Dict[str, Any] = {}
    if args.config:
        values = dotenv_values(args.config)
        unknown = set(values) - set(FILE_KEYS) - set(TOLERANCE_KEYS) - set(OUTPUT_KEYS)
        if unknown:
            raise InvalidParameterError(f"unknown keys in {args.config}: {sorted(unknown)}")
        for key, value in values.items():
            if key in FILE_KEYS:
                fields[FILE_KEYS[key]] = value
            elif key in TOLERANCE_KEYS:
                tolerances[TOLERANCE_KEYS[key]] = value
            else:
                output[OUTPUT_KEYS[key]] = value
    for name in FILE_KEYS.values():
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    for name in TOLERANCE_KEYS.values():
        value = getattr(args, f"tol_{name}")
        if value is not None:
            tolerances[name] = value
    if args.format is not None:
        output["format"] = args.format
    if args.out is not None:
        output["path"] = args.out
    if args.command == "verify":
        if output.get("format", "json") != "json":
            raise InvalidParameterError("verify writes a JSON report; --format csv is not supported")
        output["format"] = "json"
    return RunConfig(**fields, tolerances=tolerances, output=output)


def _complex_columns(frame_data: Dict[str, np.ndarray]) -> pd.DataFrame:
    columns = {}
    for name, values in frame_data.items():
        values = np.asarray(values)
        if np.iscomplexobj(values):
            columns[f"{name}_re"] = values.real
            columns[f"{name}_im"] = values.imag
        else:
            columns[name] = values
    return pd.DataFrame(columns)


def _frame_payload(command: str, config: RunConfig, frame: pd.DataFrame,
                   extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    payload = {
        "command": command,
        "config_echo": config.echo(),
        "columns": list(frame.columns),
        "rows": [[format_number(v) for v in row] for row in frame.itertuples(index=False)],
    }
    if extra:
        payload.update(extra)
    return payload


def command_compute(command: str, config: RunConfig) -> int:
    grid = UniformGrid.parse(config.grid)
    extra: Dict[str, Any] = {}
    if command == "density-xi":
        density = solve_omega_xi(config.alphas)
        frame = density_frame_xi(density, grid.x)
        extra["omega_xi_sign"] = density.sign_status()
    elif command == "density-rho":
        density = build_rho_density(config.alphas)
        frame = density_frame_rho(density, grid.x)
        extra["partial_fractions"] = {k: [format_number(v) for v in vals]
                                      for k, vals in density.fractions.to_dict().items()}
    elif command == "smatrix":
        frame = s_matrix(as_symbol(config.alphas), config.n_max).to_frame()
    elif command == "sinverse":
        inverse = s_inverse_block(config.alphas, config.n_max + 1, Config.INVERSE_TOLERANCE)
        frame = inverse.to_frame()
        extra["certificate"] = {
            "sizes": inverse.sizes,
            "differences": [format_number(d) for d in inverse.differences],
            "achieved": format_number(inverse.achieved),
            "tolerance": format_number(inverse.tolerance),
        }
    elif command == "potential":
        frame = pd.DataFrame({"x": grid.x, "V": soliton_potential(config.soliton_spec(), grid, config.t)})
    elif command == "bound-states":
        states = bound_states(config.soliton_spec(), grid, config.t)
        frame = _complex_columns({"x": grid.x, **{f"phi_{i + 1}": s for i, s in enumerate(states)}})
    else:
        frame = state_samples(config.state, config.alphas, config.z, grid, config.rep, config.t,
                              config.shifts or ())
    if config.output.format == "json":
        write_json(_frame_payload(command, config, frame, extra), config.output.path)
    else:
        write_csv(frame, config.output.path)
    logger.info(f"{command}: {len(frame)} rows")
    return 0


def run_suite(suite: str, config: RunConfig) -> List:
    grid = UniformGrid.parse(config.grid)
    tolerances = config.tolerances
    if suite == "xi":
        return xi_checks(config.alphas, min(config.n_max, 30), config.quad_order, tolerances.measure)
    if suite == "rho":
        return rho_checks(config.alphas, config.n_max, tolerances.functional)
    if suite == "darboux":
        return verify_darboux(config.soliton_spec(), config.n_max, tolerances.darboux, grid)
    return coherent_checks(config.alphas, tolerances, grid, config.shifts or (), config.z,
                           min(config.n_max, 8), config.quad_order)


def command_verify(suite: str, config: RunConfig) -> int:
    suites = Config.SUITES if suite == "all" else [suite]
    checks = []
    for name in suites:
        logger.info(f"running suite {name}")
        checks.extend(run_suite(name, config))
    report = VerificationReport(suite=suite, config_echo=config.echo(), checks=checks)
    for check in report.checks:
        if not check.passed:
            logger.warning(f"check {check.name} failed: {check.max_residual:.3e} > {check.tolerance:.1e}")
    write_json(report.to_payload(), config.output.path)
    return 0 if report.overall_pass else 1


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logger("soliton_coherent", args.log_level)
    try:
        config = resolve_config(args)
        if args.command == "verify":
            return command_verify(args.suite, config)
        return command_compute(args.command, config)
    except (InvalidParameterError, ValidationError) as e:
        logger.error(f"invalid parameters: {e}")
        return 2
    except NumericalFailure as e:
        logger.error(f"numerical failure: {e}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
