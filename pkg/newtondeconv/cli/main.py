"""
    Command line interface of the streaming deconvolution engine.

        newtondeconv simulate | fit | estimate | interval | band | calibrate

    Every subcommand reads the default configuration, overlays the file given
    with --config and then the flags given on the command line. The exit code
    is 0 on success, 2 on configuration errors, 3 on data errors and 4 on
    numeric degeneracy.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import argparse
import json
import logging
import sys
import time

from typing import Optional, Sequence

# User defined
import newtondeconv.cli.parameters as parameters
import newtondeconv.cli.reports as reports

from newtondeconv.calibrate.calibrate import CalibrationConfig, calibrate_gamma
from newtondeconv.calibrate.calibrate import default_gamma_grid
from newtondeconv.engine.checkpoint import read_checkpoint, write_checkpoint
from newtondeconv.engine.newton import EstimatorState, b_n, batch_fit
from newtondeconv.engine.newton import estimate_grid, initial_state, learning_rate
from newtondeconv.errors import ConfigurationError, DeconvolutionError
from newtondeconv.model.core import EvalGrid
from newtondeconv.synth.presets import load_preset
from newtondeconv.synth.rng import BIT_GENERATOR
from newtondeconv.synth.stream import simulate
from newtondeconv.uncertainty.bands import band_constant, credible_band
from newtondeconv.uncertainty.intervals import credible_intervals, normal_quantile

# ##############################################################################
# Global Variables
# ##############################################################################


logger = logging.getLogger(__name__)

# Flags that override configuration entries: destination -> (section, key).
_OVERRIDES = {
    "reference_grid": ("grid", "reference"),
    "alpha": ("schedule", "alpha"),
    "gamma": ("schedule", "gamma"),
    "noise_family": ("noise", "family"),
    "noise_sd": ("noise", "std_dev"),
    "y_nodes": ("quadrature", "y_nodes"),
    "z_nodes": ("quadrature", "z_nodes"),
    "level": ("uncertainty", "level"),
    "epsilon": ("uncertainty", "epsilon"),
    "interval": ("uncertainty", "interval"),
    "x_probes": ("uncertainty", "x_probes"),
    "pair_probes": ("uncertainty", "pair_probes"),
    "low": ("evaluation", "low"),
    "high": ("evaluation", "high"),
    "count": ("evaluation", "count"),
    "input": ("io", "input"),
    "csv_col": ("io", "csv_column"),
    "checkpoint": ("io", "checkpoint"),
    "output": ("io", "output"),
    "log_every": ("io", "log_every"),
    "preset": ("simulation", "preset"),
    "n": ("simulation", "n"),
    "renormalize": ("simulation", "renormalize"),
    "horizon": ("calibration", "horizon"),
    "gamma_step": ("calibration", "gamma_step"),
    "workers": ("calibration", "workers"),
    "seed": ("random", "seed"),
}

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Private Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# '_parser' Functions
# ------------------------------------------------------------------------------


def _common_parser() -> argparse.ArgumentParser:
    """
        Gets the parser of the options shared by every subcommand.
    """
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", help="YAML file overriding the defaults")
    parser.add_argument(
        "--reference-grid", "--paper-grid", action="store_const", const=True,
        default=None, help="use the reference grid of 80500 atoms"
    )
    parser.add_argument("--alpha", type=float, help="learning-rate alpha")
    parser.add_argument("--gamma", type=float, help="learning-rate exponent")
    parser.add_argument(
        "--noise-family", choices=("laplace", "gaussian"), help="noise law"
    )
    parser.add_argument("--noise-sd", type=float, help="noise standard deviation")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("-o", "--output", help="report file; - for stdout")

    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument(
        "-v", "--verbose", action="store_true", help="log debug messages"
    )
    verbosity.add_argument(
        "-q", "--quiet", action="store_true", help="log warnings only"
    )

    return parser


def _report_parser() -> argparse.ArgumentParser:
    """
        Gets the parser of the options of the checkpoint reports.
    """
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--checkpoint", help="checkpoint file to report on")
    parser.add_argument("--low", type=float, help="lowest evaluation point")
    parser.add_argument("--high", type=float, help="highest evaluation point")
    parser.add_argument("--count", type=int, help="number of evaluation points")

    return parser


def _uncertainty_parser() -> argparse.ArgumentParser:
    """
        Gets the parser of the options of the interval and band reports.
    """
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--level", type=float, help="level beta in (0, 1)")
    parser.add_argument("--epsilon", type=float, help="variance floor")
    parser.add_argument("--y-nodes", type=int, help="Simpson nodes over y")

    return parser


# ------------------------------------------------------------------------------
# '_configuration' Functions
# ------------------------------------------------------------------------------


def _configuration(args: argparse.Namespace) -> dict:
    """
        Gets the run configuration: defaults, then the configuration file,
        then the flags.

        :raise ConfigurationError: If the configuration is not valid.
    """
    try:
        configuration = (
            parameters.get() if args.config is None
            else parameters.load(args.config)
        )

        overrides = {}
        for dest, (section, key) in _OVERRIDES.items():
            value = getattr(args, dest, None)
            if value is not None:
                overrides.setdefault(section, {})[key] = (
                    list(value) if isinstance(value, tuple) else value
                )

        return parameters.merge(configuration, overrides)

    except TypeError as error:
        raise ConfigurationError(str(error)) from None


def _state_header(state: EstimatorState) -> dict:
    """
        Gets the report header entries of a state.
    """
    return {
        "n": state.n,
        "atoms": len(state.grid),
        "alpha": state.schedule.alpha,
        "gamma": state.schedule.gamma,
        "noise_family": state.noise.family.value,
        "noise_sd": state.noise.std_dev,
    }


# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'parser' Functions
# ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    """
        Gets the parser of the command line.

        :return: The parser.
    """
    common = _common_parser()
    report = _report_parser()
    uncertainty = _uncertainty_parser()

    parser = argparse.ArgumentParser(
        prog="newtondeconv",
        description="Streaming density deconvolution with Newton's algorithm."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Simulate.
    simulate_parser = subparsers.add_parser(
        "simulate", parents=[common], help="write a synthetic x,z,y stream"
    )
    simulate_parser.add_argument("--preset", help="mixture preset")
    simulate_parser.add_argument("-n", type=int, help="number of observations")
    simulate_parser.add_argument(
        "--no-renormalize", dest="renormalize", action="store_const",
        const=False, default=None, help="keep the printed preset weights"
    )

    # Fit.
    fit_parser = subparsers.add_parser(
        "fit", parents=[common], help="fold the recursion over a stream"
    )
    fit_parser.add_argument("-i", "--input", help="observations; - for stdin")
    fit_parser.add_argument(
        "--csv-col", type=int, help="0-based CSV column of the observations"
    )
    fit_parser.add_argument("--checkpoint", help="checkpoint file to write")
    fit_parser.add_argument("--resume", help="checkpoint file to resume from")
    fit_parser.add_argument(
        "--log-every", type=int, help="log the progress every so many updates"
    )

    # Reports.
    subparsers.add_parser(
        "estimate", parents=[common, report], help="plug-in density estimate"
    )
    subparsers.add_parser(
        "interval", parents=[common, report, uncertainty],
        help="pointwise credible intervals"
    )
    band_parser = subparsers.add_parser(
        "band", parents=[common, report, uncertainty],
        help="uniform credible band"
    )
    band_parser.add_argument(
        "--interval", type=float, nargs=2, metavar=("A", "B"),
        help="interval of the band"
    )
    band_parser.add_argument("--x-probes", type=int, help="probes over x")
    band_parser.add_argument("--pair-probes", type=int, help="probes per side of pairs")

    # Calibrate.
    calibrate_parser = subparsers.add_parser(
        "calibrate", parents=[common], help="Monte Carlo calibration of gamma"
    )
    calibrate_parser.add_argument("--horizon", type=int, help="simulated steps")
    calibrate_parser.add_argument("--gamma-step", type=float, help="gamma grid step")
    calibrate_parser.add_argument("--workers", type=int, help="threads")

    return parser


# ------------------------------------------------------------------------------
# 'cmd' Functions
# ------------------------------------------------------------------------------


def cmd_simulate(configuration: dict) -> None:
    """
        Writes a synthetic stream as CSV with the columns x, z and y and, for
        file outputs, a JSON sidecar with the simulation parameters.
    """
    simulation = configuration["simulation"]
    seed = configuration["random"]["seed"]
    output = configuration["io"]["output"]

    preset = load_preset(simulation["preset"], simulation["renormalize"])
    noise = parameters.build_noise(configuration)
    data = simulate(preset, noise, simulation["n"], seed)

    reports.write_report(output, None, ("x", "z", "y"), data.tolist())

    if output != reports.STANDARD_STREAM:
        reports.write_sidecar(output, {
            "preset": preset.name,
            "components": [list(component) for component in preset.components],
            "renormalize": simulation["renormalize"],
            "noise_family": noise.family.value,
            "noise_sd": noise.std_dev,
            "n": simulation["n"],
            "seed": seed,
            "bit_generator": BIT_GENERATOR,
        })


def cmd_fit(configuration: dict, resume: Optional[str] = None) -> dict:
    """
        Folds the recursion over the input stream, from the initial state or
        from a checkpoint, and writes the checkpoint of the final state.

        :return: The summary: n, the last learning rate and the wall time per
         update.
    """
    io = configuration["io"]

    if resume is None:
        state = initial_state(
            parameters.build_parameter_grid(configuration),
            parameters.build_schedule(configuration),
            parameters.build_noise(configuration),
        )

    else:
        state = read_checkpoint(resume)
        logger.info("Resuming from %s at n = %d.", resume, state.n)

    start, n0 = time.perf_counter(), state.n
    state = batch_fit(
        state, reports.read_observations(io["input"], io["csv_column"]),
        io["log_every"]
    )
    elapsed = time.perf_counter() - start
    write_checkpoint(state, io["checkpoint"])

    updates = state.n - n0
    return {
        "n": state.n,
        "updates": updates,
        "learning_rate": learning_rate(state.schedule, state.n) if state.n else None,
        "seconds_per_update": elapsed / updates if updates else None,
        "checkpoint": io["checkpoint"],
    }


def cmd_estimate(configuration: dict) -> None:
    """
        Writes the plug-in density over the evaluation grid.
    """
    state = read_checkpoint(configuration["io"]["checkpoint"])
    grid = parameters.build_eval_grid(configuration)

    reports.write_report(
        configuration["io"]["output"], _state_header(state), ("x", "center"),
        zip(grid.points.tolist(), estimate_grid(state, grid).tolist())
    )


def cmd_interval(configuration: dict) -> None:
    """
        Writes the pointwise credible intervals over the evaluation grid.
    """
    uncertainty = configuration["uncertainty"]
    state = read_checkpoint(configuration["io"]["checkpoint"])
    grid = parameters.build_eval_grid(configuration)
    quad = parameters.build_quadrature(configuration, state)

    results = credible_intervals(
        state, grid.points, uncertainty["level"], uncertainty["epsilon"], quad
    )

    header = _state_header(state) | {
        "b_n": b_n(state.schedule, state.n),
        "beta": uncertainty["level"],
        "epsilon": uncertainty["epsilon"],
        "quantile": normal_quantile(uncertainty["level"]),
        "y_window": [quad.y_low, quad.y_high],
        "y_nodes": quad.y_nodes,
    }
    reports.write_report(
        configuration["io"]["output"], header,
        ("x", "center", "lower", "upper", "variance"),
        (
            (r.x, r.center, r.lower, r.upper, r.variance) for r in results
        )
    )


def cmd_band(configuration: dict) -> None:
    """
        Writes the uniform credible band over the band interval, evaluated at
        count equally spaced points of the interval.
    """
    uncertainty = configuration["uncertainty"]
    state = read_checkpoint(configuration["io"]["checkpoint"])
    quad = parameters.build_quadrature(configuration, state)

    a, b = (float(end) for end in uncertainty["interval"])
    grid = EvalGrid.linspace(a, b, configuration["evaluation"]["count"])

    result = band_constant(
        state, (a, b), uncertainty["level"], quad,
        uncertainty["x_probes"], uncertainty["pair_probes"]
    )
    band = credible_band(
        state, (a, b), grid, uncertainty["level"], uncertainty["epsilon"],
        quad, result
    )

    header = _state_header(state) | {
        "b_n": b_n(state.schedule, state.n),
        "beta": uncertainty["level"],
        "epsilon": uncertainty["epsilon"],
        "interval": [a, b],
        "sigma_I": result.sigma_I,
        "band_constant": result.band_constant,
        "x_probes": result.x_probes,
        "pair_probes": result.pair_probes,
        "y_window": [quad.y_low, quad.y_high],
        "y_nodes": quad.y_nodes,
        "z_nodes": quad.z_nodes,
    }
    reports.write_report(
        configuration["io"]["output"], header, ("x", "center", "lower", "upper"),
        (
            (x, center, lower, upper)
            for (x, lower, upper), center in zip(band, estimate_grid(state, grid))
        )
    )


def cmd_calibrate(configuration: dict) -> float:
    """
        Calibrates gamma and writes the objective trace.

        :return: The calibrated gamma.
    """
    calibration = configuration["calibration"]
    noise = parameters.build_noise(configuration)

    config = CalibrationConfig(
        noise,
        default_gamma_grid(calibration["gamma_step"]),
        calibration["horizon"],
        configuration["schedule"]["alpha"],
        parameters.build_parameter_grid(configuration),
        seed=configuration["random"]["seed"],
    )
    gamma_hat, trace = calibrate_gamma(config, calibration["workers"])

    header = {
        "gamma_hat": gamma_hat,
        "ties": "larger gamma",
        "horizon": config.horizon,
        "alpha": config.alpha,
        "atoms": len(config.grid),
        "noise_family": noise.family.value,
        "noise_sd": noise.std_dev,
        "seed": config.seed,
        "bit_generator": BIT_GENERATOR,
    }
    reports.write_report(
        configuration["io"]["output"], header, ("gamma", "score"), trace
    )

    return gamma_hat


# ------------------------------------------------------------------------------
# 'main' Functions
# ------------------------------------------------------------------------------


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
        Runs the command line interface.

        :param argv: The arguments; sys.argv[1:], if None.

        :return: The exit code.
    """
    args = build_parser().parse_args(argv)

    level = logging.DEBUG if args.verbose else (
        logging.WARNING if args.quiet else logging.INFO
    )
    logging.basicConfig(
        level=level, stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )

    try:
        configuration = _configuration(args)
        logger.debug("Configuration: %s", configuration)

        if args.command == "simulate":
            cmd_simulate(configuration)

        elif args.command == "fit":
            summary = cmd_fit(configuration, args.resume)
            print(json.dumps(summary, sort_keys=True))

        elif args.command == "estimate":
            cmd_estimate(configuration)

        elif args.command == "interval":
            cmd_interval(configuration)

        elif args.command == "band":
            cmd_band(configuration)

        elif args.command == "calibrate":
            cmd_calibrate(configuration)

    except DeconvolutionError as error:
        logger.error("%s: %s", type(error).__name__, error)
        return error.exit_code

    return 0


if __name__ == "__main__":
    sys.exit(main())
