"""
    Contains the functions to load, merge and validate the run configuration
    of the command line interface, and to build the model objects it names.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import copy

import yaml

from importlib.resources import files
from pathlib import Path
from typing import Any, Union

# User defined
import newtondeconv.cli as src
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.calibrate.calibrate import default_gamma_grid
from newtondeconv.engine.newton import EstimatorState, LearningRateSchedule
from newtondeconv.errors import ConfigurationError
from newtondeconv.model.core import EvalGrid, ParameterGrid, build_grid
from newtondeconv.model.core import reference_grid
from newtondeconv.model.noise import NoiseFamily, NoiseModel
from newtondeconv.synth.presets import names as preset_names
from newtondeconv.uncertainty.quadrature import QuadratureSpec
from newtondeconv.uncertainty.quadrature import default_quadrature

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Private Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# Dictionary structure with the keys and types of the parameters.
_TEMPLATE = {
    "grid": {
        "mean_min": (float, int),
        "mean_max": (float, int),
        "mean_step": (float, int),
        "var_min": (float, int),
        "var_max": (float, int),
        "var_step": (float, int),
        "reference": bool,
    },
    "schedule": {
        "alpha": (float, int),
        "gamma": (float, int),
    },
    "noise": {
        "family": str,
        "std_dev": (float, int),
    },
    "quadrature": {
        "y_nodes": int,
        "z_nodes": int,
    },
    "uncertainty": {
        "level": float,
        "epsilon": float,
        "interval": list,
        "x_probes": int,
        "pair_probes": int,
    },
    "evaluation": {
        "low": (float, int),
        "high": (float, int),
        "count": int,
    },
    "io": {
        "input": str,
        "csv_column": int,
        "checkpoint": str,
        "output": str,
        "log_every": int,
    },
    "simulation": {
        "preset": str,
        "n": int,
        "renormalize": bool,
    },
    "calibration": {
        "horizon": int,
        "gamma_step": float,
        "workers": int,
    },
    "random": {
        "seed": int,
    },
}


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# '_validate' Functions
# ------------------------------------------------------------------------------


def _validate_general(dictionary: Any, partial: bool = False) -> None:
    """
        Validates the general structure of the dictionary.

        :param dictionary: The object to be validated.

        :param partial: The dictionary may hold a subset of the sections and
         keys, as a user configuration does. False, by default.

        :raise TypeError: If the entries in the dictionary are not the correct
         type.

        :raise ConfigurationError: If the keys of the dictionary are not
         valid.
    """
    # Must be a dictionary.
    if not isinstance(dictionary, dict):
        raise TypeError(
            f"The object being validated must be a dictionary. Current type: "
            f"{type(dictionary)}."
        )

    # Keys of the dictionary.
    keys = set(_TEMPLATE.keys())
    current = set(dictionary.keys())
    if not (current <= keys if partial else current == keys):
        raise ConfigurationError(
            f"The first level of the dictionary must have the following keys: "
            f"{keys}. Current keys: {current}."
        )

    # Validate the entries of the dictionary.
    for key, value in dictionary.items():
        # Check they are dictionaries.
        if not isinstance(value, dict):
            raise TypeError(
                f"The entries of the dictionary must be dictionaries. Current "
                f"type of \"{key}\": {type(value)}."
            )

        # Check the keys of the dictionary.
        keys0 = set(_TEMPLATE[key].keys())
        current0 = set(value.keys())
        if not (current0 <= keys0 if partial else current0 == keys0):
            raise ConfigurationError(
                f"The second level of the dictionary with key \"{key}\" must "
                f"have the following keys: {keys0}. Current keys: {current0}."
            )

        # Check the types of the values; booleans are not numbers.
        for key0, value0 in value.items():
            dtype = _TEMPLATE[key][key0]
            if (
                not isinstance(value0, dtype)
                or (isinstance(value0, bool) and dtype is not bool)
            ):
                raise TypeError(
                    f"The value of the entry with key \"{key0}\" of the "
                    f"dictionary with key \"{key}\" must be of type {dtype}. "
                    f"Current type: {type(value0)}."
                )


def _validate_params_grid(grid: dict) -> None:
    """
        Validates the grid parameters.

        :param grid: The grid parameters.

        :raise ConfigurationError: If the grid parameter values are not
         valid.
    """
    # Dictionary with the keys and types of the parameters.
    kargs = {
        "mean_min": {
            "value": grid["mean_min"],
            "name": "grid[\"mean_min\"]",
            "texcept": True
        },
        "mean_max": {
            "value": grid["mean_max"],
            "name": "grid[\"mean_max\"]",
            "texcept": True
        },
        "mean_step": {
            "value": grid["mean_step"],
            "zero": False,
            "name": "grid[\"mean_step\"]",
            "texcept": True
        },
        "var_min": {
            "value": grid["var_min"],
            "zero": False,
            "name": "grid[\"var_min\"]",
            "texcept": True
        },
        "var_max": {
            "value": grid["var_max"],
            "zero": False,
            "name": "grid[\"var_max\"]",
            "texcept": True
        },
        "var_step": {
            "value": grid["var_step"],
            "zero": False,
            "name": "grid[\"var_step\"]",
            "texcept": True
        },
    }

    # Validate the parameters.
    vproperties.validate_real_finite(**kargs["mean_min"])
    vproperties.validate_real_finite(**kargs["mean_max"])
    vproperties.validate_real_positive(**kargs["mean_step"])
    vproperties.validate_real_positive(**kargs["var_min"])
    vproperties.validate_real_positive(**kargs["var_max"])
    vproperties.validate_real_positive(**kargs["var_step"])

    for key in ("mean", "var"):
        if grid[f"{key}_min"] > grid[f"{key}_max"]:
            raise ConfigurationError(
                f"The grid must satisfy {key}_min <= {key}_max. Current "
                f"values: {grid[f'{key}_min']}, {grid[f'{key}_max']}."
            )


def _validate_params_schedule(schedule: dict) -> None:
    """
        Validates the learning-rate schedule parameters.

        :param schedule: The schedule parameters.
    """
    vproperties.validate_real_positive(
        schedule["alpha"], zero=False, name="schedule[\"alpha\"]", texcept=True
    )
    vproperties.validate_real_interval(
        schedule["gamma"], 0.5, 1.0, closed=(False, True),
        name="schedule[\"gamma\"]", texcept=True
    )


def _validate_params_noise(noise: dict) -> None:
    """
        Validates the noise parameters.

        :param noise: The noise parameters.

        :raise ConfigurationError: If the family is unknown.
    """
    families = {family.value for family in NoiseFamily}
    if noise["family"] not in families:
        raise ConfigurationError(
            f"The noise family must be one of {sorted(families)}. Current "
            f"value: {noise['family']}."
        )

    vproperties.validate_real_positive(
        noise["std_dev"], zero=False, name="noise[\"std_dev\"]", texcept=True
    )


def _validate_params_quadrature(quadrature: dict) -> None:
    """
        Validates the quadrature parameters; 0 y-nodes is automatic.

        :param quadrature: The quadrature parameters.

        :raise ConfigurationError: If the node counts are not valid.
    """
    y_nodes = quadrature["y_nodes"]
    if y_nodes != 0 and (y_nodes < 401 or y_nodes % 2 == 0):
        raise ConfigurationError(
            f"The number of y-nodes must be 0 or an odd number of at least "
            f"401. Current value: {y_nodes}."
        )

    if quadrature["z_nodes"] < 256:
        raise ConfigurationError(
            f"The number of z-nodes must be at least 256. Current value: "
            f"{quadrature['z_nodes']}."
        )


def _validate_params_uncertainty(uncertainty: dict) -> None:
    """
        Validates the uncertainty parameters.

        :param uncertainty: The uncertainty parameters.

        :raise ConfigurationError: If the interval is not valid.
    """
    # Dictionary with the keys and types of the parameters.
    kargs = {
        "epsilon": {
            "value": uncertainty["epsilon"],
            "zero": False,
            "name": "uncertainty[\"epsilon\"]",
            "texcept": True
        },
        "interval": {
            "value": uncertainty["interval"],
            "dtype": (int, float),
            "length": 2,
            "name": "uncertainty[\"interval\"]",
            "texcept": True
        },
        "x_probes": {
            "value": uncertainty["x_probes"],
            "zero": False,
            "name": "uncertainty[\"x_probes\"]",
            "texcept": True
        },
        "pair_probes": {
            "value": uncertainty["pair_probes"],
            "zero": False,
            "name": "uncertainty[\"pair_probes\"]",
            "texcept": True
        },
    }

    # Validate the parameters.
    vproperties.validate_real_interval(
        uncertainty["level"], 0.0, 1.0, name="uncertainty[\"level\"]",
        texcept=True
    )
    vproperties.validate_real_positive(**kargs["epsilon"])
    vproperties.validate_list(**kargs["interval"])
    vproperties.validate_int_positive(**kargs["x_probes"])
    vproperties.validate_int_positive(**kargs["pair_probes"])

    a, b = uncertainty["interval"]
    if not a < b:
        raise ConfigurationError(
            f"The band interval must satisfy a < b. Current value: "
            f"{uncertainty['interval']}."
        )

    if uncertainty["pair_probes"] < 2:
        raise ConfigurationError(
            f"At least two pair probes are needed. Current value: "
            f"{uncertainty['pair_probes']}."
        )


def _validate_params_evaluation(evaluation: dict) -> None:
    """
        Validates the evaluation grid parameters.

        :param evaluation: The evaluation parameters.

        :raise ConfigurationError: If the grid is not valid.
    """
    vproperties.validate_real_finite(
        evaluation["low"], name="evaluation[\"low\"]", texcept=True
    )
    vproperties.validate_real_finite(
        evaluation["high"], name="evaluation[\"high\"]", texcept=True
    )

    if not evaluation["low"] < evaluation["high"]:
        raise ConfigurationError(
            f"The evaluation grid must satisfy low < high. Current values: "
            f"{evaluation['low']}, {evaluation['high']}."
        )

    if evaluation["count"] < 2:
        raise ConfigurationError(
            f"The evaluation grid needs at least two points. Current value: "
            f"{evaluation['count']}."
        )


def _validate_params_io(io: dict) -> None:
    """
        Validates the input and output parameters.

        :param io: The input and output parameters.

        :raise ConfigurationError: If the values are not valid.
    """
    if io["csv_column"] < -1:
        raise ConfigurationError(
            f"The CSV column must be -1 or a 0-based column index. Current "
            f"value: {io['csv_column']}."
        )

    for key in ("input", "checkpoint", "output"):
        if not io[key]:
            raise ConfigurationError(f"The path io[\"{key}\"] must not be empty.")

    vproperties.validate_int_positive(
        io["log_every"], name="io[\"log_every\"]", texcept=True
    )


def _validate_params_simulation(simulation: dict) -> None:
    """
        Validates the simulation parameters.

        :param simulation: The simulation parameters.

        :raise ConfigurationError: If the preset is unknown.
    """
    if simulation["preset"] not in (available := preset_names()):
        raise ConfigurationError(
            f"The preset must be one of {list(available)}. Current value: "
            f"{simulation['preset']}."
        )

    vproperties.validate_int_positive(
        simulation["n"], zero=False, name="simulation[\"n\"]", texcept=True
    )


def _validate_params_calibration(calibration: dict) -> None:
    """
        Validates the calibration parameters.

        :param calibration: The calibration parameters.
    """
    vproperties.validate_int_positive(
        calibration["horizon"], zero=False, name="calibration[\"horizon\"]",
        texcept=True
    )
    vproperties.validate_int_positive(
        calibration["workers"], zero=False, name="calibration[\"workers\"]",
        texcept=True
    )

    # The step must divide 0.5.
    default_gamma_grid(calibration["gamma_step"])


# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'get' Functions
# ------------------------------------------------------------------------------


def get() -> dict:
    """
        Gets the dictionary with the default parameters.

        :return: The dictionary with the default parameters.
    """
    with files(src.__name__).joinpath("parameters.yaml").open() as file:
        return yaml.safe_load(file)


def load(path: Union[str, Path]) -> dict:
    """
        Loads a user configuration file and merges it over the defaults.

        :param path: The path of the YAML file.

        :return: The validated configuration.

        :raise ConfigurationError: If the file cannot be read or parsed, or
         the configuration is not valid.
    """
    try:
        with open(path, mode="r") as file:
            user = yaml.safe_load(file)

    except (OSError, yaml.YAMLError) as error:
        raise ConfigurationError(f"Cannot load the configuration {path}: {error}")

    return merge(get(), {} if user is None else user)


# ------------------------------------------------------------------------------
# 'merge' Functions
# ------------------------------------------------------------------------------


def merge(defaults: dict, user: dict) -> dict:
    """
        Overlays the user configuration on the defaults, section by section.

        :param defaults: The complete default configuration.

        :param user: A configuration with a subset of the sections and keys.

        :return: The validated merged configuration; the inputs are not
         modified.
    """
    _validate_general(user, partial=True)

    configuration = copy.deepcopy(defaults)
    for key, value in user.items():
        configuration[key].update(copy.deepcopy(value))

    validate(configuration)

    return configuration


# ------------------------------------------------------------------------------
# 'validate' Functions
# ------------------------------------------------------------------------------


def validate(configuration: dict) -> None:
    """
        Validates the run configuration.

        :param configuration: The run configuration.
    """
    # Validate general parameters.
    _validate_general(configuration)

    # Validate the configuration.
    _validate_params_grid(configuration["grid"])
    _validate_params_schedule(configuration["schedule"])
    _validate_params_noise(configuration["noise"])
    _validate_params_quadrature(configuration["quadrature"])
    _validate_params_uncertainty(configuration["uncertainty"])
    _validate_params_evaluation(configuration["evaluation"])
    _validate_params_io(configuration["io"])
    _validate_params_simulation(configuration["simulation"])
    _validate_params_calibration(configuration["calibration"])
    vproperties.validate_int_positive(
        configuration["random"]["seed"], name="random[\"seed\"]", texcept=True
    )


# ------------------------------------------------------------------------------
# 'build' Functions
# ------------------------------------------------------------------------------


def build_parameter_grid(configuration: dict) -> ParameterGrid:
    """
        Gets the parameter grid of the configuration.
    """
    grid = configuration["grid"]
    if grid["reference"]:
        return reference_grid()

    return build_grid(
        grid["mean_min"], grid["mean_max"], grid["mean_step"],
        grid["var_min"], grid["var_max"], grid["var_step"]
    )


def build_schedule(configuration: dict) -> LearningRateSchedule:
    schedule = configuration["schedule"]
    return LearningRateSchedule(schedule["alpha"], schedule["gamma"])


def build_noise(configuration: dict) -> NoiseModel:
    noise = configuration["noise"]
    return NoiseModel(NoiseFamily(noise["family"]), noise["std_dev"])


def build_eval_grid(configuration: dict) -> EvalGrid:
    evaluation = configuration["evaluation"]
    return EvalGrid.linspace(
        evaluation["low"], evaluation["high"], evaluation["count"]
    )


def build_quadrature(configuration: dict, state: EstimatorState) -> QuadratureSpec:
    """
        Gets the quadrature of the state; the window is always the default
        window of the state.
    """
    quadrature = configuration["quadrature"]
    y_nodes = quadrature["y_nodes"] or None

    return default_quadrature(state, y_nodes, quadrature["z_nodes"])
