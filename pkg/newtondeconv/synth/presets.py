"""
    Contains the Gaussian mixture presets of the signal density and the
    functions to load, validate and evaluate them.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import math

import numpy as np
import yaml

from dataclasses import dataclass
from importlib.resources import files
from typing import Any

# User defined
import newtondeconv.synth as src
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.errors import ConfigurationError, ContractError
from newtondeconv.model.core import Points, ThetaAtom, kernel_pdf

# ##############################################################################
# Global Variables
# ##############################################################################


# Largest deviation of the weight sum from 1 of a normalized preset.
WEIGHT_TOLERANCE = 1e-12

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Private Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


def _validate_components(name: str, components: Any) -> None:
    """
        Validates the components of a preset read from the presets file.

        :param name: The name of the preset.

        :param components: The list of [weight, mean, variance] entries.

        :raise ConfigurationError: If the components are not valid.
    """
    if not isinstance(components, list) or len(components) == 0:
        raise ConfigurationError(
            f"The preset \"{name}\" must be a non-empty list of components. "
            f"Current value: {components}."
        )

    for component in components:
        kargs = {
            "value": component,
            "dtype": (int, float),
            "length": 3,
            "name": f"{name} component",
            "texcept": False
        }

        if not vproperties.validate_list(**kargs):
            raise ConfigurationError(
                f"The components of the preset \"{name}\" must be lists "
                f"[weight, mean, variance]. Current value: {component}."
            )


# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Classes
# ##############################################################################


@dataclass(frozen=True)
class MixturePreset:
    """
        Gaussian mixture sum_c weight_c N(mean_c, variance_c). The weights are
        positive; they sum to 1 unless the preset is flagged as not
        normalized, which is how a printed defective mixture is reproduced.
    """
    components: tuple
    name: str = "custom"
    normalized: bool = True

    def __post_init__(self):
        components = tuple(
            (float(w), float(m), float(v)) for w, m, v in self.components
        )
        if not components:
            raise ContractError("A preset needs at least one component.")

        for weight, mean, variance in components:
            vproperties.validate_real_positive(
                weight, zero=False, name="weight", texcept=True
            )
            ThetaAtom(mean, variance)

        total = math.fsum(w for w, _, _ in components)
        if self.normalized and abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise ContractError(
                f"The weights of a normalized preset must sum to 1. Current "
                f"sum: {total!r}."
            )

        object.__setattr__(self, "components", components)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _, _ in self.components])

    @property
    def means(self) -> np.ndarray:
        return np.array([m for _, m, _ in self.components])

    @property
    def variances(self) -> np.ndarray:
        return np.array([v for _, _, v in self.components])

    @property
    def total(self) -> float:
        return math.fsum(w for w, _, _ in self.components)

    def renormalized(self) -> "MixturePreset":
        """
            Gets the preset with its weights divided by their sum.
        """
        total = self.total
        return MixturePreset(
            tuple((w / total, m, v) for w, m, v in self.components), self.name
        )


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'get' Functions
# ------------------------------------------------------------------------------


def get() -> dict:
    """
        Gets the dictionary with the shipped presets.

        :return: The dictionary from preset names to component lists.
    """
    with files(src.__name__).joinpath("presets.yaml").open() as file:
        return yaml.safe_load(file)


def names() -> tuple:
    """
        Gets the names of the shipped presets, sorted.
    """
    return tuple(sorted(get()))


def load_preset(name: str, renormalize: bool = True) -> MixturePreset:
    """
        Loads a shipped preset.

        :param name: The name of the preset: unimodal, bimodal or multimodal.

        :param renormalize: Divide the weights by their sum. Only the bimodal
         preset is affected; its printed weights sum to 0.9. True, by default.

        :return: The preset.

        :raise ConfigurationError: If the preset is unknown or malformed.
    """
    vproperties.validate_bool(renormalize, name="renormalize", texcept=True)

    presets = get()
    if name not in presets:
        raise ConfigurationError(
            f"Unknown preset \"{name}\". Available presets: {sorted(presets)}."
        )

    _validate_components(name, presets[name])
    preset = MixturePreset(tuple(presets[name]), name, normalized=False)

    if renormalize or abs(preset.total - 1.0) <= WEIGHT_TOLERANCE:
        return preset.renormalized()

    return preset


# ------------------------------------------------------------------------------
# 'density' Functions
# ------------------------------------------------------------------------------


def preset_pdf(preset: MixturePreset, x: Points) -> Points:
    """
        True density of the preset, sum_c weight_c N(x | mean_c, variance_c).
        A preset that is not normalized integrates to the sum of its weights.

        :param preset: The mixture preset.

        :param x: A real number or an array of real numbers.

        :return: The density at x; same shape as x.
    """
    value = sum(
        weight * np.asarray(kernel_pdf(ThetaAtom(mean, variance), x))
        for weight, mean, variance in preset.components
    )

    return float(value) if np.ndim(value) == 0 else value
