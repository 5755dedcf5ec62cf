"""
    File that contains the generators of the synthetic signal, noise and
    observation streams.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import logging

import numpy as np

from typing import Optional

# User defined
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.model.noise import NoiseModel, noise_samples
from newtondeconv.synth.presets import MixturePreset
from newtondeconv.synth.rng import make_rng

# ##############################################################################
# Global Variables
# ##############################################################################


logger = logging.getLogger(__name__)

# Stream indexes of the signal and the noise of a seed.
SIGNAL_STREAM = 0
NOISE_STREAM = 1

# ##############################################################################
# Functions
# ##############################################################################


def sample_signal(preset: MixturePreset, n: int, rng: np.random.Generator) -> np.ndarray:
    """
        Draws n independent signals: a component is chosen with probability
        proportional to its weight, then a Gaussian draw is taken from it.

        :param preset: The mixture preset.

        :param n: The number of draws.

        :param rng: The generator; owned by the caller.

        :return: The array of draws.
    """
    vproperties.validate_int_positive(n, name="n", texcept=True)

    weights = preset.weights / preset.total
    components = rng.choice(weights.size, size=n, p=weights)

    return (
        preset.means[components]
        + np.sqrt(preset.variances[components]) * rng.standard_normal(n)
    )


def generate_stream(
    preset: MixturePreset, noise: NoiseModel, n: int,
    rng: np.random.Generator, noise_rng: Optional[np.random.Generator] = None
) -> np.ndarray:
    """
        Generates the observations y = x + z, with x drawn from the preset and
        z from the noise law independently.

        :param preset: The mixture preset.

        :param noise: The noise model.

        :param n: The number of observations.

        :param rng: The generator of the signals, and of the noise when no
         noise generator is given.

        :param noise_rng: The generator of the noise.

        :return: The array of shape (n, 3) with the columns x, z and y.
    """
    x = sample_signal(preset, n, rng)
    z = noise_samples(noise, rng if noise_rng is None else noise_rng, n)

    return np.column_stack((x, z, x + z))


def simulate(preset: MixturePreset, noise: NoiseModel, n: int, seed: int) -> np.ndarray:
    """
        Generates the stream of a seed, the signals from its stream 0 and the
        noise from its stream 1. The signals of a seed do not depend on the
        noise model.

        :param preset: The mixture preset.

        :param noise: The noise model.

        :param n: The number of observations.

        :param seed: The nonnegative seed.

        :return: The array of shape (n, 3) with the columns x, z and y.
    """
    logger.debug(
        "Simulating %d observations of preset %s with %s noise, sd %g, "
        "seed %d.", n, preset.name, noise.family.value, noise.std_dev, seed
    )

    return generate_stream(
        preset, noise, n, make_rng(seed, SIGNAL_STREAM),
        make_rng(seed, NOISE_STREAM)
    )
