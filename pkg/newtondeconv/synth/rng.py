"""
    File that contains the construction of the random generators. Every
    generator is a numpy Generator over the counter-based Philox4x64-10 bit
    generator, keyed by (seed, stream) through a SeedSequence; streams with
    different indexes are independent and results do not depend on the order
    in which the streams are created.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import numpy as np

# User defined
import newtondeconv.validate.validate_properties as vproperties

# ##############################################################################
# Global Variables
# ##############################################################################


# Name of the bit generator, recorded in report headers.
BIT_GENERATOR = "numpy.random.Philox(4x64-10)"

# ##############################################################################
# Functions
# ##############################################################################


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """
        Gets the generator of the given stream of the given seed.

        :param seed: The nonnegative integer seed.

        :param stream: The nonnegative stream index. 0, by default.

        :return: The generator.
    """
    vproperties.validate_int_positive(seed, name="seed", texcept=True)
    vproperties.validate_int_positive(stream, name="stream", texcept=True)

    sequence = np.random.SeedSequence([int(seed), int(stream)])
    return np.random.Generator(np.random.Philox(sequence))
