"""
    File that contains the unit test for the functions in the files stream.py
    and rng.py.
"""


# ##############################################################################
# Imports
# ##############################################################################


# General
import unittest

import numpy as np

# User defined
import newtondeconv.synth.rng as rng
import newtondeconv.synth.stream as stream

from newtondeconv.errors import ContractError
from newtondeconv.model.noise import NoiseModel
from newtondeconv.synth.presets import MixturePreset, load_preset


# ##############################################################################
# Classes
# ##############################################################################


class TestRng(unittest.TestCase):
    """
        Class that contains the tests for the generators.
    """

    def test_make_rng(self):
        """
            Test that the generators are keyed by the seed and the stream.
        """
        first = rng.make_rng(42, 3).random(5)

        np.testing.assert_array_equal(first, rng.make_rng(42, 3).random(5))
        self.assertFalse(np.array_equal(first, rng.make_rng(42, 4).random(5)))
        self.assertFalse(np.array_equal(first, rng.make_rng(43, 3).random(5)))
        self.assertIsInstance(rng.make_rng(0).bit_generator, np.random.Philox)

        with self.assertRaises(ContractError):
            rng.make_rng(-1)

        with self.assertRaises(TypeError):
            rng.make_rng(1.5)


class TestStream(unittest.TestCase):
    """
        Class that contains the tests for the synthetic streams.
    """

    def test_sample_signal(self):
        """
            Test the moments and the reproducibility of the signal draws.
        """
        standard = MixturePreset(((1.0, 0.0, 1.0),))
        draws = stream.sample_signal(standard, 100000, rng.make_rng(0))
        self.assertAlmostEqual(float(draws.mean()), 0.0, delta=0.02)

        unimodal = load_preset("unimodal")
        draws = stream.sample_signal(unimodal, 100000, rng.make_rng(1))
        self.assertAlmostEqual(float(draws.mean()), 1.8, delta=0.03)

        np.testing.assert_array_equal(
            stream.sample_signal(unimodal, 100, rng.make_rng(5)),
            stream.sample_signal(unimodal, 100, rng.make_rng(5))
        )

        # The printed bimodal weights draw the components as 4:5.
        printed = load_preset("bimodal", renormalize=False)
        draws = stream.sample_signal(printed, 100000, rng.make_rng(2))
        self.assertAlmostEqual(float(np.mean(draws > 1.0)), 5.0 / 9.0, delta=0.01)

        with self.assertRaises(TypeError):
            stream.sample_signal(unimodal, 10.0, rng.make_rng(0))

    def test_generate_stream(self):
        """
            Test the observation stream.
        """
        unimodal = load_preset("unimodal")
        laplace = NoiseModel("laplace", 0.5)

        # ----------------------------------------------------------------------
        # Test 1: Columns and bookkeeping.
        # ----------------------------------------------------------------------

        data = stream.generate_stream(unimodal, laplace, 100000, rng.make_rng(3))
        x, z, y = data.T

        self.assertEqual(data.shape, (100000, 3))
        np.testing.assert_array_equal(y - x, z)

        # Signal variance of the mixture: 0.3 (2 + 1) + 0.7 (1.5 + 9) - 1.8^2.
        expected = 0.3 * 3.0 + 0.7 * 10.5 - 1.8 ** 2 + 0.25
        self.assertAlmostEqual(float(y.var()) / expected, 1.0, delta=0.02)

        # ----------------------------------------------------------------------
        # Test 2: A tiny noise leaves y close to x.
        # ----------------------------------------------------------------------

        tiny = NoiseModel("gaussian", 1e-9)
        data = stream.generate_stream(unimodal, tiny, 1000, rng.make_rng(4))
        self.assertTrue(np.all(np.abs(data[:, 2] - data[:, 0]) <= 6e-9))

    def test_simulate(self):
        """
            Test that the simulated streams are a function of the seed.
        """
        unimodal = load_preset("unimodal")
        laplace = NoiseModel("laplace", 0.5)
        gaussian = NoiseModel("gaussian", 2.0)

        first = stream.simulate(unimodal, laplace, 500, 9)
        np.testing.assert_array_equal(first, stream.simulate(unimodal, laplace, 500, 9))
        self.assertFalse(np.array_equal(first, stream.simulate(unimodal, laplace, 500, 10)))

        # The signals of a seed do not depend on the noise.
        np.testing.assert_array_equal(
            first[:, 0], stream.simulate(unimodal, gaussian, 500, 9)[:, 0]
        )
        np.testing.assert_array_equal(
            first[:, 0],
            stream.sample_signal(unimodal, 500, rng.make_rng(9, stream.SIGNAL_STREAM))
        )


if __name__ == "__main__":
    unittest.main()
