"""
    File that contains the unit test for the functions in the file noise.py.
"""


# ##############################################################################
# Imports
# ##############################################################################


# General
import math
import numpy as np
import unittest

from scipy import integrate

# User defined
import newtondeconv.model.core as core
import newtondeconv.model.noise as noise

from newtondeconv.errors import ContractError, DomainError
from newtondeconv.synth.rng import make_rng


# ##############################################################################
# Classes
# ##############################################################################


class TestNoise(unittest.TestCase):
    """
        Class that contains the tests for the noise laws and the convolved
        kernels.
    """

    def test_noise_model(self):
        """
            Test the validation of the noise model.
        """
        laplace = noise.NoiseModel("laplace", 0.5)
        self.assertIs(laplace.family, noise.NoiseFamily.LAPLACE)
        self.assertAlmostEqual(laplace.scale, 0.5 / math.sqrt(2.0), delta=1e-15)
        self.assertAlmostEqual(laplace.variance, 0.25, delta=1e-15)

        gaussian = noise.NoiseModel(noise.NoiseFamily.GAUSSIAN, 2.0)
        self.assertEqual(gaussian.scale, 2.0)

        with self.assertRaises(ContractError):
            noise.NoiseModel("cauchy", 1.0)

        for sd in (0.0, -1.0, math.inf, math.nan):
            with self.assertRaises(DomainError):
                noise.NoiseModel("laplace", sd)

    def test_noise_pdf(self):
        """
            Test the function noise_pdf.
        """
        # ----------------------------------------------------------------------
        # Test 1: Peak values.
        # ----------------------------------------------------------------------

        laplace = noise.NoiseModel("laplace", 0.5)
        self.assertAlmostEqual(
            noise.noise_pdf(laplace, 0.0), 1.0 / math.sqrt(0.5), delta=1e-12
        )

        gaussian = noise.NoiseModel("gaussian", 1.0)
        self.assertAlmostEqual(noise.noise_pdf(gaussian, 0.0), 0.3989423, places=7)

        # ----------------------------------------------------------------------
        # Test 2: Symmetry and normalization.
        # ----------------------------------------------------------------------

        z = np.linspace(-5.0, 5.0, 100001)
        for model in (laplace, noise.NoiseModel("gaussian", 0.5)):
            values = noise.noise_pdf(model, z)
            np.testing.assert_allclose(values, values[::-1], rtol=1e-14)
            self.assertAlmostEqual(
                float(integrate.trapezoid(values, z)), 1.0, delta=1e-6
            )

        # ----------------------------------------------------------------------
        # Test 3: Non-finite points.
        # ----------------------------------------------------------------------

        with self.assertRaises(DomainError):
            noise.noise_pdf(laplace, math.nan)

    def test_convolved_gaussian(self):
        """
            Test the closed form of the Gaussian-Gaussian convolution.
        """
        model = noise.NoiseModel("gaussian", 1.0)
        theta = core.ThetaAtom(0.0, 1.0)

        self.assertAlmostEqual(
            noise.convolved_kernel_pdf(model, theta, 0.0), 0.2820948, places=7
        )

        y = np.linspace(-6.0, 6.0, 25)
        np.testing.assert_allclose(
            noise.convolved_kernel_pdf(model, theta, y),
            core.kernel_pdf(core.ThetaAtom(0.0, 2.0), y), rtol=1e-13
        )

    def test_convolved_laplace(self):
        """
            Test the closed form of the Laplace-Gaussian convolution against
            the numeric oracle.
        """
        # ----------------------------------------------------------------------
        # Test 1: Reference atoms.
        # ----------------------------------------------------------------------

        model = noise.NoiseModel("laplace", 0.5)
        theta = core.ThetaAtom(0.0, 1.0)
        self.assertAlmostEqual(
            noise.convolved_kernel_pdf(model, theta, 0.0),
            noise.numeric_convolution_oracle(model, theta, 0.0, 4001),
            delta=1e-8
        )

        model = noise.NoiseModel("laplace", 2.0)
        theta = core.ThetaAtom(3.0, 1.5)
        self.assertAlmostEqual(
            noise.convolved_kernel_pdf(model, theta, 3.0),
            noise.numeric_convolution_oracle(model, theta, 3.0, 2001),
            delta=1e-8
        )

        # ----------------------------------------------------------------------
        # Test 2: A sweep over atoms and observations, far tails included.
        # ----------------------------------------------------------------------

        for sd in (0.25, 0.5, 1.0):
            model = noise.NoiseModel("laplace", sd)
            for theta in (core.ThetaAtom(-2.0, 0.25), core.ThetaAtom(1.0, 4.0)):
                for y in (-6.0, -2.0, 0.0, 1.5, 5.0):
                    oracle = noise.numeric_convolution_oracle(model, theta, y, 4001)
                    closed = noise.convolved_kernel_pdf(model, theta, y)
                    self.assertAlmostEqual(closed, oracle, delta=1e-7)

        # ----------------------------------------------------------------------
        # Test 3: The closed form stays finite and positive far in the tails.
        # ----------------------------------------------------------------------

        model = noise.NoiseModel("laplace", 0.1)
        theta = core.ThetaAtom(0.0, 0.01)
        y = np.array([-40.0, -10.0, 10.0, 40.0])
        values = noise.convolved_kernel_pdf(model, theta, y)

        self.assertTrue(np.all(np.isfinite(values)))
        self.assertTrue(np.all(values > 0.0))

        # ----------------------------------------------------------------------
        # Test 4: The density is normalized.
        # ----------------------------------------------------------------------

        model = noise.NoiseModel("laplace", 0.5)
        y = np.linspace(-20.0, 20.0, 40001)
        values = noise.convolved_kernel_pdf(model, core.ThetaAtom(1.0, 0.5), y)
        self.assertAlmostEqual(float(integrate.trapezoid(values, y)), 1.0, delta=1e-6)

    def test_convolved_matrix(self):
        """
            Test the table of the convolved kernels.
        """
        model = noise.NoiseModel("laplace", 0.5)
        grid = core.ParameterGrid([-1.0, 0.0, 2.0], [0.5, 1.0, 2.0])
        y = np.array([-1.0, 0.5])

        matrix = noise.convolved_matrix(model, grid, y)
        self.assertEqual(matrix.shape, (2, 3))

        for i, value in enumerate(y):
            for j, atom in enumerate(grid):
                self.assertAlmostEqual(
                    matrix[i, j], noise.convolved_kernel_pdf(model, atom, value),
                    delta=1e-15
                )

        with self.assertRaises(DomainError):
            noise.convolved_matrix(model, grid, [math.inf])

    def test_oracle_contract(self):
        """
            Test the parameters of the numeric oracle.
        """
        model = noise.NoiseModel("laplace", 0.5)

        with self.assertRaises(ContractError):
            noise.numeric_convolution_oracle(model, core.ThetaAtom(0.0, 1.0), 0.0, 101)

        with self.assertRaises(TypeError):
            noise.numeric_convolution_oracle(model, core.ThetaAtom(0.0, 1.0), 0.0, 2001.0)

    def test_noise_samples(self):
        """
            Test the moments and the reproducibility of the noise draws.
        """
        for family in ("laplace", "gaussian"):
            model = noise.NoiseModel(family, 0.5)
            draws = noise.noise_samples(model, make_rng(7, 1), 100000)

            self.assertEqual(draws.shape, (100000,))
            self.assertAlmostEqual(float(draws.mean()), 0.0, delta=0.03)
            self.assertAlmostEqual(float(draws.var()), 0.25, delta=0.01)

            np.testing.assert_array_equal(
                draws, noise.noise_samples(model, make_rng(7, 1), 100000)
            )

        value = noise.noise_sample(noise.NoiseModel("laplace", 1.0), make_rng(0))
        self.assertIsInstance(value, float)
        self.assertTrue(math.isfinite(value))


if __name__ == "__main__":
    unittest.main()
