"""
    File that contains the unit test for the functions in the file
    intervals.py.
"""


# ##############################################################################
# Imports
# ##############################################################################


# General
import math
import os
import unittest

import numpy as np

from scipy import integrate, special

# User defined
import newtondeconv.uncertainty.intervals as intervals

from newtondeconv.engine.newton import EstimatorState, LearningRateSchedule
from newtondeconv.engine.newton import batch_fit, initial_state, plugin_pdf
from newtondeconv.errors import ContractError
from newtondeconv.model.core import ParameterGrid, ThetaAtom, desk_grid, kernel_pdf
from newtondeconv.model.noise import NoiseModel
from newtondeconv.synth.presets import load_preset
from newtondeconv.synth.rng import make_rng
from newtondeconv.synth.stream import simulate
from newtondeconv.uncertainty.quadrature import ConditionalTable, QuadratureSpec
from newtondeconv.uncertainty.quadrature import default_quadrature


# ##############################################################################
# Global Variables
# ##############################################################################


# Long running statistical checks.
SLOW = bool(os.environ.get("NEWTONDECONV_SLOW"))


# ##############################################################################
# Functions
# ##############################################################################


def gaussian(x, mean, variance):
    """
        Reference Gaussian density.
    """
    return np.exp(-0.5 * (x - mean) ** 2 / variance) / np.sqrt(2.0 * np.pi * variance)


# ##############################################################################
# Classes
# ##############################################################################


class TestIntervals(unittest.TestCase):
    """
        Class that contains the tests for the pointwise variance and the
        credible intervals.
    """

    # --------------------------------------------------------------------------
    # Fixtures
    # --------------------------------------------------------------------------

    def setUp(self):
        self.means = np.array([0.0, 3.0])
        self.variances = np.array([1.0, 1.5])
        self.pmf = np.array([0.4, 0.6])

        self.state = EstimatorState(
            ParameterGrid(self.means, self.variances), self.pmf, 100,
            LearningRateSchedule(), NoiseModel("gaussian", 1.0)
        )
        self.single = EstimatorState(
            ParameterGrid([1.0], [2.0]), np.array([1.0]), 100,
            LearningRateSchedule(), NoiseModel("laplace", 0.5)
        )

    # --------------------------------------------------------------------------
    # Tests
    # --------------------------------------------------------------------------

    def test_normal_quantile(self):
        """
            Test the function normal_quantile.
        """
        self.assertAlmostEqual(
            intervals.normal_quantile(0.05), 1.959963984540054, delta=1e-10
        )
        self.assertAlmostEqual(
            intervals.normal_quantile(2.0 * float(special.ndtr(-1.0))), 1.0,
            delta=1e-10
        )

        for level in (0.0, 1.0, -0.1):
            with self.assertRaises(ContractError):
                intervals.normal_quantile(level)

    def test_cond_plugin_pdf(self):
        """
            Test the function cond_plugin_pdf.
        """
        # ----------------------------------------------------------------------
        # Test 1: A single atom ignores the observation.
        # ----------------------------------------------------------------------

        for y in (-3.0, 0.0, 5.0):
            self.assertAlmostEqual(
                intervals.cond_plugin_pdf(self.single, 0.5, y),
                kernel_pdf(ThetaAtom(1.0, 2.0), 0.5), delta=1e-15
            )

        # ----------------------------------------------------------------------
        # Test 2: Equal likelihoods give the plug-in density.
        # ----------------------------------------------------------------------

        symmetric = EstimatorState(
            ParameterGrid([-1.0, 1.0], [1.0, 1.0]), np.array([0.3, 0.7]), 1,
            LearningRateSchedule(), NoiseModel("laplace", 0.5)
        )
        self.assertAlmostEqual(
            intervals.cond_plugin_pdf(symmetric, 0.4, 0.0),
            plugin_pdf(symmetric, 0.4), delta=1e-15
        )

        # ----------------------------------------------------------------------
        # Test 3: Hand evaluation of the Bayes reweighting.
        # ----------------------------------------------------------------------

        y, x = 1.0, 2.0
        likelihoods = gaussian(y, self.means, self.variances + 1.0)
        posterior = self.pmf * likelihoods / (self.pmf @ likelihoods)
        expected = posterior @ gaussian(x, self.means, self.variances)

        self.assertAlmostEqual(
            intervals.cond_plugin_pdf(self.state, x, y), float(expected),
            delta=1e-14
        )

    def test_variance_vn(self):
        """
            Test the function variance_vn.
        """
        # ----------------------------------------------------------------------
        # Test 1: A single atom has no variance.
        # ----------------------------------------------------------------------

        self.assertAlmostEqual(
            intervals.variance_vn(self.single, 0.5), 0.0, delta=1e-30
        )

        # ----------------------------------------------------------------------
        # Test 2: Independent trapezoid evaluation with 10^5 nodes.
        # ----------------------------------------------------------------------

        x = 1.5
        y = np.linspace(-20.0, 25.0, 100001)
        likelihoods = gaussian(y[:, None], self.means, self.variances + 1.0)
        predictive = likelihoods @ self.pmf
        posterior = self.pmf * likelihoods / predictive[:, None]
        conditional = posterior @ gaussian(x, self.means, self.variances)
        center = self.pmf @ gaussian(x, self.means, self.variances)

        oracle = float(integrate.trapezoid((conditional - center) ** 2 * predictive, y))
        value = intervals.variance_vn(self.state, x)

        self.assertIsInstance(value, float)
        self.assertAlmostEqual(value, oracle, delta=1e-7)

        # ----------------------------------------------------------------------
        # Test 3: Doubling the nodes barely moves the value.
        # ----------------------------------------------------------------------

        spec = default_quadrature(self.state)
        finer = QuadratureSpec(spec.y_low, spec.y_high, 2 * spec.y_nodes - 1)

        x = np.array([-1.0, 1.5, 4.0])
        coarse = intervals.variance_vn(self.state, x, spec)
        fine = intervals.variance_vn(self.state, x, finer)
        np.testing.assert_allclose(coarse, fine, rtol=1e-8)

        # ----------------------------------------------------------------------
        # Test 4: Strictly positive at random points of a multi-atom state.
        # ----------------------------------------------------------------------

        x = make_rng(3).uniform(-6.0, 9.0, 10)
        self.assertTrue(np.all(intervals.variance_vn(self.state, x) > 0.0))

    def test_tower_identity(self):
        """
            Test that the predictive average of the conditional plug-in
            density is the plug-in density.
        """
        noise = NoiseModel("laplace", 0.5)
        grid = ParameterGrid([-2.0, 0.0, 1.0, 4.0], [0.5, 1.0, 0.25, 2.0])
        state = initial_state(grid, LearningRateSchedule(), noise)
        state = batch_fit(state, [0.3, -1.2, 3.9, 1.1])

        table = ConditionalTable(state, default_quadrature(state))
        x = np.linspace(-4.0, 6.0, 21)

        np.testing.assert_allclose(
            table.density_weights @ table.conditional(x), plugin_pdf(state, x),
            rtol=0, atol=1e-6
        )

    def test_credible_interval(self):
        """
            Test the function credible_interval.
        """
        # ----------------------------------------------------------------------
        # Test 1: The variance floor of a single atom.
        # ----------------------------------------------------------------------

        result = intervals.credible_interval(self.single, 0.5, 0.05, 1e-12)

        self.assertEqual(result.b_n, 100.0)
        self.assertAlmostEqual(result.variance, 0.0, delta=1e-30)
        self.assertAlmostEqual(
            result.half_width, 0.1 * 1.959963984540054 * 1e-6, delta=1e-15
        )
        self.assertAlmostEqual(
            result.center, kernel_pdf(ThetaAtom(1.0, 2.0), 0.5), delta=1e-15
        )
        self.assertLess(result.lower, result.center)
        self.assertGreater(result.upper, result.center)

        # ----------------------------------------------------------------------
        # Test 2: The quantile is one at the level 2 Phi(-1).
        # ----------------------------------------------------------------------

        level = 2.0 * float(special.ndtr(-1.0))
        result = intervals.credible_interval(self.state, 1.5, level)
        self.assertAlmostEqual(
            result.half_width, math.sqrt(result.variance / result.b_n),
            delta=1e-12
        )

        # ----------------------------------------------------------------------
        # Test 3: The normalizer shrinks the interval along a stream.
        # ----------------------------------------------------------------------

        noise = NoiseModel("laplace", 0.5)
        grid = ParameterGrid([-1.0, 0.0, 3.0, 4.0], [2.0, 1.0, 1.5, 0.5])
        ys = simulate(load_preset("unimodal"), noise, 400, 2)[:, 2]

        state = batch_fit(initial_state(grid, LearningRateSchedule(), noise), ys[:200])
        early = intervals.credible_interval(state, 3.0)
        late = intervals.credible_interval(batch_fit(state, ys[200:]), 3.0)

        self.assertLess(
            late.half_width / math.sqrt(max(late.variance, 1e-12)),
            early.half_width / math.sqrt(max(early.variance, 1e-12))
        )

        # ----------------------------------------------------------------------
        # Test 4: Invalid arguments.
        # ----------------------------------------------------------------------

        with self.assertRaises(ContractError):
            intervals.credible_interval(self.state, 1.5, 1.0)

        with self.assertRaises(ContractError):
            intervals.credible_interval(self.state, 1.5, 0.05, 0.0)

        fresh = initial_state(self.state.grid, LearningRateSchedule(), self.state.noise)
        with self.assertRaises(ContractError):
            intervals.credible_interval(fresh, 1.5)

    def test_credible_intervals(self):
        """
            Test that the intervals over many points match the single point
            intervals.
        """
        x = np.array([-2.0, 0.0, 2.5, 5.0])
        results = intervals.credible_intervals(self.state, x)

        self.assertEqual([r.x for r in results], x.tolist())
        for result in results:
            single = intervals.credible_interval(self.state, result.x)
            self.assertAlmostEqual(result.half_width, single.half_width, delta=1e-15)
            self.assertAlmostEqual(result.center, single.center, delta=1e-15)


@unittest.skipUnless(SLOW, "Set NEWTONDECONV_SLOW to run the statistical checks.")
class TestIntervalsStatistical(unittest.TestCase):
    """
        Class that contains the long running checks of the credible
        intervals.
    """

    def test_coverage(self):
        """
            Test that the interval at n = 2000 covers the plug-in estimate at
            n = 50000 of the same stream in at least 85% of the runs.
        """
        preset = load_preset("unimodal")
        noise = NoiseModel("laplace", 0.5)
        schedule = LearningRateSchedule(1.0, 1.0)

        hits = 0
        for seed in range(50):
            ys = simulate(preset, noise, 50000, seed)[:, 2]

            state = batch_fit(initial_state(desk_grid(), schedule, noise), ys[:2000])
            result = intervals.credible_interval(state, 3.0, 0.05)

            limit = plugin_pdf(batch_fit(state, ys[2000:]), 3.0)
            hits += result.lower <= limit <= result.upper

        self.assertGreaterEqual(hits / 50, 0.85)


if __name__ == "__main__":
    unittest.main()
