"""
    File that contains the pointwise uncertainty of the plug-in estimate: the
    conditional plug-in density f_n(x | y), the variance

        v_n(x) = int (f_n(x | y) - f_n(x))^2 f_n^(Y)(y) dy,

    and the credible interval f_n(x) +/- b_n^(-1/2) z_(1 - beta/2)
    max(v_n(x), eps)^(1/2).
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import math

import numpy as np

from dataclasses import dataclass
from scipy import special
from typing import Optional

# User defined
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.engine.newton import EstimatorState, b_n, plugin_pdf
from newtondeconv.engine.newton import posterior_reweight
from newtondeconv.model.core import Points, mixture_pdf
from newtondeconv.uncertainty.quadrature import ConditionalTable, QuadratureSpec
from newtondeconv.uncertainty.quadrature import default_quadrature

# ##############################################################################
# Global Variables
# ##############################################################################


# Floor of the variance and of the band constant.
EPSILON = 1e-12

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Classes
# ##############################################################################


@dataclass(frozen=True)
class IntervalResult:
    """
        Credible interval at x: center +/- half_width.
    """
    x: float
    center: float
    half_width: float
    variance: float
    b_n: float
    level: float

    @property
    def lower(self) -> float:
        return self.center - self.half_width

    @property
    def upper(self) -> float:
        return self.center + self.half_width


# ##############################################################################
# Functions
# ##############################################################################


def normal_quantile(level: float) -> float:
    """
        Gets z_(1 - level/2), the upper level/2 quantile of the standard
        normal distribution.

        :param level: The level beta, in (0, 1).

        :return: The quantile.
    """
    vproperties.validate_real_interval(level, 0.0, 1.0, name="level", texcept=True)

    return float(special.ndtri(1.0 - level / 2.0))


def cond_plugin_pdf(state: EstimatorState, x: Points, y: float) -> Points:
    """
        Conditional plug-in density f_n^(X)(x | y), the mixture of the signal
        kernels under the Bayes-reweighted pmf g_n(. | y).

        :param state: The estimator state.

        :param x: A real number or an array of real numbers.

        :param y: The conditioning observation.

        :return: The density at x; same shape as x.
    """
    return mixture_pdf(state.grid, posterior_reweight(state, y), x)


def variance_vn(
    state: EstimatorState, x: Points, quad: Optional[QuadratureSpec] = None,
    table: Optional[ConditionalTable] = None
) -> Points:
    """
        Composite Simpson approximation of v_n(x).

        :param state: The estimator state.

        :param x: A real number or an array of real numbers.

        :param quad: The quadrature specification; the default of the state,
         if None.

        :param table: A conditional table of the same state to reuse; built
         from quad, if None.

        :return: The nonnegative variance at x; same shape as x.

        :raise QuadratureWindowError: If the window fails the mass check.
    """
    if table is None:
        table = ConditionalTable(state, quad or default_quadrature(state))

    conditional = table.conditional(x)
    center = np.atleast_1d(plugin_pdf(state, x))
    value = table.density_weights @ (conditional - center) ** 2

    return float(value[0]) if np.ndim(x) == 0 else value


def credible_interval(
    state: EstimatorState, x: float, level: float = 0.05,
    epsilon: float = EPSILON, quad: Optional[QuadratureSpec] = None
) -> IntervalResult:
    """
        Asymptotic credible interval of level 1 - beta at x.

        :param state: The estimator state; n >= 1.

        :param x: The evaluation point.

        :param level: The level beta, in (0, 1). 0.05, by default.

        :param epsilon: The variance floor. 1e-12, by default.

        :param quad: The quadrature specification; the default of the state,
         if None.

        :return: The interval.
    """
    return credible_intervals(state, np.array([x]), level, epsilon, quad)[0]


def credible_intervals(
    state: EstimatorState, x: np.ndarray, level: float = 0.05,
    epsilon: float = EPSILON, quad: Optional[QuadratureSpec] = None
) -> list:
    """
        Asymptotic credible intervals at every point of x, sharing one
        quadrature table.

        :param state: The estimator state; n >= 1.

        :param x: The array of evaluation points.

        :param level: The level beta, in (0, 1).

        :param epsilon: The variance floor.

        :param quad: The quadrature specification.

        :return: The list of IntervalResult, one per point.
    """
    quantile = normal_quantile(level)
    vproperties.validate_real_positive(
        epsilon, zero=False, name="epsilon", texcept=True
    )
    normalizer = b_n(state.schedule, state.n)

    x = np.asarray(x, dtype=float)
    variances = np.atleast_1d(variance_vn(state, x, quad))
    centers = np.atleast_1d(plugin_pdf(state, x))

    scale = quantile / math.sqrt(normalizer)
    return [
        IntervalResult(
            float(xi), float(ci), scale * math.sqrt(max(float(vi), epsilon)),
            float(vi), normalizer, level
        )
        for xi, ci, vi in zip(x, centers, variances)
    ]
