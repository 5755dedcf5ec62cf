"""
    File that contains the uniform credible band of the plug-in estimate over
    an interval I = (a, b):

        f_n(x) +/- b_n^(-1/2) max(v_n(I, beta), eps),

    v_n(I, beta) = 12 int_0^sigma_n(I) sqrt(log(1 + |I| / (2 psi_n^-1(z/2)))) dz
                   + sigma_n(I) sqrt(2 |log(beta / 2)|),

    where sigma_n(I) is the largest pointwise standard deviation over I,
    psi_n(z) is the modulus of the covariance pseudometric over the pairs of
    points of I at distance at most z, and psi_n^-1 its generalized inverse.
    Suprema over continua are taken on uniform probe grids.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import logging
import math

import numpy as np

from dataclasses import dataclass, field
from scipy import integrate
from typing import Optional, Union

# User defined
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.engine.newton import EstimatorState, b_n, plugin_pdf
from newtondeconv.errors import ContractError
from newtondeconv.model.core import EvalGrid, kernel_deriv_bound
from newtondeconv.uncertainty.intervals import EPSILON, variance_vn
from newtondeconv.uncertainty.quadrature import ConditionalTable, QuadratureSpec
from newtondeconv.uncertainty.quadrature import default_quadrature

# ##############################################################################
# Global Variables
# ##############################################################################


logger = logging.getLogger(__name__)

# Default probe counts of the suprema over x and over pairs of points.
X_PROBES = 201
PAIR_PROBES = 101

# Smallest node of the graded entropy mesh, relative to sigma_n(I).
_MESH_FLOOR = 1e-12

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Private Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


def _validate_interval(interval: tuple) -> tuple:
    """
        Validates the interval (a, b), a < b, and gets it as floats.
    """
    if len(interval) != 2:
        raise ContractError(
            f"The interval must be a pair (a, b). Current value: {interval}."
        )

    a, b = interval
    vproperties.validate_real_finite(a, name="a", texcept=True)
    vproperties.validate_real_finite(b, name="b", texcept=True)
    if not a < b:
        raise ContractError(
            f"The interval must satisfy a < b. Current value: {interval}."
        )

    return float(a), float(b)


def _table(state: EstimatorState, quad: Optional[QuadratureSpec]) -> ConditionalTable:
    """
        Builds the conditional table of the state.
    """
    return ConditionalTable(state, quad or default_quadrature(state))


# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Classes
# ##############################################################################


@dataclass(frozen=True)
class PsiTable:
    """
        Tabulation of psi_n at z_k = k h, h the spacing of the pair probes.
        Between nodes psi_n is the linear interpolant of the table. kprime is
        the supremum of the absolute kernel derivative over I and the grid.
    """
    interval: tuple
    z: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    kprime: float

    @property
    def length(self) -> float:
        return self.interval[1] - self.interval[0]

    def __call__(self, z: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        value = np.interp(z, self.z, self.values)
        return float(value) if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class BandResult:
    """
        Band constant v_n(I, beta) and its ingredients.
    """
    interval: tuple
    sigma_I: float
    band_constant: float
    level: float
    psi_table: PsiTable = field(repr=False)
    x_probes: int = X_PROBES
    pair_probes: int = PAIR_PROBES


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'sup' Functions
# ------------------------------------------------------------------------------


def sigma_n(
    state: EstimatorState, interval: tuple,
    quad: Optional[QuadratureSpec] = None, x_probe_count: int = X_PROBES,
    table: Optional[ConditionalTable] = None
) -> float:
    """
        Largest pointwise standard deviation sqrt(v_n(x)) over a uniform probe
        grid of the interval.

        :param state: The estimator state.

        :param interval: The interval (a, b), a < b.

        :param quad: The quadrature specification.

        :param x_probe_count: The number of probes. 201, by default.

        :param table: A conditional table of the state to reuse.

        :return: sigma_n(I).
    """
    a, b = _validate_interval(interval)
    vproperties.validate_int_positive(
        x_probe_count, zero=False, name="x_probe_count", texcept=True
    )

    probes = np.linspace(a, b, x_probe_count)
    variances = variance_vn(state, probes, table=table or _table(state, quad))

    return math.sqrt(float(variances.max()))


def psi_table(
    state: EstimatorState, interval: tuple,
    quad: Optional[QuadratureSpec] = None, pair_probe_count: int = PAIR_PROBES,
    table: Optional[ConditionalTable] = None
) -> PsiTable:
    """
        Tabulates psi_n on [0, b - a]. For every lag d of the uniform pair
        probes the largest bracket

            int (f_n(x1 | y) - f_n(x2 | y))^2 f_n^(Y)(y) dy - (f_n(x1) - f_n(x2))^2

        over the pairs at that lag is computed, clamped below at zero; the
        value at z_k = k h is the square root of the running maximum over the
        lags d <= k. Pairs at distance exactly z are admitted; the strict
        supremum over |x1 - x2| < z has the same value by continuity, and on
        a probe grid the closed rule can only widen the band.

        :param state: The estimator state.

        :param interval: The interval (a, b), a < b.

        :param quad: The quadrature specification.

        :param pair_probe_count: The number of probes. 101, by default.

        :param table: A conditional table of the state to reuse.

        :return: The tabulation.
    """
    a, b = _validate_interval(interval)
    vproperties.validate_int_positive(
        pair_probe_count, zero=False, name="pair_probe_count", texcept=True
    )
    if pair_probe_count < 2:
        raise ContractError(
            f"At least two pair probes are needed. Current value: "
            f"{pair_probe_count}."
        )

    table = table or _table(state, quad)
    probes = np.linspace(a, b, pair_probe_count)
    conditional = table.conditional(probes)
    center = plugin_pdf(state, probes)
    weights = table.density_weights

    # Largest bracket at every lag, lag d admitted for z >= d h; lag 0 pairs a
    # point with itself.
    brackets = np.zeros(pair_probe_count)
    for lag in range(1, pair_probe_count):
        spread = weights @ (conditional[:, lag:] - conditional[:, :-lag]) ** 2
        gap = (center[lag:] - center[:-lag]) ** 2
        brackets[lag] = max(float(np.max(spread - gap)), 0.0)

    values = np.sqrt(np.maximum.accumulate(brackets))
    z = (b - a) * np.arange(pair_probe_count) / (pair_probe_count - 1)

    return PsiTable((a, b), z, values, kernel_deriv_bound(state.grid, a, b))


def psi_n(
    state: EstimatorState, interval: tuple, z: float,
    quad: Optional[QuadratureSpec] = None, pair_probe_count: int = PAIR_PROBES
) -> float:
    """
        Modulus psi_n(z) of the covariance pseudometric: the supremum over the
        probed pairs with |x1 - x2| <= z of the square-rooted bracket.

        :param state: The estimator state.

        :param interval: The interval (a, b), a < b.

        :param z: The distance, in [0, b - a].

        :param quad: The quadrature specification.

        :param pair_probe_count: The number of probes. 101, by default.

        :return: psi_n(z).
    """
    a, b = _validate_interval(interval)
    vproperties.validate_real_interval(
        z, 0.0, b - a, closed=(True, True), name="z", texcept=True
    )

    return psi_table(state, (a, b), quad, pair_probe_count)(z)


def psi_inv(table: PsiTable, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
        Generalized inverse inf{z : psi_n(z) > t} of the interpolated table,
        located by binary search over the nondecreasing table values. The
        result is floored at t / kprime, since psi_n(z) <= kprime z, and is
        b - a when t is not below the largest tabulated value.

        :param table: The psi_n tabulation.

        :param t: A nonnegative number or an array of nonnegative numbers.

        :return: The generalized inverse; same shape as t.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) or not np.all(np.isfinite(t)):
        raise ContractError(
            f"The argument of the inverse must be finite and nonnegative. "
            f"Current value: {t}."
        )

    values, z = table.values, table.z

    # First node with a value above t.
    k = np.searchsorted(values, t, side="right")
    inside = k < values.size
    k = np.clip(k, 1, values.size - 1)

    # Linear interpolation on the segment [z_(k-1), z_k].
    rise = values[k] - values[k - 1]
    step = np.divide(
        t - values[k - 1], rise, out=np.zeros_like(t), where=rise > 0.0
    )
    inverse = np.where(inside, z[k - 1] + step * (z[k] - z[k - 1]), table.length)

    # Lipschitz floor.
    if table.kprime > 0.0:
        inverse = np.maximum(inverse, t / table.kprime)

    inverse = np.minimum(inverse, table.length)

    return float(inverse) if inverse.ndim == 0 else inverse


# ------------------------------------------------------------------------------
# 'band' Functions
# ------------------------------------------------------------------------------


def band_constant(
    state: EstimatorState, interval: tuple, level: float = 0.05,
    quad: Optional[QuadratureSpec] = None, x_probe_count: int = X_PROBES,
    pair_probe_count: int = PAIR_PROBES
) -> BandResult:
    """
        Band constant v_n(I, beta). The entropy integral is computed with the
        trapezoid rule on a mesh graded geometrically from 1e-12 sigma_n(I)
        to sigma_n(I); the integrand is decreasing, so the piece below the
        first node is bounded by its width times the integrand there.

        :param state: The estimator state.

        :param interval: The interval (a, b), a < b.

        :param level: The level beta, in (0, 1). 0.05, by default.

        :param quad: The quadrature specification.

        :param x_probe_count: The number of probes of sigma_n(I).

        :param pair_probe_count: The number of probes of psi_n.

        :return: The band constant and its ingredients.
    """
    a, b = _validate_interval(interval)
    vproperties.validate_real_interval(level, 0.0, 1.0, name="level", texcept=True)

    quad = quad or default_quadrature(state)
    table = ConditionalTable(state, quad)

    sigma = sigma_n(state, (a, b), x_probe_count=x_probe_count, table=table)
    psi = psi_table(state, (a, b), pair_probe_count=pair_probe_count, table=table)

    tail = sigma * math.sqrt(2.0 * abs(math.log(level / 2.0)))

    entropy = 0.0
    if sigma > 0.0:
        z = np.geomspace(_MESH_FLOOR * sigma, sigma, quad.z_nodes)
        integrand = np.sqrt(np.log1p((b - a) / (2.0 * psi_inv(psi, z / 2.0))))
        entropy = float(integrate.trapezoid(integrand, z)) + z[0] * integrand[0]

    constant = 12.0 * entropy + tail
    logger.debug(
        "Band constant on (%g, %g): sigma = %.6g, entropy = %.6g, "
        "constant = %.6g.", a, b, sigma, entropy, constant
    )

    return BandResult(
        (a, b), sigma, constant, level, psi, x_probe_count, pair_probe_count
    )


def credible_band(
    state: EstimatorState, interval: tuple, eval_grid: EvalGrid,
    level: float = 0.05, epsilon: float = EPSILON,
    quad: Optional[QuadratureSpec] = None,
    result: Optional[BandResult] = None
) -> list:
    """
        Asymptotic credible band of level 1 - beta over the interval, with the
        constant half width b_n^(-1/2) max(v_n(I, beta), eps).

        :param state: The estimator state; n >= 1.

        :param interval: The interval (a, b), a < b.

        :param eval_grid: The evaluation points; inside the interval.

        :param level: The level beta, in (0, 1).

        :param epsilon: The floor of the band constant.

        :param quad: The quadrature specification.

        :param result: A band constant of the same state, interval and level
         to reuse; computed, if None.

        :return: The list of (x, lower, upper).
    """
    a, b = _validate_interval(interval)
    vproperties.validate_real_positive(
        epsilon, zero=False, name="epsilon", texcept=True
    )

    points = eval_grid.points
    if points[0] < a or points[-1] > b:
        raise ContractError(
            f"The evaluation grid must lie inside the interval ({a}, {b}). "
            f"Current range: [{points[0]}, {points[-1]}]."
        )

    result = result or band_constant(state, (a, b), level, quad)
    half = max(result.band_constant, epsilon) / math.sqrt(b_n(state.schedule, state.n))

    centers = plugin_pdf(state, points)
    return [
        (float(x), float(c - half), float(c + half))
        for x, c in zip(points, centers)
    ]
