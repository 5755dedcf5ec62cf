"""
    File that contains the quadrature contract of the uncertainty module: the
    truncation window and node counts of the integrals over y, the composite
    Simpson weights, and the table of conditional plug-in densities
    f_n(x | y) at the y-nodes.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import logging
import math

import numpy as np

from dataclasses import dataclass

# User defined
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.engine.newton import EstimatorState
from newtondeconv.errors import ContractError, QuadratureWindowError
from newtondeconv.model.core import Points, kernel_matrix
from newtondeconv.model.noise import NoiseFamily, convolved_matrix

# ##############################################################################
# Global Variables
# ##############################################################################


logger = logging.getLogger(__name__)

# Smallest predictive mass the y-window must capture.
MASS_TOLERANCE = 1e-8

# Window margin in standard deviations of the convolved kernels.
WINDOW_SDS = 10.0

# Default node counts.
Y_NODES = 2001
Z_NODES = 256

# Smallest number of y-nodes per standard deviation of the narrowest
# convolved kernel in the default quadrature.
NODES_PER_SD = 8

# Largest number of entries of a likelihood block.
_BLOCK_ENTRIES = 1 << 22

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Classes
# ##############################################################################


@dataclass(frozen=True)
class QuadratureSpec:
    """
        Truncation window [y_low, y_high] and odd number of composite Simpson
        nodes of the integrals over y, and the number of nodes of the graded
        mesh of the entropy integral.
    """
    y_low: float
    y_high: float
    y_nodes: int = Y_NODES
    z_nodes: int = Z_NODES

    def __post_init__(self):
        vproperties.validate_real_finite(self.y_low, name="y_low", texcept=True)
        vproperties.validate_real_finite(self.y_high, name="y_high", texcept=True)
        vproperties.validate_int_positive(self.y_nodes, name="y_nodes", texcept=True)
        vproperties.validate_int_positive(self.z_nodes, name="z_nodes", texcept=True)

        if not self.y_low < self.y_high:
            raise ContractError(
                f"The y-window must satisfy y_low < y_high. Current values: "
                f"{self.y_low}, {self.y_high}."
            )

        if self.y_nodes < 401 or self.y_nodes % 2 == 0:
            raise ContractError(
                f"The number of y-nodes must be odd and at least 401. Current "
                f"value: {self.y_nodes}."
            )

        if self.z_nodes < 256:
            raise ContractError(
                f"The number of z-nodes must be at least 256. Current value: "
                f"{self.z_nodes}."
            )

    def nodes(self) -> tuple:
        """
            Gets the y-nodes and their composite Simpson weights,
            h/3 (1, 4, 2, 4, ..., 2, 4, 1).
        """
        y = np.linspace(self.y_low, self.y_high, self.y_nodes)
        h = (self.y_high - self.y_low) / (self.y_nodes - 1)

        weights = np.full(self.y_nodes, 2.0)
        weights[1::2] = 4.0
        weights[0] = weights[-1] = 1.0

        return y, weights * h / 3.0


class ConditionalTable:
    """
        Quadrature table of a frozen state: the predictive density f_n^(Y) at
        the y-nodes, checked to capture at least 1 - 1e-8 of the predictive
        mass, and the conditional plug-in densities f_n^(X)(x | y) on demand.
    """

    def __init__(self, state: EstimatorState, quad: QuadratureSpec):
        """
            :param state: The estimator state.

            :param quad: The quadrature specification.

            :raise QuadratureWindowError: If the window fails the mass check.
        """
        self.state = state
        self.quad = quad
        self.y, self.weights = quad.nodes()

        # Rows of y per likelihood block.
        self._rows = max(1, _BLOCK_ENTRIES // len(state.grid))

        self.predictive = np.concatenate([
            block @ state.pmf for _, block in self._likelihood_blocks()
        ])

        # Mass check.
        self.mass = float(self.weights @ self.predictive)
        if self.mass < 1.0 - MASS_TOLERANCE:
            raise QuadratureWindowError(
                f"The y-window [{quad.y_low}, {quad.y_high}] captures a "
                f"predictive mass of {self.mass!r}, below "
                f"1 - {MASS_TOLERANCE}. Widen the window or add nodes."
            )

        logger.debug(
            "Quadrature window [%g, %g] with %d nodes captures mass %.12f.",
            quad.y_low, quad.y_high, quad.y_nodes, self.mass
        )

    def _likelihood_blocks(self):
        """
            Yields the slices of y-nodes with their convolved kernel tables.
        """
        state = self.state
        for i in range(0, self.y.size, self._rows):
            rows = slice(i, i + self._rows)
            yield rows, convolved_matrix(state.noise, state.grid, self.y[rows])

    @property
    def density_weights(self) -> np.ndarray:
        """
            The Simpson weights times the predictive density, the quadrature
            weights of integrals against f_n^(Y)(y) dy.
        """
        return self.weights * self.predictive

    def conditional(self, x: Points) -> np.ndarray:
        """
            Gets the conditional plug-in densities at the y-nodes.

            :param x: A real number or an array of real numbers.

            :return: The array of shape (y_nodes, len(x)) with
             f_n^(X)(x_a | y_i).
        """
        kernels = kernel_matrix(self.state.grid, x).T
        table = np.empty((self.y.size, kernels.shape[1]))

        for rows, block in self._likelihood_blocks():
            peak = block.max(axis=1, keepdims=True)
            posterior = np.divide(
                block, peak, out=np.zeros_like(block), where=peak > 0.0
            ) * self.state.pmf

            # Rows without mass carry no predictive weight; they keep the pmf.
            mass = posterior.sum(axis=1, keepdims=True)
            posterior = np.where(
                mass > 0.0, posterior / np.where(mass > 0.0, mass, 1.0),
                self.state.pmf
            )
            table[rows] = posterior @ kernels

        return table


# ##############################################################################
# Functions
# ##############################################################################


def default_quadrature(
    state: EstimatorState, y_nodes: int = None, z_nodes: int = Z_NODES
) -> QuadratureSpec:
    """
        Gets the default quadrature of a state. The window runs from the
        smallest mean - margin to the largest mean + margin over the atoms,
        with margin = 10 sqrt(variance + noise variance), plus 10 Laplace
        scales for Laplace noise, whose convolved tails decay like
        exp(-|u| / b). Unless given, the number of y-nodes puts at least
        8 nodes per standard deviation of the narrowest convolved kernel,
        and never fewer than 2001.

        :param state: The estimator state.

        :param y_nodes: The number of y-nodes; automatic, by default.

        :param z_nodes: The number of nodes of the entropy integral.

        :return: The quadrature specification.
    """
    grid, noise = state.grid, state.noise

    margin = WINDOW_SDS * np.sqrt(grid.variances + noise.variance)
    if noise.family is NoiseFamily.LAPLACE:
        margin = margin + WINDOW_SDS * noise.scale

    low = float(np.min(grid.means - margin))
    high = float(np.max(grid.means + margin))

    if y_nodes is None:
        narrowest = math.sqrt(float(grid.variances.min()) + noise.variance)
        intervals = math.ceil(NODES_PER_SD * (high - low) / narrowest)
        y_nodes = max(Y_NODES, intervals + 1 + intervals % 2)

    return QuadratureSpec(low, high, y_nodes, z_nodes)
