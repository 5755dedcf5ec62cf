"""
    File that contains the finite-grid mixture model: the parameter atoms of
    the Gaussian signal kernel, the grid of atoms, the mixing probability mass
    functions over the grid and the evaluation of the mixture density.

    Atoms are ordered row-major over (mean, variance): the variance runs
    fastest. The order is part of the checkpoint contract.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import logging
import math

import numpy as np

from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

# User defined
import newtondeconv.validate.validate_arrays as varrays
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.errors import ContractError, DomainError

# ##############################################################################
# Global Variables
# ##############################################################################


logger = logging.getLogger(__name__)

# Normalization constant of the Gaussian density.
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Largest number of entries of a kernel table built in one go.
_BLOCK_ENTRIES = 1 << 22

# Type of the points where densities are evaluated.
Points = Union[float, np.ndarray]

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Private Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Functions
# ##############################################################################


def _check_points(x: Points) -> np.ndarray:
    """
        Converts the evaluation points into a float array and checks they are
        finite.

        :param x: A real number or an array of real numbers.

        :return: The points as a float numpy array, same shape as the input.

        :raise DomainError: If any of the points is not finite.
    """
    array = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(array)):
        raise DomainError(
            f"The evaluation points must be finite. Current value: {x}."
        )

    return array


def _range_values(low: float, high: float, step: float, name: str) -> np.ndarray:
    """
        Gets the uniform grid low, low + step, ..., high.

        :param low: The first value.

        :param high: The last value; must be reachable from low in a whole
         number of steps, within 1e-9 steps.

        :param step: The positive step.

        :param name: The name of the range, for error messages.

        :return: The values of the range.
    """
    vproperties.validate_real_finite(low, name=f"{name}_min", texcept=True)
    vproperties.validate_real_finite(high, name=f"{name}_max", texcept=True)
    vproperties.validate_real_positive(
        step, zero=False, name=f"{name}_step", texcept=True
    )

    if high < low:
        raise ContractError(
            f"The {name} range is empty. Current values: {name}_min = {low}, "
            f"{name}_max = {high}."
        )

    # Number of whole steps; counting avoids the drift of np.arange.
    steps = (high - low) / step
    count = round(steps)
    if abs(steps - count) > 1e-9 * max(1.0, steps):
        raise ContractError(
            f"The {name} range [{low}, {high}] is not a whole number of steps "
            f"of size {step}. Current number of steps: {steps}."
        )

    return low + step * np.arange(count + 1, dtype=float)


# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Classes
# ##############################################################################


@dataclass(frozen=True)
class ThetaAtom:
    """
        Parameter of the Gaussian signal kernel: the mean and the variance, in
        signal units.
    """
    mean: float
    variance: float

    def __post_init__(self):
        if not math.isfinite(self.mean):
            raise DomainError(
                f"The mean of the atom must be finite. Current value: "
                f"{self.mean}."
            )

        if not (math.isfinite(self.variance) and self.variance > 0):
            raise DomainError(
                f"The variance of the atom must be a finite positive number. "
                f"Current value: {self.variance}."
            )


class ParameterGrid:
    """
        Finite, ordered set of distinct kernel parameters with counting
        measure semantics. The means and variances are kept as read-only
        numpy arrays aligned with the atoms.
    """

    def __init__(self, means: Sequence[float], variances: Sequence[float]):
        """
            Builds the grid from the aligned means and variances of the atoms.

            :param means: The means of the atoms.

            :param variances: The variances of the atoms; strictly positive.

            :raise ContractError: If the grid is empty, misaligned or has
             repeated atoms.

            :raise DomainError: If a mean is not finite or a variance is not
             positive.
        """
        means = np.array(means, dtype=float)
        variances = np.array(variances, dtype=float)

        if means.ndim != 1 or means.shape != variances.shape or not means.size:
            raise ContractError(
                f"The means and variances must be nonempty aligned one "
                f"dimensional arrays. Current shapes: {means.shape}, "
                f"{variances.shape}."
            )

        if not np.all(np.isfinite(means)):
            raise DomainError("The means of the atoms must be finite.")

        if not (np.all(np.isfinite(variances)) and np.all(variances > 0)):
            raise DomainError(
                f"The variances of the atoms must be finite positive numbers. "
                f"Current minimum: {variances.min()}."
            )

        # Index of every atom; repeated atoms collapse.
        index = {
            (m, v): j for j, (m, v) in enumerate(zip(means.tolist(),
                                                     variances.tolist()))
        }
        if len(index) != means.size:
            raise ContractError(
                f"The atoms of the grid must be pairwise distinct. Number of "
                f"atoms: {means.size}, distinct: {len(index)}."
            )

        means.setflags(write=False)
        variances.setflags(write=False)

        self._means = means
        self._variances = variances
        self._index = index

    # --------------------------------------------------------------------------
    # Properties
    # --------------------------------------------------------------------------

    @property
    def means(self) -> np.ndarray:
        return self._means

    @property
    def variances(self) -> np.ndarray:
        return self._variances

    @property
    def atoms(self) -> tuple:
        return tuple(ThetaAtom(m, v) for m, v in zip(self._means.tolist(),
                                                     self._variances.tolist()))

    # --------------------------------------------------------------------------
    # Methods
    # --------------------------------------------------------------------------

    def index(self, atom: ThetaAtom) -> int:
        """
            Gets the position of the atom in the grid.

            :param atom: The atom to look up.

            :return: The position of the atom.

            :raise KeyError: If the atom is not in the grid.
        """
        return self._index[(float(atom.mean), float(atom.variance))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParameterGrid):
            return NotImplemented

        return (
            np.array_equal(self._means, other._means)
            and np.array_equal(self._variances, other._variances)
        )

    def __getitem__(self, j: int) -> ThetaAtom:
        return ThetaAtom(float(self._means[j]), float(self._variances[j]))

    def __iter__(self) -> Iterator[ThetaAtom]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return self._means.size

    def __repr__(self) -> str:
        return (
            f"ParameterGrid(size={len(self)}, means=[{self._means.min()}, "
            f"{self._means.max()}], variances=[{self._variances.min()}, "
            f"{self._variances.max()}])"
        )


@dataclass(frozen=True)
class MixingPmf:
    """
        Probability mass function over a parameter grid, aligned with the
        atoms of the grid.
    """
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float)
        varrays.validate_pmf(weights, texcept=True)
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, grid: ParameterGrid) -> "MixingPmf":
        """
            Gets the uniform pmf over the grid.
        """
        size = len(grid)
        return cls(np.full(size, 1.0 / size))

    @classmethod
    def degenerate(cls, grid: ParameterGrid, j: int) -> "MixingPmf":
        """
            Gets the point mass at the j-th atom of the grid.
        """
        weights = np.zeros(len(grid))
        weights[j] = 1.0
        return cls(weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixingPmf):
            return NotImplemented

        return np.array_equal(self.weights, other.weights)

    def __len__(self) -> int:
        return self.weights.size


@dataclass(frozen=True)
class EvalGrid:
    """
        Strictly increasing finite points where densities are reported.
    """
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        varrays.validate_increasing(points, texcept=True)
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @classmethod
    def linspace(cls, low: float, high: float, count: int) -> "EvalGrid":
        """
            Gets count equally spaced points from low to high, both included.
        """
        vproperties.validate_int_positive(
            count, zero=False, name="count", texcept=True
        )
        return cls(np.linspace(low, high, count))


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'build' Functions
# ------------------------------------------------------------------------------


def build_grid(
    mean_min: float, mean_max: float, mean_step: float,
    var_min: float, var_max: float, var_step: float
) -> ParameterGrid:
    """
        Builds the Cartesian product of a uniform mean range and a uniform
        variance range, ordered row-major over (mean, variance).

        :param mean_min: The smallest mean.

        :param mean_max: The largest mean.

        :param mean_step: The step between consecutive means.

        :param var_min: The smallest variance; must be positive.

        :param var_max: The largest variance.

        :param var_step: The step between consecutive variances.

        :return: The parameter grid.
    """
    means = _range_values(mean_min, mean_max, mean_step, "mean")
    variances = _range_values(var_min, var_max, var_step, "var")

    grid = ParameterGrid(
        np.repeat(means, variances.size), np.tile(variances, means.size)
    )
    logger.debug(
        "Built a %d x %d parameter grid: %r.", means.size, variances.size, grid
    )

    return grid


def desk_grid() -> ParameterGrid:
    """
        Gets the desk-scale grid: means step 0.5 on [-10, 10] and variances
        step 0.25 on [0.25, 4], 656 atoms.
    """
    return build_grid(-10.0, 10.0, 0.5, 0.25, 4.0, 0.25)


def reference_grid(mean_step: float = 0.5) -> ParameterGrid:
    """
        Gets the large reference grid: means on [-40, 40] and variances step
        0.01 on [0.01, 5]. With the default mean step the grid has
        161 x 500 = 80500 atoms; mean_step=0.1 gives 801 x 500 atoms.

        :param mean_step: The step of the means.

        :return: The parameter grid.
    """
    return build_grid(-40.0, 40.0, mean_step, 0.01, 5.0, 0.01)


# ------------------------------------------------------------------------------
# 'kernel' Functions
# ------------------------------------------------------------------------------


def kernel_pdf(theta: ThetaAtom, x: Points) -> Points:
    """
        Gaussian density with mean theta.mean and variance theta.variance.

        :param theta: The parameter of the kernel.

        :param x: A real number or an array of real numbers.

        :return: The density at x; same shape as x.

        :raise DomainError: If x is not finite.
    """
    x = _check_points(x)
    z2 = (x - theta.mean) ** 2 / theta.variance
    value = np.exp(-0.5 * z2) / (_SQRT_2PI * math.sqrt(theta.variance))

    return float(value) if value.ndim == 0 else value


def kernel_pdf_deriv(theta: ThetaAtom, x: Points) -> Points:
    """
        Derivative in x of the Gaussian kernel,
        -((x - mean) / variance) * kernel_pdf(theta, x).

        :param theta: The parameter of the kernel.

        :param x: A real number or an array of real numbers.

        :return: The derivative at x; same shape as x.
    """
    x = _check_points(x)
    value = -((x - theta.mean) / theta.variance) * kernel_pdf(theta, x)

    return float(value) if np.ndim(value) == 0 else value


def kernel_matrix(grid: ParameterGrid, x: Points) -> np.ndarray:
    """
        Gets the table of the signal kernels of every atom at every point.

        :param grid: The parameter grid.

        :param x: A real number or an array of real numbers.

        :return: The array of shape (len(x), len(grid)) with the kernel of the
         j-th atom at the i-th point.
    """
    x = np.atleast_1d(_check_points(x))[:, None]
    variances = grid.variances[None, :]

    return (
        np.exp(-0.5 * (x - grid.means[None, :]) ** 2 / variances)
        / (_SQRT_2PI * np.sqrt(variances))
    )


def kernel_deriv_bound(grid: ParameterGrid, low: float, high: float) -> float:
    """
        Supremum of |kernel_pdf_deriv| over [low, high] and all the atoms of
        the grid. The absolute derivative of a Gaussian kernel increases from
        the mean to mean +/- sd and decreases beyond, so the supremum over the
        interval is attained at the interval ends or at mean +/- sd clipped to
        the interval.

        :param grid: The parameter grid.

        :param low: The lower end of the interval.

        :param high: The upper end of the interval.

        :return: The supremum.
    """
    sds = np.sqrt(grid.variances)
    candidates = np.stack([
        np.full(len(grid), low),
        np.full(len(grid), high),
        np.clip(grid.means - sds, low, high),
        np.clip(grid.means + sds, low, high),
    ])

    # Absolute derivative at every candidate of every atom.
    u = candidates - grid.means
    values = (
        np.abs(u) / grid.variances
        * np.exp(-0.5 * u ** 2 / grid.variances) / (_SQRT_2PI * sds)
    )

    return float(values.max())


# ------------------------------------------------------------------------------
# 'mixture' Functions
# ------------------------------------------------------------------------------


def weights_of(grid: ParameterGrid, pmf: Union[MixingPmf, np.ndarray]) -> np.ndarray:
    """
        Gets the weight array of the pmf, checking it is aligned with the grid.

        :param grid: The parameter grid.

        :param pmf: A MixingPmf or a weight array.

        :return: The weight array.

        :raise ContractError: If the pmf and the grid are misaligned.
    """
    weights = pmf.weights if isinstance(pmf, MixingPmf) else np.asarray(pmf)
    if weights.ndim != 1 or weights.shape[0] != len(grid):
        raise ContractError(
            f"The pmf is not aligned with the grid. Grid size: {len(grid)}, "
            f"pmf shape: {weights.shape}."
        )

    return weights


def mixture_pdf(
    grid: ParameterGrid, pmf: Union[MixingPmf, np.ndarray], x: Points
) -> Points:
    """
        Mixture density sum_j pmf[j] * kernel_pdf(atoms[j], x).

        :param grid: The parameter grid.

        :param pmf: The mixing weights, aligned with the grid.

        :param x: A real number or an array of real numbers.

        :return: The density at x; same shape as x.
    """
    weights = weights_of(grid, pmf)
    points = np.atleast_1d(_check_points(x))

    # Blocks of points keep the kernel table below _BLOCK_ENTRIES entries.
    block = max(1, _BLOCK_ENTRIES // len(grid))
    value = np.concatenate([
        kernel_matrix(grid, points[i:i + block]) @ weights
        for i in range(0, points.size, block)
    ]) if points.size else np.empty(0)

    return float(value[0]) if np.ndim(x) == 0 else value
