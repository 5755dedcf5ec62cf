"""
    File that contains the known additive-noise laws and the convolved kernel
    k~(y | theta) = (f_Z * k(. | theta))(y), the likelihood of a noisy
    observation under an atom.

    The Laplace law is parameterized by its standard deviation; the internal
    scale is b = std_dev / sqrt(2). The Gaussian-Laplace convolution is
    evaluated in closed form through scaled complementary error functions so
    that the exponential factors never overflow.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import enum
import math

import numpy as np

from dataclasses import dataclass
from scipy import integrate, special

# User defined
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.errors import ContractError, DomainError
from newtondeconv.model.core import ParameterGrid, Points, ThetaAtom
from newtondeconv.model.core import kernel_pdf

# ##############################################################################
# Global Variables
# ##############################################################################


_SQRT_2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Half width, in noise standard deviations, of the oracle integration range.
ORACLE_HALF_WIDTH = 12.0

# Smallest number of nodes accepted by the oracle.
ORACLE_MIN_NODES = 201

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Classes
# ##############################################################################


class NoiseFamily(str, enum.Enum):
    """
        The supported noise laws.
    """
    LAPLACE = "laplace"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class NoiseModel:
    """
        Zero mean additive noise law with the given standard deviation, in the
        same units as the signal.
    """
    family: NoiseFamily
    std_dev: float

    def __post_init__(self):
        try:
            family = NoiseFamily(self.family)

        except ValueError:
            raise ContractError(
                f"The noise family must be one of "
                f"{tuple(x.value for x in NoiseFamily)}. Current value: "
                f"{self.family}."
            ) from None

        if not vproperties.validate_real_positive(self.std_dev, zero=False):
            raise DomainError(
                f"The noise standard deviation must be a finite positive "
                f"number. Current value: {self.std_dev}."
            )

        object.__setattr__(self, "family", family)
        object.__setattr__(self, "std_dev", float(self.std_dev))

    @property
    def scale(self) -> float:
        """
            The Laplace scale b = std_dev / sqrt(2); the standard deviation for
            the Gaussian family.
        """
        if self.family is NoiseFamily.LAPLACE:
            return self.std_dev / _SQRT_2

        return self.std_dev

    @property
    def variance(self) -> float:
        return self.std_dev ** 2


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'pdf' Functions
# ------------------------------------------------------------------------------


def noise_pdf(noise: NoiseModel, z: Points) -> Points:
    """
        Density of the noise law.

        Laplace: exp(-sqrt(2 / sd^2) |z|) / sqrt(2 sd^2); Gaussian: the
        centered Gaussian density with variance sd^2.

        :param noise: The noise model.

        :param z: A real number or an array of real numbers.

        :return: The density at z; same shape as z.

        :raise DomainError: If z is not finite.
    """
    array = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(array)):
        raise DomainError(
            f"The noise density must be evaluated at finite points. Current "
            f"value: {z}."
        )

    if noise.family is NoiseFamily.LAPLACE:
        b = noise.scale
        value = np.exp(-np.abs(array) / b) / (2.0 * b)

    else:
        value = kernel_pdf(ThetaAtom(0.0, noise.variance), array)

    return float(value) if np.ndim(value) == 0 else value


def convolved_pdf(
    noise: NoiseModel, means: np.ndarray, variances: np.ndarray,
    y: np.ndarray
) -> np.ndarray:
    """
        Broadcasting evaluation of the convolved kernel for arrays of means,
        variances and observations.

        Gaussian noise adds the variances. Laplace noise with scale b and a
        Gaussian kernel with standard deviation s give, with u = y - mean,

            (1 / 4b) [E(t1, v/2b^2 - u/b) + E(t2, v/2b^2 + u/b)],
            t1 = (s/b - u/s) / sqrt(2), t2 = (s/b + u/s) / sqrt(2),

        where E(t, l) = exp(l) erfc(t) = exp(-u^2 / 2v) erfcx(t). The erfcx
        form is used for t >= 0 and the erfc form for t < 0, where l < 0.

        :param noise: The noise model.

        :param means: The means of the kernels.

        :param variances: The variances of the kernels.

        :param y: The observations.

        :return: The broadcast array of convolved densities.
    """
    u = y - means

    if noise.family is NoiseFamily.GAUSSIAN:
        total = variances + noise.variance
        return np.exp(-0.5 * u ** 2 / total) / (_SQRT_2PI * np.sqrt(total))

    # Laplace noise.
    b = noise.scale
    s = np.sqrt(variances)
    gauss = np.exp(-0.5 * u ** 2 / variances)
    shift = variances / (2.0 * b * b)

    value = np.zeros(np.broadcast(u, s).shape)
    for sign in (-1.0, 1.0):
        t = (s / b + sign * u / s) / _SQRT_2
        lin = shift + sign * u / b

        # Each branch is evaluated on the half line where it is stable.
        value += np.where(
            t >= 0.0,
            gauss * special.erfcx(np.maximum(t, 0.0)),
            np.exp(np.minimum(lin, 0.0)) * special.erfc(np.minimum(t, 0.0)),
        )

    return value / (4.0 * b)


def convolved_kernel_pdf(noise: NoiseModel, theta: ThetaAtom, y: Points) -> Points:
    """
        Convolved kernel k~(y | theta), the density of an observation y = x + z
        with x drawn from the atom theta and z from the noise law.

        :param noise: The noise model.

        :param theta: The atom.

        :param y: A real number or an array of real numbers.

        :return: The density at y; same shape as y.

        :raise DomainError: If y is not finite.
    """
    array = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(array)):
        raise DomainError(
            f"The convolved kernel must be evaluated at finite points. Current "
            f"value: {y}."
        )

    value = convolved_pdf(noise, theta.mean, theta.variance, array)

    return float(value) if np.ndim(value) == 0 else value


def convolved_matrix(noise: NoiseModel, grid: ParameterGrid, y: Points) -> np.ndarray:
    """
        Gets the table of the convolved kernels of every atom at every
        observation.

        :param noise: The noise model.

        :param grid: The parameter grid.

        :param y: A real number or an array of real numbers.

        :return: The array of shape (len(y), len(grid)).
    """
    array = np.atleast_1d(np.asarray(y, dtype=float))
    if not np.all(np.isfinite(array)):
        raise DomainError(
            f"The convolved kernel must be evaluated at finite points. Current "
            f"value: {y}."
        )

    return convolved_pdf(
        noise, grid.means[None, :], grid.variances[None, :], array[:, None]
    )


def numeric_convolution_oracle(
    noise: NoiseModel, theta: ThetaAtom, y: float, nodes: int
) -> float:
    """
        Reference evaluation of the convolved kernel: composite Simpson
        quadrature of k(y - z | theta) f_Z(z) over z in [-12 sd, 12 sd]. With
        an odd number of nodes z = 0, the kink of the Laplace density, is a
        panel boundary. Not used in the hot path.

        :param noise: The noise model.

        :param theta: The atom.

        :param y: The observation.

        :param nodes: The number of quadrature nodes; at least 201.

        :return: The approximate convolved density at y.
    """
    vproperties.validate_int_positive(nodes, name="nodes", texcept=True)
    if nodes < ORACLE_MIN_NODES:
        raise ContractError(
            f"The oracle needs at least {ORACLE_MIN_NODES} nodes. Current "
            f"value: {nodes}."
        )

    vproperties.validate_real_finite(y, name="y", texcept=True)

    half = ORACLE_HALF_WIDTH * noise.std_dev
    z = np.linspace(-half, half, nodes)
    values = kernel_pdf(theta, y - z) * noise_pdf(noise, z)

    return float(integrate.simpson(values, x=z))


# ------------------------------------------------------------------------------
# 'sample' Functions
# ------------------------------------------------------------------------------


def noise_samples(noise: NoiseModel, rng: np.random.Generator, size: int) -> np.ndarray:
    """
        Draws from the noise law: Laplace by inversion of its cumulative
        distribution function, Gaussian by scaling standard normal draws.

        :param noise: The noise model.

        :param rng: The generator; owned by the caller.

        :param size: The number of draws.

        :return: The array of draws.
    """
    if noise.family is NoiseFamily.GAUSSIAN:
        return noise.std_dev * rng.standard_normal(size)

    # Inverse cdf; p = 0 is mapped to the smallest positive double.
    b = noise.scale
    p = np.maximum(rng.random(size), np.finfo(float).tiny)

    return np.where(
        p < 0.5, b * np.log(2.0 * p), -b * np.log(2.0 * (1.0 - p))
    )


def noise_sample(noise: NoiseModel, rng: np.random.Generator) -> float:
    """
        Draws one value from the noise law.

        :param noise: The noise model.

        :param rng: The generator; owned by the caller.

        :return: The draw.
    """
    return float(noise_samples(noise, rng, 1)[0])
