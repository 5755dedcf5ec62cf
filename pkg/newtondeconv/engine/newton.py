"""
    File that contains the streaming recursion of the mixing pmf:

        g_{n+1} = (1 - a_{n+1}) g_n + a_{n+1} g_n(. | Y_{n+1}),

    where g_n(. | y) is the Bayes reweighting of g_n by the convolved kernel
    likelihoods of the observation y and a_n = (alpha / (alpha + n))^gamma.
    An update costs O(K) time and memory, independently of n.

    The state is immutable: update returns a new state, so a state may be read
    from several threads while a single writer advances the stream.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import logging
import math
import time

import numpy as np

from dataclasses import dataclass, field
from scipy import integrate
from typing import Iterable, Optional, Union

# User defined
import newtondeconv.validate.validate_arrays as varrays
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.errors import ContractError, DomainError
from newtondeconv.errors import NumericDegeneracyError
from newtondeconv.model.core import EvalGrid, MixingPmf, ParameterGrid, Points
from newtondeconv.model.core import mixture_pdf, weights_of
from newtondeconv.model.noise import NoiseModel, convolved_matrix, convolved_pdf

# ##############################################################################
# Global Variables
# ##############################################################################


logger = logging.getLogger(__name__)

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Classes
# ##############################################################################


@dataclass(frozen=True)
class LearningRateSchedule:
    """
        Learning rates a_n = (alpha / (alpha + n))^gamma, alpha > 0 and
        1/2 < gamma <= 1, so that sum a_n diverges and sum a_n^2 converges.
    """
    alpha: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        vproperties.validate_real_positive(
            self.alpha, zero=False, name="alpha", texcept=True
        )
        vproperties.validate_real_interval(
            self.gamma, 0.5, 1.0, closed=(False, True), name="gamma",
            texcept=True
        )

        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "gamma", float(self.gamma))


@dataclass(frozen=True)
class EstimatorState:
    """
        The state of the recursion after n observations: the current pmf over
        the grid, the learning-rate schedule and the noise law.
    """
    grid: ParameterGrid
    pmf: np.ndarray = field(repr=False)
    n: int
    schedule: LearningRateSchedule
    noise: NoiseModel

    def __post_init__(self):
        pmf = np.array(weights_of(self.grid, self.pmf), dtype=float)
        varrays.validate_pmf(pmf, texcept=True)
        vproperties.validate_int_positive(self.n, name="n", texcept=True)

        pmf.setflags(write=False)
        object.__setattr__(self, "pmf", pmf)
        object.__setattr__(self, "n", int(self.n))

    @property
    def mixing(self) -> MixingPmf:
        return MixingPmf(self.pmf)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EstimatorState):
            return NotImplemented

        return (
            self.grid == other.grid and np.array_equal(self.pmf, other.pmf)
            and self.n == other.n and self.schedule == other.schedule
            and self.noise == other.noise
        )


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'schedule' Functions
# ------------------------------------------------------------------------------


def learning_rate(schedule: LearningRateSchedule, n: int) -> float:
    """
        Learning rate of the n-th observation, (alpha / (alpha + n))^gamma.

        :param schedule: The learning-rate schedule.

        :param n: The 1-based index of the incoming observation.

        :return: The rate, in (0, 1).

        :raise ContractError: If n is not a positive integer.
    """
    vproperties.validate_int_positive(n, zero=False, name="n", texcept=True)

    return (schedule.alpha / (schedule.alpha + n)) ** schedule.gamma


def b_n(schedule: LearningRateSchedule, n: int) -> float:
    """
        Normalizer of the local central limit theorem,
        (2 gamma - 1) / alpha^(2 gamma) * n^(2 gamma - 1).

        :param schedule: The learning-rate schedule; gamma > 1/2.

        :param n: The number of observations; positive.

        :return: The normalizer.
    """
    vproperties.validate_int_positive(n, zero=False, name="n", texcept=True)
    if schedule.gamma <= 0.5:
        raise ContractError(
            f"The normalizer is degenerate for gamma <= 1/2. Current value: "
            f"{schedule.gamma}."
        )

    exponent = 2.0 * schedule.gamma - 1.0
    return exponent / schedule.alpha ** (2.0 * schedule.gamma) * n ** exponent


# ------------------------------------------------------------------------------
# 'state' Functions
# ------------------------------------------------------------------------------


def initial_state(
    grid: ParameterGrid, schedule: LearningRateSchedule, noise: NoiseModel,
    pmf: Optional[Union[MixingPmf, np.ndarray]] = None
) -> EstimatorState:
    """
        Gets the state before any observation, g_0 uniform over the grid
        unless given.

        :param grid: The parameter grid.

        :param schedule: The learning-rate schedule.

        :param noise: The noise model.

        :param pmf: The initial pmf; uniform, by default.

        :return: The state with n = 0.
    """
    weights = (
        MixingPmf.uniform(grid).weights if pmf is None else weights_of(grid, pmf)
    )

    return EstimatorState(grid, weights, 0, schedule, noise)


# ------------------------------------------------------------------------------
# 'update' Functions
# ------------------------------------------------------------------------------


def bayes_reweight(
    pmf: np.ndarray, likelihoods: np.ndarray, y: Optional[float] = None
) -> np.ndarray:
    """
        Bayes reweighting of the pmf by the likelihoods. The likelihoods are
        divided by their maximum first, which leaves the result unchanged.

        :param pmf: The prior weights.

        :param likelihoods: The likelihoods, aligned with the weights.

        :param y: The observation, only used in error messages.

        :return: The normalized posterior weights.

        :raise NumericDegeneracyError: If all the likelihoods underflow to
         zero or the posterior has no mass.
    """
    peak = likelihoods.max()
    if not (np.isfinite(peak) and peak > 0.0):
        raise NumericDegeneracyError(
            f"All the likelihoods of the observation underflow to zero; the "
            f"observation is too far from every atom. Current value: y = {y}."
        )

    posterior = pmf * (likelihoods / peak)
    mass = posterior.sum()
    if not mass > 0.0:
        raise NumericDegeneracyError(
            f"The posterior of the observation has no mass; the current pmf "
            f"vanishes where the likelihood does not. Current value: y = {y}."
        )

    return posterior / mass


def newton_step(pmf: np.ndarray, posterior: np.ndarray, rate: float) -> np.ndarray:
    """
        Convex combination (1 - rate) pmf + rate posterior, renormalized by
        its sum.

        :param pmf: The current weights.

        :param posterior: The reweighted weights.

        :param rate: The learning rate, in (0, 1).

        :return: The new weights.
    """
    weights = (1.0 - rate) * pmf + rate * posterior
    return weights / weights.sum()


def likelihood_row(state: EstimatorState, y: float) -> np.ndarray:
    """
        Gets the convolved kernel likelihoods of the observation under every
        atom of the grid.

        :param state: The estimator state.

        :param y: The observation.

        :return: The likelihood row.

        :raise DomainError: If y is not finite.
    """
    if not math.isfinite(y):
        raise DomainError(
            f"The observation must be finite. Current value: {y}."
        )

    return convolved_pdf(
        state.noise, state.grid.means, state.grid.variances, float(y)
    )


def posterior_reweight(state: EstimatorState, y: float) -> MixingPmf:
    """
        Bayes reweighting g_n(theta | y) of the current pmf by the convolved
        kernel likelihoods of y.

        :param state: The estimator state.

        :param y: The observation.

        :return: The reweighted pmf.
    """
    return MixingPmf(bayes_reweight(state.pmf, likelihood_row(state, y), y))


def update(state: EstimatorState, y: float) -> EstimatorState:
    """
        Advances the recursion by one observation. The input state is never
        modified, also when the update fails.

        :param state: The estimator state after n observations.

        :param y: The (n+1)-th observation.

        :return: The state after n + 1 observations.
    """
    posterior = bayes_reweight(state.pmf, likelihood_row(state, y), y)
    rate = learning_rate(state.schedule, state.n + 1)

    return EstimatorState(
        state.grid, newton_step(state.pmf, posterior, rate), state.n + 1,
        state.schedule, state.noise
    )


def batch_fit(
    state: EstimatorState, ys: Iterable[float], log_every: int = 0
) -> EstimatorState:
    """
        Fold of update over the observations, in order; identical to calling
        update once per observation.

        :param state: The initial state.

        :param ys: The observations.

        :param log_every: Log the progress every log_every observations; 0,
         never.

        :return: The final state.
    """
    start = time.perf_counter()
    count = 0
    for y in ys:
        state = update(state, float(y))
        count += 1

        if log_every and count % log_every == 0:
            logger.info("Processed %d observations; n = %d.", count, state.n)

    if count:
        logger.debug(
            "Fitted %d observations in %.3f s.", count,
            time.perf_counter() - start
        )

    return state


# ------------------------------------------------------------------------------
# 'density' Functions
# ------------------------------------------------------------------------------


def predictive_pdf(state: EstimatorState, y: Points) -> Points:
    """
        Predictive density f_n^(Y)(y) = sum_j k~(y | theta_j) g_n(theta_j).

        :param state: The estimator state.

        :param y: A real number or an array of real numbers.

        :return: The density at y; same shape as y.
    """
    value = convolved_matrix(state.noise, state.grid, y) @ state.pmf

    return float(value[0]) if np.ndim(y) == 0 else value


def plugin_pdf(state: EstimatorState, x: Points) -> Points:
    """
        Plug-in estimate f_n^(X)(x) = sum_j k(x | theta_j) g_n(theta_j) of the
        signal density.

        :param state: The estimator state.

        :param x: A real number or an array of real numbers.

        :return: The density at x; same shape as x.
    """
    return mixture_pdf(state.grid, state.pmf, x)


def estimate_grid(state: EstimatorState, eval_grid: EvalGrid) -> np.ndarray:
    """
        Gets the plug-in estimate at the points of the evaluation grid.
    """
    return plugin_pdf(state, eval_grid.points)


# ------------------------------------------------------------------------------
# 'distance' Functions
# ------------------------------------------------------------------------------


def sup_distance(p: Union[MixingPmf, np.ndarray], q: Union[MixingPmf, np.ndarray]) -> float:
    """
        Sup-norm distance between two pmfs over the same grid.
    """
    p = p.weights if isinstance(p, MixingPmf) else np.asarray(p)
    q = q.weights if isinstance(q, MixingPmf) else np.asarray(q)
    if p.shape != q.shape:
        raise ContractError(
            f"The pmfs are not aligned. Current shapes: {p.shape}, {q.shape}."
        )

    return float(np.max(np.abs(p - q)))


def l1_distance(x: np.ndarray, f: np.ndarray, g: np.ndarray) -> float:
    """
        L1 distance between two densities tabulated on the points x, by the
        trapezoid rule.
    """
    return float(integrate.trapezoid(np.abs(f - g), x))
