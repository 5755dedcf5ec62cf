"""
    File that contains the Monte Carlo calibration of the exponent gamma of the
    learning rates (alpha / (alpha + n))^gamma.

    For every gamma of a grid, a direct recursion that observes the signal X
    and a noisy recursion that observes Y = X + Z are run side by side on a
    coupled simulation, and the logarithmic gap between the sizes of their
    updates at the sampled atom is matched against (1 - gamma) log(1 + i/alpha).
    The calibrated gamma minimizes the sum of the squared mismatches.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import logging
import math

import numpy as np

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

# User defined
import newtondeconv.validate.validate_arrays as varrays
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.engine.newton import EstimatorState, LearningRateSchedule
from newtondeconv.engine.newton import bayes_reweight, initial_state, learning_rate
from newtondeconv.engine.newton import likelihood_row, newton_step, sup_distance
from newtondeconv.engine.newton import update
from newtondeconv.errors import CalibrationError, ContractError
from newtondeconv.model.core import MixingPmf, ParameterGrid, desk_grid
from newtondeconv.model.core import kernel_matrix, weights_of
from newtondeconv.model.noise import NoiseModel, noise_sample
from newtondeconv.synth.rng import make_rng

# ##############################################################################
# Global Variables
# ##############################################################################


logger = logging.getLogger(__name__)

# Largest share of undefined log terms of a run.
SKIP_TOLERANCE = 0.05

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Private Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


def _direct_posterior(grid: ParameterGrid, pmf: np.ndarray, x: float) -> np.ndarray:
    """
        Bayes reweighting of the pmf by the signal kernel likelihoods of x.
    """
    return bayes_reweight(pmf, kernel_matrix(grid, x)[0], x)


def _direct_rate(alpha: float, i: int) -> float:
    return alpha / (alpha + i)


def _sample_atom(pmf: np.ndarray, rng: np.random.Generator) -> int:
    """
        Draws the index of an atom with probabilities pmf.
    """
    cumulative = np.cumsum(pmf)
    j = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))

    return min(j, pmf.size - 1)


# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Classes
# ##############################################################################


@dataclass(frozen=True)
class CalibrationConfig:
    """
        Inputs of the calibration. The initial pmf g0 defaults to the uniform
        pmf over the grid and must be strictly positive.
    """
    noise: NoiseModel
    gamma_grid: Optional[tuple] = None
    horizon: int = 1000
    alpha: float = 1.0
    grid: ParameterGrid = field(default_factory=desk_grid, repr=False)
    g0: Optional[Union[MixingPmf, np.ndarray]] = field(default=None, repr=False)
    seed: int = 0

    def __post_init__(self):
        gammas = default_gamma_grid() if self.gamma_grid is None else self.gamma_grid
        gammas = tuple(float(gamma) for gamma in gammas)

        if not gammas:
            raise ContractError("The gamma grid must not be empty.")

        for gamma in gammas:
            vproperties.validate_real_interval(
                gamma, 0.5, 1.0, closed=(False, True), name="gamma_grid",
                texcept=True
            )

        if any(b <= a for a, b in zip(gammas, gammas[1:])):
            raise ContractError(
                f"The gamma grid must be strictly increasing. Current value: "
                f"{gammas}."
            )

        vproperties.validate_int_positive(
            self.horizon, zero=False, name="horizon", texcept=True
        )
        vproperties.validate_real_positive(
            self.alpha, zero=False, name="alpha", texcept=True
        )
        vproperties.validate_int_positive(self.seed, name="seed", texcept=True)

        g0 = (
            MixingPmf.uniform(self.grid).weights if self.g0 is None
            else np.array(weights_of(self.grid, self.g0), dtype=float)
        )
        varrays.validate_pmf(g0, texcept=True)
        if not np.all(g0 > 0.0):
            raise ContractError("The initial pmf must be strictly positive.")

        g0.setflags(write=False)
        object.__setattr__(self, "gamma_grid", gammas)
        object.__setattr__(self, "g0", g0)


@dataclass(frozen=True)
class GammaScore:
    """
        Objective of one gamma and the number of undefined log terms skipped.
    """
    gamma: float
    score: float
    skipped: int


# ##############################################################################
# Functions
# ##############################################################################


def default_gamma_grid(step: float = 0.001) -> tuple:
    """
        Gets the grid {0.5 + step, 0.5 + 2 step, ..., 1}.

        :param step: The spacing; must divide 1/2. 0.001, by default.

        :return: The increasing tuple of exponents.
    """
    vproperties.validate_real_interval(
        step, 0.0, 0.5, closed=(False, True), name="step", texcept=True
    )

    count = round(0.5 / step)
    if not math.isclose(count * step, 0.5, rel_tol=1e-9):
        raise ContractError(
            f"The step of the gamma grid must divide 1/2. Current value: {step}."
        )

    return tuple(round(0.5 + k * step, 12) for k in range(1, count + 1))


def score_gamma(config: CalibrationConfig, index: int) -> GammaScore:
    """
        Runs the coupled simulation of the index-th gamma of the grid. At step
        i, an atom theta_i is drawn from the noisy pmf, X_i from its kernel,
        Z_i from the noise law and Y_i = X_i + Z_i; the term

            Delta_i = log|g(theta_i | X_i) - g(theta_i)|
                      - log|g~(theta_i | Y_i) - g~(theta_i)|

        is taken before both recursions advance, the direct one with rate
        alpha / (alpha + i) and the noisy one with (alpha / (alpha + i))^gamma.
        The generator is keyed by (seed, index), so the score does not depend
        on the order in which the gammas are evaluated.

        :param config: The calibration configuration.

        :param index: The index of the gamma in the grid.

        :return: The sum of (Delta_i - (1 - gamma) log(1 + i / alpha))^2 over
         the defined terms and the number of skipped terms.

        :raise CalibrationError: If more than 5% of the terms are undefined.
    """
    gamma = config.gamma_grid[index]
    rng = make_rng(config.seed, index)
    grid, noise, alpha = config.grid, config.noise, config.alpha

    direct = np.array(config.g0)
    state = initial_state(grid, LearningRateSchedule(alpha, gamma), noise, config.g0)

    score, skipped = 0.0, 0
    for i in range(1, config.horizon + 1):
        j = _sample_atom(state.pmf, rng)
        x = grid.means[j] + math.sqrt(grid.variances[j]) * rng.standard_normal()
        y = x + noise_sample(noise, rng)

        direct_posterior = _direct_posterior(grid, direct, x)
        noisy_posterior = bayes_reweight(state.pmf, likelihood_row(state, y), y)

        # Sizes of the updates at the sampled atom.
        direct_gap = abs(direct_posterior[j] - direct[j])
        noisy_gap = abs(noisy_posterior[j] - state.pmf[j])

        if direct_gap > 0.0 and noisy_gap > 0.0:
            delta = math.log(direct_gap) - math.log(noisy_gap)
            score += (delta - (1.0 - gamma) * math.log1p(i / alpha)) ** 2
        else:
            skipped += 1

        direct = newton_step(direct, direct_posterior, _direct_rate(alpha, i))
        state = EstimatorState(
            grid,
            newton_step(state.pmf, noisy_posterior, learning_rate(state.schedule, i)),
            i, state.schedule, noise
        )

    if skipped > SKIP_TOLERANCE * config.horizon:
        raise CalibrationError(
            f"{skipped} of {config.horizon} calibration terms are undefined "
            f"for gamma = {gamma}, above the tolerance of "
            f"{SKIP_TOLERANCE:.0%}. The parameter grid may be too coarse."
        )

    if skipped:
        logger.debug("Skipped %d terms for gamma = %g.", skipped, gamma)

    return GammaScore(gamma, score, skipped)


def calibrate_gamma(config: CalibrationConfig, workers: int = 1) -> tuple:
    """
        Calibrates gamma over the grid of the configuration. Ties of the
        objective are broken toward the larger gamma.

        :param config: The calibration configuration.

        :param workers: The number of threads evaluating the gammas. The
         result does not depend on it. 1, by default.

        :return: The calibrated gamma and the list of (gamma, score).
    """
    vproperties.validate_int_positive(workers, zero=False, name="workers", texcept=True)

    indexes = range(len(config.gamma_grid))
    if workers == 1:
        scores = [score_gamma(config, index) for index in indexes]

    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            scores = list(executor.map(lambda index: score_gamma(config, index), indexes))

    # Last minimum, so that ties go to the larger gamma.
    values = np.array([result.score for result in scores])
    best = int(values.size - 1 - np.argmin(values[::-1]))
    gamma_hat = scores[best].gamma

    logger.info(
        "Calibrated gamma = %g over %d values (horizon %d, seed %d).",
        gamma_hat, len(scores), config.horizon, config.seed
    )

    return gamma_hat, [(result.gamma, result.score) for result in scores]


def run_direct_and_noisy(
    grid: ParameterGrid, schedule: LearningRateSchedule, noise: NoiseModel,
    xs: Sequence[float], zs: Sequence[float],
    g0: Optional[Union[MixingPmf, np.ndarray]] = None,
    checkpoints: Sequence[int] = ()
) -> tuple:
    """
        Runs the direct recursion on the signals xs, with rates
        alpha / (alpha + i), and the noisy recursion on ys = xs + zs, with the
        rates of the schedule, from the same initial pmf.

        :param grid: The parameter grid.

        :param schedule: The schedule of the noisy recursion.

        :param noise: The noise model.

        :param xs: The signal stream.

        :param zs: The noise stream, aligned with xs.

        :param g0: The initial pmf; uniform, by default.

        :param checkpoints: The numbers of observations at which the sup-norm
         distance of the two pmfs is recorded.

        :return: The direct pmf, the noisy state and the list of
         (n, distance) at the checkpoints.
    """
    xs = np.asarray(xs, dtype=float)
    zs = np.asarray(zs, dtype=float)
    if xs.shape != zs.shape or xs.ndim != 1:
        raise ContractError(
            f"The signal and noise streams must be aligned. Current shapes: "
            f"{xs.shape}, {zs.shape}."
        )

    state = initial_state(grid, schedule, noise, g0)
    direct = np.array(state.pmf)
    marks = set(checkpoints)

    distances = []
    for i, (x, z) in enumerate(zip(xs, zs), start=1):
        direct = newton_step(
            direct, _direct_posterior(grid, direct, x),
            _direct_rate(schedule.alpha, i)
        )
        state = update(state, x + z)

        if i in marks:
            distances.append((i, sup_distance(direct, state.pmf)))

    return direct, state, distances
