"""
    File that contains the functions for the validation of one dimensional
    numpy arrays: weight vectors, evaluation grids and observation streams.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General.
import numpy as np

from typing import Any

# User defined.
from newtondeconv.errors import ContractError

# ##############################################################################
# Global Variables
# ##############################################################################


# Tolerance on the total mass of a probability mass function.
PMF_TOLERANCE = 1e-12

# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'validate' Functions
# ------------------------------------------------------------------------------


def validate_ndarray(array: Any, texcept: bool = True) -> bool:
    """
        Function that validates that the array object is a one dimensional
        numpy array.

        :param array: The object to validate.

        :param texcept: A boolean flag that indicates if an exception should be
         raised if the object is not a one dimensional numpy array. True, if an
         exception should be raised; False, otherwise. True, by default.

        :return: True, if the input is a one dimensional numpy array; False,
         otherwise.

        :raises TypeError: If the object is not a numpy array and texcept is
         True.

        :raises ContractError: If the array is not one dimensional and texcept
         is True.
    """
    # Check that the object a numpy array.
    flag = isinstance(array, np.ndarray)
    if not flag and texcept:
        raise TypeError(
            f"The array is not a numpy array. Current type: {type(array)}"
        )

    # Check that the object is a 1D numpy array.
    flag = flag and array.ndim == 1
    if not flag and texcept:
        raise ContractError(
            f"The array is not a one dimensional array. Current shape: "
            f"{array.shape}."
        )

    return flag


def validate_shape(array: Any, shape: int, texcept: bool = True) -> bool:
    """
        Function that validates that the array object is a numpy array of the
        specified length.

        :param array: The array to validate.

        :param shape: The integer that specifies the length of the array.

        :param texcept: If an exception must be thrown if the array is not of
         the specified length. True, by default.

        :return: True, if the array is of the specified length; False,
         otherwise.
    """
    # Validate it is a 1D numpy array.
    if not (flag := validate_ndarray(array, texcept=texcept)):
        return flag

    # Validate the length of the array.
    flag = array.shape[0] == shape
    if not flag and texcept:
        raise ContractError(
            f"The array is not aligned with the expected length {shape}. "
            f"Current length: {array.shape[0]}."
        )

    return flag


def validate_finite(array: Any, texcept: bool = True) -> bool:
    """
        Function that validates that all the elements of the array are finite
        real numbers.

        :param array: The array to validate.

        :param texcept: If an exception must be thrown if the validation
         fails. True, by default.

        :return: True, if all the elements are finite; False, otherwise.
    """
    # Validate it is a 1D numpy array.
    if not (flag := validate_ndarray(array, texcept=texcept)):
        return flag

    # Validate the values.
    flag = bool(np.all(np.isfinite(array)))
    if not flag and texcept:
        raise ContractError(
            f"Not all the elements of the array are finite. Indexes of the "
            f"non-finite elements: {tuple(np.flatnonzero(~np.isfinite(array)))}."
        )

    return flag


def validate_increasing(array: Any, texcept: bool = True) -> bool:
    """
        Function that validates that the elements of the array are finite and
        strictly increasing.

        :param array: The array to validate.

        :param texcept: If an exception must be thrown if the validation
         fails. True, by default.

        :return: True, if the elements are strictly increasing; False,
         otherwise.
    """
    # Validate the elements are finite.
    if not (flag := validate_finite(array, texcept=texcept)):
        return flag

    # Validate the order.
    flag = bool(np.all(np.diff(array) > 0))
    if not flag and texcept:
        raise ContractError(
            f"The elements of the array are not strictly increasing. Indexes "
            f"where the order fails: {tuple(np.flatnonzero(np.diff(array) <= 0))}."
        )

    return flag


def validate_pmf(array: Any, length: int = -1, texcept: bool = True) -> bool:
    """
        Function that validates that the array is a probability mass function:
        nonnegative entries that sum to one within PMF_TOLERANCE.

        :param array: The array to validate.

        :param length: The expected length of the array; -1, for any length.

        :param texcept: If an exception must be thrown if the validation
         fails. True, by default.

        :return: True, if the array is a valid probability mass function;
         False, otherwise.
    """
    # Validate the elements are finite.
    if not (flag := validate_finite(array, texcept=texcept)):
        return flag

    # Validate the length.
    if length > -1 and not (flag := validate_shape(array, length, texcept)):
        return flag

    # Validate the weights.
    flag = array.shape[0] > 0 and bool(np.all(array >= 0))
    if not flag and texcept:
        raise ContractError(
            f"The weights must be a nonempty array of nonnegative numbers. "
            f"Current minimum: {array.min() if array.shape[0] else None}."
        )

    # Validate the total mass.
    flag = flag and abs(float(np.sum(array)) - 1.0) <= PMF_TOLERANCE
    if not flag and texcept:
        raise ContractError(
            f"The weights must sum to one within {PMF_TOLERANCE}. Current sum: "
            f"{float(np.sum(array))!r}."
        )

    return flag
