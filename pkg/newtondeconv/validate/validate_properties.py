"""
    Contains the functions for the validation of scalar quantities: flags,
    counts, scales, rates and levels.
"""


# ##############################################################################
# Imports
# ##############################################################################


# General
import math
import numbers

from typing import Any

# User defined
from newtondeconv.errors import ContractError


# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Private Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# '_is' Functions
# ------------------------------------------------------------------------------


def _is_int(value: Any) -> bool:
    """
        Determines if the value is an integer number; booleans are excluded.

        :param value: The value to inspect.

        :return: True, if the value is an integer; False, otherwise.
    """
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def _is_real(value: Any) -> bool:
    """
        Determines if the value is a real number; booleans are excluded.

        :param value: The value to inspect.

        :return: True, if the value is a real number; False, otherwise.
    """
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


# ------------------------------------------------------------------------------
# '_validate' Functions
# ------------------------------------------------------------------------------


def _validate_list_parameters(length: Any, texcept: Any) -> None:
    """
        Validates the parameters passed to the 'validate_list' function.

        :param length: The length of the list to validate. Must be an integer
         value.

        :param texcept: A boolean flag. Must be True or False.

        :raise: TypeError: If the parameters are not of the expected type.
    """
    # Auxiliary variables.
    fstring = "\"validate_list\""

    # Validate the length.
    if not _is_int(length):
        raise TypeError(
            f"The \"length\" parameter of the {fstring} function must be "
            f"an integer. Current type: {type(length)}."
        )

    if length < -1:
        raise ContractError(
            f"The \"length\" parameter of the {fstring} function must be -1 "
            f"or a positive integer. Current value: {length}."
        )

    # Validate the texcept parameter.
    if not isinstance(texcept, bool):
        raise TypeError(
            f"The \"texcept\" parameter of the {fstring} function must be "
            f"a boolean. Current type: {type(texcept)}."
        )


def _validate_real_parameters(zero: Any, texcept: Any) -> None:
    """
        Validates the flags passed to the 'validate_*_positive' functions.

        :param zero: A boolean flag. Must be True or False.

        :param texcept: A boolean flag. Must be True or False.

        :raise: TypeError: If the parameters are not of the expected type.
    """
    for key, value in (("zero", zero), ("texcept", texcept)):
        if not isinstance(value, bool):
            raise TypeError(
                f"The \"{key}\" parameter must be a boolean. Current type: "
                f"{type(value)}."
            )


def _raise(flag: bool, texcept: bool, name: str, message: str, value: Any,
           error: type = ContractError) -> bool:
    """
        Raises the given error if the flag is False and texcept is True.

        :param flag: The result of the validation.

        :param texcept: If an exception must be raised.

        :param name: The name of the variable, or None.

        :param message: What the value is expected to be.

        :param value: The current value.

        :param error: The exception class to raise.

        :return: The flag.
    """
    if texcept and not flag:
        tname = " " if name is None else f" \"{name}\" "
        raise error(f"The value{tname}is not {message}. Current value: {value}.")

    return flag


# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'validate' Functions
# ------------------------------------------------------------------------------


def validate_bool(value: Any, name: str = None, texcept: bool = False) -> bool:
    """
        Function that validates that the value is a boolean quantity.
        Raises an exception if validation fails and texcept is True.

        :param value: The value to validate.

        :param name: The name of the variable.

        :param texcept: A boolean flag that indicates if an exception should be
         raised if the object is not the expected type. True, if an exception
         should be raised; False, otherwise. False, by default.

        :return: True, if the object is a boolean variable; False, otherwise.

        :raises TypeError: If the object is not a boolean and texcept is True.
    """
    flag = isinstance(value, bool)
    return _raise(flag, texcept, name, "a boolean variable", value, TypeError)


def validate_int_positive(
    value: Any, zero: bool = True, name: str = None, texcept: bool = False
) -> bool:
    """
        Function that validates that the value is an integer positive number.
        Raises an exception if validation fails and texcept is True.

        :param value: The value to validate.

        :param zero: The value can be zero. True, if the value can be zero;
         False, otherwise. True, by default.

        :param name: The name of the variable.

        :param texcept: A boolean flag that indicates if an exception should be
         raised if the object is not the expected type. True, if an exception
         should be raised; False, otherwise. False, by default.

        :return: True, if the object is an integer positive number; False,
         otherwise.

        :raises TypeError: If the object is not an integer and texcept is True.

        :raises ContractError: If the integer is not positive and texcept is
         True.
    """
    # Validate the parameters.
    _validate_real_parameters(zero, texcept)

    # Validate the type.
    if not _raise(_is_int(value), texcept, name, "an integer", value, TypeError):
        return False

    # Check that the value is positive.
    flag = value >= 0 if zero else value > 0
    zero_opt = " or zero" if zero else ""

    return _raise(flag, texcept, name, f"a positive integer{zero_opt}", value)


def validate_list(
    value: Any, dtype: Any, length: int = -1, name: str = None,
    texcept: bool = False
) -> bool:
    """
        Function that validates that the object is a list of elements of the
        given type, and optionally of the given length. Raises an exception if
        validation fails and texcept is True.

        :param value: The value to validate.

        :param dtype: The expected type of the list elements.

        :param length: The length of the list to validate. Must be an integer
         value. -1, by default, i.e., any length.

        :param name: The name of the variable.

        :param texcept: A boolean flag that indicates if an exception should be
         raised if the object is not the expected type. True, if an exception
         should be raised; False, otherwise. False, by default.

        :return: True, if the object is a valid list; False, otherwise.

        :raises TypeError: If the object is not a valid list and texcept is
         True.
    """
    # Validate the mandatory parameters.
    _validate_list_parameters(length, texcept)

    # Validate the other parameters.
    flag = (flag0 := isinstance(value, list))
    message = "" if flag else "The value is not a list. "

    # Check the list's elements' types; booleans never count as numbers.
    if flag0 and len(value) > 0:
        flag1 = all(
            isinstance(x, dtype) and not isinstance(x, bool) for x in value
        )
        flag = flag1 and flag
        message += "" if flag1 else (
            f"The list's elements are not all {dtype}. Types: "
            f"{tuple(type(x) for x in value)}. "
        )

    # Check the list's length.
    if flag0 and length > -1:
        flag = (flag1 := len(value) == length) and flag
        message += "" if flag1 else f"The list's length is not {length}. "

    # Raise an exception if required.
    if texcept and not flag:
        tname = " " if name is None else f" \"{name}\" "
        raise TypeError(f"The list{tname}is not valid. {message}".strip())

    return flag


def validate_real_finite(
    value: Any, name: str = None, texcept: bool = False
) -> bool:
    """
        Function that validates that the value is a finite real number.

        :param value: The value to validate.

        :param name: The name of the variable.

        :param texcept: If an exception should be raised when the validation
         fails. False, by default.

        :return: True, if the value is a finite real number; False, otherwise.

        :raises TypeError: If the value is not a real number and texcept is
         True.

        :raises ContractError: If the value is not finite and texcept is True.
    """
    if not _raise(_is_real(value), texcept, name, "a real number", value,
                  TypeError):
        return False

    return _raise(math.isfinite(value), texcept, name, "finite", value)


def validate_real_positive(
    value: Any, zero: bool = True, name: str = None, texcept: bool = False
) -> bool:
    """
        Function that validates that the value is a real positive number.
        Raises an exception if validation fails and texcept is True.

        :param value: The value to validate.

        :param zero: The value can be zero. True, if the value can be zero;
         False, otherwise. True, by default.

        :param name: The name of the variable.

        :param texcept: A boolean flag that indicates if an exception should be
         raised if the object is not the expected type. True, if an exception
         should be raised; False, otherwise. False, by default.

        :return: True, if the object is a real positive number; False,
         otherwise.

        :raises TypeError: If the object is not a real number and texcept is
         True.

        :raises ContractError: If the number is not positive, or not finite,
         and texcept is True.
    """
    # Validate the parameters.
    _validate_real_parameters(zero, texcept)

    # Validate the value.
    if not validate_real_finite(value, name=name, texcept=texcept):
        return False

    # Check that the value is positive.
    flag = value >= 0 if zero else value > 0
    zero_opt = " or zero" if zero else ""

    return _raise(flag, texcept, name, f"a real positive number{zero_opt}",
                  value)


def validate_real_interval(
    value: Any, low: float, high: float, closed: tuple = (False, False),
    name: str = None, texcept: bool = False
) -> bool:
    """
        Function that validates that the value is a real number in the given
        interval.

        :param value: The value to validate.

        :param low: The lower end of the interval.

        :param high: The upper end of the interval.

        :param closed: A 2-tuple of flags; the first (second) entry is True if
         the lower (upper) end belongs to the interval. Open, by default.

        :param name: The name of the variable.

        :param texcept: If an exception should be raised when the validation
         fails. False, by default.

        :return: True, if the value is in the interval; False, otherwise.

        :raises ContractError: If the value is not in the interval and texcept
         is True.
    """
    if not validate_real_finite(value, name=name, texcept=texcept):
        return False

    # Check both ends.
    lflag = value >= low if closed[0] else value > low
    hflag = value <= high if closed[1] else value < high

    # Format the interval.
    interval = (
        f"{'[' if closed[0] else '('}{low}, {high}{']' if closed[1] else ')'}"
    )

    return _raise(lflag and hflag, texcept, name, f"in {interval}", value)
