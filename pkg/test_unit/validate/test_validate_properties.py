"""
    File that contains the unit test for the functions in the file
    validate_properties.py.
"""


# ##############################################################################
# Imports
# ##############################################################################


# General
import math
import numpy as np
import unittest

# User defined
import newtondeconv.validate.validate_properties as vproperties

from newtondeconv.errors import ContractError


# ##############################################################################
# Classes
# ##############################################################################


class TestValidateProperties(unittest.TestCase):
    """
        Class that contains the tests for the validation of scalar quantities.
    """

    def test_validate_bool(self):
        """
            Test the function validate_bool.
        """
        # ----------------------------------------------------------------------
        # Test 1: Booleans are valid.
        # ----------------------------------------------------------------------

        for value in (True, False):
            self.assertTrue(vproperties.validate_bool(value))

        # ----------------------------------------------------------------------
        # Test 2: Other types are not booleans.
        # ----------------------------------------------------------------------

        for value in (0, 1, 1.0, "True", None, [True]):
            self.assertFalse(vproperties.validate_bool(value, texcept=False))

            with self.assertRaises(TypeError):
                vproperties.validate_bool(value, name="flag", texcept=True)

    def test_validate_int_positive(self):
        """
            Test the function validate_int_positive.
        """
        # ----------------------------------------------------------------------
        # Test 1: Positive integers, numpy integers included.
        # ----------------------------------------------------------------------

        for value in (1, 10, np.int64(3)):
            self.assertTrue(vproperties.validate_int_positive(value, zero=False))

        # ----------------------------------------------------------------------
        # Test 2: Zero is valid only when allowed.
        # ----------------------------------------------------------------------

        self.assertTrue(vproperties.validate_int_positive(0, zero=True))
        self.assertFalse(vproperties.validate_int_positive(0, zero=False))

        with self.assertRaises(ContractError):
            vproperties.validate_int_positive(0, zero=False, texcept=True)

        # ----------------------------------------------------------------------
        # Test 3: Negative integers raise a ContractError, a ValueError.
        # ----------------------------------------------------------------------

        with self.assertRaises(ValueError):
            vproperties.validate_int_positive(-1, texcept=True)

        # ----------------------------------------------------------------------
        # Test 4: Non integers and booleans raise a TypeError.
        # ----------------------------------------------------------------------

        for value in (1.0, "1", True, None):
            self.assertFalse(vproperties.validate_int_positive(value))

            with self.assertRaises(TypeError):
                vproperties.validate_int_positive(value, texcept=True)

        # ----------------------------------------------------------------------
        # Test 5: The validation parameters must be booleans.
        # ----------------------------------------------------------------------

        with self.assertRaises(TypeError):
            vproperties.validate_int_positive(1, zero=1)

    def test_validate_list(self):
        """
            Test the function validate_list.
        """
        # ----------------------------------------------------------------------
        # Test 1: Valid lists, with and without length.
        # ----------------------------------------------------------------------

        self.assertTrue(vproperties.validate_list([1, 2.0], (int, float)))
        self.assertTrue(vproperties.validate_list([1, 2.0], (int, float), 2))
        self.assertTrue(vproperties.validate_list([], int))

        # ----------------------------------------------------------------------
        # Test 2: Invalid lists.
        # ----------------------------------------------------------------------

        invalid = (
            ((1, 2), (int, float), -1),
            ([1, "a"], (int, float), -1),
            ([1, True], (int, float), -1),
            ([1, 2, 3], (int, float), 2),
        )

        for value, dtype, length in invalid:
            self.assertFalse(vproperties.validate_list(value, dtype, length))

            with self.assertRaises(TypeError):
                vproperties.validate_list(value, dtype, length, texcept=True)

        # ----------------------------------------------------------------------
        # Test 3: The length must be -1 or a positive integer.
        # ----------------------------------------------------------------------

        with self.assertRaises((TypeError, ValueError)):
            vproperties.validate_list([1], int, length=-2)

    def test_validate_real(self):
        """
            Test the functions validate_real_finite and validate_real_positive.
        """
        # ----------------------------------------------------------------------
        # Test 1: Finite reals.
        # ----------------------------------------------------------------------

        for value in (0, -1.5, 3, np.float64(2.5)):
            self.assertTrue(vproperties.validate_real_finite(value))

        for value in (math.inf, -math.inf, math.nan):
            self.assertFalse(vproperties.validate_real_finite(value))

            with self.assertRaises(ContractError):
                vproperties.validate_real_finite(value, texcept=True)

        with self.assertRaises(TypeError):
            vproperties.validate_real_finite("1.0", texcept=True)

        # ----------------------------------------------------------------------
        # Test 2: Positive reals.
        # ----------------------------------------------------------------------

        self.assertTrue(vproperties.validate_real_positive(0.0))
        self.assertFalse(vproperties.validate_real_positive(0.0, zero=False))
        self.assertFalse(vproperties.validate_real_positive(-1e-300))
        self.assertFalse(vproperties.validate_real_positive(math.inf))

        with self.assertRaises(ContractError):
            vproperties.validate_real_positive(-2.0, texcept=True)

    def test_validate_real_interval(self):
        """
            Test the function validate_real_interval.
        """
        # ----------------------------------------------------------------------
        # Test 1: Open interval.
        # ----------------------------------------------------------------------

        self.assertTrue(vproperties.validate_real_interval(0.5, 0.0, 1.0))
        self.assertFalse(vproperties.validate_real_interval(0.0, 0.0, 1.0))
        self.assertFalse(vproperties.validate_real_interval(1.0, 0.0, 1.0))

        # ----------------------------------------------------------------------
        # Test 2: Half-open interval (0.5, 1], as the learning-rate exponent.
        # ----------------------------------------------------------------------

        kargs = {"low": 0.5, "high": 1.0, "closed": (False, True)}
        self.assertTrue(vproperties.validate_real_interval(1.0, **kargs))
        self.assertFalse(vproperties.validate_real_interval(0.5, **kargs))

        with self.assertRaises(ContractError):
            vproperties.validate_real_interval(0.5, texcept=True, **kargs)


if __name__ == "__main__":
    unittest.main()
