"""
    File that contains the unit test for the functions in the file
    parameters.py.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import copy as cp
import pathlib
import tempfile
import unittest
import yaml

# User defined
import newtondeconv.cli.parameters as parameters

from newtondeconv.errors import ConfigurationError
from newtondeconv.engine.newton import initial_state


# ##############################################################################
# Classes
# ##############################################################################


class TestParameters(unittest.TestCase):
    """
        Class that contains the tests for the validation of the run
        configuration.
    """

    def test_get(self):
        """
            Test the function get the dictionary. The test gets the dictionary
            and must validate all the parameters and NOT throw an expection.
        """
        # Gets the parameters.
        configuration = parameters.get()
        parameters.validate(configuration)

    def test_validate(self):
        """
            Test the validation of the parameters. Every invalid value is set
            one at a time over a valid configuration.
        """
        path = pathlib.Path(__file__).parent.absolute() / "test_parameters.yaml"
        with open(f"{path}") as fl:
            configuration = yaml.safe_load(fl)

        valid = configuration["valid"]
        invalid = configuration["invalid"]
        del configuration

        # ----------------------------------------------------------------------
        # Test 0: Valid parameters must not throw an exception.
        # ----------------------------------------------------------------------

        parameters.validate(valid)

        # ----------------------------------------------------------------------
        # Test 1: Invalid parameters must throw an exception.
        # ----------------------------------------------------------------------

        for key in valid.keys():
            for subkey in valid[key].keys():
                for value in invalid[key][subkey]:
                    testinvalid = cp.deepcopy(valid)
                    testinvalid[key][subkey] = value

                    with self.assertRaises(
                        (TypeError, ValueError), msg=f"{key}.{subkey}: {value}"
                    ):
                        parameters.validate(testinvalid)

        # ----------------------------------------------------------------------
        # Test 2: Missing and unknown keys.
        # ----------------------------------------------------------------------

        testinvalid = cp.deepcopy(valid)
        del testinvalid["noise"]["std_dev"]
        with self.assertRaises(ConfigurationError):
            parameters.validate(testinvalid)

        testinvalid = cp.deepcopy(valid)
        testinvalid["plots"] = {}
        with self.assertRaises(ConfigurationError):
            parameters.validate(testinvalid)

        with self.assertRaises(TypeError):
            parameters.validate([valid])

    def test_merge(self):
        """
            Test the overlay of a partial configuration on the defaults.
        """
        defaults = parameters.get()
        user = {"noise": {"std_dev": 0.25}, "random": {"seed": 3}}

        merged = parameters.merge(defaults, user)

        self.assertEqual(merged["noise"], {"family": "laplace", "std_dev": 0.25})
        self.assertEqual(merged["random"]["seed"], 3)
        self.assertEqual(merged["grid"], defaults["grid"])

        # The inputs are not modified.
        self.assertEqual(defaults, parameters.get())
        self.assertEqual(user, {"noise": {"std_dev": 0.25}, "random": {"seed": 3}})

        self.assertEqual(parameters.merge(defaults, {}), defaults)

        for invalid in ({"plots": {}}, {"noise": {"mean": 0.0}}):
            with self.assertRaises(ConfigurationError):
                parameters.merge(defaults, invalid)

        with self.assertRaises(TypeError):
            parameters.merge(defaults, {"noise": 0.5})

        with self.assertRaises(ValueError):
            parameters.merge(defaults, {"schedule": {"gamma": 0.4}})

    def test_load(self):
        """
            Test the loading of a configuration file.
        """
        with tempfile.TemporaryDirectory() as directory:
            path = pathlib.Path(directory) / "run.yaml"

            # A partial file.
            path.write_text("schedule:\n  gamma: 0.8\nio:\n  csv_column: 1\n")
            configuration = parameters.load(path)
            self.assertEqual(configuration["schedule"]["gamma"], 0.8)
            self.assertEqual(configuration["io"]["csv_column"], 1)

            # An empty file gives the defaults.
            path.write_text("")
            self.assertEqual(parameters.load(path), parameters.get())

            # Malformed and missing files.
            path.write_text("schedule: [gamma\n")
            with self.assertRaises(ConfigurationError):
                parameters.load(path)

            with self.assertRaises(ConfigurationError):
                parameters.load(pathlib.Path(directory) / "missing.yaml")

    def test_build(self):
        """
            Test the model objects built from a configuration.
        """
        configuration = parameters.get()

        grid = parameters.build_parameter_grid(configuration)
        schedule = parameters.build_schedule(configuration)
        noise = parameters.build_noise(configuration)

        self.assertEqual(len(grid), 656)
        self.assertEqual((schedule.alpha, schedule.gamma), (1.0, 1.0))
        self.assertEqual((noise.family.value, noise.std_dev), ("laplace", 0.5))
        self.assertEqual(len(parameters.build_eval_grid(configuration).points), 181)

        # Automatic and explicit node counts.
        state = initial_state(grid, schedule, noise)
        self.assertGreaterEqual(
            parameters.build_quadrature(configuration, state).y_nodes, 2001
        )

        configuration = parameters.merge(
            configuration, {"quadrature": {"y_nodes": 801, "z_nodes": 512}}
        )
        quad = parameters.build_quadrature(configuration, state)
        self.assertEqual((quad.y_nodes, quad.z_nodes), (801, 512))

        # The reference grid.
        configuration = parameters.merge(configuration, {"grid": {"reference": True}})
        self.assertEqual(len(parameters.build_parameter_grid(configuration)), 80500)


if __name__ == "__main__":
    unittest.main()
