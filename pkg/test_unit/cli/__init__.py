"""
    Helpers shared by the tests of the command line interface.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import csv
import json


# ##############################################################################
# Functions
# ##############################################################################


def read_report(path: str) -> tuple:
    """
        Reads a report written by write_report.

        :param path: The report path.

        :return: The header dictionary, the column names and the rows as
         lists of strings.

        :raise ValueError: If the file has no "# " header line.
    """
    with open(path, mode="r", newline="") as file:
        first = file.readline()
        if not first.startswith("# "):
            raise ValueError(f"The file {path} has no report header.")

        rows = list(csv.reader(file))

    return json.loads(first[2:]), rows[0], rows[1:]
