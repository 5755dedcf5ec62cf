"""
    Contains the readers of observation streams and the writers of the CSV
    reports. A report starts with one line "# " + JSON header carrying every
    knob of the run, then a CSV header row and the data rows. Floats are
    written with 17 significant digits, so they round trip exactly.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import contextlib
import csv
import json
import logging
import math
import sys

from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, TextIO

# User defined
from newtondeconv.errors import DataError

# ##############################################################################
# Global Variables
# ##############################################################################


logger = logging.getLogger(__name__)

# Path that stands for the standard streams.
STANDARD_STREAM = "-"

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Private Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


def _parse(text: str, number: int) -> float:
    """
        Parses a decimal observation.

        :param text: The field.

        :param number: The 1-based line number, for the error message.

        :return: The observation.

        :raise DataError: If the field is not a finite decimal number.
    """
    try:
        value = float(text)

    except ValueError:
        raise DataError(
            f"Cannot parse the observation at line {number}: {text.strip()!r}."
        ) from None

    if not math.isfinite(value):
        raise DataError(
            f"The observation at line {number} is not finite: {text.strip()!r}."
        )

    return value


def _is_number(text: str) -> bool:
    try:
        float(text)

    except ValueError:
        return False

    return True


@contextlib.contextmanager
def _open_input(path: str) -> Iterator[TextIO]:
    if path == STANDARD_STREAM:
        yield sys.stdin
        return

    try:
        file = open(path, mode="r", newline="")

    except OSError as error:
        raise DataError(f"Cannot read the input {path}: {error}") from None

    with file:
        yield file


@contextlib.contextmanager
def _open_output(path: str) -> Iterator[TextIO]:
    if path == STANDARD_STREAM:
        yield sys.stdout
        return

    try:
        file = open(path, mode="w", newline="")

    except OSError as error:
        raise DataError(f"Cannot write the output {path}: {error}") from None

    with file:
        yield file


# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'read' Functions
# ------------------------------------------------------------------------------


def parse_observations(lines: Iterable[str], csv_column: int = -1) -> Iterator[float]:
    """
        Parses an observation stream lazily. Plain streams hold one decimal
        observation per line; blank lines are skipped. CSV streams take the
        given column, and a first row whose field is not a number is taken as
        a header and skipped.

        :param lines: The lines of the stream.

        :param csv_column: The 0-based CSV column; -1 for plain streams.

        :return: The iterator of observations.

        :raise DataError: If a line cannot be parsed; the message names the
         line number.
    """
    if csv_column < 0:
        for number, line in enumerate(lines, start=1):
            if line.strip():
                yield _parse(line, number)

        return

    for number, row in enumerate(csv.reader(lines), start=1):
        if not row:
            continue

        if csv_column >= len(row):
            raise DataError(
                f"The row at line {number} has no column {csv_column}: {row}."
            )

        if number == 1 and not _is_number(row[csv_column]):
            logger.debug("Skipping the CSV header %s.", row)
            continue

        yield _parse(row[csv_column], number)


def read_observations(path: str, csv_column: int = -1) -> Iterator[float]:
    """
        Reads the observation stream of a file, or of stdin for "-".

        :param path: The input path.

        :param csv_column: The 0-based CSV column; -1 for plain streams.

        :return: The iterator of observations.
    """
    with _open_input(path) as file:
        yield from parse_observations(file, csv_column)


# ------------------------------------------------------------------------------
# 'write' Functions
# ------------------------------------------------------------------------------


def format_float(value: float) -> str:
    return f"{value:.17g}"


def write_report(
    path: str, header: Optional[dict], columns: Sequence[str], rows: Iterable[Sequence]
) -> None:
    """
        Writes a report to a file, or to stdout for "-".

        :param path: The output path.

        :param header: The JSON header; keys are sorted. None writes a plain
         CSV file.

        :param columns: The names of the columns.

        :param rows: The data rows; floats are formatted with 17 significant
         digits.
    """
    with _open_output(path) as file:
        if header is not None:
            file.write("# " + json.dumps(header, sort_keys=True) + "\n")

        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([
                format_float(value) if isinstance(value, float) else value
                for value in row
            ])

    if path != STANDARD_STREAM:
        logger.info("Wrote report %s.", path)


def write_sidecar(path: str, metadata: dict) -> None:
    """
        Writes the JSON sidecar <path>.json of an output file.

        :param path: The output path.

        :param metadata: The metadata.
    """
    sidecar = Path(f"{path}.json")
    try:
        sidecar.write_text(json.dumps(metadata, indent=2, sort_keys=True) + "\n")

    except OSError as error:
        raise DataError(f"Cannot write the sidecar {sidecar}: {error}") from None

    logger.info("Wrote sidecar %s.", sidecar)

