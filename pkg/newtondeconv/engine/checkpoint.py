"""
    File that contains the binary checkpoint codec of the estimator state.

    Layout, little endian:

        magic "NWTN" | version u32 | K u64 | means f64[K] | variances f64[K]
        | alpha f64 | gamma f64 | noise family u8 | noise sd f64 | n u64
        | pmf f64[K] | crc32 u32 of all the preceding bytes

    The round trip is bit exact.
"""

# ##############################################################################
# Imports
# ##############################################################################


# General
import logging
import os
import struct
import tempfile
import zlib

import numpy as np

from pathlib import Path
from typing import Union

# User defined
from newtondeconv.engine.newton import EstimatorState, LearningRateSchedule
from newtondeconv.errors import CheckpointError
from newtondeconv.model.core import ParameterGrid
from newtondeconv.model.noise import NoiseFamily, NoiseModel

# ##############################################################################
# Global Variables
# ##############################################################################


logger = logging.getLogger(__name__)

MAGIC = b"NWTN"
VERSION = 1

# Codes of the noise families.
_FAMILY_CODES = {NoiseFamily.LAPLACE: 0, NoiseFamily.GAUSSIAN: 1}
_CODE_FAMILIES = {value: key for key, value in _FAMILY_CODES.items()}

# Fixed size blocks.
_HEADER = struct.Struct("<4sIQ")
_TRAILER = struct.Struct("<ddBdQ")
_CRC = struct.Struct("<I")

# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Private Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


def _floats(data: bytes, offset: int, count: int) -> np.ndarray:
    """
        Reads count little endian doubles at the offset.
    """
    return np.frombuffer(data, dtype="<f8", count=count, offset=offset).astype(float)


# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$
# Public Interface
# $$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$$


# ##############################################################################
# Functions
# ##############################################################################


# ------------------------------------------------------------------------------
# 'checkpoint' Functions
# ------------------------------------------------------------------------------


def checkpoint_save(state: EstimatorState) -> bytes:
    """
        Encodes the state.

        :param state: The estimator state.

        :return: The checkpoint bytes.
    """
    size = len(state.grid)
    body = b"".join((
        _HEADER.pack(MAGIC, VERSION, size),
        state.grid.means.astype("<f8").tobytes(),
        state.grid.variances.astype("<f8").tobytes(),
        _TRAILER.pack(
            state.schedule.alpha, state.schedule.gamma,
            _FAMILY_CODES[state.noise.family], state.noise.std_dev, state.n
        ),
        state.pmf.astype("<f8").tobytes(),
    ))

    return body + _CRC.pack(zlib.crc32(body))


def checkpoint_load(data: bytes) -> EstimatorState:
    """
        Decodes a checkpoint. Nothing is built unless the whole stream is
        valid.

        :param data: The checkpoint bytes.

        :return: The estimator state.

        :raise CheckpointError: If the magic bytes or the version do not match,
         the stream is truncated or the checksum fails.
    """
    if len(data) < _HEADER.size:
        raise CheckpointError(
            f"The checkpoint is truncated: {len(data)} bytes, fewer than the "
            f"{_HEADER.size} bytes of the header."
        )

    magic, version, size = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CheckpointError(
            f"The stream is not a checkpoint. Current magic bytes: {magic!r}."
        )

    if version != VERSION:
        raise CheckpointError(
            f"Unsupported checkpoint version. Expected: {VERSION}, current: "
            f"{version}."
        )

    # Expected length of the stream.
    expected = _HEADER.size + 24 * size + _TRAILER.size + _CRC.size
    if len(data) != expected:
        raise CheckpointError(
            f"The checkpoint is truncated or has trailing bytes. Expected "
            f"length: {expected}, current length: {len(data)}."
        )

    (crc,) = _CRC.unpack_from(data, expected - _CRC.size)
    if zlib.crc32(data[:expected - _CRC.size]) != crc:
        raise CheckpointError("The checkpoint checksum does not match.")

    # Decode the blocks.
    offset = _HEADER.size
    means = _floats(data, offset, size)
    variances = _floats(data, offset + 8 * size, size)

    offset += 16 * size
    alpha, gamma, code, std_dev, n = _TRAILER.unpack_from(data, offset)
    pmf = _floats(data, offset + _TRAILER.size, size)

    if code not in _CODE_FAMILIES:
        raise CheckpointError(f"Unknown noise family code: {code}.")

    try:
        return EstimatorState(
            ParameterGrid(means, variances), pmf, n,
            LearningRateSchedule(alpha, gamma),
            NoiseModel(_CODE_FAMILIES[code], std_dev),
        )

    except (TypeError, ValueError) as error:
        raise CheckpointError(f"The checkpoint holds an invalid state: {error}")


def write_checkpoint(state: EstimatorState, path: Union[str, Path]) -> None:
    """
        Writes the checkpoint of the state to the path. The file is replaced
        atomically, so a reader never sees a partial checkpoint.

        :param state: The estimator state.

        :param path: The destination path.

        :raise CheckpointError: If the checkpoint cannot be written.
    """
    path = Path(path)
    data = checkpoint_save(state)

    try:
        handle, temporary = tempfile.mkstemp(
            dir=path.parent.absolute(), prefix=f".{path.name}.", suffix=".tmp"
        )

    except OSError as error:
        raise CheckpointError(f"Cannot write the checkpoint {path}: {error}") from None

    try:
        with os.fdopen(handle, mode="wb") as file:
            file.write(data)

        os.replace(temporary, path)

    except OSError as error:
        Path(temporary).unlink(missing_ok=True)
        raise CheckpointError(f"Cannot write the checkpoint {path}: {error}") from None

    except BaseException:
        Path(temporary).unlink(missing_ok=True)
        raise

    logger.info("Wrote checkpoint %s: n = %d, %d bytes.", path, state.n, len(data))


def read_checkpoint(path: Union[str, Path]) -> EstimatorState:
    """
        Reads the checkpoint at the path.

        :param path: The checkpoint path.

        :return: The estimator state.

        :raise CheckpointError: If the file is missing or invalid.
    """
    try:
        data = Path(path).read_bytes()

    except OSError as error:
        raise CheckpointError(f"Cannot read the checkpoint {path}: {error}")

    return checkpoint_load(data)
