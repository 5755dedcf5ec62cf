"""
    File that contains the exceptions raised by the package. Every exception
    carries the exit code the command line interface returns when it is
    raised.
"""

# ##############################################################################
# Classes
# ##############################################################################


class DeconvolutionError(Exception):
    """
        Base class of all the package exceptions.
    """
    exit_code = 1


class ContractError(DeconvolutionError, ValueError):
    """
        A precondition of an operation is violated; e.g., misaligned pmf and
        grid, a learning rate requested for n = 0, a level outside (0, 1).
    """
    exit_code = 2


class ConfigurationError(DeconvolutionError, ValueError):
    """
        The run configuration is malformed or inconsistent.
    """
    exit_code = 2


class DomainError(DeconvolutionError, ValueError):
    """
        A non-finite evaluation point or a non-positive scale parameter.
    """
    exit_code = 3


class DataError(DeconvolutionError, ValueError):
    """
        The input data stream cannot be parsed.
    """
    exit_code = 3


class CheckpointError(DataError):
    """
        A checkpoint stream cannot be decoded: wrong magic bytes, unsupported
        version, truncated stream or checksum failure.
    """


class NumericDegeneracyError(DeconvolutionError, ArithmeticError):
    """
        Floating point degeneracy; e.g., all the likelihoods of an observation
        underflow to zero.
    """
    exit_code = 4


class QuadratureWindowError(NumericDegeneracyError):
    """
        The y-quadrature window does not capture enough predictive mass.
    """


class CalibrationError(NumericDegeneracyError):
    """
        Too many calibration terms are undefined (log of a zero update).
    """
