# ##############################################################################
#  This file is part of df_contours                                            #
#                                                                              #
#  You may use, distribute and modify this code under the                      #
#  terms of the (BSD-like) CeCILL-B license.                                   #
#                                                                              #
#  You should have received a copy of the CeCILL-B license with                #
#  this file. If not, please visit:                                            #
#  https://cecill.info/licences/Licence_CeCILL-B_V1-en.txt (English)           #
#  or https://cecill.info/licences/Licence_CeCILL-B_V1-fr.txt (French)         #
#                                                                              #
# ##############################################################################
"""Errors raised by df_contours
============================

Every error carries a short machine-readable `code`, written in the trailer of a time series
(`#status: error:<code>`) when a run is terminated by it.
Splash-related errors share the :class:`SplashDetectedError` base class so that a run can tell
a collapse of the interfaces from a plain numerical failure.
"""
from typing import Optional


class ContourError(Exception):
    """Base class of all df_contours errors."""

    code = "contour"


class ConfigurationError(ContourError):
    """Invalid configuration, grid mismatch or constraint violation.

    :param field: name of the offending configuration field, if any
    :param line: line number in the configuration file, if any
    """

    code = "config"

    def __init__(
        self, message: str, field: Optional[str] = None, line: Optional[int] = None
    ):
        self.field = field
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        if field is not None:
            message = "%s: %s" % (field, message)
        super().__init__(message)


class InsufficientResolutionError(ContourError):
    code = "insufficient_resolution"


class SplashDetectedError(ContourError):
    """Two parts of the interfaces met at sample resolution."""

    code = "splash"


class PhaseOverlapError(SplashDetectedError):
    code = "phase_overlap"


class SelfIntersectionError(SplashDetectedError):
    code = "self_intersection"


class DegenerateParametrizationError(ContourError):
    code = "degenerate_parametrization"


class SingularEvaluationError(ContourError):
    code = "singular_evaluation"


class NumericalError(ContourError):
    """Non-finite integrand value.

    :param beta: offset at which the integrand was not finite
    """

    code = "numerical"

    def __init__(self, message: str, beta: Optional[float] = None):
        self.beta = beta
        if beta is not None:
            message = "%s (beta=%r)" % (message, beta)
        super().__init__(message)


class SplitUndefinedError(ContourError):
    code = "split_undefined"


class ChartError(ContourError):
    code = "chart"


class StepRejectedError(ContourError):
    code = "step_rejected"


class EnvelopeDomainError(ContourError):
    code = "envelope_domain"


class MalformedSeriesError(ContourError):
    code = "malformed_series"


class PersistenceError(ContourError):
    """I/O failure on `path`."""

    code = "io"

    def __init__(self, message: str, path=None):
        self.path = path
        if path is not None:
            message = "%s: %s" % (path, message)
        super().__init__(message)
