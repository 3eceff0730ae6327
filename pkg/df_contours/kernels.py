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
"""Kernels of the contour equations
================================

Each kernel exists in two forms sharing the same arithmetic:

  * array forms (`*_values`) taking the samples at the target point and at the shifted points,
    used by the velocity assemblies,
  * pointwise forms taking interfaces or contours and coordinates, used for direct evaluation
    and tests.

Notation: `delta_beta(f, g)(alpha) = f(alpha) - g(alpha - beta)`.

>>> float(muskat_kernel_values(0.5, 0.0, 0.0, 0.25, -1.0))
1.6
"""
from typing import Optional

import numpy as np

from df_contours import constants
from df_contours.exceptions import SelfIntersectionError, SingularEvaluationError


def _check_beta(beta):
    beta = np.asarray(beta, dtype=float)
    if np.any(beta == 0.0):
        raise ValueError("kernels are not defined at beta = 0")
    return beta


def _check_denominator(denominator, active=None):
    tested = np.asarray(denominator)
    if active is not None:
        tested = tested[active]
    if tested.size and np.min(tested) < constants.SINGULAR_DENOMINATOR:
        raise SingularEvaluationError(
            "kernel denominator %.3g below %.0e" % (np.min(tested), constants.SINGULAR_DENOMINATOR)
        )


def muskat_kernel_values(
    beta,
    f_alpha,
    df_alpha,
    g_shifted,
    dg_shifted,
    limit=None,
    guard: float = 0.0,
) -> np.ndarray:
    """`K(f, g) = beta delta(f', g') / (beta^2 + delta(f, g)^2)`.

    When `limit` is given (same interface), offsets with `|beta| < guard` get the removable
    limit value `f'' / (1 + f'^2)` instead.
    """
    beta = np.asarray(beta, dtype=float)
    delta = f_alpha - g_shifted
    denominator = beta * beta + delta * delta
    guarded = None
    if limit is not None and guard > 0.0:
        guarded = np.broadcast_to(np.abs(beta) < guard, np.shape(denominator))
    _check_denominator(denominator, None if guarded is None else ~guarded)
    with np.errstate(divide="ignore", invalid="ignore"):
        value = beta * (df_alpha - dg_shifted) / denominator
    if guarded is not None:
        value = np.where(guarded, limit, value)
    return value


def sigma_kernel_values(beta, f_alpha, df_alpha, g_shifted, dg_shifted) -> np.ndarray:
    """`Sigma(f, g) = delta(f', g') / sqrt(beta^2 + delta(f, g)^2)`."""
    beta = np.asarray(beta, dtype=float)
    delta = f_alpha - g_shifted
    denominator = beta * beta + delta * delta
    _check_denominator(denominator)
    return (df_alpha - dg_shifted) / np.sqrt(denominator)


def _contour_differences(x_alpha, dx_alpha, x_shifted, dx_shifted):
    delta = x_alpha - x_shifted
    distance2 = delta[0] * delta[0] + delta[1] * delta[1]
    if np.any(distance2 == 0.0):
        raise SelfIntersectionError("two distinct parameters map to the same point")
    return delta, dx_alpha - dx_shifted, distance2


def sqg_contour_values(x_alpha, dx_alpha, x_shifted, dx_shifted) -> np.ndarray:
    """`delta_beta x' / |delta_beta x|`, first axis holding the two components."""
    __, ddelta, distance2 = _contour_differences(x_alpha, dx_alpha, x_shifted, dx_shifted)
    return ddelta / np.sqrt(distance2)


def muskat_contour_values(
    beta, x_alpha, dx_alpha, x_shifted, dx_shifted, limit=None, guard: float = 0.0
) -> np.ndarray:
    """`delta_beta x1 . delta_beta x' / |delta_beta x|^2`.

    `limit` (the value `x1' x'' / |x'|^2` at alpha) replaces offsets with `|beta| < guard`.
    """
    beta = np.asarray(beta, dtype=float)
    delta = x_alpha - x_shifted
    distance2 = delta[0] * delta[0] + delta[1] * delta[1]
    guarded = None
    if limit is not None and guard > 0.0:
        guarded = np.broadcast_to(np.abs(beta) < guard, np.shape(distance2))
        tested = np.asarray(distance2)[~guarded]
    else:
        tested = np.asarray(distance2)
    if np.any(tested == 0.0):
        raise SelfIntersectionError("two distinct parameters map to the same point")
    with np.errstate(divide="ignore", invalid="ignore"):
        value = delta[0] * (dx_alpha - dx_shifted) / distance2
    if guarded is not None:
        value = np.where(guarded, limit, value)
    return value


def graph_limit(df_alpha, d2f_alpha):
    """Removable value of `K(f, f)` at `beta = 0`."""
    return d2f_alpha / (1.0 + df_alpha * df_alpha)


def contour_limit(dx_alpha, d2x_alpha):
    """Removable value of the Muskat contour integrand at `beta = 0`."""
    speed2 = dx_alpha[0] * dx_alpha[0] + dx_alpha[1] * dx_alpha[1]
    return dx_alpha[0] * d2x_alpha / speed2


def muskat_kernel(f, g, alpha, beta):
    """Pointwise `K(f, g)(alpha, beta)` for graph interfaces `f` and `g`.

    With `f is g`, offsets `|beta| < h / 2` return the removable limit.
    """
    beta = _check_beta(beta)
    alpha, beta = np.broadcast_arrays(np.asarray(alpha, dtype=float), beta)
    shifted = alpha - beta
    limit, guard = None, 0.0
    if f is g:
        limit = graph_limit(f.sample_derivative(alpha), f.sample_second_derivative(alpha))
        guard = 0.5 * f.h
    return muskat_kernel_values(
        beta,
        f.sample(alpha),
        f.sample_derivative(alpha),
        g.sample(shifted),
        g.sample_derivative(shifted),
        limit=limit,
        guard=guard,
    )


def sqg_sigma_kernel(f, g, alpha, beta):
    """Pointwise `Sigma(f, g)(alpha, beta)`."""
    beta = _check_beta(beta)
    alpha, beta = np.broadcast_arrays(np.asarray(alpha, dtype=float), beta)
    shifted = alpha - beta
    return sigma_kernel_values(
        beta,
        f.sample(alpha),
        f.sample_derivative(alpha),
        g.sample(shifted),
        g.sample_derivative(shifted),
    )


def sqg_contour_integrand(x, alpha, beta):
    """SQG front integrand at `(alpha, beta)`; returns the two components."""
    beta = _check_beta(beta)
    alpha, beta = np.broadcast_arrays(np.asarray(alpha, dtype=float), beta)
    shifted = alpha - beta
    return sqg_contour_values(
        x.sample(alpha), x.sample_derivative(alpha), x.sample(shifted), x.sample_derivative(shifted)
    )


def muskat_contour_integrand(x, alpha, beta, guard: Optional[float] = None):
    """Muskat contour integrand at `(alpha, beta)`, with the removable limit for `|beta| < h/2`."""
    beta = _check_beta(beta)
    alpha, beta = np.broadcast_arrays(np.asarray(alpha, dtype=float), beta)
    shifted = alpha - beta
    dx_alpha = x.sample_derivative(alpha)
    limit = contour_limit(dx_alpha, x.sample_second_derivative(alpha))
    return muskat_contour_values(
        beta,
        x.sample(alpha),
        dx_alpha,
        x.sample(shifted),
        x.sample_derivative(shifted),
        limit=limit,
        guard=0.5 * x.h if guard is None else guard,
    )
