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
"""Principal-value quadrature
==========================

Integrals are computed with a midpoint rule on symmetric offset nodes
`beta_k = (k + 1/2) step`, `k = -K .. K-1`, so that `beta = 0` is never evaluated. Sums are
folded, `step * sum_{k >= 0} (F(beta_k) + F(-beta_k))`, which makes the integral of an odd
integrand exactly zero.

>>> round(float(pv_integrate_periodic(lambda beta: np.ones_like(beta), 64)), 12)
6.28318530718
>>> float(integrate_realline(lambda beta: beta ** 3, 10.0, 128))
0.0
"""
import logging
import math
from typing import NamedTuple, Optional

import numpy as np

from df_contours import constants
from df_contours.exceptions import ConfigurationError, NumericalError, SplitUndefinedError
from df_contours.geometry import PhasePair, UniformGrid, sup_norms
from df_contours.kernels import graph_limit, muskat_kernel_values, sigma_kernel_values

logger = logging.getLogger("df_contours.quadrature")


class MidpointNodes(NamedTuple):
    """Symmetric midpoint offsets on `[-half_width, half_width]`."""

    beta: np.ndarray
    step: float
    half_width: float

    @property
    def count(self) -> int:
        return self.beta.size


def midpoint_nodes(half_width: float, count: int) -> MidpointNodes:
    count = int(count)
    if count <= 0 or count % 2:
        raise ConfigurationError(
            "a positive even number of quadrature nodes is required, got %d" % count,
            field="quadrature_nodes",
        )
    step = 2.0 * half_width / count
    beta = (np.arange(-count // 2, count // 2) + 0.5) * step
    beta.flags.writeable = False
    return MidpointNodes(beta, step, float(half_width))


def default_nodes(
    grid: UniformGrid, count: Optional[int] = None, half_width: Optional[float] = None
) -> MidpointNodes:
    """Nodes commensurate with `grid`: four offsets per grid interval over the whole window."""
    if half_width is None:
        half_width = grid.half_width
    if count is None:
        intervals = grid.n if grid.periodic else grid.n - 1
        count = 4 * intervals
    return midpoint_nodes(half_width, count)


def check_finite(values: np.ndarray, nodes: MidpointNodes):
    if not np.all(np.isfinite(values)):
        columns = np.flatnonzero(~np.all(np.isfinite(values.reshape(-1, nodes.count)), axis=0))
        raise NumericalError("non-finite integrand value", beta=float(nodes.beta[columns[0]]))


def folded_sum(values: np.ndarray, nodes: MidpointNodes) -> np.ndarray:
    """Midpoint sum over the last axis, pairing `beta_k` with `-beta_k`."""
    half = nodes.count // 2
    pairs = values[..., half:] + values[..., half - 1 :: -1]
    return nodes.step * np.sum(pairs, axis=-1)


def _integrate(integrand, nodes: MidpointNodes):
    values = np.asarray(integrand(np.array(nodes.beta)), dtype=float)
    if values.shape[-1:] != (nodes.count,):
        values = np.broadcast_to(values, values.shape[:-1] + (nodes.count,))
    check_finite(values, nodes)
    return folded_sum(values, nodes)


def pv_integrate_periodic(integrand, n_q: int):
    """Principal value of `int_{-pi}^{pi} F(beta) d beta` with `n_q` midpoint nodes.

    `integrand` receives the array of offsets and returns values along the last axis (extra
    leading axes hold vector components).
    """
    return _integrate(integrand, midpoint_nodes(math.pi, n_q))


def integrate_realline(integrand, half_width: float, n_q: int):
    """Principal value of `int_{-L}^{L} F(beta) d beta`; the omitted tail is `O(1/L)`."""
    if not half_width > 1.0:
        raise ConfigurationError(
            "the truncation half width must exceed 1, got %r" % half_width,
            field="quadrature_half_width",
        )
    return _integrate(integrand, midpoint_nodes(half_width, n_q))


def tail_estimate(values: np.ndarray, nodes: MidpointNodes) -> float:
    """Magnitude of the truncated tail for an integrand decaying like `c / beta^2`."""
    edge = np.abs(values[..., 0]) + np.abs(values[..., -1])
    return float(np.max(edge)) * nodes.beta[-1] ** 2 / nodes.half_width


class SplitTerms(NamedTuple):
    """Contributions of `|beta| < S`, `S <= |beta| < 1` and `|beta| >= 1` to `f_t - g_t`."""

    I: float
    II: float
    III: float
    total: float
    C_I: float
    C_II: float
    C_III: float
    I_bound: float


def separation_integrand(pair: PhasePair, alpha: float, beta: np.ndarray) -> np.ndarray:
    """Integrand of `f_t(alpha) - g_t(alpha)` sampled directly at `alpha - beta`."""
    f, g = pair.f, pair.g
    alpha = np.asarray(alpha, dtype=float)
    shifted = alpha - beta
    f_a, df_a = f.sample(alpha), f.sample_derivative(alpha)
    g_a, dg_a = g.sample(alpha), g.sample_derivative(alpha)
    f_s, df_s = f.sample(shifted), f.sample_derivative(shifted)
    g_s, dg_s = g.sample(shifted), g.sample_derivative(shifted)
    if pair.system == constants.SYSTEM_MUSKAT:
        guard = 0.5 * pair.grid.h
        f_lim = graph_limit(df_a, f.sample_second_derivative(alpha))
        g_lim = graph_limit(dg_a, g.sample_second_derivative(alpha))
        kff = muskat_kernel_values(beta, f_a, df_a, f_s, df_s, limit=f_lim, guard=guard)
        kfg = muskat_kernel_values(beta, f_a, df_a, g_s, dg_s)
        kgg = muskat_kernel_values(beta, g_a, dg_a, g_s, dg_s, limit=g_lim, guard=guard)
        kgf = muskat_kernel_values(beta, g_a, dg_a, f_s, df_s)
    else:
        kff = sigma_kernel_values(beta, f_a, df_a, f_s, df_s)
        kfg = sigma_kernel_values(beta, f_a, df_a, g_s, dg_s)
        kgg = sigma_kernel_values(beta, g_a, dg_a, g_s, dg_s)
        kgf = sigma_kernel_values(beta, g_a, dg_a, f_s, df_s)
    return (pair.zeta21 * kff + pair.zeta32 * kfg) - (pair.zeta32 * kgg + pair.zeta21 * kgf)


def split_terms(
    pair: PhasePair, S: float, alpha_min: float, nodes: Optional[MidpointNodes] = None
) -> SplitTerms:
    """Split the integral of `f_t - g_t` at `alpha_min` into the three regions of `|beta|`.

    Also reports the measured constants `C_I = |I| / S`, `C_II = |II| / (S |ln S|)`,
    `C_III = |III| / S` and the reference bound of `|I|`.

    :raises SplitUndefinedError: when `S >= 1` or `S >= min{f_inf - g_inf, 1}`
    """
    if not 0.0 < S < 1.0:
        raise SplitUndefinedError("the split requires 0 < S < 1, got S=%r" % S)
    if S >= pair.far_gap:
        raise SplitUndefinedError(
            "S=%r is not small against the far-field gap %r" % (S, pair.far_gap)
        )
    if nodes is None:
        nodes = default_nodes(pair.grid)
    values = separation_integrand(pair, alpha_min, np.array(nodes.beta))
    check_finite(values, nodes)
    half = nodes.count // 2
    offsets = nodes.beta[half:]
    pairs = values[half:] + values[half - 1 :: -1]
    regions = [offsets < S, (offsets >= S) & (offsets < 1.0), offsets >= 1.0]
    first, second, third = (float(nodes.step * np.sum(pairs[mask])) for mask in regions)
    total = float(nodes.step * np.sum(pairs))
    log_s = abs(math.log(S))
    I_bound = 2.0 * (
        abs(pair.zeta21) * sup_norms(pair.f)[2] + abs(pair.zeta32) * sup_norms(pair.g)[2]
    ) * (2.0 * S)
    logger.debug("split at alpha=%r: I=%r II=%r III=%r", alpha_min, first, second, third)
    return SplitTerms(
        first,
        second,
        third,
        total,
        abs(first) / S,
        abs(second) / (S * log_s),
        abs(third) / S,
        I_bound,
    )
