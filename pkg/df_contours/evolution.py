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
"""Velocity assembly and time stepping
===================================

Three systems are supported:

  * `muskat_multiphase`: two graphs `f > g` separating three fluids of densities
    `zeta1 <= zeta2 <= zeta3` in a porous medium, on the truncated real line,
  * `sqg_contour`: a closed SQG sharp front, periodic parametrization,
  * `sqg_multiphase`: two periodic SQG graph fronts (any densities).

Velocities are principal-value integrals over the midpoint offsets of
:mod:`df_contours.quadrature`, assembled by blocks of target nodes with
:func:`df_contours.workers.map_rows`. States are advanced with the classical four-stage
Runge-Kutta scheme at a fixed time step.
"""
import logging
import math
from functools import partial
from typing import List, NamedTuple, Optional

import numpy as np

from df_contours import constants
from df_contours.exceptions import (
    ConfigurationError,
    ContourError,
    SplashDetectedError,
    StepRejectedError,
)
from df_contours.geometry import (
    BranchCharts,
    ClosedContour,
    Diagnostics,
    GraphCurve,
    PhasePair,
    branch_charts,
    chord_arc_constant,
)
from df_contours.kernels import (
    contour_limit,
    graph_limit,
    muskat_contour_values,
    muskat_kernel_values,
    sigma_kernel_values,
    sqg_contour_values,
)
from df_contours.quadrature import (
    MidpointNodes,
    check_finite,
    default_nodes,
    folded_sum,
    midpoint_nodes,
)
from df_contours.scenarios import make_scenario_from_config
from df_contours.splash_monitor import TimeSeries, measure
from df_contours.workers import map_rows

logger = logging.getLogger("df_contours.evolution")

FILTER_THRESHOLD = 1e-10


def _graph_block(start: int, stop: int, pair: PhasePair, nodes: MidpointNodes) -> np.ndarray:
    """`(f_t, g_t)` at the target nodes `start .. stop - 1`."""
    f, g = pair.f, pair.g
    rows = (start, stop)
    beta, step = nodes.beta, nodes.step
    f_s, df_s = f.shifted(beta, step, rows=rows)
    g_s, dg_s = g.shifted(beta, step, rows=rows)
    f_a, df_a = f.values[start:stop, None], f.derivative[start:stop, None]
    g_a, dg_a = g.values[start:stop, None], g.derivative[start:stop, None]
    if pair.system == constants.SYSTEM_MUSKAT:
        guard = 0.5 * pair.grid.h
        f_lim = graph_limit(df_a, f.second_derivative[start:stop, None])
        g_lim = graph_limit(dg_a, g.second_derivative[start:stop, None])
        kff = muskat_kernel_values(beta, f_a, df_a, f_s, df_s, limit=f_lim, guard=guard)
        kfg = muskat_kernel_values(beta, f_a, df_a, g_s, dg_s)
        kgg = muskat_kernel_values(beta, g_a, dg_a, g_s, dg_s, limit=g_lim, guard=guard)
        kgf = muskat_kernel_values(beta, g_a, dg_a, f_s, df_s)
    else:
        kff = sigma_kernel_values(beta, f_a, df_a, f_s, df_s)
        kfg = sigma_kernel_values(beta, f_a, df_a, g_s, dg_s)
        kgg = sigma_kernel_values(beta, g_a, dg_a, g_s, dg_s)
        kgf = sigma_kernel_values(beta, g_a, dg_a, f_s, df_s)
    f_integrand = pair.zeta21 * kff + pair.zeta32 * kfg
    g_integrand = pair.zeta32 * kgg + pair.zeta21 * kgf
    check_finite(f_integrand, nodes)
    check_finite(g_integrand, nodes)
    return np.stack([folded_sum(f_integrand, nodes), folded_sum(g_integrand, nodes)])


def _contour_block(start: int, stop: int, curve, nodes: MidpointNodes, muskat: bool):
    """Velocity `(v1, v2)` of a contour at the target nodes `start .. stop - 1`."""
    x_s, dx_s = curve.shifted(nodes.beta, nodes.step, rows=(start, stop))
    x_a = curve.points[:, start:stop, None]
    dx_a = curve.derivative[:, start:stop, None]
    if muskat:
        limit = contour_limit(dx_a, curve.second_derivative[:, start:stop, None])
        values = muskat_contour_values(
            nodes.beta, x_a, dx_a, x_s, dx_s, limit=limit, guard=0.5 * curve.h
        )
    else:
        values = sqg_contour_values(x_a, dx_a, x_s, dx_s)
    check_finite(values, nodes)
    return folded_sum(values, nodes)


def muskat_velocity(pair: PhasePair, nodes: Optional[MidpointNodes] = None, **kwargs):
    """`f_t = int zeta21 K(f, f) + zeta32 K(f, g)` and `g_t = int zeta32 K(g, g) + zeta21 K(g, f)`.

    Extra keyword arguments are passed to :func:`df_contours.workers.map_rows`.
    """
    if pair.system != constants.SYSTEM_MUSKAT:
        raise ConfigurationError("expected a Muskat pair, got %s" % pair.system, field="system")
    if pair.grid.periodic:
        raise ConfigurationError("graph Muskat runs on the real line", field="domain")
    if nodes is None:
        nodes = default_nodes(pair.grid)
    if not nodes.half_width > 1.0:
        raise ConfigurationError(
            "the truncation half width must exceed 1", field="quadrature_half_width"
        )
    velocity = map_rows(_graph_block, pair.grid.n, pair, nodes, **kwargs)
    return velocity[0], velocity[1]


def sqg_multiphase_velocity(pair: PhasePair, nodes: Optional[MidpointNodes] = None, **kwargs):
    """Same assembly as :func:`muskat_velocity` with the kernel `Sigma`, periodic domain."""
    if not pair.grid.periodic:
        raise ConfigurationError("SQG fronts run on the periodic domain", field="domain")
    if pair.system != constants.SYSTEM_SQG_MULTIPHASE:
        pair = PhasePair(pair.f, pair.g, pair.densities, constants.SYSTEM_SQG_MULTIPHASE)
    if nodes is None:
        nodes = default_nodes(pair.grid)
    velocity = map_rows(_graph_block, pair.grid.n, pair, nodes, **kwargs)
    return velocity[0], velocity[1]


def sqg_contour_velocity(x: ClosedContour, nodes: Optional[MidpointNodes] = None, **kwargs):
    """`x_t(alpha) = PV int (x'(alpha) - x'(alpha - beta)) / |x(alpha) - x(alpha - beta)| d beta`.

    Returns an array of shape (2, N).
    """
    if nodes is None:
        nodes = default_nodes(x.grid)
    return map_rows(_contour_block, x.n, x, nodes, False, **kwargs)


def muskat_contour_velocity(
    curve, zeta: float = 1.0 / (2.0 * math.pi), nodes: Optional[MidpointNodes] = None, **kwargs
):
    """Single-interface Muskat velocity `zeta PV int delta x1 delta x' / |delta x|^2 d beta`.

    `curve` is a :class:`ClosedContour` or a :class:`GraphCurve`; closed Muskat contours are only
    evaluated, never evolved.
    """
    if nodes is None:
        nodes = default_nodes(curve.grid)
    return zeta * map_rows(_contour_block, curve.n, curve, nodes, True, **kwargs)


class BranchVelocity(NamedTuple):
    """Chart decomposition of the SQG velocity near a splash point.

    Chart velocities hold the two integrals over `(-eps0, eps0)`; the remainders `R` are the full
    second velocity component minus the chart velocities.
    """

    upper: np.ndarray
    lower: np.ndarray
    f_t: np.ndarray
    g_t: np.ndarray
    full_f: np.ndarray
    full_g: np.ndarray
    R_f: np.ndarray
    R_g: np.ndarray
    bound: float
    chord_arc: float
    orientation: int

    @property
    def within_bound(self) -> bool:
        remainder = max(np.max(np.abs(self.R_f)), np.max(np.abs(self.R_g)))
        return bool(remainder <= self.bound)


def _chart_integral(first, dfirst, second, dsecond, s0, nodes: MidpointNodes):
    """`int (a'(s0) - b'(s0 - beta)) / sqrt(beta^2 + (a(s0) - b(s0 - beta))^2)` on the chart."""
    s0 = s0[:, None]
    shifted = s0 - nodes.beta
    values = sigma_kernel_values(
        nodes.beta, first(s0), dfirst(s0), second(shifted), dsecond(shifted)
    )
    check_finite(values, nodes)
    return folded_sum(values, nodes)


def _parameter_window(x: ClosedContour, indices: np.ndarray):
    """Smallest parameter interval (possibly wrapping) holding the nodes `indices`."""
    ordered = np.sort(indices)
    steps = np.diff(ordered)
    if ordered.size < 2 or np.all(steps == 1):
        return float(x.nodes[ordered[0]]), float(x.nodes[ordered[-1]])
    cut = int(np.argmax(steps))
    return float(x.nodes[ordered[cut + 1]]), float(x.nodes[ordered[cut]])


def sqg_branch_velocity(
    x: ClosedContour,
    center=(0.0, 0.0),
    eps0: float = 0.5,
    nodes: Optional[MidpointNodes] = None,
    chart_nodes: int = 512,
    charts: Optional[BranchCharts] = None,
    **kwargs
) -> BranchVelocity:
    """Split the SQG velocity at the branch nodes with `|s| <= eps0 / 2` into chart integrals
    and remainders, and evaluate the remainder bound `(||x''|| / c_CA) (2 pi - 2 eps0)`.

    Chart velocities: `f_t = sigma (A(f, f) - A(f, g))`, `g_t = sigma (A(g, f) - A(g, g))`,
    `A(a, b)` the chart integral of `(a' - b') / |(beta, a - b)|`, `sigma = +1` when the upper
    branch is traversed with increasing `x1`.

    :raises ChartError: when the contour does not split into two graphs near `center`
    """
    if charts is None:
        charts = branch_charts(x, center, eps0)
    upper = charts.window(x, upper=True)
    lower = charts.window(x, upper=False)
    s_upper = charts.chart(x, upper)
    s_lower = charts.chart(x, lower)
    local = midpoint_nodes(eps0, chart_nodes)
    f, df, g, dg = charts.f, charts.df, charts.g, charts.dg
    sigma = charts.orientation
    a_ff = _chart_integral(f, df, f, df, s_upper, local)
    a_fg = _chart_integral(f, df, g, dg, s_upper, local)
    a_gf = _chart_integral(g, dg, f, df, s_lower, local)
    a_gg = _chart_integral(g, dg, g, dg, s_lower, local)
    f_t = sigma * (a_ff - a_fg)
    g_t = sigma * (a_gf - a_gg)
    full = sqg_contour_velocity(x, nodes, **kwargs)
    full_f, full_g = full[1, upper], full[1, lower]
    ball = ((charts.center[0], charts.center[1]), eps0)
    chord_arc = min(
        chord_arc_constant(x, excluded=eps0, window=_parameter_window(x, upper), ball=ball),
        chord_arc_constant(x, excluded=eps0, window=_parameter_window(x, lower), ball=ball),
    )
    sup2 = float(np.max(np.hypot(*x.second_derivative)))
    bound = sup2 / chord_arc * (2.0 * math.pi - 2.0 * eps0)
    result = BranchVelocity(
        upper, lower, f_t, g_t, full_f, full_g, full_f - f_t, full_g - g_t, bound, chord_arc, sigma
    )
    logger.debug(
        "branch velocity: max |R| = %r, bound %r",
        float(max(np.max(np.abs(result.R_f)), np.max(np.abs(result.R_g)))),
        bound,
    )
    return result


def spectral_filter(values, threshold: float = FILTER_THRESHOLD) -> np.ndarray:
    """Zero the Fourier modes below `threshold` times the largest one, per component."""
    values = np.asarray(values, dtype=float)
    coefficients = np.fft.rfft(values, axis=-1)
    amplitude = np.abs(coefficients)
    cutoff = threshold * np.max(amplitude, axis=-1, keepdims=True)
    coefficients = np.where(amplitude < cutoff, 0.0, coefficients)
    return np.fft.irfft(coefficients, n=values.shape[-1], axis=-1)


def state_velocity(
    state, system: Optional[str] = None, nodes: Optional[MidpointNodes] = None, **kwargs
):
    """Velocity of `state` as an array shaped like `state.as_array()`."""
    if isinstance(state, PhasePair):
        system = system or state.system
        if system == constants.SYSTEM_MUSKAT:
            return np.stack(muskat_velocity(state, nodes, **kwargs))
        return np.stack(sqg_multiphase_velocity(state, nodes, **kwargs))
    if system not in (None, constants.SYSTEM_SQG_CONTOUR):
        raise ConfigurationError("closed contours only evolve as SQG fronts", field="system")
    return sqg_contour_velocity(state, nodes, **kwargs)


def _state_step(state) -> float:
    if isinstance(state, ClosedContour):
        return state.min_segment
    return state.grid.h


def step(state, dt: float, velocity=None, filter: bool = False, cfl: float = 0.5):
    """One classical Runge-Kutta step of size `dt`.

    `velocity(state)` defaults to :func:`state_velocity`. The step is rejected unless
    `dt <= cfl * h / max |v|` for the first stage, `h` being the grid step of graphs or the
    shortest segment of contours.

    :raises StepRejectedError: when the time step violates the bound
    """
    if not dt > 0.0:
        raise StepRejectedError("the time step must be positive, got %r" % dt)
    if velocity is None:
        velocity = state_velocity
    y = state.as_array()
    k1 = velocity(state)
    speed = float(np.max(np.abs(k1)))
    if speed > 0.0 and dt > cfl * _state_step(state) / speed:
        raise StepRejectedError(
            "dt=%r exceeds the bound %r (max velocity %r)"
            % (dt, cfl * _state_step(state) / speed, speed)
        )
    k2 = velocity(state.with_array(y + 0.5 * dt * k1))
    k3 = velocity(state.with_array(y + 0.5 * dt * k2))
    k4 = velocity(state.with_array(y + dt * k3))
    y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if filter:
        y = spectral_filter(y)
    return state.with_array(y)


class SimulationResult(NamedTuple):
    """Recorded series, snapshots at the recorded times and the terminating error, if any."""

    config: object
    series: TimeSeries
    diagnostics: List[Diagnostics]
    snapshots: List[np.ndarray]
    error: Optional[ContourError]
    reference_gap: float = 1.0

    @property
    def status(self) -> str:
        return self.series.status


def _status(error: Optional[ContourError]) -> str:
    if error is None:
        return constants.STATUS_OK
    if isinstance(error, SplashDetectedError):
        return constants.STATUS_SPLASH
    return "%s:%s" % (constants.STATUS_ERROR, error.code)


def snapshot(state) -> np.ndarray:
    """`(alpha, f, g)` or `(alpha, x1, x2)` columns of a state."""
    return np.vstack([state.grid.nodes, state.as_array()])


def run_simulation(config, **kwargs) -> SimulationResult:
    """Step the configured scenario until `t_end` or the first evaluation error.

    Diagnostics are recorded at `t = 0`, every `record_every` steps and at the final step.
    Configuration errors of the initial state are raised; errors during the run terminate it
    and are reported by the series status.
    """
    state = make_scenario_from_config(config)
    reference_gap = state.far_gap if isinstance(state, PhasePair) else 1.0
    nodes = config.nodes()
    velocity = partial(state_velocity, system=config.system, nodes=nodes, **kwargs)
    times, diagnostics, snapshots = [], [], []

    def record(t):
        diagnostics.append(measure(state, config, nodes=nodes))
        times.append(t)
        snapshots.append(snapshot(state))
        logger.info("t=%.6g S=%.17g C=%.6g", t, diagnostics[-1].S, diagnostics[-1].monitor_C)

    error = None
    try:
        record(0.0)
        steps = config.steps
        for index in range(1, steps + 1):
            state = step(state, config.dt, velocity, filter=config.filter_enabled, cfl=config.cfl)
            logger.debug("step %d/%d done", index, steps)
            if index % config.record_every == 0 or index == steps:
                record(index * config.dt)
    except SplashDetectedError as e:
        logger.warning("splash detected at step %d: %s", len(times), e)
        error = e
    except ContourError as e:
        logger.warning("run terminated: %s", e)
        error = e
    except Exception as e:
        logger.exception(e)
        raise
    series = TimeSeries.from_diagnostics(times, diagnostics, status=_status(error))
    return SimulationResult(config, series, diagnostics, snapshots, error, reference_gap)
