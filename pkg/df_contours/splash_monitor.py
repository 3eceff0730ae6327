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
"""Splash monitor
==============

Measures the minimum separation `S(t)` of a state, computes the rate constant `C` of the
no-splash inequality `dS/dt >= -C S |ln S|` and certifies recorded time series against it and
against its integrated form, the double-exponential envelope

  `S(t) >= exp(ln S(0) exp(int_0^t C(s) ds))`.

>>> round(envelope(0.1, 1.0, 1.0), 6)
0.001913
"""
import dataclasses
import json
import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from df_contours import constants
from df_contours.exceptions import EnvelopeDomainError, MalformedSeriesError
from df_contours.geometry import (
    ClosedContour,
    Diagnostics,
    PhasePair,
    branch_charts,
    branch_gap,
    chord_arc_constant,
    curvature,
    graph_curvature,
    min_separation,
    self_approach,
    sup_norms,
)
from df_contours.quadrature import (
    MidpointNodes,
    default_nodes,
    separation_integrand,
    tail_estimate,
)

logger = logging.getLogger("df_contours.monitor")


def monitor_constant(
    diag: Diagnostics,
    densities: Optional[Sequence[float]] = None,
    c0: float = constants.MONITOR_C0,
    eps0: Optional[float] = None,
) -> float:
    """Rate constant `C` of the no-splash inequality.

    Graph pairs (`densities` given):
    `c0 (|zeta21| + |zeta32|) (||f''|| + ||g''||) (||f|| + ||g|| + 1)`.
    Closed contours (`densities` is None): `c0 ||x''|| (1 + 1/c_CA) (1 + 1/eps0)`.

    >>> diag = Diagnostics(0.5, 0.0, 1.0, 1.0, 1.0, 1.0, 0.0, math.nan, 0.0)
    >>> round(monitor_constant(diag, (0.0, 1.0, 2.0)), 4)
    30.5577
    """
    if densities is None:
        if eps0 is None:
            raise ValueError("the contour form of the monitor constant requires eps0")
        return c0 * diag.sup_f2 * (1.0 + 1.0 / diag.chord_arc) * (1.0 + 1.0 / eps0)
    zeta1, zeta2, zeta3 = densities
    zeta21 = (zeta2 - zeta1) / (2.0 * math.pi)
    zeta32 = (zeta3 - zeta2) / (2.0 * math.pi)
    return (
        c0
        * (abs(zeta21) + abs(zeta32))
        * (diag.sup_f2 + diag.sup_g2)
        * (diag.sup_f + diag.sup_g + 1.0)
    )


def envelope_series(S0: float, C, t) -> np.ndarray:
    """Envelope at each time of `t`, the integral of `C` starting at `t[0]` (trapezoids).

    :raises EnvelopeDomainError: unless `0 < S0 < 1`
    :raises MalformedSeriesError: when the samples of `C` and the times `t` differ in length
    """
    if not 0.0 < S0 < 1.0:
        raise EnvelopeDomainError("the envelope requires 0 < S(0) < 1, got %r" % S0)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    C = np.asarray(C, dtype=float)
    if C.size > 1 and C.shape != t.shape:
        raise MalformedSeriesError("%d samples of C for %d times" % (C.size, t.size))
    C = np.broadcast_to(C, t.shape)
    integral = cumulative_trapezoid(C, t, initial=0.0)
    values = np.exp(math.log(S0) * np.exp(integral))
    return np.where(integral == 0.0, S0, values)


def envelope(S0: float, C, t) -> float:
    """Envelope at the final time.

    `C` is either a constant or the samples of the rate constant at the times `t` (which then
    start at 0). With a scalar `t`, the samples of `C` are taken evenly spaced over `[0, t]`.

    >>> round(envelope(0.1, [1.0] * 11, 1.0), 6)
    0.001913
    """
    t = np.asarray(t, dtype=float)
    if t.ndim == 0:
        samples = np.asarray(C).size if np.ndim(C) > 0 else 2
        t = np.linspace(0.0, float(t), max(samples, 2))
    return float(envelope_series(S0, C, t)[-1])


def _slope_gap(pair: PhasePair, alpha: float) -> float:
    """`|f' - g'|` at the vertex of the parabola through the gap around the discrete argmin."""
    grid = pair.grid
    gap = pair.f.values - pair.g.values
    index = int(np.argmin(np.abs(grid.nodes - alpha)))
    position = float(grid.nodes[index])
    if grid.periodic or 0 < index < grid.n - 1:
        left, right = gap[index - 1], gap[(index + 1) % grid.n]
        bend = left - 2.0 * gap[index] + right
        if bend > 0.0:
            position += min(max(0.5 * (left - right) / bend, -1.0), 1.0) * grid.h
    slopes = pair.f.sample_derivative(position) - pair.g.sample_derivative(position)
    return float(abs(slopes))


def measure_pair(
    pair: PhasePair,
    nodes: Optional[MidpointNodes] = None,
    window: Optional[float] = None,
    c0: float = constants.MONITOR_C0,
) -> Diagnostics:
    S, alpha = min_separation(pair.f, pair.g, window)
    sup_f, __, sup_f2 = sup_norms(pair.f)
    sup_g, __, sup_g2 = sup_norms(pair.g)
    curvature_max = float(
        max(np.max(graph_curvature(pair.f)), np.max(graph_curvature(pair.g)))
    )
    tail = 0.0
    if not pair.grid.periodic:
        if nodes is None:
            nodes = default_nodes(pair.grid)
        tail = tail_estimate(separation_integrand(pair, alpha, np.array(nodes.beta)), nodes)
    diag = Diagnostics(
        S,
        alpha,
        sup_f,
        sup_g,
        sup_f2,
        sup_g2,
        curvature_max,
        math.nan,
        0.0,
        _slope_gap(pair, alpha),
        tail,
    )
    return diag._replace(monitor_C=monitor_constant(diag, pair.densities, c0))


def measure_contour(
    x: ClosedContour, eps0: float = 0.5, ball=None, c0: float = constants.MONITOR_C0
) -> Diagnostics:
    """Diagnostics of a closed contour; `ball = ((c1, c2), eps0)` selects the branch gap."""
    slope_gap = math.nan
    if ball is not None:
        center = ball[0]
        S, alpha = branch_gap(x, center, eps0)
        charts = branch_charts(x, center, eps0)
        s = x.points[0, int(np.argmin(np.abs(x.nodes - alpha)))] - charts.center[0]
        slope_gap = float(abs(charts.df(s) - charts.dg(s)))
    else:
        S, alpha = self_approach(x, eps0)
    sup = float(np.max(np.hypot(*x.points)))
    sup2 = float(np.max(np.hypot(*x.second_derivative)))
    chord_arc = chord_arc_constant(x, excluded=eps0, ball=ball)
    diag = Diagnostics(
        S,
        alpha,
        sup,
        sup,
        sup2,
        sup2,
        float(np.max(curvature(x))),
        chord_arc,
        0.0,
        slope_gap,
        0.0,
    )
    return diag._replace(monitor_C=monitor_constant(diag, None, c0, eps0))


def measure(state, config=None, nodes: Optional[MidpointNodes] = None) -> Diagnostics:
    """Diagnostics of a :class:`PhasePair` or a :class:`ClosedContour`."""
    c0 = constants.MONITOR_C0 if config is None else config.c0
    if isinstance(state, PhasePair):
        window = None if config is None else config.window
        return measure_pair(state, nodes=nodes, window=window, c0=c0)
    if config is None:
        return measure_contour(state, c0=c0)
    return measure_contour(state, eps0=config.eps0, ball=config.ball, c0=c0)


@dataclasses.dataclass(eq=False)
class TimeSeries:
    """Recorded diagnostics, one value per record in each column, and the run status."""

    t: np.ndarray
    S: np.ndarray
    alpha_min: np.ndarray
    sup_f2: np.ndarray
    sup_g2: np.ndarray
    curvature_max: np.ndarray
    chord_arc: np.ndarray
    C_mon: np.ndarray
    envelope: np.ndarray
    status: str = constants.STATUS_OK

    def __post_init__(self):
        for name in constants.SERIES_COLUMNS:
            setattr(self, name, np.asarray(getattr(self, name), dtype=float))
        sizes = {getattr(self, name).shape for name in constants.SERIES_COLUMNS}
        if len(sizes) != 1 or len(sizes.pop()) != 1:
            raise MalformedSeriesError("all columns must be one-dimensional of the same length")

    @classmethod
    def empty(cls, status: str = constants.STATUS_OK) -> "TimeSeries":
        return cls(*([()] * len(constants.SERIES_COLUMNS)), status=status)

    @classmethod
    def from_diagnostics(
        cls, times: Sequence[float], diagnostics: List[Diagnostics], status=constants.STATUS_OK
    ) -> "TimeSeries":
        """Build the series, the envelope column starting from the first record."""
        if not diagnostics:
            return cls.empty(status)
        S = np.array([d.S for d in diagnostics])
        C = np.array([d.monitor_C for d in diagnostics])
        t = np.array(times, dtype=float)
        if 0.0 < S[0] < 1.0:
            bound = envelope_series(S[0], C, t)
        else:
            bound = np.full(t.shape, math.nan)
        return cls(
            t,
            S,
            [d.alpha_min for d in diagnostics],
            [d.sup_f2 for d in diagnostics],
            [d.sup_g2 for d in diagnostics],
            [d.curvature_max for d in diagnostics],
            [d.chord_arc for d in diagnostics],
            C,
            bound,
            status=status,
        )

    def __len__(self):
        return self.t.size

    def columns(self) -> Dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in constants.SERIES_COLUMNS}


@dataclasses.dataclass(eq=False)
class BoundCertificate:
    """Verdicts of the no-splash inequality and of the envelope on a series."""

    series: TimeSeries
    dS_dt: np.ndarray
    envelope: np.ndarray
    margin: np.ndarray
    applicable: np.ndarray
    verdict_envelope: bool
    verdict_inequality: bool
    first_violation_t: Optional[float]
    first_envelope_violation_t: Optional[float]
    first_inequality_violation_t: Optional[float]
    min_margin: float
    tol_rate: float
    tol_env: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.verdict_envelope and self.verdict_inequality

    def summary(self) -> Dict:
        def verdict(value):
            return "pass" if value else "fail"

        def number(value):
            return None if value is None or not math.isfinite(value) else float(value)

        return {
            "verdict_envelope": verdict(self.verdict_envelope),
            "verdict_inequality": verdict(self.verdict_inequality),
            "first_violation_t": number(self.first_violation_t),
            "first_envelope_violation_t": number(self.first_envelope_violation_t),
            "first_inequality_violation_t": number(self.first_inequality_violation_t),
            "min_margin": number(self.min_margin),
            "applicable_records": int(np.count_nonzero(self.applicable)),
            "records": len(self.series),
            "small_separation_threshold": float(self.threshold),
            "tol_rate": float(self.tol_rate),
            "tol_env": float(self.tol_env),
            "status": self.series.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"


def _first_time(t: np.ndarray, mask: np.ndarray) -> Optional[float]:
    indices = np.flatnonzero(mask)
    return float(t[indices[0]]) if indices.size else None


def certify(
    series: TimeSeries,
    reference_gap: float = 1.0,
    small_sep_frac: float = 0.1,
    tol_env: float = 1e-3,
    tol_rate: Optional[float] = None,
) -> BoundCertificate:
    """Check `dS/dt >= -C S |ln S| - tol_rate` on the small-separation records and
    `S >= envelope (1 - tol_env)` on all records.

    Records are applicable to the inequality when `S < small_sep_frac min(reference_gap, 1)`.
    `dS/dt` uses centered differences, one-sided at both ends.

    :raises MalformedSeriesError: with less than 3 records or a non-increasing time column
    """
    t, S, C = series.t, series.S, series.C_mon
    if t.size < 3:
        raise MalformedSeriesError("at least 3 records are required, got %d" % t.size)
    if not np.all(np.diff(t) > 0.0):
        raise MalformedSeriesError("the time column must be strictly increasing")
    if not (np.all(np.isfinite(S)) and np.all(S > 0.0)):
        raise MalformedSeriesError("the separation column must be positive and finite")
    dS_dt = np.gradient(S, t)
    if tol_rate is None:
        tol_rate = 1e-3 * float(np.max(np.abs(dS_dt)))
    threshold = small_sep_frac * min(reference_gap, 1.0)
    applicable = S < threshold
    margin = dS_dt + C * S * np.abs(np.log(S))
    inequality_failures = applicable & (margin < -tol_rate)
    if 0.0 < S[0] < 1.0:
        bound = envelope_series(S[0], C, t)
        envelope_failures = S < bound * (1.0 - tol_env)
    else:
        bound = np.full(t.shape, math.nan)
        envelope_failures = np.zeros(t.shape, dtype=bool)
    first_envelope = _first_time(t, envelope_failures)
    first_inequality = _first_time(t, inequality_failures)
    candidates = [x for x in (first_envelope, first_inequality) if x is not None]
    min_margin = float(np.min(margin[applicable])) if np.any(applicable) else math.nan
    certificate = BoundCertificate(
        series,
        dS_dt,
        bound,
        margin,
        applicable,
        not np.any(envelope_failures),
        not np.any(inequality_failures),
        min(candidates) if candidates else None,
        first_envelope,
        first_inequality,
        min_margin,
        tol_rate,
        tol_env,
        threshold,
    )
    log = logger.info if certificate.passed else logger.warning
    log(
        "certificate: envelope %s, inequality %s (%d applicable records)",
        "pass" if certificate.verdict_envelope else "fail",
        "pass" if certificate.verdict_inequality else "fail",
        int(np.count_nonzero(applicable)),
    )
    return certificate
