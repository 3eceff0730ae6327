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
"""Interfaces, contours and their diagnostics
==========================================

Two kinds of curves are handled:

  * :class:`GraphInterface`: a graph `x2 = f(x1)` sampled on a uniform grid, either
    `2 pi`-periodic on `[-pi, pi)` or truncated to `[-A, A]` with a far-field value,
  * :class:`ClosedContour`: a closed counterclockwise curve `x(alpha)` sampled at uniform
    parameter values on `[-pi, pi)`.

All of them are immutable snapshots: arrays are read-only and every transformation returns a
new object. Derivatives use fourth-order centered differences (periodic wraparound, shifted
one-sided stencils at real-line edges). Off-grid values use local four-point cubic
interpolation, which keeps sampling bitwise equivariant under shifts by whole nodes.

>>> grid = UniformGrid(33, periodic=False, half_width=2.0)
>>> f = GraphInterface(grid.nodes ** 2, grid)
>>> [round(x, 8) for x in sup_norms(f)]
[4.0, 4.0, 2.0]
"""
import math
from functools import cached_property
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from df_contours import constants
from df_contours.exceptions import (
    ChartError,
    ConfigurationError,
    DegenerateParametrizationError,
    InsufficientResolutionError,
    PhaseOverlapError,
    SelfIntersectionError,
)

# one-sided stencils (coefficients / 12), applied to the five outermost samples
_D1_LEFT = (
    np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0,
    np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0,
)
_D1_RIGHT = (
    np.array([-1.0, 6.0, -18.0, 10.0, 3.0]) / 12.0,
    np.array([3.0, -16.0, 36.0, -48.0, 25.0]) / 12.0,
)
_D2_LEFT = (
    np.array([35.0, -104.0, 114.0, -56.0, 11.0]) / 12.0,
    np.array([11.0, -20.0, 6.0, 4.0, -1.0]) / 12.0,
)
_D2_RIGHT = (
    np.array([-1.0, 4.0, 6.0, -20.0, 11.0]) / 12.0,
    np.array([11.0, -56.0, 114.0, -104.0, 35.0]) / 12.0,
)


def derivatives(values, h: float, periodic: bool) -> Tuple[np.ndarray, np.ndarray]:
    """Fourth-order finite-difference first and second derivatives along the last axis.

    :raises InsufficientResolutionError: with less than five samples
    """
    v = np.asarray(values, dtype=float)
    n = v.shape[-1]
    if n < 5:
        raise InsufficientResolutionError(
            "at least 5 samples are required for fourth-order stencils, got %d" % n
        )
    if periodic:
        p1, m1 = np.roll(v, -1, axis=-1), np.roll(v, 1, axis=-1)
        p2, m2 = np.roll(v, -2, axis=-1), np.roll(v, 2, axis=-1)
        d1 = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h)
        d2 = (16.0 * (p1 + m1) - (p2 + m2) - 30.0 * v) / (12.0 * h * h)
        return d1, d2
    d1 = np.empty_like(v)
    d2 = np.empty_like(v)
    d1[..., 2:-2] = (8.0 * (v[..., 3:-1] - v[..., 1:-3]) - (v[..., 4:] - v[..., :-4])) / (
        12.0 * h
    )
    d2[..., 2:-2] = (
        16.0 * (v[..., 3:-1] + v[..., 1:-3]) - (v[..., 4:] + v[..., :-4]) - 30.0 * v[..., 2:-2]
    ) / (12.0 * h * h)
    left, right = v[..., :5], v[..., -5:]
    for k in range(2):
        d1[..., k] = (left @ _D1_LEFT[k]) / h
        d2[..., k] = (left @ _D2_LEFT[k]) / (h * h)
        d1[..., n - 2 + k] = (right @ _D1_RIGHT[k]) / h
        d2[..., n - 2 + k] = (right @ _D2_RIGHT[k]) / (h * h)
    return d1, d2


def _cubic_weights(t):
    """Lagrange weights of the samples j-1, j, j+1, j+2 at `alpha_j + t h`."""
    return (
        -t * (t - 1.0) * (t - 2.0) / 6.0,
        (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
        -(t + 1.0) * t * (t - 2.0) / 2.0,
        (t + 1.0) * t * (t - 1.0) / 6.0,
    )


def _readonly(array) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.flags.writeable = False
    return array


class UniformGrid:
    """Uniform node layout shared by interfaces and contours.

    Periodic grids have nodes `-pi + j h` with `h = 2 pi / n`; real-line grids have `n` nodes
    placed symmetrically on `[-A, A]` (an odd `n` puts a node at 0).
    """

    def __init__(self, n: int, periodic: bool = True, half_width: Optional[float] = None):
        self.n = int(n)
        self.periodic = bool(periodic)
        if self.n < constants.MIN_NODES:
            raise ConfigurationError(
                "at least %d nodes are required, got %d" % (constants.MIN_NODES, self.n),
                field="n",
            )
        if self.periodic:
            self.half_width = math.pi
            self.h = 2.0 * math.pi / self.n
            nodes = -math.pi + self.h * np.arange(self.n)
        else:
            if half_width is None or not half_width > 0.0:
                raise ConfigurationError(
                    "a positive half width is required on the real line", field="half_width"
                )
            self.half_width = float(half_width)
            self.h = 2.0 * self.half_width / (self.n - 1)
            nodes = np.linspace(-self.half_width, self.half_width, self.n)
            nodes = 0.5 * (nodes - nodes[::-1])
        self.origin = float(nodes[0])
        self.nodes = _readonly(nodes)

    @property
    def kind(self) -> str:
        return constants.DOMAIN_PERIODIC if self.periodic else constants.DOMAIN_REALLINE

    def __eq__(self, other):
        return (
            isinstance(other, UniformGrid)
            and (self.n, self.periodic, self.half_width)
            == (other.n, other.periodic, other.half_width)
        )

    def __hash__(self):
        return hash((self.n, self.periodic, self.half_width))

    def __repr__(self):
        return "UniformGrid(%d, %s, h=%r)" % (self.n, self.kind, self.h)

    def _stencil(self, values: np.ndarray, first: np.ndarray, weights, fill: float):
        """Sum the four weighted samples starting at index `first` (sample j-1)."""
        n = self.n
        if self.periodic:
            samples = [values.take((first + s) % n, axis=-1) for s in range(4)]
        else:
            pad = 0
            if first.size:
                pad = max(0, -int(first.min()), int(first.max()) + 4 - n)
            padded = values
            if pad:
                filler = np.full(values.shape[:-1] + (pad,), fill)
                padded = np.concatenate([filler, values, filler], axis=-1)
            samples = [padded.take(first + s + pad, axis=-1) for s in range(4)]
        result = weights[0] * samples[0]
        for s in range(1, 4):
            result = result + weights[s] * samples[s]
        return result

    def interpolate(self, values, points, fill: float = 0.0) -> np.ndarray:
        """Local cubic interpolation of `values` (last axis on the nodes) at `points`.

        On the real line, points whose stencil lies entirely beyond the truncated window get
        the far-field value `fill`.
        """
        values = np.asarray(values, dtype=float)
        points = np.asarray(points, dtype=float)
        u = (points - self.origin) / self.h
        if self.periodic:
            u = np.mod(u, self.n)
        j = np.floor(u)
        t = u - j
        j = j.astype(np.int64)
        if self.periodic:
            return self._stencil(values, (j - 1) % self.n, _cubic_weights(t), fill)
        outside = (j < -2) | (j > self.n)
        first = np.clip(j, -2, self.n) - 1
        result = self._stencil(values, first, _cubic_weights(t), fill)
        return np.where(outside, fill, result)

    def subgrid(self, values, m: int, n_lo: int, n_hi: int, fill: float = 0.0) -> np.ndarray:
        """Values at `origin + (k + 1/2) h / m` for integer `k` in `[n_lo, n_hi]`."""
        values = np.asarray(values, dtype=float)
        q_lo, q_hi = n_lo // m, n_hi // m
        qs = np.arange(q_lo, q_hi + 1)
        out = np.empty(values.shape[:-1] + (qs.size * m,))
        if self.periodic:
            first = (qs - 1) % self.n
        else:
            first = qs - 1
        for r in range(m):
            weights = _cubic_weights((r + 0.5) / m)
            out[..., r::m] = self._stencil(values, first, weights, fill)
        if not self.periodic:
            outside = np.repeat((qs < -2) | (qs > self.n), m)
            out[..., outside] = fill
        return out[..., n_lo - q_lo * m : n_hi - q_lo * m + 1]

    def commensurate(self, beta: np.ndarray, step: float) -> int:
        """Return `m` when the midpoint nodes `beta` (step `step`) satisfy `h = m step`, else 0."""
        ratio = self.h / step
        m = int(round(ratio))
        count = beta.size
        if m < 1 or abs(ratio - m) > 1e-9 * m or count % 2:
            return 0
        if abs(beta[0] + (count / 2 - 0.5) * step) > 1e-9 * step:
            return 0
        return m

    def shifted(self, values, beta, step: float, rows=None, fill: float = 0.0) -> np.ndarray:
        """Values at `alpha_i - beta_k` for the target nodes `rows`: shape (..., R, K)."""
        beta = np.asarray(beta, dtype=float)
        start, stop = (0, self.n) if rows is None else rows
        m = self.commensurate(beta, step)
        if not m:
            points = np.subtract.outer(self.nodes[start:stop], beta)
            return self.interpolate(values, points, fill=fill)
        count = beta.size
        n_lo = start * m - count // 2
        n_hi = (stop - 1) * m + count // 2 - 1
        fine = self.subgrid(values, m, n_lo, n_hi, fill=fill)
        index = np.add.outer(m * np.arange(stop - start), np.arange(count - 1, -1, -1))
        return fine[..., index]


class GraphInterface:
    """Graph `x2 = f(x1)` sampled on a :class:`UniformGrid`.

    :param values: samples at the grid nodes
    :param grid: the grid
    :param far_field: limit value on the real line (default: mean of the two edge samples)
    :param decay_tol: admissible distance between the edge samples and the far field
    :param check_decay: validate the far-field decay (initial data only)
    """

    def __init__(
        self,
        values,
        grid: UniformGrid,
        far_field: Optional[float] = None,
        decay_tol: float = constants.DEFAULT_DECAY_TOL,
        check_decay: bool = True,
    ):
        self.grid = grid
        self.values = _readonly(values)
        if self.values.shape != (grid.n,):
            raise ConfigurationError(
                "expected %d samples, got shape %r" % (grid.n, self.values.shape),
                field="values",
            )
        if not np.all(np.isfinite(self.values)):
            raise ConfigurationError("interface samples must be finite", field="values")
        if grid.periodic:
            self.far_field = None
        else:
            if far_field is None:
                far_field = 0.5 * (self.values[0] + self.values[-1])
            self.far_field = float(far_field)
            edge = max(
                abs(self.values[0] - self.far_field), abs(self.values[-1] - self.far_field)
            )
            if check_decay and edge > decay_tol:
                raise ConfigurationError(
                    "edge samples are %.3g away from the far field (tolerance %.3g)"
                    % (edge, decay_tol),
                    field="half_width",
                )

    @classmethod
    def from_function(cls, function, grid: UniformGrid, **kwargs) -> "GraphInterface":
        return cls(function(np.array(grid.nodes)), grid, **kwargs)

    @property
    def domain_kind(self) -> str:
        return self.grid.kind

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def fill(self) -> float:
        return 0.0 if self.far_field is None else self.far_field

    @cached_property
    def _derivatives(self):
        d1, d2 = derivatives(self.values, self.grid.h, self.grid.periodic)
        return _readonly(d1), _readonly(d2)

    @property
    def derivative(self) -> np.ndarray:
        return self._derivatives[0]

    @property
    def second_derivative(self) -> np.ndarray:
        return self._derivatives[1]

    def sample(self, points):
        return self.grid.interpolate(self.values, points, fill=self.fill)

    def sample_derivative(self, points):
        return self.grid.interpolate(self.derivative, points)

    def sample_second_derivative(self, points):
        return self.grid.interpolate(self.second_derivative, points)

    def shifted(self, beta, step: float, rows=None) -> Tuple[np.ndarray, np.ndarray]:
        """Values and slopes at `alpha_i - beta_k` for the target rows."""
        values = self.grid.shifted(self.values, beta, step, rows=rows, fill=self.fill)
        slopes = self.grid.shifted(self.derivative, beta, step, rows=rows)
        return values, slopes

    def with_values(self, values) -> "GraphInterface":
        return GraphInterface(values, self.grid, far_field=self.far_field, check_decay=False)

    def roll(self, shift: int) -> "GraphInterface":
        """Shift a periodic interface by whole nodes."""
        if not self.grid.periodic:
            raise ConfigurationError("only periodic interfaces can be rolled", field="domain")
        return self.with_values(np.roll(self.values, shift))

    def same_grid(self, other: "GraphInterface") -> bool:
        return self.grid == other.grid

    def __repr__(self):
        return "GraphInterface(%r)" % self.grid


class ClosedContour:
    """Closed counterclockwise curve sampled at `alpha_j = -pi + j h`.

    :param points: array of shape (2, N) with the `x1` and `x2` samples
    :param check_simple: reject curves with coincident nodes
    """

    def __init__(self, points, check_simple: bool = True):
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[0] != 2:
            raise ConfigurationError("contour samples must have shape (2, N)", field="values")
        self.grid = UniformGrid(points.shape[1], periodic=True)
        self.points = _readonly(points)
        if not np.all(np.isfinite(self.points)):
            raise ConfigurationError("contour samples must be finite", field="values")
        if self.signed_area <= 0.0:
            raise ConfigurationError("contours must be counterclockwise", field="values")
        if check_simple:
            distinct = np.unique(self.points.T, axis=0).shape[0]
            if distinct != self.grid.n:
                raise SelfIntersectionError(
                    "%d nodes coincide with another node" % (self.grid.n - distinct)
                )

    @classmethod
    def from_function(cls, function, n: int, **kwargs) -> "ClosedContour":
        grid = UniformGrid(n, periodic=True)
        return cls(function(np.array(grid.nodes)), **kwargs)

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    @cached_property
    def _derivatives(self):
        d1, d2 = derivatives(self.points, self.grid.h, True)
        return _readonly(d1), _readonly(d2)

    @property
    def derivative(self) -> np.ndarray:
        return self._derivatives[0]

    @property
    def second_derivative(self) -> np.ndarray:
        return self._derivatives[1]

    @property
    def signed_area(self) -> float:
        x1, x2 = self.points
        return 0.5 * float(np.sum(x1 * np.roll(x2, -1) - np.roll(x1, -1) * x2))

    @property
    def min_segment(self) -> float:
        return float(np.min(np.hypot(*(np.roll(self.points, -1, axis=1) - self.points))))

    def sample(self, points):
        return self.grid.interpolate(self.points, points)

    def sample_derivative(self, points):
        return self.grid.interpolate(self.derivative, points)

    def sample_second_derivative(self, points):
        return self.grid.interpolate(self.second_derivative, points)

    def shifted(self, beta, step: float, rows=None) -> Tuple[np.ndarray, np.ndarray]:
        both = np.concatenate([self.points, self.derivative])
        shifted = self.grid.shifted(both, beta, step, rows=rows)
        return shifted[:2], shifted[2:]

    def with_points(self, points, check_simple: bool = False) -> "ClosedContour":
        return ClosedContour(points, check_simple=check_simple)

    def translate(self, dx: float, dy: float) -> "ClosedContour":
        return self.with_points(self.points + np.array([[dx], [dy]]))

    def roll(self, shift: int) -> "ClosedContour":
        return self.with_points(np.roll(self.points, shift, axis=1))

    def as_array(self) -> np.ndarray:
        return np.array(self.points)

    def with_array(self, array) -> "ClosedContour":
        return self.with_points(array)

    def __repr__(self):
        return "ClosedContour(n=%d)" % self.n


class GraphCurve:
    """A graph `x(alpha) = (alpha, f(alpha))` seen through the contour interface."""

    def __init__(self, interface: GraphInterface):
        self.interface = interface
        self.grid = interface.grid

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def points(self) -> np.ndarray:
        return np.stack([self.grid.nodes, self.interface.values])

    @property
    def derivative(self) -> np.ndarray:
        return np.stack([np.ones(self.n), self.interface.derivative])

    @property
    def second_derivative(self) -> np.ndarray:
        return np.stack([np.zeros(self.n), self.interface.second_derivative])

    def sample(self, points):
        points = np.asarray(points, dtype=float)
        return np.stack([points, self.interface.sample(points)])

    def sample_derivative(self, points):
        points = np.asarray(points, dtype=float)
        return np.stack([np.ones_like(points), self.interface.sample_derivative(points)])

    def sample_second_derivative(self, points):
        points = np.asarray(points, dtype=float)
        return np.stack(
            [np.zeros_like(points), self.interface.sample_second_derivative(points)]
        )

    def shifted(self, beta, step: float, rows=None) -> Tuple[np.ndarray, np.ndarray]:
        start, stop = (0, self.n) if rows is None else rows
        x1 = np.subtract.outer(self.grid.nodes[start:stop], np.asarray(beta, dtype=float))
        values, slopes = self.interface.shifted(beta, step, rows=rows)
        return np.stack([x1, values]), np.stack([np.ones_like(x1), slopes])


class PhasePair:
    """Two graph interfaces `f > g` on the same grid with the densities of the three phases.

    The Muskat system requires the stable ordering `zeta1 <= zeta2 <= zeta3` (`zeta1 < zeta3`; a
    repeated density merges two phases); the multi-phase SQG system accepts any densities.
    """

    def __init__(
        self,
        f: GraphInterface,
        g: GraphInterface,
        densities=(0.0, 1.0, 2.0),
        system: str = constants.SYSTEM_MUSKAT,
    ):
        if not f.same_grid(g):
            raise ConfigurationError("f and g must share the same grid", field="grid")
        if system not in constants.GRAPH_SYSTEMS:
            raise ConfigurationError("%r is not a graph system" % system, field="system")
        self.f = f
        self.g = g
        self.densities = tuple(float(x) for x in densities)
        if len(self.densities) != 3:
            raise ConfigurationError("three densities are required", field="densities")
        self.system = system
        zeta1, zeta2, zeta3 = self.densities
        if system == constants.SYSTEM_MUSKAT and not (zeta1 <= zeta2 <= zeta3 and zeta1 < zeta3):
            raise ConfigurationError(
                "the Muskat system requires zeta1 <= zeta2 <= zeta3 with zeta1 < zeta3"
                " (lighter fluid on top)",
                field="densities",
            )
        gap = f.values - g.values
        if np.any(gap <= 0.0):
            index = int(np.argmin(gap))
            raise PhaseOverlapError(
                "f <= g at alpha=%r (gap %r)" % (float(f.nodes[index]), float(gap[index]))
            )

    @property
    def grid(self) -> UniformGrid:
        return self.f.grid

    @property
    def zeta21(self) -> float:
        return (self.densities[1] - self.densities[0]) / (2.0 * math.pi)

    @property
    def zeta32(self) -> float:
        return (self.densities[2] - self.densities[1]) / (2.0 * math.pi)

    @property
    def far_gap(self) -> float:
        """`min{f_inf - g_inf, 1}`; 1 on periodic grids."""
        if self.f.far_field is None:
            return 1.0
        return min(self.f.far_field - self.g.far_field, 1.0)

    def as_array(self) -> np.ndarray:
        return np.stack([self.f.values, self.g.values])

    def with_array(self, array) -> "PhasePair":
        return PhasePair(
            self.f.with_values(array[0]),
            self.g.with_values(array[1]),
            self.densities,
            self.system,
        )

    def shift(self, offset: float) -> "PhasePair":
        """Move both interfaces and their far fields vertically."""

        def moved(interface: GraphInterface) -> GraphInterface:
            far = None if interface.far_field is None else interface.far_field + offset
            return GraphInterface(
                interface.values + offset, interface.grid, far_field=far, check_decay=False
            )

        return PhasePair(moved(self.f), moved(self.g), self.densities, self.system)

    def roll(self, shift: int) -> "PhasePair":
        return PhasePair(self.f.roll(shift), self.g.roll(shift), self.densities, self.system)

    def __repr__(self):
        return "PhasePair(%s, %r, densities=%r)" % (self.system, self.grid, self.densities)


class Diagnostics(NamedTuple):
    """Measured quantities of one state (see :func:`df_contours.splash_monitor.measure`)."""

    S: float
    alpha_min: float
    sup_f: float
    sup_g: float
    sup_f2: float
    sup_g2: float
    curvature_max: float
    chord_arc: float
    monitor_C: float
    slope_gap: float = math.nan
    tail_estimate: float = math.nan


def min_separation(
    f: GraphInterface, g: GraphInterface, window: Optional[float] = None
) -> Tuple[float, float]:
    """Vertical gap `S = min_j (f_j - g_j)` and the first node attaining it.

    On the real line the minimum is searched in `[-W, W]` (default `W = A/2`).

    >>> grid = UniformGrid(16)
    >>> min_separation(GraphInterface(np.ones(16), grid), GraphInterface(np.zeros(16), grid))
    (1.0, -3.141592653589793)
    """
    if not f.same_grid(g):
        raise ConfigurationError("f and g must share the same grid", field="grid")
    gap = f.values - g.values
    if np.any(gap <= 0.0):
        index = int(np.argmin(gap))
        raise PhaseOverlapError("f <= g at alpha=%r" % float(f.nodes[index]))
    nodes = f.nodes
    if not f.grid.periodic:
        if window is None:
            window = 0.5 * f.grid.half_width
        candidates = np.flatnonzero(np.abs(nodes) <= window * (1.0 + 1e-12))
    else:
        candidates = np.arange(f.grid.n)
    index = candidates[int(np.argmin(gap[candidates]))]
    return float(gap[index]), float(nodes[index])


def sup_norms(interface: GraphInterface) -> Tuple[float, float, float]:
    """`(||f||, ||f'||, ||f''||)` in the sup norm over the samples."""
    d1, d2 = derivatives(interface.values, interface.h, interface.grid.periodic)
    return (
        float(np.max(np.abs(interface.values))),
        float(np.max(np.abs(d1))),
        float(np.max(np.abs(d2))),
    )


def _window_rows(nodes: np.ndarray, window) -> np.ndarray:
    if window is None:
        return np.arange(nodes.size)
    low, high = window
    if low <= high:
        mask = (nodes >= low) & (nodes <= high)
    else:
        mask = (nodes >= low) | (nodes <= high)
    return np.flatnonzero(mask)


def _pair_scan(x: ClosedContour, excluded: float, window, ball):
    """Distances and parameter offsets between window nodes and admissible far nodes."""
    n = x.n
    rows = _window_rows(x.nodes, window)
    if rows.size == 0:
        raise ConfigurationError("the chord-arc window contains no node", field="window")
    offsets = np.arange(1, n)
    columns = (rows[:, None] + offsets[None, :]) % n
    beta = np.minimum(offsets, n - offsets) * x.h
    admissible = np.broadcast_to(beta >= excluded * (1.0 - 1e-12), columns.shape)
    if ball is not None:
        (c1, c2), radius = ball
        inside = np.hypot(x.points[0] - c1, x.points[1] - c2) < radius
        admissible = admissible & ~inside[columns]
    delta = x.points[:, rows][:, :, None] - x.points[:, columns]
    distance = np.hypot(delta[0], delta[1])
    return rows, columns, distance, np.broadcast_to(beta, columns.shape), admissible


def chord_arc_constant(
    x: ClosedContour,
    excluded: float = 0.0,
    window: Optional[Tuple[float, float]] = None,
    ball=None,
) -> float:
    """`min |x(alpha) - x(alpha - beta)| / |beta|` over window nodes and `|beta| >= excluded`.

    `|beta|` is the shortest periodic parameter distance. `window` is a parameter interval
    (wrapping when `low > high`); `ball = ((c1, c2), radius)` removes far points lying inside
    the ball.

    :raises SelfIntersectionError: when the constant is not positive
    """
    __, __, distance, beta, admissible = _pair_scan(x, excluded, window, ball)
    if not np.any(admissible):
        raise ConfigurationError("no admissible pair for the chord-arc scan", field="eps0")
    value = float(np.min((distance / beta)[admissible]))
    if value <= 0.0:
        raise SelfIntersectionError("chord-arc constant is %r" % value)
    return value


def self_approach(x: ClosedContour, eps0: float) -> Tuple[float, float]:
    """Minimum distance between nodes at least `eps0` apart in parameter, and its location."""
    rows, __, distance, __, admissible = _pair_scan(x, eps0, None, None)
    masked = np.where(admissible, distance, np.inf)
    flat = int(np.argmin(masked))
    row = flat // masked.shape[1]
    value = float(masked.flat[flat])
    if value <= 0.0:
        raise SelfIntersectionError("two nodes of the contour coincide")
    return value, float(x.nodes[rows[row]])


def curvature(x) -> np.ndarray:
    """Per-node curvature `|x' ^ x''| / |x'|^3` of a contour."""
    d1, d2 = x.derivative, x.second_derivative
    speed = np.hypot(d1[0], d1[1])
    scale = max(1.0, float(np.max(np.abs(x.points))))
    if np.any(speed <= 1e-12 * scale):
        index = int(np.argmin(speed))
        raise DegenerateParametrizationError(
            "vanishing discrete tangent at alpha=%r" % float(x.nodes[index])
        )
    return np.abs(d1[0] * d2[1] - d1[1] * d2[0]) / speed**3


def graph_curvature(interface: GraphInterface) -> np.ndarray:
    return np.abs(interface.second_derivative) / (1.0 + interface.derivative**2) ** 1.5


class BranchCharts(NamedTuple):
    """The two branches of a closed contour near a splash point, as graphs over `x1`.

    Chart coordinates `s` are measured from the ball center. `orientation` is +1 when the
    upper branch is traversed with increasing `x1`.
    """

    upper: np.ndarray
    lower: np.ndarray
    f: CubicSpline
    df: CubicSpline
    g: CubicSpline
    dg: CubicSpline
    orientation: int
    center: Tuple[float, float]
    eps0: float

    def chart(self, x: ClosedContour, nodes: np.ndarray) -> np.ndarray:
        return x.points[0, nodes] - self.center[0]

    def window(self, x: ClosedContour, upper: bool = True, half: float = 0.5) -> np.ndarray:
        """Branch nodes with `|s| <= half * eps0`."""
        nodes = self.upper if upper else self.lower
        return nodes[np.abs(self.chart(x, nodes)) <= half * self.eps0]


def _cyclic_runs(mask: np.ndarray):
    n = mask.size
    if mask.all():
        raise ChartError("the whole contour lies in the chart box")
    start = int(np.argmin(mask))  # a node outside the box
    order = (start + np.arange(n)) % n
    runs, current = [], []
    for index in order:
        if mask[index]:
            current.append(index)
        elif current:
            runs.append(np.array(current))
            current = []
    if current:
        runs.append(np.array(current))
    return runs


def branch_charts(x: ClosedContour, center=(0.0, 0.0), eps0: float = 0.5) -> BranchCharts:
    """Split the contour inside the box `|x - center| <= 2 eps0` into two graphs `f > g`.

    :raises ChartError: when the box does not hold exactly two graph branches covering
        `|s| <= 1.5 eps0`
    """
    c1, c2 = float(center[0]), float(center[1])
    x1, x2 = x.points
    mask = (np.abs(x1 - c1) <= 2.0 * eps0) & (np.abs(x2 - c2) <= 2.0 * eps0)
    runs = _cyclic_runs(mask)
    if len(runs) != 2:
        raise ChartError("expected two branches in the chart box, found %d" % len(runs))
    branches = []
    for run in runs:
        steps = np.diff(x1[run])
        if not (np.all(steps > 0.0) or np.all(steps < 0.0)):
            raise ChartError("a branch is not a graph over the horizontal chart")
        direction = 1 if steps[0] > 0.0 else -1
        ordered = run if direction > 0 else run[::-1]
        s = x1[ordered] - c1
        if s[0] > -1.5 * eps0 or s[-1] < 1.5 * eps0:
            raise ChartError("a branch does not cross the chart window")
        slope = x.derivative[1, ordered] / x.derivative[0, ordered]
        height = float(np.mean(x2[run]))
        branches.append(
            (height, ordered, direction, CubicSpline(s, x2[ordered]), CubicSpline(s, slope))
        )
    branches.sort(key=lambda item: -item[0])
    (__, upper, direction, f, df), (__, lower, __, g, dg) = branches
    window = upper[np.abs(x1[upper] - c1) <= eps0]
    if np.any(x2[window] <= g(x1[window] - c1)):
        raise ChartError("the upper branch does not lie above the lower one")
    return BranchCharts(upper, lower, f, df, g, dg, direction, (c1, c2), float(eps0))


def branch_gap(x: ClosedContour, center=(0.0, 0.0), eps0: float = 0.5) -> Tuple[float, float]:
    """`S = min (f - g)` over the upper-branch nodes with `|s| <= eps0`, and its parameter."""
    charts = branch_charts(x, center, eps0)
    nodes = charts.window(x, upper=True, half=1.0)
    gap = x.points[1, nodes] - charts.g(charts.chart(x, nodes))
    index = int(np.argmin(gap))
    return float(gap[index]), float(x.nodes[nodes[index]])
