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
"""Registry of initial states
==========================

Scenarios are plain functions registered with the :func:`scenario` decorator. The first
argument is always `alpha`, the array of grid nodes; the other arguments are parameters with
defaults, cast with their annotations when they come from a configuration file.

.. code-block:: python

  from df_contours.scenarios import scenario, GRAPH

  @scenario(kind=GRAPH)
  def my_pair(alpha, d: float = 1.0):
      return d / 2 + 0 * alpha, -d / 2 + 0 * alpha

Graph scenarios return the samples of `f` and `g`, contour scenarios the samples of `x1` and
`x2`.
"""
import logging
import re
from inspect import signature
from typing import Dict, Optional

import numpy as np

from df_contours import constants
from df_contours.exceptions import ConfigurationError, PhaseOverlapError
from df_contours.geometry import ClosedContour, GraphInterface, PhasePair, UniformGrid

logger = logging.getLogger("df_contours.scenarios")

GRAPH = "graph"
CONTOUR = "contour"


class Scenario:
    """A registered scenario. Do not use it directly."""

    required_function_arg = "alpha"

    def __init__(self, fn, name=None, kind=GRAPH):
        self.function = fn
        self.name = str(name or fn.__name__)
        if not re.match(r"^[_a-zA-Z]\w*$", self.name):
            raise ValueError("Invalid identifier: %s" % self.name)
        if kind not in (GRAPH, CONTOUR):
            raise ValueError("Invalid scenario kind: %s" % kind)
        self.kind = kind
        self.argument_types = {}
        self.defaults = {}
        self.signature_check(fn)

    def signature_check(self, fn):
        """Store the parameters and their annotations; every parameter needs a default."""
        sig = signature(fn)
        required_arg_is_present = False
        for key, param in sig.parameters.items():
            if key == self.required_function_arg:
                required_arg_is_present = True
                continue
            if param.kind in (param.VAR_KEYWORD, param.VAR_POSITIONAL):
                raise ValueError("Cannot register a scenario using the *%s syntax" % key)
            if param.default == param.empty:
                raise ValueError("Scenario parameter %s(%s) requires a default" % (self.name, key))
            self.defaults[key] = param.default
            if param.annotation != param.empty and callable(param.annotation):
                self.argument_types[key] = param.annotation
        if not required_arg_is_present:
            raise ValueError(
                '%s(%s) must takes "%s" as first argument'
                % (self.__class__.__name__, self.name, self.required_function_arg)
            )

    def check(self, kwargs: Dict) -> Dict:
        """Cast the parameters with their annotations and reject unknown ones."""
        result = {}
        for key, value in kwargs.items():
            if key not in self.defaults:
                raise ConfigurationError(
                    "unknown parameter of scenario %s" % self.name, field="scenario.%s" % key
                )
            cast = self.argument_types.get(key)
            try:
                result[key] = cast(value) if cast is not None else value
            except (TypeError, ValueError):
                raise ConfigurationError(
                    "invalid value %r" % (value,), field="scenario.%s" % key
                )
        return result

    def parameters(self, kwargs: Optional[Dict] = None) -> Dict:
        params = dict(self.defaults)
        params.update(self.check(kwargs or {}))
        return params

    def __call__(self, alpha, **kwargs):
        return self.function(alpha, **kwargs)

    def register(self):
        if self.name in REGISTERED_SCENARIOS:
            logger.warning('Scenario "%s" is registered twice.', self.name)
        REGISTERED_SCENARIOS[self.name] = self


def scenario(fn=None, name=None, kind=GRAPH):
    """Decorate functions to register a new scenario.

    This decorator returns the original callable as-is.
    """

    def wrapped(fn_):
        wrapper = Scenario(fn_, name=name, kind=kind)
        wrapper.register()
        return fn_

    if fn is not None:
        wrapped = wrapped(fn)
    return wrapped


REGISTERED_SCENARIOS: Dict[str, Scenario] = {}


def get_scenario(name: str) -> Scenario:
    try:
        return REGISTERED_SCENARIOS[name]
    except KeyError:
        raise ConfigurationError(
            "unknown scenario %r (available: %s)"
            % (name, ", ".join(sorted(REGISTERED_SCENARIOS))),
            field="scenario",
        )


@scenario
def flat_pair(alpha, a: float = 1.0, b: float = 0.0):
    """Two flat interfaces `f = a`, `g = b`."""
    return np.full_like(alpha, a), np.full_like(alpha, b)


@scenario
def bump_pair(alpha, d: float = 1.0, h1: float = -0.4, h2: float = -0.4, w: float = 1.0):
    """Interfaces at distance `d` with Gaussian bumps; negative heights point inward."""
    bump = np.exp(-(alpha**2) / w)
    return d / 2.0 + h1 * bump, -d / 2.0 - h2 * bump


@scenario
def tilted_stable(alpha, d: float = 1.0, slope: float = 0.1, w: float = 1.0):
    """Small-slope graphs, heavy fluid below."""
    profile = alpha * np.exp(-(alpha**2) / w)
    return d / 2.0 + slope * profile, -d / 2.0 + 0.5 * slope * profile


@scenario(kind=CONTOUR)
def circle(alpha, R: float = 1.0, cx: float = 0.0, cy: float = 0.0):
    return cx + R * np.cos(alpha), cy + R * np.sin(alpha)


@scenario(kind=CONTOUR)
def ellipse(alpha, a: float = 2.0, b: float = 1.0, cx: float = 0.0, cy: float = 0.0):
    return cx + a * np.cos(alpha), cy + b * np.sin(alpha)


@scenario(kind=CONTOUR)
def pinch_contour(alpha, a: float = 2.0, b: float = 1.0, d: float = 0.1):
    """Dumbbell whose two branches pass at vertical distance `d` above and below the origin."""
    p = d / (2.0 * b)
    cos = np.cos(alpha)
    return a * cos, b * np.sin(alpha) * (p + (1.0 - p) * cos**2)


def default_domain(system: str) -> str:
    if system == constants.SYSTEM_MUSKAT:
        return constants.DOMAIN_REALLINE
    return constants.DOMAIN_PERIODIC


def make_scenario(
    name: str,
    params: Optional[Dict] = None,
    system: str = constants.SYSTEM_MUSKAT,
    n: int = 256,
    domain: Optional[str] = None,
    half_width: Optional[float] = None,
    densities=(0.0, 1.0, 2.0),
    decay_tol: float = constants.DEFAULT_DECAY_TOL,
):
    """Build the validated initial state of scenario `name`.

    Returns a :class:`PhasePair` for graph systems and a :class:`ClosedContour` otherwise.

    >>> make_scenario("flat_pair", {"a": "1", "b": "0"}, n=64, half_width=8.0).far_gap
    1.0
    """
    entry = get_scenario(name)
    values = entry.parameters(params)
    graph_system = system in constants.GRAPH_SYSTEMS
    if graph_system != (entry.kind == GRAPH):
        raise ConfigurationError(
            "scenario %s cannot initialize the %s system" % (name, system), field="scenario"
        )
    if domain is None:
        domain = default_domain(system)
    grid = UniformGrid(n, periodic=domain == constants.DOMAIN_PERIODIC, half_width=half_width)
    first, second = entry(np.array(grid.nodes), **values)
    logger.debug("scenario %s with %r on %r", name, values, grid)
    if not graph_system:
        return ClosedContour(np.stack([first, second]))
    far_f = far_g = None
    if not grid.periodic:
        # limits at +-infinity, sampled far outside the window
        far = 1e3 * grid.half_width
        far_first, far_second = entry(np.array([-far, far]), **values)
        far_f, far_g = float(np.mean(far_first)), float(np.mean(far_second))
    f = GraphInterface(first, grid, far_field=far_f, decay_tol=decay_tol)
    g = GraphInterface(second, grid, far_field=far_g, decay_tol=decay_tol)
    try:
        return PhasePair(f, g, densities, system)
    except PhaseOverlapError as e:
        raise ConfigurationError("the parameters do not keep f > g (%s)" % e, field="scenario")


def make_scenario_from_config(config):
    return make_scenario(
        config.scenario,
        config.scenario_params,
        system=config.system,
        n=config.n,
        domain=config.domain,
        half_width=config.half_width,
        densities=config.densities,
        decay_tol=config.decay_tol,
    )
