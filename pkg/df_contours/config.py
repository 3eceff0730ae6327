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
"""Run configuration
=================

A run is described by a flat text file, one `key = value` per line, `#` starting a comment.
Scenario parameters use `scenario.<name>` keys. Optional numeric keys accept `auto`.

.. code-block:: ini

  system = muskat_multiphase
  scenario = bump_pair
  scenario.d = 1.0
  n = 512
  half_width = 10
  dt = 0.001
  t_end = 0.5

Site-wide defaults can be changed with the `CONTOURS_CONFIG_DEFAULTS` setting, using the same
keys as the file.
"""
import dataclasses
import logging
import math
from typing import Dict, Optional, Tuple

from df_contours import constants, ct_settings
from df_contours.exceptions import ConfigurationError, PersistenceError
from df_contours.geometry import UniformGrid
from df_contours.quadrature import MidpointNodes, default_nodes
from df_contours.scenarios import default_domain, get_scenario

logger = logging.getLogger("df_contours.io")

FILTER_CHOICES = ("auto", "on", "off")
SCENARIO_PREFIX = "scenario."


@dataclasses.dataclass(frozen=True)
class SimConfig:
    """Validated run configuration."""

    system: str
    scenario: str
    scenario_params: Dict[str, str] = dataclasses.field(default_factory=dict)
    n: int = 256
    domain: Optional[str] = None
    half_width: float = 10.0
    window: Optional[float] = None
    zeta1: float = 0.0
    zeta2: float = 1.0
    zeta3: float = 2.0
    dt: float = 1e-3
    t_end: float = 0.1
    record_every: int = 10
    quadrature_nodes: Optional[int] = None
    quadrature_half_width: Optional[float] = None
    c0: float = constants.MONITOR_C0
    small_sep_frac: float = 0.1
    tol_env: float = 1e-3
    tol_rate: Optional[float] = None
    cfl: float = 0.5
    filter: str = "auto"
    eps0: float = 0.5
    ball_center: Optional[Tuple[float, float]] = None
    decay_tol: float = constants.DEFAULT_DECAY_TOL
    output_dir: Optional[str] = None

    def __post_init__(self):
        if self.domain is None:
            object.__setattr__(self, "domain", default_domain(self.system))
        self.validate()

    def validate(self):
        def require(condition, field, message):
            if not condition:
                raise ConfigurationError(message, field=field)

        require(
            self.system in constants.SYSTEMS,
            "system",
            "must be one of %s" % ", ".join(constants.SYSTEMS),
        )
        entry = get_scenario(self.scenario)
        entry.check(self.scenario_params)
        require(
            self.domain in constants.DOMAINS,
            "domain",
            "must be one of %s" % ", ".join(constants.DOMAINS),
        )
        if self.system == constants.SYSTEM_MUSKAT:
            require(
                self.domain == constants.DOMAIN_REALLINE,
                "domain",
                "graph Muskat runs on the real line",
            )
        else:
            require(
                self.domain == constants.DOMAIN_PERIODIC,
                "domain",
                "%s runs on the periodic domain" % self.system,
            )
        require(
            self.n >= constants.MIN_NODES,
            "n",
            "at least %d nodes are required" % constants.MIN_NODES,
        )
        if self.domain == constants.DOMAIN_REALLINE:
            require(self.half_width > 1.0, "half_width", "must exceed 1")
            if self.window is not None:
                require(
                    0.0 < self.window <= self.half_width,
                    "window",
                    "must lie in (0, half_width]",
                )
        if self.system == constants.SYSTEM_MUSKAT:
            require(
                self.zeta1 <= self.zeta2 <= self.zeta3 and self.zeta1 < self.zeta3,
                "zeta2",
                "the Muskat system requires zeta1 <= zeta2 <= zeta3 with zeta1 < zeta3",
            )
        for name in ("dt", "t_end", "cfl", "eps0", "decay_tol"):
            value = getattr(self, name)
            require(math.isfinite(value) and value > 0.0, name, "must be positive")
        require(self.record_every >= 1, "record_every", "must be at least 1")
        if self.quadrature_nodes is not None:
            require(
                self.quadrature_nodes > 0 and self.quadrature_nodes % 2 == 0,
                "quadrature_nodes",
                "must be a positive even number",
            )
        if self.quadrature_half_width is not None:
            require(
                self.quadrature_half_width > 1.0, "quadrature_half_width", "must exceed 1"
            )
        require(self.c0 >= 0.0, "c0", "must not be negative")
        require(0.0 < self.small_sep_frac <= 1.0, "small_sep_frac", "must lie in (0, 1]")
        require(self.tol_env >= 0.0, "tol_env", "must not be negative")
        if self.tol_rate is not None:
            require(self.tol_rate >= 0.0, "tol_rate", "must not be negative")
        require(
            self.filter in FILTER_CHOICES,
            "filter",
            "must be one of %s" % ", ".join(FILTER_CHOICES),
        )
        if self.filter == "on":
            require(
                self.domain == constants.DOMAIN_PERIODIC,
                "filter",
                "the spectral filter needs a periodic domain",
            )

    @property
    def densities(self) -> Tuple[float, float, float]:
        return self.zeta1, self.zeta2, self.zeta3

    @property
    def periodic(self) -> bool:
        return self.domain == constants.DOMAIN_PERIODIC

    @property
    def filter_enabled(self) -> bool:
        if self.filter == "auto":
            return self.system == constants.SYSTEM_SQG_CONTOUR
        return self.filter == "on"

    @property
    def ball(self):
        """`((c1, c2), eps0)` when a splash ball is configured."""
        if self.ball_center is None:
            return None
        return self.ball_center, self.eps0

    @property
    def steps(self) -> int:
        return max(1, int(round(self.t_end / self.dt)))

    def grid(self) -> UniformGrid:
        return UniformGrid(self.n, periodic=self.periodic, half_width=self.half_width)

    def nodes(self) -> MidpointNodes:
        return default_nodes(self.grid(), self.quadrature_nodes, self.quadrature_half_width)

    def resolve_output_dir(self, override: Optional[str] = None) -> str:
        return override or self.output_dir or ct_settings.CONTOURS_OUTPUT_DIR


def _optional(cast):
    def parse(value: str):
        if value.lower() in ("auto", "none", ""):
            return None
        return cast(value)

    return parse


def _integer(value: str) -> int:
    number = float(value)
    if number != int(number):
        raise ValueError(value)
    return int(number)


def _center(value: str) -> Tuple[float, float]:
    parts = [float(x) for x in value.replace(",", " ").split()]
    if len(parts) != 2:
        raise ValueError(value)
    return parts[0], parts[1]


PARSERS = {
    "system": str,
    "scenario": str,
    "n": _integer,
    "domain": _optional(str),
    "half_width": float,
    "window": _optional(float),
    "zeta1": float,
    "zeta2": float,
    "zeta3": float,
    "dt": float,
    "t_end": float,
    "record_every": _integer,
    "quadrature_nodes": _optional(_integer),
    "quadrature_half_width": _optional(float),
    "c0": float,
    "small_sep_frac": float,
    "tol_env": float,
    "tol_rate": _optional(float),
    "cfl": float,
    "filter": str,
    "eps0": float,
    "ball_center": _optional(_center),
    "decay_tol": float,
    "output_dir": _optional(str),
}
KEYS = tuple(PARSERS)


def _format(value) -> str:
    if value is None:
        return "auto"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ", ".join(repr(float(x)) for x in value)
    return str(value)


def parse_assignments(lines, defaults: Optional[Dict] = None) -> SimConfig:
    """Build a config from `(line_number, key, value)` triples on top of `defaults`."""
    values, scenario_params = {}, {}
    entries = [(None, key, str(value)) for key, value in (defaults or {}).items()]
    for line, key, value in entries + list(lines):
        if key.startswith(SCENARIO_PREFIX):
            scenario_params[key[len(SCENARIO_PREFIX):]] = value
            continue
        if key not in PARSERS:
            raise ConfigurationError("unknown key", field=key, line=line)
        try:
            values[key] = PARSERS[key](value)
        except (TypeError, ValueError):
            raise ConfigurationError("invalid value %r" % value, field=key, line=line)
    for key in ("system", "scenario"):
        if key not in values:
            raise ConfigurationError("missing required key", field=key)
    return SimConfig(scenario_params=scenario_params, **values)


def load_config_text(text: str, defaults: Optional[Dict] = None) -> SimConfig:
    """Parse the key-value text format.

    >>> load_config_text("system = sqg_contour  # closed front\\nscenario = circle").n
    256
    """
    if defaults is None:
        defaults = ct_settings.CONTOURS_CONFIG_DEFAULTS
    assignments = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError("expected `key = value`", line=number)
        key, value = (x.strip() for x in line.split("=", 1))
        if not key:
            raise ConfigurationError("empty key", line=number)
        assignments.append((number, key, value))
    return parse_assignments(assignments, defaults=defaults)


def load_config(path, defaults: Optional[Dict] = None) -> SimConfig:
    try:
        with open(path, encoding="utf-8") as fd:
            text = fd.read()
    except OSError as e:
        raise PersistenceError(e.strerror or str(e), path=path)
    config = load_config_text(text, defaults=defaults)
    logger.info("configuration loaded from %s", path)
    return config


def serialize_config(config: SimConfig) -> str:
    """Canonical text form: every key in a fixed order, scenario parameters sorted."""
    lines = []
    for key in KEYS:
        lines.append("%s = %s" % (key, _format(getattr(config, key))))
    for key in sorted(config.scenario_params):
        lines.append("%s%s = %s" % (SCENARIO_PREFIX, key, config.scenario_params[key].strip()))
    return "\n".join(lines) + "\n"
