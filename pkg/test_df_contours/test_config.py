import dataclasses
import os
import tempfile
from unittest import TestCase

from df_contours.config import (
    SimConfig,
    load_config,
    load_config_text,
    serialize_config,
)
from df_contours.exceptions import ConfigurationError, PersistenceError

MINIMAL = """
# closed SQG front
system = sqg_contour
scenario = circle
n = 128
dt = 0.001
t_end = 0.01
"""


class TestLoadConfig(TestCase):
    def test_minimal(self):
        config = load_config_text(MINIMAL, defaults={})
        self.assertEqual("sqg_contour", config.system)
        self.assertEqual("periodic", config.domain)
        self.assertEqual(128, config.n)
        self.assertEqual(10, config.steps)
        self.assertTrue(config.filter_enabled)
        self.assertIsNone(config.ball)

    def test_muskat_defaults(self):
        config = load_config_text("system = muskat_multiphase\nscenario = bump_pair", defaults={})
        self.assertEqual("realline", config.domain)
        self.assertFalse(config.filter_enabled)
        self.assertEqual((0.0, 1.0, 2.0), config.densities)
        self.assertEqual(4 * 255, config.nodes().count)

    def test_negative_dt(self):
        with self.assertRaises(ConfigurationError) as cm:
            load_config_text(MINIMAL + "dt = -0.1\n", defaults={})
        self.assertEqual("dt", cm.exception.field)

    def test_unknown_key(self):
        with self.assertRaises(ConfigurationError) as cm:
            load_config_text(MINIMAL + "speed = 3\n", defaults={})
        self.assertEqual("speed", cm.exception.field)
        self.assertEqual(8, cm.exception.line)

    def test_invalid_value(self):
        with self.assertRaises(ConfigurationError) as cm:
            load_config_text(MINIMAL + "n = 12.5\n", defaults={})
        self.assertEqual("n", cm.exception.field)

    def test_missing_equal(self):
        with self.assertRaises(ConfigurationError) as cm:
            load_config_text("system sqg_contour", defaults={})
        self.assertEqual(1, cm.exception.line)

    def test_missing_system(self):
        with self.assertRaises(ConfigurationError) as cm:
            load_config_text("scenario = circle", defaults={})
        self.assertEqual("system", cm.exception.field)

    def test_scenario_params(self):
        config = load_config_text(MINIMAL + "scenario.R = 2\n", defaults={})
        self.assertEqual({"R": "2"}, config.scenario_params)
        with self.assertRaises(ConfigurationError) as cm:
            load_config_text(MINIMAL + "scenario.radius = 2\n", defaults={})
        self.assertEqual("scenario.radius", cm.exception.field)

    def test_defaults(self):
        config = load_config_text(MINIMAL, defaults={"cfl": "0.25", "n": "64"})
        self.assertEqual(0.25, config.cfl)
        self.assertEqual(128, config.n)

    def test_domain_mismatch(self):
        with self.assertRaises(ConfigurationError) as cm:
            load_config_text(MINIMAL + "domain = realline\n", defaults={})
        self.assertEqual("domain", cm.exception.field)

    def test_filter_realline(self):
        text = "system = muskat_multiphase\nscenario = bump_pair\nfilter = on\n"
        with self.assertRaises(ConfigurationError) as cm:
            load_config_text(text, defaults={})
        self.assertEqual("filter", cm.exception.field)

    def test_unstable_densities(self):
        text = "system = muskat_multiphase\nscenario = bump_pair\nzeta1 = 3\n"
        self.assertRaises(ConfigurationError, lambda: load_config_text(text, defaults={}))

    def test_ball_center(self):
        config = load_config_text(MINIMAL + "ball_center = 0.5, -1\neps0 = 0.25\n", defaults={})
        self.assertEqual(((0.5, -1.0), 0.25), config.ball)

    def test_round_trip(self):
        config = load_config_text(MINIMAL + "scenario.R = 2\nball_center = 0, 0\n", defaults={})
        text = serialize_config(config)
        self.assertEqual(config, load_config_text(text, defaults={}))
        self.assertEqual(text, serialize_config(load_config_text(text, defaults={})))

    def test_replace_validates(self):
        config = load_config_text(MINIMAL, defaults={})
        self.assertRaises(ConfigurationError, lambda: dataclasses.replace(config, n=4))

    def test_load_file(self):
        with tempfile.TemporaryDirectory() as dirname:
            path = os.path.join(dirname, "run.txt")
            with open(path, "w") as fd:
                fd.write(MINIMAL)
            self.assertEqual(128, load_config(path, defaults={}).n)
            self.assertRaises(PersistenceError, lambda: load_config(path + ".missing"))

    def test_output_dir(self):
        config = SimConfig("sqg_contour", "circle", output_dir="out")
        self.assertEqual("out", config.resolve_output_dir())
        self.assertEqual("elsewhere", config.resolve_output_dir("elsewhere"))
