import math
from unittest import TestCase

import numpy as np

from df_contours.exceptions import ConfigurationError
from df_contours.geometry import ClosedContour, PhasePair, chord_arc_constant, curvature
from df_contours.scenarios import (
    CONTOUR,
    REGISTERED_SCENARIOS,
    Scenario,
    get_scenario,
    make_scenario,
    scenario,
)
from df_contours.splash_monitor import measure


class TestRegistry(TestCase):
    def tearDown(self):
        REGISTERED_SCENARIOS.pop("wavy_circle", None)

    def test_builtin(self):
        builtin = ("flat_pair", "bump_pair", "tilted_stable", "circle", "ellipse", "pinch_contour")
        for name in builtin:
            self.assertIn(name, REGISTERED_SCENARIOS)

    def test_register(self):
        @scenario(kind=CONTOUR)
        def wavy_circle(alpha, amplitude: float = 0.1):
            radius = 1.0 + amplitude * np.cos(3 * alpha)
            return radius * np.cos(alpha), radius * np.sin(alpha)

        self.assertEqual({"amplitude": 0.1}, get_scenario("wavy_circle").defaults)
        x = make_scenario("wavy_circle", {"amplitude": "0.2"}, system="sqg_contour", n=64)
        self.assertAlmostEqual(1.2, x.points[0, 32])

    def test_signature(self):
        for function in (
            lambda x, d=1.0: (x, x),
            lambda alpha, d: (alpha, alpha),
            lambda alpha, **kw: (alpha, alpha),
        ):
            self.assertRaises(ValueError, lambda: Scenario(function, name="sample"))
        entry = Scenario(lambda alpha, d=1.0: (alpha, alpha), name="sample")
        self.assertEqual({"d": 1.0}, entry.defaults)

    def test_unknown(self):
        with self.assertRaises(ConfigurationError) as cm:
            get_scenario("missing")
        self.assertEqual("scenario", cm.exception.field)

    def test_cast(self):
        entry = get_scenario("bump_pair")
        self.assertEqual(0.5, entry.parameters({"d": "0.5"})["d"])
        with self.assertRaises(ConfigurationError) as cm:
            entry.check({"d": "wide"})
        self.assertEqual("scenario.d", cm.exception.field)


class TestMakeScenario(TestCase):
    def test_flat_pair(self):
        pair = make_scenario("flat_pair", n=65, half_width=8.0)
        self.assertIsInstance(pair, PhasePair)
        self.assertEqual(1.0, measure(pair).S)

    def test_bump_pair(self):
        pair = make_scenario("bump_pair", n=129, half_width=8.0)
        diag = measure(pair)
        self.assertAlmostEqual(0.2, diag.S, places=14)
        self.assertEqual(0.0, diag.alpha_min)

    def test_circle(self):
        x = make_scenario("circle", system="sqg_contour", n=256)
        self.assertIsInstance(x, ClosedContour)
        self.assertAlmostEqual(2 / math.pi, chord_arc_constant(x, excluded=0.1), delta=1e-4)
        np.testing.assert_allclose(curvature(x), 1.0, atol=1e-6)

    def test_overlapping_bumps(self):
        with self.assertRaises(ConfigurationError) as cm:
            make_scenario("bump_pair", {"h1": "-0.6", "h2": "-0.6"}, n=129, half_width=8.0)
        self.assertEqual("scenario", cm.exception.field)

    def test_wrong_system(self):
        self.assertRaises(
            ConfigurationError, lambda: make_scenario("circle", n=64, half_width=8.0)
        )

    def test_slow_decay(self):
        with self.assertRaises(ConfigurationError) as cm:
            make_scenario("bump_pair", {"w": "10"}, n=65, half_width=4.0)
        self.assertEqual("half_width", cm.exception.field)

    def test_sqg_multiphase(self):
        pair = make_scenario(
            "tilted_stable", system="sqg_multiphase", n=64, densities=(2.0, 1.0, 0.0)
        )
        self.assertEqual("sqg_multiphase", pair.system)
        self.assertTrue(pair.grid.periodic)
