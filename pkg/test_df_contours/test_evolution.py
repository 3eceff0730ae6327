import dataclasses
import filecmp
import math
import os
import tempfile
from unittest import TestCase

import numpy as np

import demo_df_contours
from df_contours.config import SimConfig, load_config
from df_contours.evolution import (
    muskat_contour_velocity,
    muskat_velocity,
    run_simulation,
    spectral_filter,
    sqg_branch_velocity,
    sqg_contour_velocity,
    sqg_multiphase_velocity,
    step,
)
from df_contours.exceptions import ChartError, ConfigurationError, StepRejectedError
from df_contours.geometry import ClosedContour, GraphCurve, GraphInterface, PhasePair, UniformGrid
from df_contours.kernels import sqg_sigma_kernel
from df_contours.persistence import write_outputs
from df_contours.quadrature import midpoint_nodes, pv_integrate_periodic, split_terms
from df_contours.scenarios import make_scenario, make_scenario_from_config
from df_contours.splash_monitor import certify
from df_contours.workers import close_pools

CONFIGS = os.path.join(os.path.dirname(demo_df_contours.__file__), "configs")


def circle(n, radius=1.0):
    return make_scenario("circle", {"R": str(radius)}, system="sqg_contour", n=n)


def shoelace(snapshot):
    x1, x2 = snapshot[1], snapshot[2]
    return 0.5 * float(np.sum(x1 * np.roll(x2, -1) - np.roll(x1, -1) * x2))


class TestGraphVelocities(TestCase):
    def test_flat_muskat(self):
        for n in (129, 512):
            pair = make_scenario("flat_pair", n=n, half_width=8.0)
            f_t, g_t = muskat_velocity(pair)
            self.assertLessEqual(np.max(np.abs(f_t)), 1e-12)
            self.assertLessEqual(np.max(np.abs(g_t)), 1e-12)

    def test_flat_sqg(self):
        for n in (128, 512):
            pair = make_scenario("flat_pair", system="sqg_multiphase", n=n)
            f_t, g_t = sqg_multiphase_velocity(pair)
            self.assertLessEqual(np.max(np.abs(f_t)), 1e-12)
            self.assertLessEqual(np.max(np.abs(g_t)), 1e-12)

    def test_domains(self):
        periodic = make_scenario("flat_pair", system="sqg_multiphase", n=64)
        self.assertRaises(
            ConfigurationError,
            lambda: muskat_velocity(PhasePair(periodic.f, periodic.g)),
        )
        realline = make_scenario("flat_pair", n=65, half_width=8.0)
        self.assertRaises(ConfigurationError, lambda: sqg_multiphase_velocity(realline))

    def test_single_phase_reduction(self):
        grid = UniformGrid(129, periodic=False, half_width=8.0)
        f = GraphInterface.from_function(lambda a: 0.3 * np.exp(-(a**2)), grid)
        g = GraphInterface(np.zeros(129), grid)
        pair = PhasePair(f, g, (0.0, 1.0, 1.0))
        f_t, __ = muskat_velocity(pair)
        single = muskat_contour_velocity(GraphCurve(f), zeta=pair.zeta21)
        np.testing.assert_allclose(single[1], f_t, atol=1e-10)
        # the bump flattens
        self.assertLess(f_t[64], 0.0)

    def test_sqg_single_front_reduction(self):
        grid = UniformGrid(128, periodic=True)
        f = GraphInterface.from_function(lambda a: 1.0 + 0.3 * np.cos(a), grid)
        g = GraphInterface.from_function(lambda a: -1.0 + 0.2 * np.sin(2 * a), grid)
        pair = PhasePair(f, g, (0.0, 1.0, 1.0), "sqg_multiphase")
        f_t, __ = sqg_multiphase_velocity(pair)
        for i in (0, 17, 64, 101):
            alpha = grid.nodes[i]
            single = pv_integrate_periodic(
                lambda beta: pair.zeta21 * sqg_sigma_kernel(f, f, alpha, beta), 4 * 128
            )
            self.assertAlmostEqual(single, f_t[i], places=12)
        # g is decoupled from f_t
        lower = PhasePair(f, g.with_values(g.values - 0.5), (0.0, 1.0, 1.0), "sqg_multiphase")
        np.testing.assert_allclose(f_t, sqg_multiphase_velocity(lower)[0], atol=1e-14)

    def test_vertical_shift(self):
        pair = make_scenario("bump_pair", n=129, half_width=8.0)
        f_t, g_t = muskat_velocity(pair)
        f_s, g_s = muskat_velocity(pair.shift(0.75))
        np.testing.assert_allclose(f_t, f_s, atol=1e-12)
        np.testing.assert_allclose(g_t, g_s, atol=1e-12)

    def test_worker_modes(self):
        pair = make_scenario("bump_pair", n=129, half_width=8.0)
        threaded = muskat_velocity(pair, mode="thread", block_rows=16)
        inline = muskat_velocity(pair, mode="sync")
        np.testing.assert_array_equal(threaded[0], inline[0])
        np.testing.assert_array_equal(threaded[1], inline[1])
        processes = muskat_velocity(pair, mode="process", block_rows=16, pool_size=2)
        close_pools()
        np.testing.assert_array_equal(processes[0], inline[0])
        np.testing.assert_array_equal(processes[1], inline[1])

    def test_sqg_resolution(self):
        pair = make_scenario("bump_pair", system="sqg_multiphase", n=256)
        coarse = sqg_multiphase_velocity(pair)
        fine = sqg_multiphase_velocity(pair, midpoint_nodes(math.pi, 16 * 256))
        np.testing.assert_allclose(coarse[0], fine[0], atol=1e-5)
        np.testing.assert_allclose(coarse[1], fine[1], atol=1e-5)


class TestContourVelocity(TestCase):
    def test_rotating_circle(self):
        x = circle(1024)
        velocity = sqg_contour_velocity(x)
        alpha = x.nodes
        tangential = -np.sin(alpha) * velocity[0] + np.cos(alpha) * velocity[1]
        normal = np.cos(alpha) * velocity[0] + np.sin(alpha) * velocity[1]
        np.testing.assert_allclose(tangential, 4.0, atol=1e-4)
        self.assertLessEqual(np.max(np.abs(normal)), 1e-6)

    def test_translation(self):
        x = circle(256)
        np.testing.assert_allclose(
            sqg_contour_velocity(x), sqg_contour_velocity(x.translate(2.0, -3.0)), atol=1e-12
        )

    def test_ellipse_resolution(self):
        x = make_scenario("ellipse", system="sqg_contour", n=256)
        coarse = sqg_contour_velocity(x)
        fine = sqg_contour_velocity(x, midpoint_nodes(math.pi, 16 * 1024))
        np.testing.assert_allclose(coarse, fine, atol=1e-5)

    def test_muskat_graph_curve(self):
        grid = UniformGrid(65, periodic=False, half_width=8.0)
        flat = GraphCurve(GraphInterface(np.full(65, 0.5), grid))
        self.assertLessEqual(np.max(np.abs(muskat_contour_velocity(flat))), 1e-12)


class TestBranchVelocity(TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.x = make_scenario("pinch_contour", system="sqg_contour", n=512)
        cls.branches = sqg_branch_velocity(cls.x, (0.0, 0.0), 0.5)

    def test_orientation(self):
        self.assertEqual(-1, self.branches.orientation)
        self.assertTrue(np.all(self.x.points[1, self.branches.upper] > 0.0))

    def test_consistency(self):
        full = sqg_contour_velocity(self.x)
        np.testing.assert_allclose(
            full[1, self.branches.upper], self.branches.f_t + self.branches.R_f, atol=1e-6
        )
        np.testing.assert_allclose(
            full[1, self.branches.lower], self.branches.g_t + self.branches.R_g, atol=1e-6
        )

    def test_remainder_bound(self):
        self.assertTrue(self.branches.within_bound)
        self.assertGreater(self.branches.chord_arc, 0.0)

    def test_mirror(self):
        # the pinch is symmetric under x2 -> -x2 and x1 -> -x1
        upper_s = self.x.points[0, self.branches.upper]
        lower_s = self.x.points[0, self.branches.lower]
        np.testing.assert_allclose(upper_s, lower_s, atol=1e-12)
        np.testing.assert_allclose(self.branches.f_t, self.branches.g_t, atol=1e-8)
        np.testing.assert_allclose(self.branches.f_t, -self.branches.f_t[::-1], atol=1e-8)
        center = int(np.argmin(np.abs(upper_s)))
        self.assertAlmostEqual(0.0, self.branches.f_t[center], delta=1e-8)

    def test_no_branches(self):
        self.assertRaises(ChartError, lambda: sqg_branch_velocity(circle(128)))


class TestStep(TestCase):
    def test_zero_velocity(self):
        x = circle(64)
        moved = step(x, 0.1, velocity=lambda state: np.zeros((2, 64)))
        np.testing.assert_array_equal(x.points, moved.points)

    def test_linear_growth(self):
        x = circle(64)
        dt, rate = 0.01, -0.5
        moved = step(x, dt, velocity=lambda state: rate * state.as_array())
        z = rate * dt
        factor = 1 + z + z**2 / 2 + z**3 / 6 + z**4 / 24
        np.testing.assert_allclose(factor * x.points, moved.points, rtol=1e-14, atol=1e-15)
        np.testing.assert_allclose(math.exp(z) * x.points, moved.points, atol=1e-12)

    def test_cfl(self):
        x = circle(64)
        self.assertRaises(
            StepRejectedError,
            lambda: step(x, 0.1, velocity=lambda state: np.full((2, 64), 1e3)),
        )
        self.assertRaises(StepRejectedError, lambda: step(x, 0.0))

    def test_fourth_order(self):
        pair = make_scenario("bump_pair", n=65, half_width=8.0)

        def advance(dt):
            state = pair
            for __ in range(int(round(0.4 / dt))):
                state = step(state, dt)
            return state.as_array()

        coarse, middle, fine = advance(0.1), advance(0.05), advance(0.025)
        ratio = np.max(np.abs(coarse - middle)) / np.max(np.abs(middle - fine))
        self.assertGreater(ratio, 10.0)
        self.assertLess(ratio, 22.0)

    def test_roll_equivariance(self):
        pair = make_scenario("bump_pair", system="sqg_multiphase", n=128)
        rolled = pair.roll(5)
        for __ in range(3):
            pair = step(pair, 1e-3)
            rolled = step(rolled, 1e-3)
        np.testing.assert_array_equal(np.roll(pair.as_array(), 5, axis=-1), rolled.as_array())

    def test_spectral_filter(self):
        alpha = UniformGrid(64).nodes
        values = np.sin(alpha) + 1e-14 * np.cos(5 * alpha)
        filtered = spectral_filter(values)
        np.testing.assert_allclose(np.sin(alpha), filtered, atol=1e-15)
        self.assertAlmostEqual(0.0, abs(np.fft.rfft(filtered)[5]), places=13)


class TestRunSimulation(TestCase):
    def test_flat(self):
        config = SimConfig(
            "muskat_multiphase",
            "flat_pair",
            n=65,
            half_width=8.0,
            dt=0.01,
            t_end=0.05,
            record_every=2,
        )
        result = run_simulation(config)
        self.assertEqual("ok", result.status)
        np.testing.assert_allclose([0.0, 0.02, 0.04, 0.05], result.series.t)
        np.testing.assert_allclose(1.0, result.series.S, atol=1e-12)

    def test_circle_area(self):
        config = load_config(os.path.join(CONFIGS, "circle.txt"), defaults={})
        config = dataclasses.replace(config, n=128, record_every=50)
        result = run_simulation(config)
        self.assertEqual("ok", result.status)
        self.assertEqual(3, len(result.series))
        first, last = shoelace(result.snapshots[0]), shoelace(result.snapshots[-1])
        self.assertAlmostEqual(first, last, delta=1e-4)
        certificate = certify(result.series, small_sep_frac=config.small_sep_frac)
        self.assertTrue(certificate.verdict_envelope)

    def test_rejected_step(self):
        config = SimConfig("sqg_contour", "circle", n=64, dt=0.5, t_end=1.0)
        result = run_simulation(config)
        self.assertEqual("error:step_rejected", result.status)
        self.assertEqual(1, len(result.series))
        self.assertIsInstance(result.error, StepRejectedError)

    def test_invalid_initial_state(self):
        config = SimConfig(
            "muskat_multiphase", "bump_pair", {"h1": "-0.6", "h2": "-0.6"}, n=65, half_width=8.0
        )
        self.assertRaises(ConfigurationError, lambda: run_simulation(config))

    def test_deterministic_files(self):
        config = SimConfig(
            "muskat_multiphase",
            "bump_pair",
            n=65,
            half_width=8.0,
            dt=0.01,
            t_end=0.05,
            record_every=1,
        )
        with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
            for dirname in (first, second):
                result = run_simulation(config)
                write_outputs(
                    dirname,
                    result.series,
                    certify(result.series, result.reference_gap, config.small_sep_frac),
                    config=config,
                    snapshots=result.snapshots,
                )
            comparison = filecmp.dircmp(first, second)
            self.assertEqual([], comparison.diff_files)
            self.assertEqual([], comparison.left_only + comparison.right_only)
            self.assertEqual([], filecmp.dircmp(
                os.path.join(first, "snapshots"), os.path.join(second, "snapshots")
            ).diff_files)


class TestNearSplashPair(TestCase):
    """The demo Muskat pair: two interfaces 0.2 apart evolved up to t = 0.5."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = load_config(os.path.join(CONFIGS, "bump_pair.txt"), defaults={})
        cls.result = run_simulation(cls.config)

    def test_no_splash(self):
        self.assertEqual("ok", self.result.status)
        self.assertTrue(np.all(self.result.series.S > 0.0))
        self.assertEqual(51, len(self.result.series))

    def test_certificate(self):
        certificate = certify(
            self.result.series, self.result.reference_gap, self.config.small_sep_frac
        )
        self.assertTrue(certificate.passed)
        self.assertEqual(51, np.count_nonzero(certificate.applicable))

    def test_slopes_match_at_minimum(self):
        h = self.config.grid().h
        for diag in self.result.diagnostics:
            self.assertLessEqual(diag.slope_gap, 10 * h**2)

    def test_split_sum(self):
        pair = make_scenario_from_config(self.config).with_array(self.result.snapshots[-1][1:])
        diag = self.result.diagnostics[-1]
        terms = split_terms(pair, diag.S, diag.alpha_min, self.config.nodes())
        f_t, g_t = muskat_velocity(pair, self.config.nodes())
        index = int(np.argmin(np.abs(pair.grid.nodes - diag.alpha_min)))
        unsplit = f_t[index] - g_t[index]
        self.assertAlmostEqual(unsplit, terms.total, delta=1e-8 * abs(unsplit))
        self.assertLessEqual(abs(terms.I), terms.I_bound)
