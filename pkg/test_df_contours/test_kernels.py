import math
from unittest import TestCase

import numpy as np

from df_contours.exceptions import SelfIntersectionError, SingularEvaluationError
from df_contours.geometry import ClosedContour, GraphCurve, GraphInterface, UniformGrid
from df_contours.kernels import (
    graph_limit,
    muskat_contour_integrand,
    muskat_kernel,
    muskat_kernel_values,
    sigma_kernel_values,
    sqg_contour_integrand,
    sqg_contour_values,
    sqg_sigma_kernel,
)


def square(n=41, half_width=4.0):
    grid = UniformGrid(n, periodic=False, half_width=half_width)
    return GraphInterface(grid.nodes**2, grid, check_decay=False)


def unit_circle(n=512):
    return ClosedContour.from_function(lambda a: np.stack([np.cos(a), np.sin(a)]), n)


class TestMuskatKernel(TestCase):
    def test_parabola(self):
        f = square()
        self.assertAlmostEqual(1.6, float(muskat_kernel(f, f, 0.0, 0.5)), places=12)

    def test_constants(self):
        grid = UniformGrid(64)
        f = GraphInterface(np.full(64, 2.0), grid)
        g = GraphInterface(np.full(64, -1.0), grid)
        beta = np.linspace(-3.0, 3.0, 10)
        np.testing.assert_array_equal(np.zeros(10), muskat_kernel(f, g, 0.2, beta))

    def test_parallel_lines(self):
        grid = UniformGrid(41, periodic=False, half_width=4.0)
        f = GraphInterface(grid.nodes, grid, check_decay=False)
        values = muskat_kernel(f, f, 0.3, np.array([-0.7, 0.5, 1.2]))
        np.testing.assert_allclose(0.0, values, atol=1e-12)

    def test_removable_limit(self):
        grid = UniformGrid(4096)
        f = GraphInterface(np.sin(grid.nodes), grid)
        alpha = 0.4
        limit = float(muskat_kernel(f, f, alpha, 1e-5))
        self.assertAlmostEqual(
            graph_limit(math.cos(alpha), -math.sin(alpha)), limit, delta=1e-6
        )
        for beta in (-1e-3, 1e-3):
            self.assertAlmostEqual(limit, float(muskat_kernel(f, f, alpha, beta)), delta=1e-3)

    def test_beta_zero(self):
        f = square()
        self.assertRaises(ValueError, lambda: muskat_kernel(f, f, 0.0, 0.0))

    def test_singular(self):
        self.assertRaises(
            SingularEvaluationError, lambda: muskat_kernel_values(1e-16, 0.0, 0.0, 0.0, 1.0)
        )


class TestSigmaKernel(TestCase):
    def test_parabola(self):
        f = square()
        value = float(sqg_sigma_kernel(f, f, 0.0, 0.5))
        self.assertAlmostEqual(1 / math.sqrt(0.3125), value, places=12)

    def test_values_form(self):
        value = float(sigma_kernel_values(0.5, 0.0, 0.0, 0.25, -1.0))
        self.assertAlmostEqual(1 / math.sqrt(0.3125), value)

    def test_symmetric_sum(self):
        grid = UniformGrid(256)
        f = GraphInterface(np.exp(-grid.nodes**2), grid)
        beta = (np.arange(-512, 512) + 0.5) * (math.pi / 512)
        values = sqg_sigma_kernel(f, f, 0.0, beta)
        brute = sum(float(v) for v in values)
        self.assertAlmostEqual(0.0, brute, delta=1e-9)

    def test_constant_shift(self):
        grid = UniformGrid(64)
        f = GraphInterface(np.cos(grid.nodes) + 1.0, grid)
        g = GraphInterface(0.5 * np.sin(grid.nodes), grid)
        beta = np.array([-2.0, -0.1, 0.3, 1.5])
        shifted = [GraphInterface(f.values + 0.25, grid), GraphInterface(g.values + 0.25, grid)]
        np.testing.assert_allclose(
            sqg_sigma_kernel(f, g, 0.7, beta), sqg_sigma_kernel(*shifted, 0.7, beta), atol=1e-12
        )


class TestSqgContourIntegrand(TestCase):
    def test_antipodal(self):
        values = sqg_contour_integrand(unit_circle(), 0.0, math.pi)
        np.testing.assert_allclose([0.0, 1.0], values, atol=1e-9)

    def test_unit_magnitude(self):
        x = unit_circle()
        for alpha, beta in ((0.3, 0.9), (-2.0, -1.4), (1.1, 2.5)):
            values = sqg_contour_integrand(x, alpha, beta)
            self.assertAlmostEqual(1.0, math.hypot(*values), delta=1e-6)

    def test_closed_form(self):
        beta = np.array([-2.5, -0.4, 0.2, 1.7])
        expected = np.stack([-np.sign(beta) * np.cos(beta / 2), np.abs(np.sin(beta / 2))])
        values = sqg_contour_integrand(unit_circle(), 0.0, beta)
        np.testing.assert_allclose(expected, values, atol=1e-6)

    def test_translation(self):
        x = unit_circle(128)
        moved = x.translate(3.0, -1.5)
        np.testing.assert_allclose(
            sqg_contour_integrand(x, 0.4, 1.3), sqg_contour_integrand(moved, 0.4, 1.3), atol=1e-12
        )

    def test_coincident(self):
        point = np.array([1.0, 0.0])
        tangent = np.array([0.0, 1.0])
        self.assertRaises(
            SelfIntersectionError, lambda: sqg_contour_values(point, tangent, point, -tangent)
        )


class TestMuskatContourIntegrand(TestCase):
    def test_flat(self):
        grid = UniformGrid(64)
        x = GraphCurve(GraphInterface(np.full(64, 0.5), grid))
        values = muskat_contour_integrand(x, 0.2, np.array([-1.0, 0.5]))
        np.testing.assert_allclose(0.0, values, atol=1e-15)

    def test_parabola(self):
        x = GraphCurve(square())
        np.testing.assert_allclose([0.0, 1.6], muskat_contour_integrand(x, 0.0, 0.5), atol=1e-12)

    def test_graph_reduction(self):
        grid = UniformGrid(65, periodic=False, half_width=8.0)
        f = GraphInterface.from_function(lambda a: 0.3 * np.exp(-(a**2)), grid)
        beta = np.array([-1.3, -0.02, 0.6, 2.2])
        np.testing.assert_allclose(
            muskat_kernel(f, f, 0.4, beta),
            muskat_contour_integrand(GraphCurve(f), 0.4, beta)[1],
            atol=10 * grid.h**2,
        )
