"""Projection maps against grid-search and bisection oracles."""

import numpy as np
import pytest

from csdl import (
    ParameterError,
    project_columns_to_sphere,
    project_nonneg_l11_ball,
    prox_nonneg_l1,
)


def ball_projection_by_bisection(R, radius):
    """Independent oracle: solve sum(max(v - tau, 0)) == radius by bisection."""
    v = np.maximum(np.asarray(R, dtype=float), 0.0)
    if v.sum() <= radius:
        return v
    lo, hi = 0.0, float(v.max())
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if np.maximum(v - mid, 0.0).sum() > radius:
            lo = mid
        else:
            hi = mid
    return np.maximum(v - 0.5 * (lo + hi), 0.0)


def simplex_grid(dim, radius, step):
    """All grid points with coordinates in step increments and sum <= radius."""
    axes = [np.arange(0.0, radius + step / 2, step)] * dim
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
    return mesh[mesh.sum(axis=1) <= radius + 1e-12]


class TestSphereProjection:
    def test_three_four_five(self):
        out = project_columns_to_sphere(np.array([[3.0], [4.0]]))
        np.testing.assert_allclose(out[:, 0], [0.6, 0.8])

    def test_idempotent(self):
        rng = np.random.default_rng(0)
        D = rng.normal(size=(6, 4))
        once = project_columns_to_sphere(D)
        twice = project_columns_to_sphere(once)
        np.testing.assert_allclose(once, twice, atol=1e-12)

    def test_unit_norms(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            D = rng.normal(size=(rng.integers(1, 9), rng.integers(1, 5)))
            norms = np.linalg.norm(project_columns_to_sphere(D), axis=0)
            np.testing.assert_allclose(norms, 1.0, atol=1e-12)

    def test_zero_column_becomes_e1(self):
        D = np.array([[0.0, 1.0], [0.0, 0.0]])
        out = project_columns_to_sphere(D)
        np.testing.assert_array_equal(out[:, 0], [1.0, 0.0])
        np.testing.assert_array_equal(out[:, 1], [1.0, 0.0])

    def test_input_not_mutated(self):
        D = np.array([[3.0], [4.0]])
        project_columns_to_sphere(D)
        np.testing.assert_array_equal(D, [[3.0], [4.0]])


class TestBallProjection:
    def test_worked_example(self):
        out = project_nonneg_l11_ball(np.array([[0.5], [-0.3], [0.7]]), 1.0)
        np.testing.assert_allclose(out[:, 0], [0.4, 0.0, 0.6], atol=1e-12)

    def test_worked_example_against_full_grid(self):
        # Coarse full grid over the 3-entry feasible set confirms optimality.
        r = np.array([0.5, -0.3, 0.7])
        out = project_nonneg_l11_ball(r.reshape(3, 1), 1.0)[:, 0]
        grid = simplex_grid(3, 1.0, 0.01)
        dists = ((grid - r) ** 2).sum(axis=1)
        assert ((out - r) ** 2).sum() <= dists.min() + 1e-9

    def test_feasible_point_unchanged(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            R = np.abs(rng.normal(size=(3, 2)))
            radius = R.sum() + rng.uniform(0.1, 2.0)
            np.testing.assert_array_equal(project_nonneg_l11_ball(R, radius), R)

    def test_radius_zero(self):
        out = project_nonneg_l11_ball(np.array([[1.0, -2.0], [3.0, 0.5]]), 0.0)
        np.testing.assert_array_equal(out, 0.0)

    def test_negative_radius(self):
        with pytest.raises(ParameterError):
            project_nonneg_l11_ball(np.ones((2, 2)), -1.0)

    def test_exact_feasibility(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            R = rng.normal(size=(rng.integers(1, 5), rng.integers(1, 4))) * 3
            radius = float(rng.uniform(0, 4))
            out = project_nonneg_l11_ball(R, radius)
            assert np.all(out >= 0.0)
            assert out.sum() <= radius + 1e-10

    def test_matches_bisection_oracle(self):
        rng = np.random.default_rng(4)
        for _ in range(300):
            R = rng.normal(size=(rng.integers(1, 7), rng.integers(1, 4))) * 2
            radius = float(rng.uniform(0.01, 5))
            np.testing.assert_allclose(
                project_nonneg_l11_ball(R, radius),
                ball_projection_by_bisection(R, radius),
                atol=1e-8,
            )

    def test_idempotent(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            R = rng.normal(size=(4, 2)) * 2
            radius = float(rng.uniform(0, 3))
            once = project_nonneg_l11_ball(R, radius)
            np.testing.assert_array_equal(project_nonneg_l11_ball(once, radius), once)

    def test_nonexpansive(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            shape = (rng.integers(1, 5), rng.integers(1, 4))
            x = rng.normal(size=shape) * 2
            y = rng.normal(size=shape) * 2
            radius = float(rng.uniform(0, 3))
            px = project_nonneg_l11_ball(x, radius)
            py = project_nonneg_l11_ball(y, radius)
            assert np.linalg.norm(px - py) <= np.linalg.norm(x - y) + 1e-12


class TestProx:
    def test_worked_example(self):
        out = prox_nonneg_l1(np.array([0.5, -0.3, 0.7]), 0.2)
        np.testing.assert_allclose(out, [0.3, 0.0, 0.5])

    def test_threshold_zero_is_clip(self):
        x = np.array([[1.5, -2.0], [0.0, 0.25]])
        np.testing.assert_array_equal(prox_nonneg_l1(x, 0.0), np.maximum(x, 0.0))

    def test_full_shrinkage(self):
        x = np.array([0.1, 0.2, -5.0])
        np.testing.assert_array_equal(prox_nonneg_l1(x, 0.2), [0.0, 0.0, 0.0])

    def test_negative_threshold(self):
        with pytest.raises(ParameterError):
            prox_nonneg_l1(np.ones(3), -0.1)

    def test_matches_prox_definition_on_grid(self):
        # argmin over a fine non-negative grid of 0.5*||x - v||^2 + t*sum(x).
        rng = np.random.default_rng(7)
        for _ in range(20):
            v = float(rng.uniform(-1, 1))
            t = float(rng.uniform(0, 0.8))
            xs = np.arange(0.0, 2.0, 1e-4)
            scores = 0.5 * (xs - v) ** 2 + t * xs
            best = xs[np.argmin(scores)]
            assert prox_nonneg_l1(np.array([v]), t)[0] == pytest.approx(best, abs=1e-4)
