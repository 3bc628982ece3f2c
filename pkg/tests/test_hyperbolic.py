import numpy as np
import pytest

from orbitpack import boost_demo, greedy_pack, verify_separation
from orbitpack import hyperbolic as hyp
from orbitpack.spaces import HYPERBOLOID, SpacePoint, distance as space_distance


BASE2 = hyp.base_point(2)


def tangent(v):
    return np.append(np.asarray(v, dtype=float), 0.0)


class TestDistance:
    def test_zero_at_coincidence(self):
        p = hyp.exponential(BASE2, tangent([0.7, -0.2]))
        assert hyp.distance(p, p) == 0.0

    def test_unit_geodesic_step(self):
        q = np.array([np.sinh(1.0), 0.0, np.cosh(1.0)])
        assert abs(hyp.distance(BASE2, q) - 1.0) < 1e-12

    def test_orthogonal_unit_steps(self):
        # oracle: the Minkowski pairing of the two images is -cosh(1)^2
        p = hyp.exponential(BASE2, tangent([1.0, 0.0]))
        q = hyp.exponential(BASE2, tangent([0.0, 1.0]))
        expected = np.arccosh(np.cosh(1.0) ** 2)
        assert abs(hyp.distance(p, q) - expected) < 1e-12
        assert abs(-hyp.minkowski(p, q) - np.cosh(1.0) ** 2) < 1e-12

    def test_symmetry(self):
        gen = np.random.default_rng(2)
        for _ in range(20):
            v, w = gen.normal(size=(2, 2))
            p = hyp.exponential(BASE2, tangent(v))
            q = hyp.exponential(BASE2, tangent(w))
            assert hyp.distance(p, q) == pytest.approx(hyp.distance(q, p), abs=1e-13)


class TestExponential:
    def test_zero_vector_fixes_point(self):
        assert np.array_equal(hyp.exponential(BASE2, tangent([0.0, 0.0])), BASE2)

    def test_formula_and_constraint(self):
        out = hyp.exponential(BASE2, tangent([1.0, 0.0]))
        assert np.allclose(out, [np.sinh(1.0), 0.0, np.cosh(1.0)], atol=1e-15)
        assert hyp.on_sheet(out)

    def test_geodesic_additivity(self):
        direction = np.array([0.6, 0.8])
        one = hyp.exponential(BASE2, tangent(0.7 * direction))
        two = hyp.exponential(BASE2, tangent(1.4 * direction))
        # step again from the midpoint along the transported direction
        assert abs(hyp.distance(BASE2, two) - 1.4) < 1e-12
        assert abs(hyp.distance(one, two) - 0.7) < 1e-12

    def test_norm_matches_distance_bulk(self):
        for n in (2, 3):
            gen = np.random.default_rng(n)
            dirs = gen.normal(size=(10000, n))
            dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
            mags = gen.uniform(0, 5, size=(10000, 1))
            v = np.concatenate([dirs * mags, np.zeros((10000, 1))], axis=1)
            p = np.broadcast_to(hyp.base_point(n), (10000, n + 1))
            out = hyp.exponential(p, v)
            radial = np.hypot(1.0, np.linalg.norm(out[:, :-1], axis=1))
            assert np.max(np.abs(out[:, -1] - radial)) < 1e-9  # sheet constraint
            assert np.max(np.abs(hyp.distance(p, out) - mags[:, 0])) < 1e-9

    def test_non_tangent_rejected(self):
        with pytest.raises(ValueError, match="not tangent"):
            hyp.exponential(BASE2, np.array([1.0, 0.0, 0.5]))


class TestRauch:
    def test_equal_vectors(self):
        out = hyp.rauch_check(BASE2, tangent([1.0, 2.0]), tangent([1.0, 2.0]))
        assert out["lhs"] == out["rhs"] == 0.0 and out["holds"]

    def test_equality_along_geodesic(self):
        s = 1.3
        out = hyp.rauch_check(BASE2, tangent([s, 0.0]), tangent([-s, 0.0]))
        assert out["holds"]
        assert out["lhs"] == pytest.approx(2 * s, abs=1e-12)
        assert out["rhs"] == pytest.approx(2 * s, abs=1e-12)

    def test_orthogonal_pair_strict_expansion(self):
        out = hyp.rauch_check(BASE2, tangent([1.0, 0.0]), tangent([0.0, 1.0]))
        assert out["holds"]
        assert out["lhs"] == pytest.approx(np.sqrt(2.0), abs=1e-12)
        assert out["rhs"] == pytest.approx(np.arccosh(np.cosh(1.0) ** 2), abs=1e-12)

    @pytest.mark.parametrize("n", [2, 3])
    def test_sweep_holds(self, n):
        result = hyp.rauch_sweep(n, 10000, seed=0)
        assert result["holds"]
        assert result["violations"] == 0
        assert result["max_sheet_defect"] <= 1e-9


class TestBoostOrbit:
    def test_orbit_distances_exact(self):
        orbit = hyp.boost_orbit(2, 1.0, 50)
        base = hyp.base_point(2)
        half = 50 // 2
        expected = np.abs(np.arange(50) - half) * 1.0
        assert np.max(np.abs(hyp.distance(orbit, base) - expected)) == 0.0
        # pairwise: d(p_i, p_j) = |i - j| * step, including far pairs
        for i, j in [(0, 49), (0, 1), (48, 49), (10, 30)]:
            assert hyp.distance(orbit[i], orbit[j]) == pytest.approx(abs(i - j), abs=1e-9)

    def test_packs_completely(self):
        for step, count in [(1.0, 50), (0.5, 40), (1.0, 1)]:
            orbit = hyp.boost_orbit(2, step, count)
            pts = [SpacePoint(p, HYPERBOLOID) for p in orbit]
            m, reps = greedy_pack(pts, step / 4.0)
            assert m == count
            assert verify_separation(reps, step / 4.0, HYPERBOLOID)

    def test_demo_report(self):
        report = boost_demo(0.5, 40)
        assert report.m_hat == 40
        assert report.notes["max_distance_error"] <= 1e-9
        assert report.notes["separation_verified"]

    def test_boost_matrix_is_lorentz(self):
        assert hyp.is_lorentz(hyp.lorentz_boost(2, 0.8))
        assert hyp.is_lorentz(hyp.lorentz_boost(3, -1.2))
        bad = np.diag([1.0, 1.0, -1.0])  # flips the sheet
        assert not hyp.is_lorentz(bad)

    def test_spacepoint_wraps_far_points(self):
        orbit = hyp.boost_orbit(2, 1.0, 50)
        p = SpacePoint(orbit[0], HYPERBOLOID)
        q = SpacePoint(orbit[-1], HYPERBOLOID)
        assert space_distance(p, q) == pytest.approx(49.0, abs=1e-9)
