import numpy as np
import pytest

from orbitpack import (GroupSpec, Isometry, membership, coincident_exact,
                       nearest_orbit_element, orbit_coincidence, orbit_gap)
from orbitpack.coincidence import (INCONCLUSIVE, NONTRIVIAL_WITNESS, ORBIT_COINCIDENT,
                                   TwistVerificationError, sampled_orbit_gap)


def grid_min_swap_gap(x, w, steps=720):
    """Dense-grid oracle: min over the two-torus of |w - (R1 a, R2 b)|."""
    a, b = x[:2], x[2:]
    theta = np.linspace(0.0, 2 * np.pi, steps, endpoint=False)
    best = np.inf
    ra = np.linalg.norm(a)
    rb = np.linalg.norm(b)
    circ1 = ra * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    circ2 = rb * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    for p1 in circ1:
        d = np.sum((w[:2] - p1) ** 2) + np.sum((w[2:] - circ2) ** 2, axis=1)
        best = min(best, float(np.min(d)))
    return np.sqrt(best)


class TestBlockSwap:
    def test_witness_gap_is_sqrt_two(self, o2_o2_group, block_swap_tau4):
        x = np.array([1.0, 0.0, 2.0, 0.0])
        report = orbit_coincidence(o2_o2_group, block_swap_tau4, samples=5000, seed=0,
                                   points=[x])
        assert report.verdict == NONTRIVIAL_WITNESS
        assert abs(report.gaps[0] - np.sqrt(2.0)) <= 1e-6
        # dense-grid oracle for the same minimum
        oracle = grid_min_swap_gap(x, block_swap_tau4.apply(x))
        assert abs(oracle - np.sqrt(2.0)) <= 1e-3
        assert report.per_point_exact[0] is False

    def test_projection_element_is_in_group(self, o2_o2_group, block_swap_tau4):
        x = np.array([1.0, 0.0, 2.0, 0.0])
        h = nearest_orbit_element(o2_o2_group, x, block_swap_tau4.apply(x))
        assert membership(o2_o2_group, h)


class TestSignFlip:
    def test_orbit_coincident(self, so3_so2_group, sign_flip_tau5):
        report = orbit_coincidence(so3_so2_group, sign_flip_tau5, test_points=8,
                                   samples=5000, seed=0,
                                   points=[[1.0, 2.0, 3.0, 4.0, 5.0]])
        assert report.verdict == ORBIT_COINCIDENT
        assert np.max(report.gaps) < 1e-3
        assert report.exact_invariant_check is True
        assert "discrepancy_note" in report.notes

    def test_brute_force_corroborates(self, so3_so2_group, sign_flip_tau5,
                                      o2_o2_group, block_swap_tau4):
        # raw sampling shrinks toward zero only in the coincident case
        x5 = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
        raw = sampled_orbit_gap(so3_so2_group, x5, sign_flip_tau5.apply(x5), 50000, 0)
        assert raw < 0.5
        x4 = np.array([1.0, 0.0, 2.0, 0.0])
        raw4 = sampled_orbit_gap(o2_o2_group, x4, block_swap_tau4.apply(x4), 20000, 0)
        assert raw4 >= np.sqrt(2.0) - 1e-9

    def test_sampled_gap_never_below_projected(self, so3_so2_group, sign_flip_tau5):
        gen = np.random.default_rng(5)
        x = gen.normal(size=5)
        w = sign_flip_tau5.apply(x)
        assert orbit_gap(so3_so2_group, x, w, 200, 0) <= \
            sampled_orbit_gap(so3_so2_group, x, w, 200, 0) + 1e-15


class TestTorusSwap:
    def test_distinct_moduli_witness(self, su3_torus_group, complex_swap_tau6):
        x = np.array([1.0, 0, 0, 0, 2.0, 0.5])  # |z1| = 1, |z2| = 2
        report = orbit_coincidence(su3_torus_group, complex_swap_tau6, samples=3000,
                                   seed=0, points=[x])
        assert report.verdict == NONTRIVIAL_WITNESS
        assert report.gaps[0] > 1e-2
        # sampled-orbit oracle agrees the gap is genuine
        raw = sampled_orbit_gap(su3_torus_group, x, complex_swap_tau6.apply(x), 20000, 0)
        assert raw > 1e-2

    def test_equal_moduli_point_is_coincident(self, su3_torus_group, complex_swap_tau6):
        x = np.array([1.0, 0.0, 0.3, 0.0, 1.0, 0.5])  # |z1| = |z2| = 1
        w = complex_swap_tau6.apply(x)
        assert coincident_exact(su3_torus_group, x, w) is True
        assert orbit_gap(su3_torus_group, x, w, 500, 0) < 1e-9


class TestScrewProduct:
    def test_reflection_is_coincident(self, rotation_translation_group):
        tau = Isometry.from_matrix(np.diag([-1.0, 1.0, 1.0]))
        report = orbit_coincidence(rotation_translation_group, tau, test_points=6,
                                   samples=3000, seed=0)
        assert report.verdict == ORBIT_COINCIDENT
        assert report.exact_invariant_check is True

    def test_axis_reflection_witnesses(self, rotation_translation_group):
        # reflecting the periodic axis meets the orbit only when 2 x3 is an
        # integer, so generic points have gap dist(2 x3, Z) > 0
        tau = Isometry.from_matrix(np.diag([1.0, 1.0, -1.0]))
        report = orbit_coincidence(rotation_translation_group, tau, test_points=6,
                                   samples=3000, seed=0)
        assert report.verdict == NONTRIVIAL_WITNESS
        x3 = report.witness["point"][2]
        expected = min(abs(2 * x3 - round(2 * x3)), 1.0)
        assert report.witness["gap"] == pytest.approx(expected, abs=1e-9)


class TestAgreement:
    def test_exact_and_sampled_agree_on_block_families(self, so3_so2_group,
                                                       sign_flip_tau5):
        gen = np.random.default_rng(7)
        for _ in range(5):
            x = gen.normal(size=5)
            w = sign_flip_tau5.apply(x)
            exact = coincident_exact(so3_so2_group, x, w)
            gap = orbit_gap(so3_so2_group, x, w, 5000, 0)
            assert exact is True
            assert gap < 1e-3

    def test_failed_twist_raises(self, plane_rotations):
        bad_tau = GroupSpec(2, plane_rotations.family).family.sample(99, 0)  # inside H
        with pytest.raises(TwistVerificationError):
            orbit_coincidence(plane_rotations, bad_tau, test_points=2, samples=100,
                              seed=0)

    def test_inconclusive_between_thresholds(self, o2_o2_group, block_swap_tau4):
        # moduli differ by less than the witness threshold: neither verdict fires
        x = np.array([1.0, 0.0, 1.0 + 5e-3, 0.0])
        report = orbit_coincidence(o2_o2_group, block_swap_tau4, samples=200, seed=0,
                                   points=[x], test_points=1)
        assert report.verdict == INCONCLUSIVE
