import numpy as np
import pytest

from orbitpack import estimate_packing, greedy_pack, verify_separation
from orbitpack import spd
from orbitpack.spaces import SPD, SpacePoint


class TestDistance:
    def test_zero_at_identity(self):
        assert spd.distance(np.eye(3), np.eye(3)) == 0.0

    def test_diagonal_pair(self):
        # oracle: log of diag(e, 1/e) is diag(1, -1), Frobenius norm sqrt(2)
        assert spd.distance(np.eye(2), np.diag([np.e, 1.0 / np.e])) == \
            pytest.approx(np.sqrt(2.0), abs=1e-12)

    def test_symmetry(self):
        gen = np.random.default_rng(0)
        for _ in range(100):
            p = spd.random_spd(3, gen)
            q = spd.random_spd(3, gen)
            assert spd.distance(p, q) == pytest.approx(spd.distance(q, p), abs=1e-10)

    def test_congruence_invariance(self):
        gen = np.random.default_rng(1)
        for _ in range(20):
            p = spd.random_spd(3, gen)
            q = spd.random_spd(3, gen)
            g = gen.normal(size=(3, 3))
            g /= np.cbrt(np.linalg.det(g))  # unit determinant, sign-safe
            d0 = spd.distance(p, q)
            d1 = spd.distance(g @ p @ g.T, g @ q @ g.T)
            assert d1 == pytest.approx(d0, abs=1e-8 * max(1.0, d0))

    def test_triangle_inequality(self):
        gen = np.random.default_rng(2)
        for _ in range(1000):
            p, q, r = (spd.random_spd(2, gen) for _ in range(3))
            assert spd.distance(p, r) <= spd.distance(p, q) + spd.distance(q, r) + 1e-8

    def test_rejects_non_spd(self):
        with pytest.raises(ValueError):
            spd.distance(np.diag([1.0, -1.0]), np.eye(2))

    def test_point_validation(self):
        with pytest.raises(ValueError, match="determinant"):
            SpacePoint(2.0 * np.eye(2), SPD)
        SpacePoint(np.diag([2.0, 0.5]), SPD)  # det 1, fine


class TestPackingBackend:
    def test_geodesic_chain_packs(self):
        # points diag(e^(k t), e^(-k t)) are pairwise |i - j| t sqrt(2) apart
        t = 0.5
        pts = [SpacePoint(np.diag([np.exp(k * t), np.exp(-k * t)]), SPD)
               for k in range(-10, 11)]
        d = spd.distance(pts[0].coords, pts[1].coords)
        assert d == pytest.approx(t * np.sqrt(2.0), abs=1e-12)
        r = t * np.sqrt(2.0) / 4.0
        m, reps = greedy_pack(pts, r)
        assert m == 21
        assert verify_separation(reps, r, SPD)

    def test_euclidean_group_rejected_on_spd_points(self, plane_rotations):
        with pytest.raises(ValueError):
            estimate_packing(plane_rotations, np.eye(2), 0.1, 10, 0)


class TestSuEmbedding:
    def test_identity_accepted(self):
        assert spd.su_embedding_check(np.eye(4))

    def test_phase_pair_accepted(self):
        theta = 0.83
        u = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
        assert spd.su_embedding_check(spd.real_embedding(u))

    def test_reflection_rejected(self):
        assert not spd.su_embedding_check(np.diag([1.0, 1.0, 1.0, -1.0]))

    def test_haar_samples_embed(self):
        gen = np.random.default_rng(3)
        for n in (2, 3):
            for _ in range(10):
                u = spd.special_unitary_sample(n, gen)
                assert abs(np.linalg.det(u) - 1.0) < 1e-12
                assert spd.su_embedding_check(spd.real_embedding(u))


class TestCommutant:
    def test_traceless_fixed_space_vanishes(self):
        for n in (2, 3):
            out = spd.commutant_fixed_dim(n, samples=12, seed=0)
            assert out["dimension"] == 0

    def test_identity_survives_without_trace_constraint(self):
        out = spd.commutant_fixed_dim(2, samples=12, seed=0, traceless=False)
        assert out["dimension"] == 1
        (fixed,) = out["basis"]
        fixed = fixed / fixed[0, 0]
        assert np.max(np.abs(fixed - np.eye(4))) < 1e-8

    def test_stable_across_seeds(self):
        dims = {spd.commutant_fixed_dim(2, samples=12, seed=s)["dimension"]
                for s in range(5)}
        assert dims == {0}

    def test_ten_sample_solve_matches(self):
        # oracle from the quaternion structure: the symmetric commutant of the
        # doubled 2x2 unitaries is spanned by the identity alone
        out = spd.commutant_fixed_dim(2, samples=10, seed=7, traceless=False)
        assert out["dimension"] == 1


class TestBlockSignTwist:
    def test_checks_pass_for_two(self):
        out = spd.su_twist_check(2, samples=50, seed=0)
        assert out["all_passed"]

    def test_checks_pass_for_one(self):
        # 2x2 case: tau = diag(1, -1) conjugates J to -J
        out = spd.su_twist_check(1, samples=10, seed=0)
        assert out["all_passed"]
        tau = spd.block_sign_involution(1)
        from orbitpack.isometry import complex_structure
        j = complex_structure(1)
        assert np.array_equal(tau @ j @ tau.T, -j)

    def test_identity_is_not_outside(self):
        assert spd.su_embedding_check(np.eye(4))  # so an identity "twist" fails

    def test_conjugation_formula(self):
        # tau (A + iB image) tau equals the image of the conjugate matrix
        gen = np.random.default_rng(4)
        tau = spd.block_sign_involution(3)
        for _ in range(10):
            u = spd.special_unitary_sample(3, gen)
            lhs = tau @ spd.real_embedding(u) @ tau
            assert np.allclose(lhs, spd.real_embedding(np.conj(u)), atol=1e-14)
