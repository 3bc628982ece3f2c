import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import orbitpack.rng as rng
from orbitpack import (BlockOrthogonal, FiniteSet, GroupSpec, Isometry, TwistSpec,
                       UnitaryTorus, character_value, group_from_json, membership,
                       sample_group, verify_twist)
from orbitpack.isometry import DimensionMismatch, torus_matrix


def rotation2(theta):
    c, s = np.cos(theta), np.sin(theta)
    return Isometry.from_matrix(np.array([[c, -s], [s, c]]))


class TestApply:
    def test_identity_fixes_points(self):
        g = Isometry.identity(3)
        assert np.allclose(g.apply([1.0, 2.0, 3.0]), [1.0, 2.0, 3.0], atol=0)

    def test_quarter_turn(self):
        g = rotation2(np.pi / 2)
        assert np.allclose(g.apply([1.0, 0.0]), [0.0, 1.0], atol=1e-15)

    def test_pure_translation(self):
        g = Isometry.from_translation([0.0, 0.0, 5.0])
        assert np.allclose(g.apply([1.0, 2.0, 3.0]), [1.0, 2.0, 8.0], atol=0)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(DimensionMismatch):
            Isometry.identity(3).apply([1.0, 2.0])

    def test_preserves_distances(self):
        gen = np.random.default_rng(3)
        g = GroupSpec(3, BlockOrthogonal(((3, "O"),))).family.sample(7, 0)
        x, y = gen.normal(size=(2, 3))
        assert abs(np.linalg.norm(g.apply(x) - g.apply(y)) - np.linalg.norm(x - y)) < 1e-12


class TestCompose:
    def test_identity_neutral(self):
        g = rotation2(0.7)
        assert g.compose(Isometry.identity(2)).is_close(g, tol=0)

    def test_translations_add(self):
        a = Isometry.from_translation([1.0, 2.0])
        b = Isometry.from_translation([0.5, -1.0])
        assert np.allclose(a.compose(b).translation, [1.5, 1.0], atol=0)

    def test_rotation_angles_add(self):
        assert rotation2(0.3).compose(rotation2(0.4)).is_close(rotation2(0.7), tol=1e-12)

    def test_compose_matches_sequential_apply(self):
        gen = np.random.default_rng(11)
        fam = BlockOrthogonal(((3, "O"),))
        g = Isometry(fam.sample(5, 1).matrix, gen.normal(size=3))
        h = Isometry(fam.sample(5, 2).matrix, gen.normal(size=3))
        for x in gen.normal(size=(5, 3)):
            assert np.allclose(g.compose(h).apply(x), g.apply(h.apply(x)), atol=1e-12)

    @given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_associativity_and_inverse(self, i, j, k):
        fam = BlockOrthogonal(((2, "O"), (1, "SO")))
        a, b, c = (Isometry(fam.sample(17, idx).matrix, np.arange(3.0) * (idx % 7))
                   for idx in (i, j, k))
        lhs = a.compose(b).compose(c)
        rhs = a.compose(b.compose(c))
        assert lhs.is_close(rhs, tol=1e-12)
        assert a.compose(a.inverse()).is_identity(1e-12)


class TestSampling:
    def test_lattice_enumeration_contract(self, unit_lattice_z3):
        els = sample_group(unit_lattice_z3, 101, seed=0)
        got = sorted(round(e.translation[2]) for e in els)
        assert got == list(range(-50, 51))
        assert all(np.allclose(e.matrix, np.eye(3), atol=0) for e in els)

    def test_lattice_prefix_property(self, unit_lattice_z3):
        short = sample_group(unit_lattice_z3, 21, seed=0)
        long = sample_group(unit_lattice_z3, 101, seed=0)
        assert {round(e.translation[2]) for e in short} == set(range(-10, 11))
        for a, b in zip(short, long):
            assert a.is_close(b, tol=0)

    def test_so2_angles_replay(self, plane_rotations):
        # oracle: replay the pinned per-index stream scheme by hand
        els = sample_group(plane_rotations, 4, seed=123)
        angles = []
        for i, el in enumerate(els):
            theta = rng.stream(123, rng.SAMPLE, i, 0).uniform(0.0, 2.0 * np.pi)
            angles.append(theta)
            expected = rotation2(theta)
            assert el.is_close(expected, tol=0)
        assert len({round(a, 12) for a in angles}) == 4

    def test_finite_set_cycles_elements(self):
        els = (Isometry.identity(2), rotation2(np.pi / 2), rotation2(np.pi))
        spec = GroupSpec(2, FiniteSet(els))
        got = sample_group(spec, 3, seed=9)
        assert all(a.is_close(b, tol=0) for a, b in zip(got, els))

    def test_bitwise_reproducible_and_order_free(self, double_rotation_group):
        a = sample_group(double_rotation_group, 10, seed=5)
        b = sample_group(double_rotation_group, 10, seed=5)
        for x, y in zip(a, b):
            assert np.array_equal(x.matrix, y.matrix)
        # element i does not depend on how many others were sampled
        c = sample_group(double_rotation_group, 3, seed=5)
        for x, y in zip(a[:3], c):
            assert np.array_equal(x.matrix, y.matrix)

    @pytest.mark.parametrize("family", [
        BlockOrthogonal(((3, "SO"), (2, "O"))),
        BlockOrthogonal(((4, "SO"),)),
        UnitaryTorus(2),
        UnitaryTorus(3, special=True),
    ])
    def test_samples_are_orthogonal_members(self, family):
        spec = GroupSpec(family.dimension, family)
        for el in sample_group(spec, 25, seed=2):
            defect = np.max(np.abs(el.matrix.T @ el.matrix - np.eye(spec.dimension)))
            assert defect <= 1e-12
            assert membership(spec, el)

    def test_special_torus_angle_sum(self):
        spec = GroupSpec(6, UnitaryTorus(3, special=True))
        for el in sample_group(spec, 10, seed=4):
            z = spec.family.complex_entries(el)
            assert abs(np.prod(z) - 1.0) < 1e-12


class TestMembership:
    def test_sign_flip_outside_rotation_product(self, so3_so2_group, sign_flip_tau5):
        assert not membership(so3_so2_group, sign_flip_tau5)

    def test_identity_in_every_family(self, so3_so2_group, unit_lattice_z3,
                                      su3_torus_group, rotation_translation_group):
        for spec in (so3_so2_group, unit_lattice_z3, su3_torus_group,
                     rotation_translation_group):
            assert membership(spec, Isometry.identity(spec.dimension))

    def test_half_step_outside_lattice(self, unit_lattice_z3):
        assert not membership(unit_lattice_z3, Isometry.from_translation([0, 0, 0.5]))
        assert membership(unit_lattice_z3, Isometry.from_translation([0, 0, 3.0]))

    def test_off_block_coupling_rejected(self, double_rotation_group):
        swap = np.zeros((4, 4))
        swap[0, 2] = swap[1, 3] = swap[2, 0] = swap[3, 1] = 1.0
        assert not membership(double_rotation_group, Isometry.from_matrix(swap))

    def test_plain_torus_contains_special(self):
        wide = GroupSpec(6, UnitaryTorus(3))
        el = GroupSpec(6, UnitaryTorus(3, special=True)).family.sample(1, 0)
        assert membership(wide, el)
        rot = Isometry.from_matrix(torus_matrix(np.array([0.3, 0.0, 0.0])))
        assert membership(wide, rot)
        assert not membership(GroupSpec(6, UnitaryTorus(3, special=True)), rot)

    def test_product_membership_componentwise(self, rotation_translation_group):
        m = np.eye(3)
        m[:2, :2] = rotation2(0.9).matrix
        assert membership(rotation_translation_group, Isometry(m, np.array([0, 0, 2.0])))
        assert not membership(rotation_translation_group, Isometry(m, np.array([0, 0, 0.5])))


class TestTwists:
    def test_sign_flip_twist_verifies(self, so3_so2_twisted):
        report = verify_twist(so3_so2_twisted, seed=0)
        assert report["all_passed"]

    def test_block_swap_twist_verifies(self, o2_o2_twisted):
        report = verify_twist(o2_o2_twisted, seed=0)
        assert report["all_passed"]

    def test_rotation_third_not_involutive(self, plane_rotations):
        spec = GroupSpec(2, plane_rotations.family, TwistSpec(rotation2(np.pi / 3)))
        report = verify_twist(spec, seed=0)
        assert not report["tau_involutive"]

    def test_screw_product_twist_verifies(self, rotation_translation_group):
        tau = Isometry.from_matrix(np.diag([-1.0, 1.0, 1.0]))
        spec = GroupSpec(3, rotation_translation_group.family, TwistSpec(tau))
        assert verify_twist(spec, seed=1)["all_passed"]

    def test_character_multiplicative_on_tracked_cosets(self, o2_o2_twisted):
        els = sample_group(o2_o2_twisted, 60, seed=3)
        assert any(e.sign == -1 for e in els) and any(e.sign == 1 for e in els)
        for a, b in zip(els[:30], els[30:]):
            assert character_value(a.compose(b)) == character_value(a) * character_value(b)

    def test_twisted_coset_elements_act_like_tau_h(self, so3_so2_twisted):
        tau = so3_so2_twisted.twist.tau
        gen = np.random.default_rng(0)
        x = gen.normal(size=5)
        for el in sample_group(so3_so2_twisted, 20, seed=8):
            if el.sign == -1:
                h = tau.inverse().compose(el.iso)
                assert membership(GroupSpec(5, so3_so2_twisted.family), h)
                assert np.allclose(el.apply(x), tau.apply(h.apply(x)), atol=1e-12)


class TestJsonRoundTrip:
    @pytest.mark.parametrize("fixture", ["so3_so2_twisted", "unit_lattice_z3",
                                         "su3_torus_group", "rotation_translation_group"])
    def test_round_trip(self, fixture, request):
        spec = request.getfixturevalue(fixture)
        doc = spec.to_json()
        back = group_from_json(doc)
        assert back.to_json() == doc
        a = sample_group(spec, 5, seed=7)
        b = sample_group(back, 5, seed=7)
        for x, y in zip(a, b):
            xi = x.iso if hasattr(x, "iso") else x
            yi = y.iso if hasattr(y, "iso") else y
            assert np.array_equal(xi.matrix, yi.matrix)
            assert np.array_equal(xi.translation, yi.translation)
