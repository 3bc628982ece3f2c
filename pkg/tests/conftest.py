import numpy as np
import pytest

from orbitpack import (BlockOrthogonal, GroupSpec, Isometry, ProductGroup,
                       TranslationLattice, TwistSpec, UnitaryTorus)


@pytest.fixture
def plane_rotations():
    """SO(2) acting on R^2."""
    return GroupSpec(2, BlockOrthogonal(((2, "SO"),)))


@pytest.fixture
def fixed_axis_group():
    """SO(2) x {1}: rotations about the x3-axis of R^3."""
    return GroupSpec(3, BlockOrthogonal(((2, "SO"), (1, "SO"))))


@pytest.fixture
def double_rotation_group():
    """SO(2) x SO(2) on R^4."""
    return GroupSpec(4, BlockOrthogonal(((2, "SO"), (2, "SO"))))


@pytest.fixture
def unit_lattice_z3():
    """Step-1 lattice along e3 in R^3."""
    return GroupSpec(3, TranslationLattice(np.array([[0.0, 0.0, 1.0]])))


@pytest.fixture
def sign_flip_tau5():
    return Isometry.from_matrix(np.diag([-1.0, -1.0, -1.0, 1.0, 1.0]))


@pytest.fixture
def so3_so2_group():
    return GroupSpec(5, BlockOrthogonal(((3, "SO"), (2, "SO"))))


@pytest.fixture
def so3_so2_twisted(so3_so2_group, sign_flip_tau5):
    return GroupSpec(5, so3_so2_group.family, TwistSpec(sign_flip_tau5))


@pytest.fixture
def block_swap_tau4():
    swap = np.zeros((4, 4))
    swap[0, 2] = swap[1, 3] = swap[2, 0] = swap[3, 1] = 1.0
    return Isometry.from_matrix(swap)


@pytest.fixture
def o2_o2_group():
    return GroupSpec(4, BlockOrthogonal(((2, "O"), (2, "O"))))


@pytest.fixture
def o2_o2_twisted(o2_o2_group, block_swap_tau4):
    return GroupSpec(4, o2_o2_group.family, TwistSpec(block_swap_tau4))


@pytest.fixture
def su3_torus_group():
    return GroupSpec(6, UnitaryTorus(3, special=True))


@pytest.fixture
def complex_swap_tau6():
    """Swap of the first two complex coordinates on C^3 = R^6 (stacked)."""
    m = np.zeros((6, 6))
    for i, j in enumerate([1, 0, 2, 4, 3, 5]):
        m[i, j] = 1.0
    return Isometry.from_matrix(m)


@pytest.fixture
def rotation_translation_group():
    """SO(2) x (step-1 lattice): screw-type product on R^3."""
    f1 = GroupSpec(2, BlockOrthogonal(((2, "SO"),)))
    f2 = GroupSpec(1, TranslationLattice(np.array([[1.0]])))
    return GroupSpec(3, ProductGroup((f1, f2)))
