"""Rigid motions of R^n and declaratively specified subgroups.

An isometry is stored as an orthogonal matrix plus a translation vector,
acting by x -> A x + v. Groups are built from a small set of families for
which membership is decidable numerically:

* ``BlockOrthogonal`` -- block-diagonal products of SO(k) / O(k) factors,
* ``TranslationLattice`` -- the integer span of independent generators,
* ``UnitaryTorus`` -- diagonal unitaries acting on R^(2m) identified with C^m,
* ``FiniteSet`` -- an explicit list of elements,
* ``ProductGroup`` -- direct products of the above on orthogonal summands.

A group may carry an index-two twist: an involution tau outside the group
that normalizes it. Elements sampled from a twisted group track which coset
they were drawn from, so the sign character of the extension is evaluated
symbolically instead of being guessed from matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import rng

ORTHO_TOL = 1e-12       # max-abs tolerance on A^T A - I
INVOLUTION_TOL = 1e-12  # tolerance on tau^2 - I
LATTICE_TOL = 1e-9      # tolerance on integer lattice coefficients
MATCH_TOL = 1e-9        # generic membership / element comparison tolerance


class DimensionMismatch(ValueError):
    """Operands live in different ambient dimensions."""


class UnsupportedFamily(ValueError):
    """The requested operation has no meaning for this group family."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Isometry:
    """Rigid motion x -> matrix @ x + translation."""

    matrix: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        m = _readonly(self.matrix)
        t = _readonly(self.translation)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got shape {m.shape}")
        if t.shape != (m.shape[0],):
            raise DimensionMismatch(
                f"translation shape {t.shape} does not match matrix {m.shape}")
        defect = np.max(np.abs(m.T @ m - np.eye(m.shape[0])))
        if defect > ORTHO_TOL:
            raise ValueError(f"matrix is not orthogonal: max |A^T A - I| = {defect:.3e}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", t)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, n: int) -> "Isometry":
        return cls(np.eye(n), np.zeros(n))

    @classmethod
    def from_translation(cls, v) -> "Isometry":
        v = np.asarray(v, dtype=float)
        return cls(np.eye(len(v)), v)

    @classmethod
    def from_matrix(cls, m) -> "Isometry":
        m = np.asarray(m, dtype=float)
        return cls(m, np.zeros(m.shape[0]))

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dimension:
            raise DimensionMismatch(
                f"point of dimension {x.shape[-1]} under isometry of dimension {self.dimension}")
        return x @ self.matrix.T + self.translation

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other: (A, v)(B, w) = (AB, Aw + v)."""
        if other.dimension != self.dimension:
            raise DimensionMismatch("cannot compose isometries of different dimension")
        return Isometry(self.matrix @ other.matrix,
                        self.matrix @ other.translation + self.translation)

    def inverse(self) -> "Isometry":
        return Isometry(self.matrix.T, -self.matrix.T @ self.translation)

    def is_identity(self, tol: float = INVOLUTION_TOL) -> bool:
        return (np.max(np.abs(self.matrix - np.eye(self.dimension))) <= tol
                and np.max(np.abs(self.translation)) <= tol)

    def is_close(self, other: "Isometry", tol: float = MATCH_TOL) -> bool:
        return (self.dimension == other.dimension
                and np.max(np.abs(self.matrix - other.matrix)) <= tol
                and np.max(np.abs(self.translation - other.translation)) <= tol)

    def to_json(self) -> dict:
        return {"matrix": self.matrix.tolist(), "translation": self.translation.tolist()}

    @classmethod
    def from_json(cls, doc: dict) -> "Isometry":
        return cls(np.array(doc["matrix"], dtype=float),
                   np.array(doc["translation"], dtype=float))


@dataclass(frozen=True, eq=False)
class SignedIsometry:
    """Element of a twisted extension with its coset tracked symbolically.

    sign is +1 on the base subgroup and -1 on the twisted coset; it realizes
    the sign character of the index-two extension exactly, which a matrix
    alone cannot (a coordinate swap, say, does not reveal its coset).
    """

    iso: Isometry
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")

    @property
    def dimension(self) -> int:
        return self.iso.dimension

    def apply(self, x) -> np.ndarray:
        return self.iso.apply(x)

    def compose(self, other: "SignedIsometry") -> "SignedIsometry":
        return SignedIsometry(self.iso.compose(other.iso), self.sign * other.sign)


GroupElement = Union[Isometry, SignedIsometry]


def character_value(g: GroupElement) -> int:
    """Sign character of the twisted extension: +1 on the base group."""
    return g.sign if isinstance(g, SignedIsometry) else 1


# --------------------------------------------------------------------------
# families


def _rotation_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def _quaternion_rotation(q: np.ndarray) -> np.ndarray:
    a, b, c, d = q / np.linalg.norm(q)
    return np.array([
        [a*a + b*b - c*c - d*d, 2*(b*c - a*d), 2*(b*d + a*c)],
        [2*(b*c + a*d), a*a - b*b + c*c - d*d, 2*(c*d - a*b)],
        [2*(b*d - a*c), 2*(c*d + a*b), a*a - b*b - c*c + d*d],
    ])


def _special_orthogonal_sample(k: int, gen: np.random.Generator) -> np.ndarray:
    """Haar sample from SO(k).

    The scheme is pinned per size so seeds stay portable: k=1 trivial, k=2
    one uniform angle, k=3 a uniform unit quaternion, k>=4 sign-corrected QR
    of a Gaussian matrix with a first-column flip onto determinant +1.
    """
    if k == 1:
        return np.eye(1)
    if k == 2:
        return _rotation_matrix(gen.uniform(0.0, 2.0 * np.pi))
    if k == 3:
        return _quaternion_rotation(gen.normal(size=4))
    z = gen.normal(size=(k, k))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diagonal(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def _block_orthogonal_sample(k: int, flavor: str, gen: np.random.Generator) -> np.ndarray:
    m = _special_orthogonal_sample(k, gen)
    if flavor == "O" and gen.integers(0, 2) == 1:
        m = m.copy()
        m[:, 0] = -m[:, 0]  # fixed reflection diag(-1, 1, ..., 1) on the right
    return m


def _is_orthogonal_block(b: np.ndarray, tol: float = MATCH_TOL) -> bool:
    return np.max(np.abs(b.T @ b - np.eye(b.shape[0]))) <= tol


@dataclass(frozen=True)
class BlockOrthogonal:
    """Block-diagonal product of SO/O factors, e.g. SO(3) x SO(2) in O(5)."""

    blocks: tuple  # ((size, "SO"|"O"), ...)

    def __post_init__(self):
        blocks = tuple((int(k), str(f)) for k, f in self.blocks)
        for k, f in blocks:
            if k < 1 or f not in ("SO", "O"):
                raise ValueError(f"bad block ({k}, {f})")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dimension(self) -> int:
        return sum(k for k, _ in self.blocks)

    @property
    def connected_dimension(self) -> int:
        return sum(k * (k - 1) // 2 for k, _ in self.blocks)

    def block_slices(self):
        out, start = [], 0
        for k, _ in self.blocks:
            out.append(slice(start, start + k))
            start += k
        return out

    def sample(self, seed: int, index: int, path: tuple = ()) -> Isometry:
        n = self.dimension
        m = np.zeros((n, n))
        for b, (sl, (k, flavor)) in enumerate(zip(self.block_slices(), self.blocks)):
            gen = rng.stream(seed, rng.SAMPLE, index, *path, b)
            m[sl, sl] = _block_orthogonal_sample(k, flavor, gen)
        return Isometry(m, np.zeros(n))

    def contains(self, g: Isometry, tol: float = MATCH_TOL) -> bool:
        if np.max(np.abs(g.translation)) > tol:
            return False
        m = g.matrix
        mask = np.ones_like(m, dtype=bool)
        for sl, (k, flavor) in zip(self.block_slices(), self.blocks):
            blk = m[sl, sl]
            mask[sl, sl] = False
            if not _is_orthogonal_block(blk, tol):
                return False
            if flavor == "SO" and np.linalg.det(blk) < 0:
                return False
        return bool(np.max(np.abs(m[mask])) <= tol) if mask.any() else True

    def generators(self):
        """Canonical probe elements: quarter turns per plane, reflections for O."""
        n = self.dimension
        out = []
        for sl, (k, flavor) in zip(self.block_slices(), self.blocks):
            for j in range(k - 1):
                m = np.eye(n)
                i0 = sl.start + j
                m[i0:i0 + 2, i0:i0 + 2] = _rotation_matrix(np.pi / 2)
                out.append(Isometry(m, np.zeros(n)))
            if flavor == "O":
                m = np.eye(n)
                m[sl.start, sl.start] = -1.0
                out.append(Isometry(m, np.zeros(n)))
        return out or [Isometry.identity(n)]

    def to_json(self) -> dict:
        return {"type": "block_orthogonal",
                "blocks": [{"size": k, "flavor": f} for k, f in self.blocks]}


@dataclass(frozen=True, eq=False)
class TranslationLattice:
    """Integer span of linearly independent translation generators."""

    generators: np.ndarray  # (rank, n)

    def __post_init__(self):
        g = _readonly(np.atleast_2d(np.asarray(self.generators, dtype=float)))
        if np.linalg.matrix_rank(g) != g.shape[0]:
            raise ValueError("lattice generators must be linearly independent")
        object.__setattr__(self, "generators", g)

    @property
    def dimension(self) -> int:
        return self.generators.shape[1]

    @property
    def rank(self) -> int:
        return self.generators.shape[0]

    @property
    def connected_dimension(self) -> int:
        return 0

    def enumerate_box(self, count: int):
        """Integer coefficient vectors of the smallest centered box holding count points.

        Ordered by sup-norm shell, then lexicographically, so a shorter
        enumeration is always a prefix of a longer one.
        """
        k = self.rank
        m = 0
        while (2 * m + 1) ** k < count:
            m += 1
        coeffs = np.stack(np.meshgrid(*[np.arange(-m, m + 1)] * k, indexing="ij"),
                          axis=-1).reshape(-1, k)
        order = np.lexsort(tuple(coeffs[:, j] for j in range(k - 1, -1, -1)))
        coeffs = coeffs[order]
        shells = np.max(np.abs(coeffs), axis=1)
        coeffs = coeffs[np.argsort(shells, kind="stable")]
        return coeffs[:count]

    def sample(self, seed: int, index: int, path: tuple = (), count: int = 1) -> Isometry:
        coeffs = self.enumerate_box(max(count, index + 1))
        return Isometry.from_translation(coeffs[index] @ self.generators)

    def coefficients(self, v: np.ndarray):
        """Least-squares coefficients of v in the generator span, or None."""
        sol, *_ = np.linalg.lstsq(self.generators.T, v, rcond=None)
        if np.max(np.abs(self.generators.T @ sol - v)) > LATTICE_TOL:
            return None
        return sol

    def contains(self, g: Isometry, tol: float = LATTICE_TOL) -> bool:
        if np.max(np.abs(g.matrix - np.eye(self.dimension))) > MATCH_TOL:
            return False
        sol = self.coefficients(g.translation)
        if sol is None:
            return False
        return bool(np.max(np.abs(sol - np.round(sol))) <= tol)

    def generators_as_isometries(self):
        return [Isometry.from_translation(v) for v in self.generators]

    def to_json(self) -> dict:
        return {"type": "translation_lattice", "generators": self.generators.tolist()}


def complex_structure(pairs: int) -> np.ndarray:
    """The block matrix [[0, -I], [I, 0]] on R^(2*pairs)."""
    j = np.zeros((2 * pairs, 2 * pairs))
    j[:pairs, pairs:] = -np.eye(pairs)
    j[pairs:, :pairs] = np.eye(pairs)
    return j


def torus_matrix(angles: np.ndarray) -> np.ndarray:
    """Real form of diag(exp(i*theta_1), ..., exp(i*theta_m)) on stacked coordinates."""
    c, s = np.cos(angles), np.sin(angles)
    m = len(angles)
    out = np.zeros((2 * m, 2 * m))
    out[:m, :m] = np.diag(c)
    out[:m, m:] = np.diag(s)
    out[m:, :m] = -np.diag(s)
    out[m:, m:] = np.diag(c)
    return out


@dataclass(frozen=True)
class UnitaryTorus:
    """Diagonal unitaries on C^pairs acting on R^(2*pairs).

    Coordinates are stacked (x_1..x_m, y_1..y_m) with z_k = x_k + i y_k, and
    a unitary A + iB embeds as [[A, B], [-B, A]]. With special=True the
    angles are constrained to sum to zero, which realizes the maximal torus
    of the special unitary group.
    """

    pairs: int
    special: bool = False

    def __post_init__(self):
        if self.pairs < 1:
            raise ValueError("need at least one complex coordinate")

    @property
    def dimension(self) -> int:
        return 2 * self.pairs

    @property
    def connected_dimension(self) -> int:
        return self.pairs - 1 if self.special else self.pairs

    def sample(self, seed: int, index: int, path: tuple = ()) -> Isometry:
        gen = rng.stream(seed, rng.SAMPLE, index, *path, 0)
        angles = gen.uniform(0.0, 2.0 * np.pi, size=self.pairs)
        if self.special:
            angles[-1] = -np.sum(angles[:-1])
        return Isometry.from_matrix(torus_matrix(angles))

    def complex_entries(self, g: Isometry):
        """Diagonal unitary entries of g, or None if g is not of torus shape."""
        m = self.pairs
        if np.max(np.abs(g.translation)) > MATCH_TOL:
            return None
        mat = g.matrix
        c, s = mat[:m, :m], mat[:m, m:]
        expected = torus_matrix(np.arctan2(np.diagonal(s), np.diagonal(c)))
        if np.max(np.abs(mat - expected)) > MATCH_TOL:
            return None
        return np.diagonal(c) + 1j * np.diagonal(s)

    def contains(self, g: Isometry, tol: float = MATCH_TOL) -> bool:
        z = self.complex_entries(g)
        if z is None:
            return False
        if self.special:
            return bool(abs(np.prod(z) - 1.0) <= 10 * tol)
        return True

    def generators(self):
        out = []
        for k in range(self.pairs):
            angles = np.zeros(self.pairs)
            if self.special:
                if self.pairs == 1:
                    continue
                angles[k] = np.pi / 2
                angles[(k + 1) % self.pairs] = -np.pi / 2
            else:
                angles[k] = np.pi / 2
            out.append(Isometry.from_matrix(torus_matrix(angles)))
        return out or [Isometry.identity(self.dimension)]

    def to_json(self) -> dict:
        return {"type": "unitary_torus", "pairs": self.pairs, "special": self.special}


@dataclass(frozen=True, eq=False)
class FiniteSet:
    """An explicit finite list of isometries."""

    elements: tuple

    def __post_init__(self):
        els = tuple(self.elements)
        if not els:
            raise ValueError("finite set needs at least one element")
        n = els[0].dimension
        if any(e.dimension != n for e in els):
            raise DimensionMismatch("finite-set elements must share a dimension")
        object.__setattr__(self, "elements", els)

    @property
    def dimension(self) -> int:
        return self.elements[0].dimension

    @property
    def connected_dimension(self) -> int:
        return 0

    def sample(self, seed: int, index: int, path: tuple = ()) -> Isometry:
        return self.elements[index % len(self.elements)]

    def contains(self, g: Isometry, tol: float = MATCH_TOL) -> bool:
        return any(g.is_close(e, tol) for e in self.elements)

    def generators(self):
        return list(self.elements)

    def to_json(self) -> dict:
        return {"type": "finite_set", "elements": [e.to_json() for e in self.elements]}


@dataclass(frozen=True)
class ProductGroup:
    """Direct product acting block-diagonally on the orthogonal sum."""

    factors: tuple  # of GroupSpec

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ValueError("product needs at least one factor")
        if any(f.twist is not None for f in factors):
            raise ValueError("twists are only supported at the top level, not on factors")
        object.__setattr__(self, "factors", factors)

    @property
    def dimension(self) -> int:
        return sum(f.dimension for f in self.factors)

    @property
    def connected_dimension(self) -> int:
        return sum(f.family.connected_dimension for f in self.factors)

    def factor_slices(self):
        out, start = [], 0
        for f in self.factors:
            out.append(slice(start, start + f.dimension))
            start += f.dimension
        return out

    def _assemble(self, parts) -> Isometry:
        n = self.dimension
        m = np.zeros((n, n))
        t = np.zeros(n)
        for sl, p in zip(self.factor_slices(), parts):
            m[sl, sl] = p.matrix
            t[sl] = p.translation
        return Isometry(m, t)

    def sample(self, seed: int, index: int, path: tuple = (), count: int = 1) -> Isometry:
        parts = []
        for k, f in enumerate(self.factors):
            fam = f.family
            sub = path + (rng.PRODUCT_BASE + k,)
            if isinstance(fam, (TranslationLattice, ProductGroup)):
                parts.append(fam.sample(seed, index, sub, count=count))
            else:
                parts.append(fam.sample(seed, index, sub))
        return self._assemble(parts)

    def split(self, g: Isometry, tol: float = MATCH_TOL):
        """Per-factor components of g, or None if g mixes factors."""
        m, t = g.matrix, g.translation
        mask = np.ones_like(m, dtype=bool)
        parts = []
        for sl in self.factor_slices():
            mask[sl, sl] = False
            parts.append(Isometry(m[sl, sl], t[sl]))
        if mask.any() and np.max(np.abs(m[mask])) > tol:
            return None
        return parts

    def contains(self, g: Isometry, tol: float = MATCH_TOL) -> bool:
        parts = self.split(g, tol)
        if parts is None:
            return False
        return all(f.family.contains(p) for f, p in zip(self.factors, parts))

    def generators(self):
        out = []
        for sl, f in zip(self.factor_slices(), self.factors):
            for gen in group_generators(f):
                n = self.dimension
                m = np.eye(n)
                t = np.zeros(n)
                m[sl, sl] = gen.matrix
                t[sl] = gen.translation
                out.append(Isometry(m, t))
        return out

    def to_json(self) -> dict:
        return {"type": "product", "factors": [f.to_json() for f in self.factors]}


Family = Union[BlockOrthogonal, TranslationLattice, UnitaryTorus, FiniteSet, ProductGroup]


# --------------------------------------------------------------------------
# group specs and twisted extensions


@dataclass(frozen=True, eq=False)
class TwistSpec:
    """Involution tau adjoined to a group, carrying the sign character -1."""

    tau: Isometry
    character_value_on_tau: int = -1

    def __post_init__(self):
        if self.character_value_on_tau != -1:
            raise ValueError("the character takes the value -1 on tau by definition")

    def to_json(self) -> dict:
        return {"tau": self.tau.to_json(), "character_value_on_tau": -1}


@dataclass(frozen=True, eq=False)
class GroupSpec:
    """Declarative description of a subgroup of the rigid-motion group of R^n."""

    dimension: int
    family: Family
    twist: Optional[TwistSpec] = None

    def __post_init__(self):
        if self.family.dimension != self.dimension:
            raise DimensionMismatch(
                f"family acts on R^{self.family.dimension}, spec says R^{self.dimension}")
        if self.twist is not None and self.twist.tau.dimension != self.dimension:
            raise DimensionMismatch("twist dimension does not match the group")

    @property
    def connected_dimension(self) -> int:
        return self.family.connected_dimension

    def to_json(self) -> dict:
        return {"dimension": self.dimension,
                "family": self.family.to_json(),
                "twist": self.twist.to_json() if self.twist else None}


def family_from_json(doc: dict) -> Family:
    kind = doc.get("type")
    if kind == "block_orthogonal":
        return BlockOrthogonal(tuple((b["size"], b["flavor"]) for b in doc["blocks"]))
    if kind == "translation_lattice":
        return TranslationLattice(np.array(doc["generators"], dtype=float))
    if kind == "unitary_torus":
        return UnitaryTorus(int(doc["pairs"]), bool(doc.get("special", False)))
    if kind == "finite_set":
        return FiniteSet(tuple(Isometry.from_json(e) for e in doc["elements"]))
    if kind == "product":
        return ProductGroup(tuple(group_from_json(f) for f in doc["factors"]))
    raise UnsupportedFamily(f"unknown family type {kind!r}")


def group_from_json(doc: dict) -> GroupSpec:
    twist = doc.get("twist")
    return GroupSpec(int(doc["dimension"]),
                     family_from_json(doc["family"]),
                     TwistSpec(Isometry.from_json(twist["tau"]),
                               int(twist.get("character_value_on_tau", -1)))
                     if twist else None)


def membership(spec: GroupSpec, g: Isometry, tol: float = MATCH_TOL) -> bool:
    """Exact family-wise membership test for the untwisted base group."""
    if g.dimension != spec.dimension:
        raise DimensionMismatch("element dimension does not match the group")
    return spec.family.contains(g, tol)


def group_generators(spec: GroupSpec):
    fam = spec.family
    if isinstance(fam, TranslationLattice):
        return fam.generators_as_isometries()
    return fam.generators()


def sample_group(spec: GroupSpec, count: int, seed: int):
    """Deterministic seeded samples, Haar for compact families.

    Lattices are enumerated over the smallest centered coefficient box
    instead of sampled. For a twisted spec the result is a list of
    SignedIsometry drawn evenly from both cosets; otherwise plain Isometry.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    fam = spec.family
    if isinstance(fam, (TranslationLattice, ProductGroup)):
        base = [fam.sample(seed, i, count=count) for i in range(count)]
    else:
        base = [fam.sample(seed, i) for i in range(count)]
    if spec.twist is None:
        return base
    tau = spec.twist.tau
    out = []
    for i, h in enumerate(base):
        flip = rng.stream(seed, rng.TWIST_COIN, i).integers(0, 2) == 1
        out.append(SignedIsometry(tau.compose(h), -1) if flip else SignedIsometry(h, 1))
    return out


def verify_twist(spec: GroupSpec, samples: int = 100, seed: int = 0) -> dict:
    """Check the index-two extension data; failures are report fields, not errors.

    tau must be an involution outside the base group that normalizes it, and
    the tracked sign character must be multiplicative on sampled products.
    """
    if spec.twist is None:
        raise ValueError("spec carries no twist")
    tau = spec.twist.tau
    base = GroupSpec(spec.dimension, spec.family)
    tau_involutive = tau.compose(tau).is_identity(INVOLUTION_TOL)
    tau_outside = not membership(base, tau)

    tau_inv = tau.inverse()
    probes = group_generators(base) + sample_group(base, samples, seed)
    normalizes = all(membership(base, tau.compose(h).compose(tau_inv)) for h in probes)

    twisted = sample_group(GroupSpec(spec.dimension, spec.family, spec.twist),
                           2 * samples, seed)
    character_homomorphism = True
    for a, b in zip(twisted[:samples], twisted[samples:]):
        if a.compose(b).sign != a.sign * b.sign:
            character_homomorphism = False
            break

    return {"tau_involutive": bool(tau_involutive),
            "tau_outside": bool(tau_outside),
            "normalizes": bool(normalizes),
            "character_homomorphism": bool(character_homomorphism),
            "all_passed": bool(tau_involutive and tau_outside and normalizes
                               and character_homomorphism)}
