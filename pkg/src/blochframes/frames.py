"""Projector frames on the Bloch sphere and their dual operators.

A frame is a finite family of single-qubit pure-state projectors
P_a = (1 + sigma.n_a)/2 that spans the 4-dimensional operator space.
The Gram superoperator G = sum_a |P_a)(P_a| is inverted to obtain duals
Q_a = G^{-1}|P_a), which satisfy the resolutions of identity

    sum_a |P_a)(Q_a| = sum_a |Q_a)(P_a| = identity superoperator,

so any single-qubit operator A expands as A = sum_a P_a tr(Q_a A).
Vector sets whose centroid vanishes and whose second moments average to
delta_jk/3 ("balanced" sets below) have duals in the closed form
Q_a = (1/K)(1 + 3 sigma.n_a).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .operators import BlochVector, DenseOperator, bloch_projector, sigma_stack

GRAM_RANK_CUTOFF = 1e-10
GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

POLYHEDRON_SIZES = {
    "tetrahedron": 4,
    "octahedron": 6,
    "cube": 8,
    "icosahedron": 12,
    "dodecahedron": 20,
}

FRAME_KINDS = (
    "cardinal6",
    "tetrahedron",
    "octahedron",
    "cube",
    "icosahedron",
    "dodecahedron",
    "reflected",
    "custom",
    "continuous-sampled",
)


class NonSpanningFrameError(ValueError):
    """The supplied projectors do not span the single-qubit operator space."""


def vec_operator(m: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization (columns concatenated top to bottom)."""
    return np.asarray(m).reshape(-1, order="F")


def unvec_operator(v: np.ndarray, dim: int) -> np.ndarray:
    return np.asarray(v).reshape((dim, dim), order="F")


@dataclass(frozen=True, eq=False)
class Superoperator:
    """A linear map on operators, stored as a D^2 x D^2 matrix.

    The matrix acts on column-stacked operators, so apply() is just a
    matrix-vector product in that vectorization.
    """

    matrix: np.ndarray
    dim: int

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        d2 = self.dim * self.dim
        if m.shape != (d2, d2):
            raise ValueError(f"superoperator on dim {self.dim} needs shape {(d2, d2)}, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def outer(cls, ket: DenseOperator, bra: DenseOperator) -> "Superoperator":
        """The map |ket)(bra| : X -> ket * tr(bra^dag X)."""
        if ket.dim != bra.dim:
            raise ValueError("outer product needs equal operator dimensions")
        k = vec_operator(ket.matrix)
        b = vec_operator(bra.matrix)
        return cls(np.outer(k, b.conj()), ket.dim)

    @classmethod
    def identity(cls, dim: int) -> "Superoperator":
        return cls(np.eye(dim * dim), dim)

    def apply(self, a: DenseOperator) -> DenseOperator:
        if a.dim != self.dim:
            raise ValueError("operator dimension does not match superoperator")
        out = unvec_operator(self.matrix @ vec_operator(a.matrix), self.dim)
        return DenseOperator(out, a.qubits)

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues, assuming a Hermitian superoperator matrix."""
        return np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))


def gram(operators: Sequence[DenseOperator]) -> Superoperator:
    """Gram superoperator sum_j |N_j)(N_j| of an operator family."""
    if not operators:
        raise ValueError("gram requires at least one operator")
    dim = operators[0].dim
    vecs = np.empty((len(operators), dim * dim), dtype=complex)
    for i, op in enumerate(operators):
        if op.dim != dim:
            raise ValueError("gram requires operators of equal dimension")
        vecs[i] = vec_operator(op.matrix)
    return Superoperator(vecs.T @ vecs.conj(), dim)


class FrameCheck(NamedTuple):
    passed: bool
    centroid_residual: float
    moment_residual: float


def frame_check(vectors: Sequence[BlochVector], tol: float = 1e-10) -> FrameCheck:
    """Test the two balance conditions a vector set needs for closed-form duals.

    centroid_residual is |mean of the vectors| and moment_residual is the
    Frobenius distance between the mean outer-product matrix and I/3.  Both
    must be at most tol to pass.
    """
    if not vectors:
        raise ValueError("frame_check requires at least one vector")
    arr = np.array([v.as_array() for v in vectors])
    norms = np.linalg.norm(arr, axis=1)
    if np.max(np.abs(norms - 1.0)) > 1e-12:
        raise ValueError("frame_check requires unit vectors")
    centroid = float(np.linalg.norm(arr.mean(axis=0)))
    moments = arr.T @ arr / len(vectors)
    moment = float(np.linalg.norm(moments - np.eye(3) / 3.0))
    return FrameCheck(centroid <= tol and moment <= tol, centroid, moment)


@dataclass(frozen=True, eq=False)
class Frame:
    """A spanning projector family with its dual operators.

    vectors[a], projectors[a] and duals[a] line up index by index.  For the
    cardinal6 kind the flat index is 2*(j-1) + mu, i.e. the order
    +x, -x, +y, -y, +z, -z.
    """

    kind: str
    vectors: tuple[BlochVector, ...]
    projectors: tuple[DenseOperator, ...]
    duals: tuple[DenseOperator, ...]
    gram: Superoperator

    @property
    def size(self) -> int:
        return len(self.vectors)

    def resolution_residual(self) -> float:
        """Frobenius distance of sum_a |P_a)(Q_a| from the identity superoperator."""
        total = np.zeros((4, 4), dtype=complex)
        for p, q in zip(self.projectors, self.duals):
            total += np.outer(vec_operator(p.matrix), vec_operator(q.matrix).conj())
        return float(np.linalg.norm(total - np.eye(4)))

    def dual_pauli_matrix(self) -> np.ndarray:
        """Row a holds the expansion of Q_a over (1, sigma_1, sigma_2, sigma_3)/2."""
        sig = sigma_stack()
        out = np.empty((self.size, 4))
        for a, q in enumerate(self.duals):
            for b in range(4):
                out[a, b] = 0.5 * np.real(np.trace(q.matrix @ sig[b]))
        return out


def dual_frame(vectors: Sequence[BlochVector], kind: str = "custom") -> Frame:
    """Build the frame for the given Bloch vectors by Gram inversion.

    The Gram matrix is eigendecomposed and inverted; any eigenvalue below
    1e-10 times the largest one means the projectors do not span and a
    NonSpanningFrameError is raised instead of pseudo-inverting silently.
    Duplicate vectors are allowed, they just split the weight.
    """
    vectors = tuple(vectors)
    if not vectors:
        raise ValueError("a frame needs at least one vector")
    projectors = tuple(bloch_projector(v) for v in vectors)
    g = gram(projectors)
    lam, basis = np.linalg.eigh(0.5 * (g.matrix + g.matrix.conj().T))
    cutoff = GRAM_RANK_CUTOFF * float(lam[-1])
    if float(lam[0]) < cutoff:
        rank = int(np.sum(lam >= cutoff))
        raise NonSpanningFrameError(
            f"projector family spans only {rank} of 4 operator dimensions"
        )
    ginv = (basis / lam) @ basis.conj().T
    duals = []
    for p in projectors:
        q = unvec_operator(ginv @ vec_operator(p.matrix), 2)
        duals.append(DenseOperator(0.5 * (q + q.conj().T), 1, hermitian=True))
    return Frame(kind, vectors, projectors, tuple(duals), g)


def continuous_dual(n: BlochVector) -> DenseOperator:
    """Dual operator (1/4pi)(1 + 3 sigma.n) of the continuous projector frame."""
    if abs(n.norm() - 1.0) > 1e-12:
        raise ValueError(f"continuous_dual needs a unit vector, got norm {n.norm()!r}")
    sig = sigma_stack()
    m = (sig[0] + 3.0 * (n.x * sig[1] + n.y * sig[2] + n.z * sig[3])) / (4.0 * math.pi)
    return DenseOperator(m, 1, hermitian=True)


def _unit(x: float, y: float, z: float) -> BlochVector:
    r = math.sqrt(x * x + y * y + z * z)
    return BlochVector(float(x / r), float(y / r), float(z / r))


def polyhedron_vectors(kind: str) -> tuple[BlochVector, ...]:
    """Vertices of a regular polyhedron inscribed in the unit sphere.

    Orientations are fixed once and for all: the octahedron sits on the
    coordinate axes, tetrahedron and cube use signed-ones vertices, and the
    icosahedron/dodecahedron come from the usual golden-ratio coordinates.
    """
    if kind == "octahedron":
        return (
            BlochVector(1, 0, 0),
            BlochVector(-1, 0, 0),
            BlochVector(0, 1, 0),
            BlochVector(0, -1, 0),
            BlochVector(0, 0, 1),
            BlochVector(0, 0, -1),
        )
    if kind == "tetrahedron":
        return (
            _unit(1, 1, 1),
            _unit(1, -1, -1),
            _unit(-1, 1, -1),
            _unit(-1, -1, 1),
        )
    if kind == "cube":
        return tuple(_unit(sx, sy, sz) for sx, sy, sz in itertools.product((1, -1), repeat=3))
    if kind == "icosahedron":
        out = []
        for shift in range(3):
            for s1, s2 in itertools.product((1, -1), repeat=2):
                base = [0.0, float(s1), s2 * GOLDEN]
                out.append(_unit(*np.roll(base, shift)))
        return tuple(out)
    if kind == "dodecahedron":
        out = [j for j in polyhedron_vectors("cube")]
        for shift in range(3):
            for s1, s2 in itertools.product((1, -1), repeat=2):
                base = [0.0, s1 / GOLDEN, s2 * GOLDEN]
                out.append(_unit(*np.roll(base, shift)))
        return tuple(out)
    raise ValueError(f"unknown polyhedron kind {kind!r}; options: {sorted(POLYHEDRON_SIZES)}")


def reflect_octant(seed: BlochVector | Sequence[BlochVector]) -> tuple[BlochVector, ...]:
    """Close first-octant unit vectors under all coordinate sign flips.

    Accepts one seed vector or a sequence of them.  Each seed must lie
    strictly inside the first octant; a vector on a boundary plane would
    collide with its own reflection and break the 8-fold count.  Sign
    closure zeroes the centroid and the off-diagonal second moments, so the
    output spans and dual_frame resolves the identity on it.  The diagonal
    moments are the mean squared seed components per axis; they average to
    1/3 but each equals 1/3 (the full frame_check balance) only for suitably
    balanced seeds such as (1,1,1)/sqrt(3).
    """
    if isinstance(seed, BlochVector):
        seed = (seed,)
    seed = tuple(seed)
    if not seed:
        raise ValueError("reflect_octant requires at least one seed vector")
    out = []
    for v in seed:
        if abs(v.norm() - 1.0) > 1e-12:
            raise ValueError(f"seed vector {v} is not unit")
        if min(v.x, v.y, v.z) <= 0.0:
            raise ValueError(
                f"seed vector {v} touches an octant boundary; all components must be > 0"
            )
        for sx, sy, sz in itertools.product((1, -1), repeat=3):
            out.append(BlochVector(sx * v.x, sy * v.y, sz * v.z))
    return tuple(out)


def build_frame(kind: str, vectors: Sequence[BlochVector] | None = None) -> Frame:
    """Construct a named frame, or a custom/reflected one from explicit vectors.

    "cardinal6" is the octahedron vertex set in the order +x,-x,+y,-y,+z,-z.
    For "reflected" the vectors argument holds the octant seeds.
    """
    if kind == "cardinal6":
        return dual_frame(polyhedron_vectors("octahedron"), kind="cardinal6")
    if kind in POLYHEDRON_SIZES:
        return dual_frame(polyhedron_vectors(kind), kind=kind)
    if kind == "reflected":
        if not vectors:
            raise ValueError("reflected frames need seed vectors")
        return dual_frame(reflect_octant(vectors), kind="reflected")
    if kind in ("custom", "continuous-sampled"):
        if not vectors:
            raise ValueError(f"{kind} frames need explicit vectors")
        return dual_frame(vectors, kind=kind)
    raise ValueError(f"unknown frame kind {kind!r}; options: {FRAME_KINDS}")


def cardinal6() -> Frame:
    return build_frame("cardinal6")


def frame_from_json(obj: object) -> Frame:
    """Frame from {"kind": tag, "vectors": [[x,y,z], ...]} (vectors optional
    for named polyhedra).  A bare string is accepted as a kind shorthand."""
    if isinstance(obj, str):
        return build_frame(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError('frame JSON must be {"kind": ..., "vectors": [...]} or a kind string')
    vectors = None
    if obj.get("vectors") is not None:
        vectors = [BlochVector(float(v[0]), float(v[1]), float(v[2])) for v in obj["vectors"]]
    return build_frame(str(obj["kind"]), vectors)


def frame_to_json(frame: Frame) -> dict:
    """Inverse of frame_from_json.  Reflected frames serialize their seeds
    (the all-positive vectors), matching what build_frame expects back."""
    vectors = frame.vectors
    if frame.kind == "reflected":
        vectors = tuple(v for v in vectors if min(v) > 0.0)
    return {"kind": frame.kind, "vectors": [list(v) for v in vectors]}
