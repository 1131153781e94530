"""Expansion coefficients of density operators over product projector frames.

The central object is the canonical expansion function

    w(n_1, ..., n_N) = tr(rho Q(n_1) x ... x Q(n_N)),

evaluated lazily from the Pauli coefficient tensor c, since
w = (3/4pi)^N sum_c c_{a1..aN} (n_1)_{a1} ... (n_N)_{aN} with the convention
(n)_0 = 1/3.  Discrete tables over finite frames come from the same
contraction with the duals' Pauli expansions, and reconstruction goes back
through projector stacks or sphere quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from .operators import BlochVector, DenseOperator, sigma_stack
from .frames import Frame, polyhedron_vectors

FOUR_PI = 4.0 * math.pi


def _mode_contract(tensor: np.ndarray, matrices: Sequence[np.ndarray]) -> np.ndarray:
    """Contract axis k of the tensor with column 2 of matrices[k].

    Each matrix has shape (M_k, 4) (or (M_k, old axis length)); the result has
    shape (M_1, ..., M_N).  Axes are consumed from the front and appended at
    the back, which keeps the qubit order intact.
    """
    out = tensor
    for m in matrices:
        out = np.tensordot(out, m, axes=([0], [1]))
    return out


def _assemble_product(weights: np.ndarray, stacks: Sequence[np.ndarray]) -> np.ndarray:
    """Sum weights[idx] * stack_1[i_1] x ... x stack_N[i_N] as a dense matrix."""
    n = weights.ndim
    out = weights
    for s in stacks:
        out = np.tensordot(out, s, axes=([0], [0]))
    # axes are now (i_1, j_1, ..., i_N, j_N); interleave into row/column blocks
    perm = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    out = out.transpose(perm)
    d = 2**n
    return out.reshape(d, d)


@dataclass(frozen=True, eq=False)
class PauliCoefficients:
    """Real tensor c with c[a1, ..., aN] = tr(rho sigma_a1 x ... x sigma_aN)."""

    qubits: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        c = np.array(self.coeffs, dtype=float)
        if c.shape != (4,) * self.qubits:
            raise ValueError(f"coefficient tensor must have shape {(4,) * self.qubits}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def quadrature_degrees(self) -> tuple[int, ...]:
        # per-sphere polynomial degree of w times a projector
        return (2,) * self.qubits

    def node_values(self, nodes_per_qubit: Sequence[np.ndarray]) -> np.ndarray:
        """Canonical expansion values on a product grid of sphere points.

        nodes_per_qubit[k] is an (M_k, 3) array of unit vectors; the result has
        shape (M_1, ..., M_N).
        """
        if len(nodes_per_qubit) != self.qubits:
            raise ValueError("need one node array per qubit")
        mats = []
        for nodes in nodes_per_qubit:
            nodes = np.asarray(nodes, dtype=float)
            m = np.empty((nodes.shape[0], 4))
            m[:, 0] = 1.0 / 3.0
            m[:, 1:] = nodes
            mats.append(m)
        scale = (3.0 / FOUR_PI) ** self.qubits
        return scale * _mode_contract(self.coeffs, mats)

    def to_dict(self) -> dict:
        """JSON form {"n": N, "coeffs": {"a1...aN": value}} listing nonzeros."""
        entries = {}
        for idx in np.ndindex(*self.coeffs.shape):
            v = float(self.coeffs[idx])
            if v != 0.0:
                entries["".join(str(i) for i in idx)] = v
        return {"n": self.qubits, "coeffs": entries}

    @classmethod
    def from_dict(cls, data: dict) -> "PauliCoefficients":
        n = int(data["n"])
        c = np.zeros((4,) * n)
        for key, value in dict(data.get("coeffs", {})).items():
            if len(key) != n or any(ch not in "0123" for ch in key):
                raise ValueError(f"bad coefficient index {key!r} for {n} qubits")
            c[tuple(int(ch) for ch in key)] = float(value)
        return cls(n, c)


def pauli_coefficients(rho: DenseOperator, tol: float = 1e-10) -> PauliCoefficients:
    """Pauli coefficient tensor of a Hermitian operator.

    Contracts each qubit of rho with the sigma stack, so the cost is
    O(N 4^N) rather than one trace per Pauli string.
    """
    err = rho.hermiticity_error()
    if err > tol:
        raise ValueError(f"pauli_coefficients needs a Hermitian input (|A - A^dag| = {err:g})")
    n = rho.qubits
    t = rho.matrix.reshape((2,) * (2 * n))
    # bring axes to (i_1, j_1, i_2, j_2, ...)
    perm = [ax for k in range(n) for ax in (k, n + k)]
    t = np.transpose(t, perm)
    sig = sigma_stack()
    for _ in range(n):
        # tr picks up sigma[j, i], so contract (i, j) with sigma axes (2, 1)
        t = np.tensordot(t, sig, axes=([0, 1], [2, 1]))
    imag = float(np.max(np.abs(t.imag)))
    if imag > 1e-12:
        raise ValueError(f"coefficients came out complex (residual {imag:g})")
    return PauliCoefficients(n, t.real)


def pauli_to_operator(c: PauliCoefficients) -> DenseOperator:
    """Inverse of pauli_coefficients: rho = 2^-N sum c sigma x ... x sigma."""
    n = c.qubits
    t = _assemble_product(c.coeffs, [sigma_stack()] * n)
    return DenseOperator(t / 2**n, n, hermitian=True)


def wcan_continuous(c: PauliCoefficients, n_tuple: Sequence[BlochVector]) -> float:
    """Canonical expansion function at one tuple of unit Bloch vectors."""
    if len(n_tuple) != c.qubits:
        raise ValueError(f"expected {c.qubits} vectors, got {len(n_tuple)}")
    nodes = []
    for v in n_tuple:
        arr = np.asarray(v, dtype=float)
        if abs(np.linalg.norm(arr) - 1.0) > 1e-12:
            raise ValueError(f"vector {tuple(arr)} is not unit")
        nodes.append(arr[None, :])
    return float(c.node_values(nodes).reshape(()))


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """Expansion coefficients of one density operator.

    Discrete mode stores a real weight tensor over per-qubit frame indices.
    Continuous mode wraps PauliCoefficients and evaluates the canonical
    expansion function on demand instead of storing samples.
    """

    mode: str
    qubits: int
    frames: tuple[Frame, ...] | None = None
    weights: np.ndarray | None = None
    pauli: PauliCoefficients | None = None

    def __post_init__(self) -> None:
        if self.mode == "discrete":
            if self.frames is None or self.weights is None:
                raise ValueError("discrete tables need frames and weights")
            w = np.array(self.weights, dtype=float)
            expected = tuple(f.size for f in self.frames)
            if w.shape != expected:
                raise ValueError(f"weight tensor shape {w.shape} does not match frame sizes {expected}")
            if len(self.frames) != self.qubits:
                raise ValueError("need one frame per qubit")
            w.setflags(write=False)
            object.__setattr__(self, "weights", w)
        elif self.mode == "continuous":
            if self.pauli is None or self.pauli.qubits != self.qubits:
                raise ValueError("continuous tables need matching PauliCoefficients")
        else:
            raise ValueError(f"unknown table mode {self.mode!r}")

    @classmethod
    def discrete(cls, frames: Sequence[Frame], weights: np.ndarray) -> "CoefficientTable":
        frames = tuple(frames)
        return cls("discrete", len(frames), frames=frames, weights=weights)

    @classmethod
    def continuous(cls, pauli: PauliCoefficients) -> "CoefficientTable":
        return cls("continuous", pauli.qubits, pauli=pauli)

    def evaluate(self, n_tuple: Sequence[BlochVector]) -> float:
        if self.mode != "continuous":
            raise ValueError("evaluate applies to continuous tables; discrete ones are indexed")
        return wcan_continuous(self.pauli, n_tuple)

    def min_entry(self) -> float:
        if self.mode != "discrete":
            raise ValueError("min_entry applies to discrete tables")
        return float(self.weights.min())

    def total(self) -> float:
        if self.mode != "discrete":
            raise ValueError("total applies to discrete tables")
        return float(self.weights.sum())

    def write_csv(self, stream: TextIO, comments: bool = True) -> None:
        """Rows idx_1,...,idx_N,weight in lexicographic index order."""
        if self.mode != "discrete":
            raise ValueError("CSV export applies to discrete tables")
        n = self.qubits
        if comments:
            stream.write("# discrete expansion table: one row per frame multi-index\n")
            stream.write(
                "# idx_k indexes qubit k's frame (%s); weight = tr(rho Q_idx1 x ... x Q_idxN)\n"
                % ", ".join(f.kind for f in self.frames)
            )
        stream.write(",".join([f"idx_{k + 1}" for k in range(n)] + ["weight"]) + "\n")
        for idx in np.ndindex(*self.weights.shape):
            row = [str(i) for i in idx] + [repr(float(self.weights[idx]))]
            stream.write(",".join(row) + "\n")
        if comments:
            stream.write(f"# min={self.min_entry()!r} sum={self.total()!r}\n")


def wcan_discrete(rho: DenseOperator, frames: Sequence[Frame]) -> CoefficientTable:
    """Expansion coefficients of rho over one finite frame per qubit.

    Entry (a_1, ..., a_N) is tr(rho Q_{a_1} x ... x Q_{a_N}).  For frames
    passing frame_check this equals the canonical expansion function at the
    frame vectors times prod_k 4pi/K_k.
    """
    frames = tuple(frames)
    if len(frames) != rho.qubits:
        raise ValueError(f"expected {rho.qubits} frames, got {len(frames)}")
    c = pauli_coefficients(rho)
    mats = [f.dual_pauli_matrix() for f in frames]
    weights = _mode_contract(c.coeffs, mats)
    return CoefficientTable.discrete(frames, weights)


def reconstruct_discrete(table: CoefficientTable) -> DenseOperator:
    """Rebuild sum_idx w(idx) P_idx1 x ... x P_idxN from a discrete table."""
    if table.mode != "discrete":
        raise ValueError("reconstruct_discrete needs a discrete table")
    stacks = [np.array([p.matrix for p in f.projectors]) for f in table.frames]
    m = _assemble_product(table.weights, stacks)
    return DenseOperator(0.5 * (m + m.conj().T), table.qubits, hermitian=True)


# --- sphere quadrature ------------------------------------------------------


def _sphere_monomial_integral(a: int, b: int, c: int) -> float:
    """Exact integral of x^a y^b z^c over the unit sphere."""
    if a % 2 or b % 2 or c % 2:
        return 0.0
    num = _double_factorial(a - 1) * _double_factorial(b - 1) * _double_factorial(c - 1)
    return FOUR_PI * num / _double_factorial(a + b + c + 1)


def _double_factorial(k: int) -> float:
    out = 1.0
    while k > 1:
        out *= k
        k -= 2
    return out


@dataclass(frozen=True, eq=False)
class SphereQuadrature:
    """Nodes and weights for integrating functions over one Bloch sphere."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 3 or weights.shape != (nodes.shape[0],):
            raise ValueError("quadrature needs (K, 3) nodes and K weights")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return self.nodes.shape[0]

    def degree_residual(self, degree: int) -> float:
        """Worst monomial-moment error over all total degrees <= degree."""
        worst = 0.0
        x, y, z = self.nodes[:, 0], self.nodes[:, 1], self.nodes[:, 2]
        for a in range(degree + 1):
            for b in range(degree + 1 - a):
                for c in range(degree + 1 - a - b):
                    approx = float(np.sum(self.weights * x**a * y**b * z**c))
                    worst = max(worst, abs(approx - _sphere_monomial_integral(a, b, c)))
        return worst

    def is_exact_to_degree(self, degree: int, tol: float = 1e-8) -> bool:
        return self.degree_residual(degree) <= tol


def sphere_quadrature(kind: str) -> SphereQuadrature:
    """Equal-weight vertex quadratures: octahedron (degree 3), icosahedron (degree 5)."""
    if kind not in ("octahedron", "icosahedron"):
        raise ValueError(f"no quadrature registered for {kind!r}")
    vectors = polyhedron_vectors(kind)
    nodes = np.array([v.as_array() for v in vectors])
    weights = np.full(len(vectors), FOUR_PI / len(vectors))
    return SphereQuadrature(nodes, weights)


def reconstruct_continuous(
    rep: object, quadrature: SphereQuadrature | Sequence[SphereQuadrature]
) -> DenseOperator:
    """Integrate rho = sum over product nodes of weight * w(nodes) * P(nodes).

    rep is anything exposing qubits, quadrature_degrees and node_values
    (PauliCoefficients, or the spherical-harmonic coefficients from the
    harmonics module).  Each qubit's quadrature must integrate spherical
    polynomials exactly up to that qubit's stated degree; a quadrature that
    cannot is rejected.
    """
    n = rep.qubits
    if isinstance(quadrature, SphereQuadrature):
        quads: Sequence[SphereQuadrature] = (quadrature,) * n
    else:
        quads = tuple(quadrature)
    if len(quads) != n:
        raise ValueError(f"expected {n} quadratures, got {len(quads)}")
    for k, (quad, degree) in enumerate(zip(quads, rep.quadrature_degrees)):
        if not quad.is_exact_to_degree(degree):
            raise ValueError(
                f"quadrature for qubit {k} must integrate degree <= {degree} spherical "
                f"polynomials exactly (residual {quad.degree_residual(degree):g})"
            )
    values = rep.node_values([q.nodes for q in quads])
    sig = sigma_stack()
    stacks = []
    for quad in quads:
        proj = 0.5 * (
            sig[0][None, :, :]
            + np.tensordot(quad.nodes, sig[1:], axes=([1], [0]))
        )
        stacks.append(proj * quad.weights[:, None, None])
    m = _assemble_product(values, stacks)
    return DenseOperator(0.5 * (m + m.conj().T), n, hermitian=True)
