"""The state families under study, their explicit product ensembles, and the
closed-form separability bounds.

The eps-families are mixtures rho_eps = (1 - eps)/2^N identity + eps rho_1
with rho_1 a pure target: the N-qubit cat state (|0...0> + |1...1>)/sqrt(2),
its N = 2 case (the Werner state) or its N = 3 case (the eps-GHZ state).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .operators import (
    BlochVector,
    DenseOperator,
    bloch_projector,
    tensor,
    validate_density,
)
from .frames import Frame
from .representations import CoefficientTable

FAMILIES = ("maximally_mixed", "cat", "eps_cat", "werner", "eps_ghz", "custom_matrix")

_PLUS = {
    1: BlochVector(1.0, 0.0, 0.0),
    2: BlochVector(0.0, 1.0, 0.0),
    3: BlochVector(0.0, 0.0, 1.0),
}
_MINUS = {axis: v.negated() for axis, v in _PLUS.items()}


def _axis(axis: int, sign: int) -> BlochVector:
    return _PLUS[axis] if sign > 0 else _MINUS[axis]


@dataclass(frozen=True, eq=False)
class StateSpec:
    """Description of one state: a family name plus its parameters."""

    family: str
    qubits: int | None = None
    epsilon: float | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", self.family.replace("-", "_"))

    @classmethod
    def from_json(cls, data: dict) -> "StateSpec":
        if not isinstance(data, dict) or "family" not in data:
            raise ValueError('state JSON needs a "family" key')
        matrix = None
        if data.get("matrix") is not None:
            rows = []
            for row in data["matrix"]:
                rows.append([complex(e[0], e[1]) if isinstance(e, (list, tuple)) else complex(e) for e in row])
            matrix = np.array(rows)
        qubits = data.get("n", data.get("qubits"))
        return cls(
            family=str(data["family"]),
            qubits=None if qubits is None else int(qubits),
            epsilon=None if data.get("epsilon") is None else float(data["epsilon"]),
            matrix=matrix,
        )

    def to_json(self) -> dict:
        out: dict = {"family": self.family}
        if self.qubits is not None:
            out["n"] = self.qubits
        if self.epsilon is not None:
            out["epsilon"] = self.epsilon
        if self.matrix is not None:
            out["matrix"] = [[[float(e.real), float(e.imag)] for e in row] for row in self.matrix]
        return out


def cat_state_vector(n: int) -> np.ndarray:
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1.0 / math.sqrt(2.0)
    return v


def _eps_cat(n: int, eps: float) -> DenseOperator:
    v = cat_state_vector(n)
    m = (1.0 - eps) * np.eye(2**n) / 2**n + eps * np.outer(v, v.conj())
    return DenseOperator(m, n, hermitian=True)


def _require_epsilon(spec: StateSpec) -> float:
    if spec.epsilon is None:
        raise ValueError(f"family {spec.family!r} needs an epsilon")
    if not 0.0 <= spec.epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {spec.epsilon}")
    return spec.epsilon


def build_state(spec: StateSpec) -> DenseOperator:
    """Construct the density operator described by a StateSpec."""
    family = spec.family
    if family == "maximally_mixed":
        if spec.qubits is None or spec.qubits < 1:
            raise ValueError("maximally_mixed needs a positive qubit count")
        return DenseOperator(np.eye(2**spec.qubits) / 2**spec.qubits, spec.qubits, hermitian=True)
    if family == "cat":
        if spec.qubits is None or spec.qubits < 1:
            raise ValueError("cat needs a positive qubit count")
        return _eps_cat(spec.qubits, 1.0)
    if family == "eps_cat":
        if spec.qubits is None or spec.qubits < 1:
            raise ValueError("eps_cat needs a positive qubit count")
        return _eps_cat(spec.qubits, _require_epsilon(spec))
    if family == "werner":
        if spec.qubits not in (None, 2):
            raise ValueError("the Werner family is defined on exactly 2 qubits")
        return _eps_cat(2, _require_epsilon(spec))
    if family == "eps_ghz":
        if spec.qubits not in (None, 3):
            raise ValueError("the eps-GHZ family is defined on exactly 3 qubits")
        return _eps_cat(3, _require_epsilon(spec))
    if family == "custom_matrix":
        if spec.matrix is None:
            raise ValueError("custom_matrix needs an explicit matrix")
        m = np.asarray(spec.matrix)
        n = int(round(math.log2(m.shape[0]))) if m.ndim == 2 else 0
        op = DenseOperator(m, max(n, 1))
        check = validate_density(op)
        if not check.passed:
            raise ValueError(f"custom matrix is not a density operator: {check.reason}")
        return op
    raise ValueError(f"unknown state family {spec.family!r}; options: {FAMILIES}")


# --- closed-form separability bounds ---------------------------------------


def bound_general(n: int) -> float:
    """Every N-qubit state this close to maximally mixed is separable:
    eps <= 1/(1 + 2^(2N-1))."""
    if n < 1:
        raise ValueError("bound_general needs n >= 1")
    return 1.0 / (1 + 2 ** (2 * n - 1))


def bound_cat(n: int) -> float:
    """Exact nonnegativity threshold of the canonical expansion for eps-cat states.

    The minimum of the expansion function sits either at an all-equator
    configuration (threshold 1/3^N) or at a pole configuration (threshold
    1/(1 +- 2^N + 2^(2N-2)), upper sign for even N); the binding constraint
    is the smaller of the two.  That reproduces 1/9, 1/27, 1/81, 1/243 for
    N = 2..5 and the pole formula for N >= 6.
    """
    if n < 2:
        raise ValueError("bound_cat needs n >= 2")
    sign = 1 if n % 2 == 0 else -1
    pole = 1.0 / (1 + sign * 2**n + 2 ** (2 * n - 2))
    equator = 1.0 / 3**n
    return min(pole, equator)


def bound_duer(n: int) -> float:
    """Separability threshold 1/(1 + 2^(N-1)) for the eps-cat family, due to
    Duer, Cirac and Tarrach; sharp for all N."""
    if n < 2:
        raise ValueError("bound_duer needs n >= 2")
    return 1.0 / (1 + 2 ** (n - 1))


# --- explicit product ensembles ---------------------------------------------


class EnsembleTerm(NamedTuple):
    probability: float
    vectors: tuple[BlochVector, ...]
    label: str = ""


@dataclass(frozen=True, eq=False)
class ProductEnsemble:
    """A finite mixture of pure product states, one Bloch vector per qubit."""

    qubits: int
    terms: tuple[EnsembleTerm, ...]

    def __post_init__(self) -> None:
        terms = tuple(EnsembleTerm(float(p), tuple(v), str(lab)) for p, v, lab in self.terms)
        total = 0.0
        for p, vectors, _ in terms:
            if p < -1e-15:
                raise ValueError(f"negative probability {p}")
            if len(vectors) != self.qubits:
                raise ValueError(f"term has {len(vectors)} vectors, expected {self.qubits}")
            for v in vectors:
                if abs(v.norm() - 1.0) > 1e-12:
                    raise ValueError(f"ensemble vector {v} is not unit")
            total += p
        if abs(total - 1.0) > 1e-14:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "terms", terms)

    def mixture(self) -> DenseOperator:
        m = np.zeros((2**self.qubits, 2**self.qubits), dtype=complex)
        for p, vectors, _ in self.terms:
            m += p * tensor([bloch_projector(v) for v in vectors]).matrix
        return DenseOperator(m, self.qubits, hermitian=True)

    def to_json(self) -> dict:
        return {
            "qubits": self.qubits,
            "terms": [
                {"probability": p, "vectors": [list(v) for v in vectors], "label": lab}
                for p, vectors, lab in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProductEnsemble":
        try:
            qubits = int(data["qubits"])
            terms = tuple(
                EnsembleTerm(
                    float(t["probability"]),
                    tuple(BlochVector(float(v[0]), float(v[1]), float(v[2])) for v in t["vectors"]),
                    str(t.get("label", "")),
                )
                for t in data["terms"]
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed ensemble JSON: {exc}") from exc
        return cls(qubits, terms)


def werner_ensemble() -> ProductEnsemble:
    """Six equally weighted product terms whose mixture is the eps = 1/3
    Werner state: aligned z pairs, aligned x pairs, anti-aligned y pairs."""
    terms = []
    for s in (1, -1):
        terms.append(EnsembleTerm(1 / 6, (_axis(3, s), _axis(3, s)), "z,z"))
    for s in (1, -1):
        terms.append(EnsembleTerm(1 / 6, (_axis(1, s), _axis(1, s)), "x,x"))
    for s in (1, -1):
        terms.append(EnsembleTerm(1 / 6, (_axis(2, s), _axis(2, -s)), "y,-y"))
    return ProductEnsemble(2, tuple(terms))


_ODD_SIGN_TRIPLES = ((1, 1, -1), (1, -1, 1), (-1, 1, 1), (-1, -1, -1))
_EVEN_SIGN_TRIPLES = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def ghz_ensemble() -> ProductEnsemble:
    """Eighteen pure product terms whose mixture is the eps = 1/5 GHZ state.

    Two pole-aligned terms carry weight 1/10 each and produce the three
    two-qubit zz correlations; four x-axis triples with an even number of
    sign flips produce the xxx correlation; three groups of four terms with
    one x leg and two y legs, flipped an odd number of times, produce the
    -xyy, -yxy and -yyx correlations.  Each group of four is an expanded
    rank-4 mixture kept together by its label.
    """
    terms = [
        EnsembleTerm(1 / 10, (_axis(3, 1), _axis(3, 1), _axis(3, 1)), "poles"),
        EnsembleTerm(1 / 10, (_axis(3, -1), _axis(3, -1), _axis(3, -1)), "poles"),
    ]
    for signs in _EVEN_SIGN_TRIPLES:
        vectors = tuple(_axis(1, s) for s in signs)
        terms.append(EnsembleTerm(1 / 20, vectors, "x,x,x"))
    for axes, label in (((1, 2, 2), "x,y,y"), ((2, 1, 2), "y,x,y"), ((2, 2, 1), "y,y,x")):
        for signs in _ODD_SIGN_TRIPLES:
            vectors = tuple(_axis(a, s) for a, s in zip(axes, signs))
            terms.append(EnsembleTerm(1 / 20, vectors, label))
    return ProductEnsemble(3, tuple(terms))


def dilute_with_mixed(e: ProductEnsemble, weight: float) -> ProductEnsemble:
    """Shrink an ensemble toward the maximally mixed state, which is itself a
    product mixture over +-z on every qubit; weight is the surviving share of e."""
    if not 0.0 <= weight <= 1.0:
        raise ValueError("weight must lie in [0, 1]")
    terms = [EnsembleTerm(weight * p, vectors, lab) for p, vectors, lab in e.terms]
    share = (1.0 - weight) / 2**e.qubits
    for signs in itertools.product((1, -1), repeat=e.qubits):
        vectors = tuple(_axis(3, s) for s in signs)
        terms.append(EnsembleTerm(share, vectors, "mixed"))
    return ProductEnsemble(e.qubits, tuple(terms))


def ensemble_to_table(e: ProductEnsemble, frames: Sequence[Frame]) -> CoefficientTable:
    """Express an ensemble as a nonnegative table over per-qubit frame indices.

    Every ensemble vector must coincide (within 1e-12) with a vertex of the
    corresponding qubit's frame, otherwise the mapping fails.
    """
    frames = tuple(frames)
    if len(frames) != e.qubits:
        raise ValueError(f"expected {e.qubits} frames, got {len(frames)}")
    arrays = [np.array([v.as_array() for v in f.vectors]) for f in frames]
    weights = np.zeros(tuple(f.size for f in frames))
    for p, vectors, _ in e.terms:
        idx = []
        for k, v in enumerate(vectors):
            dist = np.linalg.norm(arrays[k] - v.as_array()[None, :], axis=1)
            a = int(np.argmin(dist))
            if dist[a] > 1e-12:
                raise ValueError(
                    f"ensemble vector {tuple(v)} is not a vertex of qubit {k}'s frame"
                )
            idx.append(a)
        weights[tuple(idx)] += p
    return CoefficientTable.discrete(frames, weights)
