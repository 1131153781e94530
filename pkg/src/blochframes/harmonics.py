"""Spherical-harmonic form of the canonical expansion function.

Over each sphere the canonical expansion function only contains harmonics of
degree l <= 1, and that block is uniquely fixed by the density operator.  Any
term with some l >= 2 (a HOSH term, higher-order spherical harmonic) can be
added freely: it changes the expansion function but integrates to zero
against every projector, so the represented operator stays put.

Phase convention is Condon-Shortley, e.g. Y_1^{+1} = -sqrt(3/8pi) sin(theta) e^{i phi}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import sph_harm_y

from .operators import BlochVector
from .representations import FOUR_PI, PauliCoefficients, _mode_contract

# column order of the canonical (l <= 1) block
CANONICAL_LM = ((0, 0), (1, -1), (1, 0), (1, 1))

HoshKey = tuple[tuple[int, int], ...]
HoshTerm = tuple[HoshKey, complex]

# change of basis from (1, sigma_1, sigma_2, sigma_3) to the operator
# harmonics sqrt(4pi) 1, -+ sqrt(2pi/3)(sigma_1 +- i sigma_2), sqrt(4pi/3) sigma_3
_S = math.sqrt(3.0 / (2.0 * math.pi))
_PAULI_TO_SPH = np.array(
    [
        [1.0 / math.sqrt(FOUR_PI), 0.0, 0.0, 0.0],
        [0.0, _S / 2.0, 0.0, -_S / 2.0],
        [0.0, 1j * _S / 2.0, 0.0, 1j * _S / 2.0],
        [0.0, 0.0, math.sqrt(3.0 / FOUR_PI), 0.0],
    ],
    dtype=complex,
)
_SPH_TO_PAULI = np.linalg.inv(_PAULI_TO_SPH)


def sph_y(l: int, m: int, theta, phi) -> np.ndarray:
    """Spherical harmonic Y_l^m at polar angle theta, azimuth phi."""
    if abs(m) > l:
        raise ValueError(f"|m| = {abs(m)} exceeds l = {l}")
    return sph_harm_y(l, m, np.asarray(theta), np.asarray(phi))


def _node_angles(nodes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    nodes = np.asarray(nodes, dtype=float)
    theta = np.arccos(np.clip(nodes[:, 2], -1.0, 1.0))
    phi = np.arctan2(nodes[:, 1], nodes[:, 0])
    return theta, phi


@dataclass(frozen=True, eq=False)
class SphCoefficients:
    """Spherical-harmonic coefficients of one expansion function.

    canonical holds the dense l <= 1 block with per-qubit column order
    (0,0), (1,-1), (1,0), (1,+1).  hosh is a sparse list of extra terms
    keyed by ((l_1, m_1), ..., (l_N, m_N)); every stored term has some
    l_k >= 2.
    """

    qubits: int
    canonical: np.ndarray
    hosh: tuple[HoshTerm, ...] = ()

    def __post_init__(self) -> None:
        c = np.array(self.canonical, dtype=complex)
        if c.shape != (4,) * self.qubits:
            raise ValueError(f"canonical block must have shape {(4,) * self.qubits}")
        c.setflags(write=False)
        object.__setattr__(self, "canonical", c)
        object.__setattr__(self, "hosh", tuple((tuple(k), complex(v)) for k, v in self.hosh))

    @property
    def quadrature_degrees(self) -> tuple[int, ...]:
        """Quadrature degree needed per sphere to integrate w times a projector."""
        degrees = [2] * self.qubits
        for key, _ in self.hosh:
            for k, (l, _m) in enumerate(key):
                degrees[k] = max(degrees[k], l + 1)
        return tuple(degrees)

    def node_values(self, nodes_per_qubit: Sequence[np.ndarray]) -> np.ndarray:
        """Evaluate the expansion function on a product grid of sphere points."""
        if len(nodes_per_qubit) != self.qubits:
            raise ValueError("need one node array per qubit")
        angles = [_node_angles(nodes) for nodes in nodes_per_qubit]
        mats = []
        for theta, phi in angles:
            m = np.empty((theta.size, 4), dtype=complex)
            for col, (l, mm) in enumerate(CANONICAL_LM):
                m[:, col] = sph_y(l, mm, theta, phi)
            mats.append(m)
        total = _mode_contract(self.canonical, mats)
        for key, coeff in self.hosh:
            term = np.array(coeff)
            for (l, mm), (theta, phi) in zip(key, angles):
                term = np.multiply.outer(term, sph_y(l, mm, theta, phi))
            total = total + term
        imag = float(np.max(np.abs(total.imag)))
        if imag > 1e-9:
            raise ValueError(f"expansion function is not real (imaginary residual {imag:g})")
        return total.real

    def evaluate(self, n_tuple: Sequence[BlochVector]) -> float:
        if len(n_tuple) != self.qubits:
            raise ValueError(f"expected {self.qubits} vectors, got {len(n_tuple)}")
        nodes = [np.asarray(v, dtype=float)[None, :] for v in n_tuple]
        return float(self.node_values(nodes).reshape(()))


def sph_coefficients(c: PauliCoefficients) -> SphCoefficients:
    """The unique l <= 1 spherical-harmonic coefficients of the canonical
    expansion function of c."""
    mats = [np.ascontiguousarray(_PAULI_TO_SPH.T)] * c.qubits
    block = _mode_contract(c.coeffs.astype(complex), mats)
    return SphCoefficients(c.qubits, block)


def canonical_pauli(s: SphCoefficients) -> PauliCoefficients:
    """Back out the Pauli tensor from the l <= 1 block (HOSH terms carry no
    operator content and are ignored)."""
    mats = [np.ascontiguousarray(_SPH_TO_PAULI.T)] * s.qubits
    c = _mode_contract(s.canonical, mats)
    imag = float(np.max(np.abs(c.imag)))
    if imag > 1e-10:
        raise ValueError(f"canonical block does not describe a Hermitian operator (residual {imag:g})")
    return PauliCoefficients(s.qubits, c.real)


def _mirror(key: HoshKey) -> HoshKey:
    return tuple((l, -m) for l, m in key)


def _mirror_parity(key: HoshKey) -> float:
    return (-1.0) ** sum(m for _l, m in key)


def add_hosh(
    base: SphCoefficients, extra: Mapping[HoshKey, complex] | Iterable[HoshTerm]
) -> SphCoefficients:
    """Add higher-order terms to an expansion function without changing rho.

    `extra` maps keys ((l, m) per qubit) to coefficients, or lists such
    pairs.  Every term must contain at least one factor with l >= 2 (an
    all-l<=1 term would alter the represented operator and is rejected), and
    the term set must come in conjugate m-mirror pairs so the expansion
    function stays real: coeff(l, -m) = (-1)^(sum m) conj(coeff(l, m)).
    """
    merged: dict[HoshKey, complex] = {}
    for key, coeff in base.hosh:
        merged[key] = merged.get(key, 0j) + coeff
    items = extra.items() if isinstance(extra, Mapping) else extra
    for key, coeff in items:
        key = tuple((int(l), int(m)) for l, m in key)
        if len(key) != base.qubits:
            raise ValueError(f"term {key} does not address {base.qubits} qubits")
        for l, m in key:
            if l < 0 or abs(m) > l:
                raise ValueError(f"invalid harmonic index (l={l}, m={m})")
        if max(l for l, _m in key) < 2:
            raise ValueError(f"term {key} has all l <= 1 and would change the operator")
        merged[key] = merged.get(key, 0j) + complex(coeff)
    for key, coeff in merged.items():
        partner = merged.get(_mirror(key), 0j)
        expected = _mirror_parity(key) * np.conj(coeff)
        if abs(partner - expected) > 1e-12 * max(1.0, abs(coeff)):
            raise ValueError(
                f"term {key} breaks the reality pairing: mirror coefficient is {partner}, "
                f"needs {expected}"
            )
    terms = tuple((k, v) for k, v in merged.items() if v != 0)
    return SphCoefficients(base.qubits, base.canonical, terms)
