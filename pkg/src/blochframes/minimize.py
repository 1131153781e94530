"""Deterministic global minimization of the canonical expansion function.

The function is multilinear in the per-qubit Bloch vectors, and for the state
families of interest its minima sit at pole or equator configurations.  A
uniform (theta, phi) product grid that always contains the poles and, for even
point counts, an equator ring with phi = 0 and phi = pi therefore evaluates
the relevant candidates exactly; golden-section sweeps then polish each
coordinate for generic states.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .operators import BlochVector
from .representations import PauliCoefficients

# cap on the size of the scanned product grid; above it the per-sphere grid
# is thinned (poles and equator survive thinning because they sit on every
# even grid)
SCAN_BUDGET = 8_000_000
_TIE_CAP = 24
_GOLDEN_RATIO = (math.sqrt(5.0) - 1.0) / 2.0


class SphereGrid(NamedTuple):
    points: np.ndarray  # (P, 2) rows of (theta, phi)
    theta_step: float
    phi_step: float


def sphere_grid(count: int) -> SphereGrid:
    """At most `count` deterministic points: both poles plus latitude rings.

    The ring structure uses m theta intervals and p azimuths with m, p even,
    so theta = pi/2 and phi in {0, pi} are always present.
    """
    if count < 6:
        raise ValueError("sphere grids need at least 6 points")
    m = max(2, 2 * round(math.sqrt(count / 8.0)))
    p = (count - 2) // (m - 1)
    p = max(2, p - (p % 2))
    pts = [(0.0, 0.0)]
    for i in range(1, m):
        theta = math.pi * i / m
        for j in range(p):
            pts.append((theta, 2.0 * math.pi * j / p))
    pts.append((math.pi, 0.0))
    return SphereGrid(np.array(pts), math.pi / m, 2.0 * math.pi / p)


class MinimizeResult(NamedTuple):
    value: float
    argmin: tuple[BlochVector, ...]
    grid_ties: tuple[tuple[tuple[float, float], ...], ...]


def _golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10) -> tuple[float, float]:
    """Golden-section minimum of f on [a, b]; returns (x, f(x))."""
    x1 = b - _GOLDEN_RATIO * (b - a)
    x2 = a + _GOLDEN_RATIO * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN_RATIO * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN_RATIO * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _config_value(c: PauliCoefficients, angles: Sequence[Sequence[float]]) -> float:
    nodes = [
        BlochVector.from_spherical(theta, phi % (2.0 * math.pi)).as_array()[None, :]
        for theta, phi in angles
    ]
    return float(c.node_values(nodes).reshape(()))


def minimize_wcan(
    c: PauliCoefficients, grid_per_sphere: int = 24, refine_iters: int = 3
) -> MinimizeResult:
    """Minimize the canonical expansion function over product Bloch vectors.

    Scans the full product of per-qubit grids, then runs refine_iters sweeps
    of per-coordinate golden-section refinement around the best grid point.
    Deterministic for fixed parameters; on value ties the lexicographically
    smallest grid multi-index wins.  The result is always an evaluated point,
    so it upper-bounds the true minimum.

    grid_ties lists the grid configurations (as (theta, phi) per qubit) whose
    scanned value ties the grid minimum within 1e-12, capped at 24 entries.
    """
    if grid_per_sphere < 6:
        raise ValueError("grid_per_sphere must be at least 6")
    n = c.qubits

    count = grid_per_sphere
    grid = sphere_grid(count)
    while len(grid.points) ** n > SCAN_BUDGET and count > 6:
        count -= 2
        grid = sphere_grid(count)
    if len(grid.points) ** n > 4 * SCAN_BUDGET:
        raise ValueError(f"product grid scan is infeasible for {n} qubits")

    angles = grid.points
    nodes = np.stack(
        [
            np.sin(angles[:, 0]) * np.cos(angles[:, 1]),
            np.sin(angles[:, 0]) * np.sin(angles[:, 1]),
            np.cos(angles[:, 0]),
        ],
        axis=1,
    )
    table = c.node_values([nodes] * n)
    flat = table.reshape(-1)
    best_flat = int(np.argmin(flat))
    grid_value = float(flat[best_flat])

    tie_flats = np.flatnonzero(flat <= grid_value + 1e-12)[:_TIE_CAP]
    shape = table.shape
    ties = tuple(
        tuple((float(angles[i, 0]), float(angles[i, 1])) for i in np.unravel_index(t, shape))
        for t in tie_flats
    )

    best_idx = np.unravel_index(best_flat, shape)
    config = [[float(angles[i, 0]), float(angles[i, 1])] for i in best_idx]
    best_value = grid_value

    for _ in range(refine_iters):
        for k in range(n):
            def f_theta(t: float) -> float:
                trial = [list(q) for q in config]
                trial[k][0] = t
                return _config_value(c, trial)

            lo = max(0.0, config[k][0] - grid.theta_step)
            hi = min(math.pi, config[k][0] + grid.theta_step)
            t, val = _golden_section(f_theta, lo, hi)
            if val < best_value:
                best_value = val
                config[k][0] = t

            def f_phi(p: float) -> float:
                trial = [list(q) for q in config]
                trial[k][1] = p
                return _config_value(c, trial)

            p, val = _golden_section(
                f_phi, config[k][1] - grid.phi_step, config[k][1] + grid.phi_step
            )
            if val < best_value:
                best_value = val
                config[k][1] = p % (2.0 * math.pi)

    argmin = tuple(
        BlochVector.from_spherical(theta, phi % (2.0 * math.pi)) for theta, phi in config
    )
    return MinimizeResult(best_value, argmin, ties)


def mix_with_identity(pure: PauliCoefficients, epsilon: float) -> PauliCoefficients:
    """Pauli tensor of (1 - eps)/2^N identity + eps * (state behind `pure`)."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    c = epsilon * np.array(pure.coeffs)
    c[(0,) * pure.qubits] = 1.0
    return PauliCoefficients(pure.qubits, c)


def threshold_search(
    pure: PauliCoefficients,
    grid_per_sphere: int = 24,
    refine_iters: int = 3,
    tol: float = 1e-7,
) -> float:
    """Largest mixing weight eps keeping the canonical expansion nonnegative.

    Bisects eps in [0, 1], running the minimizer on the eps-mixture of the
    identity with the state behind `pure` at every step.  The answer is exact
    (to the bisection tolerance) whenever the extremal configurations lie on
    the scan grid, which holds for the cat-state families; for generic states
    it is an upper estimate at the given grid resolution.
    """
    def is_nonnegative(eps: float) -> bool:
        mixed = mix_with_identity(pure, eps)
        return minimize_wcan(mixed, grid_per_sphere, refine_iters).value >= 0.0

    if is_nonnegative(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_nonnegative(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
