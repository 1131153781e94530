import math

import numpy as np
import pytest

from blochframes import (
    BlochVector,
    NonSpanningFrameError,
    bloch_projector,
    build_frame,
    cardinal6,
    continuous_dual,
    dual_frame,
    frame_check,
    frame_from_json,
    frame_to_json,
    gram,
    pauli,
    polyhedron_vectors,
    reflect_octant,
    trace_inner,
)
from conftest import random_hermitian


def unit(x, y, z):
    r = math.sqrt(x * x + y * y + z * z)
    return BlochVector(x / r, y / r, z / r)


def test_cardinal6_order_and_duals():
    f = cardinal6()
    assert f.kind == "cardinal6"
    assert f.size == 6
    expected_vectors = [
        (1, 0, 0), (-1, 0, 0),
        (0, 1, 0), (0, -1, 0),
        (0, 0, 1), (0, 0, -1),
    ]
    for v, e in zip(f.vectors, expected_vectors):
        assert np.allclose(list(v), e, atol=1e-15)
    # dual of direction n is (1 + 3 sigma.n)/6
    for v, q in zip(f.vectors, f.duals):
        sig = sum(c * pauli(j + 1).matrix for j, c in enumerate(v))
        assert np.allclose(q.matrix, (np.eye(2) + 3 * sig) / 6, atol=1e-12)


def test_cardinal6_gram_spectrum():
    f = cardinal6()
    g = gram(list(f.projectors))
    evs = np.sort(g.eigenvalues().real)
    assert np.allclose(evs, [1.0, 1.0, 1.0, 3.0], atol=1e-12)


def test_tetrahedron_gram_spectrum():
    f = build_frame("tetrahedron")
    g = gram(list(f.projectors))
    evs = np.sort(g.eigenvalues().real)
    assert np.allclose(evs, [2 / 3, 2 / 3, 2 / 3, 2.0], atol=1e-12)


def test_dual_eigenvalues_balanced_frames():
    # duals of a balanced K-frame are (1 + 3 sigma.n)/K: eigenvalues 4/K and -2/K
    for kind in ("octahedron", "tetrahedron", "cube", "icosahedron", "dodecahedron"):
        f = build_frame(kind)
        k = f.size
        for q in f.duals:
            evs = np.sort(np.linalg.eigvalsh(q.matrix))
            assert np.allclose(evs, [-2 / k, 4 / k], atol=1e-12), kind


def test_resolution_of_identity_all_named_frames():
    for kind in ("cardinal6", "tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron"):
        f = build_frame(kind)
        assert f.resolution_residual() < 1e-10, kind


def test_expansion_roundtrip_both_directions(rng):
    f = build_frame("icosahedron")
    for _ in range(100):
        a = random_hermitian(rng, 1)
        via_duals = sum(
            p.matrix * trace_inner(q, a).real for p, q in zip(f.projectors, f.duals)
        )
        via_projectors = sum(
            q.matrix * trace_inner(p, a).real for p, q in zip(f.projectors, f.duals)
        )
        assert np.abs(via_duals - a.matrix).max() < 1e-10
        assert np.abs(via_projectors - a.matrix).max() < 1e-10


def test_frame_check_polyhedra():
    for kind in ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron"):
        chk = frame_check(polyhedron_vectors(kind))
        assert chk.passed, kind
        assert chk.centroid_residual < 1e-14
        assert chk.moment_residual < 1e-14


def test_frame_check_catches_unbalanced_axes():
    vectors = [
        BlochVector(0, 0, 1), BlochVector(0, 0, -1),
        BlochVector(1, 0, 0), BlochVector(-1, 0, 0),
    ]
    chk = frame_check(vectors)
    assert not chk.passed
    # the yy moment is 0 instead of 1/3
    assert chk.moment_residual > 0.3


def test_closed_form_duals_require_balance(rng):
    # for balanced frames the Gram-inverse duals collapse to (1 + 3 sigma.n)/K
    vs = polyhedron_vectors("icosahedron")
    f = dual_frame(vs)
    for v, q in zip(f.vectors, f.duals):
        sig = sum(c * pauli(j + 1).matrix for j, c in enumerate(v))
        closed = (np.eye(2) + 3 * sig) / len(vs)
        assert np.abs(q.matrix - closed).max() < 1e-12


def test_tetrahedron_coefficients_unique(rng):
    # K = 4 projectors are linearly independent, so the dual-frame expansion
    # must agree with an independent least-squares solve
    f = build_frame("tetrahedron")
    basis = np.stack([p.matrix.reshape(-1, order="F") for p in f.projectors], axis=1)
    for _ in range(20):
        a = random_hermitian(rng, 1)
        coeff_dual = np.array([trace_inner(q, a).real for q in f.duals])
        coeff_lstsq, *_ = np.linalg.lstsq(basis, a.matrix.reshape(-1, order="F"), rcond=None)
        assert np.abs(coeff_dual - coeff_lstsq.real).max() < 1e-12
        assert np.abs(coeff_lstsq.imag).max() < 1e-12


def test_non_spanning_frame_raises():
    coplanar = [
        BlochVector(1, 0, 0),
        BlochVector(-0.5, math.sqrt(3) / 2, 0),
        BlochVector(-0.5, -math.sqrt(3) / 2, 0),
        BlochVector(0, 1, 0),
    ]
    with pytest.raises(NonSpanningFrameError):
        dual_frame(coplanar)


def test_too_few_vectors_raise():
    with pytest.raises(NonSpanningFrameError):
        dual_frame([BlochVector(0, 0, 1), BlochVector(0, 0, -1), BlochVector(1, 0, 0)])


def test_continuous_dual_spectrum():
    q = continuous_dual(unit(0.3, -0.4, 0.86))
    evs = np.sort(np.linalg.eigvalsh(q.matrix))
    assert np.allclose(evs, [-1 / (2 * math.pi), 1 / math.pi], atol=1e-12)
    assert abs(np.trace(q.matrix).real - 1 / (2 * math.pi)) < 1e-14


def test_reflect_octant_count_and_moments(rng):
    seeds = []
    while len(seeds) < 3:
        raw = rng.uniform(0.05, 1.0, size=3)
        seeds.append(BlochVector.from_array(raw / np.linalg.norm(raw)))
    out = reflect_octant(seeds)
    assert len(out) == 24
    arr = np.array([list(v) for v in out])
    # sign closure kills the centroid and the off-diagonal moments
    assert np.abs(arr.sum(axis=0)).max() < 1e-14
    moments = arr.T @ arr / len(out)
    off = moments - np.diag(np.diag(moments))
    assert np.abs(off).max() < 1e-14
    # diagonal moments are the mean squared seed components and trace to 1
    expected_diag = np.mean([np.array(list(s)) ** 2 for s in seeds], axis=0)
    assert np.allclose(np.diag(moments), expected_diag, atol=1e-14)
    assert abs(np.trace(moments) - 1.0) < 1e-12


def test_reflect_octant_cube_seed_is_balanced():
    out = reflect_octant(unit(1, 1, 1))
    assert len(out) == 8
    chk = frame_check(out)
    assert chk.passed
    assert sorted(tuple(np.round(v, 12)) for v in out) == sorted(
        tuple(np.round(list(v), 12)) for v in polyhedron_vectors("cube")
    )


def test_reflect_octant_resolution_residual(rng):
    for _ in range(10):
        raw = rng.uniform(0.05, 1.0, size=3)
        seed = BlochVector.from_array(raw / np.linalg.norm(raw))
        f = build_frame("reflected", vectors=[seed])
        assert f.size == 8
        assert f.resolution_residual() < 1e-10


def test_reflected_frame_json_roundtrip(rng):
    raw = rng.uniform(0.05, 1.0, size=(2, 3))
    seeds = [BlochVector.from_array(r / np.linalg.norm(r)) for r in raw]
    f = build_frame("reflected", vectors=seeds)
    obj = frame_to_json(f)
    assert obj["kind"] == "reflected"
    assert len(obj["vectors"]) == 2  # seeds only
    g = frame_from_json(obj)
    assert g.size == f.size == 16
    for a, b in zip(f.vectors, g.vectors):
        assert np.allclose(list(a), list(b), atol=1e-15)


def test_reflect_octant_rejects_boundary():
    with pytest.raises(ValueError):
        reflect_octant(BlochVector(0.0, 0.6, 0.8))
    with pytest.raises(ValueError):
        reflect_octant(unit(-1, 1, 1))
    with pytest.raises(ValueError):
        reflect_octant(BlochVector(0.6, 0.6, 0.8))  # not unit


def test_duplicate_vectors_allowed(rng):
    # exact duplicates split weight but still resolve the identity
    vs = list(polyhedron_vectors("octahedron")) + [BlochVector(0, 0, 1)]
    f = dual_frame(vs)
    assert f.resolution_residual() < 1e-10


def test_frame_json_roundtrip():
    f = build_frame("tetrahedron")
    obj = frame_to_json(f)
    assert obj["kind"] == "tetrahedron"
    g = frame_from_json(obj)
    assert g.kind == f.kind
    for a, b in zip(f.vectors, g.vectors):
        assert np.allclose(list(a), list(b), atol=1e-15)
    # bare string names a polyhedron
    h = frame_from_json("icosahedron")
    assert h.size == 12


def test_frame_json_custom_requires_vectors():
    with pytest.raises(ValueError):
        frame_from_json({"kind": "custom"})


def test_projector_invariants():
    for kind in ("cardinal6", "dodecahedron"):
        f = build_frame(kind)
        for p in f.projectors:
            m = p.matrix
            assert np.abs(m - m.conj().T).max() < 1e-12
            assert np.abs(m @ m - m).max() < 1e-12
            assert abs(np.trace(m).real - 1.0) < 1e-12


def test_gram_apply_matches_sum(rng):
    f = build_frame("cube")
    g = gram(list(f.projectors))
    a = random_hermitian(rng, 1)
    direct = sum(p.matrix * trace_inner(p, a) for p in f.projectors)
    assert np.abs(g.apply(a).matrix - direct).max() < 1e-12
