import numpy as np
import pytest
from hypothesis import given, settings

from gpcone.cone import ConeParams, Status, membership, sample_boundary, sample_dual_boundary, sample_interior
from gpcone.faces import (
    Full,
    Orthant,
    Ray,
    Trivial,
    dist_to_face,
    expose_face,
    face_from_json,
    face_membership,
    face_to_json,
    idempotent_projection,
    lemma_geometry,
    make_orthant,
    make_ray,
    project_face_batch,
    project_onto_face,
)
from gpcone.errors import VOnFace, ZIsZero, ZNotOnDualBoundary

from strategies import cone_params, seeds

SOC = ConeParams(1, 2, (0.5, 0.5))
P37 = ConeParams(1, 2, (0.3, 0.7))
P23 = ConeParams(2, 3, (0.2, 0.3, 0.5))
RAY = Ray(np.array([-1.0, 1.0, 1.0]))
ORTH0 = Orthant(frozenset({0}))


def test_expose_ray_example():
    z = np.array([1.0, 0.5, 0.5])
    face = expose_face(SOC, z)
    assert isinstance(face, Ray)
    np.testing.assert_allclose(face.f, [-1, 1, 1])
    assert abs(face.f @ z) <= 1e-15
    assert membership(SOC, face.f).status is Status.BOUNDARY


@pytest.mark.parametrize("alpha", [(0.5, 0.5), (0.3, 0.7)])
def test_expose_orthant_example(alpha):
    p = ConeParams(1, 2, alpha)
    face = expose_face(p, (0, 1, 0))
    assert face == ORTH0 and face.dim(p) == 1


def test_expose_orthant_two_indices():
    # the example's z has four entries; read as (0, 0 | 0, 1, 1) for m = 2, n = 3
    face = expose_face(P23, (0, 0, 0, 1, 1))
    assert face == Orthant(frozenset({1, 2})) and face.dim(P23) == 1


def test_expose_rejections():
    with pytest.raises(ZIsZero):
        expose_face(SOC, (0, 0, 0))
    with pytest.raises(ZNotOnDualBoundary):
        expose_face(SOC, (0, 1, 1))  # interior of K*
    with pytest.raises(ZNotOnDualBoundary):
        expose_face(SOC, (3, 1, 1))  # outside K*
    with pytest.raises(ZNotOnDualBoundary):
        expose_face(SOC, (0, -1, 1))
    assert expose_face(SOC, (0, -1e-3, 1), strict=False) == Orthant(frozenset({1}))


def test_expose_rejects_tiny_ztilde_with_nonzero_zbar():
    p = ConeParams(1, 2, (0.5, 0.5))
    zt = np.array([1e-13, 1.0])
    z = np.concatenate([[np.sqrt(zt.prod()) / 0.5], zt])
    with pytest.raises(ZNotOnDualBoundary):
        expose_face(p, z)


def test_face_dims_and_json_round_trip():
    faces = [Trivial(), make_ray(SOC, [-1, 1, 1]), make_orthant(P23, [0]), Full()]
    assert [f.dim(P23 if isinstance(f, Orthant) else SOC) for f in faces] == [0, 1, 2, 3]
    for f in faces:
        p = P23 if isinstance(f, Orthant) else SOC
        assert face_from_json(p, face_to_json(f)) == f
    with pytest.raises(ValueError):
        make_orthant(P23, [0, 1, 2])
    with pytest.raises(ValueError):
        make_ray(SOC, [0, 1, 1])


@pytest.mark.parametrize("face, x, expected", [
    (RAY, (-2, 2, 2), True),
    (ORTH0, (0, 0, 5), True),
    (ORTH0, (0, 1, 0), False),
    (Trivial(), (0, 0, 0), True),
    (Full(), (1, 1, 1), True),
])
def test_face_membership_examples(face, x, expected):
    assert face_membership(SOC, face, x) is expected


@pytest.mark.parametrize("face, x, expected", [
    (RAY, (-1, 1, 1), (-1, 1, 1)),
    (RAY, (1, -1, -1), (0, 0, 0)),
    (ORTH0, (3, 2, -1), (0, 0, 0)),
    (Trivial(), (3, 2, -1), (0, 0, 0)),
    (Full(), (0, -1, 2), (0, 0, 2)),
])
def test_project_onto_face_examples(face, x, expected):
    np.testing.assert_allclose(project_onto_face(SOC, face, x), expected, atol=1e-15)


def test_idempotent_projection_examples():
    np.testing.assert_array_equal(idempotent_projection(SOC, Full()), np.eye(3))
    np.testing.assert_array_equal(idempotent_projection(SOC, ORTH0), np.diag([0, 0, 1.0]))
    P = idempotent_projection(SOC, RAY)
    np.testing.assert_allclose(P, np.outer([-1, 1, 1], [0, 0.5, 0.5]))
    np.testing.assert_allclose(P @ P, P, atol=1e-12)


def _random_face(p, seed):
    z = sample_dual_boundary(p, seed, 1)[0]
    if seed % 2:
        zt = np.random.default_rng(seed).uniform(0.1, 1, p.n)
        zt[np.random.default_rng(seed).permutation(p.n)[: max(1, p.n // 2)]] = 0.0
        z = np.concatenate([np.zeros(p.m), zt])
    return z, expose_face(p, z)


@given(cone_params(), seeds)
@settings(max_examples=60)
def test_idempotent_projection_maps_cone_to_face(p, seed):
    z, face = _random_face(p, seed)
    P = idempotent_projection(p, face)
    assert np.abs(P @ P - P).max() <= 1e-12 * max(1.0, np.abs(P).max())
    X = np.vstack([sample_boundary(p, seed, 500), sample_interior(p, seed, 500)])
    Y = X @ P.T
    assert all(face_membership(p, face, y, 1e-8) for y in Y)


@given(cone_params(), seeds)
@settings(max_examples=60)
def test_exposed_face_is_cone_cap_hyperplane(p, seed):
    z, face = _random_face(p, seed)
    # face points are in K and orthogonal to z
    G = np.random.default_rng(seed).standard_normal((200, p.dim))
    F = project_face_batch(p, face, G)
    assert np.all(np.abs(F @ z) <= 1e-10 * np.linalg.norm(z) * np.maximum(1.0, np.linalg.norm(F, axis=1)))
    assert all(membership(p, f, 1e-9).status is not Status.EXTERIOR for f in F)
    # cone points orthogonal to z lie in the face: the projection of the face
    # point plus a tangent move along the face stays on the face
    X = sample_boundary(p, seed, 500)
    near = np.abs(X @ z) <= 1e-12 * np.linalg.norm(X, axis=1) * np.linalg.norm(z)
    assert all(face_membership(p, face, x, 1e-6) for x in X[near])


@given(cone_params(), seeds)
@settings(max_examples=60)
def test_face_projection_idempotent_and_nonexpansive(p, seed):
    _, face = _random_face(p, seed)
    rng = np.random.default_rng(seed)
    X, Y = rng.standard_normal((100, p.dim)), rng.standard_normal((100, p.dim))
    PX, PY = project_face_batch(p, face, X), project_face_batch(p, face, Y)
    np.testing.assert_allclose(project_face_batch(p, face, PX), PX, atol=1e-12)
    assert np.all(np.linalg.norm(PX - PY, axis=1) <= np.linalg.norm(X - Y, axis=1) + 1e-12)
    np.testing.assert_allclose(dist_to_face(p, face, X), np.linalg.norm(X - PX, axis=1))


def test_lemma_geometry_examples():
    z = np.array([1.0, 0.5, 0.5])
    face = expose_face(SOC, z)
    # v already in {z}^perp
    v = np.array([0.0, 1.0, -1.0])
    g = lemma_geometry(SOC, z, face, v)
    assert g.dist_vw == 0.0
    np.testing.assert_array_equal(g.w, v)
    # the worked example
    v = np.array([1.0, 1.0, 1.0])
    g = lemma_geometry(SOC, z, face, v)
    w = v - (2.0 / 1.5) * z
    np.testing.assert_allclose(g.w, w)
    assert g.dist_vw == pytest.approx(2.0 / np.sqrt(1.5))
    closed = np.linalg.norm(v - (2 / 1.5) * z - (face.f @ v / (face.f @ face.f)) * face.f)
    assert g.dist_uw == pytest.approx(closed, rel=1e-12)
    # <f, v> < 0 gives u = 0
    v = np.array([2.0, 1.0, 0.0])
    assert face.f @ v < 0
    g = lemma_geometry(SOC, z, face, v)
    np.testing.assert_array_equal(g.u, np.zeros(3))
    with pytest.raises(VOnFace):
        lemma_geometry(SOC, z, face, face.f)


@given(cone_params(), seeds)
@settings(max_examples=40)
def test_lemma_geometry_closed_form_agrees(p, seed):
    z = sample_dual_boundary(p, seed, 1)[0]
    face = expose_face(p, z)
    for v in sample_boundary(p, seed + 1, 50):
        g = lemma_geometry(p, z, face, v)
        assert g.dist_vw == pytest.approx(abs(z @ v) / np.linalg.norm(z), rel=1e-12, abs=1e-15)
