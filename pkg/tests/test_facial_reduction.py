import numpy as np
import pytest
from hypothesis import given, settings
from scipy.linalg import null_space

from gpcone.cone import ConeParams, Status, dual_membership, membership, sample_dual_boundary, sample_interior
from gpcone.errors import DimensionMismatch, SearchExhausted, XOutsideBall
from gpcone.faces import Full, Orthant, Ray, Trivial, expose_face
from gpcone.facial_reduction import (
    AffineSet,
    Provenance,
    certify,
    error_bound_apply,
    error_bound_batch,
    find_exposing_vector,
    interior_feasible,
    slack,
    slack_supergradient,
    verify_exposing_vector,
)

from instances import ball_points, build_instances
from strategies import cone_params, seeds

SOC = ConeParams(1, 2, (0.5, 0.5))
P37 = ConeParams(1, 2, (0.3, 0.7))
Z_ORTH = np.array([0.0, 1.0, 0.0])
Z_RAY = np.array([1.0, 0.5, 0.5])


def _perp(z):
    return AffineSet(null_space(np.atleast_2d(z)).T, np.zeros(np.size(z)))


def test_affine_set_basics():
    A = AffineSet(np.array([[1.0, 0, 0], [0, 1, 0]]), (1.0, 2.0, 3.0))
    np.testing.assert_allclose(A.center, [0, 0, 3])
    np.testing.assert_allclose(A.project((5.0, -1.0, 0.0)), [[5, -1, 3]])
    assert A.dist((0.0, 0.0, 1.0))[0] == pytest.approx(2.0)
    assert A.contains((7.0, 7.0, 3.0)) and not A.contains((0.0, 0.0, 0.0))
    assert A.exposing_space().shape == (3, 0)
    with pytest.raises(ValueError):
        AffineSet(np.array([[1.0, 0, 0], [2.0, 0, 0]]), np.zeros(3))
    with pytest.raises(DimensionMismatch):
        AffineSet(np.eye(2), np.zeros(3))
    empty = AffineSet(np.zeros((0, 3)), (1.0, 2.0, 3.0))
    np.testing.assert_allclose(empty.project(np.zeros(3)), [[1, 2, 3]])


@given(cone_params(), seeds)
@settings(max_examples=50)
def test_slack_supergradient_inequality(p, seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((20, p.dim))
    X[:, p.m:] = np.abs(X[:, p.m:]) + 0.1
    for x in X:
        s, g = slack_supergradient(p, x)
        for y in X:
            assert slack(p, y) <= s + g @ (y - x) + 1e-9 * (1 + np.abs(y - x).sum())


def test_slack_sign_matches_membership():
    rng = np.random.default_rng(0)
    p = ConeParams(2, 3, (0.2, 0.3, 0.5))
    for x in rng.standard_normal((300, p.dim)):
        s = slack(p, x)
        st = membership(p, x).status
        assert (s > 1e-9) <= (st is Status.INTERIOR)
        assert (s < -1e-9) <= (st is Status.EXTERIOR)


def test_interior_feasible_examples():
    x = interior_feasible(P37, AffineSet(np.eye(3), np.zeros(3)))
    assert x is not None and membership(P37, x).status is Status.INTERIOR
    assert interior_feasible(P37, _perp(Z_ORTH)) is None
    a = sample_interior(P37, 3, 1)[0]
    x = interior_feasible(P37, AffineSet(np.zeros((0, 3)), a))
    np.testing.assert_allclose(x, a)


def test_verify_exposing_vector_examples():
    assert verify_exposing_vector(P37, _perp(Z_ORTH), Z_ORTH)
    B = null_space(Z_ORTH[None, :]).T
    assert not verify_exposing_vector(P37, AffineSet(B[:1], (0.0, 1.0, 0.0)), Z_ORTH)
    # -z is outside K*
    assert not verify_exposing_vector(P37, _perp(Z_ORTH), -Z_ORTH)


def test_find_exposing_vector_examples():
    z = find_exposing_vector(P37, _perp(Z_ORTH))
    assert z is not None and z[0] == 0.0 and z[2] == 0.0 and z[1] > 0
    z = find_exposing_vector(SOC, _perp(Z_RAY))
    assert z is not None
    np.testing.assert_allclose(z / np.linalg.norm(z), Z_RAY / np.linalg.norm(Z_RAY), atol=1e-12)


def test_certify_examples():
    c = certify(P37, AffineSet(np.eye(3), np.zeros(3)))
    assert c.d_pps == 0 and c.exponent == 1.0 and isinstance(c.face, Full)
    assert c.provenance is Provenance.INTERIOR_POINT
    c = certify(P37, _perp(Z_ORTH))
    assert c.d_pps == 1 and c.face == Orthant(frozenset({0}))
    assert c.exponent == pytest.approx(0.3, abs=1e-15)
    assert c.gamma.analytic_lower == pytest.approx(1 / (3 + np.sqrt(2)))
    assert not c.conservative
    c = certify(P37, AffineSet(np.zeros((0, 3)), np.zeros(3)))
    assert c.d_pps == 1 and isinstance(c.face, Trivial) and c.exponent == 1.0
    assert c.provenance is Provenance.ZERO_FACE


def test_certify_ray_face():
    c = certify(SOC, _perp(Z_RAY))
    assert c.d_pps == 1 and isinstance(c.face, Ray) and c.exponent == 0.5
    np.testing.assert_allclose(c.face.f / c.face.f[1], [-1, 1, 1], atol=1e-9)


def test_certificate_invariants_on_instances():
    for inst in build_instances():
        if inst.kind == "full":
            continue
        c = certify(inst.params, inst.affine, gamma_samples=4000)
        assert c.d_pps == 1
        z = c.exposing_z
        assert verify_exposing_vector(inst.params, inst.affine, z)
        if not isinstance(c.face, Trivial):
            assert dual_membership(inst.params, z).status is Status.BOUNDARY
            assert c.face == expose_face(inst.params, z)


def test_certify_search_exhausted():
    # L + a = {x : xtilde_1 = -1} misses K entirely; the search cannot succeed
    B = np.array([[1.0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(SearchExhausted):
        certify(ConeParams(1, 3, (0.2, 0.3, 0.5)), AffineSet(B, (0.0, -1.0, 0.0, 0.0)), budget=50)


def test_conservative_flag_for_relative_boundary_contact():
    # L = span((0, 0, 1, 0)) meets K only in the ray {xtilde_2 >= 0}, which lies on the
    # relative boundary of the face exposed by z = (0, 1, 0, 0)
    p = ConeParams(1, 3, (0.2, 0.3, 0.5))
    aff = AffineSet(np.array([[0.0, 0, 1, 0]]), np.zeros(4))
    c = certify(p, aff, z=(0.0, 1.0, 0.0, 0.0))
    assert c.provenance is Provenance.SUPPLIED_Z
    assert c.face == Orthant(frozenset({0}))
    assert c.conservative
    X = ball_points(4, 500, 1.0, 0)
    Y = np.zeros_like(X)
    Y[:, 2] = np.maximum(X[:, 2], 0)
    b, _, _ = error_bound_batch(p, c, aff, X)
    assert np.all(np.linalg.norm(X - Y, axis=1) <= b)


def test_certify_rejects_bad_z_and_is_deterministic():
    with pytest.raises(ValueError):
        certify(P37, _perp(Z_ORTH), z=(0.0, 0.0, 1.0))
    a = certify(SOC, _perp(Z_RAY), seed=5)
    b = certify(SOC, _perp(Z_RAY), seed=5)
    np.testing.assert_array_equal(a.exposing_z, b.exposing_z)
    assert (a.constant, a.hoffman, a.gamma) == (b.constant, b.hoffman, b.gamma)


def test_error_bound_apply_examples():
    aff = _perp(Z_ORTH)
    c = certify(P37, aff)
    e = error_bound_apply(P37, c, aff, (0.0, 0.0, 0.5))
    assert e.bound >= 0 and e.dist_affine == 0 and e.dist_cone == 0
    with pytest.raises(XOutsideBall):
        error_bound_apply(P37, c, aff, (0.0, 0.0, 2.0))
    # nondecreasing along a ray moving away from the feasible set
    t = np.linspace(0, 0.9, 40)
    X = np.outer(t, (0.3, 0.2, -0.6) / np.linalg.norm((0.3, 0.2, -0.6)))
    b, dA, dK = error_bound_batch(P37, c, aff, X)
    order = np.argsort(np.maximum(dA, dK))
    assert np.all(np.diff(b[order]) >= -1e-15)


@pytest.mark.parametrize("kind", ["ray", "orthant", "trivial"])
def test_error_bound_dominates_known_distance(kind):
    for inst in build_instances():
        if inst.kind != kind:
            continue
        c = certify(inst.params, inst.affine, gamma_samples=4000)
        X = ball_points(inst.params.dim, 300, 1.0, 9)
        b, _, _ = error_bound_batch(inst.params, c, inst.affine, X)
        assert np.all(inst.oracle(X) <= b + 1e-12), inst.name


@given(cone_params(), seeds)
@settings(max_examples=8, deadline=None)
def test_random_ray_instances(p, seed):
    z = sample_dual_boundary(p, seed, 1)[0]
    aff = _perp(z)
    c = certify(p, aff, gamma_samples=2000, seed=seed)
    assert c.d_pps == 1 and isinstance(c.face, Ray)
    np.testing.assert_allclose(c.exposing_z / np.linalg.norm(c.exposing_z), z / np.linalg.norm(z), atol=1e-9)
