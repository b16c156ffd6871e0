"""Exposed faces of the generalized power cone.

Every nonzero boundary vector z of the dual cone exposes a face
K cap {z}^perp of one of two shapes:

* zbar != 0: the ray spanned by f = (-zbar/||zbar||^2, alpha / ztilde);
* zbar == 0: the polyhedral face {xbar = 0, xtilde_I = 0, xtilde >= 0}
  with I = {i : ztilde_i > 0}, which is an orthant of dimension n - |I|.

Together with the zero face and the cone itself these are all the faces.
Index sets are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Union

import numpy as np

from .cone import (
    DEFAULT_TOL,
    ConeParams,
    PointLike,
    Status,
    as_rows,
    as_vector,
    dual_membership,
    membership,
    project_batch,
)
from .errors import VOnFace, ZIsZero, ZNotOnDualBoundary

# ztilde entries below this fraction of ||z|| make the ray generator blow up
MIN_ZTILDE_REL = 1e-12


@dataclass(frozen=True)
class Trivial:
    kind = "trivial"

    def dim(self, params: ConeParams) -> int:
        return 0


@dataclass(frozen=True, eq=False)
class Ray:
    """The face {t f : t >= 0}."""

    f: np.ndarray
    kind = "ray"

    def dim(self, params: ConeParams) -> int:
        return 1

    def __eq__(self, other):
        return isinstance(other, Ray) and np.array_equal(self.f, other.f)

    def __hash__(self):
        return hash(self.f.tobytes())


@dataclass(frozen=True)
class Orthant:
    """The face {xbar = 0, xtilde_i = 0 for i in index_set, xtilde >= 0}."""

    index_set: FrozenSet[int]
    kind = "orthant"

    def dim(self, params: ConeParams) -> int:
        return params.n - len(self.index_set)

    def free(self, params: ConeParams) -> np.ndarray:
        """Indices j of xtilde that are free (not forced to zero)."""
        return np.array([j for j in range(params.n) if j not in self.index_set], dtype=int)


@dataclass(frozen=True)
class Full:
    kind = "full"

    def dim(self, params: ConeParams) -> int:
        return params.dim


Face = Union[Trivial, Ray, Orthant, Full]


def make_ray(params: ConeParams, f: PointLike) -> Ray:
    v = as_vector(params, f).astype(float).copy()
    if not np.any(v):
        raise ValueError("a ray generator must be nonzero")
    if membership(params, v).status is not Status.BOUNDARY:
        raise ValueError("a ray generator must lie on the boundary of the cone")
    v.setflags(write=False)
    return Ray(v)


def make_orthant(params: ConeParams, index_set) -> Orthant:
    idx = frozenset(int(i) for i in index_set)
    if not idx or len(idx) >= params.n or min(idx) < 0 or max(idx) >= params.n:
        raise ValueError(f"index set must be a nonempty proper subset of 0..{params.n - 1}")
    return Orthant(idx)


def face_to_json(face: Face) -> dict:
    if isinstance(face, Ray):
        return {"kind": "ray", "f": face.f.tolist()}
    if isinstance(face, Orthant):
        return {"kind": "orthant", "index_set": sorted(face.index_set)}
    return {"kind": face.kind}


def face_from_json(params: ConeParams, obj: dict) -> Face:
    kind = obj["kind"]
    if kind == "ray":
        return make_ray(params, obj["f"])
    if kind == "orthant":
        return make_orthant(params, obj["index_set"])
    if kind == "trivial":
        return Trivial()
    if kind == "full":
        return Full()
    raise ValueError(f"unknown face kind {kind!r}")


def expose_face(params: ConeParams, z: PointLike, tol: float = DEFAULT_TOL, strict: bool = True) -> Face:
    """Return the face of K exposed by a boundary vector z of K*.

    In lenient mode (``strict=False``) negative ztilde entries are set to
    zero before validation. Raises :class:`ZIsZero` for z = 0 and
    :class:`ZNotOnDualBoundary` when z is interior to or outside K*, or when
    zbar != 0 but some ztilde_i is below 1e-12 ||z||.
    """
    v = as_vector(params, z).astype(float).copy()
    m = params.m
    if not strict:
        v[m:] = np.maximum(v[m:], 0.0)
    nz = float(np.linalg.norm(v))
    if nz == 0.0:
        raise ZIsZero("the zero vector exposes the whole cone, not a proper face")
    report = dual_membership(params, v, tol)
    if report.status is not Status.BOUNDARY:
        raise ZNotOnDualBoundary(f"z is {report.status.value} to the dual cone (slack {report.slack:.3e})")
    zbar, zt = v[:m], v[m:]
    nzbar = float(np.linalg.norm(zbar))
    if nzbar > tol * max(1.0, nz):
        if zt.min() < MIN_ZTILDE_REL * nz:
            raise ZNotOnDualBoundary("zbar != 0 but some ztilde_i is numerically zero")
        f = np.concatenate([-zbar / nzbar ** 2, params.alpha / zt])
        f.setflags(write=False)
        return Ray(f)
    idx = frozenset(int(i) for i in np.flatnonzero(zt > tol * float(np.max(np.abs(zt)))))
    if len(idx) == params.n:
        raise ZNotOnDualBoundary("z is interior to the dual cone")
    return Orthant(idx)


def face_membership(params: ConeParams, face: Face, x: PointLike, tol: float = DEFAULT_TOL) -> bool:
    v = as_vector(params, x)
    m = params.m
    scale = max(1.0, float(np.linalg.norm(v)))
    if isinstance(face, Trivial):
        return bool(np.linalg.norm(v) <= tol)
    if isinstance(face, Full):
        return membership(params, v, tol).status is not Status.EXTERIOR
    if isinstance(face, Ray):
        f = face.f
        t = float(v @ f) / float(f @ f)
        return bool(t >= -tol and np.linalg.norm(v - max(t, 0.0) * f) <= tol * scale)
    xt = v[m:]
    idx = sorted(face.index_set)
    free = face.free(params)
    return bool(
        np.linalg.norm(v[:m]) <= tol * scale
        and np.all(np.abs(xt[idx]) <= tol * scale)
        and np.all(xt[free] >= -tol * scale)
    )


def project_face_batch(params: ConeParams, face: Face, X) -> np.ndarray:
    """Euclidean projection of the rows of ``X`` onto a face."""
    X = as_rows(params, X)
    if isinstance(face, Full):
        return project_batch(params, X)
    if isinstance(face, Trivial):
        return np.zeros_like(X)
    if isinstance(face, Ray):
        f = face.f
        t = np.maximum(X @ f, 0.0) / float(f @ f)
        return t[:, None] * f[None, :]
    P = np.zeros_like(X)
    free = params.m + face.free(params)
    P[:, free] = np.maximum(X[:, free], 0.0)
    return P


def project_onto_face(params: ConeParams, face: Face, x: PointLike) -> np.ndarray:
    return project_face_batch(params, face, as_vector(params, x)[None, :])[0]


def dist_to_face(params: ConeParams, face: Face, X) -> np.ndarray:
    A = as_rows(params, X)
    d = np.linalg.norm(A - project_face_batch(params, face, A), axis=1)
    return d if np.ndim(X) == 2 else float(d[0])


def idempotent_projection(params: ConeParams, face: Face) -> np.ndarray:
    """A matrix P with P @ P = P that maps K onto ``face``.

    For a ray with generator f = (fbar, alpha / ztilde) the functional is
    u = (0, ztilde) / <f, (0, ztilde)>. Since <f, (0, ztilde)> = sum alpha = 1
    up to scaling of ztilde, u = (0, alpha / ftilde) and P = f u^T.
    """
    d = params.dim
    if isinstance(face, Full):
        return np.eye(d)
    if isinstance(face, Trivial):
        return np.zeros((d, d))
    if isinstance(face, Orthant):
        sel = np.zeros(d)
        sel[params.m + face.free(params)] = 1.0
        return np.diag(sel)
    f = face.f
    u = np.concatenate([np.zeros(params.m), params.alpha / f[params.m:]])
    u /= float(f @ u)
    return np.outer(f, u)


@dataclass(frozen=True)
class FaceGeometry:
    v: np.ndarray
    w: np.ndarray
    u: np.ndarray
    dist_vw: float
    dist_uw: float


def lemma_geometry(params: ConeParams, z: PointLike, face: Ray, v: PointLike,
                   tol: float = DEFAULT_TOL) -> FaceGeometry:
    """Distances between a boundary point v, its projection w onto {z}^perp
    and the projection u of w onto the ray face exposed by z.

    ``dist_uw`` uses the closed form
    ||v - (<z,v>/||z||^2) z - (<f,v>/||f||^2) f|| when <f, v> >= 0 and
    ||w|| otherwise. It is checked against the direct value.
    """
    if not isinstance(face, Ray):
        raise TypeError("lemma_geometry is defined for ray faces")
    z = as_vector(params, z)
    v = as_vector(params, v)
    if face_membership(params, face, v, tol):
        raise VOnFace("v lies on the face, so the ratio is undefined")
    f = face.f
    zz = float(z @ z)
    if zz == 0.0:
        raise ZIsZero("z must be nonzero")
    w = v - (float(z @ v) / zz) * z
    u = project_onto_face(params, face, w)
    dist_vw = abs(float(z @ v)) / np.sqrt(zz)
    fv = float(f @ v)
    if fv >= 0.0:
        dist_uw = float(np.linalg.norm(w - (fv / float(f @ f)) * f))
    else:
        dist_uw = float(np.linalg.norm(w))
    direct = float(np.linalg.norm(u - w))
    if abs(direct - dist_uw) > 1e-10 * max(1.0, float(np.linalg.norm(v))):
        raise ArithmeticError(f"closed form {dist_uw!r} disagrees with direct {direct!r}")
    return FaceGeometry(v, w, u, dist_vw, dist_uw)
