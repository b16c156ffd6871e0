"""Hoelder error bounds between the cone and the hyperplane {z}^perp.

For a boundary vector z of the dual cone exposing the face F, points q of
{z}^perp in the ball B(eta) satisfy

    dist(q, F) <= max(2 eta^(1-e), 2 / gamma_{z,eta}) * dist(q, K)^e

with e = 1/2 for ray faces and e = beta = sum_{i in I} alpha_i for orthant
faces. gamma_{z,eta} is the infimum of ||v - w||^e / ||u - w|| over boundary
points v of K in B(eta) off F, with w the projection of v onto {z}^perp and
u the projection of w onto F.

The ratio is homogeneous of degree e - 1 in v, so gamma_{z,t} equals
gamma_{z,eta} * (eta / t)^(1-e) exactly. Estimates are sampled on the sphere
of radius eta, and values at other radii follow from this scaling.

Also here: one-step facial residual functions (``frf_evaluate``), the
witness curves showing the exponents cannot be improved, and the two
pairing inequalities that drive the ray-face analysis.
"""
from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .cone import (
    DEFAULT_TOL,
    ConeParams,
    PointLike,
    _gauge_rows,
    as_rows,
    as_vector,
    project_batch,
)
from .errors import (
    EpsOutOfRange,
    InequalityViolated,
    NoAdmissibleSamples,
    OmegaNotOnGaugeSurface,
    QNotInHyperplane,
    QOutsideBall,
    ZBarNotZero,
    ZetaNotUnit,
)
from .faces import Face, Full, Orthant, Ray, Trivial, expose_face, project_face_batch

CHUNK = 512


class FaceKind(enum.Enum):
    RAY = "RayFace"
    ORTHANT = "OrthantFace"


def exponent_for_face(params: ConeParams, face: Face) -> float:
    """1/2 for a ray, sum of alpha over I for an orthant face, 1 otherwise."""
    if isinstance(face, Ray):
        return 0.5
    if isinstance(face, Orthant):
        return float(sum(params.alpha[i] for i in face.index_set))
    return 1.0


# ---------------------------------------------------------------------------
# gamma


@dataclass(frozen=True)
class GammaEstimate:
    eta: float
    sampled_value: float
    analytic_lower: Optional[float]
    sample_count: int
    seed: int
    exponent: float
    argmin: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    @property
    def value(self) -> float:
        """Conservative gamma at radius eta."""
        if self.analytic_lower is None:
            return self.sampled_value
        return min(self.sampled_value, self.analytic_lower)

    def at(self, t: float) -> float:
        """Conservative gamma at radius t.

        For t > eta the exact scaling (eta/t)^(1-e) is applied; for t <= eta
        the value at eta is kept, which is smaller than the exact one and so
        still valid while making the residual function monotone in t.
        """
        if t <= self.eta:
            return self.value
        return self.value * (self.eta / t) ** (1.0 - self.exponent)


def gamma_lower_bound_orthant(params: ConeParams, z: PointLike, eta: float) -> float:
    """Closed-form lower bound on gamma_{z,eta} for an orthant face."""
    z = as_vector(params, z)
    m, n = params.m, params.n
    if np.linalg.norm(z[:m]) > 0.0:
        raise ZBarNotZero("the orthant lower bound needs zbar = 0")
    if eta <= 0:
        raise ValueError("eta must be positive")
    face = expose_face(params, z)
    idx = sorted(face.index_set)
    beta = float(params.alpha[idx].sum())
    zmin = float(z[m:][idx].min())
    nz = float(np.linalg.norm(z))
    return zmin ** beta / (eta ** (1.0 - beta) * (n + 1 + np.sqrt(n)) * nz ** beta)


# sampled points closer than this (relative) to the face are skipped: their
# ratio is dominated by rounding in z, and the face limit is already reached
# to this accuracy by points just outside the band
FACE_GAP = 1e-7


def _on_face_rows(params: ConeParams, face: Face, V: np.ndarray, tol: float) -> np.ndarray:
    scale = np.maximum(1.0, np.linalg.norm(V, axis=1))
    P = project_face_batch(params, face, V)
    return np.linalg.norm(V - P, axis=1) <= tol * scale


def _expm1_minus_id(t: np.ndarray) -> np.ndarray:
    """exp(t) - 1 - t, accurate for small |t|."""
    small = np.abs(t) < 1e-2
    ts = t[small]
    out = np.expm1(t) - t
    out[small] = ts * ts * (0.5 + ts * (1 / 6 + ts * (1 / 24 + ts * (1 / 120 + ts / 720))))
    return out


def _smooth_pairing(params: ConeParams, z: np.ndarray, xt: np.ndarray, d: np.ndarray) -> np.ndarray:
    """<z, v> for v = (gauge(xt) d, xt), ||d|| = 1, without cancellation.

    z must lie exactly on the dual boundary (see :func:`_snap_to_dual_boundary`).
    With a_i = ztilde_i xt_i / alpha_i and G = prod a_i^alpha_i,
    <z, v> = (sum alpha_i a_i - G) + gauge(xt) ||zbar|| ||d - d0||^2 / 2
    with d0 = -zbar / ||zbar||. Near the ray face both terms are second
    order, and each is evaluated directly rather than as a difference of
    order-one numbers.
    """
    m, a = params.m, params.alpha
    zbar, zt = z[:m], z[m:]
    nzb = float(np.linalg.norm(zbar))
    g = _gauge_rows(a, xt)
    if nzb == 0.0:
        return xt @ zt
    la = np.log(zt * xt / a)
    mean = la @ a
    amgm = np.exp(mean) * (_expm1_minus_id(la - mean[:, None]) @ a)
    d0 = -zbar / nzb
    angle = 0.5 * nzb * np.sum((d - d0) ** 2, axis=1)
    return amgm + g * angle


def _snap_to_dual_boundary(params: ConeParams, z: np.ndarray) -> np.ndarray:
    """Rescale zbar so that ||zbar|| = gauge(ztilde / alpha) (no-op when zbar = 0)."""
    m = params.m
    nzb = float(np.linalg.norm(z[:m]))
    if nzb == 0.0:
        return z
    out = z.copy()
    out[:m] *= float(np.exp(np.log(z[m:] / params.alpha) @ params.alpha)) / nzb
    return out


def _gamma_chunk(params: ConeParams, z: np.ndarray, face: Face, rng: np.random.Generator, size: int):
    """Boundary points of K on the unit sphere and their pairings with z.

    Three groups: generic smooth boundary points, points approaching the
    face at scales down to 1e-7, and points of the polyhedral part of the
    boundary (xbar = 0, some xtilde_i = 0).
    """
    m, n, a = params.m, params.n, params.alpha
    k1 = size // 3
    k2 = size // 3
    k3 = size - k1 - k2
    xt1 = np.exp(rng.uniform(-4.0, 4.0, (k1, n)))
    d1 = rng.standard_normal((k1, m))
    delta = 10.0 ** rng.uniform(-7.0, 0.0, (k2, 1))
    if isinstance(face, Ray):
        ft = face.f[m:]
        fb = face.f[:m] / np.linalg.norm(face.f[:m])
        xt2 = ft * np.exp(delta * rng.standard_normal((k2, n)))
        d2 = fb + (10.0 ** rng.uniform(-7.0, 0.0, (k2, 1))) * rng.standard_normal((k2, m))
    else:
        xt2 = np.exp(rng.uniform(-2.0, 2.0, (k2, n)))
        if isinstance(face, Orthant):
            idx = sorted(face.index_set)
            xt2[:, idx] *= delta * np.exp(rng.uniform(-1.0, 1.0, (k2, len(idx))))
        d2 = rng.standard_normal((k2, m))
    xt3 = np.exp(rng.uniform(-3.0, 3.0, (k3, n)))
    zero = rng.uniform(size=(k3, n)) < 0.5
    zero[np.arange(k3), rng.integers(0, n, k3)] = True
    zero[np.arange(k3), rng.integers(0, n, k3)] = False  # keep the row nonzero
    xt3[zero] = 0.0
    d = np.vstack([d1, d2])
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    xt = np.vstack([xt1, xt2])
    V = np.vstack([
        np.hstack([d * _gauge_rows(a, xt)[:, None], xt]),
        np.hstack([np.zeros((k3, m)), xt3]),
    ])
    zv = np.concatenate([_smooth_pairing(params, z, xt, d), xt3 @ z[m:]])
    nv = np.linalg.norm(V, axis=1)
    return V / nv[:, None], zv / nv


def _ratios(params: ConeParams, z: np.ndarray, face: Face, V: np.ndarray, zv: np.ndarray,
            expo: float, tol: float):
    zz = float(z @ z)
    W = V - np.outer(zv / zz, z)
    U = project_face_batch(params, face, W)
    den = np.linalg.norm(U - W, axis=1)
    num = (np.abs(zv) / np.sqrt(zz)) ** expo
    ok = ~_on_face_rows(params, face, V, max(tol, FACE_GAP)) & (den > 0.0)
    r = np.full(V.shape[0], np.inf)
    r[ok] = num[ok] / den[ok]
    return r, ok


def _refine(params: ConeParams, z: np.ndarray, face: Face, expo: float, v0: np.ndarray, tol: float) -> float:
    """Nelder-Mead on the smooth boundary parametrization (log xtilde, direction)."""
    m = params.m
    if v0[m:].min() <= 0.0 or np.linalg.norm(v0[:m]) == 0.0:
        return np.inf

    def ratio(theta):
        # the ratio is scale invariant; pinning max xtilde to 1 avoids underflow
        lt = theta[m:] - theta[m:].max()
        if lt.min() < -600.0:
            return np.inf
        xt = np.exp(lt)[None, :]
        d = theta[None, :m]
        nd = np.linalg.norm(d)
        if nd == 0.0:
            return np.inf
        d = d / nd
        v = np.hstack([d * _gauge_rows(params.alpha, xt)[:, None], xt])
        nv = np.linalg.norm(v)
        zv = _smooth_pairing(params, z, xt, d) / nv
        r, _ = _ratios(params, z, face, v / nv, zv, expo, tol)
        return float(r[0])

    theta0 = np.concatenate([v0[:m] / np.linalg.norm(v0[:m]), np.log(v0[m:])])
    res = minimize(ratio, theta0, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400 * theta0.size})
    return float(min(res.fun, ratio(res.x)))


def gamma_estimate(params: ConeParams, z: PointLike, eta: float, samples: int, seed: int,
                   tol: float = DEFAULT_TOL, refine: int = 0) -> GammaEstimate:
    """Sampled infimum of the gamma ratio over boundary points of norm eta.

    Samples are drawn in chunks of 512 whose generators are seeded by
    (seed, chunk index), so without refinement the estimate for
    ``samples = N`` is the running minimum over a fixed stream and never
    increases with N. ``refine > 0`` additionally runs Nelder-Mead from the
    ``refine`` best smooth samples and keeps the smaller value.
    """
    z = as_vector(params, z)
    if eta <= 0:
        raise ValueError("eta must be positive")
    face = expose_face(params, z, tol)
    expo = exponent_for_face(params, face)
    z = _snap_to_dual_boundary(params, z)
    best = np.inf
    arg = None
    admissible = 0
    top_r, top_v = np.zeros(0), np.zeros((0, params.dim))
    for j, start in enumerate(range(0, samples, CHUNK)):
        size = min(CHUNK, samples - start)
        V, zv = _gamma_chunk(params, z, face, np.random.default_rng([seed, j]), size)
        r, ok = _ratios(params, z, face, V, zv, expo, tol)
        admissible += int(ok.sum())
        i = int(np.argmin(r))
        if r[i] < best:
            best, arg = float(r[i]), V[i] * eta
        if refine:
            smooth = np.isfinite(r) & np.all(V[:, params.m:] > 0.0, axis=1)
            top_r = np.concatenate([top_r, r[smooth]])
            top_v = np.vstack([top_v, V[smooth]])
            keep = np.argsort(top_r)[:refine]
            top_r, top_v = top_r[keep], top_v[keep]
    if admissible == 0:
        raise NoAdmissibleSamples("every sample landed on the face")
    for v0 in top_v:
        best = min(best, _refine(params, z, face, expo, v0, tol))
    analytic = None
    if isinstance(face, Orthant):
        analytic = gamma_lower_bound_orthant(params, z, eta)
    # samples live on the unit sphere; rescale to radius eta
    value = best * eta ** (expo - 1.0)
    return GammaEstimate(float(eta), float(value), analytic, admissible, int(seed), expo, arg)


def analytic_gamma(params: ConeParams, z: PointLike, eta: float) -> GammaEstimate:
    """A GammaEstimate carrying only the closed-form orthant lower bound."""
    z = as_vector(params, z)
    g = gamma_lower_bound_orthant(params, z, eta)
    face = expose_face(params, z)
    return GammaEstimate(float(eta), g, g, 0, 0, exponent_for_face(params, face))


# ---------------------------------------------------------------------------
# Hoelder bound on {z}^perp


@dataclass(frozen=True)
class HolderCheck:
    lhs: float
    rhs: float
    holds: bool


def holder_constant(expo: float, eta: float, gamma: GammaEstimate) -> float:
    """max(2 eta^(1-e), 2 / gamma_eta)."""
    return max(2.0 * eta ** (1.0 - expo), 2.0 / gamma.at(eta))


def holder_bound_batch(params: ConeParams, z: PointLike, Q, eta: float, gamma: GammaEstimate,
                       tol: float = 1e-8, plane_tol: float = DEFAULT_TOL):
    """Vectorized :func:`holder_bound_check`; returns arrays (lhs, rhs, holds)."""
    z = as_vector(params, z)
    Q = as_rows(params, Q)
    nz = float(np.linalg.norm(z))
    nq = np.linalg.norm(Q, axis=1)
    if np.any(np.abs(Q @ z) > plane_tol * nz * np.maximum(1.0, nq)):
        raise QNotInHyperplane("q must satisfy <z, q> = 0")
    if np.any(nq > eta * (1.0 + 1e-12)):
        raise QOutsideBall("q must lie in the ball of radius eta")
    face = expose_face(params, z)
    expo = exponent_for_face(params, face)
    lhs = np.linalg.norm(Q - project_face_batch(params, face, Q), axis=1)
    dk = np.linalg.norm(Q - project_batch(params, Q), axis=1)
    rhs = holder_constant(expo, eta, gamma) * dk ** expo
    return lhs, rhs, lhs <= rhs + tol


def holder_bound_check(params: ConeParams, z: PointLike, q: PointLike, eta: float,
                       gamma: GammaEstimate, tol: float = 1e-8) -> HolderCheck:
    lhs, rhs, ok = holder_bound_batch(params, z, as_vector(params, q)[None, :], eta, gamma, tol)
    return HolderCheck(float(lhs[0]), float(rhs[0]), bool(ok[0]))


# ---------------------------------------------------------------------------
# one-step facial residual functions


@dataclass(frozen=True)
class FrfSpec:
    kind: FaceKind
    exponent: float
    norm_z: float
    gamma: GammaEstimate

    def __post_init__(self):
        if self.kind is FaceKind.RAY and self.exponent != 0.5:
            raise ValueError("ray faces have exponent 1/2")
        if self.kind is FaceKind.ORTHANT and not 0.0 < self.exponent < 1.0:
            raise ValueError("orthant exponents lie in (0, 1)")


def frf_spec(params: ConeParams, z: PointLike, eta: float = 1.0, samples: int = 20000,
             seed: int = 0) -> FrfSpec:
    """Residual-function data for the face exposed by z, with sampled gamma."""
    z = as_vector(params, z)
    face = expose_face(params, z)
    kind = FaceKind.RAY if isinstance(face, Ray) else FaceKind.ORTHANT
    g = gamma_estimate(params, z, eta, samples, seed)
    return FrfSpec(kind, exponent_for_face(params, face), float(np.linalg.norm(z)), g)


def frf_evaluate(spec: FrfSpec, eps, t):
    """psi(eps, t) = e1 + max(2 t^(1-e), 2 / gamma_t) (eps + e1)^e, e1 = max(eps, eps/||z||).

    Accepts scalars or broadcastable arrays.
    """
    eps = np.asarray(eps, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(eps < 0) or np.any(t < 0):
        raise ValueError("eps and t must be nonnegative")
    e = spec.exponent
    e1 = np.maximum(eps, eps / spec.norm_z)
    g_eta = spec.gamma.value
    g_t = g_eta * np.minimum(1.0, (spec.gamma.eta / np.maximum(t, 1e-300)) ** (1.0 - e))
    coef = np.maximum(2.0 * t ** (1.0 - e), 2.0 / g_t)
    out = e1 + coef * (eps + e1) ** e
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# witness curves


class WitnessKind(enum.Enum):
    RAY = "RayWitness"
    ORTHANT = "OrthantWitness"


@dataclass(frozen=True)
class WitnessCurve:
    kind: WitnessKind
    epsilons: np.ndarray
    q_points: np.ndarray
    p_points: np.ndarray
    dist_to_cone: np.ndarray
    dist_to_face: np.ndarray
    ratio: np.ndarray
    gap: np.ndarray  # closed-form ||q - p||, an upper bound on dist_to_cone

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["epsilon", "dist_cone", "dist_face", "ratio"])
        for row in zip(self.epsilons, self.dist_to_cone, self.dist_to_face, self.ratio):
            wr.writerow([repr(float(v)) for v in row])
        return buf.getvalue()


DEFAULT_EPSILONS = tuple(10.0 ** -k for k in range(1, 7))


def _check_curve(params, z, Q, P, dist_face_closed, face):
    zn = float(np.linalg.norm(z))
    if np.any(np.abs(Q @ z) > 1e-10 * zn * np.maximum(1.0, np.linalg.norm(Q, axis=1))):
        raise ArithmeticError("a witness point left {z}^perp")
    dk = np.linalg.norm(Q - project_batch(params, Q), axis=1)
    df = np.linalg.norm(Q - project_face_batch(params, face, Q), axis=1)
    if np.any(np.abs(df - dist_face_closed) > 1e-6 * dist_face_closed):
        raise ArithmeticError("face distance disagrees with its closed form")
    return dk, df


def witness_curve_ray(params: ConeParams, z: PointLike, epsilons: Sequence[float] = DEFAULT_EPSILONS) -> WitnessCurve:
    """Points q_eps of {z}^perp approaching the ray face with
    dist(q_eps, K) = O(eps^2) and dist(q_eps, F) of order eps.

    q_eps keeps xbar = -zbar/||zbar||^2 and moves the first two xtilde entries
    to (alpha_1 - eps)/ztilde_1 and (alpha_2 + eps)/ztilde_2. p_eps has the
    same xtilde and xbar shrunk onto the boundary of K.
    """
    z = as_vector(params, z)
    m, a = params.m, params.alpha
    zbar, zt = z[:m], z[m:]
    nzb = float(np.linalg.norm(zbar))
    if nzb == 0.0:
        raise ZBarNotZero("the ray witness needs zbar != 0")
    eps = np.asarray(epsilons, dtype=float)
    if np.any(eps <= 0) or np.any(eps >= a[0]):
        raise EpsOutOfRange(f"every eps must lie in (0, alpha_1) = (0, {a[0]})")
    face = expose_face(params, z)
    f = face.f
    Q = np.tile(f, (eps.size, 1))
    Q[:, m] = (a[0] - eps) / zt[0]
    Q[:, m + 1] = (a[1] + eps) / zt[1]
    # prod factor minus one, without cancellation
    dprod = np.expm1(a[0] * np.log1p(-eps / a[0]) + a[1] * np.log1p(eps / a[1]))
    P = Q.copy()
    P[:, :m] = np.outer(1.0 + dprod, f[:m])
    gap = np.abs(dprod) / nzb
    # exact distance from q_eps to the ray
    dq = Q - f
    coef = (dq @ f) / float(f @ f)
    dfc = np.linalg.norm(dq - np.outer(coef, f), axis=1)
    dk, df = _check_curve(params, z, Q, P, dfc, face)
    return WitnessCurve(WitnessKind.RAY, eps, Q, P, dk, df, np.sqrt(dk) / df, gap)


def witness_curve_orthant(params: ConeParams, z: PointLike, u_dir: Sequence[float],
                          epsilons: Sequence[float] = DEFAULT_EPSILONS) -> WitnessCurve:
    """Points q_eps = (eps^beta u, xtilde_I = 0, rest 1) with
    dist(q_eps, F) = eps^beta and dist(q_eps, K) <= |I| eps."""
    z = as_vector(params, z)
    m = params.m
    if np.linalg.norm(z[:m]) > 0.0:
        raise ZBarNotZero("the orthant witness needs zbar = 0")
    u = np.asarray(u_dir, dtype=float).ravel()
    if u.size != m or abs(np.linalg.norm(u) - 1.0) > 1e-12:
        raise ValueError("u_dir must be a unit vector of length m")
    eps = np.asarray(epsilons, dtype=float)
    if np.any(eps <= 0) or np.any(eps >= 1):
        raise EpsOutOfRange("every eps must lie in (0, 1)")
    face = expose_face(params, z)
    idx = sorted(face.index_set)
    beta = exponent_for_face(params, face)
    Q = np.ones((eps.size, params.dim))
    Q[:, :m] = np.outer(eps ** beta, u)
    Q[:, [m + i for i in idx]] = 0.0
    P = Q.copy()
    P[:, [m + i for i in idx]] = eps[:, None]
    gap = np.linalg.norm(Q - P, axis=1)
    dk, df = _check_curve(params, z, Q, P, eps ** beta, face)
    if np.any(dk > len(idx) * eps * (1.0 + 1e-9)):
        raise ArithmeticError("dist(q, K) exceeds |I| eps")
    return WitnessCurve(WitnessKind.ORTHANT, eps, Q, P, dk, df, dk ** beta / df, gap)


# ---------------------------------------------------------------------------
# pairing inequalities


@dataclass(frozen=True, eq=False)
class LowerBoundKernel:
    """zeta < 0 with prod (-zeta_i/alpha_i)^alpha_i = 1, and zeta_tilde = -alpha/zeta.

    For omega > 0 with gauge(omega) = 1, <zeta, omega> <= -1 with equality only
    at omega = zeta_tilde, and -1 - <zeta, omega> >= C ||omega - zeta_tilde||^2
    once ||omega - zeta_tilde|| <= eps. ``fitted_C`` and ``fitted_eps`` are
    empirical values of C and eps.
    """

    alpha: np.ndarray
    zeta: np.ndarray
    zeta_tilde: np.ndarray
    fitted_C: float
    fitted_eps: float


def gauge_one_samples(alpha: np.ndarray, center: np.ndarray, rng: np.random.Generator, count: int,
                      spread: np.ndarray) -> np.ndarray:
    """Points center * exp(d - (alpha . d)) with d ~ N(0, spread^2); all have the
    same gauge as ``center``."""
    d = rng.standard_normal((count, alpha.size)) * np.reshape(spread, (-1, 1))
    d -= (d @ alpha)[:, None]
    return center * np.exp(d)


def make_kernel(alpha, zeta, seed: int = 0, samples: int = 1000, radius: float = 0.1) -> LowerBoundKernel:
    a = np.asarray(alpha, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    if zeta.shape != a.shape or np.any(zeta >= 0):
        raise ValueError("zeta must be a negative vector of length n")
    if abs(float(np.log(-zeta / a) @ a)) > 1e-10:
        raise ValueError("zeta must satisfy prod (-zeta_i/alpha_i)^alpha_i = 1")
    zt = -a / zeta
    rng = np.random.default_rng(seed)
    W = gauge_one_samples(a, zt, rng, samples, 10.0 ** rng.uniform(-4, 0, samples) * radius)
    dist = np.linalg.norm(W - zt, axis=1)
    W, dist = W[(dist <= radius) & (dist > 0)], dist[(dist <= radius) & (dist > 0)]
    C = float(np.min((-1.0 - W @ zeta) / dist ** 2))
    return LowerBoundKernel(a, zeta, zt, C, radius)


@dataclass(frozen=True)
class KernelCheck:
    pairing: float
    equality_case: bool
    distance: float  # ||omega - zeta_tilde|| or ||w + zeta||


def kernel_interior_check(kernel: LowerBoundKernel, omega, tol: float = 1e-10) -> KernelCheck:
    """Check <zeta, omega> <= -1 and the equality case for one gauge-one omega.

    ``equality_case`` is |<zeta, omega> + 1| <= tol. Consistency with omega =
    zeta_tilde is checked both ways: a point within tol / max(1, ||zeta||) of
    zeta_tilde must be an equality case, and an equality case must lie within
    the distance sqrt(4 tol / fitted_C) that quadratic growth allows (a
    factor 2 margin over the fitted constant).
    """
    w = np.asarray(omega, dtype=float)
    a = kernel.alpha
    if w.shape != a.shape or np.any(w <= 0):
        raise OmegaNotOnGaugeSurface("omega must be a positive vector of length n")
    if abs(float(np.log(w) @ a)) > 1e-10:
        raise OmegaNotOnGaugeSurface("omega must have gauge 1")
    pairing = float(kernel.zeta @ w)
    if pairing > -1.0 + tol:
        raise InequalityViolated(f"<zeta, omega> = {pairing!r} > -1")
    eq = abs(pairing + 1.0) <= tol
    dist = float(np.linalg.norm(w - kernel.zeta_tilde))
    if dist <= tol / max(1.0, float(np.linalg.norm(kernel.zeta))) and not eq:
        raise InequalityViolated("omega = zeta_tilde but the pairing is not -1")
    if eq and dist > np.sqrt(4.0 * tol / kernel.fitted_C):
        raise InequalityViolated("equality away from zeta_tilde")
    return KernelCheck(pairing, eq, dist)


def kernel_sphere_check(zeta, w, tol: float = 1e-10) -> KernelCheck:
    """Check <zeta, w> >= -1 for a unit zeta and ||w|| <= 1, with equality iff w = -zeta.

    Since ||w + zeta||^2 <= 2 (1 + <zeta, w>), an equality case must satisfy
    ||w + zeta|| <= sqrt(2 tol + 2e-12), and ||w + zeta|| <= tol forces
    |<zeta, w> + 1| <= tol.
    """
    zeta = np.asarray(zeta, dtype=float)
    w = np.asarray(w, dtype=float)
    if abs(np.linalg.norm(zeta) - 1.0) > 1e-12:
        raise ZetaNotUnit("zeta must be a unit vector")
    if np.linalg.norm(w) > 1.0 + 1e-12:
        raise ValueError("w must lie in the closed unit ball")
    pairing = float(zeta @ w)
    if pairing < -1.0 - 1e-12:
        raise InequalityViolated(f"<zeta, w> = {pairing!r} < -1")
    eq = abs(pairing + 1.0) <= tol
    dist = float(np.linalg.norm(w + zeta))
    if dist <= tol and not eq:
        raise InequalityViolated("w = -zeta but the pairing is not -1")
    if eq and dist > np.sqrt(2.0 * tol + 2e-12):
        raise InequalityViolated("equality away from -zeta")
    return KernelCheck(pairing, eq, dist)
