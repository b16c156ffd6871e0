"""Error-bound certificates for the feasibility problem find x in (L + a) cap K.

Either L + a meets the interior of K, and a Lipschitz error bound holds, or
a nonzero z in K* cap L^perp cap {a}^perp exposes a face F containing the
feasible set. In the second case one facial reduction step suffices for
this cone because every proper face is polyhedral. The bound then composes
the one-step facial residual function of F with a Hoffman constant for the
polyhedral pair (F, L + a).

Interior points are searched by maximizing the slack
s(x) = max{t : x - t e in K}, e = (0, 1, ..., 1), over L + a by projected
supergradient ascent. s is concave, and s(x) > 0 exactly when x is interior.
Exposing vectors are searched in three phases: an interior point of K* in
S = L^perp cap {a}^perp, then an orthant-type z with zbar = 0 by linear
programming, then a ray-type z by smooth local maximization.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import null_space, orth
from scipy.optimize import linprog, minimize

from .cone import (
    DEFAULT_TOL,
    ConeParams,
    PointLike,
    Status,
    as_rows,
    as_vector,
    dual_membership,
    dual_transform,
    dual_transform_inverse,
    project_batch,
)
from .error_bounds import (
    GammaEstimate,
    exponent_for_face,
    frf_evaluate,
    FrfSpec,
    FaceKind,
    gamma_estimate,
    holder_constant,
)
from .errors import DimensionMismatch, SearchExhausted, XOutsideBall
from .faces import Face, Full, Orthant, Ray, Trivial, expose_face, project_face_batch

INTERIOR_SLACK = 1e-7


class AffineSet:
    """L + a with L spanned by the rows of ``basis``.

    The rows must be linearly independent (singular values above 1e-10 times
    the largest). ``basis`` may have zero rows, meaning L = {0}.
    """

    def __init__(self, basis, offset):
        a = np.asarray(offset, dtype=float).ravel()
        d = a.size
        B = np.asarray(basis, dtype=float)
        if B.size == 0:
            B = np.zeros((0, d))
        B = np.atleast_2d(B)
        if B.shape[1] != d:
            raise DimensionMismatch(f"basis rows have length {B.shape[1]}, offset has {d}")
        if B.shape[0]:
            sv = np.linalg.svd(B, compute_uv=False)
            if sv[-1] <= 1e-10 * sv[0]:
                raise ValueError("basis vectors are linearly dependent")
        self.basis = B
        self.offset = a
        self.dim = d
        self.Q = orth(B.T) if B.shape[0] else np.zeros((d, 0))  # orthonormal basis of L
        self.W = null_space(B) if B.shape[0] else np.eye(d)  # orthonormal basis of L^perp
        self.center = a - self.Q @ (self.Q.T @ a)  # min-norm point of L + a

    def project(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        D = X - self.offset
        return self.offset + (D @ self.Q) @ self.Q.T

    def dist(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.linalg.norm((X - self.offset) @ self.W, axis=1)

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(self.dist(x)[0] <= tol * max(1.0, float(np.linalg.norm(x))))

    def exposing_space(self) -> np.ndarray:
        """Orthonormal basis (columns) of S = L^perp cap {a}^perp."""
        W = self.W
        if W.shape[1] == 0:
            return W
        c = W.T @ self.offset
        if np.linalg.norm(c) <= 1e-14 * max(1.0, float(np.linalg.norm(self.offset))):
            return W
        return W @ null_space(c[None, :])

    def to_json(self) -> dict:
        return {"L_basis": self.basis.tolist(), "a": self.offset.tolist()}


def _check_dims(params: ConeParams, affine: AffineSet):
    if affine.dim != params.dim:
        raise DimensionMismatch(f"affine set lives in R^{affine.dim}, cone in R^{params.dim}")


# ---------------------------------------------------------------------------
# slack function


def slack(params: ConeParams, x: np.ndarray) -> float:
    """s(x) = max{t : x - t e in K} with e = (0, 1, ..., 1)."""
    m, a = params.m, params.alpha
    xt = x[m:]
    mu = float(xt.min())
    r = float(np.linalg.norm(x[:m]))
    if r == 0.0:
        return mu
    # solve sum_i alpha_i log(xt_i - mu + u) = log r for u in (0, r], t = mu - u
    base = xt - mu
    lo, hi = np.log(r) - 700.0, np.log(r)
    u = hi
    for _ in range(200):
        v = np.exp(u)
        with np.errstate(divide="ignore"):
            h = float(a @ np.log(base + v)) - np.log(r)
        dh = v * float(a @ (1.0 / (base + v)))
        if h < 0.0:
            lo = u
        else:
            hi = u
        if abs(h) <= 1e-15 or hi - lo <= 1e-15:
            break
        step = u - h / dh if dh > 0 else np.nan
        u = step if np.isfinite(step) and lo < step < hi else 0.5 * (lo + hi)
    return mu - float(np.exp(u))


def slack_supergradient(params: ConeParams, x: np.ndarray):
    """Return (s(x), g) with g a supergradient of s at x (<g, e> = 1)."""
    m, a = params.m, params.alpha
    s = slack(params, x)
    y = x.copy()
    y[m:] -= s
    yb, yt = y[:m], y[m:]
    nb = float(np.linalg.norm(yb))
    g = np.zeros_like(x)
    if nb == 0.0 or yt.min() <= 1e-14 * max(1.0, float(np.abs(yt).max())):
        g[m + int(np.argmin(yt))] = 1.0
        return s, g
    gy = float(np.exp(np.log(yt) @ a))
    g[:m] = -yb / nb
    g[m:] = gy * a / yt
    return s, g / float(g[m:].sum())


def _ascend(params: ConeParams, x0: np.ndarray, D: np.ndarray, radius: Optional[float],
            center: Optional[np.ndarray], budget: int):
    """Projected supergradient ascent of the slack over x0 + span(D) (columns
    orthonormal), optionally intersected with the ball B(center, radius)."""
    x = x0.copy()
    best_s, best_x = -np.inf, x.copy()
    step0 = radius if radius is not None else max(1.0, float(np.linalg.norm(x0)))
    for k in range(budget):
        s, g = slack_supergradient(params, x)
        if s > best_s:
            best_s, best_x = s, x.copy()
        pg = D @ (D.T @ g)
        npg = float(np.linalg.norm(pg))
        if npg <= 1e-15:
            break
        x = x + (step0 / np.sqrt(k + 1.0)) * pg / npg
        if radius is not None:
            off = x - center
            no = float(np.linalg.norm(off))
            if no > radius:
                x = center + off * (radius / no)
    return best_s, best_x


def _slice_problem(Q: np.ndarray, params: ConeParams):
    """For a subspace with orthonormal basis Q, the slice {x in span Q : <x, e> = 1}
    as (point, direction basis), or None when span Q is orthogonal to e."""
    e = np.zeros(params.dim)
    e[params.m:] = 1.0
    pe = Q @ (Q.T @ e)
    npe = float(pe @ pe)
    if npe <= 1e-24:
        return None
    x0 = pe / npe
    D = Q @ null_space((Q.T @ e)[None, :]) if Q.shape[1] > 1 else np.zeros((params.dim, 0))
    return x0, D


def interior_feasible(params: ConeParams, affine: AffineSet, budget: int = 500) -> Optional[np.ndarray]:
    """A point of (L + a) cap int K with slack above 1e-7 (relative), or None.

    When a lies in L the search runs over the slice {x in L : <x, e> = 1};
    otherwise over L + a intersected with the ball of radius
    10 max(1, ||c||) around the min-norm point c of L + a.
    """
    _check_dims(params, affine)
    c = affine.center
    Q = affine.Q
    if np.linalg.norm(c) <= 1e-14 * max(1.0, float(np.linalg.norm(affine.offset))):
        sl = _slice_problem(Q, params)
        if sl is None:
            return None
        x0, D = sl
        radius, center = None, None
    else:
        D = Q
        radius = 10.0 * max(1.0, float(np.linalg.norm(c)))
        center = c
        e = np.zeros(params.dim)
        e[params.m:] = 1.0
        x0 = c + Q @ (Q.T @ e) * (radius / max(1.0, float(np.linalg.norm(e))) / 2.0)
    s, x = _ascend(params, x0, D, radius, center, budget)
    if s > INTERIOR_SLACK * max(1.0, float(np.linalg.norm(x))):
        return x
    return None


def interior_radius(params: ConeParams, x: np.ndarray) -> float:
    """Largest r (up to bisection accuracy) with min xtilde >= r and
    gauge(xtilde - r) - ||xbar|| >= r. Then the ball B(x, r) lies in K."""
    m, a = params.m, params.alpha
    xt, nb = x[m:], float(np.linalg.norm(x[:m]))
    hi = float(xt.min())
    if hi <= 0.0:
        return 0.0

    def ok(r):
        y = xt - r
        return y.min() > 0.0 and float(np.exp(np.log(y) @ a)) - nb >= r

    lo = 0.0
    if not ok(0.0):
        return 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, hi):
            break
    return lo


def dual_interior_radius(params: ConeParams, z: np.ndarray) -> float:
    """A radius r with B(z, r) inside K*: alpha_min times the interior radius of
    the dual transform of z."""
    return float(params.alpha.min()) * interior_radius(params, dual_transform(params, z))


# ---------------------------------------------------------------------------
# exposing vectors


def verify_exposing_vector(params: ConeParams, affine: AffineSet, z: PointLike, tol: float = DEFAULT_TOL) -> bool:
    _check_dims(params, affine)
    z = as_vector(params, z)
    nz = float(np.linalg.norm(z))
    if nz == 0.0:
        return False
    if dual_membership(params, z, tol).status is Status.EXTERIOR:
        return False
    for b in affine.basis:
        if abs(float(b @ z)) > tol * nz * max(1.0, float(np.linalg.norm(b))):
            return False
    return abs(float(affine.offset @ z)) <= tol * nz * max(1.0, float(np.linalg.norm(affine.offset)))


def _phase_interior(params: ConeParams, S: np.ndarray, budget: int):
    """Look for z in S cap int K* through the dual transform T = diag(1, 1/alpha)."""
    if S.shape[1] == 0:
        return None, None
    T = np.concatenate([np.ones(params.m), 1.0 / params.alpha])
    V = orth(T[:, None] * S)
    sl = _slice_problem(V, params)
    if sl is None:
        return None, None
    x0, D = sl
    s, y = _ascend(params, x0, D, None, None, budget)
    if s > INTERIOR_SLACK * max(1.0, float(np.linalg.norm(y))):
        return dual_transform_inverse(params, y), y
    return None, y


def _phase_orthant(params: ConeParams, S: np.ndarray, tol: float):
    """Max-support ztilde >= 0 with (0, ztilde) in S, sum ztilde = 1, by LP."""
    m, n = params.m, params.n
    if S.shape[1] == 0:
        return None
    # (0, zt) in S  <=>  zt orthogonal to every direction of S^perp restricted to the tilde block
    Sp = _null_space_abs(S.T, 1e-12)  # columns span S^perp
    rows = Sp.T
    A_eq = np.vstack([rows[:, m:], np.ones((1, n))]) if rows.shape[0] else np.ones((1, n))
    b_eq = np.zeros(A_eq.shape[0])
    b_eq[-1] = 1.0
    sols = []
    for i in range(n):
        c = np.zeros(n)
        c[i] = -1.0
        res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * n, method="highs")
        if res.status == 0 and -res.fun > 1e-9:
            sols.append(res.x)
    if not sols:
        return None
    zt = np.mean(sols, axis=0)
    z = np.concatenate([np.zeros(m), zt])
    # clean up: project back onto S and clip roundoff
    z = S @ (S.T @ z)
    z[:m] = 0.0
    z[m:] = np.where(z[m:] > tol * z[m:].max(), z[m:], 0.0)
    return z


def _log_ratio(params: ConeParams, y: np.ndarray) -> float:
    """log gauge(ytilde) - log ||ybar||; zero exactly on the smooth boundary."""
    m = params.m
    yt = y[m:]
    nb = float(np.linalg.norm(y[:m]))
    if yt.min() <= 0.0 or nb == 0.0:
        return -np.inf
    return float(np.log(yt) @ params.alpha) - np.log(nb)


def _log_ratio_derivs(params: ConeParams, y: np.ndarray):
    """Gradient and Hessian of log gauge(ytilde) - log ||ybar||."""
    m, a = params.m, params.alpha
    yb, yt = y[:m], y[m:]
    nb2 = float(yb @ yb)
    grad = np.concatenate([-yb / nb2, a / yt])
    H = np.zeros((y.size, y.size))
    H[:m, :m] = -np.eye(m) / nb2 + 2.0 * np.outer(yb, yb) / nb2 ** 2
    H[m:, m:] = -np.diag(a / yt ** 2)
    return grad, H


def _polish_ray(params: ConeParams, V: np.ndarray, t: np.ndarray, steps: int = 30) -> np.ndarray:
    """Newton steps for a stationary point of the log ratio on the unit sphere of
    span V. The ratio is scale invariant, so the radial direction is fixed by
    the normalization."""
    t = t / np.linalg.norm(t)
    k = t.size
    for _ in range(steps):
        y = V @ t
        if not np.isfinite(_log_ratio(params, y)):
            break
        grad, H = _log_ratio_derivs(params, y)
        g = V.T @ grad
        P = np.eye(k) - np.outer(t, t)
        pg = P @ g
        if np.linalg.norm(pg) <= 1e-15 * max(1.0, float(np.linalg.norm(g))):
            break
        M = P @ (V.T @ H @ V) @ P + np.outer(t, t)
        try:
            step = np.linalg.solve(M, -pg)
        except np.linalg.LinAlgError:
            break
        cand = t + step
        cand /= np.linalg.norm(cand)
        if not np.isfinite(_log_ratio(params, V @ cand)):
            break
        t = cand
    return t


def _phase_ray(params: ConeParams, S: np.ndarray, starts: Sequence[np.ndarray], seed: int):
    """Maximize log gauge(ytilde) - log ||ybar|| over y in T(S); the maximum 0 is
    attained on the unique ray of T(S) cap K when one exists."""
    k = S.shape[1]
    T = np.concatenate([np.ones(params.m), 1.0 / params.alpha])
    V = orth(T[:, None] * S)
    if k == 0:
        return None
    if k == 1:
        cands = [V[:, 0], -V[:, 0]]
    else:
        rng = np.random.default_rng([seed, 7])
        inits = [V.T @ s for s in starts if s is not None]
        inits += [rng.standard_normal(V.shape[1]) for _ in range(8)]
        cands = []
        for t0 in inits:
            if not np.isfinite(_log_ratio(params, V @ t0)):
                # move into ytilde > 0 if possible by flipping sign
                t0 = -t0
            if not np.isfinite(_log_ratio(params, V @ t0)):
                continue

            def obj(t):
                y = V @ t
                val = _log_ratio(params, y)
                if not np.isfinite(val):
                    return 1e6, np.zeros_like(t)
                return -val, -(V.T @ _log_ratio_derivs(params, y)[0])

            res = minimize(obj, t0, jac=True, method="BFGS", options={"gtol": 1e-12, "maxiter": 2000})
            cands.append(V @ _polish_ray(params, V, res.x))
    best, best_val = None, -np.inf
    for y in cands:
        val = _log_ratio(params, y)
        if val > best_val:
            best, best_val = y, val
    if best is None or best_val < -1e-8:
        return None
    z = dual_transform_inverse(params, best)
    return z / np.linalg.norm(z)


def find_exposing_vector(params: ConeParams, affine: AffineSet, budget: int = 500, seed: int = 0,
                         tol: float = DEFAULT_TOL) -> Optional[np.ndarray]:
    """Nonzero z in K* cap L^perp cap {a}^perp, verified, or None.

    Phases, in order: an interior z of K* (exposes the zero face), an
    orthant-type z with zbar = 0 of maximal support, a ray-type z.
    """
    _check_dims(params, affine)
    S = affine.exposing_space()
    if S.shape[1] == 0:
        return None
    z, y = _phase_interior(params, S, budget)
    if z is not None and verify_exposing_vector(params, affine, z, tol):
        return z / np.linalg.norm(z)
    z = _phase_orthant(params, S, tol)
    if z is not None and verify_exposing_vector(params, affine, z, tol):
        return z / np.linalg.norm(z)
    z = _phase_ray(params, S, [y], seed)
    if z is not None and verify_exposing_vector(params, affine, z, tol):
        return z
    return None


# ---------------------------------------------------------------------------
# polyhedral step


def _null_space_abs(M: np.ndarray, tol: float) -> np.ndarray:
    """Null space with an absolute singular-value threshold."""
    k = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(k)
    _, sv, Vt = np.linalg.svd(M)
    rank = int(np.sum(sv > tol))
    return Vt[rank:].T


def face_generators(params: ConeParams, face: Face) -> np.ndarray:
    """Columns generating the face as a cone."""
    d = params.dim
    if isinstance(face, Ray):
        return face.f[:, None].copy()
    if isinstance(face, Orthant):
        free = params.m + face.free(params)
        G = np.zeros((d, free.size))
        G[free, np.arange(free.size)] = 1.0
        return G
    if isinstance(face, Trivial):
        return np.zeros((d, 0))
    raise ValueError("the full cone is not polyhedral")


class PolyhedralSlice:
    """Exact Euclidean projection onto {G c : c >= 0} cap (L + a).

    Enumerates supports of c. For each support the equality-constrained
    least-squares solution is an affine function of the input point, so the
    projection of many points is a few matrix products per support.
    """

    def __init__(self, G: np.ndarray, affine: AffineSet, tol: float = 1e-8):
        self.G = G
        d, k = G.shape
        W = affine.W
        M = W.T @ G
        b = W.T @ affine.offset
        self.pieces = []
        scale = max(1.0, float(np.linalg.norm(affine.offset)))
        for size in range(k + 1):
            for S in itertools.combinations(range(k), size):
                S = list(S)
                GS = G[:, S]
                MS = M[:, S]
                if size == 0:
                    if np.linalg.norm(b) <= tol * scale:
                        self.pieces.append((S, np.zeros(0), np.zeros((0, d))))
                    continue
                cp, *_ = np.linalg.lstsq(MS, b, rcond=None)
                if np.linalg.norm(MS @ cp - b) > tol * scale:
                    continue
                N = _null_space_abs(MS, tol)
                if N.shape[1] == 0:
                    self.pieces.append((S, cp, np.zeros((size, d))))
                    continue
                K = N @ np.linalg.pinv(GS @ N)  # c_S(y) = cp + K (y - GS cp)
                shift = cp - K @ (GS @ cp)
                self.pieces.append((S, shift, K))
        if not self.pieces:
            raise ValueError("the face does not meet L + a")

    def project(self, Y) -> np.ndarray:
        Y = np.atleast_2d(np.asarray(Y, dtype=float))
        best = np.full(Y.shape[0], np.inf)
        P = np.zeros_like(Y)
        for S, shift, K in self.pieces:
            C = shift[None, :] + Y @ K.T
            ok = np.all(C >= -1e-12, axis=1) if C.shape[1] else np.ones(Y.shape[0], dtype=bool)
            X = np.maximum(C, 0.0) @ self.G[:, S].T if S else np.zeros_like(Y)
            dist = np.linalg.norm(Y - X, axis=1)
            better = ok & (dist < best)
            best[better] = dist[better]
            P[better] = X[better]
        return P

    def dist(self, Y) -> np.ndarray:
        Y = np.atleast_2d(np.asarray(Y, dtype=float))
        return np.linalg.norm(Y - self.project(Y), axis=1)


def estimate_hoffman(params: ConeParams, face: Face, affine: AffineSet, eta: float, seed: int,
                     samples: int = 2000) -> float:
    """Sampled sup of dist(y, F cap A) / max(dist(y, F), dist(y, A)), times 2.

    Points are drawn uniformly in B(2 eta) and around sampled points of
    F cap A at scales 1e-4 .. 1 times eta.
    """
    G = face_generators(params, face)
    poly = PolyhedralSlice(G, affine)
    rng = np.random.default_rng([seed, 11])
    d = params.dim
    k1 = samples // 2
    Y1 = rng.standard_normal((k1, d))
    Y1 *= (2.0 * eta * rng.uniform(size=k1) ** (1.0 / d) / np.linalg.norm(Y1, axis=1))[:, None]
    base = poly.project(rng.standard_normal((samples - k1, d)) * eta)
    dirs = rng.standard_normal((samples - k1, d))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    Y2 = base + dirs * (eta * 10.0 ** rng.uniform(-4.0, 0.0, samples - k1))[:, None]
    Y = np.vstack([Y1, Y2])
    num = poly.dist(Y)
    dF = np.linalg.norm(Y - project_face_batch(params, face, Y), axis=1)
    dA = affine.dist(Y)
    den = np.maximum(dF, dA)
    ok = den > 1e-12 * np.maximum(1.0, np.linalg.norm(Y, axis=1))
    ratio = float(np.max(num[ok] / den[ok])) if np.any(ok) else 1.0
    return 2.0 * max(1.0, ratio)


def touches_relative_interior(params: ConeParams, face: Face, affine: AffineSet) -> bool:
    """Whether L + a meets the relative interior of a polyhedral face (LP)."""
    G = face_generators(params, face)
    k = G.shape[1]
    if k == 0:
        return True
    W = affine.W
    M = W.T @ G
    b = W.T @ affine.offset
    # maximize t subject to M c = b, c >= t, sum c <= big
    c = np.zeros(k + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-np.eye(k), np.ones((k, 1))])
    b_ub = np.zeros(k)
    A_eq = np.hstack([M, np.zeros((M.shape[0], 1))])
    bounds = [(0, 1e6)] * k + [(None, 1.0)]
    if np.linalg.norm(b) == 0.0:
        A_eq = np.vstack([A_eq, np.concatenate([np.ones(k), [0.0]])])
        b = np.concatenate([b, [1.0]])
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b, bounds=bounds, method="highs")
    return bool(res.status == 0 and -res.fun > 1e-9)


# ---------------------------------------------------------------------------
# certificates


class Provenance(enum.Enum):
    INTERIOR_POINT = "InteriorPoint"
    SUPPLIED_Z = "SuppliedZ"
    FOUND_Z = "FoundZ"
    ZERO_FACE = "ZeroFace"


@dataclass(frozen=True, eq=False)
class Certificate:
    d_pps: int
    face: Face
    exposing_z: Optional[np.ndarray]
    exponent: float
    constant: float
    eta: float
    provenance: Provenance
    seed: int
    interior_point: Optional[np.ndarray] = None
    interior_radius: Optional[float] = None
    gamma: Optional[GammaEstimate] = None
    hoffman: Optional[float] = None
    hoffman_method: Optional[str] = None
    dual_radius: Optional[float] = None
    conservative: bool = False
    notes: tuple = field(default_factory=tuple)


def certify(params: ConeParams, affine: AffineSet, eta: float = 1.0, budget: int = 500, seed: int = 0,
            z: Optional[PointLike] = None, gamma_samples: int = 20000, tol: float = DEFAULT_TOL) -> Certificate:
    """Decide the error-bound regime of (L + a) cap K and return a certificate.

    The instance is assumed feasible. A supplied ``z`` skips both searches
    and must pass :func:`verify_exposing_vector`. Raises
    :class:`SearchExhausted` when no interior point and no exposing vector
    are found.
    """
    _check_dims(params, affine)
    if eta <= 0:
        raise ValueError("eta must be positive")
    prov = Provenance.FOUND_Z
    if z is not None:
        z = as_vector(params, z)
        if not verify_exposing_vector(params, affine, z, tol):
            raise ValueError("the supplied z is not in K* cap L^perp cap {a}^perp")
        z = z / np.linalg.norm(z)
        prov = Provenance.SUPPLIED_Z
    else:
        x0 = interior_feasible(params, affine, budget)
        if x0 is not None:
            r = interior_radius(params, x0)
            c = affine.center
            kappa = 1.0 + 2.0 * (float(np.linalg.norm(x0)) + eta + 2.0 * float(np.linalg.norm(c))) / r
            return Certificate(0, Full(), None, 1.0, kappa, float(eta), Provenance.INTERIOR_POINT, int(seed),
                               interior_point=x0, interior_radius=r)
        z = find_exposing_vector(params, affine, budget, seed, tol)
        if z is None:
            raise SearchExhausted("no interior point and no exposing vector found within budget")
    if dual_membership(params, z, tol).status is Status.INTERIOR:
        rz = dual_interior_radius(params, z)
        const = 1.0 + 2.0 * float(np.linalg.norm(z)) / rz
        return Certificate(1, Trivial(), z, 1.0, const, float(eta), Provenance.ZERO_FACE, int(seed),
                           dual_radius=rz)
    face = expose_face(params, z, tol)
    expo = exponent_for_face(params, face)
    gamma = gamma_estimate(params, z, eta, gamma_samples, seed, tol, refine=4)
    const = holder_constant(expo, eta, gamma)
    hoff = estimate_hoffman(params, face, affine, eta, seed)
    conservative = not touches_relative_interior(params, face, affine)
    return Certificate(1, face, z, expo, const, float(eta), prov, int(seed), gamma=gamma, hoffman=hoff,
                       hoffman_method="sampled sup x2", conservative=conservative)


@dataclass(frozen=True)
class ErrorBound:
    bound: float
    dist_affine: float
    dist_cone: float


def error_bound_batch(params: ConeParams, cert: Certificate, affine: AffineSet, X) -> tuple:
    """Vectorized :func:`error_bound_apply`; returns arrays (bound, dist_affine, dist_cone)."""
    X = as_rows(params, X)
    nx = np.linalg.norm(X, axis=1)
    if np.any(nx > cert.eta * (1.0 + 1e-12)):
        raise XOutsideBall("x must lie in the ball of radius eta")
    dA = affine.dist(X)
    dK = np.linalg.norm(X - project_batch(params, X), axis=1)
    eps = np.maximum(dA, dK)
    if cert.d_pps == 0:
        Xh = affine.project(X)
        spread = np.linalg.norm(Xh - cert.interior_point, axis=1)
        bound = eps + 2.0 * eps * spread / cert.interior_radius
    elif isinstance(cert.face, Trivial):
        bound = eps * (1.0 + 2.0 * float(np.linalg.norm(cert.exposing_z)) / cert.dual_radius)
    else:
        nz = float(np.linalg.norm(cert.exposing_z))
        kind = FaceKind.RAY if isinstance(cert.face, Ray) else FaceKind.ORTHANT
        spec = FrfSpec(kind, cert.exponent, nz, cert.gamma)
        rho = frf_evaluate(spec, max(1.0, nz) * eps, nx)
        bound = cert.hoffman * np.maximum(rho, dA)
    return bound, dA, dK


def error_bound_apply(params: ConeParams, cert: Certificate, affine: AffineSet, x: PointLike) -> ErrorBound:
    """Bound on dist(x, (L + a) cap K) for ||x|| <= eta from the certificate."""
    b, dA, dK = error_bound_batch(params, cert, affine, as_vector(params, x)[None, :])
    return ErrorBound(float(b[0]), float(dA[0]), float(dK[0]))
