"""The generalized power cone, its dual, membership tests and projection.

The cone with parameters ``(m, n, alpha)`` is

    K = {(xbar, xtilde) in R^m x R^n : ||xbar|| <= prod_i xtilde_i**alpha_i, xtilde >= 0}

and its dual is the diagonally scaled copy

    K* = {(zbar, ztilde) : ||zbar|| <= prod_i (ztilde_i / alpha_i)**alpha_i, ztilde >= 0}.

Points are plain 1-D float arrays of length ``m + n``; the first ``m``
entries are the Euclidean block ``xbar`` and the last ``n`` the
nonnegative block ``xtilde``. Collections of points are 2-D arrays with one
point per row.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, InvalidParams, NegativeCoordinate, NonConvergence

DEFAULT_TOL = 1e-9
SOC_TOL = 1e-12
FLAT_REL = 1e-17


@dataclass(frozen=True, eq=False)
class ConeParams:
    """Parameters ``(m, n, alpha)`` of a generalized power cone.

    ``alpha`` is normalized to sum to one. Inputs whose sum deviates from
    one by more than 1e-9 are rejected, as are entries outside (0, 1).
    """

    m: int
    n: int
    alpha: np.ndarray

    def __init__(self, m: int, n: int, alpha: Sequence[float]):
        if int(m) != m or m < 1:
            raise InvalidParams(f"m must be a positive integer, got {m}")
        if int(n) != n or n < 2:
            raise InvalidParams(f"n must be an integer >= 2, got {n}")
        a = np.array(alpha, dtype=float).ravel()
        if a.size != n:
            raise InvalidParams(f"alpha has {a.size} entries, expected n={n}")
        if not np.all(np.isfinite(a)) or np.any(a <= 0.0) or np.any(a >= 1.0):
            raise InvalidParams("every alpha_i must lie strictly inside (0, 1)")
        total = a.sum()
        if abs(total - 1.0) > 1e-9:
            raise InvalidParams(f"alpha must sum to 1 (got {float(total)!r})")
        a = a / total
        a.setflags(write=False)
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "alpha", a)

    @property
    def dim(self) -> int:
        return self.m + self.n

    @property
    def is_soc(self) -> bool:
        """True for n = 2 and alpha = (1/2, 1/2), a rotated second-order cone."""
        return bool(self.n == 2 and abs(self.alpha[0] - 0.5) <= SOC_TOL)

    def __eq__(self, other):
        if not isinstance(other, ConeParams):
            return NotImplemented
        return self.m == other.m and self.n == other.n and np.array_equal(self.alpha, other.alpha)

    def __hash__(self):
        return hash((self.m, self.n, self.alpha.tobytes()))

    def __repr__(self):
        return f"ConeParams(m={self.m}, n={self.n}, alpha={self.alpha.tolist()})"


class SplitPoint(NamedTuple):
    """A point of R^{m+n} kept as its two blocks."""

    xbar: np.ndarray
    xtilde: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.xbar, self.xtilde])


PointLike = Union[SplitPoint, Sequence[float], np.ndarray]


def as_vector(params: ConeParams, x: PointLike) -> np.ndarray:
    """Return ``x`` as a float vector of length ``m + n``, checking its size."""
    if isinstance(x, SplitPoint):
        xbar = np.asarray(x.xbar, dtype=float).ravel()
        xt = np.asarray(x.xtilde, dtype=float).ravel()
        if xbar.size != params.m or xt.size != params.n:
            raise DimensionMismatch(
                f"blocks have sizes ({xbar.size}, {xt.size}), expected ({params.m}, {params.n})"
            )
        return np.concatenate([xbar, xt])
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size != params.dim:
        raise DimensionMismatch(f"expected a vector of length {params.dim}, got shape {v.shape}")
    return v


def as_rows(params: ConeParams, X) -> np.ndarray:
    """Return ``X`` as a 2-D float array with ``m + n`` columns."""
    A = np.asarray(X, dtype=float)
    if A.ndim == 1:
        A = A[None, :]
    if A.ndim != 2 or A.shape[1] != params.dim:
        raise DimensionMismatch(f"expected rows of length {params.dim}, got shape {A.shape}")
    return A


def split(params: ConeParams, x: PointLike) -> SplitPoint:
    v = as_vector(params, x)
    return SplitPoint(v[: params.m].copy(), v[params.m:].copy())


def join(xbar, xtilde) -> np.ndarray:
    return np.concatenate([np.atleast_1d(np.asarray(xbar, dtype=float)),
                           np.atleast_1d(np.asarray(xtilde, dtype=float))])


# ---------------------------------------------------------------------------
# gauge and membership


def _gauge_rows(alpha: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """prod_i Y[:, i]**alpha_i for nonnegative rows, in the log domain."""
    Y = np.atleast_2d(Y)
    out = np.zeros(Y.shape[0])
    pos = np.all(Y > 0.0, axis=1)
    if np.any(pos):
        out[pos] = np.exp(np.log(Y[pos]) @ alpha)
    return out


def gauge(params: ConeParams, xtilde, tol: float = DEFAULT_TOL) -> float:
    """Return prod_i xtilde_i**alpha_i.

    Entries in [-tol * max(1, max|xtilde|), 0) are treated as zero; more
    negative entries raise :class:`NegativeCoordinate`.
    """
    y = np.asarray(xtilde, dtype=float).ravel()
    if y.size != params.n:
        raise DimensionMismatch(f"xtilde has {y.size} entries, expected {params.n}")
    scale = max(1.0, float(np.max(np.abs(y))) if y.size else 1.0)
    if np.any(y < -tol * scale):
        raise NegativeCoordinate(f"gauge needs xtilde >= 0, min entry is {y.min()!r}")
    y = np.maximum(y, 0.0)
    return float(_gauge_rows(params.alpha, y[None, :])[0])


class Status(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    EXTERIOR = "Exterior"


@dataclass(frozen=True)
class MembershipReport:
    status: Status
    slack: float
    min_coord: float


def _classify(slack: float, min_coord: float, tau: float) -> Status:
    if slack > tau and min_coord > tau:
        return Status.INTERIOR
    if slack >= -tau and min_coord >= -tau:
        return Status.BOUNDARY
    return Status.EXTERIOR


def membership(params: ConeParams, x: PointLike, tol: float = DEFAULT_TOL) -> MembershipReport:
    """Classify ``x`` as interior, boundary or exterior to K.

    ``slack`` is gauge(max(xtilde, 0)) - ||xbar||. The band uses the relative
    tolerance ``tol * max(1, ||x||)``.
    """
    v = as_vector(params, x)
    xbar, xt = v[: params.m], v[params.m:]
    slack = float(_gauge_rows(params.alpha, np.maximum(xt, 0.0)[None, :])[0] - np.linalg.norm(xbar))
    min_coord = float(xt.min())
    tau = tol * max(1.0, float(np.linalg.norm(v)))
    return MembershipReport(_classify(slack, min_coord, tau), slack, min_coord)


def membership_batch(params: ConeParams, X, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Row-wise :func:`membership`; returns an object array of :class:`Status`."""
    X = as_rows(params, X)
    m = params.m
    slack = _gauge_rows(params.alpha, np.maximum(X[:, m:], 0.0)) - np.linalg.norm(X[:, :m], axis=1)
    mc = X[:, m:].min(axis=1)
    tau = tol * np.maximum(1.0, np.linalg.norm(X, axis=1))
    out = np.full(X.shape[0], Status.EXTERIOR, dtype=object)
    out[(slack >= -tau) & (mc >= -tau)] = Status.BOUNDARY
    out[(slack > tau) & (mc > tau)] = Status.INTERIOR
    return out


def in_cone(params: ConeParams, x: PointLike, tol: float = DEFAULT_TOL) -> bool:
    return membership(params, x, tol).status is not Status.EXTERIOR


def dual_transform(params: ConeParams, z: PointLike) -> np.ndarray:
    """Map z to (zbar, ztilde / alpha); z is in K* iff the image is in K."""
    v = as_vector(params, z).copy()
    v[params.m:] /= params.alpha
    return v


def dual_transform_inverse(params: ConeParams, y: PointLike) -> np.ndarray:
    """Map y to (ybar, alpha * ytilde), the inverse of :func:`dual_transform`."""
    v = as_vector(params, y).copy()
    v[params.m:] *= params.alpha
    return v


def dual_membership(params: ConeParams, z: PointLike, tol: float = DEFAULT_TOL) -> MembershipReport:
    return membership(params, dual_transform(params, z), tol)


def in_dual_cone(params: ConeParams, z: PointLike, tol: float = DEFAULT_TOL) -> bool:
    return dual_membership(params, z, tol).status is not Status.EXTERIOR


# ---------------------------------------------------------------------------
# projection


def _pow2_row_scale(A: np.ndarray) -> np.ndarray:
    """Per-row power of two near max |a_ij|, as a column; dividing by it is exact
    and keeps squared norms clear of underflow and overflow."""
    amax = np.max(np.abs(A), axis=1) if A.shape[1] else np.zeros(A.shape[0])
    _, expo = np.frexp(np.where(amax > 0.0, amax, 1.0))
    return np.ldexp(1.0, expo)[:, None]


def _kkt_residual(alpha, log_lam, log_s, Y, log_v):
    """w(lambda), G(lambda) and v dG/dlambda for rows with s = r - lambda.

    lambda and s enter through their logarithms, and log w is formed
    directly, so entries of w far below the double range still give the
    right sign of G. v is the iteration variable (lambda or s).
    """
    lam = np.exp(log_lam)[:, None]
    s = np.exp(log_s)[:, None]
    la, ls, lv = log_lam[:, None], log_s[:, None], log_v[:, None]
    log_a = np.log(alpha)
    with np.errstate(divide="ignore", invalid="ignore", under="ignore", over="ignore"):
        c = 4.0 * lam * s * alpha
        q = np.sqrt(Y * Y + c)
        # the second branch is the cancellation-free form for y < 0
        w = np.where(Y >= 0.0, 0.5 * (Y + q), 0.5 * c / (q - Y))
        v_lam = np.exp(lv - la)  # v / lambda
        v_s = np.exp(lv - ls)  # v / s
        v = np.exp(lv)
        half_log_c = 0.5 * (np.log(4.0) + la + ls + log_a)
        logw_pos = np.log(0.5 * (Y + q))
        logw_neg = np.log(2.0) + la + ls + log_a - np.log(q - Y)
        logw = np.where(Y > 0.0, logw_pos, np.where(Y < 0.0, logw_neg, half_log_c - np.log(2.0)))
        d_pos = alpha * (s - lam) * v / (q * w)
        d_neg = v_lam - v_s - 2.0 * alpha * (s - lam) * v / (q * (q - Y))
        d_zero = 0.5 * (v_lam - v_s)
        dlogw = np.where(Y > 0.0, d_pos, np.where(Y < 0.0, d_neg, d_zero))
        G = logw @ alpha - log_s
        dGv = dlogw @ alpha + v_s[:, 0]
    return w, G, dGv


def _solve_multiplier(alpha, r, Y, max_iter):
    """Find lambda in (0, r) with sum_i alpha_i log w_i(lambda) = log(r - lambda).

    The iteration variable is log(lambda) when the root lies in (0, r/2] and
    log(r - lambda) otherwise, so roots very close to either end of the
    interval are resolved to full relative precision. Roots beyond
    r e^-690 of an end are reported at the bracket end, where the
    projection is already exact to rounding. Vectorized over rows.
    Returns (w, s, converged mask, residual) with s = r - lambda.
    """
    k = r.size
    half = 0.5 * r
    log_half = np.log(half)
    _, g_mid, _ = _kkt_residual(alpha, log_half, log_half, Y, log_half)
    flip = g_mid < 0.0  # root in (r/2, r): iterate on s
    sign = np.where(flip, -1.0, 1.0)
    lo = np.log(r) - 690.0
    hi = log_half.copy()
    u = hi - 1.0
    done = np.zeros(k, dtype=bool)
    res = np.full(k, np.inf)
    w = np.zeros_like(Y)
    s_out = np.zeros(k)
    conv_mid = g_mid == 0.0
    if np.any(conv_mid):
        lh = log_half[conv_mid]
        w[conv_mid], _, _ = _kkt_residual(alpha, lh, lh, Y[conv_mid], lh)
        s_out[conv_mid] = half[conv_mid]
        res[conv_mid] = 0.0
        done |= conv_mid
    for _ in range(max_iter):
        act = np.flatnonzero(~done)
        if act.size == 0:
            break
        ua, ra, fa = u[act], r[act], flip[act]
        log_other = np.log(ra) + np.log1p(-np.exp(ua) / ra)  # log(r - v)
        log_lam = np.where(fa, log_other, ua)
        log_s = np.where(fa, ua, log_other)
        wa, G, dGv = _kkt_residual(alpha, log_lam, log_s, Y[act], ua)
        H = sign[act] * G
        dH = dGv  # dG/du along the oriented variable
        res[act] = np.abs(G)
        w[act] = wa
        s_out[act] = np.exp(log_s)
        neg = H < 0.0
        lo_a = np.where(neg, ua, lo[act])
        hi_a = np.where(neg, hi[act], ua)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = ua - H / dH
        bad = ~np.isfinite(step) | (step <= lo_a) | (step >= hi_a)
        new = np.where(bad, 0.5 * (lo_a + hi_a), step)
        conv = (np.abs(G) <= 1e-14) | (hi_a - lo_a <= 1e-15 * np.maximum(1.0, np.abs(ua)))
        lo[act], hi[act] = lo_a, hi_a
        u[act] = np.where(conv, ua, new)
        done[act[conv]] = True
    return w, s_out, done, res


def project_batch(params: ConeParams, X, max_iter: int = 200) -> np.ndarray:
    """Project every row of ``X`` onto K.

    Cases: points of K are returned unchanged, points of the polar cone -K*
    map to zero, points with xbar = 0 have xtilde clamped at zero, and the
    remaining points are handled through the rotational symmetry of the xbar
    block. For those, the KKT system reduces to one scalar equation in the
    multiplier, solved by bracketed Newton with a bisection fallback.

    Raises :class:`NonConvergence` if some row fails to converge in
    ``max_iter`` iterations.
    """
    X0 = as_rows(params, X)
    m, alpha = params.m, params.alpha
    row_scale = _pow2_row_scale(X0)
    X = X0 / row_scale
    P = np.array(X, dtype=float, copy=True)
    xbar, y = X[:, :m], X[:, m:]
    r = np.linalg.norm(xbar, axis=1)
    in_k = np.all(y >= 0.0, axis=1) & (r <= _gauge_rows(alpha, np.maximum(y, 0.0)))
    in_polar = np.all(y <= 0.0, axis=1) & (r <= _gauge_rows(alpha, np.maximum(-y, 0.0) / alpha))
    in_polar &= ~in_k
    P[in_polar] = 0.0
    # when ||xbar|| is below roundoff of ||x||, (0, max(xtilde, 0)) is within
    # ||xbar|| of the projection by nonexpansiveness, so treat the row as flat
    flat = (r <= FLAT_REL * np.linalg.norm(X, axis=1)) & ~in_k & ~in_polar
    P[flat, :m] = 0.0
    P[flat, m:] = np.maximum(y[flat], 0.0)
    rest = ~(in_k | in_polar | flat)
    if np.any(rest):
        scale = np.linalg.norm(X[rest], axis=1)
        rr = r[rest] / scale
        Y = y[rest] / scale[:, None]
        w, s_lam, ok, res = _solve_multiplier(alpha, rr, Y, max_iter)
        if not np.all(ok):
            bad = np.flatnonzero(~ok)[0]
            raise NonConvergence(
                f"projection did not converge in {max_iter} iterations",
                best=np.concatenate([xbar[rest][bad] * s_lam[bad] / rr[bad], w[bad]]) * scale[bad],
                residual=float(res[bad]),
            )
        # at a root gauge(w) = r - lambda; the min keeps bracket-end rows inside K
        s = np.minimum(_gauge_rows(alpha, w), s_lam)
        # s is measured in the rescaled units, as is rr, so the ratio is scale free
        P[rest, :m] = xbar[rest] * (s / rr)[:, None]
        P[rest, m:] = w * scale[:, None]
    return P * row_scale


def project_onto_cone(params: ConeParams, x: PointLike, max_iter: int = 200) -> np.ndarray:
    """Euclidean projection of a single point onto K."""
    return project_batch(params, as_vector(params, x)[None, :], max_iter)[0]


def dist_to_cone(params: ConeParams, X) -> np.ndarray:
    """Distances from the rows of ``X`` (or a single point) to K."""
    A = as_rows(params, X)
    d = np.linalg.norm(A - project_batch(params, A), axis=1)
    return d if np.ndim(X) == 2 else float(d[0])


# ---------------------------------------------------------------------------
# sampling


def sample_boundary(params: ConeParams, seed: int, count: int, radius: float = 1.0,
                    log_range: float = 3.0) -> np.ndarray:
    """Seeded points of the boundary of K inside the ball of given radius.

    xtilde is log-uniform on [e^-log_range, e^log_range]^n, the xbar
    direction is uniform on the sphere and ||xbar|| = gauge(xtilde). Each
    point is then scaled to norm ``radius * u`` with u uniform on (0, 1].
    Returns an array of shape (count, m + n).
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if radius <= 0:
        raise ValueError("radius must be positive")
    rng = np.random.default_rng(seed)
    if count == 0:
        return np.zeros((0, params.dim))
    xt = np.exp(rng.uniform(-log_range, log_range, size=(count, params.n)))
    d = rng.standard_normal((count, params.m))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    X = np.hstack([d * _gauge_rows(params.alpha, xt)[:, None], xt])
    u = 1.0 - rng.uniform(size=count)
    X *= (radius * u / np.linalg.norm(X, axis=1))[:, None]
    return X


def sample_interior(params: ConeParams, seed: int, count: int, radius: float = 1.0) -> np.ndarray:
    """Seeded points of K strictly inside, within the ball of given radius."""
    rng = np.random.default_rng(seed)
    xt = np.exp(rng.uniform(-3.0, 3.0, size=(count, params.n)))
    d = rng.standard_normal((count, params.m))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    frac = rng.uniform(0.0, 1.0, size=count) ** 0.5 * 0.999
    X = np.hstack([d * (frac * _gauge_rows(params.alpha, xt))[:, None], xt])
    X *= (radius * (1.0 - rng.uniform(size=count)) / np.linalg.norm(X, axis=1))[:, None]
    return X


def sample_dual_boundary(params: ConeParams, seed: int, count: int, radius: float = 1.0) -> np.ndarray:
    """Seeded points on the boundary of K*, obtained through the dual transform."""
    Y = sample_boundary(params, seed, count, radius)
    Y[:, params.m:] *= params.alpha
    return Y


@dataclass(frozen=True)
class MoreauCheck:
    """Outcome of :func:`moreau_check` for one point."""

    polar_ok: bool
    orthogonality: float
    primal_ok: bool

    @property
    def ok(self) -> bool:
        return self.polar_ok and self.primal_ok


def moreau_check(params: ConeParams, X, P, tol: float = 1e-8) -> list:
    """Check the Moreau conditions for candidate projections ``P`` of ``X``.

    With r = x - p, the checks are: -r lies within distance
    ``tol * sqrt(n) * ||x||`` of K* (certified by shifting the ztilde block by
    ``tol * ||x||`` and testing exact membership), |<r, p>| <= tol * ||x||^2,
    and p lies in K after the same shift. The shifted form is used because
    the residual's ztilde block can carry no correct digits when it is tiny,
    and a tiny entry raised to a small power alpha_i is far from tiny.
    """
    X, P = as_rows(params, X), as_rows(params, P)
    sc = _pow2_row_scale(np.hstack([X, P]))
    X, P = X / sc, P / sc
    m, a = params.m, params.alpha
    nx = np.linalg.norm(X, axis=1)
    shift = tol * np.maximum(nx, 1e-300)
    Z = P - X
    zt = Z[:, m:] + shift[:, None]
    polar = np.all(zt >= 0.0, axis=1) & (
        np.linalg.norm(Z[:, :m], axis=1) <= _gauge_rows(a, np.maximum(zt, 0.0) / a))
    pt = P[:, m:] + shift[:, None]
    primal = np.all(pt >= 0.0, axis=1) & (
        np.linalg.norm(P[:, :m], axis=1) <= _gauge_rows(a, np.maximum(pt, 0.0)))
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        orth = np.abs(np.einsum("ij,ij->i", X - P, P)) / (nx * nx)
    orth = np.where(nx > 0.0, orth, 0.0)
    return [MoreauCheck(bool(pk), float(o), bool(pr)) for pk, o, pr in zip(polar, orth, primal)]
