"""Automorphisms and the Lie algebra of the generalized power cone.

Outside the second-order-cone case (n = 2, alpha = (1/2, 1/2)) every
automorphism is blockdiag(B, E) with E a generalized permutation matrix with
positive entries whose permutation l satisfies alpha_{l_k} = alpha_k, and
B = c Q with Q orthogonal and c = prod_k E_{k,l_k}^alpha_k. The Lie algebra
is {blockdiag(G, Diag(h)) : G + G^T = 2 (alpha^T h) I}, of dimension
n + m(m-1)/2. In the second-order-cone case the dimension is
(m^2 + 3m + 4)/2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import block_diag, expm

from .cone import ConeParams, Status, membership_batch, sample_boundary, sample_interior
from .errors import ConstraintViolated, DimensionMismatch, SocCaseUnsupported

ALPHA_TIE = 1e-12
NEAR_TIE = 1e-8
RANK_TOL = 1e-10


def alpha_classes(params: ConeParams) -> list:
    """Groups of indices with equal alpha (within 1e-12), in index order."""
    a = params.alpha
    classes: list = []
    for i in range(params.n):
        for c in classes:
            if abs(a[c[0]] - a[i]) <= ALPHA_TIE:
                c.append(i)
                break
        else:
            classes.append([i])
    return classes


def near_ties(params: ConeParams) -> list:
    """Index pairs whose alphas differ by more than 1e-12 but at most 1e-8.

    These are treated as distinct and reported so callers can see the call.
    """
    a = params.alpha
    return [(i, j) for i in range(params.n) for j in range(i + 1, params.n)
            if ALPHA_TIE < abs(a[i] - a[j]) <= NEAR_TIE]


@dataclass(frozen=True, eq=False)
class AutElement:
    """blockdiag(B, E) with E[k, perm[k]] = scales[k]."""

    B: np.ndarray
    perm: np.ndarray
    scales: np.ndarray
    scale_factor: float

    def matrix(self) -> np.ndarray:
        n = self.perm.size
        E = np.zeros((n, n))
        E[np.arange(n), self.perm] = self.scales
        return block_diag(self.B, E)

    def compose(self, other: "AutElement") -> "AutElement":
        """self after other."""
        # (E1 E2)[k, perm2[perm1[k]]] = scales1[k] * scales2[perm1[k]]
        perm = other.perm[self.perm]
        scales = self.scales * other.scales[self.perm]
        return AutElement(self.B @ other.B, perm, scales, self.scale_factor * other.scale_factor)

    def inverse(self) -> "AutElement":
        n = self.perm.size
        inv = np.empty(n, dtype=int)
        inv[self.perm] = np.arange(n)
        c = self.scale_factor
        return AutElement(self.B.T / c ** 2, inv, 1.0 / self.scales[inv], 1.0 / c)


@dataclass(frozen=True, eq=False)
class LieElement:
    """blockdiag(G, Diag(h)); requires G + G^T = 2 (alpha^T h) I."""

    G: np.ndarray
    h: np.ndarray

    def matrix(self) -> np.ndarray:
        return block_diag(self.G, np.diag(self.h))

    def residual(self, params: ConeParams) -> float:
        m = params.m
        return float(np.abs(self.G + self.G.T - 2.0 * float(params.alpha @ self.h) * np.eye(m)).max())


@dataclass(frozen=True)
class ConeClassification:
    irreducible: bool
    homogeneous: bool
    perfect: bool
    self_dual: bool
    aut_dim: int
    is_soc_case: bool
    self_dual_witness: tuple
    alpha_near_ties: tuple

    def to_json(self) -> dict:
        return {
            "irreducible": self.irreducible,
            "homogeneous": self.homogeneous,
            "perfect": self.perfect,
            "self_dual": self.self_dual,
            "aut_dim": self.aut_dim,
            "is_soc_case": self.is_soc_case,
            "self_dual_witness": [list(r) for r in self.self_dual_witness],
            "alpha_near_ties": [list(p) for p in self.alpha_near_ties],
        }


# ---------------------------------------------------------------------------
# membership in Aut(K)


def _structural_check(params: ConeParams, A: np.ndarray, tol: float) -> bool:
    m, n = params.m, params.n
    scale = max(1.0, float(np.abs(A).max()))
    if np.abs(A[:m, m:]).max(initial=0.0) > tol * scale or np.abs(A[m:, :m]).max(initial=0.0) > tol * scale:
        return False
    B, E = A[:m, :m], A[m:, m:]
    big = E > tol * scale
    if np.any(E < -tol * scale):
        return False
    if not (np.all(big.sum(axis=1) == 1) and np.all(big.sum(axis=0) == 1)):
        return False
    perm = np.argmax(big, axis=1)
    a = params.alpha
    if np.any(np.abs(a[perm] - a) > ALPHA_TIE):
        return False
    entries = E[np.arange(n), perm]
    c = float(np.exp(a @ np.log(entries)))
    return bool(np.abs(B.T @ B - c * c * np.eye(m)).max() <= tol * max(1.0, c * c))


def _sampled_check(params: ConeParams, A: np.ndarray, tol: float, count: int = 1000, seed: int = 0) -> bool:
    """Necessary conditions: invertible, boundary points map to boundary points."""
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] <= 1e-12 * sv[0]:
        return False
    V = sample_boundary(params, seed, count) @ A.T
    if not np.all(membership_batch(params, V, tol * max(1.0, sv[0])) == Status.BOUNDARY):
        return False
    W = sample_interior(params, seed, count // 10) @ A.T
    return bool(np.all(membership_batch(params, W, tol) == Status.INTERIOR))


def is_automorphism(params: ConeParams, A, tol: float = 1e-9) -> bool:
    """Whether A maps K onto itself.

    Outside the second-order-cone case this checks the exact block form with
    tolerances relative to max(1, max |A_ij|). In the second-order-cone case
    only a sampled necessary condition is checked.
    """
    A = np.asarray(A, dtype=float)
    d = params.dim
    if A.shape != (d, d):
        raise DimensionMismatch(f"expected a {d}x{d} matrix, got {A.shape}")
    if not np.all(np.isfinite(A)):
        return False
    if params.is_soc:
        return _sampled_check(params, A, tol)
    return _structural_check(params, A, tol)


def sample_automorphism(params: ConeParams, seed: int) -> AutElement:
    rng = np.random.default_rng(seed)
    n, m = params.n, params.m
    perm = np.arange(n)
    for c in alpha_classes(params):
        perm[c] = rng.permutation(c)
    scales = 10.0 ** rng.uniform(-1.0, 1.0, n)
    c = float(np.exp(params.alpha @ np.log(scales)))
    Q, R = np.linalg.qr(rng.standard_normal((m, m)))
    Q = Q * np.sign(np.diag(R))
    return AutElement(c * Q, perm, scales, c)


# ---------------------------------------------------------------------------
# Lie algebra


def lie_dim(params: ConeParams) -> int:
    m = params.m
    if params.is_soc:
        return (m * m + 3 * m + 4) // 2
    return params.n + m * (m - 1) // 2


def lie_basis(params: ConeParams) -> list:
    if params.is_soc:
        raise SocCaseUnsupported("the Lie algebra has a different form in the second-order-cone case")
    m, n = params.m, params.n
    out = []
    for i in range(n):
        h = np.zeros(n)
        h[i] = 1.0
        out.append(LieElement(params.alpha[i] * np.eye(m), h))
    for p in range(m):
        for q in range(p + 1, m):
            G = np.zeros((m, m))
            G[p, q], G[q, p] = 1.0, -1.0
            out.append(LieElement(G, np.zeros(n)))
    flat = np.array([np.concatenate([u.G.ravel(), u.h]) for u in out])
    if np.linalg.matrix_rank(flat, tol=RANK_TOL) != len(out):
        raise ArithmeticError("Lie basis is not linearly independent")
    return out


def lie_dim_numeric(params: ConeParams) -> int:
    """Nullspace dimension of G + G^T - 2 (alpha^T h) I = 0 in the unknowns (G, h)."""
    if params.is_soc:
        raise SocCaseUnsupported("the block-diagonal form does not hold in the second-order-cone case")
    m, n = params.m, params.n
    rows = []
    for p in range(m):
        for q in range(m):
            r = np.zeros(m * m + n)
            r[p * m + q] += 1.0
            r[q * m + p] += 1.0
            if p == q:
                r[m * m:] -= 2.0 * params.alpha
            rows.append(r)
    M = np.array(rows)
    sv = np.linalg.svd(M, compute_uv=False)
    return m * m + n - int(np.sum(sv > RANK_TOL * max(1.0, sv[0])))


def lyapunov_rank_numeric(params: ConeParams, seed: int = 0, samples: int | None = None) -> int:
    """dim of {U : <U x, s> = 0 for all x in K, s in K* with <x, s> = 0}.

    Uses sampled complementary pairs: smooth boundary points with their
    normals, and pairs supported on complementary orthant faces. Makes no
    assumption on the form of U, so it also covers the second-order-cone case.
    """
    m, n, d = params.m, params.n, params.dim
    a = params.alpha
    rng = np.random.default_rng([seed, 3])
    k = samples if samples is not None else 3 * d * d
    V = sample_boundary(params, seed, k)
    g = np.linalg.norm(V[:, :m], axis=1)
    Z = np.hstack([-V[:, :m] / g[:, None], g[:, None] * a / V[:, m:]])
    rows = [np.outer(z, v).ravel() for z, v in zip(Z, V)]
    for _ in range(k):
        mask = rng.uniform(size=n) < 0.5
        if mask.all() or not mask.any():
            mask[rng.integers(n)] = not mask[0] if n > 1 else True
        x = np.zeros(d)
        s = np.zeros(d)
        x[m:][~mask] = rng.uniform(0.1, 1.0, int((~mask).sum()))
        s[m:][mask] = rng.uniform(0.1, 1.0, int(mask.sum()))
        rows.append(np.outer(s, x).ravel())
    M = np.array(rows)
    sv = np.linalg.svd(M, compute_uv=False)
    return d * d - int(np.sum(sv > 1e-9 * sv[0]))


def exp_check(params: ConeParams, U: LieElement, ts: Sequence[float], tol: float = 1e-8,
              samples: int = 20, seed: int = 0) -> bool:
    """Whether exp(t U) is an automorphism for every t, and ||e^{tG} x|| = e^{t alpha^T h} ||x||
    on seeded x. Raises :class:`ConstraintViolated` if U is not in the Lie algebra."""
    scale = max(1.0, float(np.abs(U.G).max(initial=0.0)), float(np.abs(U.h).max(initial=0.0)))
    if U.residual(params) > 1e-10 * scale:
        raise ConstraintViolated("G + G^T != 2 (alpha^T h) I")
    M = U.matrix()
    m = params.m
    X = np.random.default_rng(seed).standard_normal((samples, m))
    ah = float(params.alpha @ U.h)
    for t in ts:
        A = expm(t * M)
        if not is_automorphism(params, A, tol):
            return False
        lhs = np.linalg.norm(X @ A[:m, :m].T, axis=1)
        rhs = np.exp(t * ah) * np.linalg.norm(X, axis=1)
        if np.any(np.abs(lhs - rhs) > tol * np.maximum(1.0, rhs)):
            return False
    return True


def random_lie_element(params: ConeParams, seed: int) -> LieElement:
    """G = (alpha^T h) I + S with S skew, h standard normal."""
    rng = np.random.default_rng(seed)
    m = params.m
    h = rng.standard_normal(params.n)
    S = rng.standard_normal((m, m))
    return LieElement(float(params.alpha @ h) * np.eye(m) + (S - S.T) / 2.0, h)


def classify(params: ConeParams) -> ConeClassification:
    soc = params.is_soc
    D = block_diag(np.eye(params.m), np.diag(params.alpha))
    return ConeClassification(
        irreducible=True,
        homogeneous=soc,
        perfect=soc or params.m >= 3,
        self_dual=True,
        aut_dim=lie_dim(params),
        is_soc_case=soc,
        self_dual_witness=tuple(tuple(float(v) for v in r) for r in D),
        alpha_near_ties=tuple(near_ties(params)),
    )
