"""Distances to known feasible sets (L + a) cap K, independent of the package.

Feasible sets of the constructed instances are one of: a point, a ray, a
coordinate orthant slice {x : x_J = 0, x_free >= 0, x_fixed = c}, or a
general set handled by a conic program through cvxpy.
"""
import warnings

import numpy as np
from scipy.linalg import null_space

SOLVER_OPTS = dict(tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12, tol_ktratio=1e-10, max_iter=500)


def dist_point(X, p):
    return np.linalg.norm(X - p, axis=1)


def dist_ray(X, f):
    t = np.maximum(X @ f, 0.0) / float(f @ f)
    return np.linalg.norm(X - t[:, None] * f, axis=1)


def dist_orthant_slice(X, free, fixed):
    """{x : x_j >= 0 for j in free, x_j = fixed[j] for j in fixed, all other x_j = 0}."""
    Y = np.zeros_like(X)
    Y[:, free] = np.maximum(X[:, free], 0.0)
    for j, v in fixed.items():
        Y[:, j] = v
    return np.linalg.norm(X - Y, axis=1)


class ConicOracle:
    """min ||x - y|| over y in (L + a) cap K with K = {||ybar|| <= prod ytilde^alpha}.

    Solved with CLARABEL at tight tolerances. The norm objective (rather than
    its square) keeps the answer accurate to about 1e-9 when x is on or near
    the feasible set, where the squared objective stalls near 1e-5.
    """

    def __init__(self, m, alpha, basis, offset):
        import cvxpy as cp

        alpha = np.asarray(alpha, dtype=float)
        d = m + alpha.size
        basis = np.asarray(basis, dtype=float).reshape(-1, d)
        W = null_space(basis) if basis.shape[0] else np.eye(d)
        self._x = cp.Parameter(d)
        y = cp.Variable(d)
        t = cp.Variable()
        if alpha.size == 2:  # PowConeND rejects a two-term product
            pow_con = cp.PowCone3D(y[m], y[m + 1], t, alpha[0])
        else:
            pow_con = cp.PowConeND(y[m:], t, alpha)
        cons = [pow_con, cp.SOC(t, y[:m])]
        if W.shape[1]:
            cons.append(W.T @ y == W.T @ np.asarray(offset, dtype=float))
        self._y = y
        self._prob = cp.Problem(cp.Minimize(cp.norm(y - self._x)), cons)

    def dist(self, X):
        out = np.empty(len(X))
        for i, x in enumerate(X):
            self._x.value = x
            with warnings.catch_warnings():
                # tight tolerances often end as "optimal_inaccurate" at ~1e-10
                warnings.simplefilter("ignore", UserWarning)
                self._prob.solve(solver="CLARABEL", **SOLVER_OPTS)
            out[i] = np.linalg.norm(x - self._y.value)
        return out
