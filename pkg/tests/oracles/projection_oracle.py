"""Brute-force projection onto the cone with m = 1, n = 2, used to freeze fixtures.

The oracle shares no code with the package. It searches the boundary
parametrization (s * x1**a * x2**(1-a), x1, x2), s = +-1, x_i = t_i**2, on a dense grid,
refines the best grid point with Nelder-Mead, and compares with the
candidates x itself (when inside) and the apex. When cvxpy is importable the
fixture script also solves the projection as a conic program and records
the agreement.

Run ``python tests/oracles/projection_oracle.py`` to regenerate
``tests/fixtures/projection_fixtures.json``.
"""
import json
import pathlib

import numpy as np
from scipy.optimize import minimize

FIXTURE = pathlib.Path(__file__).resolve().parents[1] / "fixtures" / "projection_fixtures.json"


def _inside(a, x):
    return x[1] >= 0 and x[2] >= 0 and abs(x[0]) <= x[1] ** a * x[2] ** (1 - a)


def _boundary(a, s, t):
    # squares keep the search smooth near the edges xtilde_i = 0
    x1, x2 = t[0] ** 2, t[1] ** 2
    return np.array([s * x1 ** a * x2 ** (1 - a), x1, x2])


def oracle_project(a, x, grid=401):
    x = np.asarray(x, dtype=float)
    if _inside(a, x):
        return x.copy()
    R = 2.0 * np.linalg.norm(x) + 1e-12
    g = np.linspace(0.0, np.sqrt(R), grid)
    X1, X2 = np.meshgrid(g ** 2, g ** 2, indexing="ij")
    G = X1 ** a * X2 ** (1 - a)
    best, best_val = np.zeros(3), float(x @ x)
    for s in (1.0, -1.0):
        d = (s * G - x[0]) ** 2 + (X1 - x[1]) ** 2 + (X2 - x[2]) ** 2
        i, j = np.unravel_index(np.argmin(d), d.shape)
        res = minimize(lambda t: float(np.sum((_boundary(a, s, t) - x) ** 2)),
                       [g[i], g[j]], method="Nelder-Mead",
                       options={"xatol": 1e-13, "fatol": 1e-28, "maxiter": 20000, "maxfev": 40000})
        v = _boundary(a, s, res.x)
        val = float(np.sum((v - x) ** 2))
        if val < best_val:
            best, best_val = v, val
    return best


def cvxpy_project(a, x):
    import cvxpy as cp

    v = cp.Variable(3)
    prob = cp.Problem(cp.Minimize(cp.sum_squares(v - x)), [cp.PowCone3D(v[1], v[2], v[0], a)])
    prob.solve(solver=cp.CLARABEL)
    return np.asarray(v.value)


def make_fixtures(count=50, seed=20240611):
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        a = float(rng.uniform(0.05, 0.95))
        x = rng.standard_normal(3)
        if k % 5 == 0:
            x[1:] = np.abs(x[1:])  # outside only through the xbar block
        x /= np.linalg.norm(x)
        p = oracle_project(a, x)
        rec = {"alpha": [a, 1.0 - a], "x": x.tolist(), "projection": p.tolist()}
        try:
            rec["cvxpy_gap"] = float(np.linalg.norm(cvxpy_project(a, x) - p))
        except Exception:  # cvxpy is optional
            pass
        out.append(rec)
    return out


if __name__ == "__main__":
    fx = make_fixtures()
    FIXTURE.parent.mkdir(parents=True, exist_ok=True)
    FIXTURE.write_text(json.dumps({"m": 1, "n": 2, "generator": "grid+nelder-mead", "cases": fx}, indent=1))
    gaps = [c["cvxpy_gap"] for c in fx if "cvxpy_gap" in c]
    print(f"wrote {len(fx)} cases; max gap to cvxpy {max(gaps) if gaps else 'n/a'}")
