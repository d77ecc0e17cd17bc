import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from scipy.optimize import linprog

from fle.geometry import FeasibleRegion

settings.register_profile(
    "fle", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("fle")

# filled in by test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


def random_region(rng, n, m, m_I, one_sided_prob=0.3, width=(0.1, 1.0)):
    """Random nonempty region around a random point (returned as ``xbar``)."""
    xbar = rng.uniform(-1, 1, n)
    A = rng.standard_normal((m, n)) if m else None
    b = A @ xbar if m else None
    A_I = rng.standard_normal((m_I, n)) if m_I else None
    lower = upper = None
    if m_I:
        ax = A_I @ xbar
        lower = ax - rng.uniform(*width, m_I)
        upper = ax + rng.uniform(*width, m_I)
        drop = rng.uniform(size=m_I)
        lower[drop < one_sided_prob / 2] = -np.inf
        upper[(drop >= one_sided_prob / 2) & (drop < one_sided_prob)] = np.inf
    return FeasibleRegion.build(n, A, b, A_I, lower, upper, xbar=xbar)


def brute_force_projection(region, z, tol=1e-9):
    """Projection by enumerating every choice of active one-sided constraints.

    For each candidate set the equality-constrained least-distance problem
    is solved in closed form with a pseudo-inverse; the closest feasible
    candidate is the projection.
    """
    z = np.asarray(z, dtype=float)
    rows = []
    for i in range(region.m_I):
        opts = [None]
        if np.isfinite(region.upper[i]):
            opts.append((region.A_I[i], region.upper[i]))
        if np.isfinite(region.lower[i]):
            opts.append((region.A_I[i], region.lower[i]))
        rows.append(opts)
    best, best_d = None, np.inf
    for choice in itertools.product(*rows):
        M = [region.A[j] for j in range(region.m)]
        r = [region.b[j] for j in range(region.m)]
        for item in choice:
            if item is not None:
                M.append(item[0])
                r.append(item[1])
        if M:
            M, r = np.array(M), np.array(r)
            y = z - np.linalg.pinv(M) @ (M @ z - r)
            if np.linalg.norm(M @ y - r) > 1e-9 * (1 + np.linalg.norm(r)):
                continue
        else:
            y = z.copy()
        if region.violation(y) > tol:
            continue
        d = np.linalg.norm(y - z)
        if d < best_d:
            best, best_d = y, d
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def polar_samples(normals, rng, count):
    """``count`` random elements of the polar cone via the Moreau decomposition.

    The projection of Gaussian vectors onto cone(normals) is found by
    enumerating generator subsets (least squares with a sign check), which
    avoids trusting an iterative NNLS solver on degenerate generator sets.
    """
    V = rng.standard_normal((count, normals.shape[1]))
    best = np.zeros_like(V)
    best_d = np.linalg.norm(V, axis=1)
    k = normals.shape[0]
    for size in range(1, k + 1):
        for subset in itertools.combinations(range(k), size):
            G = normals[list(subset)].T
            mu = np.linalg.lstsq(G, V.T, rcond=None)[0]
            P = (G @ np.maximum(mu, 0.0)).T
            d = np.linalg.norm(V - P, axis=1)
            better = np.all(mu >= -1e-12, axis=0) & (d < best_d)
            best[better], best_d[better] = P[better], d[better]
    W = V - best
    # guard the oracle itself: the residuals must lie in the polar cone
    scale = np.maximum(1.0, np.linalg.norm(V, axis=1))
    assert np.all(W @ normals.T <= 1e-9 * scale[:, None])
    return W


def polar_sample(normals, rng):
    return polar_samples(normals, rng, 1)[0]


def completeness_residual(cone, v):
    """Residual of the LP writing v as lineality combo + nonnegative pointed combo."""
    L, P = cone.lineality, cone.pointed
    d = v.size
    nl, npnt = L.shape[0], P.shape[0]
    # variables: lam (free), mu >= 0, s_plus, s_minus >= 0 ; minimise sum(s)
    Aeq = np.hstack([L.T.reshape(d, nl), P.T.reshape(d, npnt), np.eye(d), -np.eye(d)])
    cost = np.concatenate([np.zeros(nl + npnt), np.ones(2 * d)])
    bounds = [(None, None)] * nl + [(0, None)] * (npnt + 2 * d)
    res = linprog(cost, A_eq=Aeq, b_eq=v, bounds=bounds, method="highs")
    assert res.status == 0
    z = res.x
    return float(np.linalg.norm(L.T.reshape(d, nl) @ z[:nl]
                                + P.T.reshape(d, npnt) @ z[nl:nl + npnt] - v))


def random_normals(rng, d, k):
    N = rng.standard_normal((k, d))
    # occasionally include opposite pairs and duplicates to exercise lineality
    if k >= 2 and rng.uniform() < 0.3:
        N[1] = -N[0]
    if k >= 3 and rng.uniform() < 0.2:
        N[2] = 2.0 * N[0]
    return N
