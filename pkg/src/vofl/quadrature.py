"""Quadrature building blocks: Gauss-Legendre panels, graded maps, Wynn epsilon."""
from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def gauss_legendre(n: int):
    """Nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


def graded_map(rho, rho_s, h, L=0.0):
    """Monotone stretching u(rho) that is dense near rho_s and near 0.

    u = ln(rho/rho_s) + asinh(D/h) + [min(D, L) + L ln(1 + max(D - L, 0)/L)]/h
    with D = rho - rho_s. Equal steps in u give panels no wider than a fixed
    fraction of rho, of h close to rho_s, and of h over a stretch of length L.
    """
    D = rho - rho_s
    u = np.log(rho / rho_s) + np.arcsinh(D / h)
    if np.any(np.asarray(L) > 0):
        L = np.asarray(L, dtype=float)
        Ls = np.where(L > 0, L, 1.0)
        u = u + np.where(L > 0, (np.minimum(D, L) + L * np.log1p(np.maximum(D - L, 0.0) / Ls)) / h, 0.0)
    return u


def invert_map(u, rho_s, rho_e, h, L=0.0, iters=64):
    """Solve graded_map(rho) = u for rho in [rho_s, rho_e] by bisection in log rho."""
    lo = np.log(np.broadcast_to(rho_s, np.shape(u))).copy()
    hi = np.log(np.broadcast_to(rho_e, np.shape(u))).copy()
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        val = graded_map(np.exp(mid), rho_s, h, L)
        left = val < u
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)
    return np.exp(0.5 * (lo + hi))


def graded_panels(rho_s, rho_e, h, gamma, n_gl, L=0.0, min_panels=1):
    """Composite Gauss-Legendre rule on [rho_s, rho_e] for arrays of intervals.

    Panel edges are equispaced in graded_map with spacing at most gamma.
    Returns nodes and weights of shape (n, P * n_gl).
    """
    rho_s = np.atleast_1d(np.asarray(rho_s, dtype=float))
    rho_e = np.broadcast_to(np.asarray(rho_e, dtype=float), rho_s.shape)
    h = np.broadcast_to(np.asarray(h, dtype=float), rho_s.shape)
    L = np.broadcast_to(np.asarray(L, dtype=float), rho_s.shape)
    U = graded_map(rho_e, rho_s, h, L)
    P = max(min_panels, int(np.ceil(np.max(U) / gamma)))
    frac = np.linspace(0.0, 1.0, P + 1)
    uk = U[:, None] * frac[None, :]
    edges = invert_map(uk, rho_s[:, None], rho_e[:, None], h[:, None], L[:, None])
    edges[:, 0] = rho_s
    edges[:, -1] = rho_e
    t, w = gauss_legendre(n_gl)
    width = np.diff(edges, axis=1)
    nodes = edges[:, :-1, None] + width[:, :, None] * t[None, None, :]
    weights = width[:, :, None] * w[None, None, :]
    n = len(rho_s)
    return nodes.reshape(n, -1), weights.reshape(n, -1)


def wynn_epsilon(S):
    """Wynn's epsilon acceleration of partial sums along the last axis.

    Returns the last finite entry of the highest even column, elementwise.
    """
    S = np.asarray(S, dtype=float)
    n = S.shape[-1]
    e_km1 = np.zeros(S.shape[:-1] + (n + 1,))
    e_k = S.copy()
    best = S[..., -1].copy()
    for k in range(1, n):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            diff = e_k[..., 1:] - e_k[..., :-1]
            nxt = e_km1[..., 1:e_k.shape[-1]] + 1.0 / diff
        e_km1, e_k = e_k, nxt
        if k % 2 == 0:
            cand = e_k[..., -1]
            best = np.where(np.isfinite(cand), cand, best)
    return best
