"""Integrals over the complement of the domain.

    E(x; c) = int_{Omega^c} phi(|y - c|) / |x - y|^(d + alpha) dy
    D(x)    = int_{Omega^c} g(y) / |x - y|^(d + alpha) dy

for interior x. Two independent routes are provided: single-point adaptive
integration (the reference) and batched rules shared by many targets (used
in assembly).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .benchmarks import as_points
from .errors import DomainError, QuadratureError, TailBoundError
from .geometry import EXTERIOR, INTERIOR, Domain
from .kernels import RbfKernel, kernel_value
from .quadrature import gauss_legendre, graded_panels, wynn_epsilon


@dataclass(frozen=True)
class QuadratureControl:
    """Tolerances and discretization knobs for complement integrals.

    truncation_radius: radius about the domain centre beyond which the
        integrand is replaced by a tail bound; None picks the smallest radius
        whose bound is below abs_tol.
    panel_ratio: width of graded panels relative to the local length scale.
    cell_ratio: in two dimensions, exterior cell size relative to its
        distance from the domain (plus the target clearance).
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdivisions: int = 400
    truncation_radius: float | None = None
    panel_ratio: float = 0.4
    nodes_per_panel: int = 10
    cell_ratio: float = 1.0
    cell_nodes: int = 8
    wynn_chunks: int = 40
    chunk_block: float = 4e6

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")

    def refined(self, factor: float = 0.5) -> "QuadratureControl":
        return QuadratureControl(
            rel_tol=self.rel_tol * factor, abs_tol=self.abs_tol * factor,
            max_subdivisions=self.max_subdivisions * 2,
            truncation_radius=self.truncation_radius,
            panel_ratio=self.panel_ratio * factor, nodes_per_panel=self.nodes_per_panel + 4,
            cell_ratio=self.cell_ratio * factor, cell_nodes=self.cell_nodes + 2,
            wynn_chunks=self.wynn_chunks + 10, chunk_block=self.chunk_block)


DEFAULT_QUAD = QuadratureControl()


@dataclass(frozen=True)
class Data:
    """Exterior data g.

    func takes points of shape (n, d). constant short-circuits to exact
    radial integrals. period marks a one-dimensional oscillatory tail that
    is summed half-period by half-period and accelerated. scale is the
    length over which g varies (panel sizing).
    """

    func: Callable | None = None
    constant: float | None = None
    period: float | None = None
    scale: float = 1.0

    @property
    def is_zero(self) -> bool:
        return self.func is None and (self.constant is None or self.constant == 0.0)

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        if self.func is None:
            return np.full(len(y), 0.0 if self.constant is None else self.constant)
        return np.asarray(self.func(y), dtype=float)


ZERO = Data()


def as_data(g) -> Data:
    if g is None:
        return ZERO
    if isinstance(g, Data):
        return g
    if isinstance(g, (int, float)):
        return Data(constant=float(g))
    if callable(g):
        return Data(func=g)
    raise TypeError(f"cannot use {g!r} as exterior data")


# ---------------------------------------------------------------- tail bounds


def _tail_bound(k: RbfKernel | None, d: int, alpha: float, R: float, reach: float):
    """Upper bound on the integral over |y - centre| > R.

    reach bounds |x - centre| and |c - centre|, so with r = R - reach both
    |x - y| and |y - c| exceed s = |y - centre| - reach >= r. The measure is
    two half-lines in 1-D and at most 4 pi s ds in 2-D (for R >= 2 reach),
    leaving geo * int_r^inf K(s) s^(-1-alpha) ds with K bounding the kernel
    (or |g| <= 1 when k is None).
    """
    r = R - reach
    if r <= 0 or (d == 2 and R < 2 * reach):
        return math.inf
    geo = 2.0 if d == 1 else 4.0 * math.pi
    if k is None:
        return geo * r ** (-alpha) / alpha
    eps = k.epsilon
    if k.family == "gimq":
        p = 2.0 * k.beta + alpha
        return geo * eps ** (-2.0 * k.beta) * r ** (-p) / p
    if k.family == "gaussian":
        return geo * math.exp(-(eps * r) ** 2) * r ** (-2.0 - alpha) / (2.0 * eps ** 2)
    # |J_nu(t) / t^nu| <= t^(-(m-1)/2) for t >= 1
    q = (k.m - 1) / 2.0
    return geo * eps ** (-q) * r ** (-q - alpha) / (q + alpha)


def truncation_radius(dom: Domain, k: RbfKernel | None, alpha_min: float,
                      ctl: QuadratureControl) -> float:
    """Radius about the domain centre whose tail bound is below abs_tol."""
    reach = dom.diameter / 2.0
    if ctl.truncation_radius is not None:
        R = ctl.truncation_radius
        if R <= dom.diameter:
            raise ValueError("truncation_radius must exceed the domain diameter")
        bound = _tail_bound(k, dom.d, alpha_min, R, reach)
        if bound > ctl.abs_tol:
            raise TailBoundError(
                f"tail bound {bound:.3g} exceeds abs_tol {ctl.abs_tol:g} at radius {R:g}")
        return R
    R = 2.0 * dom.diameter + 1.0
    cap = 1e15 * max(dom.diameter, 1.0)
    while _tail_bound(k, dom.d, alpha_min, R, reach) > ctl.abs_tol:
        R *= 1.5
        if R > cap:
            raise TailBoundError("no truncation radius meets abs_tol; the integrand "
                                 "decays too slowly")
    return R


def _oscillatory(k: RbfKernel | None) -> bool:
    return k is not None and k.family == "bessel"


def _check_targets(dom, x):
    cls = dom.classify(x)
    if np.any(cls != INTERIOR):
        i = int(np.argmax(cls != INTERIOR))
        raise DomainError(f"target {np.asarray(x)[i]} is not strictly interior")


def _alpha_list(alphas, n):
    if isinstance(alphas, (list, tuple)):
        return [np.broadcast_to(np.asarray(a, dtype=float), (n,)) for a in alphas], False
    return [np.broadcast_to(np.asarray(alphas, dtype=float), (n,))], True


# ---------------------------------------------------------------- 1-D batched


class ExteriorRule1D:
    """Graded composite Gauss rule on the two half-lines, for many targets.

    Nodes depend on the targets and length scale but not on alpha, so one
    set of kernel values serves several exponent fields. With a period the
    far field is summed half-period by half-period and accelerated with the
    epsilon algorithm.
    """

    def __init__(self, dom: Domain, x, scale: float, R: float | None,
                 ctl: QuadratureControl, period: float | None = None):
        self.x = as_points(x, 1)[:, 0]
        _check_targets(dom, self.x)
        self.ctl = ctl
        self.sides = []
        for sigma in (1.0, -1.0):
            rho_a = dom.hi[0] - self.x if sigma > 0 else self.x - dom.lo[0]
            if period is None:
                rho_e = np.full_like(rho_a, R)
                rho, w = graded_panels(rho_a, rho_e, scale, ctl.panel_ratio, ctl.nodes_per_panel)
                self.sides.append((sigma, rho, w, None, None))
                continue
            hp = period / 2.0
            edge = dom.hi[0] if sigma > 0 else -dom.lo[0]
            start = hp * math.ceil((edge + dom.diameter + 4.0 * period) / hp)
            rho_e = start - sigma * self.x
            rho, w = graded_panels(rho_a, rho_e, scale, ctl.panel_ratio,
                                   ctl.nodes_per_panel, L=rho_e - rho_a)
            t, gw = gauss_legendre(12)
            left = rho_e[:, None] + hp * np.arange(ctl.wynn_chunks)[None, :]
            cn = left[:, :, None] + hp * t
            cw = np.broadcast_to(hp * gw, cn.shape)
            self.sides.append((sigma, rho, w, cn, cw))

    def _apply(self, values, alphas, n_out):
        """values(xblock, y) -> (nb, M, n_out); returns one (n, n_out) per alpha."""
        outs = [np.zeros((len(self.x), n_out)) for _ in alphas]
        for sigma, rho, w, cn, cw in self.sides:
            n, M = rho.shape
            block = max(1, int(self.ctl.chunk_block // max(1, M * n_out)))
            for s in range(0, n, block):
                sl = slice(s, s + block)
                xb = self.x[sl]
                vals = values(xb, xb[:, None] + sigma * rho[sl])
                lr = np.log(rho[sl])
                for out, al in zip(outs, alphas):
                    wt = w[sl] * np.exp(-(1.0 + al[sl, None]) * lr)
                    out[sl] += np.einsum("nm,nmc->nc", wt, vals)
            if cn is None:
                continue
            n, K, G = cn.shape
            block = max(1, int(self.ctl.chunk_block // max(1, K * G * n_out)))
            for s in range(0, n, block):
                sl = slice(s, s + block)
                xb = self.x[sl]
                y = xb[:, None] + sigma * cn[sl].reshape(len(xb), K * G)
                vals = values(xb, y).reshape(len(xb), K, G, n_out)
                lr = np.log(cn[sl])
                for out, al in zip(outs, alphas):
                    wt = cw[sl] * np.exp(-(1.0 + al[sl, None, None]) * lr)
                    parts = np.einsum("nkg,nkgc->nck", wt, vals)
                    out[sl] += wynn_epsilon(np.cumsum(parts, axis=-1))
        return outs

    def kernel_matrices(self, k: RbfKernel, centers, alphas):
        c = as_points(centers, 1)[:, 0]
        return self._apply(lambda xb, y: kernel_value(k, y[:, :, None] - c), alphas, len(c))

    def data_vectors(self, g: Data, alphas):
        def values(xb, y):
            return g(y.reshape(-1, 1)).reshape(y.shape + (1,))

        return [o[:, 0] for o in self._apply(values, alphas, 1)]


# ---------------------------------------------------------------- 2-D geometry


def _rect_dist(a, b):
    dx = max(0.0, a[0] - b[1], b[0] - a[1])
    dy = max(0.0, a[2] - b[3], b[2] - a[3])
    return math.hypot(dx, dy)


def _coarse_cells(dom: Domain, R: float):
    """Coarse exterior cells (eight around the outer box plus the holes clipped
    to it) and the rectangles tiling the closed domain."""
    cx, cy = dom.center
    xs = [cx - R, dom.lo[0], dom.hi[0], cx + R]
    ys = [cy - R, dom.lo[1], dom.hi[1], cy + R]
    ext = [(xs[i], xs[i + 1], ys[j], ys[j + 1])
           for i in range(3) for j in range(3) if (i, j) != (1, 1)]
    holes = dom.finite_holes()
    ext += [(hlo[0], hhi[0], hlo[1], hhi[1]) for hlo, hhi in holes]
    ix = sorted({dom.lo[0], dom.hi[0], *[v for h in holes for v in (h[0][0], h[1][0])]})
    iy = sorted({dom.lo[1], dom.hi[1], *[v for h in holes for v in (h[0][1], h[1][1])]})
    inn = []
    for i in range(len(ix) - 1):
        for j in range(len(iy) - 1):
            cell = (ix[i], ix[i + 1], iy[j], iy[j + 1])
            mid = np.array([[(cell[0] + cell[1]) / 2, (cell[2] + cell[3]) / 2]])
            if dom.classify(mid)[0] != EXTERIOR:
                inn.append(cell)
    return ext, inn


def exterior_cells_2d(dom: Domain, R: float, clearance: float, ratio: float,
                      max_cells: int = 2_000_000):
    """Rectangles tiling (Omega^c) within [-R, R]^2, graded toward the domain.

    Each cell's longer side is at most ratio * (distance to the domain +
    clearance), and aspect ratios stay below 2.
    """
    ext, inn = _coarse_cells(dom, R)
    out = []
    stack = list(ext)
    while stack:
        cell = stack.pop()
        w, h = cell[1] - cell[0], cell[3] - cell[2]
        dist = min(_rect_dist(cell, p) for p in inn)
        size = max(w, h)
        if size <= ratio * (dist + clearance) and max(w, h) <= 2.0 * min(w, h):
            out.append(cell)
            if len(out) > max_cells:
                raise QuadratureError("exterior cell budget exhausted")
            continue
        xm, ym = (cell[0] + cell[1]) / 2, (cell[2] + cell[3]) / 2
        if w >= h:
            stack += [(cell[0], xm, cell[2], cell[3]), (xm, cell[1], cell[2], cell[3])]
        else:
            stack += [(cell[0], cell[1], cell[2], ym), (cell[0], cell[1], ym, cell[3])]
    return np.array(out)


def _cell_nodes(cells, n):
    t, w = gauss_legendre(n)
    x0, x1, y0, y1 = cells.T
    X = x0[:, None, None] + (x1 - x0)[:, None, None] * t[None, :, None]
    Y = y0[:, None, None] + (y1 - y0)[:, None, None] * t[None, None, :]
    W = ((x1 - x0) * (y1 - y0))[:, None, None] * w[None, :, None] * w[None, None, :]
    X, Y = np.broadcast_arrays(X, Y)
    return np.stack([X.reshape(-1), Y.reshape(-1)], axis=1), W.reshape(-1)


class ExteriorRule2D:
    """Tensor Gauss rule on a graded cell decomposition of the complement.

    One node set serves every target, turning assembly into matrix products.
    """

    def __init__(self, dom: Domain, x, R: float, clearance: float, ctl: QuadratureControl,
                 max_size: float | None = None):
        self.x = as_points(x, 2)
        _check_targets(dom, self.x)
        self.ctl = ctl
        self.R = R
        cells = exterior_cells_2d(dom, R, clearance, ctl.cell_ratio)
        if max_size is not None:
            cells = _cap_cells(cells, max_size)
        self.cells = cells
        self.nodes, self.weights = _cell_nodes(cells, ctl.cell_nodes)

    def _blocks(self, n_out):
        M = len(self.nodes)
        step = max(1, int(self.ctl.chunk_block // max(1, max(n_out, len(self.x)))))
        for s in range(0, M, step):
            yield slice(s, s + step)

    def _apply(self, values, alphas, n_out):
        outs = [np.zeros((len(self.x), n_out)) for _ in alphas]
        for sl in self._blocks(n_out):
            Y = self.nodes[sl]
            vals = values(Y)
            diff0 = self.x[:, 0:1] - Y[:, 0]
            diff1 = self.x[:, 1:2] - Y[:, 1]
            lr2 = np.log(diff0 * diff0 + diff1 * diff1)
            for out, al in zip(outs, alphas):
                K = self.weights[sl] * np.exp(-(2.0 + al[:, None]) * 0.5 * lr2)
                out += K @ vals
        return outs

    def kernel_matrices(self, k: RbfKernel, centers, alphas):
        c = as_points(centers, 2)

        def values(Y):
            r = np.sqrt((Y[:, 0:1] - c[:, 0]) ** 2 + (Y[:, 1:2] - c[:, 1]) ** 2)
            return kernel_value(k, r)

        return self._apply(values, alphas, len(c))

    def data_vectors(self, g: Data, alphas):
        return [o[:, 0] for o in self._apply(lambda Y: g(Y)[:, None], alphas, 1)]


def _cap_cells(cells, max_size):
    out = []
    for c in cells:
        nx = max(1, int(math.ceil((c[1] - c[0]) / max_size)))
        ny = max(1, int(math.ceil((c[3] - c[2]) / max_size)))
        xs = np.linspace(c[0], c[1], nx + 1)
        ys = np.linspace(c[2], c[3], ny + 1)
        for i in range(nx):
            for j in range(ny):
                out.append((xs[i], xs[i + 1], ys[j], ys[j + 1]))
    return np.array(out)


# ---------------------------------------------------------------- 2-D polar


def _angle_breaks(dom: Domain, x):
    pts = [(dom.lo[0], dom.lo[1]), (dom.hi[0], dom.lo[1]),
           (dom.lo[0], dom.hi[1]), (dom.hi[0], dom.hi[1])]
    for hlo, hhi in dom.finite_holes():
        pts += [(hlo[0], hlo[1]), (hhi[0], hlo[1]), (hlo[0], hhi[1]), (hhi[0], hhi[1])]
    ang = [math.atan2(p[1] - x[1], p[0] - x[0]) % (2 * math.pi) for p in pts]
    return np.unique(np.concatenate([[0.0, 2 * math.pi], ang]))


def _ray_exit(lo, hi, x, e):
    """Distance along e from x (inside) to the boundary of the box [lo, hi]."""
    with np.errstate(divide="ignore", invalid="ignore"):
        tx = np.where(e[:, 0] > 0, (hi[0] - x[0]) / e[:, 0],
                      np.where(e[:, 0] < 0, (lo[0] - x[0]) / e[:, 0], np.inf))
        ty = np.where(e[:, 1] > 0, (hi[1] - x[1]) / e[:, 1],
                      np.where(e[:, 1] < 0, (lo[1] - x[1]) / e[:, 1], np.inf))
    return np.minimum(tx, ty)


def _ray_box(lo, hi, x, e):
    """Entry and exit distances of rays through a box (slab method)."""
    t_in = np.zeros(len(e))
    t_out = np.full(len(e), np.inf)
    for ax in range(2):
        with np.errstate(divide="ignore", invalid="ignore"):
            t1 = (lo[ax] - x[ax]) / e[:, ax]
            t2 = (hi[ax] - x[ax]) / e[:, ax]
        par = e[:, ax] == 0
        inside = (x[ax] > lo[ax]) & (x[ax] < hi[ax])
        t1 = np.where(par, np.where(inside, -np.inf, np.inf), t1)
        t2 = np.where(par, np.where(inside, np.inf, -np.inf), t2)
        t_in = np.maximum(t_in, np.minimum(t1, t2))
        t_out = np.minimum(t_out, np.maximum(t1, t2))
    return t_in, t_out


def _polar_rule(dom: Domain, x, ctl: QuadratureControl, piece: float):
    """Angular nodes/weights and, per ray, the exterior intervals (finite holes
    and the half-line beyond the outer box)."""
    breaks = _angle_breaks(dom, x)
    t, w = gauss_legendre(ctl.nodes_per_panel + 6)
    th, tw = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b - a < 1e-15:
            continue
        m = max(1, int(math.ceil((b - a) / piece)))
        edges = np.linspace(a, b, m + 1)
        for e0, e1 in zip(edges[:-1], edges[1:]):
            th.append(e0 + (e1 - e0) * t)
            tw.append((e1 - e0) * w)
    th = np.concatenate(th)
    tw = np.concatenate(tw)
    e = np.stack([np.cos(th), np.sin(th)], axis=1)
    rho_exit = _ray_exit(dom.lo, dom.hi, x, e)
    holes = []
    for hlo, hhi in dom.finite_holes():
        t_in, t_out = _ray_box(hlo, hhi, x, e)
        t_out = np.minimum(t_out, rho_exit)
        ok = t_out > t_in + 1e-14
        holes.append((t_in, t_out, ok))
    return th, tw, e, rho_exit, holes


def _polar_integral(dom, x, alpha, ctl, radial_values, scale, R, piece):
    """sum_theta w_theta int_{exterior on ray} F(x + rho e) rho^(-1-alpha) d rho."""
    th, tw, e, rho_exit, holes = _polar_rule(dom, x, ctl, piece)
    total = 0.0
    L = dom.diameter
    segs = [(rho_exit, np.full_like(rho_exit, R), np.ones(len(th), bool))] + holes
    for r0, r1, ok in segs:
        if not np.any(ok):
            continue
        idx = np.nonzero(ok)[0]
        rho, w = graded_panels(r0[idx], r1[idx], scale, ctl.panel_ratio,
                               ctl.nodes_per_panel, L=np.minimum(r1[idx] - r0[idx], L))
        y = x[None, None, :] + rho[:, :, None] * e[idx, None, :]
        vals = radial_values(y.reshape(-1, 2)).reshape(rho.shape)
        total += np.sum(tw[idx] * np.sum(w * rho ** (-1.0 - alpha) * vals, axis=1))
    return total


def _polar_constant(dom, x, alpha, ctl, piece):
    """int over the complement of |x - y|^(-2-alpha), exact along each ray."""
    th, tw, e, rho_exit, holes = _polar_rule(dom, x, ctl, piece)
    val = tw * rho_exit ** (-alpha) / alpha
    for t_in, t_out, ok in holes:
        val = val + np.where(ok, tw * (np.where(ok, t_in, 1.0) ** (-alpha)
                                       - np.where(ok, t_out, 1.0) ** (-alpha)) / alpha, 0.0)
    return float(np.sum(val))


def _nested(fn, ctl: QuadratureControl, what: str):
    """Repeat a rule with halved panels until two successive values agree."""
    prev = fn(ctl, math.pi / 8)
    c, piece = ctl, math.pi / 8
    for _ in range(6):
        c, piece = c.refined(), piece / 2
        cur = fn(c, piece)
        if abs(cur - prev) <= max(ctl.rel_tol * abs(cur), ctl.abs_tol):
            return cur
        prev = cur
    raise QuadratureError(f"{what}: nested refinement did not settle "
                          f"(last change {abs(cur - prev):.3g})")


# ---------------------------------------------------------------- 1-D reference


def _quad(f, a, b, ctl, points=None):
    val, err, info = integrate.quad(f, a, b, epsabs=ctl.abs_tol, epsrel=ctl.rel_tol,
                                    limit=ctl.max_subdivisions, points=points,
                                    full_output=1)[:3]
    if err > 100 * max(ctl.abs_tol, ctl.rel_tol * abs(val)):
        raise QuadratureError(f"adaptive quadrature stalled (error estimate {err:.3g})")
    return val


def _halfline_reference(F, rho_a, alpha, ctl, period=None, scale=1.0, far=None):
    """int_{rho_a}^inf F(rho) rho^(-1-alpha) d rho.

    Non-oscillatory integrands use rho = rho_a + t/(1-t) on [0, 1); with a
    period, the part beyond `far` is summed in half periods and accelerated.
    """
    if period is None:
        def g(t):
            if t >= 1.0:
                return 0.0
            rho = rho_a + t / (1.0 - t)
            return F(rho) * rho ** (-1.0 - alpha) / (1.0 - t) ** 2
        return _quad(g, 0.0, 1.0, ctl)
    h = period / 2.0

    def f(r):
        return F(r) * r ** (-1.0 - alpha)
    edges = np.arange(rho_a, far, max(scale, h))
    edges = np.append(edges, far)
    near = sum(_quad(f, a, b, ctl) for a, b in zip(edges[:-1], edges[1:]) if b > a)
    parts = [_quad(f, far + j * h, far + (j + 1) * h, ctl) for j in range(ctl.wynn_chunks)]
    return near + float(wynn_epsilon(np.cumsum(parts)))


# ---------------------------------------------------------------- public API


def exterior_kernel_integral(dom: Domain, k: RbfKernel, center, x, alpha: float,
                             ctl: QuadratureControl = DEFAULT_QUAD) -> float:
    """E(x; center) for one target by adaptive integration."""
    d = dom.d
    x = as_points(x, d)[0]
    c = as_points(center, d)[0]
    _check_targets(dom, x[None, :])
    alpha = float(alpha)
    if d == 1:
        total = 0.0
        for sigma, rho_a in ((1.0, dom.hi[0] - x[0]), (-1.0, x[0] - dom.lo[0])):
            def F(rho, sigma=sigma):
                return float(kernel_value(k, x[0] + sigma * rho - c[0]))
            if _oscillatory(k):
                hp = math.pi / k.epsilon
                edge = dom.hi[0] if sigma > 0 else -dom.lo[0]
                far = hp * math.ceil((edge + dom.diameter + 8 * hp) / hp) - sigma * x[0]
                total += _halfline_reference(F, rho_a, alpha, ctl, period=2 * hp,
                                             scale=1.0 / k.epsilon, far=far)
            else:
                total += _halfline_reference(F, rho_a, alpha, ctl)
        return total
    if _oscillatory(k):
        R = truncation_radius(dom, k, alpha, ctl if ctl.truncation_radius else
                              _with_radius(ctl, 40 * dom.diameter))
    else:
        R = truncation_radius(dom, k, alpha, ctl)
    R = R + float(np.linalg.norm(x - dom.center))

    def rule(c_ctl, piece):
        return _polar_integral(dom, x, alpha, c_ctl,
                               lambda y: kernel_value(k, np.linalg.norm(y - c, axis=1)),
                               1.0 / k.epsilon, R, piece)
    return _nested(rule, ctl, "exterior kernel integral")


def _with_radius(ctl, R):
    return QuadratureControl(ctl.rel_tol, ctl.abs_tol, ctl.max_subdivisions, R,
                             ctl.panel_ratio, ctl.nodes_per_panel, ctl.cell_ratio,
                             ctl.cell_nodes, ctl.wynn_chunks, ctl.chunk_block)


def exterior_data_integral(dom: Domain, g, x, alpha: float,
                           ctl: QuadratureControl = DEFAULT_QUAD) -> float:
    """D(x) for one target; exactly zero for zero data."""
    g = as_data(g)
    if g.is_zero:
        return 0.0
    d = dom.d
    x = as_points(x, d)[0]
    _check_targets(dom, x[None, :])
    alpha = float(alpha)
    if d == 1:
        total = 0.0
        for sigma, rho_a in ((1.0, dom.hi[0] - x[0]), (-1.0, x[0] - dom.lo[0])):
            if g.func is None:
                total += g.constant * rho_a ** (-alpha) / alpha
                continue

            def F(rho, sigma=sigma):
                return float(g(np.array([[x[0] + sigma * rho]]))[0])
            if g.period is not None:
                hp = g.period / 2.0
                edge = dom.hi[0] if sigma > 0 else -dom.lo[0]
                far = hp * math.ceil((edge + dom.diameter + 4 * g.period) / hp) - sigma * x[0]
                total += _halfline_reference(F, rho_a, alpha, ctl, period=g.period,
                                             scale=g.scale, far=far)
            else:
                total += _halfline_reference(F, rho_a, alpha, ctl)
        return total
    if g.func is None:
        return g.constant * _nested(lambda c, p: _polar_constant(dom, x, alpha, c, p),
                                    ctl, "exterior data integral")
    R = ctl.truncation_radius or 40.0 * dom.diameter
    return _nested(lambda c, p: _polar_integral(dom, x, alpha, c, g, g.scale, R, p),
                   ctl, "exterior data integral")


def _clearance(dom: Domain, x) -> float:
    """Smallest distance from the targets to the complement."""
    x = as_points(x, dom.d)
    dist = np.min(np.minimum(x - np.asarray(dom.lo), np.asarray(dom.hi) - x), axis=1)
    for hlo, hhi in dom.finite_holes():
        dx = np.maximum(0.0, np.maximum(hlo[0] - x[:, 0], x[:, 0] - hhi[0]))
        dy = np.maximum(0.0, np.maximum(hlo[1] - x[:, 1], x[:, 1] - hhi[1]))
        dist = np.minimum(dist, np.hypot(dx, dy))
    return float(dist.min())


def exterior_kernel_matrices(dom: Domain, k: RbfKernel, centers, targets, alphas,
                             ctl: QuadratureControl = DEFAULT_QUAD):
    """E[j, i] = E(targets[j]; centers[i]) for one or several exponent arrays.

    alphas is an array of per-target exponents or a list of such arrays; the
    return value matches (a matrix or a list of matrices).
    """
    x = as_points(targets, dom.d)
    al, single = _alpha_list(alphas, len(x))
    if len(x) == 0:
        res = [np.zeros((0, len(as_points(centers, dom.d))))] * len(al)
        return res[0] if single else res
    amin = float(min(a.min() for a in al))
    if dom.d == 1:
        if _oscillatory(k):
            rule = ExteriorRule1D(dom, x, 1.0 / k.epsilon, None, ctl,
                                  period=2 * math.pi / k.epsilon)
        else:
            R = truncation_radius(dom, k, amin, ctl)
            rule = ExteriorRule1D(dom, x, 1.0 / k.epsilon, R, ctl)
    else:
        if _oscillatory(k):
            c2 = ctl if ctl.truncation_radius else _with_radius(ctl, 40 * dom.diameter)
            R = truncation_radius(dom, k, amin, c2)
            rule = ExteriorRule2D(dom, x, R, min(_clearance(dom, x), 1.0 / k.epsilon), ctl,
                                  max_size=ctl.cell_ratio / k.epsilon)
        else:
            R = truncation_radius(dom, k, amin, ctl)
            rule = ExteriorRule2D(dom, x, R, min(_clearance(dom, x), 1.0 / k.epsilon), ctl)
    res = rule.kernel_matrices(k, centers, al)
    return res[0] if single else res


def exterior_kernel_matrix(dom, k, centers, targets, alpha, ctl=DEFAULT_QUAD):
    return exterior_kernel_matrices(dom, k, centers, targets, np.asarray(alpha, dtype=float), ctl)


def exterior_data_vectors(dom: Domain, g, targets, alphas, ctl: QuadratureControl = DEFAULT_QUAD):
    """D(targets) for one or several exponent arrays (see exterior_kernel_matrices)."""
    g = as_data(g)
    x = as_points(targets, dom.d)
    al, single = _alpha_list(alphas, len(x))
    if g.is_zero or len(x) == 0:
        res = [np.zeros(len(x)) for _ in al]
    elif g.func is None:
        if dom.d == 1:
            ra, rb = dom.hi[0] - x[:, 0], x[:, 0] - dom.lo[0]
            res = [g.constant * (ra ** -a + rb ** -a) / a for a in al]
        else:
            res = [np.array([g.constant * _nested(
                lambda c, p, xi=xi, ai=ai: _polar_constant(dom, xi, ai, c, p), ctl,
                "exterior data integral") for xi, ai in zip(x, a)]) for a in al]
    elif dom.d == 1:
        if g.period is not None:
            rule = ExteriorRule1D(dom, x, g.scale, None, ctl, period=g.period)
        else:
            R = ctl.truncation_radius or 40.0 * dom.diameter
            rule = ExteriorRule1D(dom, x, g.scale, R, ctl)
        res = rule.data_vectors(g, al)
    else:
        R = ctl.truncation_radius or 40.0 * dom.diameter
        rule = ExteriorRule2D(dom, x, R, min(_clearance(dom, x), g.scale), ctl)
        res = rule.data_vectors(g, al)
    return res[0] if single else res
