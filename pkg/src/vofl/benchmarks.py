"""Test functions with closed-form fractional Laplacians."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import specfun as sf
from .errors import DomainError


def as_points(x, d: int) -> np.ndarray:
    """Coerce x to shape (n, d); a flat array is read as n points when d = 1."""
    x = np.asarray(x, dtype=float)
    if d == 1 and x.ndim <= 1:
        return x.reshape(-1, 1)
    x = np.atleast_2d(x)
    if x.shape[-1] != d:
        raise ValueError(f"expected points of dimension {d}, got shape {x.shape}")
    return x


@dataclass(frozen=True)
class HarmonicFactor:
    """Solid harmonic V(x): 1 (degree 0) or the coordinate x_axis (degree 1)."""

    degree: int = 0
    axis: int = 0

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise ValueError("only degree 0 and 1 harmonics are supported")

    def __call__(self, x: np.ndarray) -> np.ndarray:
        if self.degree == 0:
            return np.ones(x.shape[0])
        return x[:, self.axis]


@dataclass
class BenchmarkPair:
    """u and its fractional Laplacian (-Delta)^(alpha/2) u.

    Both callables take points of shape (n, d) (or a flat array when d = 1);
    vo_lap also takes alpha as a scalar or per-point array.
    """

    u: Callable
    vo_lap: Callable
    d: int
    support: str = "global"
    note: str = ""
    meta: dict = field(default_factory=dict)


def _radius2(x, d):
    x = as_points(x, d)
    return x, np.sum(x * x, axis=1)


def hypergeom_pair(a, b, V: HarmonicFactor | None = None, d: int = 1) -> BenchmarkPair:
    """u = V(x) pFq(a; b, theta; -|x|^2) with theta = d/2 + deg V.

    len(b) is q - 1 (theta is appended), and q - 1 <= p <= q + 1.
    """
    V = V or HarmonicFactor()
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    q = len(b) + 1
    if not q - 1 <= len(a) <= q + 1:
        raise ValueError("need q - 1 <= p <= q + 1")
    theta = d / 2.0 + V.degree

    def u(x):
        x, r2 = _radius2(x, d)
        return V(x) * sf.hyp(a, b + [theta], -r2)

    def vo_lap(x, alpha):
        x, r2 = _radius2(x, d)
        al = np.broadcast_to(np.asarray(alpha, dtype=float), r2.shape)
        h = al / 2.0
        coef = 2.0 ** al * np.ones_like(r2)
        for ak in a:
            coef = coef * sf.gamma(ak + h) / math.gamma(ak)
        for bk in b:
            coef = coef * math.gamma(bk) * sf.recip_gamma(bk + h)
        return coef * V(x) * sf.hyp([ak + h for ak in a], [bk + h for bk in b] + [theta], -r2)

    return BenchmarkPair(u, vo_lap, d, note=f"{len(a)}F{q} family",
                         meta={"a": a, "b": b, "theta": theta})


def compact_pair(p: float, V: HarmonicFactor | None = None, d: int = 1) -> BenchmarkPair:
    """u = V(x) (1 - |x|^2)_+^p, supported on the closed unit ball."""
    V = V or HarmonicFactor()
    if p <= -1:
        raise ValueError("compact pair needs p > -1")
    theta = d / 2.0 + V.degree

    def u(x):
        x, r2 = _radius2(x, d)
        return V(x) * np.where(r2 < 1.0, np.abs(1.0 - r2) ** p, 0.0)

    def vo_lap(x, alpha):
        x, r2 = _radius2(x, d)
        if np.any(r2 >= 1.0):
            raise DomainError("closed form holds only inside the unit ball")
        al = np.broadcast_to(np.asarray(alpha, dtype=float), r2.shape)
        h = al / 2.0
        coef = (2.0 ** al * math.gamma(p + 1.0) * sf.gamma(theta + h)
                * sf.recip_gamma(p + 1.0 - h) / math.gamma(theta))
        return coef * V(x) * sf.hyp2f1(theta + h, -p + h, theta, r2)

    return BenchmarkPair(u, vo_lap, d, support="unit ball", note=f"compact p={p}",
                         meta={"p": p, "theta": theta})


def gaussian_pair(d: int = 1) -> BenchmarkPair:
    """u = exp(-|x|^2)."""
    return hypergeom_pair([d / 2.0], [], d=d)


def imq_pair(beta: float, d: int = 1) -> BenchmarkPair:
    """u = (1 + |x|^2)^(-beta)."""
    return hypergeom_pair([beta, d / 2.0], [], d=d)


def example1_pair() -> BenchmarkPair:
    """u = sqrt(2) sin|x| / (sqrt(pi) |x|) in one dimension."""
    c = math.sqrt(2.0 / math.pi)

    def u(x):
        x = as_points(x, 1)[:, 0]
        return c * np.sinc(x / math.pi)

    def vo_lap(x, alpha):
        x = as_points(x, 1)[:, 0]
        al = np.broadcast_to(np.asarray(alpha, dtype=float), x.shape)
        return (math.sqrt(2.0) / ((al + 1.0) * math.sqrt(math.pi))
                * sf.hyp1f2((1.0 + al) / 2.0, (3.0 + al) / 2.0, 0.5, -x * x / 4.0))

    return BenchmarkPair(u, vo_lap, 1, note="scaled sinc",
                         meta={"period": 2.0 * math.pi})


def example2_pair() -> BenchmarkPair:
    """u = (1 - x^2)_+ in one dimension."""
    return compact_pair(1.0, d=1)


def poisson_pair(d: int = 1) -> BenchmarkPair:
    """u = (1 - |x|^2)_+^3."""
    return compact_pair(3.0, d=d)


def cos_identity(d: int, alpha, x):
    """Closed-form fractional Laplacian of cos(x_1) evaluated along |x|.

    For d = 1 the expression reduces to cos(x) for every alpha.
    """
    x = np.asarray(x, dtype=float)
    al = np.asarray(alpha, dtype=float)
    r2 = x * x if x.ndim <= 1 or d == 1 else np.sum(x * x, axis=-1)
    coef = (math.sqrt(math.pi) * sf.gamma((d + al) / 2.0)
            / (math.gamma(d / 2.0) * sf.gamma((1.0 + al) / 2.0)))
    return coef * sf.hyp1f2((d + al) / 2.0, (1.0 + al) / 2.0, d / 2.0, -r2 / 4.0)


def sinc_identity(d: int, alpha, x):
    """Closed-form fractional Laplacian of the radial sinc profile."""
    x = np.asarray(x, dtype=float)
    al = np.asarray(alpha, dtype=float)
    r2 = x * x if x.ndim <= 1 or d == 1 else np.sum(x * x, axis=-1)
    coef = (math.pi ** (al + 0.5) * sf.gamma((d + al) / 2.0)
            / (2.0 * math.gamma(d / 2.0) * sf.gamma((3.0 + al) / 2.0)))
    return coef * sf.hyp1f2((d + al) / 2.0, (3.0 + al) / 2.0, d / 2.0,
                            -math.pi ** 2 * r2 / 4.0)


CATALOG = {
    "example1": example1_pair,
    "example2": example2_pair,
    "poisson": poisson_pair,
    "gaussian": gaussian_pair,
}
