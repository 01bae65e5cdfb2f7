"""Radial kernels and their closed-form fractional Laplacian images."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special as sps

from . import specfun as sf
from .errors import DomainError

FAMILIES = ("gaussian", "gimq", "bessel")


@dataclass(frozen=True)
class RbfKernel:
    """phi_eps(r) = phi(eps r) for one of three radial families.

    gaussian: exp(-r^2)
    gimq:     (1 + r^2)^(-beta)
    bessel:   J_{m/2-1}(r) / r^(m/2-1)
    """

    family: str
    epsilon: float = 1.0
    beta: float | None = None
    m: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown kernel family {self.family!r}; expected one of {FAMILIES}")
        if not self.epsilon > 0:
            raise ValueError("shape parameter epsilon must be positive")
        if self.family == "gimq" and not (self.beta is not None and self.beta > 0):
            raise ValueError("gimq kernel needs beta > 0")
        if self.family == "bessel" and not (self.m is not None and int(self.m) == self.m and self.m >= 1):
            raise ValueError("bessel kernel needs an integer m >= 1")

    @property
    def nu(self) -> float:
        return self.m / 2.0 - 1.0

    def check_dimension(self, d: int):
        if self.family == "bessel" and d > self.m:
            warnings.warn(f"bessel kernel with m={self.m} is not positive definite in d={d}",
                          stacklevel=2)

    def length_scale(self) -> float:
        return 1.0 / self.epsilon


def default_kernel(family: str, epsilon: float, d: int, beta=None, m=None) -> RbfKernel:
    """Kernel with the usual dimension-dependent defaults: beta=(d+1)/2, m=d+1."""
    if family == "gimq" and beta is None:
        beta = (d + 1) / 2.0
    if family == "bessel" and m is None:
        m = d + 1
    k = RbfKernel(family, float(epsilon), beta=beta, m=m)
    k.check_dimension(d)
    return k


def _bessel_profile(nu, t):
    """J_nu(t) / t^nu, continuous at t = 0."""
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    small = t <= 12.0
    # the power series is clean for moderate t, scipy's jv beyond
    out[small] = math.pow(2.0, -nu) * sf.recip_gamma(nu + 1.0) * sf.hyp_pfq(
        [], [nu + 1.0], -0.25 * t[small] ** 2)
    tb = t[~small]
    out[~small] = sps.jv(nu, tb) / tb ** nu
    return out


def kernel_value(k: RbfKernel, r):
    r = np.abs(np.asarray(r, dtype=float))
    t = k.epsilon * r
    if k.family == "gaussian":
        return np.exp(-t * t)
    if k.family == "gimq":
        return (1.0 + t * t) ** (-k.beta)
    return _bessel_profile(k.nu, t)


def c_norm(d: int, alpha):
    """Normalization constant of the fractional Laplacian; zero at alpha = 2."""
    alpha = np.asarray(alpha, dtype=float)
    if np.any((alpha <= 0) | (alpha > 2)):
        raise DomainError("alpha must lie in (0, 2]")
    val = (2.0 ** (alpha - 1.0) * alpha * sf.gamma((alpha + d) / 2.0)
           * sf.recip_gamma(1.0 - alpha / 2.0) / math.pi ** (d / 2.0))
    return val if val.ndim else float(val)


def psi_value(k: RbfKernel, d: int, alpha, r):
    """(-Delta)^(alpha/2) phi_eps(|.|) evaluated at radius r.

    alpha and r broadcast against each other, so a row-dependent exponent
    can be passed as a column vector.
    """
    alpha = np.asarray(alpha, dtype=float)
    r = np.abs(np.asarray(r, dtype=float))
    if np.any((alpha <= 0) | (alpha > 2)):
        raise DomainError("alpha must lie in (0, 2]")
    alpha, r = np.broadcast_arrays(alpha, r)
    eps = k.epsilon
    z = -(eps * r) ** 2
    h = d / 2.0
    a1 = (d + alpha) / 2.0
    base = eps ** alpha * sf.gamma(a1) / math.gamma(h)
    if k.family == "gaussian":
        return 2.0 ** alpha * base * sf.hyp1f1(a1, h, z)
    if k.family == "gimq":
        b = k.beta + alpha / 2.0
        return (2.0 ** alpha * base * sf.gamma(b) / math.gamma(k.beta)
                * sf.hyp2f1(a1, b, h, z))
    s = k.m / 2.0
    b1 = s + alpha / 2.0
    return (2.0 ** (1.0 - s) * base * sf.recip_gamma(b1)
            * sf.hyp_pfq([a1], [b1, h], z / 4.0))


def classical_laplacian_kernel(k: RbfKernel, d: int, r):
    """-Delta phi_eps(|.|) at radius r from derivatives of the profile."""
    r = np.abs(np.asarray(r, dtype=float))
    eps = k.epsilon
    t = eps * r
    if k.family == "gaussian":
        return (2.0 * d * eps ** 2 - 4.0 * eps ** 4 * r ** 2) * np.exp(-t * t)
    if k.family == "gimq":
        s = 1.0 + t * t
        b = k.beta
        return (2.0 * b * d * eps ** 2 * s ** (-b - 1.0)
                - 4.0 * b * (b + 1.0) * eps ** 4 * r ** 2 * s ** (-b - 2.0))
    nu = k.nu
    # with g_nu(t) = J_nu(t)/t^nu: g_nu' = -t g_{nu+1}
    return eps ** 2 * (d * _bessel_profile(nu + 1.0, t) - t * t * _bessel_profile(nu + 2.0, t))
