"""Independent reference computations used only for validation.

pv_vo_laplacian_1d integrates the singular-integral definition directly with
scipy quadrature; highprec_pfq sums hypergeometric series in mpmath
arbitrary precision with a rigorous truncation bound. Neither route shares
code with the closed-form operator images or the double-precision series.
"""
from __future__ import annotations

import math
from typing import Callable, Sequence

import mpmath
import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureError, SeriesConvergenceError, TailBoundError


def _c1(alpha: float) -> float:
    # normalization constant for d = 1 in plain math.gamma (alpha < 2 here)
    return 2.0 ** (alpha - 1.0) * alpha * math.gamma((alpha + 1.0) / 2.0) / (
        math.sqrt(math.pi) * math.gamma(1.0 - alpha / 2.0))


def _quad(f, a, b, tol, **kw):
    val, err = integrate.quad(f, a, b, epsabs=tol, epsrel=tol, limit=500, **kw)[:2]
    if not np.isfinite(val) or err > max(100 * tol * max(abs(val), 1.0), 1e-14):
        raise QuadratureError(f"quadrature on [{a}, {b}] did not converge (est. error {err:.2e})")
    return val, err


def _wynn(S):
    # plain scalar epsilon table, independent of the vectorized production routine
    eps = [[0.0] * (len(S) + 1), list(S)]
    best = S[-1]
    for k in range(2, len(S) + 1):
        prev2, prev = eps[-2], eps[-1]
        row = []
        for j in range(len(prev) - 1):
            diff = prev[j + 1] - prev[j]
            if diff == 0.0:
                row = []
                break
            row.append(prev2[j + 1] + 1.0 / diff)
        if not row:
            break
        eps.append(row)
        if k % 2 == 1:
            best = row[-1]
    return best


def pv_vo_laplacian_1d(u: Callable[[float], float], x: float, alpha: float, tol: float = 1e-10,
                       eta: float = 1.0, R: float | None = None, period: float | None = None,
                       chunks: int = 40) -> float:
    """C_{1,alpha} PV int (u(x) - u(y)) / |x - y|^(1+alpha) dy by direct quadrature.

    The symmetrized form int_0^inf (2u(x) - u(x+s) - u(x-s)) s^(-1-alpha) ds
    removes the odd first-order term. On [0, eta] the second difference is
    divided by s^2 and integrated against the algebraic weight s^(1-alpha);
    [eta, R] is adaptive; beyond R the constant part is exact,
    2 u(x) R^(-alpha) / alpha, and the remainder is integrated to infinity,
    or for oscillatory u (period given) summed half-period by half-period
    with epsilon acceleration.
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError("the singular-integral form needs 0 < alpha < 2")
    ux = float(u(x))
    R = 4.0 * eta if R is None else float(R)

    def second_diff(s):
        return 2.0 * ux - u(x + s) - u(x - s)

    def curvature(s):
        # smooth and even in s; frozen below 1e-4 where the difference cancels
        s = max(s, 1e-4)
        return second_diff(s) / (s * s)

    near, _ = _quad(curvature, 0.0, eta, tol,
                    weight="alg", wvar=(1.0 - alpha, 0.0))
    mid, _ = _quad(lambda s: second_diff(s) * s ** (-1.0 - alpha), eta, R, tol)
    far_const = 2.0 * ux * R ** (-alpha) / alpha

    def pair(s):
        return (u(x + s) + u(x - s)) * s ** (-1.0 - alpha)

    if period is None:
        far, err = integrate.quad(pair, R, np.inf, epsabs=tol, epsrel=tol, limit=500)[:2]
        if not np.isfinite(far) or err > max(100 * tol * max(abs(far), 1.0), 1e-14):
            raise TailBoundError(f"tail beyond R = {R:g} not resolved (est. error {err:.2e})")
    else:
        half = period / 2.0
        partial, s = [], 0.0
        for j in range(chunks):
            s += _quad(pair, R + j * half, R + (j + 1) * half, tol)[0]
            partial.append(s)
        far = _wynn(partial)
        if abs(far - _wynn(partial[:-2])) > 100 * tol * max(abs(far), 1.0):
            raise TailBoundError("accelerated oscillatory tail did not settle")
    return _c1(alpha) * (near + mid + far_const - far)


def _is_nonpos_int(v) -> bool:
    return v <= 0 and v == mpmath.floor(v)


def _ratio_bound(a, b, z, n):
    """Upper bound on |t_{m+1} / t_m| for every m >= n, or None if unavailable.

    Numerator factor i is paired with denominator factor i (the factorial's
    m + 1 first). A pair (m + A)/(m - B) is non-increasing in m when
    A + B >= 0 and stays below 1 otherwise; unpaired denominators only shrink.
    """
    num = [abs(v) for v in a]
    den = [-1] + [abs(v) for v in b]
    if n <= max(den) or len(num) > len(den):
        return None
    bound = abs(z)
    for A, B in zip(num, den):
        if A + B >= 0:
            bound *= (n + A) / (n - B)
    for B in den[len(num):]:
        bound /= n - B
    return bound


def _series(a, b, z, digits, dps, max_terms):
    with mpmath.workdps(dps):
        a = [mpmath.mpf(v) for v in a]
        b = [mpmath.mpf(v) for v in b]
        z = mpmath.mpf(z)
        poly = any(_is_nonpos_int(v) for v in a)
        nmin = int(max([abs(v) for v in a + b] + [abs(z)])) * 2 + 2
        term = mpmath.mpf(1)
        S = mpmath.mpf(1)
        big = mpmath.mpf(1)
        goal = mpmath.mpf(10) ** (-(digits + 5))
        for n in range(max_terms):
            num = z
            for v in a:
                num *= v + n
            den = mpmath.mpf(n + 1)
            for v in b:
                den *= v + n
            if num == 0:
                return S, big, mpmath.mpf(0)
            term = term * num / den
            S += term
            big = max(big, abs(term))
            if poly or n < nmin:
                continue
            rho = _ratio_bound(a, b, z, n + 1)
            if rho is not None and rho < 1:
                rem = abs(term) * rho / (1 - rho)
                if rem <= goal * abs(S):
                    return S, big, rem
        raise SeriesConvergenceError(f"oracle series did not converge in {max_terms} terms")


def highprec_pfq(a: Sequence[float], b: Sequence[float], z: float, digits: int = 50,
                 max_terms: int = 100000) -> str:
    """pFq(a; b; z) to the requested number of significant digits, as a string.

    Working precision is raised until it exceeds the digits lost to
    cancellation among the terms. 2F1 at z = 1 uses Gauss's closed form and
    for |z| > 0.9 mpmath's transformed 2F1.
    """
    a = list(a)
    b = list(b)
    if any(_is_nonpos_int(mpmath.mpf(v)) for v in b):
        raise DomainError("lower parameter at a pole")
    p, q = len(a), len(b)
    # a terminating series is a polynomial, summed as is for any z
    poly = any(_is_nonpos_int(mpmath.mpf(v)) for v in a)
    if not poly and (p > q + 1 or (p == q + 1 and abs(z) > 1)):
        raise DomainError("series diverges for these parameters")
    if not poly and p == 2 and q == 1 and z == 1:
        with mpmath.workdps(digits + 10):
            c, s1, s2 = (mpmath.mpf(v) for v in (b[0], a[0], a[1]))
            if c - s1 - s2 <= 0:
                raise DomainError("2F1 at z = 1 needs c - a - b > 0")
            val = mpmath.gamma(c) * mpmath.gamma(c - s1 - s2) / (
                mpmath.gamma(c - s1) * mpmath.gamma(c - s2))
            return mpmath.nstr(val, digits)
    if not poly and p == q + 1 and abs(z) == 1:
        raise DomainError("boundary of convergence only supported for 2F1 at z = 1")
    if not poly and p == 2 and q == 1 and abs(z) > 0.9:
        # slow geometric convergence; mpmath's transformed evaluation instead
        with mpmath.workdps(digits + 20):
            return mpmath.nstr(mpmath.hyp2f1(a[0], a[1], b[0], z), digits)
    dps = digits + 10
    for _ in range(6):
        S, big, _ = _series(a, b, z, digits, dps, max_terms)
        with mpmath.workdps(dps):
            lost = 0 if S == 0 else max(0, int(mpmath.ceil(mpmath.log10(big / abs(S)))))
        if dps - lost >= digits + 5:
            with mpmath.workdps(dps):
                return mpmath.nstr(S, digits)
        dps = digits + 10 + lost
    raise SeriesConvergenceError("cancellation could not be resolved")


def highprec_lngamma(x: float, digits: int = 50) -> str:
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(mpmath.log(abs(mpmath.gamma(mpmath.mpf(x)))), digits)


def highprec_gamma(x: float, digits: int = 50) -> str:
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(mpmath.gamma(mpmath.mpf(x)), digits)
