"""Gamma-family functions and generalized hypergeometric series.

All functions broadcast over array arguments and return a Python float
when every input is a scalar.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyWarning, PoleError, SeriesConvergenceError

_EULER = 0.5772156649015328606
_LN_SQRT_2PI = 0.91893853320467274178

# zeta(k) for k = 2..30, used by the Taylor series of ln Gamma(1 + z)
_ZETA = np.array([
    1.644934066848226436472, 1.2020569031595942854, 1.082323233711138191516,
    1.036927755143369926331, 1.017343061984449139715, 1.00834927738192282684,
    1.004077356197944339379, 1.002008392826082214418, 1.000994575127818085337,
    1.000494188604119464559, 1.000246086553308048299, 1.000122713347578489147,
    1.000061248135058704829, 1.000030588236307020494, 1.000015282259408651872,
    1.000007637197637899762, 1.00000381729326499984, 1.000001908212716553939,
    1.000000953962033872796, 1.000000476932986787806, 1.000000238450502727733,
    1.000000119219925965311, 1.000000059608189051259, 1.000000029803503514652,
    1.000000014901554828365, 1.000000007450711789835, 1.000000003725334024788,
    1.000000001862659723513, 1.00000000093132743242,
])

# Lanczos approximation, g = 7, nine coefficients
_LANCZOS_G = 7.0
_LANCZOS = np.array([
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
])


def _out(x, scalar):
    if scalar:
        return float(np.asarray(x).reshape(-1)[0])
    return x


def _is_scalar(*args):
    return all(np.ndim(a) == 0 for a in args)


def _nonpos_int(x):
    x = np.asarray(x, dtype=float)
    return (x <= 0) & (x == np.round(x))


def _sinpi(x):
    """sin(pi x) with exact zeros at the integers."""
    n = np.round(x)
    r = x - n
    sign = np.where(np.mod(n, 2) == 0, 1.0, -1.0)
    return sign * np.sin(np.pi * r)


def _lngamma_taylor1(z):
    """ln Gamma(1 + z) for |z| <= 0.25 from its zeta-value series."""
    acc = np.zeros_like(z)
    for k in range(len(_ZETA) + 1, 1, -1):
        acc = acc * z + ((-1) ** k) * _ZETA[k - 2] / k
    return z * (-_EULER + z * acc)


def _lngamma_lanczos(x):
    """ln Gamma(x) for x >= 0.5."""
    z = x - 1.0
    a = np.full_like(z, _LANCZOS[0])
    for i in range(1, len(_LANCZOS)):
        a = a + _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _LN_SQRT_2PI + (z + 0.5) * np.log(t) - t + np.log(a)


def _lngamma_pos(x):
    """ln Gamma(x) for x > 0."""
    out = np.empty_like(x)
    near1 = np.abs(x - 1.0) <= 0.25
    near2 = np.abs(x - 2.0) <= 0.25
    small = (x < 0.75) & ~near1
    small_series = small & (x <= 0.25)
    small_lanczos = small & ~small_series
    rest = ~(near1 | near2 | small)
    out[near1] = _lngamma_taylor1(x[near1] - 1.0)
    z2 = x[near2] - 2.0
    out[near2] = np.log1p(z2) + _lngamma_taylor1(z2)
    xs = x[small_series]
    out[small_series] = _lngamma_taylor1(xs) - np.log(xs)
    xl = x[small_lanczos]
    out[small_lanczos] = _lngamma_lanczos(xl + 1.0) - np.log(xl)
    out[rest] = _lngamma_lanczos(x[rest])
    return out


def ln_gamma(x, return_sign=False):
    """Natural log of |Gamma(x)|, optionally with the sign of Gamma(x).

    Raises PoleError at non-positive integers.
    """
    scalar = _is_scalar(x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(_nonpos_int(x)):
        raise PoleError(f"Gamma has a pole at {x[_nonpos_int(x)][0]:g}")
    out = np.empty_like(x)
    sign = np.ones_like(x)
    pos = x > 0
    out[pos] = _lngamma_pos(x[pos])
    neg = ~pos
    if np.any(neg):
        xn = x[neg]
        s = _sinpi(xn)
        # reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        out[neg] = math.log(math.pi) - np.log(np.abs(s)) - _lngamma_pos(1.0 - xn)
        sign[neg] = np.sign(s)
    if return_sign:
        return _out(out, scalar), _out(sign, scalar)
    return _out(out, scalar)


def recip_gamma(x):
    """1 / Gamma(x), entire; exactly zero at the non-positive integers."""
    scalar = _is_scalar(x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros_like(x)
    pole = _nonpos_int(x)
    ok = ~pole
    if np.any(ok):
        lg, sg = ln_gamma(x[ok], return_sign=True)
        out[ok] = sg * np.exp(-lg)
    return _out(out, scalar)


def gamma(x):
    """Gamma(x); raises PoleError at non-positive integers."""
    scalar = _is_scalar(x)
    lg, sg = ln_gamma(np.atleast_1d(np.asarray(x, dtype=float)), return_sign=True)
    return _out(sg * np.exp(lg), scalar)


def pochhammer(a, n):
    """Rising factorial (a)_n for integer n >= 0."""
    scalar = _is_scalar(a, n)
    a, n = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(n))
    a = np.atleast_1d(a).astype(float)
    n = np.atleast_1d(n).astype(int)
    if np.any(n < 0):
        raise ValueError("pochhammer needs n >= 0")
    out = np.ones_like(a)
    for k in range(int(n.max(initial=0))):
        out = np.where(k < n, out * (a + k), out)
    return _out(out, scalar)


def digamma(x):
    """Logarithmic derivative of Gamma."""
    scalar = _is_scalar(x)
    x = np.atleast_1d(np.asarray(x, dtype=float)).copy()
    if np.any(_nonpos_int(x)):
        raise PoleError("digamma has poles at the non-positive integers")
    refl = x < 0.5
    shift = np.zeros_like(x)
    xr = np.where(refl, 1.0 - x, x)
    while True:
        low = xr < 10.0
        if not np.any(low):
            break
        shift = shift - np.where(low, 1.0 / np.where(low, xr, 1.0), 0.0)
        xr = np.where(low, xr + 1.0, xr)
    inv2 = 1.0 / (xr * xr)
    tail = inv2 * (1 / 12 - inv2 * (1 / 120 - inv2 * (1 / 252 - inv2 * (
        1 / 240 - inv2 * (1 / 132 - inv2 * (691 / 32760 - inv2 / 12))))))
    psi = np.log(xr) - 0.5 / xr - tail + shift
    xf = np.where(refl, x, 0.5)
    r = xf - np.round(xf)
    psi = np.where(refl, psi - np.pi / np.tan(np.pi * r), psi)
    return _out(psi, scalar)


@dataclass(frozen=True)
class SeriesControl:
    """Stopping rules for hypergeometric series.

    rel_tol: stop once the estimated remainder is below rel_tol * |sum|.
    max_terms: hard cap on the number of terms.
    cancellation_guard: flag results whose largest term exceeds the
        final magnitude by more than this factor.
    """

    rel_tol: float = 1e-15
    max_terms: int = 1000
    cancellation_guard: float = 1e4


DEFAULT_SERIES = SeriesControl()


@dataclass
class SeriesInfo:
    terms: int
    cancellation: np.ndarray
    flagged: bool


def _sum_series(a, b, z, ctl, log_scale=None):
    """Sum  sum_n prod (a)_n / prod (b)_n z^n / n!  elementwise.

    Returns (value, max |term| / |value|, number of terms). The optional
    log_scale multiplies every element by exp(log_scale) without forming
    the possibly under- or overflowing factor.
    """
    arrs = np.broadcast_arrays(np.asarray(z, dtype=float),
                               *[np.asarray(p, dtype=float) for p in a],
                               *[np.asarray(p, dtype=float) for p in b],
                               np.asarray(0.0 if log_scale is None else log_scale, dtype=float))
    shape = arrs[0].shape
    flat = [np.ascontiguousarray(v, dtype=float).reshape(-1) for v in arrs]
    z = flat[0]
    pa = flat[1:1 + len(a)]
    pb = flat[1 + len(a):1 + len(a) + len(b)]
    scale = flat[-1].copy()
    if any(np.any(_nonpos_int(p)) for p in pb):
        raise PoleError("lower hypergeometric parameter is a non-positive integer")
    size = z.size
    total = np.ones(size)
    comp = np.zeros(size)
    term = np.ones(size)
    big = np.ones(size)
    # ratios are monotone once n exceeds every parameter magnitude
    n_min = np.zeros(size)
    for p in pa + pb:
        n_min = np.maximum(n_min, np.ceil(np.abs(p)) + 1.0)
    n_min = np.maximum(n_min, np.ceil(np.abs(z)) if len(pa) <= len(pb) else n_min)
    active = np.arange(size)
    done_terms = 0
    for n in range(ctl.max_terms):
        if active.size == 0:
            break
        zz = z[active]
        ratio = zz / (n + 1.0)
        for p in pa:
            ratio = ratio * (p[active] + n)
        for p in pb:
            ratio = ratio / (p[active] + n)
        t = term[active] * ratio
        s = total[active]
        new = s + t
        comp[active] += np.where(np.abs(s) >= np.abs(t), (s - new) + t, (t - new) + s)
        total[active] = new
        term[active] = t
        at = np.abs(t)
        big[active] = np.maximum(big[active], at)
        huge = at > 1e150
        if np.any(huge):
            idx = active[huge]
            for arr in (term, total, comp, big):
                arr[idx] *= 1e-150
            scale[idx] += 150.0 * math.log(10.0)
        # next ratio bounds the remainder once ratios are decreasing
        nxt = np.abs(zz) / (n + 2.0)
        for p in pa:
            nxt = nxt * np.abs(p[active] + n + 1)
        for p in pb:
            nxt = nxt / np.abs(p[active] + n + 1)
        with np.errstate(divide="ignore"):
            rem = np.where(nxt < 1.0, np.abs(term[active]) * nxt / (1.0 - nxt), np.inf)
        mag = np.abs(total[active] + comp[active])
        conv = (t == 0.0) | ((n + 1 >= n_min[active]) & (
            (rem <= ctl.rel_tol * mag) | (rem <= 1e-17 * big[active])))
        done_terms = n + 1
        if np.any(conv):
            active = active[~conv]
    if active.size:
        raise SeriesConvergenceError(
            f"series not converged after {ctl.max_terms} terms "
            f"(z = {z[active[0]]:g})")
    val = total + comp
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        canc = big / np.abs(val)
        val = val * np.exp(scale)
    return val.reshape(shape), canc.reshape(shape), done_terms


def hyp_pfq(a, b, z, ctl: SeriesControl | None = None, full_output=False):
    """Generalized hypergeometric series pFq(a; b; z) by direct summation.

    a, b are sequences of parameters, each a scalar or an array that
    broadcasts against z. Convergent for p <= q and any z, or p = q + 1 and
    |z| < 1. With full_output, returns (value, SeriesInfo).
    """
    ctl = ctl or DEFAULT_SERIES
    a, b = list(a), list(b)
    scalar = _is_scalar(z, *a, *b)
    p, q = len(a), len(b)
    if p > q + 1:
        raise ValueError("pFq series diverges for p > q + 1 unless it terminates")
    if p == q + 1 and np.any(np.abs(z) >= 1) and not any(np.all(_nonpos_int(x)) for x in a):
        raise ValueError("pFq with p = q + 1 requires |z| < 1")
    val, canc, nterms = _sum_series(a, b, z, ctl)
    if full_output:
        info = SeriesInfo(nterms, canc, bool(np.any(canc > ctl.cancellation_guard)))
        return _out(val, scalar), info
    return _out(val, scalar)


def hyp0f1(b, z, ctl=None):
    return hyp_pfq([], [b], z, ctl)


def hyp1f1(a, b, z, ctl=None):
    """Confluent 1F1(a; b; z); Kummer's transformation for z < 0."""
    ctl = ctl or DEFAULT_SERIES
    scalar = _is_scalar(a, b, z)
    a, b, z = (np.asarray(v, dtype=float) for v in np.broadcast_arrays(a, b, z))
    out = np.empty(z.shape)
    neg = z < 0
    if np.any(neg):
        out[neg], _, _ = _sum_series([b[neg] - a[neg]], [b[neg]], -z[neg], ctl,
                                     log_scale=z[neg])
    if np.any(~neg):
        out[~neg], _, _ = _sum_series([a[~neg]], [b[~neg]], z[~neg], ctl)
    return _out(out, scalar)


HYP1F2_RELIABLE_Z = -2000.0


def hyp1f2(a, b1, b2, z, ctl=None, full_output=False):
    """1F2(a; b1, b2; z) by direct summation.

    Below z = -2000 the alternating terms cancel enough to cost digits; an
    AccuracyWarning is issued and the SeriesInfo (full_output) flags it.
    """
    if np.any(np.asarray(z) < HYP1F2_RELIABLE_Z):
        warnings.warn(f"1F2 summed for z < {HYP1F2_RELIABLE_Z:g}; expect cancellation loss",
                      AccuracyWarning, stacklevel=2)
    return hyp_pfq([a], [b1, b2], z, ctl, full_output=full_output)


# Chebyshev nodes for interpolation in the excess parameter near integers
_BAND = 1e-3
# freezing the excess to the integer costs O(distance) relative accuracy, so
# the logarithmic formulas only take (numerically) exact integers
_LOG_CASE = 1e-14
_INTERP_HALFWIDTH = 0.02
_INTERP_N = 10
_CHEB_T = np.cos((2 * np.arange(_INTERP_N) + 1) * np.pi / (2 * _INTERP_N))
_CHEB_W = ((-1.0) ** np.arange(_INTERP_N)) * np.sin(
    (2 * np.arange(_INTERP_N) + 1) * np.pi / (2 * _INTERP_N))


def _connection(a, b, c, w, ctl):
    """2F1 on 0 < w < 1 through the 1 - w connection, c - a - b not integer."""
    m = c - a - b
    y = 1.0 - w
    f1, _, _ = _sum_series([a, b], [1.0 - m], y, ctl)
    f2, _, _ = _sum_series([c - a, c - b], [1.0 + m], y, ctl)
    g1 = gamma(c) * gamma(m) * recip_gamma(c - a) * recip_gamma(c - b)
    g2 = gamma(c) * gamma(-m) * recip_gamma(a) * recip_gamma(b)
    return g1 * f1 + g2 * y ** m * f2


def _log_case_nonneg(a, b, m, w, ctl):
    """2F1(a, b; a + b + m; w) for integer m >= 0 and 0 < w < 1."""
    y = 1.0 - w
    c = a + b + m
    gc = gamma(c)
    finite = np.zeros_like(w)
    if m > 0:
        coef = recip_gamma(a + m) * recip_gamma(b + m)
        pa = np.ones_like(w)
        for k in range(m):
            finite += pa * math.factorial(m - k - 1) / math.factorial(k) * (-y) ** k
            pa = pa * (a + k) * (b + k)
        finite *= coef
    lny = np.log(y)
    series = np.zeros_like(w)
    comp = np.zeros_like(w)
    t = np.ones_like(w) / math.factorial(m)
    for k in range(ctl.max_terms):
        bracket = lny - digamma(np.full_like(w, k + 1.0)) - digamma(np.full_like(w, k + m + 1.0)) \
            + digamma(a + k + m) + digamma(b + k + m)
        inc = t * bracket
        new = series + inc
        comp += np.where(np.abs(series) >= np.abs(inc), (series - new) + inc, (inc - new) + series)
        series = new
        t = t * (a + m + k) * (b + m + k) / ((k + 1.0) * (k + m + 1.0)) * y
        if k > 5 and np.all(np.abs(t) * (np.abs(lny) + 10 + math.log(k + m + 2)) / (1 - y)
                            <= ctl.rel_tol * np.maximum(np.abs(series + comp), 1e-300)):
            break
    else:
        raise SeriesConvergenceError("logarithmic 2F1 series did not converge")
    tail = (-y) ** m * recip_gamma(a) * recip_gamma(b) * (series + comp)
    return gc * (finite - tail)


def _log_case(a, b, c, w, m, ctl):
    if m >= 0:
        return _log_case_nonneg(a, b, m, w, ctl)
    # Euler transformation maps excess -m to +m
    return (1.0 - w) ** m * _log_case_nonneg(c - a, c - b, -m, w, ctl)


def _hyp2f1_unit(a, b, c, w, ctl):
    """2F1 for 0 <= w < 1 (flat arrays)."""
    out = np.empty_like(w)
    poly = _nonpos_int(a) | _nonpos_int(b)
    direct = poly | (w <= 0.9)
    if np.any(direct):
        out[direct], _, _ = _sum_series([a[direct], b[direct]], [c[direct]], w[direct], ctl)
    rest = ~direct
    if not np.any(rest):
        return out
    m = c - a - b
    mi = np.round(m)
    dist = np.abs(m - mi)
    plain = rest & (dist >= _BAND)
    if np.any(plain):
        out[plain] = _connection(a[plain], b[plain], c[plain], w[plain], ctl)
    logc = rest & (dist < _LOG_CASE)
    for mval in np.unique(mi[logc]):
        sel = logc & (mi == mval)
        out[sel] = _log_case(a[sel], b[sel], c[sel], w[sel], int(mval), ctl)
    band = rest & (dist >= _LOG_CASE) & (dist < _BAND)
    if np.any(band):
        # F is entire in a; sample it where the excess c - a - b sits on
        # Chebyshev nodes around the integer and interpolate back.
        ab, bb, cb, wb = a[band], b[band], c[band], w[band]
        t0 = (m[band] - mi[band]) / _INTERP_HALFWIDTH
        num = np.zeros_like(wb)
        den = np.zeros_like(wb)
        for tj, wj in zip(_CHEB_T, _CHEB_W):
            mj = mi[band] + _INTERP_HALFWIDTH * tj
            fj = _connection(cb - bb - mj, bb, cb, wb, ctl)
            q = wj / (t0 - tj)
            num += q * fj
            den += q
        out[band] = num / den
    return out


def hyp2f1(a, b, c, z, ctl=None):
    """Gauss 2F1(a, b; c; z) for real z < 1.

    z < 0 goes through the Pfaff transformation, 0.9 < w < 1 through the
    connection formula at 1 - w. Near-integer c - a - b uses the logarithmic
    formulas (distance < 1e-14) or interpolation in a (distance < 1e-3).
    Polynomial cases (a or b a non-positive integer) are summed exactly.
    """
    ctl = ctl or DEFAULT_SERIES
    scalar = _is_scalar(a, b, c, z)
    shape = np.broadcast_shapes(*(np.shape(v) for v in (a, b, c, z)))
    a, b, c, z = (np.ascontiguousarray(v, dtype=float).reshape(-1)
                  for v in np.broadcast_arrays(a, b, c, z))
    if np.any(z >= 1):
        raise ValueError("hyp2f1 is implemented for z < 1")
    if np.any(_nonpos_int(c)):
        raise PoleError("2F1 lower parameter is a non-positive integer")
    ia, ib = _nonpos_int(a), _nonpos_int(b)
    neg = z < 0
    keep_b = ib & ~ia
    pref = np.ones_like(z)
    A, B, W = a.copy(), b.copy(), z.copy()
    sel = neg & ~keep_b
    # Pfaff: F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1))
    pref[sel] = (1.0 - z[sel]) ** (-a[sel])
    B[sel] = c[sel] - b[sel]
    W[sel] = z[sel] / (z[sel] - 1.0)
    sel = neg & keep_b
    pref[sel] = (1.0 - z[sel]) ** (-b[sel])
    A[sel] = c[sel] - a[sel]
    W[sel] = z[sel] / (z[sel] - 1.0)
    val = pref * _hyp2f1_unit(A, B, c, W, ctl)
    return _out(val.reshape(shape), scalar)


def hyp(a, b, z, ctl=None):
    """Dispatch pFq to the most robust routine for the parameter counts."""
    a, b = list(a), list(b)
    p, q = len(a), len(b)
    if (p, q) == (0, 0):
        return np.exp(z)
    if (p, q) == (1, 0):
        return (1.0 - np.asarray(z, dtype=float)) ** (-np.asarray(a[0], dtype=float))
    if (p, q) == (1, 1):
        return hyp1f1(a[0], b[0], z, ctl)
    if (p, q) == (2, 1):
        return hyp2f1(a[0], a[1], b[0], z, ctl)
    return hyp_pfq(a, b, z, ctl)


def bessel_j(nu, x, ctl=None):
    """J_nu(x) for x >= 0 from its 0F1 series (accurate for moderate x)."""
    scalar = _is_scalar(nu, x)
    nu, x = np.broadcast_arrays(np.asarray(nu, dtype=float), np.asarray(x, dtype=float))
    f = hyp_pfq([], [nu + 1.0], -0.25 * x * x, ctl)
    with np.errstate(divide="ignore", invalid="ignore"):
        pre = np.where(x == 0, np.where(nu == 0, 1.0, 0.0), (0.5 * x) ** nu)
    return _out(pre * recip_gamma(nu + 1.0) * f, scalar)
