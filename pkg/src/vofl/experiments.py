"""Experiment drivers: operator approximation tables, Poisson table, wave,
channel diffusion and Allen-Cahn runs, special-function and oracle checks."""
from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import linalg

from . import specfun as sf
from .benchmarks import example1_pair, example2_pair, poisson_pair
from .collocation import (_factor, assemble_interp, assemble_poisson, differentiation_operator,
                          evaluate, operator_rows, solve_dense)
from .errors import ConfigError
from .exterior import (ZERO, Data, QuadratureControl, exterior_data_vectors,
                       exterior_kernel_matrices)
from .geometry import (ExponentField, affine, blend, box, constant, field_from_spec, interval,
                       nodes_with_spacing, notched_channel, uniform_nodes)
from .kernels import FAMILIES, c_norm, default_kernel, kernel_value, psi_value
from .timestep import (EvolutionRun, Snapshots, crank_nicolson, rk4_allen_cahn, spectral_radius,
                       wave_central)

FORMAT_VERSION = "1"
COLUMNS = ("experiment", "alpha_spec", "N_bar", "epsilon", "rms", "seconds")
EXPERIMENTS = ("approx_example1", "approx_example2", "poisson", "wave", "diffusion",
               "allen_cahn", "specfun_eval", "verify_oracle")

FIELD_ALIASES = {
    "channel_blend": lambda: blend(2.0, 1.4, -0.5, 0.5),
    "ac_ramp": lambda: affine(1.5, [0.5, 0.0]),
}

_CATALOG_FIELDS = ["alpha1", "alpha2", "alpha3", "alpha4", "alpha5"]
DEFAULTS: dict[str, dict[str, Any]] = {
    "approx_example1": dict(epsilon=1.0, nbar=[5, 9, 17, 33],
                            alphas=_CATALOG_FIELDS + [0.4, 1.0, 2.0]),
    "approx_example2": dict(epsilon=1.0, nbar=[5, 9, 17, 33],
                            alphas=_CATALOG_FIELDS + [0.4, 1.0, 1.5]),
    "poisson": dict(epsilon=2.0, nbar=[5, 9, 17, 33, 65],
                    alphas=_CATALOG_FIELDS + [0.4, 1.0, 2.0]),
    "wave": dict(epsilon=2.0, nbar=[641], alphas=[2.0, 1.2], tau=1e-3, t_end=5.0,
                 snapshot_times=[0.0, 2.5, 5.0]),
    "diffusion": dict(epsilon=2.0, nbar=[], alphas=[2.0, 1.4, "channel_blend"], tau=1e-3,
                      t_end=1.0, snapshot_times=[0.0, 0.1, 0.5, 1.0]),
    "allen_cahn": dict(epsilon=2.0, nbar=[256], alphas=[1.5, "ac_ramp"], tau=1e-3,
                       t_end=0.05, snapshot_times=[0.0, 0.008, 0.015, 0.05]),
    "specfun_eval": dict(epsilon=1.0, nbar=[], alphas=[]),
    "verify_oracle": dict(epsilon=1.0, nbar=[], alphas=[0.4, 1.0, 1.5]),
}


@dataclass
class RunConfig:
    """One experiment run. Fields left as None take the experiment's default."""

    experiment: str
    kernel: str = "gimq"
    epsilon: float | None = None
    beta: float | None = None
    m: float | None = None
    nbar: list | None = None
    alphas: list | None = None
    K: int = 1000
    k_sensitivity: bool = False
    quad_rel_tol: float = 1e-10
    quad_abs_tol: float = 1e-13
    tau: float | None = None
    t_end: float | None = None
    snapshot_times: list | None = None
    c: float = 0.2
    a: float = 3.0
    b: float = 0.6
    half_length: float = 20.0
    kappa: float = 0.5
    grid_spacing: float = 0.125
    delta: float = 0.1
    function: str | None = None
    args: list = field(default_factory=list)
    samples: int = 30
    seed: int = 0
    out: str | None = None

    def resolved(self) -> "RunConfig":
        """Copy with experiment defaults filled in and every field validated."""
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"config.experiment: unknown experiment {self.experiment!r}; "
                              f"choose from {', '.join(EXPERIMENTS)}")
        d = DEFAULTS[self.experiment]
        cfg = dataclasses.replace(self)
        for key, val in d.items():
            if getattr(cfg, key) is None:
                setattr(cfg, key, list(val) if isinstance(val, list) else val)
        cfg.validate()
        return cfg

    def validate(self):
        if self.kernel not in FAMILIES:
            raise ConfigError(f"config.kernel: unknown family {self.kernel!r}")
        if not (isinstance(self.epsilon, (int, float)) and self.epsilon > 0):
            raise ConfigError("config.epsilon: shape parameter must be positive")
        for i, n in enumerate(self.nbar or []):
            if not (isinstance(n, int) and n >= 2):
                raise ConfigError(f"config.nbar[{i}]: node count must be an integer >= 2")
        for i, spec in enumerate(self.alphas or []):
            try:
                f = make_field(spec)
            except ConfigError as exc:
                raise ConfigError(f"config.alphas[{i}]: {exc}") from None
            if f.is_constant and not 0 < f.params["value"] <= 2:
                raise ConfigError(f"config.alphas[{i}]: constant exponent must lie in (0, 2]")
        if not (isinstance(self.K, int) and self.K >= 1):
            raise ConfigError("config.K: need at least one interpolation point")
        if not (self.quad_rel_tol > 0 and self.quad_abs_tol > 0):
            raise ConfigError("config.quad_rel_tol/quad_abs_tol: tolerances must be positive")
        if self.tau is not None and not self.tau > 0:
            raise ConfigError("config.tau: time step must be positive")
        if self.t_end is not None and not self.t_end >= 0:
            raise ConfigError("config.t_end: final time must be non-negative")
        for name in ("c", "half_length", "grid_spacing", "delta"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"config.{name}: must be positive")
        if self.kappa < 0:
            raise ConfigError("config.kappa: diffusion coefficient must be non-negative")
        if self.experiment == "allen_cahn":
            for i, n in enumerate(self.nbar):
                if round(math.sqrt(n)) ** 2 != n:
                    raise ConfigError(f"config.nbar[{i}]: square grid needs a perfect square")
        if self.experiment == "diffusion" and self.nbar:
            raise ConfigError("config.nbar: the channel grid is set by grid_spacing")
        if self.experiment == "specfun_eval":
            if self.function not in SPECFUN_TABLE:
                raise ConfigError(f"config.function: choose from {', '.join(SPECFUN_TABLE)}")
            try:
                [float(v) for v in self.args]
            except (TypeError, ValueError):
                raise ConfigError("config.args: numeric arguments expected") from None
        if self.tau is not None and self.t_end is not None and self.snapshot_times:
            steps = self.t_end / self.tau
            for i, t in enumerate(self.snapshot_times):
                n = t / self.tau
                if abs(n - round(n)) > 1e-9 or n > steps + 1e-9 or n < 0:
                    raise ConfigError(f"config.snapshot_times[{i}]: {t} is not on the step grid")
        if self.samples < 1:
            raise ConfigError("config.samples: need at least one sample")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - names)
        if unknown:
            raise ConfigError(f"config.{unknown[0]}: unknown field")
        if "experiment" not in data:
            raise ConfigError("config.experiment: required")
        return cls(**data)

    def quad(self) -> QuadratureControl:
        return QuadratureControl(rel_tol=self.quad_rel_tol, abs_tol=self.quad_abs_tol)

    def kernel_for(self, d: int):
        return default_kernel(self.kernel, self.epsilon, d, beta=self.beta, m=self.m)


def make_field(spec) -> ExponentField:
    if isinstance(spec, str) and spec in FIELD_ALIASES:
        f = FIELD_ALIASES[spec]()
        f.label = spec
        return f
    f = field_from_spec(spec)
    if not f.label:
        f.label = str(spec)
    return f


def alpha_label(spec) -> str:
    if isinstance(spec, dict):
        return spec.get("label") or spec.get("kind", "custom")
    return str(spec)


@dataclass
class ResultTable:
    rows: list
    meta: dict = field(default_factory=dict)
    snapshots: list = field(default_factory=list)
    format_version: str = FORMAT_VERSION


def _row(exp, spec, nbar, eps, rms, seconds):
    return {"experiment": exp, "alpha_spec": alpha_label(spec), "N_bar": nbar,
            "epsilon": eps, "rms": rms, "seconds": seconds}


def interpolation_points(K: int, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
    """K equispaced points strictly inside (lo, hi)."""
    return np.linspace(lo, hi, K + 2)[1:-1]


def rms_error(reference, numeric, points=None) -> float:
    """sqrt(mean |ref - num|^2); reference may be an array or a callable of points."""
    num = np.asarray(numeric, dtype=float)
    ref = reference(points) if callable(reference) else reference
    ref = np.asarray(ref, dtype=float)
    if num.size == 0:
        raise ValueError("need at least one point")
    return float(np.sqrt(np.mean((ref - num) ** 2)))


# ------------------------------------------------------------- 1-D tables


def approximation_errors(pair, fields, nbars, k, K=1000, ctl=None, dom=None):
    """RMS of the discrete operator applied to the interpolant of u.

    Coefficients come from interpolating u at the nodes; the operator is
    evaluated at K interior points with u itself as exterior data. Returns
    an array (len(nbars), len(fields)) and the per-N_bar wall times.
    """
    dom = dom or interval()
    ctl = ctl or QuadratureControl()
    xl = interpolation_points(K, dom.lo[0], dom.hi[0])
    alphas = [f.validate(xl, 1) for f in fields]
    exact = [pair.vo_lap(xl, a) for a in alphas]
    frac = [i for i, a in enumerate(alphas) if np.any(a < 2.0)]
    if pair.support == "global":
        g = Data(func=pair.u, period=pair.meta.get("period"))
    else:
        g = ZERO
    D = [np.zeros(K) for _ in fields]
    if frac:
        vals = exterior_data_vectors(dom, g, xl, [alphas[i] for i in frac], ctl)
        for i, v in zip(frac, vals):
            D[i] = v
    out = np.empty((len(nbars), len(fields)))
    secs = []
    for j, nb in enumerate(nbars):
        t0 = time.perf_counter()
        ns = uniform_nodes(dom, nb)
        lu, _ = _factor(assemble_interp(ns, k))
        lam = linalg.lu_solve(lu, pair.u(ns.points))
        E = [None] * len(fields)
        if frac:
            mats = exterior_kernel_matrices(dom, k, ns.points, xl, [alphas[i] for i in frac], ctl)
            for i, M in zip(frac, mats):
                E[i] = M
        for i, a in enumerate(alphas):
            rows = operator_rows(k, 1, ns.points, xl, a, E[i])
            approx = rows @ lam - c_norm(1, a) * D[i]
            out[j, i] = rms_error(exact[i], approx)
        secs.append(time.perf_counter() - t0)
    return out, secs


def poisson_errors(pair, fields, nbars, k, K=1000, ctl=None, dom=None):
    """RMS of the collocation solution of the Poisson problem with u = 0 outside."""
    dom = dom or interval()
    ctl = ctl or QuadratureControl()
    xl = interpolation_points(K, dom.lo[0], dom.hi[0])
    ref = pair.u(xl)
    out = np.empty((len(nbars), len(fields)))
    secs = []
    for j, nb in enumerate(nbars):
        t0 = time.perf_counter()
        ns = uniform_nodes(dom, nb)
        for i, f in enumerate(fields):
            rhs = (lambda x, f=f: pair.vo_lap(x, f(x, 1)))
            sol = solve_dense(assemble_poisson(ns, k, f, dom, rhs, ZERO, ctl))
            out[j, i] = rms_error(ref, evaluate(sol, xl))
        secs.append(time.perf_counter() - t0)
    return out, secs


def _table(cfg: RunConfig, errors_fn, pair) -> ResultTable:
    fields = [make_field(s) for s in cfg.alphas]
    k = cfg.kernel_for(1)
    err, secs = errors_fn(pair, fields, cfg.nbar, k, cfg.K, cfg.quad())
    rows = [_row(cfg.experiment, s, nb, cfg.epsilon, float(err[j, i]), secs[j] / len(fields))
            for j, nb in enumerate(cfg.nbar) for i, s in enumerate(cfg.alphas)]
    meta = {"K": cfg.K, "interpolation_points": "equispaced, endpoints excluded"}
    if cfg.k_sensitivity:
        err2, _ = errors_fn(pair, fields, cfg.nbar, k, 2 * cfg.K, cfg.quad())
        drift = np.abs(err2 - err) / np.maximum(err, 1e-300)
        meta["k_sensitivity"] = {"K": 2 * cfg.K, "max_relative_drift": float(drift.max()),
                                 "within_1_percent": bool(drift.max() < 0.01)}
    return ResultTable(rows, meta)


# ------------------------------------------------------------- evolutions


def _steps(cfg, t):
    return int(round(t / cfg.tau))


def wave_problem(cfg: RunConfig, f: ExponentField, nbar: int | None = None):
    """Operator, interior nodes and initial data of the soliton wave test."""
    L = cfg.half_length
    dom = interval(-L, L)
    ns = uniform_nodes(dom, nbar or cfg.nbar[0])
    op = differentiation_operator(ns, cfg.kernel_for(1), f, dom, None, cfg.quad())
    x = ns.interior[:, 0]
    s = cfg.a * (x + 2.0)
    u0 = 1.0 / np.cosh(s)
    v0 = cfg.b * u0 * np.tanh(s)
    return ns, op, u0, v0


def wave_exact(cfg: RunConfig, x, t):
    return 1.0 / np.cosh(cfg.a * (np.asarray(x) + 2.0) - cfg.b * t)


def run_wave(cfg: RunConfig, f: ExponentField, problem=None, tau=None, t_end=None,
             snapshot_times=None):
    ns, op, u0, v0 = problem or wave_problem(cfg, f)
    tau = tau or cfg.tau
    t_end = cfg.t_end if t_end is None else t_end
    n = int(round(t_end / tau))
    times = cfg.snapshot_times if snapshot_times is None else snapshot_times
    snaps = sorted({int(round(t / tau)) for t in times} | {n})
    run = EvolutionRun(op, u0, tau, n, snaps, {"c": cfg.c}, v0=v0)
    return ns, op, wave_central(run)


def trailing_energy(points, u, center, offset=1.0) -> float:
    """Sum of u^2 over nodes behind the pulse, x < center - offset."""
    return float(np.sum(np.asarray(u)[np.asarray(points) < center - offset] ** 2))


def channel_problem(cfg: RunConfig, f: ExponentField):
    dom = notched_channel()
    ns = nodes_with_spacing(dom, cfg.grid_spacing)
    op = differentiation_operator(ns, cfg.kernel_for(2), f, dom, None, cfg.quad())
    xi = ns.interior
    u0 = ((np.abs(xi[:, 0]) <= 0.5) & (np.abs(xi[:, 1]) <= 0.5)).astype(float)
    return ns, op, u0


def mirror_index(points) -> np.ndarray:
    """Index of the node reflected through x = 0 (grids symmetric in x)."""
    pts = np.asarray(points)
    key = {(round(p[0], 9), round(p[1], 9)): i for i, p in enumerate(pts)}
    try:
        return np.array([key[(round(-p[0], 9), round(p[1], 9))] for p in pts])
    except KeyError:
        raise ValueError("node set is not symmetric under x -> -x") from None


def run_diffusion(cfg: RunConfig, f: ExponentField, problem=None):
    """Crank-Nicolson run recording mass, max-norm and x-asymmetry every step."""
    ns, op, u0 = problem or channel_problem(cfg, f)
    mirror = mirror_index(ns.interior)
    vol = ns.cell_volume

    def monitor(n, u):
        return (float(np.sum(u) * vol), float(np.max(np.abs(u))),
                float(np.sum(np.abs(u - u[mirror]))))

    n = _steps(cfg, cfg.t_end)
    snaps = sorted({_steps(cfg, t) for t in cfg.snapshot_times} | {n})
    run = EvolutionRun(op, u0, cfg.tau, n, snaps, {"kappa": cfg.kappa}, monitor=monitor)
    return ns, op, crank_nicolson(run)


BUBBLE_CENTERS = ((0.38, 0.38), (0.62, 0.62))
BUBBLE_RADIUS = 0.12


def allen_cahn_problem(cfg: RunConfig, f: ExponentField, nbar: int | None = None):
    n = int(round(math.sqrt(nbar or cfg.nbar[0])))
    dom = box((0.0, 0.0), (1.0, 1.0))
    ns = uniform_nodes(dom, n)
    op = differentiation_operator(ns, cfg.kernel_for(2), f, dom, Data(constant=-1.0), cfg.quad())
    xi = ns.interior
    u0 = 1.0
    for c in BUBBLE_CENTERS:
        u0 = u0 - np.tanh((np.linalg.norm(xi - c, axis=1) - BUBBLE_RADIUS) / cfg.delta)
    return ns, op, u0


def run_allen_cahn(cfg: RunConfig, f: ExponentField, problem=None, tau=None, t_end=None):
    """RK4 run recording the largest value on each side of x + y = 1 and the range."""
    ns, op, u0 = problem or allen_cahn_problem(cfg, f)
    tau = tau or cfg.tau
    t_end = cfg.t_end if t_end is None else t_end
    s = ns.interior.sum(axis=1)
    left, right = s < 1.0, s > 1.0

    def monitor(n, u):
        return (float(u[left].max()), float(u[right].max()), float(u.min()), float(u.max()))

    n = int(round(t_end / tau))
    snaps = sorted({int(round(t / tau)) for t in cfg.snapshot_times if t <= t_end} | {n})
    run = EvolutionRun(op, u0, tau, n, snaps, {"delta": cfg.delta}, monitor=monitor)
    return ns, op, rk4_allen_cahn(run)


def first_negative_time(values, tau) -> float:
    """Time of the first recorded step at which the value is below zero (inf if never)."""
    v = np.asarray(values)
    hit = np.nonzero(v < 0)[0]
    return float(hit[0] * tau) if len(hit) else math.inf


def _snapshot_rows(ns, snaps: Snapshots, label):
    rows = []
    for t, state in zip(snaps.times, snaps.states):
        for p, v in zip(ns.points, state):
            rows.append((label, float(t), *map(float, p), float(v)))
    return rows


def _evolution(cfg: RunConfig) -> ResultTable:
    rows, meta, snap_rows = [], {"runs": []}, []
    for spec in cfg.alphas:
        f = make_field(spec)
        t0 = time.perf_counter()
        diag: dict[str, Any] = {"alpha_spec": alpha_label(spec)}
        rms = float("nan")
        if cfg.experiment == "wave":
            ns, op, snaps = run_wave(cfg, f)
            final = snaps.states[-1]
            x = ns.points[:, 0]
            if f.is_constant and f.params["value"] == 2.0:
                rms = rms_error(wave_exact(cfg, x[~ns.boundary], cfg.t_end), final[~ns.boundary])
            diag["trailing_energy"] = trailing_energy(x, final, -2.0 + cfg.c * cfg.t_end)
        elif cfg.experiment == "diffusion":
            ns, op, snaps = run_diffusion(cfg, f)
            mon = np.array(snaps.monitor)
            diag.update(mass_strictly_decreasing=bool(np.all(np.diff(mon[:, 0]) < 0)),
                        final_max_norm=float(mon[-1, 1]), final_asymmetry=float(mon[-1, 2]))
        else:
            ns, op, snaps = run_allen_cahn(cfg, f)
            mon = np.array(snaps.monitor)
            diag.update(left_vanishes=first_negative_time(mon[:, 0], cfg.tau),
                        right_vanishes=first_negative_time(mon[:, 1], cfg.tau),
                        min_value=float(mon[:, 2].min()), max_value=float(mon[:, 3].max()))
        diag.update(N_bar=ns.n_total, interior=ns.n_interior, spectral_radius=spectral_radius(op),
                    condition=op.cond)
        meta["runs"].append(diag)
        rows.append(_row(cfg.experiment, spec, ns.n_total, cfg.epsilon, rms,
                         time.perf_counter() - t0))
        snap_rows += _snapshot_rows(ns, snaps, alpha_label(spec))
    return ResultTable(rows, meta, snap_rows)


# ------------------------------------------------------------- checks


SPECFUN_TABLE = {
    "hyp0f1": (lambda b, z: sf.hyp0f1(b, z), 1, 1),
    "hyp1f1": (lambda a, b, z: sf.hyp1f1(a, b, z), 1, 1),
    "hyp1f2": (lambda a, b1, b2, z: sf.hyp1f2(a, b1, b2, z), 1, 2),
    "hyp2f1": (lambda a, b, c, z: sf.hyp2f1(a, b, c, z), 2, 1),
    "gamma": (lambda x: sf.gamma(x), None, None),
    "ln_gamma": (lambda x: sf.ln_gamma(x), None, None),
}


def specfun_value(name: str, args):
    fn, p, q = SPECFUN_TABLE[name]
    return float(fn(*[float(v) for v in args]))


def specfun_reference(name: str, args, digits: int = 30) -> float:
    from . import oracle
    args = [float(v) for v in args]
    _, p, q = SPECFUN_TABLE[name]
    if name == "gamma":
        return float(oracle.highprec_gamma(args[0], digits))
    if name == "ln_gamma":
        return float(oracle.highprec_lngamma(args[0], digits))
    return float(oracle.highprec_pfq(args[:p], args[p:p + q], args[-1], digits))


def _specfun(cfg: RunConfig) -> ResultTable:
    nargs = {"hyp0f1": 2, "hyp1f1": 3, "hyp1f2": 4, "hyp2f1": 4, "gamma": 1, "ln_gamma": 1}
    if len(cfg.args) != nargs[cfg.function]:
        raise ConfigError(f"config.args: {cfg.function} takes {nargs[cfg.function]} arguments")
    t0 = time.perf_counter()
    val = specfun_value(cfg.function, cfg.args)
    ref = specfun_reference(cfg.function, cfg.args)
    rel = abs(val - ref) / max(abs(ref), 1e-300)
    row = _row(cfg.experiment, "", "", cfg.epsilon, rel, time.perf_counter() - t0)
    return ResultTable([row], {"function": cfg.function, "args": list(cfg.args),
                               "value": val, "reference": ref, "relative_error": rel})


def oracle_samples(n: int, seed: int, alphas=(0.4, 1.0, 1.5)):
    """Seeded (family, alpha, epsilon, r) draws for the quadrature cross-check."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        fam = FAMILIES[i % len(FAMILIES)]
        out.append((fam, float(rng.choice(alphas)), float(rng.uniform(0.5, 3.0)),
                    float(rng.uniform(0.0, 3.0))))
    return out


def oracle_discrepancy(family, alpha, eps, r):
    """Relative gap between the closed form and direct quadrature of the integral."""
    from .oracle import pv_vo_laplacian_1d
    k = default_kernel(family, eps, 1)

    def u(y):
        return float(kernel_value(k, np.abs(np.array([y])))[0])

    period = 2.0 * math.pi / eps if family == "bessel" else None
    ref = pv_vo_laplacian_1d(u, r, alpha, period=period)
    val = float(psi_value(k, 1, alpha, np.array([r]))[0])
    return val, ref, abs(val - ref) / abs(ref)


def _verify_oracle(cfg: RunConfig) -> ResultTable:
    rows, checks = [], []
    for fam, al, eps, r in oracle_samples(cfg.samples, cfg.seed, tuple(cfg.alphas)):
        t0 = time.perf_counter()
        val, ref, rel = oracle_discrepancy(fam, al, eps, r)
        rows.append(_row(cfg.experiment, al, "", eps, rel, time.perf_counter() - t0))
        checks.append({"family": fam, "alpha": al, "epsilon": eps, "r": r,
                       "closed_form": val, "quadrature": ref})
    return ResultTable(rows, {"samples": checks})


def run(cfg: RunConfig) -> ResultTable:
    """Execute a validated configuration."""
    cfg = cfg.resolved()
    exp = cfg.experiment
    if exp == "approx_example1":
        table = _table(cfg, approximation_errors, example1_pair())
    elif exp == "approx_example2":
        table = _table(cfg, approximation_errors, example2_pair())
    elif exp == "poisson":
        table = _table(cfg, poisson_errors, poisson_pair())
    elif exp in ("wave", "diffusion", "allen_cahn"):
        table = _evolution(cfg)
    elif exp == "specfun_eval":
        table = _specfun(cfg)
    else:
        table = _verify_oracle(cfg)
    table.meta["config"] = dataclasses.asdict(cfg)
    table.meta["quadrature"] = dataclasses.asdict(cfg.quad())
    table.meta["series"] = dataclasses.asdict(sf.DEFAULT_SERIES)
    return table
