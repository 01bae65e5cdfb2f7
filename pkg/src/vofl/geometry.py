"""Domains, collocation node sets and variable exponent fields."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .benchmarks import as_points
from .errors import ConfigError, DomainError

INTERIOR, BOUNDARY, EXTERIOR = 0, 1, 2


@dataclass(frozen=True)
class Domain:
    """Open axis-aligned box minus closed rectangular holes.

    Holes may extend to infinity (use +-inf bounds); a hole that touches the
    box boundary should be extended outward so that the part of the box
    wall it covers is classified as exterior.
    """

    lo: tuple
    hi: tuple
    holes: tuple = ()
    kind: str = "box"

    @property
    def d(self) -> int:
        return len(self.lo)

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(np.subtract(self.hi, self.lo)))

    @property
    def center(self) -> np.ndarray:
        return (np.asarray(self.lo) + np.asarray(self.hi)) / 2.0

    def finite_holes(self):
        """Holes clipped to the closed box (the bounded part of the exterior)."""
        out = []
        for hlo, hhi in self.holes:
            clo = np.maximum(hlo, self.lo)
            chi = np.minimum(hhi, self.hi)
            if np.all(chi > clo):
                out.append((tuple(clo), tuple(chi)))
        return out

    def classify(self, x, tol: float = 1e-12) -> np.ndarray:
        """0 interior, 1 boundary, 2 exterior for each point."""
        x = as_points(x, self.d)
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        outside = np.any((x < lo - tol) | (x > hi + tol), axis=1)
        inside_box = np.all((x > lo + tol) & (x < hi - tol), axis=1)
        in_hole = np.zeros(len(x), bool)
        near_hole = np.zeros(len(x), bool)
        for hlo, hhi in self.holes:
            hlo, hhi = np.asarray(hlo, float), np.asarray(hhi, float)
            in_hole |= np.all((x > hlo + tol) & (x < hhi - tol), axis=1)
            near_hole |= np.all((x >= hlo - tol) & (x <= hhi + tol), axis=1)
        cls = np.full(len(x), BOUNDARY)
        cls[inside_box & ~near_hole] = INTERIOR
        cls[outside | in_hole] = EXTERIOR
        return cls


def interval(a: float = -1.0, b: float = 1.0) -> Domain:
    if not a < b:
        raise DomainError("interval needs a < b")
    return Domain((float(a),), (float(b),), kind="interval")


def box(lo: Sequence[float], hi: Sequence[float]) -> Domain:
    if not np.all(np.asarray(lo) < np.asarray(hi)):
        raise DomainError("box needs lo < hi componentwise")
    return Domain(tuple(map(float, lo)), tuple(map(float, hi)), kind="box")


def notched_channel(length: float = 3.0, half_width: float = 1.0,
                    notch_half_length: float = 1.0, notch_depth: float = 0.5) -> Domain:
    """(-L, L) x (-W, W) with rectangular notches [-l, l] x [W - depth, W] cut
    from the top and bottom walls."""
    inf = math.inf
    top = half_width - notch_depth
    holes = (
        ((-notch_half_length, top), (notch_half_length, inf)),
        ((-notch_half_length, -inf), (notch_half_length, -top)),
    )
    return Domain((-length, -half_width), (length, half_width), holes, kind="notched_channel")


@dataclass
class NodeSet:
    """Collocation points in grid order with a boundary mask."""

    points: np.ndarray
    boundary: np.ndarray
    spacing: tuple = ()

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def n_total(self) -> int:
        return len(self.points)

    @property
    def n_interior(self) -> int:
        return int(np.count_nonzero(~self.boundary))

    @property
    def interior(self) -> np.ndarray:
        return self.points[~self.boundary]

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing)) if self.spacing else float("nan")


def uniform_nodes(dom: Domain, resolution) -> NodeSet:
    """Tensor grid over the bounding box, exterior points removed.

    resolution is the number of grid points per axis (an int applies to all
    axes). Interior and boundary nodes keep their grid order.
    """
    counts = np.broadcast_to(np.asarray(resolution, dtype=int), (dom.d,))
    if np.any(counts < 2):
        raise ValueError("need at least two points per axis")
    axes = [np.linspace(dom.lo[i], dom.hi[i], counts[i]) for i in range(dom.d)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.reshape(-1) for m in mesh], axis=1)
    cls = dom.classify(pts)
    keep = cls != EXTERIOR
    spacing = tuple(float(ax[1] - ax[0]) for ax in axes)
    return NodeSet(pts[keep], cls[keep] == BOUNDARY, spacing)


def nodes_with_spacing(dom: Domain, h: float) -> NodeSet:
    counts = [int(round((dom.hi[i] - dom.lo[i]) / h)) + 1 for i in range(dom.d)]
    return uniform_nodes(dom, counts)


@dataclass
class ExponentField:
    """alpha(x) with 0 < alpha <= 2 on the points where it is used."""

    kind: str
    params: dict = field(default_factory=dict)
    func: Callable | None = None
    label: str = ""

    def __call__(self, x, d: int | None = None) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim <= 1:
            x = x.reshape(-1, 1) if d in (None, 1) else x.reshape(1, -1)
        p = self.params
        ax = p.get("axis", 0)
        k = self.kind
        if k == "constant":
            return np.full(len(x), float(p["value"]))
        if k == "affine":
            slope = np.atleast_1d(np.asarray(p["slope"], dtype=float))
            return p["offset"] + x[:, :len(slope)] @ slope
        if k == "tanh":
            return p["offset"] + p["amplitude"] * np.tanh(p["rate"] * x[:, ax] + p.get("shift", 0.0))
        if k == "abs":
            return p["offset"] + p["slope"] * np.abs(x[:, ax])
        if k == "exp":
            return p["amplitude"] * np.exp(p["rate"] * x[:, ax])
        if k == "cos":
            return p["amplitude"] * np.cos(p["frequency"] * x[:, ax])
        if k == "blend":
            # constant outside [x_left, x_right], linear in between
            t = np.clip((x[:, ax] - p["x_left"]) / (p["x_right"] - p["x_left"]), 0.0, 1.0)
            return p["left"] + t * (p["right"] - p["left"])
        if k == "custom":
            return np.broadcast_to(np.asarray(self.func(x), dtype=float), (len(x),)).copy()
        raise ConfigError(f"unknown exponent field kind {k!r}")

    @property
    def is_constant(self) -> bool:
        return self.kind == "constant"

    def validate(self, x, d: int | None = None) -> np.ndarray:
        """Evaluate and require 0 < alpha <= 2; raise naming the first bad point."""
        vals = self(x, d)
        bad = ~((vals > 0) & (vals <= 2))
        if np.any(bad):
            pts = np.asarray(x, dtype=float).reshape(len(vals), -1)
            i = int(np.argmax(bad))
            raise DomainError(f"exponent {vals[i]:.6g} outside (0, 2] at x = {pts[i]}")
        return vals

    def describe(self) -> str:
        return self.label or f"{self.kind}{self.params}"


def eval_alpha(f: ExponentField, x, d: int | None = None) -> np.ndarray:
    return f.validate(x, d)


def constant(value: float) -> ExponentField:
    return ExponentField("constant", {"value": float(value)}, label=f"{value:g}")


def affine(offset: float, slope) -> ExponentField:
    return ExponentField("affine", {"offset": float(offset), "slope": slope})


def tanh_profile(offset, amplitude, rate, shift=0.0, axis=0) -> ExponentField:
    return ExponentField("tanh", dict(offset=offset, amplitude=amplitude, rate=rate,
                                      shift=shift, axis=axis))


def blend(left, right, x_left, x_right, axis=0) -> ExponentField:
    return ExponentField("blend", dict(left=left, right=right, x_left=x_left,
                                       x_right=x_right, axis=axis))


def custom(func: Callable, label: str = "custom") -> ExponentField:
    return ExponentField("custom", {}, func=func, label=label)


def named_field(name: str) -> ExponentField:
    """The five test fields alpha1..alpha5 used by the one-dimensional studies."""
    table = {
        "alpha1": ExponentField("affine", {"offset": 1.0, "slope": 1.0}, label="alpha1"),
        "alpha2": ExponentField("abs", {"offset": 1.0, "slope": -1.0}, label="alpha2"),
        "alpha3": ExponentField("exp", {"amplitude": 0.7, "rate": -1.0}, label="alpha3"),
        "alpha4": ExponentField("tanh", {"offset": 1.0, "amplitude": 1.0, "rate": 4.0,
                                         "shift": 2.0}, label="alpha4"),
        "alpha5": ExponentField("cos", {"amplitude": 1.0, "frequency": 1.0}, label="alpha5"),
    }
    if name not in table:
        raise ConfigError(f"unknown exponent field {name!r}")
    return table[name]


def field_from_spec(spec) -> ExponentField:
    """Build a field from a number, a catalog name, or a {"kind": ...} dict."""
    if isinstance(spec, ExponentField):
        return spec
    if isinstance(spec, (int, float)):
        return constant(spec)
    if isinstance(spec, str):
        try:
            return constant(float(spec))
        except ValueError:
            return named_field(spec)
    if isinstance(spec, dict):
        spec = dict(spec)
        kind = spec.pop("kind", None)
        if kind is None:
            raise ConfigError("exponent field dict needs a 'kind'")
        label = spec.pop("label", "")
        f = ExponentField(kind, spec, label=label)
        try:
            f(np.zeros((1, 2)))
        except KeyError as e:
            raise ConfigError(f"exponent field {kind!r} missing parameter {e}") from None
        return f
    raise ConfigError(f"cannot interpret exponent field {spec!r}")
