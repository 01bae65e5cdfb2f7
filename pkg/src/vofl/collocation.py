"""Dense meshfree collocation for the variable-order fractional Laplacian.

Interior rows pair the closed-form operator image of each kernel with the
complement correction; boundary rows interpolate the Dirichlet data.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import linalg
from scipy.spatial.distance import cdist

from .benchmarks import as_points
from .errors import IllConditionedWarning, SingularSystemError
from .exterior import (DEFAULT_QUAD, Data, QuadratureControl, as_data,
                       exterior_data_vectors, exterior_kernel_matrices)
from .geometry import Domain, ExponentField, NodeSet
from .kernels import RbfKernel, c_norm, kernel_value, psi_value

COND_WARN = 1e14


def _distances(a, b):
    return cdist(a, b)


def assemble_interp(nodes: NodeSet | np.ndarray, k: RbfKernel) -> np.ndarray:
    """A[k, i] = phi(|x_k - x_i|)."""
    pts = nodes.points if isinstance(nodes, NodeSet) else np.asarray(nodes, dtype=float)
    r = _distances(pts, pts)
    off = r.copy()
    np.fill_diagonal(off, np.inf)
    if len(pts) > 1 and off.min() == 0.0:
        raise ValueError("duplicate collocation nodes")
    return kernel_value(k, r)


def operator_rows(k: RbfKernel, d: int, centers, targets, alpha, E=None) -> np.ndarray:
    """psi(|x_j - c_i|) + C(alpha_j) E[j, i] for interior targets.

    E may be omitted only where alpha == 2.
    """
    centers = as_points(centers, d)
    targets = as_points(targets, d)
    alpha = np.broadcast_to(np.asarray(alpha, dtype=float), (len(targets),))
    rows = psi_value(k, d, alpha[:, None], _distances(targets, centers))
    frac = alpha < 2.0
    if np.any(frac):
        if E is None:
            raise ValueError("complement integrals required for alpha < 2")
        rows[frac] += c_norm(d, alpha[frac])[:, None] * E[frac]
    return rows


def _complement(dom, k, centers, targets, alpha, ctl):
    """Complement integrals for the rows with alpha < 2 (zeros elsewhere)."""
    E = np.zeros((len(targets), len(centers)))
    frac = alpha < 2.0
    if np.any(frac):
        E[frac] = exterior_kernel_matrices(dom, k, centers, targets[frac], alpha[frac], ctl)
    return E


def _data_term(dom, g: Data, targets, alpha, ctl):
    D = np.zeros(len(targets))
    frac = alpha < 2.0
    if np.any(frac) and not g.is_zero:
        D[frac] = exterior_data_vectors(dom, g, targets[frac], alpha[frac], ctl)
    return D


def assemble_operator(nodes: NodeSet, k: RbfKernel, afield: ExponentField, dom: Domain,
                      ctl: QuadratureControl = DEFAULT_QUAD) -> np.ndarray:
    """Square collocation matrix: operator rows at interior nodes, kernel rows
    at boundary nodes."""
    k.check_dimension(dom.d)
    pts = nodes.points
    B = assemble_interp(nodes, k)
    inner = ~nodes.boundary
    xi = pts[inner]
    alpha = afield.validate(xi, dom.d)
    E = _complement(dom, k, pts, xi, alpha, ctl)
    B[inner] = operator_rows(k, dom.d, pts, xi, alpha, E)
    return B


@dataclass
class OperatorSystem:
    nodes: NodeSet
    kernel: RbfKernel
    afield: ExponentField
    dom: Domain
    A: np.ndarray
    B: np.ndarray
    rhs: np.ndarray
    g: Data
    ctl: QuadratureControl


def assemble_poisson(nodes: NodeSet, k: RbfKernel, afield: ExponentField, dom: Domain,
                     f: Callable, g=None, ctl: QuadratureControl = DEFAULT_QUAD) -> OperatorSystem:
    """System for (-Delta)^(alpha(x)/2) u = f in the domain, u = g outside.

    f and g take points of shape (n, d).
    """
    g = as_data(g)
    B = assemble_operator(nodes, k, afield, dom, ctl)
    pts = nodes.points
    inner = ~nodes.boundary
    xi = pts[inner]
    alpha = afield(xi, dom.d)
    rhs = np.empty(len(pts))
    D = _data_term(dom, g, xi, alpha, ctl)
    rhs[inner] = np.asarray(f(xi), dtype=float) + c_norm(dom.d, alpha) * D
    rhs[~inner] = g(pts[~inner])
    return OperatorSystem(nodes, k, afield, dom, assemble_interp(nodes, k), B, rhs, g, ctl)


@dataclass
class SolutionField:
    """Kernel expansion u_h(x) = sum_i lam_i phi(|x - x_i|)."""

    lam: np.ndarray
    centers: np.ndarray
    kernel: RbfKernel
    afield: ExponentField | None = None
    dom: Domain | None = None
    g: Data = field(default_factory=Data)
    ctl: QuadratureControl = DEFAULT_QUAD
    cond: float = float("nan")

    @property
    def d(self) -> int:
        return self.centers.shape[1]


def _factor(M):
    with warnings.catch_warnings():
        warnings.simplefilter("error", linalg.LinAlgWarning)
        try:
            lu = linalg.lu_factor(M, check_finite=True)
        except (linalg.LinAlgError, linalg.LinAlgWarning) as exc:
            raise SingularSystemError(str(exc)) from None
    if np.any(np.diag(lu[0]) == 0):
        raise SingularSystemError("exactly singular collocation matrix")
    anorm = np.linalg.norm(M, 1)
    rcond, _ = linalg.lapack.dgecon(lu[0], anorm, norm="1")
    cond = np.inf if rcond == 0 else 1.0 / rcond
    if cond > COND_WARN:
        warnings.warn(f"collocation matrix condition estimate {cond:.2e}",
                      IllConditionedWarning, stacklevel=3)
    return lu, cond


def solve_dense(sys: OperatorSystem) -> SolutionField:
    lu, cond = _factor(sys.B)
    lam = linalg.lu_solve(lu, sys.rhs)
    return SolutionField(lam, sys.nodes.points, sys.kernel, sys.afield, sys.dom,
                         sys.g, sys.ctl, cond)


def interpolate(nodes: NodeSet | np.ndarray, k: RbfKernel, values) -> SolutionField:
    """Kernel interpolant through the given nodal values."""
    pts = nodes.points if isinstance(nodes, NodeSet) else as_points(nodes, np.shape(nodes)[-1])
    lu, cond = _factor(assemble_interp(pts, k))
    return SolutionField(linalg.lu_solve(lu, np.asarray(values, dtype=float)), pts, k, cond=cond)


def evaluate(sol: SolutionField, pts) -> np.ndarray:
    pts = as_points(pts, sol.d)
    return kernel_value(sol.kernel, _distances(pts, sol.centers)) @ sol.lam


def evaluate_vo_laplacian(sol: SolutionField, pts, afield: ExponentField | None = None,
                          dom: Domain | None = None, g=None,
                          ctl: QuadratureControl | None = None,
                          E=None, D=None) -> np.ndarray:
    """Discrete (-Delta)^(alpha(x)/2) of the solution extended by g outside.

    Precomputed complement integrals E (targets x centres) and D may be
    supplied to reuse work across solutions.
    """
    afield = afield or sol.afield
    dom = dom or sol.dom
    g = as_data(g) if g is not None else sol.g
    ctl = ctl or sol.ctl
    pts = as_points(pts, sol.d)
    alpha = afield.validate(pts, sol.d)
    if E is None:
        E = _complement(dom, sol.kernel, sol.centers, pts, alpha, ctl)
    if D is None:
        D = _data_term(dom, g, pts, alpha, ctl)
    rows = operator_rows(sol.kernel, sol.d, sol.centers, pts, alpha, E)
    return rows @ sol.lam - c_norm(sol.d, alpha) * D


@dataclass
class AffineOperator:
    """Interior map u_I -> M u_I + q for the discrete operator, with boundary
    nodes held at their Dirichlet values."""

    M: np.ndarray
    q: np.ndarray
    interior: np.ndarray
    boundary: np.ndarray
    boundary_values: np.ndarray
    cond: float = float("nan")

    def __call__(self, u_interior):
        return self.M @ u_interior + self.q

    def full_state(self, u_interior):
        n = len(self.interior) + len(self.boundary)
        u = np.empty(n)
        u[self.interior] = u_interior
        u[self.boundary] = self.boundary_values
        return u


def differentiation_operator(nodes: NodeSet, k: RbfKernel, afield: ExponentField, dom: Domain,
                             g=None, ctl: QuadratureControl = DEFAULT_QUAD) -> AffineOperator:
    """Nodal form of the discrete operator: B_int A^(-1) via a factorization of A."""
    g = as_data(g)
    pts = nodes.points
    inner = ~nodes.boundary
    xi = pts[inner]
    alpha = afield.validate(xi, dom.d)
    E = _complement(dom, k, pts, xi, alpha, ctl)
    B_int = operator_rows(k, dom.d, pts, xi, alpha, E)
    lu, cond = _factor(assemble_interp(nodes, k))
    # B_int A^{-1} = (A^{-T} B_int^T)^T
    M_full = linalg.lu_solve(lu, B_int.T, trans=1).T
    I = np.nonzero(inner)[0]
    Bd = np.nonzero(~inner)[0]
    gB = g(pts[Bd]) if len(Bd) else np.zeros(0)
    D = _data_term(dom, g, xi, alpha, ctl)
    q = M_full[:, Bd] @ gB - c_norm(dom.d, alpha) * D
    return AffineOperator(M_full[:, I], q, I, Bd, gB, cond)
