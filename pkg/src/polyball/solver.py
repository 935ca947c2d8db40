"""Dirichlet solver and reproduction integrals on rotated sphere unions.

Boundary data lives on the union of p rotated unit spheres: a function is a
list of per-sector evaluators f_j(nodes) giving values of f on the sector
e^{ij pi/p} S.  ``BoundaryData`` caches node values per (rule, sector), so
repeated solves against the same rule reuse every evaluation.

Two independent evaluation routes compute the same solution:

* ``poisson_integral`` pairs boundary values with the closed-form kernel
  P(x, e^{ij pi/p} zeta) (hermitian-symmetry route);
* ``dirichlet_solve`` pairs them with the boundary form
  (1 - |x|^{2p}) / |e^{-ik pi/p} x - zeta|^n (principal-sqrt route).

Their agreement (1e-11 scale) is a genuine numeric check of the conjugation
identity between the two displays, and is enforced in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels, quadrature
from .geometry import (RotatedVector, as_complex_vector, as_rotated,
                       bilinear_square, lie_norm)
from .polyalg import MultiPoly

__all__ = [
    "BoundaryData",
    "DirichletSolution",
    "LimitExperiment",
    "poisson_integral",
    "dirichlet_solve",
    "spectral_component",
    "hua_reproduce",
    "polyharmonic_limit_experiment",
    "choose_rule",
]


class BoundaryData:
    """Function on the union of p rotated unit spheres.

    Per-sector evaluators take an (R, n) array of real sphere points and
    return complex values of f on e^{ij pi/p} * points.  When built from a
    polynomial, the polynomial is kept as a tag enabling degree-aware rule
    selection; tagged constructions are spot-checked against the tag.
    """

    def __init__(self, evaluators, n: int, tag: MultiPoly | None = None):
        evaluators = list(evaluators)
        if not evaluators:
            raise ValueError("need at least one sector evaluator")
        if n < 2:
            raise ValueError("n must be >= 2")
        self.p = len(evaluators)
        self.n = n
        self.tag = tag
        self._evaluators = evaluators
        self._cache: dict = {}
        if tag is not None:
            if tag.n != n:
                raise ValueError("tag dimension mismatch")
            self._spot_check()

    @classmethod
    def from_polynomial(cls, q: MultiPoly, p: int) -> "BoundaryData":
        """Restriction of a polynomial to the union of p rotated spheres."""
        if p < 1:
            raise ValueError("p must be >= 1")

        def make(j):
            phase = np.exp(1j * j * math.pi / p)
            return lambda pts: q.eval_at(pts, phase=phase)

        return cls([make(j) for j in range(p)], q.n, tag=q)

    @classmethod
    def from_sector_callables(cls, fns, n: int,
                              tag: MultiPoly | None = None) -> "BoundaryData":
        return cls(fns, n, tag=tag)

    def _spot_check(self):
        rng = np.random.default_rng(7)
        pts = rng.standard_normal((10, self.n))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        scale = max(1.0, self.tag.coefficient_scale())
        for j in range(self.p):
            got = np.asarray(self._evaluators[j](pts), dtype=complex)
            want = self.tag.eval_at(pts, phase=np.exp(1j * j * math.pi / self.p))
            if np.max(np.abs(got - want)) > 1e-12 * scale:
                raise ValueError(
                    f"sector {j} evaluator disagrees with the polynomial tag")

    def sector_values(self, j: int, rule: quadrature.SphereRule) -> np.ndarray:
        """Values of f on sector j at the rule's nodes (cached per rule)."""
        if not 0 <= j < self.p:
            raise ValueError("sector index out of range")
        key = (id(rule), j)
        cached = self._cache.get(key)
        if cached is None:
            self._cache[key] = (rule, np.asarray(
                self._evaluators[j](rule.nodes), dtype=complex))
            cached = self._cache[key]
        return cached[1]


# --------------------------------------------------------------------------
# kernel-value arrays at rule nodes
# --------------------------------------------------------------------------

def _sector_phases(p: int, j: int) -> complex:
    return complex(np.exp(1j * j * math.pi / p))


def _row_norms_sq(nodes: np.ndarray) -> np.ndarray:
    return np.sum(nodes * nodes, axis=1)


def _poisson_node_values(x: RotatedVector, p: int, j: int,
                         rule: quadrature.SphereRule) -> np.ndarray:
    """P(x, e^{ij pi/p} zeta) at every node zeta (closed-form route)."""
    phase = _sector_phases(p, j)
    xc = x.to_complex()
    B = np.conj(phase) * (rule.nodes @ xc)
    zb2 = np.conj(phase) ** 2 * _row_norms_sq(rule.nodes)
    x2 = bilinear_square(xc)
    return kernels.poisson_from_products(x.n, p, x2, B, zb2)


def _boundary_form_node_values(x: RotatedVector, p: int, k: int,
                               rule: quadrature.SphereRule) -> np.ndarray:
    """(1 - |x|^{2p}) / |e^{-ik pi/p} x - zeta|^n at every node (conjugated
    kernel route)."""
    phase = np.conj(_sector_phases(p, k))
    xc = phase * x.to_complex()
    x2 = bilinear_square(x.to_complex())
    v2 = (bilinear_square(xc) - 2.0 * (rule.nodes @ xc)
          + _row_norms_sq(rule.nodes))
    return kernels.boundary_form_values(x.n, p, x2, v2)


def _interior_point(x, p: int) -> RotatedVector:
    x = as_rotated(x)
    x.sector_index(p)
    if not x.radius < 1.0 - 1e-9:
        raise ValueError("interior points need hermitian radius < 1 - 1e-9")
    return x


# --------------------------------------------------------------------------
# reproduction integrals
# --------------------------------------------------------------------------

def poisson_integral(f: BoundaryData, x, rule: quadrature.SphereRule) -> complex:
    """(1/p) sum_j int_S f(e^{ij pi/p} zeta) P(x, e^{ij pi/p} zeta) dsigma."""
    x = _interior_point(x, f.p)
    if f.n != x.n:
        raise ValueError("dimension mismatch")
    parts = []
    for j in range(f.p):
        kv = _poisson_node_values(x, f.p, j, rule)
        fv = f.sector_values(j, rule)
        parts.append(quadrature.compensated_sum(rule.weights * fv * kv))
    return complex(math.fsum(z.real for z in parts) / f.p,
                   math.fsum(z.imag for z in parts) / f.p)


def _dirichlet_value(f: BoundaryData, x: RotatedVector,
                     rule: quadrature.SphereRule) -> complex:
    parts = []
    for k in range(f.p):
        kv = _boundary_form_node_values(x, f.p, k, rule)
        fv = f.sector_values(k, rule)
        parts.append(quadrature.compensated_sum(rule.weights * fv * kv))
    return complex(math.fsum(z.real for z in parts) / f.p,
                   math.fsum(z.imag for z in parts) / f.p)


@dataclass
class DirichletSolution:
    """Solution values plus an evaluator for further interior points."""

    boundary: BoundaryData
    rule: quadrature.SphereRule
    points: list
    values: np.ndarray
    sector_indices: list = field(default_factory=list)

    @property
    def p(self) -> int:
        return self.boundary.p

    def evaluate(self, x) -> complex:
        return _dirichlet_value(self.boundary,
                                _interior_point(x, self.boundary.p), self.rule)


def dirichlet_solve(f: BoundaryData, points,
                    rule: quadrature.SphereRule) -> DirichletSolution:
    """Solve the Dirichlet problem at interior points via the boundary form.

    Each value is (1/p) sum_k int_S f(e^{ik pi/p} zeta)
    (1-|x|^{2p}) / |e^{-ik pi/p} x - zeta|^n dsigma(zeta); for boundary data
    restricted from an order-p polyharmonic polynomial this reproduces the
    polynomial (up to quadrature truncation).
    """
    pts = [_interior_point(x, f.p) for x in points]
    values = np.array([_dirichlet_value(f, x, rule) for x in pts],
                      dtype=complex)
    return DirichletSolution(
        boundary=f, rule=rule, points=pts, values=values,
        sector_indices=[x.sector_index(f.p) for x in pts])


def spectral_component(f: BoundaryData, m: int, eta,
                       rule: quadrature.SphereRule,
                       route: str = kernels.ROUTE_GEGENBAUER_DIFF) -> complex:
    """<f, Z_m^p(., eta)> over the rotated spheres: the degree-m spectral
    value of f at eta.  For f restricted from a degree-m order-p
    polyharmonic q this equals q(eta)."""
    if m < 0:
        return 0j
    eta_c = as_complex_vector(eta)
    if eta_c.size != f.n:
        raise ValueError("dimension mismatch")
    zb2 = complex(np.conj(bilinear_square(eta_c)))
    rn = _row_norms_sq(rule.nodes)

    def zfun(j, nodes):
        phase = _sector_phases(f.p, j)
        B = phase * (nodes @ np.conj(eta_c))
        x2 = phase ** 2 * rn
        return kernels.zonal_from_products(f.n, m, f.p, B, x2 * zb2, route)

    return quadrature.rotated_inner_product(f, zfun, f.p, rule)


# --------------------------------------------------------------------------
# Cauchy-Hua reproduction and the order limit
# --------------------------------------------------------------------------

def hua_reproduce(u: MultiPoly, z, lie_rule: quadrature.LieSphereRule) -> complex:
    """Average of H(z, w) u(w) over the Lie sphere; reproduces holomorphic
    polynomials at z in the open Lie ball."""
    zc = as_complex_vector(z)
    if zc.size != u.n:
        raise ValueError("dimension mismatch")
    if not lie_norm(zc) < 1.0:
        raise ValueError("z must lie in the open Lie ball")
    z2 = bilinear_square(zc)

    def F(points):
        wb2 = np.conj(np.sum(points * points, axis=1))
        B = np.conj(points) @ zc
        denom = z2 * wb2 - 2.0 * B + 1.0
        if np.any(np.abs(denom) < 1e-14):
            raise kernels.SingularKernelError("Cauchy-Hua denominator vanished")
        from .geometry import principal_power
        return principal_power(denom, -u.n / 2.0) * u.eval_at(points)

    return quadrature.lie_sphere_integral(F, lie_rule)


def _poisson_value_at_complex(u: MultiPoly, z, p: int,
                              rule: quadrature.SphereRule) -> complex:
    """u_p(z): Poisson integral of u's restriction, first argument complex."""
    zc = as_complex_vector(z)
    z2 = bilinear_square(zc)
    rn = _row_norms_sq(rule.nodes)
    parts = []
    for k in range(p):
        phase = _sector_phases(p, k)
        B = np.conj(phase) * (rule.nodes @ zc)
        zb2 = np.conj(phase) ** 2 * rn
        kv = kernels.poisson_from_products(u.n, p, z2, B, zb2)
        fv = u.eval_at(rule.nodes, phase=phase)
        parts.append(quadrature.compensated_sum(rule.weights * fv * kv))
    return complex(math.fsum(v.real for v in parts) / p,
                   math.fsum(v.imag for v in parts) / p)


@dataclass(frozen=True)
class LimitExperiment:
    """Rows (p, value, error vs the holomorphic reference) plus the
    Cauchy-Hua integral of the same data."""

    reference: complex
    rows: tuple
    hua_value: complex
    hua_error: float


def polyharmonic_limit_experiment(u: MultiPoly, z, p_list,
                                  rule: quadrature.SphereRule,
                                  angular: int = 64) -> LimitExperiment:
    """Evaluate u_p(z) for increasing order p and compare with u(z).

    ``u`` is a holomorphic polynomial (boundary data on each rotated sphere
    union is its restriction); as p grows, u_p(z) converges to u(z) for z in
    the open Lie ball, and matches the Cauchy-Hua reproduction integral.
    """
    zc = as_complex_vector(z)
    if not lie_norm(zc) < 1.0:
        raise ValueError("z must lie in the open Lie ball")
    reference = u.evaluate(zc)
    rows = []
    for p in p_list:
        if p < 1:
            raise ValueError("orders must be >= 1")
        value = _poisson_value_at_complex(u, zc, int(p), rule)
        rows.append((int(p), value, abs(value - reference)))
    lie = quadrature.lie_sphere_rule(rule, angular)
    hua_value = hua_reproduce(u.to_numeric(), zc, lie)
    return LimitExperiment(
        reference=complex(reference),
        rows=tuple(rows),
        hua_value=complex(hua_value),
        hua_error=abs(hua_value - reference))


# --------------------------------------------------------------------------
# rule selection
# --------------------------------------------------------------------------

def choose_rule(n: int, p: int, f: BoundaryData | None, radius: float,
                tol: float, resolution: int | None = None,
                seed: int | None = None) -> quadrature.SphereRule:
    """Select a sphere rule for Poisson integrals at the given radius.

    Tagged (polynomial) data picks exactness degree d + M + 4 where M is the
    certified kernel truncation degree at r = radius and d the data degree.
    Untagged data requires an explicit ``resolution`` (callers should verify
    convergence by doubling).  n >= 4 falls back to seeded Monte Carlo.
    """
    if not 0.0 <= radius < 1.0:
        raise ValueError("radius must be in [0, 1)")
    if n >= 4:
        return quadrature.sphere_rule(n, resolution or 20000, seed=seed)
    if f is not None and f.tag is not None:
        d = max(f.tag.degree(), 0)
        m_trunc = kernels.truncation_degree(n, p, radius, tol)
        return quadrature.sphere_rule(
            n, quadrature.resolution_for_exactness(n, d + m_trunc + 4))
    if resolution is None:
        raise ValueError("untagged boundary data needs an explicit resolution")
    return quadrature.sphere_rule(n, resolution, seed=seed)
