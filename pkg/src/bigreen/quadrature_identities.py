"""Numerical verification of the integral identities of the two-phase solution.

The central object is the half-space sensitivity integral

    I(y0, w0; l, m) = int_{x3>0} (C^I - C) grad(Gp(x, y0) l) . grad(G(x, w0) m) dx,

which equals (G(y0,w0) - Gp(y0,w0)) m . l in closed form for any two source
points y0 != w0 below the interface (Gp the bimaterial matrix, G the host
Kelvin matrix).  The integrand is smooth on the closed half-space (both
singular points lie strictly below), decays like |x|^-4, and is integrated
in spherical coordinates over the half-ball of radius rho with a graded
radial mesh; the truncation tail scales like 1/rho.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .bimaterial import gamma_plus_gradient, gap_matrix
from .errors import QuadratureNotConverged
from .kelvin import kelvin_gradient, kelvin_traction, traction_from_gradient
from .materials import LameMaterial, MaterialPair


@dataclass(frozen=True)
class HalfSpaceQuadrature:
    """Graded spherical tensor-product rule on the half-ball of radius rho.

    rho: truncation radius (must be >= 4 max(|y0|, |w0|)); grading: radial
    grading exponent (>= 2) concentrating panels near the origin above the
    singular points; order: Gauss-Legendre order per radial/polar panel
    (2..16); tol: target absolute tolerance for the self-estimate.
    """

    rho: float = 50.0
    grading: float = 3.0
    order: int = 6
    n_radial: int = 16
    n_polar: int = 3
    n_azimuthal: int = 32
    tol: float = 1e-4
    max_refine: int = 2

    def __post_init__(self):
        if self.grading < 2:
            raise ValueError("grading exponent must be >= 2")
        if not 2 <= self.order <= 16:
            raise ValueError("per-cell Gauss order must lie in [2, 16]")
        if self.rho <= 0:
            raise ValueError("rho must be positive")


def _halfball_nodes(quad: HalfSpaceQuadrature, level: int = 0):
    """Quadrature nodes (N, 3) and weights (N,) on {|x| < rho, x3 > 0}.

    level k refines the radial and polar panel counts by 2^k; the azimuthal
    trapezoid rule (spectral for smooth periodic integrands) refines too.
    """
    f = 2 ** level
    nr, nu, nt = quad.n_radial * f, quad.n_polar * f, quad.n_azimuthal * f
    xg, wg = np.polynomial.legendre.leggauss(quad.order)

    edges = quad.rho * (np.arange(nr + 1) / nr) ** quad.grading
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    s = (mid[:, None] + half[:, None] * xg).ravel()
    ws = (half[:, None] * wg).ravel() * s * s

    ue = np.arange(nu + 1) / nu
    um = 0.5 * (ue[1:] + ue[:-1])
    uh = 0.5 * (ue[1:] - ue[:-1])
    u = (um[:, None] + uh[:, None] * xg).ravel()
    wu = (uh[:, None] * wg).ravel()

    th = 2 * np.pi * np.arange(nt) / nt
    wt = np.full(nt, 2 * np.pi / nt)

    S, U, T = np.meshgrid(s, u, th, indexing="ij")
    W = (ws[:, None, None] * wu[None, :, None] * wt[None, None, :]).ravel()
    sin = np.sqrt(1.0 - U**2)
    pts = np.stack([(S * sin * np.cos(T)).ravel(),
                    (S * sin * np.sin(T)).ravel(),
                    (S * U).ravel()], axis=-1)
    return pts, W


def _integrand_sum(pts, w, y0, w0, l, m, pair: MaterialPair) -> float:
    dlam = float(pair.inclusion.lam) - float(pair.host.lam)
    dmu = float(pair.inclusion.mu) - float(pair.host.mu)
    gp = gamma_plus_gradient(pts, y0, pair)
    gk = kelvin_gradient(pts, w0, pair.host)
    A = np.einsum("nijk,j->nik", gp, l)
    B = np.einsum("nijk,j->nik", gk, m)
    trA = np.trace(A, axis1=-2, axis2=-1)
    trB = np.trace(B, axis1=-2, axis2=-1)
    F = dlam * trA * trB + dmu * np.einsum("nik,nik->n", A + np.swapaxes(A, -2, -1), B)
    return float(np.dot(w, F))


def halfspace_sensitivity_integral(y0, w0, l, m, pair: MaterialPair,
                                   quad: HalfSpaceQuadrature | None = None):
    """Truncated sensitivity integral with a Richardson-style error estimate.

    Returns (value, estimate); the estimate is the change under one mesh
    refinement.  Raises QuadratureNotConverged if the estimate still exceeds
    quad.tol after quad.max_refine refinements.
    """
    quad = quad or HalfSpaceQuadrature()
    y0 = np.asarray(y0, dtype=float)
    w0 = np.asarray(w0, dtype=float)
    if y0[2] >= 0 or w0[2] >= 0:
        raise ValueError("both source points must lie strictly below the interface")
    if quad.rho < 4 * max(np.linalg.norm(y0), np.linalg.norm(w0)):
        raise ValueError("rho must be >= 4 max(|y0|, |w0|)")
    l = np.asarray(l, dtype=float)
    m = np.asarray(m, dtype=float)

    pts, w = _halfball_nodes(quad, 0)
    val = _integrand_sum(pts, w, y0, w0, l, m, pair)
    est = None
    for level in range(1, quad.max_refine + 1):
        pts, w = _halfball_nodes(quad, level)
        val_ref = _integrand_sum(pts, w, y0, w0, l, m, pair)
        est = abs(val_ref - val)
        val = val_ref
        if est <= quad.tol:
            return val, est
    raise QuadratureNotConverged(
        f"estimate {est:.3e} above tol {quad.tol:.3e} after {quad.max_refine} refinements")


def verify_transmission_identity(y0, w0, l, m, pair: MaterialPair,
                                 quad: HalfSpaceQuadrature | None = None) -> dict:
    """Residual report for the closed-form identity at the configured rho.

    The closed form is (G - Gp)(y0, w0) m . l, evaluated through the smooth
    gap matrix.  The tail rate is fitted from the residuals at rho/2 and rho
    (the tail bound is C/rho, so the fitted rate should be near 1).
    """
    quad = quad or HalfSpaceQuadrature()
    y0 = np.asarray(y0, dtype=float)
    w0 = np.asarray(w0, dtype=float)
    l = np.asarray(l, dtype=float)
    m = np.asarray(m, dtype=float)
    closed = -float(np.einsum("ij,j,i->", gap_matrix(y0, w0, pair), m, l))

    value, _ = halfspace_sensitivity_integral(y0, w0, l, m, pair, quad)
    abs_res = abs(value - closed)
    half = replace(quad, rho=quad.rho / 2)
    value_half, _ = halfspace_sensitivity_integral(y0, w0, l, m, pair, half)
    res_half = abs(value_half - closed)
    if abs_res > 0 and res_half > 0:
        tail_rate = float(np.log2(res_half / abs_res))
    else:
        tail_rate = float("nan")
    return {
        "integral": value,
        "closed_form": closed,
        "abs_residual": abs_res,
        "rel_residual": abs_res / abs(closed) if closed != 0 else abs_res,
        "rho": quad.rho,
        "tail_rate": tail_rate,
    }


def _sphere_nodes(y, r, order, split_u=None):
    """Product rule on the sphere of radius r about y; polar Gauss panels are
    split at cos(theta) = split_u when the sphere crosses the interface."""
    xg, wg = np.polynomial.legendre.leggauss(order)
    panels = [(-1.0, 1.0)] if split_u is None else [(-1.0, split_u), (split_u, 1.0)]
    us, wu = [], []
    for a, b in panels:
        us.append(0.5 * (a + b) + 0.5 * (b - a) * xg)
        wu.append(0.5 * (b - a) * wg)
    u = np.concatenate(us)
    wu = np.concatenate(wu)
    nt = 2 * order
    th = 2 * np.pi * np.arange(nt) / nt
    wt = np.full(nt, 2 * np.pi / nt)
    U, T = np.meshgrid(u, th, indexing="ij")
    sin = np.sqrt(1.0 - U**2)
    normals = np.stack([sin * np.cos(T), sin * np.sin(T), U], axis=-1).reshape(-1, 3)
    w = (wu[:, None] * wt[None, :]).ravel() * r * r
    pts = np.asarray(y, dtype=float) + r * normals
    return pts, normals, w


def equilibrium_check(kind: str, y, r: float, material, order: int = 32) -> np.ndarray:
    """Defect of the delta-source identity: int traction d(sigma) + Id.

    kind 'kelvin' takes a LameMaterial; kind 'bimaterial' takes a
    MaterialPair (source y with y3 < 0, paper frame) and uses the
    side-appropriate elastic tensor in the traction when the sphere crosses
    the interface, splitting the polar quadrature at the crossing circle.
    """
    y = np.asarray(y, dtype=float)
    if kind == "kelvin":
        if not isinstance(material, LameMaterial):
            raise TypeError("kelvin check expects a LameMaterial")
        pts, normals, w = _sphere_nodes(y, r, order)
        t = kelvin_traction(pts, y, normals, material)
        total = np.einsum("n,nij->ij", w, t)
        return total + np.eye(3)
    if kind != "bimaterial":
        raise ValueError(f"kind must be 'kelvin' or 'bimaterial', got {kind!r}")
    if not isinstance(material, MaterialPair):
        raise TypeError("bimaterial check expects a MaterialPair")
    u0 = -y[2] / r
    split = u0 if abs(u0) < 1 else None
    pts, normals, w = _sphere_nodes(y, r, order, split_u=split)
    grad = gamma_plus_gradient(pts, y, material)
    above = pts[:, 2] > 0
    t = np.empty((pts.shape[0], 3, 3))
    if above.any():
        t[above] = traction_from_gradient(grad[above], normals[above], material.inclusion)
    if (~above).any():
        t[~above] = traction_from_gradient(grad[~above], normals[~above], material.host)
    total = np.einsum("n,nij->ij", w, t)
    return total + np.eye(3)
