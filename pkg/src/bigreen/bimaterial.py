"""Fundamental solution for two bonded isotropic elastic half-spaces.

Rongved frame: coordinates (x, y, z); the half-space z > 0 carries the host
moduli (mu, nu), z < 0 carries the inclusion moduli (mu_I, nu_I), and the
unit point force acts at (0, 0, c), c > 0.  Displacements follow the
Papkovich-Neuber representation

    u = (3 - 4 nu_s) a B - a grad(beta + x B_x + z B_z),   a = 1/(4 (1 - nu_s)),

with harmonic potentials B, beta per force case and half-space branch, and
nu_s the Poisson ratio of the half-space containing the evaluation point.
The paper frame has e1 = e_y, e2 = e_x, e3 = -e_z (an involutive rotation),
so the source sits in the x3 < 0 half-space and the inclusion occupies
x3 > 0.

Derivatives are produced by second-order forward-mode duals applied to the
scalar potentials; a central finite-difference cross-check is part of the
test suite.
"""

from __future__ import annotations

import numpy as np

from ._duals import Dual
from .errors import CoincidentPoints, NonPositiveSourceHeight, SourceOnWrongSide
from .kelvin import MIN_SEPARATION
from .materials import MaterialPair

# Rotation between the paper frame and the Rongved frame (an involution).
ROTATION = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])
_PERM = np.array([1, 0, 2])
_SIGN = np.array([1.0, 1.0, -1.0])

# 90-degree rotation about e_z mapping the x-force case onto the y-force case.
_QY = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])

_CHUNK = 16384


def _scalars(pair: MaterialPair) -> tuple[float, float, float, float]:
    return (float(pair.host.mu), float(pair.host.nu),
            float(pair.inclusion.mu), float(pair.inclusion.nu))


def gamma_coupling(pair: MaterialPair) -> float:
    """Material coupling constant entering the normal-force image potentials:

    gamma = [mu (1-2nu)(3-4nu_I) - mu_I (1-2nu_I)(3-4nu)] / [mu_I + mu (3-4nu_I)].
    """
    mu, nu, muI, nuI = _scalars(pair)
    return ((mu * (1 - 2 * nu) * (3 - 4 * nuI) - muI * (1 - 2 * nuI) * (3 - 4 * nu))
            / (muI + mu * (3 - 4 * nuI)))


def a_star(pair: MaterialPair) -> float:
    """Material constant of the tangential-force image potentials."""
    mu, nu, muI, nuI = _scalars(pair)
    return (((mu - muI) * (1 - 2 * nu)
             * (muI * (3 - 4 * nu) * (1 - 2 * nuI) - mu * (3 - 4 * nuI) * (1 - 2 * nu))
             - 2 * muI * (nu - nuI) * (mu + muI * (3 - 4 * nu)))
            / (muI + mu * (3 - 4 * nuI)))


# -- scalar potentials ---------------------------------------------------------

def _case1_pots(X, Y, Z, c, pair, upper, correction_only):
    """Normal (z) force potentials (B_z, beta) on one branch, as duals."""
    mu, nu, muI, nuI = _scalars(pair)
    gam = gamma_coupling(pair)
    if upper:
        d2 = Z + c
        R2 = (X * X + Y * Y + d2 * d2).sqrt()
        k1 = (mu - muI) / (mu + muI * (3 - 4 * nu))
        klog = (1 - nu) * gam / (np.pi * (mu + muI * (3 - 4 * nu)))
        Bz = (1.0 / (4 * np.pi * mu)) * k1 * ((3 - 4 * nu) / R2 + (2.0 * c) * d2 / (R2 * R2 * R2))
        beta = (-(1.0 / (4 * np.pi * mu)) * k1 * (3 - 4 * nu) * c) / R2 + klog * (R2 + d2).log()
        if not correction_only:
            d1 = Z - c
            R1 = (X * X + Y * Y + d1 * d1).sqrt()
            Bz = Bz + (1.0 / (4 * np.pi * mu)) / R1
            beta = beta - (c / (4 * np.pi * mu)) / R1
        return Bz, beta
    if correction_only:
        raise NotImplementedError("gap evaluation is defined on the source-side branch")
    d1 = Z - c
    R1 = (X * X + Y * Y + d1 * d1).sqrt()
    Bz = ((1 - nuI) / (np.pi * (muI + mu * (3 - 4 * nuI)))) / R1
    b1 = (1 - nu) / (np.pi * (mu + muI * (3 - 4 * nu)))
    b2 = b1 * gam
    beta = ((1 - nuI) / (1 - nu)) * ((-b1 * c) / R1 + b2 * (R1 - d1).log())
    return Bz, beta


def _case2_pots(X, Y, Z, c, pair, upper, correction_only):
    """Tangential (x) force potentials (B_x, B_z, beta) on one branch."""
    mu, nu, muI, nuI = _scalars(pair)
    Ast = a_star(pair)
    if upper:
        d2 = Z + c
        R2 = (X * X + Y * Y + d2 * d2).sqrt()
        S2 = R2 + d2
        Bx = (1.0 / (4 * np.pi * mu)) * ((mu - muI) / (mu + muI)) / R2
        Bz = ((mu - muI) / (2 * np.pi * (mu + muI * (3 - 4 * nu)))) * (
            (-1.0 / mu) * (X * c) / (R2 * R2 * R2)
            + ((1 - 2 * nu) / (mu + muI)) * X / (R2 * S2))
        beta = (1.0 / (2 * np.pi * (mu + muI) * (mu + muI * (3 - 4 * nu)))) * (
            ((1 - 2 * nu) * (mu - muI)) * (X * c) / (R2 * S2) + Ast * X / S2)
        if not correction_only:
            d1 = Z - c
            R1 = (X * X + Y * Y + d1 * d1).sqrt()
            Bx = Bx + (1.0 / (4 * np.pi * mu)) / R1
        return Bx, Bz, beta
    if correction_only:
        raise NotImplementedError("gap evaluation is defined on the source-side branch")
    d1 = Z - c
    R1 = (X * X + Y * Y + d1 * d1).sqrt()
    S1 = R1 - d1
    Bx = (1.0 / (2 * np.pi * (mu + muI))) / R1
    Bz = ((1 - 2 * nuI) * (mu - muI)
          / (2 * np.pi * (mu + muI) * (muI + mu * (3 - 4 * nuI)))) * X / (R1 * S1)
    kc = (1 - 2 * nu) * (mu - muI) + (nu - nuI) * (mu + muI * (3 - 4 * nu)) / (1 - nuI)
    ka = Ast + (nu - nuI) * (mu + muI * (3 - 4 * nu)) / (1 - nuI)
    beta = ((1 - nuI) / (2 * np.pi * (1 - nu) * (mu + muI) * (mu + muI * (3 - 4 * nu)))) * (
        kc * (X * c) / (R1 * S1) + ka * X / S1)
    return Bx, Bz, beta


# -- column assembly -----------------------------------------------------------

def _assemble(case, pts, c, pair, upper, want_grad, correction_only):
    """One force-case column u (and gradient) at Rongved points pts (N, 3)."""
    mu, nu, muI, nuI = _scalars(pair)
    nus = nu if upper else nuI
    a = 1.0 / (4 * (1 - nus))
    order = 2 if want_grad else 1
    X, Y, Z = Dual.seeds(pts, order=order)
    if case == 1:
        Bz, beta = _case1_pots(X, Y, Z, c, pair, upper, correction_only)
        Bvec = (None, None, Bz)
        phi = beta + Z * Bz
    else:
        Bx, Bz, beta = _case2_pots(X, Y, Z, c, pair, upper, correction_only)
        Bvec = (Bx, None, Bz)
        phi = beta + X * Bx + Z * Bz
    # u_i = B_i - a d_i(phi): expanding d_i(x B_x + z B_z) recovers the printed
    # entry coefficients (3-4nu_s)/(4(1-nu_s)) on the B terms
    n = pts.shape[0]
    u = np.empty((n, 3))
    for i in range(3):
        u[:, i] = -a * phi.g[:, i]
        if Bvec[i] is not None:
            u[:, i] += Bvec[i].v
    if not want_grad:
        return u, None
    G = -a * phi.h
    for i in range(3):
        if Bvec[i] is not None:
            G[:, i, :] += Bvec[i].g
    return u, G


def _columns_rongved(pts, c, pair, side, want_grad, correction_only=False):
    """Full 3x3 influence matrix (and gradient) in the Rongved frame.

    pts: (N, 3) evaluation points; c: (N,) source heights; side: (N,) branch
    selector (+1 upper / -1 lower).  Column order is (x, y, z) forces.
    """
    n = pts.shape[0]
    U = np.empty((n, 3, 3))
    G = np.empty((n, 3, 3, 3)) if want_grad else None
    pts_rot = pts @ _QY  # Q^T applied to each point
    for s, upper in ((1, True), (-1, False)):
        m = side == s
        if not m.any():
            continue
        p, cc = pts[m], c[m]
        ux, gx = _assemble(2, p, cc, pair, upper, want_grad, correction_only)
        uz, gz = _assemble(1, p, cc, pair, upper, want_grad, correction_only)
        uyr, gyr = _assemble(2, pts_rot[m], cc, pair, upper, want_grad, correction_only)
        uy = uyr @ _QY.T
        U[m, :, 0] = ux
        U[m, :, 1] = uy
        U[m, :, 2] = uz
        if want_grad:
            G[m, :, 0, :] = gx
            G[m, :, 1, :] = np.einsum("ia,nab,kb->nik", _QY, gyr, _QY)
            G[m, :, 2, :] = gz
    return U, G


def _to_paper_matrix(U: np.ndarray) -> np.ndarray:
    out = U[..., _PERM, :][..., :, _PERM]
    return out * (_SIGN[:, None] * _SIGN[None, :])


def _to_paper_gradient(G: np.ndarray) -> np.ndarray:
    out = G[..., _PERM, :, :][..., :, _PERM, :][..., :, :, _PERM]
    return out * (_SIGN[:, None, None] * _SIGN[None, :, None] * _SIGN[None, None, :])


def _chunked(fn, n, *arrays):
    if n <= _CHUNK:
        return fn(*arrays)
    parts = [fn(*(a[i:i + _CHUNK] for a in arrays)) for i in range(0, n, _CHUNK)]
    return np.concatenate(parts, axis=0)


# -- public API ----------------------------------------------------------------

def gamma_plus_rongved(x, c, pair: MaterialPair, force: str):
    """Displacement 3-vector and 3x3 gradient for one force axis, Rongved frame.

    x: evaluation point(s) of shape (..., 3); c: source height > 0; force one
    of 'x', 'y', 'z'.  The branch follows sign(z); z = 0 evaluates as the
    limit from z > 0.
    """
    if force not in ("x", "y", "z"):
        raise ValueError(f"force must be 'x', 'y' or 'z', got {force!r}")
    x = np.asarray(x, dtype=float)
    shape = x.shape[:-1]
    pts = x.reshape(-1, 3)
    cc = np.broadcast_to(np.asarray(c, dtype=float), shape).reshape(-1).copy()
    if np.any(cc <= 0):
        raise NonPositiveSourceHeight("source height c must be > 0")
    sep = np.linalg.norm(pts - np.stack([np.zeros_like(cc), np.zeros_like(cc), cc], axis=-1), axis=-1)
    if np.any(sep < MIN_SEPARATION):
        raise CoincidentPoints("evaluation point coincides with the source")
    side = np.where(pts[:, 2] >= 0.0, 1, -1)

    def run(p, c_, s_):
        U, G = _columns_rongved(p, c_, pair, s_, want_grad=True)
        j = "xyz".index(force)
        return np.concatenate([U[:, :, j], G[:, :, j, :].reshape(-1, 9)], axis=1)

    packed = _chunked(run, pts.shape[0], pts, cc, side)
    u = packed[:, :3].reshape(shape + (3,))
    grad = packed[:, 3:].reshape(shape + (3, 3))
    return u, grad


def _paper_eval(x, y, pair, side, want_grad, allow_source_in_inclusion, correction_only):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    shape = np.broadcast_shapes(x.shape[:-1], y.shape[:-1])
    xb = np.broadcast_to(x, shape + (3,)).reshape(-1, 3)
    yb = np.broadcast_to(y, shape + (3,)).reshape(-1, 3)

    if np.any(yb[:, 2] >= 0.0):
        if not allow_source_in_inclusion or np.any(yb[:, 2] == 0.0):
            raise SourceOnWrongSide(
                "source must satisfy y3 < 0 (pass allow_source_in_inclusion "
                "to evaluate with the source inside the inclusion half-space)")
        # reflect x3 -> -x3 and swap the materials; conjugate by S = diag(1,1,-1)
        S = np.array([1.0, 1.0, -1.0])
        swapped = MaterialPair(host=pair.inclusion, inclusion=pair.host)
        val = _paper_eval(xb * S, yb * S, swapped,
                          None if side is None else -side,
                          want_grad, False, correction_only)
        if want_grad:
            return (val * (S[:, None, None] * S[None, :, None] * S[None, None, :])).reshape(shape + (3, 3, 3))
        return (val * (S[:, None] * S[None, :])).reshape(shape + (3, 3))

    if not correction_only:
        sep = np.linalg.norm(xb - yb, axis=-1)
        if np.any(sep < MIN_SEPARATION):
            raise CoincidentPoints(
                f"min separation {sep.min():.3e} below {MIN_SEPARATION}")

    q = xb - np.concatenate([yb[:, :2], np.zeros((xb.shape[0], 1))], axis=1)
    pts = (q @ ROTATION.T)
    cc = -yb[:, 2]
    rz = pts[:, 2]
    side_r = np.where(rz > 0, 1, np.where(rz < 0, -1, 1))
    if side is not None:
        # explicit side applies to interface points; paper side -1 = host side
        side_arr = np.broadcast_to(np.asarray(side), shape).reshape(-1)
        side_r = np.where(rz == 0.0, -side_arr, side_r)
    if correction_only and np.any(side_r < 0):
        raise SourceOnWrongSide("gap evaluation requires x3 < 0 (host side)")

    def run(p, c_, s_):
        U, G = _columns_rongved(p, c_, pair, s_, want_grad, correction_only)
        if want_grad:
            return G.reshape(-1, 27)
        return U.reshape(-1, 9)

    packed = _chunked(run, pts.shape[0], pts, cc, side_r)
    if want_grad:
        return _to_paper_gradient(packed.reshape(shape + (3, 3, 3)))
    return _to_paper_matrix(packed.reshape(shape + (3, 3)))


def gamma_plus(x, y, pair: MaterialPair, side=None, allow_source_in_inclusion=False):
    """Bimaterial influence matrix in the paper frame; source y with y3 < 0.

    x, y: points of shape (..., 3) (broadcast together).  side: optional +-1
    selecting the one-sided limit for evaluation points lying exactly on the
    interface x3 = 0 (-1 = host side, the default; +1 = inclusion side).
    """
    return _paper_eval(x, y, pair, side, False, allow_source_in_inclusion, False)


def gamma_plus_gradient(x, y, pair: MaterialPair, side=None, allow_source_in_inclusion=False):
    """Spatial gradient of gamma_plus: entry (i, j, k) = d/dx_k of entry (i, j)."""
    return _paper_eval(x, y, pair, side, True, allow_source_in_inclusion, False)


def gap_matrix(y, w, pair: MaterialPair) -> np.ndarray:
    """Gap matrix (Gamma_plus - Gamma)(y, w), paper frame, correction terms only.

    y is the evaluation point, w the source; both must lie strictly below the
    interface (third coordinate < 0).  The Kelvin singularities cancel
    analytically, so y = w is admissible and the result is smooth.
    """
    y = np.asarray(y, dtype=float)
    w = np.asarray(w, dtype=float)
    if np.any(y[..., 2] >= 0.0) or np.any(w[..., 2] >= 0.0):
        raise SourceOnWrongSide("gap_matrix requires y3 < 0 and w3 < 0")
    return _paper_eval(y, w, pair, None, False, False, True)


def gap_gradient(y, w, pair: MaterialPair) -> np.ndarray:
    """Spatial gradient (in the evaluation point) of the gap matrix."""
    y = np.asarray(y, dtype=float)
    w = np.asarray(w, dtype=float)
    if np.any(y[..., 2] >= 0.0) or np.any(w[..., 2] >= 0.0):
        raise SourceOnWrongSide("gap_gradient requires y3 < 0 and w3 < 0")
    return _paper_eval(y, w, pair, None, True, False, True)
