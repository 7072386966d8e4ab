"""Kelvin fundamental solution of the homogeneous isotropic Lame operator.

The displacement influence matrix for a unit point force in free space,

    G(x, y) = [ d (x) d / r^2 + (3 - 4 nu) Id ] / (16 pi mu (1 - nu) r),

with d = x - y, r = |d|, together with its closed-form spatial gradient and
the traction on a surface with unit normal n.  All functions broadcast over
leading axes: points are arrays of shape (..., 3).
"""

from __future__ import annotations

import numpy as np

from .errors import CoincidentPoints, NonUnitNormal
from .materials import LameMaterial, apply_isotropic_tensor

# Below this separation (in rho0 units) points are treated as coincident.
MIN_SEPARATION = 1e-12


def _separation(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = x - y
    r = np.linalg.norm(d, axis=-1)
    if np.any(r < MIN_SEPARATION):
        raise CoincidentPoints(f"min separation {r.min():.3e} below {MIN_SEPARATION}")
    return d, r


def kelvin_matrix(x, y, mat: LameMaterial) -> np.ndarray:
    """Displacement matrix G(x, y); column j is the response to force e_j."""
    d, r = _separation(x, y)
    mu, nu = float(mat.mu), float(mat.nu)
    pref = 1.0 / (16 * np.pi * mu * (1 - nu))
    outer = d[..., :, None] * d[..., None, :]
    return pref * (outer / (r**3)[..., None, None]
                   + (3 - 4 * nu) * np.eye(3) / r[..., None, None])


def kelvin_gradient(x, y, mat: LameMaterial) -> np.ndarray:
    """Spatial gradient: entry (i, j, k) is d/dx_k of G_ij(x, y)."""
    d, r = _separation(x, y)
    mu, nu = float(mat.mu), float(mat.nu)
    pref = 1.0 / (16 * np.pi * mu * (1 - nu))
    eye = np.eye(3)
    r3 = (r**3)[..., None, None, None]
    r5 = (r**5)[..., None, None, None]
    di = d[..., :, None, None]
    dj = d[..., None, :, None]
    dk = d[..., None, None, :]
    # (delta_ik d_j + delta_jk d_i)/r^3 - 3 d_i d_j d_k / r^5 - (3-4nu) delta_ij d_k / r^3
    g = (eye[:, None, :] * dj + eye[None, :, :] * di) / r3
    g = g - 3.0 * di * dj * dk / r5
    g = g - (3 - 4 * nu) * eye[:, :, None] * dk / r3
    return pref * g


def kelvin_traction(x, y, n, mat: LameMaterial) -> np.ndarray:
    """Traction matrix: column j is (C grad(G e_j)) n at x, for unit normal n."""
    n = np.asarray(n, dtype=float)
    nrm = np.linalg.norm(n, axis=-1)
    if np.any(np.abs(nrm - 1.0) > 1e-12):
        raise NonUnitNormal(f"|n| deviates from 1 by {np.abs(nrm - 1.0).max():.3e}")
    grad = kelvin_gradient(x, y, mat)
    return traction_from_gradient(grad, n, mat)


def traction_from_gradient(grad: np.ndarray, n, mat: LameMaterial) -> np.ndarray:
    """Contract a Green-function gradient (...,3,3,3) with C and a normal.

    grad[i, j, k] = d/dx_k of G_ij; returns t[i, j] = sigma(G e_j)_{ik} n_k.
    """
    n = np.asarray(n, dtype=float)
    # per force column j, the displacement gradient is H[i, k] = grad[i, j, k]
    H = np.moveaxis(grad, -2, -3)          # (..., j, i, k)
    sig = apply_isotropic_tensor(mat, H)   # (..., j, i, k)
    t = np.einsum("...jik,...k->...ij", sig, n)
    return t
