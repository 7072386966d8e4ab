"""Hausdorff and modified distances between voxelized inclusions.

The modified distance restricts attention to boundary points reachable from
far away: G is the connected component of the complement of D1 u D2 that
touches the grid boundary, Omega_D is everything else, and d_mu compares
only the boundary parts lying on the rim of Omega_D.  d_mu <= d_H always;
pockets enclosed by the union can make the inequality strict.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .errors import EmptySet, NoFreeMargin

# exact brute-force distances up to this many boundary voxels per set
BRUTE_FORCE_LIMIT = 10_000

_FACE_STRUCTURE = ndimage.generate_binary_structure(3, 1)  # 6-connectivity


@dataclass(frozen=True)
class VoxelSet:
    """Occupancy mask on a regular grid; coordinates are voxel centers.

    origin: corner of the grid (voxel (0,0,0) spans origin .. origin+h);
    h: voxel edge length; occupancy: bool (nx, ny, nz).
    """

    origin: np.ndarray
    h: float
    occupancy: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "origin", np.asarray(self.origin, dtype=float))
        object.__setattr__(self, "occupancy", np.asarray(self.occupancy, dtype=bool))

    @property
    def voxel_diagonal(self) -> float:
        return float(self.h * np.sqrt(3.0))

    def centers(self, mask: np.ndarray) -> np.ndarray:
        idx = np.argwhere(mask)
        return self.origin + (idx + 0.5) * self.h

    def boundary_mask(self) -> np.ndarray:
        """Occupied voxels with at least one unoccupied 6-neighbor (grid edge
        counts as unoccupied)."""
        occ = self.occupancy
        interior = ndimage.binary_erosion(occ, structure=_FACE_STRUCTURE,
                                          border_value=0)
        return occ & ~interior

    def boundary_points(self) -> np.ndarray:
        return self.centers(self.boundary_mask())

    @classmethod
    def from_indicator(cls, origin, h: float, shape, indicator) -> "VoxelSet":
        origin = np.asarray(origin, dtype=float)
        ax = [origin[k] + (np.arange(shape[k]) + 0.5) * h for k in range(3)]
        X, Y, Z = np.meshgrid(*ax, indexing="ij")
        pts = np.stack([X, Y, Z], axis=-1)
        return cls(origin, h, np.asarray(indicator(pts), dtype=bool))


def _require_points(pts: np.ndarray, what: str) -> np.ndarray:
    pts = np.asarray(pts, dtype=float).reshape(-1, 3)
    if pts.shape[0] == 0:
        raise EmptySet(f"{what} is empty")
    return pts


def _as_boundary_points(obj) -> np.ndarray:
    if isinstance(obj, VoxelSet):
        return _require_points(obj.boundary_points(), "voxel-set boundary")
    return _require_points(obj, "point set")


def _directed_max_dist(a: np.ndarray, b: np.ndarray) -> float:
    """max over a of dist(a, b), exact; KD-tree beyond the brute-force limit."""
    if len(a) <= BRUTE_FORCE_LIMIT and len(b) <= BRUTE_FORCE_LIMIT:
        best = 0.0
        chunk = max(1, (1 << 22) // max(len(b), 1))
        for i in range(0, len(a), chunk):
            d = np.linalg.norm(a[i:i + chunk, None, :] - b[None, :, :], axis=-1)
            best = max(best, float(d.min(axis=1).max()))
        return best
    tree = cKDTree(b)
    d, _ = tree.query(a, k=1)
    return float(np.max(d))


def hausdorff_distance(A, B) -> float:
    """Hausdorff distance between boundary point sets (or VoxelSets)."""
    a = _as_boundary_points(A)
    b = _as_boundary_points(B)
    return max(_directed_max_dist(a, b), _directed_max_dist(b, a))


def reachable_complement(d1: VoxelSet, d2: VoxelSet) -> tuple[np.ndarray, np.ndarray]:
    """Split the grid into (G, Omega_D) per the reachable-set construction.

    G is the 6-connected component of the complement of D1 u D2 containing
    the grid boundary; Omega_D is the rest of the grid (the union plus any
    enclosed pockets).  The grid must keep a one-voxel free margin so the
    boundary shell is connected free space.  Returns boolean masks (G,
    Omega_D) on the common grid.
    """
    _check_same_grid(d1, d2)
    union = d1.occupancy | d2.occupancy
    shell = np.zeros_like(union)
    shell[0] = shell[-1] = True
    shell[:, 0] = shell[:, -1] = True
    shell[:, :, 0] = shell[:, :, -1] = True
    if (union & shell).any():
        raise NoFreeMargin("sets must keep a one-voxel free margin to the grid edge")
    free = ~union
    labels, _ = ndimage.label(free, structure=_FACE_STRUCTURE)
    g_label = labels[0, 0, 0]
    G = labels == g_label
    return G, ~G


def _check_same_grid(d1: VoxelSet, d2: VoxelSet) -> None:
    if d1.occupancy.shape != d2.occupancy.shape or d1.h != d2.h \
            or not np.allclose(d1.origin, d2.origin):
        raise ValueError("voxel sets must share one grid")


def _distance_to_set(target: VoxelSet, query_pts: np.ndarray) -> np.ndarray:
    """Euclidean distance from query voxel centers to the occupied set."""
    occ_pts = target.centers(target.occupancy)
    if occ_pts.shape[0] == 0:
        raise EmptySet("distance target is empty")
    if len(occ_pts) <= BRUTE_FORCE_LIMIT and len(query_pts) <= BRUTE_FORCE_LIMIT:
        out = np.empty(len(query_pts))
        chunk = max(1, (1 << 22) // len(occ_pts))
        for i in range(0, len(query_pts), chunk):
            d = np.linalg.norm(query_pts[i:i + chunk, None, :] - occ_pts[None, :, :],
                               axis=-1)
            out[i:i + chunk] = d.min(axis=1)
        return out
    # grid-exact: Euclidean distance transform of the complement, sampled at
    # query voxel indices (queries are voxel centers of the same grid)
    edt = ndimage.distance_transform_edt(~target.occupancy, sampling=target.h)
    idx = np.round((query_pts - target.origin) / target.h - 0.5).astype(int)
    return edt[idx[:, 0], idx[:, 1], idx[:, 2]]


def modified_distance(d1: VoxelSet, d2: VoxelSet) -> float:
    """Modified distance d_mu: boundary-to-set distances restricted to the
    reachable rim of Omega_D; satisfies d_mu <= d_H(boundaries)."""
    _check_same_grid(d1, d2)
    G, _ = reachable_complement(d1, d2)
    out = 0.0
    for a, b in ((d1, d2), (d2, d1)):
        reach = a.occupancy & ndimage.binary_dilation(G, structure=_FACE_STRUCTURE)
        if not reach.any():
            continue
        pts = a.centers(reach)
        out = max(out, float(_distance_to_set(b, pts).max()))
    if out == 0.0 and not (d1.occupancy.any() and d2.occupancy.any()):
        raise EmptySet("modified distance needs nonempty sets")
    return out


def dilate(vs: VoxelSet, r: float) -> VoxelSet:
    """Uniform dilation by radius r (Euclidean, voxel-resolution accurate)."""
    edt = ndimage.distance_transform_edt(~vs.occupancy, sampling=vs.h)
    return VoxelSet(vs.origin, vs.h, vs.occupancy | (edt <= r))
