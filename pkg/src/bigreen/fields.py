"""Flat-binary field and voxel-set serialization with JSON sidecars.

Layout: little-endian values, x-fastest ordering (index (ix, iy, iz) with ix
varying fastest); vector fields store whole components contiguously, one
block per component.  The sidecar <path>.json records grid metadata; fields
use 64-bit floats, voxel occupancy uses 8-bit 0/1.
"""

from __future__ import annotations

import json

import numpy as np


def _sidecar(path) -> str:
    return f"{path}.json"


def _spatial_to_disk(a: np.ndarray) -> np.ndarray:
    # array indexed [ix, iy, iz]; x-fastest flattening is Fortran order
    return np.asfortranarray(a).ravel(order="F")


def _spatial_from_disk(flat: np.ndarray, shape) -> np.ndarray:
    return flat.reshape(shape, order="F")


def save_field(path, field: np.ndarray, origin, h: float, extra: dict | None = None) -> None:
    """Write a nodal/voxel float field of shape (nx, ny, nz[, k])."""
    field = np.asarray(field, dtype=float)
    spatial = field.shape[:3]
    comps = 1 if field.ndim == 3 else field.shape[3]
    blocks = [field] if field.ndim == 3 else [field[..., c] for c in range(comps)]
    data = np.concatenate([_spatial_to_disk(b) for b in blocks])
    data.astype("<f8").tofile(path)
    meta = {
        "dtype": "<f8",
        "shape": [int(s) for s in spatial],
        "components": int(comps),
        "order": "x-fastest",
        "origin": [float(v) for v in np.asarray(origin).ravel()],
        "spacing": float(h),
    }
    if extra:
        meta.update(extra)
    with open(_sidecar(path), "w") as fh:
        json.dump(meta, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_field(path):
    """Read a field written by save_field; returns (array, metadata)."""
    with open(_sidecar(path)) as fh:
        meta = json.load(fh)
    shape = tuple(meta["shape"])
    comps = meta["components"]
    flat = np.fromfile(path, dtype="<f8")
    n = int(np.prod(shape))
    if comps == 1:
        return _spatial_from_disk(flat, shape), meta
    blocks = [_spatial_from_disk(flat[c * n:(c + 1) * n], shape) for c in range(comps)]
    return np.stack(blocks, axis=-1), meta


def save_voxels(path, occupancy: np.ndarray, origin, h: float,
                extra: dict | None = None) -> None:
    """Write a voxel occupancy mask as 8-bit 0/1 with a JSON sidecar."""
    occ = np.asarray(occupancy, dtype=bool)
    _spatial_to_disk(occ.astype(np.uint8)).tofile(path)
    meta = {
        "dtype": "u1",
        "shape": [int(s) for s in occ.shape],
        "components": 1,
        "order": "x-fastest",
        "origin": [float(v) for v in np.asarray(origin).ravel()],
        "spacing": float(h),
    }
    if extra:
        meta.update(extra)
    with open(_sidecar(path), "w") as fh:
        json.dump(meta, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_voxels(path):
    """Read a voxel set written by save_voxels; returns (bool array, metadata)."""
    with open(_sidecar(path)) as fh:
        meta = json.load(fh)
    shape = tuple(meta["shape"])
    flat = np.fromfile(path, dtype=np.uint8)
    return _spatial_from_disk(flat, shape).astype(bool), meta
