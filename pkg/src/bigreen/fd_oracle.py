"""Desk-scale solver for the piecewise-constant Lame transmission problem.

Dirichlet problems for div((C + (C^I - C) chi_D) grad u) = 0 on a box are
discretized with trilinear hexahedral elements and 2x2x2 Gauss quadrature
(exact for the per-cell-constant coefficients, symmetric by construction,
second order, and exact on affine fields), then solved by Jacobi-
preconditioned conjugate gradients.  Point sources are handled by
singularity subtraction: the Kelvin field of the material at the source
carries the delta, and the smooth remainder solves a problem whose load is
supported on the cells where the coefficient differs from the source-side
material.

Used as an independent oracle for the bimaterial closed form, to realize
the fundamental matrix of curved inclusions, and to probe the near-interface
asymptotics on graph interfaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import GridTooCoarse, SolverDiverged, SourceTooCloseToInterface
from .kelvin import kelvin_gradient, kelvin_matrix
from .materials import LameMaterial, MaterialPair

_GAUSS_1D = np.array([0.5 - 0.5 / np.sqrt(3.0), 0.5 + 0.5 / np.sqrt(3.0)])


# -- voxel domain ----------------------------------------------------------------

@dataclass(frozen=True)
class VoxelDomain:
    """Box with a cubic cell grid and the inclusion indicator at cell centers.

    bounds: (3, 2) array of per-axis (lo, hi); n_cells: cells per axis (the
    node grid has n_cells + 1 points per axis); chi: bool (n, n, n) indicator
    sampled at cell centers; indicator: optional callable for resampling;
    graph: optional interface graph phi(x') with phi(0) = 0, grad phi(0) = 0.
    """

    bounds: np.ndarray
    n_cells: int
    chi: np.ndarray
    indicator: Callable | None = field(default=None, compare=False)
    graph: Callable | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n_cells < 9:
            raise GridTooCoarse("grid needs >= 9 cells per axis")
        widths = self.bounds[:, 1] - self.bounds[:, 0]
        if not np.allclose(widths, widths[0], rtol=1e-12):
            raise ValueError("box must be a cube (equal axis widths)")

    @property
    def h(self) -> float:
        return float((self.bounds[0, 1] - self.bounds[0, 0]) / self.n_cells)

    @property
    def n_nodes(self) -> int:
        return self.n_cells + 1

    def node_axes(self):
        return tuple(np.linspace(self.bounds[k, 0], self.bounds[k, 1], self.n_nodes)
                     for k in range(3))

    def node_points(self) -> np.ndarray:
        ax = self.node_axes()
        X, Y, Z = np.meshgrid(*ax, indexing="ij")
        return np.stack([X, Y, Z], axis=-1)

    def cell_centers(self) -> np.ndarray:
        ax = [self.bounds[k, 0] + (np.arange(self.n_cells) + 0.5) * self.h
              for k in range(3)]
        X, Y, Z = np.meshgrid(*ax, indexing="ij")
        return np.stack([X, Y, Z], axis=-1)

    @classmethod
    def from_indicator(cls, bounds, n_cells: int, indicator: Callable,
                       graph: Callable | None = None) -> "VoxelDomain":
        bounds = np.asarray(bounds, dtype=float).reshape(3, 2)
        dom = cls(bounds, n_cells, np.zeros((n_cells,) * 3, dtype=bool),
                  indicator, graph)
        chi = np.asarray(indicator(dom.cell_centers()), dtype=bool)
        object.__setattr__(dom, "chi", chi)
        return dom

    @classmethod
    def empty(cls, bounds, n_cells: int) -> "VoxelDomain":
        return cls.from_indicator(bounds, n_cells, lambda p: np.zeros(p.shape[:-1], bool))

    @classmethod
    def halfspace(cls, bounds, n_cells: int) -> "VoxelDomain":
        """Flat interface x3 = 0 with the inclusion occupying x3 > 0."""
        return cls.from_indicator(bounds, n_cells, lambda p: p[..., 2] > 0,
                                  graph=lambda xp: np.zeros(np.asarray(xp).shape[:-1]))

    @classmethod
    def from_graph(cls, bounds, n_cells: int, phi: Callable) -> "VoxelDomain":
        """Inclusion above the graph: D = {x3 > phi(x1, x2)}; phi(0) = 0."""
        z0 = float(np.asarray(phi(np.zeros((1, 2))))[0])
        if abs(z0) > 1e-12:
            raise ValueError("graph must satisfy phi(0) = 0")
        return cls.from_indicator(
            bounds, n_cells,
            lambda p: p[..., 2] > np.asarray(phi(p[..., :2])),
            graph=phi)

    @classmethod
    def ball(cls, bounds, n_cells: int, center, radius: float) -> "VoxelDomain":
        center = np.asarray(center, dtype=float)
        return cls.from_indicator(
            bounds, n_cells,
            lambda p: np.linalg.norm(p - center, axis=-1) < radius)


@dataclass(frozen=True)
class TransmissionProblem:
    """Dirichlet transmission problem, optionally with an interior point source.

    boundary_data maps points (..., 3) to displacements (..., 3); it is the
    value of the sought field on the box boundary.  A source (y, l) switches
    on singularity subtraction: the stored boundary data still describes the
    TOTAL field, and the subtracted Kelvin part is handled internally.
    """

    pair: MaterialPair
    domain: VoxelDomain
    boundary_data: Callable
    source: tuple | None = None


# -- trilinear element matrices ----------------------------------------------------

def _shape_gradients(h: float):
    """Reference data: weights (8,) and gradients G (8 gauss, 8 corners, 3)."""
    pts = []
    for gz in _GAUSS_1D:
        for gy in _GAUSS_1D:
            for gx in _GAUSS_1D:
                pts.append((gx, gy, gz))
    corners = [(a & 1, (a >> 1) & 1, (a >> 2) & 1) for a in range(8)]
    G = np.zeros((8, 8, 3))
    for g, (x, y, z) in enumerate(pts):
        for a, (cx, cy, cz) in enumerate(corners):
            fx, dfx = (x, 1.0) if cx else (1 - x, -1.0)
            fy, dfy = (y, 1.0) if cy else (1 - y, -1.0)
            fz, dfz = (z, 1.0) if cz else (1 - z, -1.0)
            G[g, a, 0] = dfx * fy * fz
            G[g, a, 1] = fx * dfy * fz
            G[g, a, 2] = fx * fy * dfz
    w = np.full(8, h**3 / 8.0)
    return w, G / h, pts


def _element_matrices(h: float):
    """Unit-coefficient element matrices K_lam, K_mu (24 x 24), dof p = 3a + c."""
    w, G, _ = _shape_gradients(h)
    K_lam = np.zeros((24, 24))
    K_mu = np.zeros((24, 24))
    for g in range(8):
        Bdiv = np.zeros(24)
        Dsym = np.zeros((3, 3, 24))
        for a in range(8):
            for c in range(3):
                p = 3 * a + c
                Bdiv[p] = G[g, a, c]
                for k in range(3):
                    Dsym[c, k, p] += 0.5 * G[g, a, k]
                    Dsym[k, c, p] += 0.5 * G[g, a, k]
        K_lam += w[g] * np.outer(Bdiv, Bdiv)
        D = Dsym.reshape(9, 24)
        K_mu += w[g] * 2.0 * (D.T @ D)
    return K_lam, K_mu


# -- assembled operator -------------------------------------------------------------

class _Operator:
    """Matrix-free symmetric operator on the full node array (n, n, n, 3)."""

    def __init__(self, domain: VoxelDomain, pair: MaterialPair):
        self.domain = domain
        n = domain.n_cells
        self.lam_c = np.where(domain.chi, float(pair.inclusion.lam),
                              float(pair.host.lam)).reshape(-1)
        self.mu_c = np.where(domain.chi, float(pair.inclusion.mu),
                             float(pair.host.mu)).reshape(-1)
        self.K_lam, self.K_mu = _element_matrices(domain.h)
        self.n = domain.n_nodes

    def _gather(self, u: np.ndarray) -> np.ndarray:
        n = self.domain.n_cells
        cols = []
        for a in range(8):
            dx, dy, dz = a & 1, (a >> 1) & 1, (a >> 2) & 1
            cols.append(u[dx:dx + n, dy:dy + n, dz:dz + n, :].reshape(-1, 3))
        return np.concatenate(cols, axis=1)  # (ncells, 24), p = 3a + c

    def _scatter(self, V: np.ndarray) -> np.ndarray:
        n = self.domain.n_cells
        out = np.zeros((self.n, self.n, self.n, 3))
        for a in range(8):
            dx, dy, dz = a & 1, (a >> 1) & 1, (a >> 2) & 1
            out[dx:dx + n, dy:dy + n, dz:dz + n, :] += V[:, 3 * a:3 * a + 3].reshape(n, n, n, 3)
        return out

    def apply_full(self, u: np.ndarray) -> np.ndarray:
        U = self._gather(u)
        V = (U @ self.K_lam.T) * self.lam_c[:, None] + (U @ self.K_mu.T) * self.mu_c[:, None]
        return self._scatter(V)

    def apply_interior(self, u: np.ndarray) -> np.ndarray:
        out = self.apply_full(u)
        _zero_boundary(out)
        return out

    def diagonal(self) -> np.ndarray:
        n = self.domain.n_cells
        dK = np.diag(self.K_lam)
        dM = np.diag(self.K_mu)
        V = self.lam_c[:, None] * dK[None, :] + self.mu_c[:, None] * dM[None, :]
        return self._scatter(V)

    def load_energy(self, grad_field: np.ndarray, dlam: np.ndarray, dmu: np.ndarray,
                    cells_mask: np.ndarray) -> np.ndarray:
        """Nodal load b(v) = -int dC grad(field) . grad(v) over masked cells.

        grad_field: (m, 8, 3, 3) displacement gradients at the 8 Gauss points
        of each masked cell (entry (c, k) = d_k u_c); dlam/dmu: (m,) per-cell
        coefficient differences.
        """
        n = self.domain.n_cells
        w, G, _ = _shape_gradients(self.domain.h)
        m = grad_field.shape[0]
        b_cells = np.zeros((m, 24))
        for g in range(8):
            H = grad_field[:, g]                       # (m, 3, 3)
            tr = np.trace(H, axis1=-2, axis2=-1)
            T = (dlam * tr)[:, None, None] * np.eye(3) \
                + dmu[:, None, None] * (H + np.swapaxes(H, -2, -1))
            # b[p=3a+c] -= w_g sum_k T[c,k] G[g,a,k]
            contrib = np.einsum("mck,ak->mac", T, G[g]) * w[g]
            b_cells -= contrib.reshape(m, 24)
        out = np.zeros((self.n, self.n, self.n, 3))
        idx = np.nonzero(cells_mask.reshape(-1))[0]
        ii, jj, kk = np.unravel_index(idx, (n, n, n))
        for a in range(8):
            dx, dy, dz = a & 1, (a >> 1) & 1, (a >> 2) & 1
            np.add.at(out, (ii + dx, jj + dy, kk + dz), b_cells[:, 3 * a:3 * a + 3])
        _zero_boundary(out)
        return out


def _zero_boundary(u: np.ndarray) -> None:
    u[0, :, :, :] = 0.0
    u[-1, :, :, :] = 0.0
    u[:, 0, :, :] = 0.0
    u[:, -1, :, :] = 0.0
    u[:, :, 0, :] = 0.0
    u[:, :, -1, :] = 0.0


def _boundary_mask(n: int) -> np.ndarray:
    m = np.zeros((n, n, n), dtype=bool)
    m[0] = m[-1] = True
    m[:, 0] = m[:, -1] = True
    m[:, :, 0] = m[:, :, -1] = True
    return m


def _pcg(op: _Operator, b: np.ndarray, tol: float, maxiter: int):
    """Jacobi-preconditioned conjugate gradients on the interior subspace."""
    diag = op.diagonal()
    _zero_boundary(diag)
    inv_diag = np.where(diag > 0, 1.0 / np.where(diag > 0, diag, 1.0), 0.0)
    x = np.zeros_like(b)
    r = b.copy()
    z = inv_diag * r
    p = z.copy()
    rz = float(np.tensordot(r, z, axes=4))
    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        return x, 0, 0.0
    for it in range(1, maxiter + 1):
        Ap = op.apply_interior(p)
        alpha = rz / float(np.tensordot(p, Ap, axes=4))
        x += alpha * p
        r -= alpha * Ap
        res = float(np.linalg.norm(r))
        if res <= tol * b_norm:
            return x, it, res / b_norm
        z = inv_diag * r
        rz_new = float(np.tensordot(r, z, axes=4))
        p = z + (rz_new / rz) * p
        rz = rz_new
    raise SolverDiverged(
        f"PCG residual {res / b_norm:.3e} above tol {tol:.3e} after {maxiter} iterations")


def solve_transmission(problem: TransmissionProblem, tol: float = 1e-10,
                       maxiter: int | None = None):
    """Solve the Dirichlet transmission problem; returns (field, stats).

    The field has shape (n_nodes, n_nodes, n_nodes, 3); stats reports the
    iteration count and final relative residual.
    """
    if problem.source is not None:
        raise ValueError("use numeric_green for problems with a point source")
    dom = problem.domain
    op = _Operator(dom, problem.pair)
    n = dom.n_nodes
    pts = dom.node_points()
    u_bc = np.zeros((n, n, n, 3))
    mask = _boundary_mask(n)
    u_bc[mask] = np.asarray(problem.boundary_data(pts[mask]), dtype=float)
    b = -op.apply_full(u_bc)
    _zero_boundary(b)
    maxiter = maxiter or 40 * n
    x, iters, res = _pcg(op, b, tol, maxiter)
    u = x + u_bc
    stats = {"iterations": iters, "relative_residual": res,
             "n_nodes": n, "dofs": 3 * (n - 2) ** 3}
    return u, stats


def _check_source_position(dom: VoxelDomain, y: np.ndarray) -> bool:
    """Validate the source location; returns chi at the source."""
    lo = dom.bounds[:, 0] + 2 * dom.h
    hi = dom.bounds[:, 1] - 2 * dom.h
    if np.any(y <= lo) or np.any(y >= hi):
        raise SourceTooCloseToInterface("source must sit well inside the box")
    cell = np.floor((y - dom.bounds[:, 0]) / dom.h).astype(int)
    n = dom.n_cells
    sl = tuple(slice(max(0, c - 2), min(n, c + 3)) for c in cell)
    patch = dom.chi[sl]
    if patch.any() and not patch.all():
        raise SourceTooCloseToInterface(
            "source must be at least two cells away from the material interface")
    return bool(dom.chi[tuple(np.clip(cell, 0, n - 1))])


def trilinear_sample(domain: VoxelDomain, field: np.ndarray, x) -> np.ndarray:
    """Trilinear interpolation of a nodal field (n, n, n, 3) at points (..., 3)."""
    x = np.asarray(x, dtype=float)
    shape = x.shape[:-1]
    p = x.reshape(-1, 3)
    t = (p - domain.bounds[:, 0]) / domain.h
    i0 = np.clip(np.floor(t).astype(int), 0, domain.n_cells - 1)
    f = t - i0
    out = np.zeros((p.shape[0], 3))
    for a in range(8):
        dx, dy, dz = a & 1, (a >> 1) & 1, (a >> 2) & 1
        wx = f[:, 0] if dx else 1 - f[:, 0]
        wy = f[:, 1] if dy else 1 - f[:, 1]
        wz = f[:, 2] if dz else 1 - f[:, 2]
        out += (wx * wy * wz)[:, None] * field[i0[:, 0] + dx, i0[:, 1] + dy, i0[:, 2] + dz]
    return out.reshape(shape + (3,))


@dataclass(frozen=True)
class GreenSolution:
    """Numeric fundamental-solution field from singularity subtraction.

    remainder holds the smooth nodal correction R; the total field is
    R + Kelvin(., y) l with the subtraction material, reconstructed on the
    nodes in `total` (nan at nodes closer to the source than the Kelvin
    guard) and at arbitrary interior points through evaluate().
    """

    domain: VoxelDomain
    source_point: np.ndarray
    source_dir: np.ndarray
    subtraction_material: LameMaterial
    remainder: np.ndarray
    total: np.ndarray
    stats: dict

    def evaluate(self, x) -> np.ndarray:
        """Green displacement at arbitrary points: interpolated R + Kelvin part."""
        kel = np.einsum("...ij,j->...i",
                        kelvin_matrix(x, self.source_point, self.subtraction_material),
                        self.source_dir)
        return trilinear_sample(self.domain, self.remainder, x) + kel


def numeric_green(problem: TransmissionProblem, tol: float = 1e-10,
                  maxiter: int | None = None) -> GreenSolution:
    """Green-function solve by singularity subtraction.

    problem.source = (y, l) with y strictly inside the box, two cells clear
    of the interface.  Solves for the remainder R = u - G_sub(., y) l where
    G_sub is the Kelvin matrix of the material at the source; the load lives
    on cells whose coefficients differ from that material.  boundary_data
    describes the total field.
    """
    if problem.source is None:
        raise ValueError("numeric_green requires a point source")
    dom = problem.domain
    pair = problem.pair
    y, l = problem.source
    y = np.asarray(y, dtype=float)
    l = np.asarray(l, dtype=float)
    in_inclusion = _check_source_position(dom, y)
    sub_mat = pair.inclusion if in_inclusion else pair.host

    op = _Operator(dom, pair)
    n = dom.n_nodes
    pts = dom.node_points()

    # load on cells where the coefficient differs from the subtraction material
    lam_s, mu_s = float(sub_mat.lam), float(sub_mat.mu)
    dlam_all = op.lam_c - lam_s
    dmu_all = op.mu_c - mu_s
    cells_mask = (dlam_all != 0.0) | (dmu_all != 0.0)
    idx = np.nonzero(cells_mask)[0]
    if idx.size:
        centers = dom.cell_centers().reshape(-1, 3)[idx]
        _, G, gauss_pts = _shape_gradients(dom.h)
        offsets = (np.array(gauss_pts) - 0.5) * dom.h
        xg = centers[:, None, :] + offsets[None, :, :]          # (m, 8, 3)
        grad = kelvin_gradient(xg, y, sub_mat)                  # (m, 8, 3, 3, 3)
        gfield = np.einsum("mgijk,j->mgik", grad, l)
        b = op.load_energy(gfield, dlam_all[idx], dmu_all[idx], cells_mask)
    else:
        b = np.zeros((n, n, n, 3))

    # boundary data for the remainder: total minus subtracted Kelvin part
    mask = _boundary_mask(n)
    bpts = pts[mask]
    g_total = np.asarray(problem.boundary_data(bpts), dtype=float)
    g_kelvin = np.einsum("nij,j->ni", kelvin_matrix(bpts, y, sub_mat), l)
    u_bc = np.zeros((n, n, n, 3))
    u_bc[mask] = g_total - g_kelvin
    b -= op.apply_full(u_bc)
    _zero_boundary(b)

    maxiter = maxiter or 40 * n
    x, iters, res = _pcg(op, b, tol, maxiter)
    remainder = x + u_bc
    sep = np.linalg.norm(pts - y, axis=-1)
    safe = sep > 1e-9
    kel = np.zeros((n, n, n, 3))
    kel[safe] = np.einsum("nij,j->ni", kelvin_matrix(pts[safe], y, sub_mat), l)
    u_total = remainder + np.where(safe[..., None], kel, np.nan)
    stats = {"iterations": iters, "relative_residual": res,
             "n_nodes": n, "dofs": 3 * (n - 2) ** 3,
             "source_in_inclusion": in_inclusion}
    return GreenSolution(domain=dom, source_point=y, source_dir=l,
                         subtraction_material=sub_mat, remainder=remainder,
                         total=u_total, stats=stats)


# -- error measurement and studies ---------------------------------------------------

def field_errors(u: np.ndarray, exact: np.ndarray, h: float,
                 mask: np.ndarray | None = None) -> tuple[float, float]:
    """Interior (L2, max) errors against an exact nodal field."""
    diff = np.linalg.norm(u - exact, axis=-1)
    inner = np.zeros(diff.shape, dtype=bool)
    inner[1:-1, 1:-1, 1:-1] = True
    if mask is not None:
        inner &= mask
    vals = diff[inner]
    return float(np.sqrt(h**3 * np.sum(vals**2))), float(vals.max())


def convergence_orders(hs, errors) -> float:
    """Least-squares slope of log(error) against log(h)."""
    lx = np.log(np.asarray(hs, dtype=float))
    ly = np.log(np.asarray(errors, dtype=float))
    A = np.stack([lx, np.ones_like(lx)], axis=1)
    sol, *_ = np.linalg.lstsq(A, ly, rcond=None)
    return float(sol[0])


def convergence_table(make_domain, pair: MaterialPair, exact_field,
                      grid_ns, tol: float = 1e-10, mask_fn=None):
    """Errors against an exact solution over a grid sequence.

    make_domain(n_cells) -> VoxelDomain; exact_field(points) -> (..., 3)
    supplies both boundary data and the reference; mask_fn optionally
    restricts the error norms to a node subset (points -> bool).  Returns
    rows (grid_n, error_l2, error_max, order_estimate) where the order
    estimate is the pairwise log2 ratio (nan for the first grid).
    """
    from .gap_analysis import ScanDataset

    rows = []
    errs = []
    hs = []
    for n_cells in grid_ns:
        dom = make_domain(n_cells)
        problem = TransmissionProblem(pair=pair, domain=dom, boundary_data=exact_field)
        u, _ = solve_transmission(problem, tol=tol)
        pts = dom.node_points()
        exact = np.asarray(exact_field(pts), dtype=float)
        mask = None if mask_fn is None else np.asarray(mask_fn(pts), dtype=bool)
        e2, emax = field_errors(u, exact, dom.h, mask)
        order = float("nan") if not errs else float(np.log2(errs[-1] / e2))
        rows.append((dom.n_nodes, e2, emax, order))
        errs.append(e2)
        hs.append(dom.h)
    ds = ScanDataset(kind="convergence",
                     columns=("grid_n", "error_l2", "error_max", "order_estimate"),
                     rows=rows)
    return ds, convergence_orders(hs, errs)


def asymptotics_probe(domain: VoxelDomain, pair: MaterialPair, alpha: float,
                      h_source_list, tol: float = 1e-10):
    """Near-interface remainder |u_D - u_plus| versus distance from the source.

    For each source depth h the transmission Green function is computed by
    singularity subtraction with bimaterial boundary data, sampled at nodes
    just above the interface graph, and compared against the flat-interface
    closed form.  Returns a ScanDataset with rows
    (h_source, dist, remainder, u_plus_norm) and meta containing the fitted
    log-log slope and the predicted exponent alpha - 1.
    """
    from .bimaterial import gamma_plus
    from .gap_analysis import ScanDataset, loglog_slope

    if domain.graph is None:
        raise ValueError("asymptotics_probe needs a graph-interface domain")
    phi = domain.graph
    n = domain.n_nodes
    ax = domain.node_axes()
    rows = []
    for h_src in h_source_list:
        y = np.array([0.0, 0.0, -float(h_src)])
        l = np.array([0.0, 0.0, 1.0])
        bdata = lambda p: np.einsum("...ij,j->...i", gamma_plus(p, y, pair), l)
        problem = TransmissionProblem(pair=pair, domain=domain,
                                      boundary_data=bdata, source=(y, l))
        sol = numeric_green(problem, tol=tol)
        u = sol.total
        # probe nodes one layer above the interface graph along the x1 axis
        jmid = n // 2
        for i in range(n):
            x1 = ax[0][i]
            if abs(x1) > 0.45 * (domain.bounds[0, 1] - domain.bounds[0, 0]):
                continue
            zs = float(np.asarray(phi(np.array([[x1, 0.0]])))[0])
            k = int(np.searchsorted(ax[2], zs + domain.h))
            if k <= 1 or k >= n - 2:
                continue
            x = np.array([x1, ax[1][jmid], ax[2][k]])
            if not bool(np.asarray(domain.indicator(x))):
                continue
            up = gamma_plus(x, y, pair) @ l
            rem = float(np.linalg.norm(u[i, jmid, k] - up))
            rows.append((float(h_src), float(np.linalg.norm(x - y)), rem,
                         float(np.linalg.norm(up))))
    if len({round(r[1], 12) for r in rows}) < 8:
        raise GridTooCoarse("fewer than 8 usable sample distances")
    dists = np.array([r[1] for r in rows])
    rems = np.array([r[2] for r in rows])
    good = rems > 0
    slope = loglog_slope(dists[good], rems[good]) if good.sum() >= 2 else float("nan")
    ds = ScanDataset(kind="asymptotics",
                     columns=("h_source", "dist", "remainder", "u_plus_norm"),
                     rows=rows,
                     meta={"fitted_slope": slope, "predicted_exponent": alpha - 1.0})
    return ds
