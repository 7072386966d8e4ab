"""Named verification suites mapping one-to-one to the acceptance criteria.

Each suite returns a SuiteResult with a pass flag, a JSON-able metrics dict,
and optional ScanDataset artifacts.  The CLI `verify` command runs suites by
name and writes artifacts plus a machine-readable summary; the pytest
acceptance module runs the same functions in-process.  All randomness is
drawn from a caller-supplied seed, so identical seeds give identical
artifacts byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bimaterial import gamma_plus, gamma_plus_gradient, gap_matrix
from .fd_oracle import (
    TransmissionProblem,
    VoxelDomain,
    convergence_table,
    numeric_green,
)
from .gap_analysis import (
    LAMBDA_W_CANDIDATES,
    ScanDataset,
    blowup_profile,
    dimensional_reduction_residual,
    factorization_residuals,
    loglog_slope,
    p_poly_xx,
    p_poly_zz,
    q2_value,
    q2_value_recomputed,
    select_lambda_w,
)
from .geometry_metrics import VoxelSet, hausdorff_distance, modified_distance
from .kelvin import kelvin_matrix, traction_from_gradient
from .materials import MaterialPair, material_from_poisson
from .quadrature_identities import HalfSpaceQuadrature, verify_transmission_identity

PRINTED_TRIPLES = {
    "zz": [(Fraction(1, 8), Fraction(17, 36), Fraction(6, 5)),
           (Fraction(1, 4), Fraction(661, 1628), Fraction(11, 10)),
           (Fraction(3, 8), Fraction(17, 36), Fraction(11, 10))],
    "xx": [(Fraction(1, 5), Fraction(331, 663), Fraction(17, 15)),
           (Fraction(1, 4), Fraction(1951, 47348), Fraction(19, 20)),
           (Fraction(7, 20), Fraction(317, 1596), Fraction(19, 20))],
}


@dataclass
class SuiteResult:
    name: str
    passed: bool
    metrics: dict
    datasets: dict = field(default_factory=dict)


def random_pair(rng: np.random.Generator) -> MaterialPair:
    """Admissible pair with Poisson ratios in (0, 1/2) and mu ratio in [1/2, 2]."""
    nu = rng.uniform(0.05, 0.42)
    nu_i = rng.uniform(0.05, 0.42)
    s = float(np.exp(rng.uniform(np.log(0.5), np.log(2.0))))
    host = material_from_poisson(1.0, nu)
    incl = material_from_poisson(1.0 / s, nu_i)
    return MaterialPair(host, incl)


# -- criterion 1 ---------------------------------------------------------------

def suite_homogeneous_limit(seed: int = 0) -> SuiteResult:
    rng = np.random.default_rng(seed)
    host = material_from_poisson(1.0 + rng.uniform(0, 1), rng.uniform(0.05, 0.42))
    pair = MaterialPair(host, host)
    n = 1000
    x = rng.normal(size=(n, 3)) * 1.5
    x[:, 2] = np.where(rng.random(n) < 0.5, 1.0, -1.0) * (np.abs(x[:, 2]) + 0.02)
    y = rng.normal(size=(n, 3)) * 1.5
    y[:, 2] = -np.abs(y[:, 2]) - 0.02
    G = gamma_plus(x, y, pair)
    K = kelvin_matrix(x, y, host)
    num = np.linalg.norm(G - K, axis=(-2, -1))
    den = np.linalg.norm(K, axis=(-2, -1))
    worst = float(np.max(num / den))
    return SuiteResult("homogeneous-limit", worst <= 1e-10,
                       {"max_relative_gap": worst, "tolerance": 1e-10, "samples": n})


# -- criterion 2 ---------------------------------------------------------------

def suite_interface_conditions(seed: int = 0) -> SuiteResult:
    rng = np.random.default_rng(seed)
    n = 200
    worst_disp = 0.0
    worst_trac = 0.0
    ez = np.array([0.0, 0.0, 1.0])
    for _ in range(n):
        pair = random_pair(rng)
        x = np.array([rng.uniform(-2, 2), rng.uniform(-2, 2), 0.0])
        y = np.array([rng.uniform(-1, 1), rng.uniform(-1, 1), -rng.uniform(0.2, 2.0)])
        gu = gamma_plus(x, y, pair, side=+1)
        gl = gamma_plus(x, y, pair, side=-1)
        worst_disp = max(worst_disp,
                         float(np.linalg.norm(gu - gl) / np.linalg.norm(gu)))
        du = gamma_plus_gradient(x, y, pair, side=+1)
        dl = gamma_plus_gradient(x, y, pair, side=-1)
        tu = traction_from_gradient(du, ez, pair.inclusion)
        tl = traction_from_gradient(dl, ez, pair.host)
        worst_trac = max(worst_trac,
                         float(np.linalg.norm(tu - tl) / np.linalg.norm(tu)))
    return SuiteResult(
        "interface-conditions",
        worst_disp <= 1e-8 and worst_trac <= 1e-6,
        {"max_displacement_jump": worst_disp, "displacement_tolerance": 1e-8,
         "max_traction_jump": worst_trac, "traction_tolerance": 1e-6,
         "configurations": n})


# -- criterion 3 ---------------------------------------------------------------

def suite_degenerate_triples(seed: int = 0) -> SuiteResult:
    rows = []
    ok = True
    for case, triples in PRINTED_TRIPLES.items():
        for (nu, nu_i, s) in triples:
            printed = q2_value(case, nu, nu_i, s)
            recomputed = q2_value_recomputed(case, nu, nu_i, s)
            ok &= printed == 0
            rows.append({
                "case": case,
                "nu": str(nu), "nu_i": str(nu_i), "s": str(s),
                "printed_q2": str(printed),
                "recomputed_q2": str(recomputed),
                "printed_is_zero": printed == 0,
                "recomputed_matches_printed": recomputed == printed,
            })
    discrepancies = [r for r in rows if not r["recomputed_matches_printed"]]
    return SuiteResult("degenerate-triples", ok, {
        "triples": rows,
        "note": ("recomputed zz values derive from the closed-form solution and "
                 "differ from the printed zeros; logged per criterion"),
        "discrepancy_count": len(discrepancies)})


# -- criterion 4 ---------------------------------------------------------------

def suite_factorizations(seed: int = 0) -> SuiteResult:
    res = factorization_residuals()
    metrics = {name: poly.is_zero() for name, poly in res.items()}
    metrics["dimensional_reduction_zz"] = dimensional_reduction_residual("zz").is_zero()
    metrics["dimensional_reduction_xx"] = dimensional_reduction_residual("xx").is_zero()
    return SuiteResult("factorizations", all(metrics.values()),
                       {"identically_zero": metrics})


# -- criterion 5 ---------------------------------------------------------------

def suite_gap_polynomial(seed: int = 0) -> SuiteResult:
    rng = np.random.default_rng(seed)
    ts = np.arange(1.1, 1.95, 0.1)
    y0 = np.array([0.0, 0.0, -1.0])
    worst = 0.0
    for _ in range(20):
        pair = random_pair(rng)
        pz = p_poly_zz(pair)
        px = p_poly_xx(pair)
        gaps = np.stack([gap_matrix(y0, np.array([0.0, 0.0, -(t - 1.0)]), pair)
                         for t in ts])
        pred_zz = np.array([pz.gap_value(t) for t in ts])
        pred_xx = np.array([px.gap_value(t) for t in ts])
        rel_zz = np.max(np.abs(gaps[:, 2, 2] - pred_zz)) / np.max(np.abs(pred_zz))
        rel_xx = np.max(np.abs(gaps[:, 1, 1] - pred_xx)) / np.max(np.abs(pred_xx))
        off = np.max(np.abs(gaps - np.eye(3) * gaps.diagonal(axis1=1, axis2=2)[:, :, None]))
        worst = max(worst, float(rel_zz), float(rel_xx))
    return SuiteResult("gap-polynomial", worst <= 1e-10,
                       {"max_relative_mismatch": worst, "tolerance": 1e-10,
                        "t_grid": [round(float(t), 3) for t in ts], "pairs": 20,
                        "max_offdiagonal_on_axis": float(off)})


# -- criterion 6 ---------------------------------------------------------------

def suite_transmission_identity(seed: int = 0, pairs: int = 5) -> SuiteResult:
    rng = np.random.default_rng(seed)
    y0 = np.array([0.0, 0.0, -1.0])
    w0 = np.array([0.0, 0.0, -0.75])
    quad = HalfSpaceQuadrature(rho=50.0)
    reports = []
    ok = True
    for _ in range(pairs):
        pair = random_pair(rng)
        for i in range(3):
            e = np.zeros(3)
            e[i] = 1.0
            rep = verify_transmission_identity(y0, w0, e, e, pair, quad)
            rep["axis"] = i + 1
            rep["nu"] = float(pair.host.nu)
            rep["nu_i"] = float(pair.inclusion.nu)
            rep["mu_i"] = float(pair.inclusion.mu)
            reports.append(rep)
            ok &= rep["rel_residual"] <= 5e-2
            ok &= 0.7 <= rep["tail_rate"] <= 1.3
    worst = max(r["rel_residual"] for r in reports)
    rates = [r["tail_rate"] for r in reports]
    return SuiteResult("transmission-identity", ok, {
        "max_rel_residual": worst, "residual_tolerance": 5e-2,
        "tail_rate_range": [min(rates), max(rates)],
        "tail_rate_bounds": [0.7, 1.3],
        "rho": quad.rho, "reports": reports})


# -- criterion 7 ---------------------------------------------------------------

def suite_blowup(seed: int = 0, pairs_per_axis: int = 50) -> SuiteResult:
    rng = np.random.default_rng(seed)
    h_list = [1e-1, 1e-2, 1e-3, 1e-4]
    worst_slope_dev = 0.0
    min_coeff = np.inf
    datasets = {}
    for axis in (1, 2, 3):
        for k in range(pairs_per_axis):
            pair = random_pair(rng)
            lw, val = select_lambda_w(pair, axis)
            ds = blowup_profile(pair, axis, float(lw), h_list)
            slope = loglog_slope(ds.column("h"), ds.column("gap_abs"))
            worst_slope_dev = max(worst_slope_dev, abs(slope + 1.0))
            min_coeff = min(min_coeff, val)
            if k == 0:
                datasets[f"blowup_axis{axis}"] = ds
    ok = worst_slope_dev <= 1e-12 and min_coeff > 0
    return SuiteResult("blowup", ok, {
        "max_slope_deviation": worst_slope_dev, "slope_tolerance": 1e-12,
        "min_selected_gap": float(min_coeff),
        "pairs_per_axis": pairs_per_axis,
        "lambda_w_candidates": [str(c) for c in LAMBDA_W_CANDIDATES]},
        datasets)


# -- criterion 8 ---------------------------------------------------------------

def suite_fd_convergence(seed: int = 0, grids=(16, 32, 64)) -> SuiteResult:
    rng = np.random.default_rng(seed)
    bounds = [(-1.0, 1.0)] * 3
    host = material_from_poisson(1.0, 0.25)
    incl = material_from_poisson(2.0, 1.0 / 3.0)
    pair = MaterialPair(host, incl)
    pair_h = MaterialPair(host, host)
    l = np.array([0.3, -0.5, 0.81])
    l /= np.linalg.norm(l)

    y_out = np.array([1.6, 0.7, 2.1])
    kelvin_exact = lambda p: np.einsum("...ij,j->...i", kelvin_matrix(p, y_out, host), l)
    ds_k, order_k = convergence_table(
        lambda n: VoxelDomain.empty(bounds, n), pair_h, kelvin_exact, grids)

    y_src = np.array([0.2, 0.3, -1.7])
    gp_exact = lambda p: np.einsum("...ij,j->...i", gamma_plus(p, y_src, pair), l)
    ds_g, order_g = convergence_table(
        lambda n: VoxelDomain.halfspace(bounds, n), pair, gp_exact, grids)
    ds_f, order_f = convergence_table(
        lambda n: VoxelDomain.halfspace(bounds, n), pair, gp_exact, grids,
        mask_fn=lambda p: np.abs(p[..., 2]) >= 0.25)

    ok = order_k >= 1.8 and order_g >= 0.8 and order_f >= 1.8
    return SuiteResult("fd-convergence", ok, {
        "kelvin_order": order_k, "kelvin_floor": 1.8,
        "interface_global_order": order_g, "interface_global_floor": 0.8,
        "interface_far_order": order_f, "interface_far_floor": 1.8,
        "grids": list(grids)},
        {"convergence_kelvin": ds_k, "convergence_interface": ds_g,
         "convergence_interface_far": ds_f})


# -- criterion 9 ---------------------------------------------------------------

def suite_fd_reciprocity(seed: int = 0) -> SuiteResult:
    bounds = [(-1.0, 1.0)] * 3
    host = material_from_poisson(1.0, 0.25)
    incl = material_from_poisson(2.0, 1.0 / 3.0)
    pair = MaterialPair(host, incl)
    center = np.array([0.0, 0.0, 0.1])
    radius = 0.4
    y1 = np.array([0.30625, 0.0125, -0.52812])
    x2 = np.array([-0.41875, 0.11875, -0.31562])
    i, j = 0, 2  # e_i . u(x2; y1, e_j) vs e_j . u(y1; x2, e_i)
    l_j = np.eye(3)[j]
    l_i = np.eye(3)[i]

    def solve(n_cells, y, l):
        dom = VoxelDomain.ball(bounds, n_cells, center, radius)
        bdata = lambda p: np.einsum("...ij,j->...i", kelvin_matrix(p, y, host), l)
        return numeric_green(TransmissionProblem(pair, dom, bdata, source=(y, l)))

    vals = {}
    for n_cells in (16, 32):
        s1 = solve(n_cells, y1, l_j)
        s2 = solve(n_cells, x2, l_i)
        vals[n_cells] = (float(s1.evaluate(x2)[i]), float(s2.evaluate(y1)[j]))
    defect = abs(vals[32][0] - vals[32][1])
    disc = max(abs(vals[32][0] - vals[16][0]), abs(vals[32][1] - vals[16][1]))
    ok = defect <= 3.0 * disc
    return SuiteResult("fd-reciprocity", ok, {
        "value_ij": vals[32][0], "value_ji": vals[32][1],
        "reciprocity_defect": defect,
        "measured_discretization_error": disc,
        "bound_factor": 3.0, "grid": 33})


# -- criterion 10 --------------------------------------------------------------

def _random_blob(rng, n: int, h: float) -> VoxelSet:
    origin = np.full(3, -1.0)
    centers = rng.uniform(-0.45, 0.45, size=(4, 3))
    radii = rng.uniform(0.2, 0.4, size=4)

    def ind(p):
        out = np.zeros(p.shape[:-1], dtype=bool)
        for c, r in zip(centers, radii):
            out |= np.linalg.norm(p - c, axis=-1) < r
        return out

    return VoxelSet.from_indicator(origin, h, (n, n, n), ind)


def suite_metrics(seed: int = 0, shape_pairs: int = 20) -> SuiteResult:
    rng = np.random.default_rng(seed)
    n = 40
    h = 2.0 / n
    voxdiag = h * np.sqrt(3.0)
    worst_excess = -np.inf
    ratios = []
    for _ in range(shape_pairs):
        a = _random_blob(rng, n, h)
        b = _random_blob(rng, n, h)
        dh = hausdorff_distance(a, b)
        dmu = modified_distance(a, b)
        worst_excess = max(worst_excess, dmu - dh)
        if dmu > 0:
            ratios.append(dh / dmu)
    # pocket: solid box versus the same box with an internal cavity reachable
    # only through a channel that the solid box seals
    occ_solid = np.zeros((20, 20, 20), dtype=bool)
    occ_solid[4:16, 4:16, 4:16] = True
    occ_holed = occ_solid.copy()
    occ_holed[8:12, 8:12, 8:12] = False
    occ_holed[9:11, 9:11, 12:16] = False
    d1 = VoxelSet(np.zeros(3), 0.1, occ_holed)
    d2 = VoxelSet(np.zeros(3), 0.1, occ_solid)
    pocket_dmu = modified_distance(d1, d2)
    pocket_dh = hausdorff_distance(d1, d2)
    ok = worst_excess <= 2 * voxdiag and pocket_dmu < pocket_dh
    return SuiteResult("metrics", ok, {
        "max_dmu_minus_dh": float(worst_excess),
        "allowance": float(2 * voxdiag),
        "pocket_dmu": pocket_dmu, "pocket_dh": pocket_dh,
        "pocket_strict": pocket_dmu < pocket_dh,
        "ratio_dh_over_dmu_max": float(max(ratios)) if ratios else None,
        "shape_pairs": shape_pairs})


SUITES = {
    "homogeneous-limit": suite_homogeneous_limit,
    "interface-conditions": suite_interface_conditions,
    "degenerate-triples": suite_degenerate_triples,
    "factorizations": suite_factorizations,
    "gap-polynomial": suite_gap_polynomial,
    "transmission-identity": suite_transmission_identity,
    "blowup": suite_blowup,
    "fd-convergence": suite_fd_convergence,
    "fd-reciprocity": suite_fd_reciprocity,
    "metrics": suite_metrics,
}
