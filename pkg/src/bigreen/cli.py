"""Command-line interface: evaluations, scans, oracle runs, verification suites.

Exit codes: 0 success, 1 at least one failed check, 2 usage/config errors.
All numeric output is serialized with 17 significant digits; identical
configuration and seed produce byte-identical artifacts.  The environment
variable ELAB_THREADS caps the BLAS thread pools.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .errors import BigreenError, ConfigParse
from .fields import save_field, save_voxels
from .gap_analysis import ScanDataset, blowup_profile, loglog_slope, select_lambda_w, zero_locus_scan
from .kelvin import kelvin_gradient, kelvin_matrix
from .materials import (
    DEFAULT_APRIORI,
    MaterialPair,
    load_material_config,
    material_from_poisson,
)
from .bimaterial import gamma_plus, gamma_plus_gradient
from .quadrature_identities import HalfSpaceQuadrature, verify_transmission_identity
from .verify import SUITES

DEMO_PAIR = MaterialPair(material_from_poisson(1.0, 0.25),
                         material_from_poisson(2.0, 1.0 / 3.0))


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _parse_point(text: str) -> np.ndarray:
    try:
        parts = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise ConfigParse(f"bad point {text!r}: {exc}") from exc
    if len(parts) != 3:
        raise ConfigParse(f"point needs three components, got {text!r}")
    return np.array(parts)


def _parse_range(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigParse(f"range must be lo:hi:n, got {text!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _load_pair(args) -> MaterialPair:
    if getattr(args, "config", None):
        pair, _ = load_material_config(args.config)
        return pair
    return DEMO_PAIR


def _print_matrix(mat: np.ndarray, label: str) -> None:
    print(label)
    for row in np.asarray(mat):
        print("  " + " ".join(_fmt(v) for v in row))


def _limit_threads() -> None:
    cap = os.environ.get("ELAB_THREADS")
    if not cap:
        return
    try:
        limit = max(1, int(cap))
    except ValueError:
        raise ConfigParse(f"ELAB_THREADS must be an integer, got {cap!r}")
    try:
        import threadpoolctl

        threadpoolctl.threadpool_limits(limits=limit)
    except ImportError:
        pass


# -- subcommands ---------------------------------------------------------------

def _cmd_eval_kelvin(args) -> int:
    pair = _load_pair(args)
    mat = pair.host
    x = _parse_point(args.x)
    y = _parse_point(args.y)
    _print_matrix(kelvin_matrix(x, y, mat), "kelvin matrix")
    if args.gradient:
        g = kelvin_gradient(x, y, mat)
        for k in range(3):
            _print_matrix(g[:, :, k], f"d/dx_{k + 1}")
    return 0


def _cmd_eval_bimaterial(args) -> int:
    pair = _load_pair(args)
    x = _parse_point(args.x)
    y = _parse_point(args.y)
    _print_matrix(gamma_plus(x, y, pair), "bimaterial matrix")
    if args.gradient:
        g = gamma_plus_gradient(x, y, pair)
        for k in range(3):
            _print_matrix(g[:, :, k], f"d/dx_{k + 1}")
    return 0


def _cmd_gap_scan(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    kw = {"nu": _parse_range(args.nu)}
    if args.s:
        kw["s"] = _parse_range(args.s)
    if args.nu_i:
        kw["nu_i"] = _parse_range(args.nu_i)
    ds = zero_locus_scan(args.case, slice=args.slice, **kw)
    base = out / f"zero_locus_{args.case}{'_' + args.slice if args.slice else ''}"
    ds.to_csv(f"{base}.csv")
    ds.crossings.to_csv(f"{base}_crossings.csv")
    print(f"wrote {base}.csv ({len(ds.rows)} rows) and "
          f"{base}_crossings.csv ({len(ds.crossings.rows)} crossings)")
    return 0


def _cmd_blowup(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    pair = _load_pair(args)
    lo, hi, n = _parse_range(args.h)
    h_list = list(np.geomspace(lo, hi, n))
    if args.lambda_w == "auto":
        lw, _ = select_lambda_w(pair, args.axis)
        lw = float(lw)
    else:
        lw = float(args.lambda_w)
    ds = blowup_profile(pair, args.axis, lw, h_list)
    path = out / f"blowup_axis{args.axis}.csv"
    ds.to_csv(path)
    slope = loglog_slope(ds.column("h"), ds.column("gap_abs"))
    print(f"wrote {path}; log-log slope {_fmt(slope)} (lambda_w {_fmt(lw)})")
    return 0


def _cmd_identity_check(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    pair = _load_pair(args)
    y0 = _parse_point(args.y0)
    w0 = _parse_point(args.w0)
    quad = HalfSpaceQuadrature(rho=args.rho)
    axes = np.eye(3)
    reports = []
    for i in range(3):
        rep = verify_transmission_identity(y0, w0, axes[i], axes[i], pair, quad)
        rep["axis"] = i + 1
        reports.append(rep)
        print(f"axis {i + 1}: integral {_fmt(rep['integral'])} closed "
              f"{_fmt(rep['closed_form'])} rel {_fmt(rep['rel_residual'])} "
              f"tail_rate {_fmt(rep['tail_rate'])}")
    path = out / "transmission_identity.json"
    with open(path, "w") as fh:
        json.dump(reports, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {path}")
    return 0


def _cmd_oracle(args) -> int:
    from .fd_oracle import TransmissionProblem, VoxelDomain, numeric_green
    from .verify import suite_fd_convergence, suite_fd_reciprocity

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.oracle_cmd == "convergence":
        grids = [int(g) for g in args.grids.split(",")]
        result = suite_fd_convergence(seed=args.seed, grids=grids)
        for name, ds in result.datasets.items():
            ds.to_csv(out / f"{name}.csv")
        _write_json(out / "oracle_convergence.json", result.metrics)
        print(f"convergence orders: kelvin {_fmt(result.metrics['kelvin_order'])}, "
              f"interface {_fmt(result.metrics['interface_global_order'])} "
              f"(far {_fmt(result.metrics['interface_far_order'])})")
        return 0 if result.passed else 1
    if args.oracle_cmd == "reciprocity":
        result = suite_fd_reciprocity(seed=args.seed)
        _write_json(out / "oracle_reciprocity.json", result.metrics)
        print(f"reciprocity defect {_fmt(result.metrics['reciprocity_defect'])} vs "
              f"3 x {_fmt(result.metrics['measured_discretization_error'])}")
        return 0 if result.passed else 1
    if args.oracle_cmd == "green":
        pair = _load_pair(args)
        y = _parse_point(args.source)
        l = _parse_point(args.force)
        l = l / np.linalg.norm(l)
        dom = VoxelDomain.ball([(-1, 1)] * 3, args.cells,
                               _parse_point(args.center), args.radius)
        bdata = lambda p: np.einsum("...ij,j->...i", kelvin_matrix(p, y, pair.host), l)
        sol = numeric_green(TransmissionProblem(pair, dom, bdata, source=(y, l)))
        save_field(out / "green_remainder.bin", sol.remainder,
                   dom.bounds[:, 0], dom.h, {"kind": "green_remainder"})
        save_voxels(out / "green_chi.bin", dom.chi, dom.bounds[:, 0], dom.h)
        _write_json(out / "green_stats.json", sol.stats)
        print(f"solved {dom.n_nodes}^3 grid in {sol.stats['iterations']} iterations")
        return 0
    raise ConfigParse(f"unknown oracle subcommand {args.oracle_cmd!r}")


def _cmd_metrics(args) -> int:
    from .geometry_metrics import VoxelSet, hausdorff_distance, modified_distance
    from .fields import load_voxels

    occ1, meta1 = load_voxels(args.set1)
    occ2, meta2 = load_voxels(args.set2)
    v1 = VoxelSet(np.array(meta1["origin"]), meta1["spacing"], occ1)
    v2 = VoxelSet(np.array(meta2["origin"]), meta2["spacing"], occ2)
    dh = hausdorff_distance(v1, v2)
    dmu = modified_distance(v1, v2)
    print(f"hausdorff {_fmt(dh)} +- {_fmt(v1.voxel_diagonal)}")
    print(f"modified  {_fmt(dmu)} +- {_fmt(v1.voxel_diagonal)}")
    return 0


def _sanitize(obj):
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _write_json(path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(_sanitize(obj), fh, indent=1, sort_keys=True)
        fh.write("\n")


def _cmd_verify(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    names = list(SUITES) if args.all else args.suite
    if not names:
        raise ConfigParse("verify needs --suite NAME (repeatable) or --all")
    for name in names:
        if name not in SUITES:
            raise ConfigParse(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    summary = {"seed": args.seed, "suites": {}}
    all_passed = True
    for name in names:
        result = SUITES[name](seed=args.seed)
        summary["suites"][name] = {"passed": result.passed, "metrics": result.metrics}
        all_passed &= result.passed
        for ds_name, ds in result.datasets.items():
            ds.to_csv(out / f"{ds_name}.csv")
            if ds.crossings is not None:
                ds.crossings.to_csv(out / f"{ds_name}_crossings.csv")
        _write_json(out / f"suite_{name}.json",
                    {"passed": result.passed, "metrics": result.metrics})
        print(f"[{'PASS' if result.passed else 'FAIL'}] {name}")
    summary["all_passed"] = all_passed
    _write_json(out / "summary.json", summary)
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bigreen",
        description="Elastostatic fundamental solutions for bonded half-spaces: "
                    "evaluation, identity checks, scans, FD oracle, metrics.")
    ap.add_argument("--out", default="bigreen-out", help="output directory for artifacts")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    ap.add_argument("--config", help="JSON material configuration file")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-kelvin", help="evaluate the free-space matrix")
    p.add_argument("--x", required=True, help="evaluation point x1,x2,x3")
    p.add_argument("--y", required=True, help="source point y1,y2,y3")
    p.add_argument("--gradient", action="store_true")
    p.set_defaults(fn=_cmd_eval_kelvin)

    p = sub.add_parser("eval-bimaterial", help="evaluate the bonded half-space matrix")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--gradient", action="store_true")
    p.set_defaults(fn=_cmd_eval_bimaterial)

    p = sub.add_parser("gap-scan", help="zero-locus scan of the printed Q2")
    p.add_argument("--case", choices=("zz", "xx"), required=True)
    p.add_argument("--slice", choices=("nu-eq-nui", "s-eq-1"), default=None)
    p.add_argument("--nu", required=True, help="lo:hi:n")
    p.add_argument("--nu-i", dest="nu_i", help="lo:hi:n")
    p.add_argument("--s", help="lo:hi:n")
    p.set_defaults(fn=_cmd_gap_scan)

    p = sub.add_parser("blowup", help="gap blowup profile along the vertical axis")
    p.add_argument("--axis", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--lambda-w", dest="lambda_w", default="auto")
    p.add_argument("--h", required=True, help="hi:lo:n (geometric)")
    p.set_defaults(fn=_cmd_blowup)

    p = sub.add_parser("identity-check", help="transmission-identity residual report")
    p.add_argument("--y0", default="0,0,-1")
    p.add_argument("--w0", default="0,0,-0.75")
    p.add_argument("--rho", type=float, default=50.0)
    p.set_defaults(fn=_cmd_identity_check)

    p = sub.add_parser("oracle", help="finite-difference oracle runs")
    po = p.add_subparsers(dest="oracle_cmd", required=True)
    pc = po.add_parser("convergence", help="manufactured-solution convergence study")
    pc.add_argument("--grids", default="16,32,64", help="comma-separated cell counts")
    pc.set_defaults(fn=_cmd_oracle)
    pr = po.add_parser("reciprocity", help="two-solve reciprocity check")
    pr.set_defaults(fn=_cmd_oracle)
    pg = po.add_parser("green", help="numeric Green solve with a ball inclusion")
    pg.add_argument("--cells", type=int, default=32)
    pg.add_argument("--center", default="0,0,0.1")
    pg.add_argument("--radius", type=float, default=0.4)
    pg.add_argument("--source", default="0.3,0,-0.5")
    pg.add_argument("--force", default="0,0,1")
    pg.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("metrics", help="distances between two stored voxel sets")
    p.add_argument("set1")
    p.add_argument("set2")
    p.set_defaults(fn=_cmd_metrics)

    p = sub.add_parser("verify", help="run named acceptance suites")
    p.add_argument("--suite", action="append", default=[],
                   help=f"suite name (repeatable); known: {', '.join(SUITES)}")
    p.add_argument("--all", action="store_true", help="run every suite")
    p.set_defaults(fn=_cmd_verify)
    return ap


def main(argv=None) -> int:
    _limit_threads()
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigParse as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except BigreenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
