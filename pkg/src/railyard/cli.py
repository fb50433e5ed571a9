"""Command-line entry point.

Subcommands: sample, partition-function, density, frozen-boundary,
laplace-check, compare.  Every command is deterministic given its config and
seed, writes its outputs in stable formats, and can emit a run manifest.

Exit codes: 0 ok, 2 config/parse error, 3 divergence, 4 sampler contract
violation, 5 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
import numpy as np

from . import __version__
from .asymptotics import (
    AssumptionViolation,
    AsymptoticParams,
    RefineContourError,
    build_rational,
    density,
    frozen_boundary,
    laplace_check,
    limit_height_profile,
    slice_critical_points,
)
from .graphs import CoveringState, RailYardGraph, height, load_graph_config
from .render import render_svg
from .sampler import ContractViolation, SamplerConfig, run_sweep, stream
from .zfunction import (
    DivergenceError,
    EnumerationBound,
    brute_force_z,
    z_free_empty,
    z_free_free,
    z_pure,
)

EXIT_CONFIG = 2
EXIT_DIVERGENCE = 3
EXIT_CONTRACT = 4
EXIT_NUMERICAL = 5


def _load_params(path: str) -> AsymptoticParams:
    import tomli

    with open(path, "rb") as fh:
        return AsymptoticParams.from_dict(tomli.load(fh))


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _write_manifest(path, args, config_paths, outputs, seed, t0):
    manifest = {
        "command": " ".join(sys.argv),
        "version": __version__,
        "seed": seed,
        "config_digests": {p: _digest(p) for p in config_paths},
        "outputs": outputs,
        "wall_time_s": round(time.time() - t0, 3),
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _grid(text: str) -> np.ndarray:
    """Parse 'a:b:n' into n evenly spaced points from a to b inclusive."""
    a, b, n = text.split(":")
    return np.linspace(float(a), float(b), int(n))


def _sample_worker(payload):
    graph_dict, K, seed, i = payload
    g = RailYardGraph.from_dict(graph_dict)
    cfg = SamplerConfig(graph=g, K=K, seed=seed)
    return run_sweep(cfg, stream(seed, i)).to_json()


def cmd_sample(args) -> int:
    g = load_graph_config(args.config)
    cfg = SamplerConfig(graph=g, K=args.K, seed=args.seed)
    outputs = [args.out]
    t0 = time.time()
    threads = max(1, args.threads)
    if threads > 1:
        # per-index derived streams make parallel sampling order-independent
        from concurrent.futures import ProcessPoolExecutor

        payloads = [(g.to_dict(), args.K, args.seed, i) for i in range(args.n)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            lines = list(ex.map(_sample_worker, payloads,
                                chunksize=max(1, args.n // (8 * threads))))
    else:
        lines = [run_sweep(cfg, stream(args.seed, i)).to_json() for i in range(args.n)]
    with open(args.out, "w") as fh:
        for i, line in enumerate(lines):
            fh.write(line + "\n")
            if args.svg:
                os.makedirs(args.svg, exist_ok=True)
                p = os.path.join(args.svg, f"sample_{i:06d}.svg")
                with open(p, "w") as sh:
                    sh.write(render_svg(g, CoveringState.from_json(line)))
                outputs.append(p)
    if args.manifest:
        _write_manifest(args.manifest, args, [args.config], outputs, args.seed, t0)
    return 0


def cmd_partition_function(args) -> int:
    g = load_graph_config(args.config)
    t0 = time.time()
    if args.mode == "pure":
        z = z_pure(g)
        result = {"mode": "pure", "exact": str(z), "value": float(z)}
    elif args.mode == "free-empty":
        z = z_free_empty(g)
        result = {"mode": "free-empty", "exact": str(z), "value": float(z)}
    elif args.mode == "free-free":
        value, tail = z_free_free(g, n_terms=args.n_terms)
        result = {
            "mode": "free-free",
            "value": value,
            "tail_bound": tail,
            "n_terms": args.n_terms,
        }
    else:
        bound = EnumerationBound(args.max_part, args.max_len)
        value, configs = brute_force_z(g, bound, exact=args.exact)
        result = {
            "mode": "oracle",
            "value": float(value),
            "configs": configs,
            "max_part": args.max_part,
            "max_len": args.max_len,
        }
        if args.exact:
            result["exact"] = str(value)
    with open(args.out, "w") as fh:
        json.dump(result, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if args.manifest:
        _write_manifest(args.manifest, args, [args.config], [args.out], None, t0)
    return 0


def cmd_density(args) -> int:
    params = _load_params(args.params)
    chis = _grid(args.chi_grid)
    kaps = _grid(args.kappa_grid)
    t0 = time.time()
    rows = []
    for chi in chis:
        rf = build_rational(params, float(chi))
        folds = slice_critical_points(params, float(chi), rf)
        for kap in kaps:
            val = density(params, float(chi), float(kap), rf, folds)
            rows.append((float(chi), float(kap), val))
    with open(args.out, "w") as fh:
        fh.write("chi,kappa,value\n")
        for chi, kap, val in rows:
            fh.write(f"{chi!r},{kap!r},{val!r}\n")
    if args.manifest:
        _write_manifest(args.manifest, args, [args.params], [args.out], None, t0)
    return 0


def cmd_frozen_boundary(args) -> int:
    params = _load_params(args.params)
    t0 = time.time()
    if args.w_grid:
        wg = _grid(args.w_grid)
        wg = wg[np.abs(wg) > 1e-9]
    else:
        wg = np.concatenate([-np.geomspace(30, 0.02, args.w_points // 2),
                             np.geomspace(0.02, 30, args.w_points // 2)])
    pts = frozen_boundary(params, list(wg))
    with open(args.out, "w") as fh:
        fh.write("chi,kappa,w\n")
        for p in pts:
            fh.write(f"{p.chi!r},{p.kappa!r},{p.w!r}\n")
    outputs = [args.out]
    if args.svg:
        _boundary_svg(args.svg, pts, params)
        outputs.append(args.svg)
    if args.manifest:
        _write_manifest(args.manifest, args, [args.params], outputs, None, t0)
    return 0


def _boundary_svg(path: str, pts, params) -> None:
    kept = [p for p in pts if abs(p.kappa) < 10]
    if not kept:
        raise AssumptionViolation("no boundary points to draw")
    k_lo = min(p.kappa for p in kept) - 0.2
    k_hi = max(p.kappa for p in kept) + 0.2
    c_lo, c_hi = params.V[0], params.V[-1]
    W, H = 560, 420

    def sx(chi):
        return round(40 + (chi - c_lo) / (c_hi - c_lo) * (W - 80), 2)

    def sy(kap):
        return round(H - 30 - (kap - k_lo) / (k_hi - k_lo) * (H - 60), 2)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{sx(c_lo)}" y1="{sy(0)}" x2="{sx(c_hi)}" y2="{sy(0)}" stroke="gray"/>',
        f'<line x1="{sx(c_lo)}" y1="{sy(k_lo)}" x2="{sx(c_lo)}" y2="{sy(k_hi)}" stroke="gray"/>',
        f'<text x="{sx(c_hi)-40}" y="{sy(0)-6}" font-size="12">chi</text>',
        f'<text x="{sx(c_lo)+6}" y="{sy(k_hi)+14}" font-size="12">kappa</text>',
    ]
    for p in sorted(kept, key=lambda q: (q.w, q.chi)):
        out.append(f'<circle cx="{sx(p.chi)}" cy="{sy(p.kappa)}" r="1.5" fill="navy"/>')
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out))


def cmd_laplace_check(args) -> int:
    params = _load_params(args.params)
    t0 = time.time()
    integral, direct = laplace_check(params, args.chi, args.alpha)
    gap = abs(integral - direct) / max(abs(direct), 1e-300)
    result = {
        "chi": args.chi,
        "alpha": args.alpha,
        "contour_integral": integral,
        "density_integral": direct,
        "relative_gap": gap,
    }
    with open(args.out, "w") as fh:
        json.dump(result, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if args.manifest:
        _write_manifest(args.manifest, args, [args.params], [args.out], None, t0)
    return 0


def cmd_compare(args) -> int:
    params = _load_params(args.params)
    t0 = time.time()
    samples = []
    with open(args.samples) as fh:
        for line in fh:
            line = line.strip()
            if line:
                samples.append(CoveringState.from_json(line))
    if not samples:
        print("no samples in input", file=sys.stderr)
        return EXIT_CONFIG
    g = load_graph_config(args.graph)
    n_cols = g.ncols
    eps = (params.V[-1] - params.V[0]) / n_cols
    chis = _grid(args.chi_grid)
    kaps = _grid(args.kappa_grid)
    rows = []
    worst = 0.0
    for chi in chis:
        m = round(chi / eps)
        if not g.l <= m <= g.r:
            print(f"chi={chi} maps to column {m} outside the graph", file=sys.stderr)
            return EXIT_CONFIG
        Hvals = limit_height_profile(params, float(chi), [float(k) for k in kaps])
        for kap, Hval in zip(kaps, Hvals):
            y = kap / eps
            if abs(y * 2 - round(y * 2)) < 1e-9:
                y += 0.25  # stay off lattice ordinates
            emp = np.mean([height(g, s, 2 * m - 0.5, y) for s in samples])
            rows.append((float(chi), float(kap), float(eps * emp), float(Hval)))
    band = args.band
    pts = frozen_boundary(params, list(np.linspace(-20, -0.05, 120)) + list(np.linspace(0.05, 20, 120)))
    for chi, kap, emp, Hval in rows:
        dist = min(
            (abs(chi - p.chi) ** 2 + abs(kap - p.kappa) ** 2) ** 0.5 for p in pts
        ) if pts else band + 1
        if dist > band:
            worst = max(worst, abs(emp - Hval))
    with open(args.out, "w") as fh:
        fh.write("chi,kappa,empirical,limit\n")
        for chi, kap, emp, Hval in rows:
            fh.write(f"{chi!r},{kap!r},{emp!r},{Hval!r}\n")
    summary = {"max_abs_deviation_off_boundary": worst, "n_samples": len(samples), "band": band}
    with open(args.out + ".summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(json.dumps(summary))
    if args.manifest:
        _write_manifest(
            args.manifest, args, [args.params, args.graph],
            [args.out, args.out + ".summary.json"], None, t0,
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="railyard")
    ap.add_argument("--threads", type=int, default=1, help="worker hint for grid sweeps")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("sample", help="draw coverings from the reflection sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--svg", default=None, help="directory for per-sample renders")
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("partition-function", help="closed forms and the oracle")
    p.add_argument("--config", required=True)
    p.add_argument("--mode", choices=["pure", "free-empty", "free-free", "oracle"], required=True)
    p.add_argument("--n-terms", type=int, default=30)
    p.add_argument("--max-part", type=int, default=6)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_partition_function)

    p = sub.add_parser("density", help="limit-shape slope on a grid")
    p.add_argument("--params", required=True)
    p.add_argument("--chi-grid", required=True, help="a:b:n")
    p.add_argument("--kappa-grid", required=True, help="a:b:n")
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("frozen-boundary", help="trace the arctic curve")
    p.add_argument("--params", required=True)
    p.add_argument("--w-grid", default=None, help="a:b:n over real w (0 excluded)")
    p.add_argument("--w-points", type=int, default=600)
    p.add_argument("--out", required=True)
    p.add_argument("--svg", default=None)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_frozen_boundary)

    p = sub.add_parser("laplace-check", help="contour vs density-integrated transform")
    p.add_argument("--params", required=True)
    p.add_argument("--chi", type=float, required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_laplace_check)

    p = sub.add_parser("compare", help="empirical rescaled heights vs the limit shape")
    p.add_argument("--samples", required=True)
    p.add_argument("--graph", required=True, help="graph config the samples were drawn from")
    p.add_argument("--params", required=True)
    p.add_argument("--chi-grid", required=True)
    p.add_argument("--kappa-grid", required=True)
    p.add_argument("--band", type=float, default=0.15, help="exclusion distance to the curve")
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, KeyError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DivergenceError as exc:
        print(f"divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (AssumptionViolation, RefineContourError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
