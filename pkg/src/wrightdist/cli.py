"""Command-line front end: eval, fit, grid, simulate, selftest.

Outputs are plain JSON/TSV so any plotting tool can consume them.  Exit
codes: 0 ok, 1 selftest failure, 2 usage/validation, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import errors
from .fcm import FcmShape, fcm_mean, fcm_pdf
from .fit import (
    FitTarget,
    contour_grid,
    fit_series,
    fit_skew,
    read_returns_csv,
    std_peak_surface,
    exkurt_surface,
)
from .gas import SkewShape, gas_pdf
from .gep import GepShape, gep_cdf, gep_pdf
from .gsas import gsas_cdf, gsas_pdf
from .gsc import GscParams, gsc_pdf
from .multivariate import CovMatrix, MvShapes, mv_adp_pdf, mv_ell_pdf
from .quadrature import QuadSpec
from .selftest import run_selftest
from .simulate import SdeConfig, make_fcm_drift, make_gsc_drift, sde_run

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_NUMERIC_ERRORS = (
    errors.DeltaRegime, errors.SeriesNotConverged, errors.QuadratureFailed,
    errors.MomentUndefined, errors.KurtosisUndefined, errors.OscillationTooFast,
    errors.PositivityViolation, errors.NoIntersection, errors.Exploded,
    errors.DivisionNearZero, errors.AsymptoticInvalid, errors.NoFactorFound,
)
_USAGE_ERRORS = (errors.InvalidParams, errors.DomainError, errors.DimensionMismatch,
                 errors.DimensionTooLarge, errors.DegenerateSample)


def _parse_config_file(path: str) -> dict:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise errors.InvalidParams(f"{path}:{lineno}: expected key = value")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def _parse_floats(text: str) -> list[float]:
    return [float(t) for t in text.replace(";", ",").split(",") if t.strip() != ""]


def _parse_matrix(text: str) -> np.ndarray:
    rows = [r for r in text.split(";") if r.strip() != ""]
    return np.array([[float(c) for c in r.split(",")] for r in rows])


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("WRIGHTDIST_THREADS", "1")))
    except ValueError:
        return 1


def _emit_table(rows, header, fmt, out=sys.stdout):
    if fmt == "json":
        json.dump([dict(zip(header, r)) for r in rows], out, indent=2)
        out.write("\n")
    else:
        sep = "\t" if fmt == "tsv" else "  "
        out.write(sep.join(header) + "\n")
        for r in rows:
            out.write(sep.join("" if v is None else f"{v:.10g}" if isinstance(v, float) else str(v)
                               for v in r) + "\n")


def cmd_eval(args) -> int:
    xs = _parse_floats(args.x)
    spec = QuadSpec()
    rows = []
    if args.dist == "gsc":
        params = GscParams(alpha=args.alpha, sigma=args.sigma, d=args.d, p=args.p)
        for x in xs:
            rows.append((x, float(gsc_pdf(params, x)), None))
    elif args.dist == "fcm":
        shape = FcmShape(alpha=args.alpha, k=args.k)
        for x in xs:
            rows.append((x, float(fcm_pdf(shape, x)), None))
    elif args.dist == "gsas":
        shape = FcmShape(alpha=args.alpha, k=args.k)
        for x in xs:
            rows.append((x, float(gsas_pdf(shape, x, spec)), float(gsas_cdf(shape, x, spec))))
    elif args.dist == "gep":
        shape = GepShape(alpha=args.alpha, k=args.k)
        for x in xs:
            rows.append((x, float(gep_pdf(shape, x, spec)), float(gep_cdf(shape, x, spec))))
    elif args.dist == "gas":
        shape = SkewShape(alpha=args.alpha, k=args.k, theta=args.theta)
        for x in xs:
            rows.append((x, float(gas_pdf(shape, x, spec)), None))
    elif args.dist in ("mv-ell", "mv-adp"):
        cov = CovMatrix(_parse_matrix(args.cov))
        pts = [_parse_floats(p) for p in args.x.split(";") if p.strip()]
        if args.dist == "mv-ell":
            shape = FcmShape(alpha=args.alpha, k=args.k)
            for p in pts:
                rows.append((",".join(f"{v:g}" for v in p),
                             mv_ell_pdf(shape, cov, p, spec), None))
        else:
            alphas = _parse_floats(str(args.alpha_list or args.alpha))
            ks = _parse_floats(str(args.k_list or args.k))
            shapes = MvShapes([FcmShape(a, kk) for a, kk in zip(alphas, ks)])
            for p in pts:
                rows.append((",".join(f"{v:g}" for v in p),
                             mv_adp_pdf(shapes, cov, p, spec), None))
    else:
        raise errors.InvalidParams(f"unknown dist {args.dist!r}")
    _emit_table(rows, ("x", "pdf", "cdf"), args.format)
    return EXIT_OK


def cmd_fit(args) -> int:
    series = read_returns_csv(args.input)
    res = fit_series(series, bins=args.bins)
    if args.skew and np.isfinite(res.k):
        res = fit_skew(series, res)
    payload = {
        "alpha": res.alpha,
        "k": res.k if np.isfinite(res.k) else "inf",
        "theta": res.theta,
        "scale": res.scale,
        "location": res.location,
        "targets": res.diagnostics.get("targets", {}),
        "diagnostics": {k: v for k, v in res.diagnostics.items()
                        if k not in ("targets",) and _jsonable(v)},
    }
    json.dump(payload, sys.stdout, indent=2, default=_coerce)
    sys.stdout.write("\n")
    if args.hist_out and np.isfinite(res.k):
        _write_fit_overlay(series, res, args.hist_out, args.bins)
    return EXIT_OK


def _jsonable(v):
    try:
        json.dumps(v, default=_coerce)
        return True
    except TypeError:
        return False


def _coerce(v):
    if isinstance(v, (np.floating, np.integer)):
        return float(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    raise TypeError(str(type(v)))


def _write_fit_overlay(series, res, path, bins):
    z = (series.values - res.location)
    lim = 4.4 * z.std()
    density, edges = np.histogram(z[np.abs(z) <= lim], bins=bins, range=(-lim, lim))
    width = edges[1] - edges[0]
    centers = 0.5 * (edges[1:] + edges[:-1])
    shape = FcmShape(res.alpha, res.k)
    spec = QuadSpec()
    model = gsas_pdf(shape, centers / res.scale, spec) / res.scale
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("x\thist_density\tmodel_pdf\n")
        for c, h, m in zip(centers, density / (series.values.size * width), model):
            fh.write(f"{c:.10g}\t{h:.10g}\t{m:.10g}\n")


def cmd_grid(args) -> int:
    a_lo, a_hi = (float(t) for t in args.alpha_range.split(":"))
    k_lo, k_hi = (float(t) for t in args.k_range.split(":"))
    target = FitTarget(exkurt=args.exkurt_target, std_peak=args.peak_target)
    grid = contour_grid(target, (a_lo, a_hi), (k_lo, k_hi), args.resolution)
    n_threads = _thread_count()  # grid evaluation is vectorized; threads chunk rows
    with open(args.out, "w", encoding="utf-8") as fh:
        if args.s_coord:
            fh.write("alpha\tk\ts\tstd_peak\texkurt\tvalid\n")
        else:
            fh.write("alpha\tk\tstd_peak\texkurt\tvalid\n")
        for j, kv in enumerate(grid.k):
            for i, av in enumerate(grid.alpha):
                cells = [f"{av:.8g}", f"{kv:.8g}"]
                if args.s_coord:
                    cells.append(f"{1.0 / av:.8g}")
                cells += [f"{grid.std_peak[j, i]:.8g}", f"{grid.exkurt[j, i]:.8g}",
                          "1" if grid.valid[j, i] else "0"]
                fh.write("\t".join(cells) + "\n")
    for name, segs in (("peak", grid.peak_segments), ("exkurt", grid.kurt_segments)):
        path = f"{args.polyline_prefix}_{name}.tsv"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("alpha0\tk0\talpha1\tk1\n")
            for s in segs:
                fh.write("\t".join(f"{v:.8g}" for v in s) + "\n")
    sys.stderr.write(f"grid {args.resolution}x{args.resolution} written to {args.out} "
                     f"({n_threads} thread(s))\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = SdeConfig(dt=args.dt, sigma_u=args.sigma_u, theta_u=args.theta_u,
                    horizon_years=args.years, seed=args.seed,
                    n_paths=args.paths)
    if args.dist == "cir":
        params = GscParams(alpha=0.0, sigma=args.sigma, d=args.d, p=1.0)
        drift = make_gsc_drift(params, cfg)
        theory = lambda x: gsc_pdf(params, x)
    elif args.dist == "fcm":
        shape = FcmShape(alpha=args.alpha, k=args.k)
        drift = make_fcm_drift(shape, cfg)
        theory = lambda x: fcm_pdf(shape, x)
    elif args.dist == "gep":
        shape = FcmShape(alpha=args.alpha, k=args.k)
        drift = make_fcm_drift(shape, cfg, inverse=True)
        from .fcm import fcm_inverse_pdf

        theory = lambda x: fcm_inverse_pdf(FcmShape(args.alpha, -args.k), np.maximum(x, 1e-12))
    else:
        raise errors.InvalidParams(f"unknown simulation target {args.dist!r}")
    res = sde_run(drift, cfg)
    np.savetxt(args.out_prefix + "_samples.txt", res.samples, fmt="%.10g")
    centers = 0.5 * (res.hist_edges[1:] + res.hist_edges[:-1])
    th = np.asarray(theory(centers), dtype=float)
    with open(args.out_prefix + "_hist.tsv", "w", encoding="utf-8") as fh:
        fh.write("x\tdensity\ttheory\n")
        for c, d, t in zip(centers, res.hist_density, th):
            fh.write(f"{c:.10g}\t{d:.10g}\t{t:.10g}\n")
    summary = {
        "mean": res.mean, "var": res.var, "exkurt": res.exkurt,
        "n_samples": int(res.samples.size), "n_steps": res.n_steps,
        "burn_in_steps": res.burn_in_steps, "thin": res.thin,
        "fixed_point": res.fixed_point, "seed": cfg.seed,
    }
    with open(args.out_prefix + "_summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
    json.dump(summary, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_selftest(args) -> int:
    checks = run_selftest(perturb=args.perturb)
    all_pass = True
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        all_pass &= c["passed"]
        print(f"{status}  {c['name']}: max err {c['max_err']:.3e} (tol {c['tol']:.1e})")
    print("selftest:", "all passed" if all_pass else "FAILURES detected")
    return EXIT_OK if all_pass else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wrightdist",
                                 description="Wright-function distribution toolkit")
    ap.add_argument("--config", help="key = value config file; flags override it")
    ap.add_argument("--format", choices=("json", "tsv", "text"), default="text")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv", "text"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate pdf/cdf on a list of points",
                        parents=[common])
    ev.add_argument("--dist", required=True,
                    choices=("gsc", "fcm", "gsas", "gas", "gep", "mv-ell", "mv-adp"))
    ev.add_argument("--alpha", type=float, default=1.0)
    ev.add_argument("--k", type=float, default=1.0)
    ev.add_argument("--theta", type=float, default=0.0)
    ev.add_argument("--sigma", type=float, default=1.0)
    ev.add_argument("--d", type=float, default=1.0)
    ev.add_argument("--p", type=float, default=1.0)
    ev.add_argument("--cov", default="1,0;0,1", help="matrix rows ; separated")
    ev.add_argument("--alpha-list", dest="alpha_list", default=None)
    ev.add_argument("--k-list", dest="k_list", default=None)
    ev.add_argument("--x", required=True, help="comma list (semicolons separate mv points)")
    ev.set_defaults(func=cmd_eval)

    ft = sub.add_parser("fit", help="fit a return series from CSV")
    ft.add_argument("input")
    ft.add_argument("--bins", type=int, default=200)
    ft.add_argument("--skew", action=argparse.BooleanOptionalAction, default=False)
    ft.add_argument("--hist-out", dest="hist_out", default=None)
    ft.set_defaults(func=cmd_fit)

    gr = sub.add_parser("grid", help="export the (alpha, k) surfaces and level sets")
    gr.add_argument("--alpha-range", default="0.3:2.0")
    gr.add_argument("--k-range", default="0.5:12.0")
    gr.add_argument("--resolution", type=int, default=200)
    gr.add_argument("--peak-target", type=float, default=0.71)
    gr.add_argument("--exkurt-target", type=float, default=20.0)
    gr.add_argument("--s-coord", action="store_true",
                    help="add the s = 1/alpha column for the linear-law view")
    gr.add_argument("--out", default="grid.tsv")
    gr.add_argument("--polyline-prefix", default="level")
    gr.set_defaults(func=cmd_grid)

    sm = sub.add_parser("simulate", help="square-root-diffusion sampling")
    sm.add_argument("--dist", required=True, choices=("fcm", "gep", "cir"))
    sm.add_argument("--alpha", type=float, default=1.0)
    sm.add_argument("--k", type=float, default=3.0)
    sm.add_argument("--sigma", type=float, default=1.0, help="cir scale")
    sm.add_argument("--d", type=float, default=1.0, help="cir shape")
    sm.add_argument("--dt", type=float, default=1.0 / 365.0)
    sm.add_argument("--sigma-u", dest="sigma_u", type=float, default=1.0)
    sm.add_argument("--theta-u", dest="theta_u", type=float, default=1.0)
    sm.add_argument("--years", type=float, default=200.0)
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--paths", type=int, default=8)
    sm.add_argument("--out-prefix", dest="out_prefix", default="sim")
    sm.set_defaults(func=cmd_simulate)

    st = sub.add_parser("selftest", help="run the embedded identity suite")
    st.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    st.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # config file provides defaults; flags win
    if "--config" in argv:
        idx = argv.index("--config")
        try:
            cfg = _parse_config_file(argv[idx + 1])
        except (OSError, IndexError, errors.InvalidParams) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        pre = []
        for key, val in cfg.items():
            flag = "--" + key.replace("_", "-")
            pre.extend([flag, val])
        head = argv[: idx]
        tail = argv[idx + 2:]
        sub_at = next((i for i, a in enumerate(tail) if not a.startswith("-")), len(tail))
        argv = head + tail[: sub_at + 1] + pre + tail[sub_at + 1:]
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
