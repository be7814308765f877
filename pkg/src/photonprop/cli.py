"""Command-line front end.

Every subcommand writes its data files (CSV or JSON), a JSON report and,
unless ``--no-plots`` is given, PNG figures into ``--out``.  The report is
also printed on stdout.  Failures print ``{"error": ..., "message": ...}``
on stderr and exit with 1 (numerical contract) or 2 (usage/config).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import InvalidSpec, PhotonPropError
from .field import energy
from .fileio import read_signal, to_jsonable, write_field, write_json, write_scan, write_signal, write_table
from .frft import ReducedSignal, S_MIN, frft_composed, frft_fast, frft_reference, hermite_gauss, reduce_order
from .geometry import geometry_from_z, identity_residuals
from .green import kernel_shape_compare, parse_distribution
from .propagators import compare_fields
from .runs import central_visibility, fringe_period, parse_alphas, propagate_scenario, slit_scan, young_sweep
from .scenarios import load_scenario


class UsageError(PhotonPropError):
    exit_code = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(report: dict) -> None:
    print(json.dumps(to_jsonable(report), indent=2))


def _outdir(args) -> Path:
    out = Path(args.out or "out")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _plots(args):
    if args.no_plots:
        return None
    from . import plotting

    return plotting


# ------------------------------------------------------------- commands


def cmd_frft(args) -> int:
    out = _outdir(args)
    alpha = args.alpha
    if args.input:
        sig = read_signal(args.input)
    else:
        a = abs(math.sin(reduce_order(alpha)))
        d = args.d or math.sqrt((a if a >= S_MIN else 1.0) / args.n)
        rho = (np.arange(args.n) - args.n // 2) * d
        orders = [int(o) for o in args.hg.split(",")]
        samples = sum(hermite_gauss(o, rho) for o in orders) / math.sqrt(len(orders))
        sig = ReducedSignal.centered(samples, d)
    method = {"composed": frft_composed, "fast": frft_fast, "reference": frft_reference}[args.method]
    res = method(sig, alpha)
    path = write_signal(out / "frft", res, args.format, {"alpha_rad": alpha, "method": args.method})
    e_in, e_out = sig.energy(), res.energy()
    report = {
        "alpha_rad": alpha,
        "alpha_reduced_rad": reduce_order(alpha),
        "method": args.method,
        "n": sig.n,
        "d": sig.d,
        "energy_in": e_in,
        "energy_out": e_out,
        "rel_energy_error": abs(e_out - e_in) / e_in if e_in else 0.0,
        "files": [str(path)],
    }
    plt = _plots(args)
    if plt:
        report["files"].append(str(plt.plot_signal(out / "frft.png", sig.coords, sig.samples, res.samples,
                                                   rf"$F_{{{alpha:g}}}$")))
    write_json(out / "frft_report.json", report)
    _emit(report)
    return 0


def _ra(text):
    if text.lower() in ("flat", "inf", "none"):
        return None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'flat', got {text!r}")


def cmd_geometry(args) -> int:
    g = geometry_from_z(args.z, args.ra, args.wavelength)
    report = g.to_json()
    report["identity_residuals"] = identity_residuals(g)
    if args.out:
        write_json(_outdir(args) / "geometry.json", report)
    _emit(report)
    return 0


def cmd_propagate(args) -> int:
    cfg = load_scenario(args.scenario)
    if args.z is not None:
        cfg["z_m"] = args.z
    out = _outdir(args)
    write_json(out / "scenario.json", cfg)
    field = propagate_scenario(cfg, args.method)
    files = [str(write_field(out / f"field_{args.method}", field, args.format,
                             {"method": args.method, "z_m": cfg["z_m"], "scenario": cfg["name"]}))]
    report = {"scenario": cfg["name"], "method": args.method, "z_m": cfg["z_m"],
              "energy": energy(field), "files": files}
    curves = {args.method: (field.x, field.intensity)}
    if args.compare_with:
        ref = propagate_scenario(cfg, args.compare_with)
        files.append(str(write_field(out / f"field_{args.compare_with}", ref, args.format,
                                     {"method": args.compare_with, "z_m": cfg["z_m"]})))
        metrics = compare_fields(field, ref, window=cfg.get("window_m"))
        metrics.update({"method": args.method, "reference": args.compare_with,
                        "window_m": cfg.get("window_m")})
        files.append(str(write_json(out / "metrics.json", metrics)))
        report["metrics"] = metrics
        curves[args.compare_with] = (ref.x, ref.intensity)
    plt = _plots(args)
    if plt:
        files.append(str(plt.plot_intensity(out / "intensity.png", curves, window=cfg.get("window_m"))))
    write_json(out / "propagate_report.json", report)
    _emit(report)
    return 0


def cmd_green_kernel(args) -> int:
    out = _outdir(args)
    dist = parse_distribution(args.rho)
    k = 2 * math.pi / args.wavelength
    res = kernel_shape_compare(dist, args.z, args.window, k, n_points=args.points, tol=args.tol)
    x, ker = res["x"], res["kernel"]
    path = write_table(out / "green_kernel", ("x_m", "re", "im", "phase"),
                       {"x_m": x, "re": ker.real, "im": ker.imag, "phase": res["phase"]}, args.format)
    report = {k_: v for k_, v in res.items() if k_ not in ("x", "kernel", "phase")}
    report.update({"rho": args.rho, "z_m": args.z, "half_width_m": args.window,
                   "lambda_m": args.wavelength, "n_points": int(x.size), "files": [str(path)]})
    plt = _plots(args)
    if plt:
        sph = k * np.sqrt(args.z ** 2 + x ** 2)
        par = k * (args.z + x ** 2 / (2 * args.z))
        report["files"].append(str(plt.plot_kernel_phase(out / "green_kernel.png", x, res["phase"], sph, par)))
    write_json(out / "green_report.json", report)
    _emit(report)
    return 0


def cmd_counts(args) -> int:
    cfg = load_scenario(args.scenario)
    out = _outdir(args)
    write_json(out / "scenario.json", cfg)
    seed = 0 if args.seed is None else args.seed
    run = slit_scan(cfg, seed, args.total)
    chi = run.chi2
    extra = {"scenario": cfg["name"], "ks_distance": run.ks, "chi2": chi.statistic,
             "chi2_dof": chi.dof, "chi2_reduced": chi.reduced}
    path = write_scan(out / "scan", run.scan, args.format, extra)
    report = dict(run.scan.metadata(), **extra, files=[str(path)])
    plt = _plots(args)
    if plt:
        report["files"].append(str(plt.plot_scan(out / "scan.png", run.scan.positions,
                                                 run.scan.counts, run.scan.expected)))
    write_json(out / "counts_report.json", report)
    _emit(report)
    return 0


def cmd_sweep(args) -> int:
    cfg = load_scenario(args.scenario)
    if args.alphas:
        cfg["alphas_frac"] = parse_alphas(args.alphas)
    out = _outdir(args)
    write_json(out / "scenario.json", cfg)
    steps = young_sweep(cfg)
    rows, traces = [], {}
    for st in steps:
        g = st.geometry
        path = write_field(out / f"sweep_alpha_{st.alpha_frac:.4f}", st.field.on_plane(), args.format,
                           {"alpha_frac": st.alpha_frac, "geometry": g.to_json(),
                            "sigma_scale_m": g.output_scale})
        rows.append({"alpha_frac": st.alpha_frac, "alpha_rad": g.alpha, "z_m": g.z,
                     "energy": st.energy, "file": str(path)})
        traces[st.alpha_frac] = (st.field.x, st.field.intensity)
    e = np.array([r["energy"] for r in rows])
    report = {"scenario": cfg["name"], "steps": rows,
              "energy_rel_spread": float((e.max() - e.min()) / e.max())}
    fourier = [st for st in steps if math.isclose(st.alpha_frac, 1.0)]
    if fourier and cfg["source"]["type"] == "gaussian_pair":
        st = fourier[0]
        inten = np.abs(st.reduced.samples) ** 2
        period = fringe_period(st.reduced.coords, inten)
        expected = st.geometry.scale / cfg["source"]["separation_m"]
        report["fourier_plane"] = {"fringe_period_sigma": period, "expected_period_sigma": expected,
                                   "period_rel_error": abs(period / expected - 1),
                                   "visibility": central_visibility(inten)}
    plt = _plots(args)
    if plt:
        report["figure"] = str(plt.plot_sweep(out / "sweep.png", traces))
    write_json(out / "sweep_report.json", report)
    _emit(report)
    return 0


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", metavar="DIR", help="output directory (default ./out)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--no-plots", action="store_true", help="skip PNG figures")

    p = _Parser(prog="photonprop", description="Photon propagation as a fractional Fourier transform.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("frft", parents=[common], help="fractional Fourier transform of a reduced signal")
    s.add_argument("--alpha", type=float, required=True, help="order in radians")
    s.add_argument("--input", help="reduced-signal CSV/JSON (coord, re, im, ...)")
    s.add_argument("--hg", default="0", help="Hermite-Gauss orders summed when no --input (default 0)")
    s.add_argument("--n", type=int, default=512)
    s.add_argument("--d", type=float, default=None, help="pitch (default sqrt(|sin alpha|/n))")
    s.add_argument("--method", choices=("composed", "fast", "reference"), default="composed")
    s.set_defaults(func=cmd_frft)

    s = sub.add_parser("geometry", parents=[common], help="(z, R_A) to FrFT order mapping")
    s.add_argument("--z", type=float, required=True)
    s.add_argument("--ra", type=_ra, required=True, help="input sphere radius in m, or 'flat'")
    s.add_argument("--lambda", dest="wavelength", type=float, default=632e-9)
    s.set_defaults(func=cmd_geometry)

    s = sub.add_parser("propagate", parents=[common], help="propagate a scenario source")
    s.add_argument("--method", choices=("fresnel", "frft", "rs", "fraunhofer"), required=True)
    s.add_argument("--scenario", default="paper-slit", help="built-in name or JSON path")
    s.add_argument("--z", type=float, default=None, help="override the scenario distance")
    s.add_argument("--compare-with", choices=("fresnel", "frft", "rs", "fraunhofer"))
    s.set_defaults(func=cmd_propagate)

    s = sub.add_parser("green-kernel", parents=[common], help="kernel shape of a smeared Green's function")
    s.add_argument("--rho", default="dirac", help="dirac | gaussian:sigma=S | ball:a=A")
    s.add_argument("--z", type=float, required=True)
    s.add_argument("--window", type=float, required=True, help="transverse half width in m")
    s.add_argument("--lambda", dest="wavelength", type=float, default=632e-9)
    s.add_argument("--points", type=int, default=None)
    s.add_argument("--tol", type=float, default=1e-8)
    s.set_defaults(func=cmd_green_kernel)

    s = sub.add_parser("counts", parents=[common], help="seeded photon-counting scan")
    s.add_argument("--scenario", default="paper-slit")
    s.add_argument("--total", type=float, default=None, help="expected total counts")
    s.set_defaults(func=cmd_counts)

    s = sub.add_parser("sweep", parents=[common], help="order sweep at fixed R_A")
    s.add_argument("--scenario", default="young")
    s.add_argument("--alphas", default=None, help="fractions of pi/2, e.g. 0.8,0.85,...,1.0")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except PhotonPropError as exc:
        print(json.dumps(exc.to_json()), file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        err = InvalidSpec(str(exc))
        print(json.dumps(err.to_json()), file=sys.stderr)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
