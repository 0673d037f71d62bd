"""Command-line interface: every computation as a reproducible batch run.

Results go to stdout or, with --out, to a file accompanied by a
`<out>.manifest.json` sidecar recording the command, the full parameter
set, the package version, the seed where one applies, and the wall-clock
duration, so any output file can be regenerated from its manifest alone.

Exit codes: 0 success, 2 usage errors (argparse), 3 out-of-range
parameters, 4 even repetition-code length.
"""

import argparse
import sys
import time

from . import __version__
from .errors import EvenCodeLengthError, ParameterRangeError
from .gkp import (
    GkpLattice,
    NoiseChannel,
    db_from_sigma,
    gkp_channel,
    quadrature_outcomes,
    sigma_from_db,
)
from .io import (
    RunManifest,
    parse_grid_spec,
    parse_int_list,
    to_csv_text,
    to_json_text,
)
from .montecarlo import McConfig, simulate_rep_code
from .optimize import (
    default_n_grid,
    estimate_threshold,
    optimize_bias,
    scaling_curve,
    sweep_grid,
)
from .repetition import RepetitionCode, logical_channel
from .wigner import biased_blur_square_grid, blurred_grid

__all__ = ["main"]

_SWEEP_COLUMNS = (
    "sigma", "n", "r_opt", "error_rate", "single_mode_error", "beats_single",
)


def _cmd_quadrature(args):
    out_q, out_p = quadrature_outcomes(GkpLattice(args.r), NoiseChannel(args.sigma))
    return "object", {
        "r": args.r,
        "sigma": args.sigma,
        "p_ok_q": out_q.p_ok,
        "p_err_q": out_q.p_err,
        "p_ok_p": out_p.p_ok,
        "p_err_p": out_p.p_err,
    }


def _cmd_channel(args):
    ch = gkp_channel(GkpLattice(args.r), NoiseChannel(args.sigma))
    return "object", {
        "r": args.r,
        "sigma": args.sigma,
        "p_i": ch.p_i,
        "p_x": ch.p_x,
        "p_y": ch.p_y,
        "p_z": ch.p_z,
    }


def _cmd_rep(args):
    ch = gkp_channel(GkpLattice(args.r), NoiseChannel(args.sigma))
    logical = logical_channel(RepetitionCode(args.n), ch)
    return "object", {
        "n": args.n,
        "r": args.r,
        "sigma": args.sigma,
        "p_i": logical.p_i,
        "p_x": logical.p_x,
        "p_y": logical.p_y,
        "p_z": logical.p_z,
        "error_rate": logical.p_fail,
    }


def _cmd_optimize(args):
    res = optimize_bias(args.n, args.sigma, r_cap=args.r_cap,
                        coarse_step=args.coarse_step)
    return "object", {
        "n": res.n,
        "sigma": res.sigma,
        "r_opt": res.r_opt,
        "error_rate": res.error_rate,
        "r_cap": res.r_cap,
        "grid_local_minima": res.grid_local_minima,
    }


def _sweep_rows(result):
    return [
        (row.sigma, row.n, row.r_opt, row.error_rate,
         row.single_mode_error, row.beats_single)
        for row in result
    ]


def _cmd_sweep(args):
    sigmas = parse_grid_spec(args.sigma_grid)
    ns = parse_int_list(args.n_grid) if args.n_grid else default_n_grid()
    result = sweep_grid(sigmas, ns, r_cap=args.r_cap,
                        coarse_step=args.coarse_step, jobs=args.jobs)
    return "table", _SWEEP_COLUMNS, _sweep_rows(result)


def _cmd_threshold(args):
    sigmas = parse_grid_spec(args.sigma_grid)
    ns = parse_int_list(args.n_grid) if args.n_grid else default_n_grid()
    value = estimate_threshold(sigma_grid=sigmas, n_grid=ns,
                               r_cap=args.r_cap, coarse_step=args.coarse_step)
    return "object", {"sigma_threshold": value}


def _cmd_scaling(args):
    ns = parse_int_list(args.n_list) if args.n_list else default_n_grid()
    result = scaling_curve(args.sigma, n_list=ns, r_cap=args.r_cap,
                           coarse_step=args.coarse_step)
    return "table", _SWEEP_COLUMNS, _sweep_rows(result)


def _cmd_mc(args):
    config = McConfig(n=args.n, r=args.r, sigma=args.sigma,
                      trials=args.trials, seed=args.seed)
    est = simulate_rep_code(config, jobs=args.jobs)
    return "object", {
        "n": args.n,
        "r": args.r,
        "sigma": args.sigma,
        "trials": args.trials,
        "seed": args.seed,
        "count_i": est.count_i,
        "count_x": est.count_x,
        "count_y": est.count_y,
        "count_z": est.count_z,
        "p_i": est.p_i,
        "p_x": est.p_x,
        "p_y": est.p_y,
        "p_z": est.p_z,
        "se_i": est.standard_error(est.p_i),
        "se_x": est.standard_error(est.p_x),
        "se_y": est.standard_error(est.p_y),
        "se_z": est.standard_error(est.p_z),
        "error_rate": est.p_fail,
        "se_error_rate": est.standard_error(est.p_fail),
    }


def _cmd_wigner(args):
    q_axis = parse_grid_spec(args.q_grid)
    p_axis = parse_grid_spec(args.p_grid)
    if args.kind == "blurred":
        grid = blurred_grid(args.r, args.sigma, q_axis, p_axis)
    else:
        grid = biased_blur_square_grid(args.r, args.sigma, q_axis, p_axis)
    return "matrix", grid


def _cmd_db(args):
    if args.db is not None:
        return "object", {"db": args.db, "sigma": sigma_from_db(args.db)}
    return "object", {"db": db_from_sigma(args.sigma), "sigma": args.sigma}


def _render(kind_payload, fmt: str) -> str:
    kind = kind_payload[0]
    if kind == "object":
        data = kind_payload[1]
        if fmt == "json":
            return to_json_text(data)
        return to_csv_text(list(data.keys()), [tuple(data.values())])
    if kind == "table":
        _, columns, rows = kind_payload
        if fmt == "json":
            return to_json_text([dict(zip(columns, row)) for row in rows])
        return to_csv_text(columns, rows)
    _, grid = kind_payload
    if fmt == "json":
        return to_json_text({
            "q_axis": list(grid.q_axis),
            "p_axis": list(grid.p_axis),
            "values": [list(row) for row in grid.values],
        })
    header = ["q"] + ["%.12g" % p for p in grid.p_axis]
    rows = [
        (grid.q_axis[i], *grid.values[i]) for i in range(grid.q_axis.size)
    ]
    return to_csv_text(header, rows)


def _emit(args, text: str, duration: float) -> None:
    if args.out is None:
        sys.stdout.write(text)
        return
    with open(args.out, "w", newline="\n") as fh:
        fh.write(text)
    manifest = RunManifest(
        command=args.command,
        parameters={k: v for k, v in vars(args).items() if k != "handler"},
        version=__version__,
        seed=getattr(args, "seed", None),
        duration_seconds=round(duration, 6),
    )
    with open(args.out + ".manifest.json", "w", newline="\n") as fh:
        fh.write(manifest.to_json())


def _add_common(sub):
    sub.add_argument("--format", choices=("csv", "json"), default="json",
                     help="output serialization (default json)")
    sub.add_argument("--out", default=None, metavar="PATH",
                     help="write output here plus a PATH.manifest.json sidecar")


def _add_optimizer_knobs(sub):
    sub.add_argument("--r-cap", type=float, default=15.0,
                     help="largest aspect ratio scanned (default 15)")
    sub.add_argument("--coarse-step", type=float, default=0.01,
                     help="coarse scan step in r (default 0.01)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkprep",
        description="Repetition-coded rectangular GKP qubits under Gaussian "
                    "displacement noise: channels, bias optimization, "
                    "thresholds, Monte Carlo checks, Wigner grids.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("quadrature", help="per-quadrature outcome rates")
    sub.add_argument("--r", type=float, required=True)
    sub.add_argument("--sigma", type=float, required=True)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_quadrature)

    sub = subs.add_parser("channel", help="single-mode GKP Pauli channel")
    sub.add_argument("--r", type=float, required=True)
    sub.add_argument("--sigma", type=float, required=True)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_channel)

    sub = subs.add_parser("rep", help="logical channel of the repetition code")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--r", type=float, required=True)
    sub.add_argument("--sigma", type=float, required=True)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_rep)

    sub = subs.add_parser("optimize", help="optimal aspect ratio for one (n, sigma)")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--sigma", type=float, required=True)
    _add_optimizer_knobs(sub)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_optimize)

    sub = subs.add_parser("sweep", help="optimized errors over a sigma x n grid")
    sub.add_argument("--sigma-grid", required=True, metavar="START:STOP:STEP")
    sub.add_argument("--n-grid", default=None, metavar="N1,N2,...",
                     help="code lengths (default: built-in log-spaced grid)")
    _add_optimizer_knobs(sub)
    sub.add_argument("--jobs", type=int, default=1,
                     help="worker processes over sigma points (default 1)")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_sweep)

    sub = subs.add_parser("threshold", help="largest sigma where coding still helps")
    sub.add_argument("--sigma-grid", default="0.58:0.62:0.001",
                     metavar="START:STOP:STEP")
    sub.add_argument("--n-grid", default=None, metavar="N1,N2,...",
                     help="code lengths (default: built-in log-spaced grid)")
    _add_optimizer_knobs(sub)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_threshold)

    sub = subs.add_parser("scaling", help="error versus code length at fixed sigma")
    sub.add_argument("--sigma", type=float, required=True)
    sub.add_argument("--n-list", default=None, metavar="N1,N2,...",
                     help="code lengths (default: built-in log-spaced grid)")
    _add_optimizer_knobs(sub)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_scaling)

    sub = subs.add_parser("mc", help="Monte Carlo estimate of the logical channel")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--r", type=float, required=True)
    sub.add_argument("--sigma", type=float, required=True)
    sub.add_argument("--trials", type=int, required=True)
    sub.add_argument("--seed", type=int, default=0,
                     help="64-bit stream seed (default 0)")
    sub.add_argument("--jobs", type=int, default=1,
                     help="worker processes over trial spans (default 1)")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_mc)

    sub = subs.add_parser("wigner", help="blurred Wigner function on a grid")
    sub.add_argument("--r", type=float, required=True)
    sub.add_argument("--sigma", type=float, required=True)
    sub.add_argument("--q-grid", required=True, metavar="START:STOP:STEP")
    sub.add_argument("--p-grid", required=True, metavar="START:STOP:STEP")
    sub.add_argument("--kind", choices=("blurred", "biased-square"),
                     default="blurred",
                     help="rectangular-lattice isotropic blur, or square "
                          "lattice under the equivalent biased blur")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_wigner)

    sub = subs.add_parser("db", help="convert between sigma and squeezing dB")
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--db", type=float, default=None)
    group.add_argument("--sigma", type=float, default=None)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_db)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        payload = args.handler(args)
    except EvenCodeLengthError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 4
    except ParameterRangeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    text = _render(payload, args.format)
    _emit(args, text, time.perf_counter() - started)
    return 0


if __name__ == "__main__":
    sys.exit(main())
