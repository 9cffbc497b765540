"""Command-line front end.

Subcommands: ``gen`` writes a state file, ``exact`` runs the exact analysis,
``simulate`` runs the finite-statistics interferometer pipeline, ``sweep``
scans a state family into a plot-ready CSV.  Every stochastic command is
deterministic given its full flag set including the seed.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import interferometer as itf
from . import report as rpt
from . import states as st

DEFAULT_Z = 1_000_000
DEFAULT_BOOTSTRAP = 200


class SpecError(ValueError):
    pass


def parse_state_spec(spec: str) -> np.ndarray:
    """State generator spec: bell:KIND, werner:P, random-pure:SEED,
    random-mixed:SEED, or file:PATH."""
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise SpecError(f"malformed state spec {spec!r}; expected KIND:ARG")
    try:
        if kind == "bell":
            return st.bell(arg)
        if kind == "werner":
            return st.werner(float(arg))
        if kind == "random-pure":
            return st.random_pure(int(arg))
        if kind == "random-mixed":
            return st.random_mixed(int(arg))
        if kind == "file":
            return st.load_state(arg)
    except (ValueError, OSError) as err:
        if isinstance(err, SpecError):
            raise
        raise SpecError(f"bad state spec {spec!r}: {err}") from err
    raise SpecError(f"unknown state generator {kind!r}")


def _load_input_state(args) -> np.ndarray:
    if args.state is not None:
        return st.load_state(args.state)
    if args.gen is not None:
        return parse_state_spec(args.gen)
    raise SpecError("one of --state or --gen is required")


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _emit(data_json, data_row, columns, args) -> None:
    stream, close = _open_out(getattr(args, "out", None))
    try:
        if args.format == "json":
            rpt.write_json(data_json, stream)
        else:
            rpt.write_csv_row(columns, data_row, stream)
    finally:
        if close:
            stream.close()


def cmd_gen(args) -> int:
    rho = parse_state_spec(args.spec)
    st.save_state(rho, args.out)
    return 0


def cmd_exact(args) -> int:
    rho = st.validate(_load_input_state(args))
    rep = rpt.exact_report(rho)
    _emit(rep, rpt.exact_report_row(rep), rpt.EXACT_CSV_COLUMNS, args)
    return 0


def cmd_simulate(args) -> int:
    rho = st.validate(_load_input_state(args))
    pipeline = itf.run_pipeline(rho, z_per_config=args.z, seed=args.seed,
                                bootstrap=args.bootstrap)
    rep = rpt.pipeline_report_dict(pipeline)
    _emit(rep, rpt.sim_report_row(rep), rpt.SIM_CSV_COLUMNS, args)
    if args.plot:
        from . import plotting
        plotting.plot_counts(rep, args.plot)
    return 0


def _sweep_rows(args):
    rows = []
    ps = np.linspace(args.p_min, args.p_max, args.steps)
    for i, p in enumerate(ps):
        rho = st.werner(float(p))
        exact = rpt.exact_report(rho)
        row = {
            "p": rpt.fmt(p),
            "negativity_exact": rpt.fmt(exact["result"]["negativity"]),
            "det_pt_exact": rpt.fmt(exact["result"]["det_pt"]),
            "entangled_exact": exact["result"]["entangled"],
            "negativity_sampled": "",
            "negativity_err": "",
            "det_pt_sampled": "",
            "det_pt_err": "",
            "entangled_sampled": "",
        }
        if not args.exact_only:
            pipeline = itf.run_pipeline(rho, z_per_config=args.z,
                                        seed=args.seed + i,
                                        bootstrap=args.bootstrap)
            row.update({
                "negativity_sampled": rpt.fmt(pipeline.negativity),
                "negativity_err": rpt.fmt(pipeline.negativity_err),
                "det_pt_sampled": rpt.fmt(pipeline.det_pt),
                "det_pt_err": rpt.fmt(pipeline.det_pt_err),
                "entangled_sampled": pipeline.entangled,
            })
        rows.append(row)
    return rows


def cmd_sweep(args) -> int:
    if not 0.0 <= args.p_min <= args.p_max <= 1.0:
        raise SpecError("need 0 <= p-min <= p-max <= 1")
    if args.steps < 2:
        raise SpecError("need at least 2 sweep steps")
    if not args.exact_only and args.seed is None:
        raise SpecError("--seed is required unless --exact-only is given")
    rows = _sweep_rows(args)
    stream, close = _open_out(args.out)
    try:
        rpt.write_sweep_csv(rows, stream)
    finally:
        if close:
            stream.close()
    if args.plot:
        from . import plotting
        plotting.plot_sweep(rows, args.plot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negmeter",
        description="Two-qubit negativity and entanglement witness from "
                    "multicopy singlet-projection measurements.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a state file")
    p_gen.add_argument("spec", help="bell:KIND | werner:P | random-pure:SEED "
                                    "| random-mixed:SEED | file:PATH")
    p_gen.add_argument("--out", required=True, help="output state file (JSON)")
    p_gen.set_defaults(func=cmd_gen)

    def add_io(p):
        p.add_argument("--state", help="input state file (JSON)")
        p.add_argument("--gen", help="inline state spec instead of --state")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p_exact = sub.add_parser("exact", help="exact analysis of one state")
    add_io(p_exact)
    p_exact.set_defaults(func=cmd_exact)

    p_sim = sub.add_parser("simulate",
                           help="finite-statistics interferometer pipeline")
    add_io(p_sim)
    p_sim.add_argument("--z", type=int, default=DEFAULT_Z,
                       help="detection events per configuration")
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--bootstrap", type=int, default=DEFAULT_BOOTSTRAP,
                       metavar="B", help="bootstrap resamples")
    p_sim.add_argument("--plot", help="also render coincidence-count figure "
                                      "to this file")
    p_sim.set_defaults(func=cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="scan a Werner family into CSV")
    p_sweep.add_argument("--family", choices=("werner",), default="werner")
    p_sweep.add_argument("--p-min", type=float, default=0.0)
    p_sweep.add_argument("--p-max", type=float, default=1.0)
    p_sweep.add_argument("--steps", type=int, default=11)
    p_sweep.add_argument("--z", type=int, default=DEFAULT_Z)
    p_sweep.add_argument("--seed", type=int)
    p_sweep.add_argument("--bootstrap", type=int, default=DEFAULT_BOOTSTRAP)
    p_sweep.add_argument("--exact-only", action="store_true")
    p_sweep.add_argument("--out", help="output CSV (default: stdout)")
    p_sweep.add_argument("--plot", help="also render sweep figure to this file")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, st.StateValidationError, st.InvalidParameterError,
            itf.InvalidZError, itf.MissingObservableError, OSError) as err:
        print(f"negmeter: error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
