"""Command-line front end: simulate, estimate, identify, evaluate, ladder."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from phloewner import io
from phloewner.analysis import bode_data, default_grid, error_report
from phloewner.errors import PHLoewnerError, StageError
from phloewner.excitation import generate_record, select_interpolation_points
from phloewner.freqest import estimate_frequency_response
from phloewner.loewner import D_REG, SVD_TOL
from phloewner.lti import PHForm, build_rlc_ladder, ph_to_descriptor
from phloewner.pipeline import PipelineOptions, run_pipeline

EXIT_STAGE_ERROR = 2


def _as_descriptor(model):
    return ph_to_descriptor(model) if isinstance(model, PHForm) else model


def cmd_simulate(a) -> None:
    model = _as_descriptor(io.read_model(a.model))
    plan = select_interpolation_points(a.K, a.m, a.Ts, a.kmin)
    record = generate_record(model, plan, a.sigma, a.seed, method=a.disc.replace("-", "_"))
    io.write_signal_csv(a.out, record)
    io.write_json(a.out + ".meta.json", record.meta)


def _plan_for(record, m, kmin):
    return select_interpolation_points(record.K, m, record.Ts, kmin)


def cmd_estimate(a) -> None:
    record = io.read_signal_csv(a.data)
    if record.K != a.K:
        raise StageError("estimate", ValueError(f"record has {record.K} samples, --K says {a.K}"))
    samples = estimate_frequency_response(record, _plan_for(record, a.m, a.kmin))
    io.write_freq_csv(a.out, samples)


def cmd_identify(a) -> None:
    record = io.read_signal_csv(a.data, Ts=a.Ts)
    plan = _plan_for(record, a.m, a.kmin)
    res = run_pipeline(record, plan, PipelineOptions(svd_tol=a.svd_tol, d_reg=a.dreg, order=a.order))
    io.write_model(a.out_ph, res.ph)
    io.write_model(a.out_ss, ph_to_descriptor(res.ph))
    io.write_json(a.diag, res.diagnostics)


def cmd_evaluate(a) -> None:
    ref = _as_descriptor(io.read_model(a.ref))
    cand = _as_descriptor(io.read_model(a.cand))
    grid = default_grid(a.wmin, a.wmax, a.wpts)
    rep = error_report(ref, cand, grid, d_reg=a.dreg)
    b_ref, b_cand = bode_data(ref, grid), bode_data(cand, grid)
    rows = np.column_stack([grid, b_ref[:, 1], b_ref[:, 2], b_cand[:, 1], b_cand[:, 2]])
    if a.out.endswith(".json"):
        out = rep.as_dict()
        out["bode"] = {"w": grid.tolist(), "ref_mag_db": b_ref[:, 1].tolist(), "ref_phase_deg": b_ref[:, 2].tolist(),
                       "cand_mag_db": b_cand[:, 1].tolist(), "cand_phase_deg": b_cand[:, 2].tolist()}
        io.write_json(a.out, out)
    else:
        io.write_rows_csv(a.out, ["w", "ref_mag_db", "ref_phase_deg", "cand_mag_db", "cand_phase_deg"], rows)
        io.write_json(a.out + ".report.json", rep.as_dict())


def cmd_ladder(a) -> None:
    io.write_model(a.out, build_rlc_ladder(a.N, a.r, a.c, a.l, a.dissipation))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="phloewner", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a multisine record from a model")
    p.add_argument("--model", required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--Ts", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kmin", type=int, default=None)
    p.add_argument("--disc", choices=["zoh", "implicit-euler"], default="zoh")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", help="frequency samples from a record")
    p.add_argument("--data", required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kmin", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("identify", help="record to certified pH model")
    p.add_argument("--data", required=True)
    p.add_argument("--Ts", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--svd-tol", type=float, default=SVD_TOL)
    p.add_argument("--dreg", type=float, default=D_REG)
    p.add_argument("--order", type=int, default=None, help="force the intermediate model order")
    p.add_argument("--kmin", type=int, default=None)
    p.add_argument("--out-ph", required=True)
    p.add_argument("--out-ss", required=True)
    p.add_argument("--diag", required=True)
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("evaluate", help="error norms and Bode rows")
    p.add_argument("--ref", required=True)
    p.add_argument("--cand", required=True)
    p.add_argument("--wmin", type=float, default=1e-3)
    p.add_argument("--wmax", type=float, default=1e3)
    p.add_argument("--wpts", type=int, default=400)
    p.add_argument("--dreg", type=float, default=D_REG,
                   help="feedthrough regularizer removed before the H2 error")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("ladder", help="write an RLC ladder model")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--l", type=float, default=1.0)
    p.add_argument("--dissipation", choices=["port", "distributed"], default="port")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ladder)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except StageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_STAGE_ERROR
    except PHLoewnerError as exc:
        print(f"[{args.command}] {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_STAGE_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())
