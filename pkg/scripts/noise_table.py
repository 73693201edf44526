"""Median H2 / H-infinity error of the identified reduced model versus measurement noise.

    python scripts/noise_table.py --N 50 --K 10000 --m 100 --order 4 --seeds 10
"""

from __future__ import annotations

import argparse
from dataclasses import asdict, dataclass

import numpy as np

from phloewner.analysis import error_report
from phloewner.errors import StageError
from phloewner.excitation import generate_record, select_interpolation_points
from phloewner.lti import benchmark_ladder, ph_to_descriptor
from phloewner.pipeline import PipelineOptions, run_pipeline


@dataclass
class NoiseTableConfig:
    N: int = 50
    K: int = 10000
    m: int = 100
    Ts: float = 1e-2
    order: int | None = 4
    svd_tol: float = 1e-10
    seeds: int = 10
    sigmas: tuple[float, ...] = (0.0, 1e-6, 1e-5, 1e-4, 1e-3)
    d_reg: float = 1e-5


def run(cfg: NoiseTableConfig) -> list[dict]:
    ref = ph_to_descriptor(benchmark_ladder(cfg.N))
    plan = select_interpolation_points(cfg.K, cfg.m, cfg.Ts)
    opts = PipelineOptions(svd_tol=cfg.svd_tol, d_reg=cfg.d_reg, order=cfg.order)
    rows = []
    for sigma in cfg.sigmas:
        h2, hinf, failures = [], [], {}
        for seed in range(1 if sigma == 0 else cfg.seeds):
            try:
                res = run_pipeline(generate_record(ref, plan, sigma, seed), plan, opts)
            except StageError as exc:
                key = f"{exc.stage}:{type(exc.cause).__name__}"
                failures[key] = failures.get(key, 0) + 1
                continue
            rep = error_report(ref, ph_to_descriptor(res.ph), d_reg=cfg.d_reg)
            h2.append(rep.h2_rel)
            hinf.append(rep.hinf_rel)
        rows.append({"sigma": sigma, "h2_rel_median": float(np.median(h2)) if h2 else None,
                     "hinf_rel_median": float(np.median(hinf)) if hinf else None,
                     "runs": len(h2), "failures": failures})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = NoiseTableConfig()
    for name, val in asdict(defaults).items():
        if name == "sigmas":
            ap.add_argument("--sigmas", type=float, nargs="+", default=list(val))
        elif name == "order":
            ap.add_argument("--order", type=int, default=val)
        else:
            ap.add_argument(f"--{name}", type=type(val), default=val)
    cfg = NoiseTableConfig(**vars(ap.parse_args()))
    cfg.sigmas = tuple(cfg.sigmas)
    print(f"{'sigma':>8} {'H2 rel':>10} {'Hinf rel':>10} {'runs':>5}  failures")
    for r in run(cfg):
        fmt = lambda v: f"{v:10.3e}" if v is not None else f"{'-':>10}"  # noqa: E731
        print(f"{r['sigma']:8.0e} {fmt(r['h2_rel_median'])} {fmt(r['hinf_rel_median'])} {r['runs']:5d}  {r['failures'] or ''}")


if __name__ == "__main__":
    main()
