"""Error of the identified model as a function of the forced reduced order.

    python scripts/order_sweep.py --N 50 --orders 2 4 6 8
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

import numpy as np

from phloewner.analysis import error_report
from phloewner.errors import StageError
from phloewner.excitation import generate_record, select_interpolation_points
from phloewner.lti import benchmark_ladder, ph_to_descriptor
from phloewner.pipeline import PipelineOptions, run_pipeline


@dataclass
class SweepConfig:
    N: int = 50
    K: int = 10000
    m: int = 100
    Ts: float = 1e-2
    disc: str = "zoh"
    orders: list[int] = field(default_factory=lambda: [2, 4, 6, 8])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=50)
    ap.add_argument("--K", type=int, default=10000)
    ap.add_argument("--m", type=int, default=100)
    ap.add_argument("--Ts", type=float, default=1e-2)
    ap.add_argument("--disc", choices=["zoh", "implicit_euler"], default="zoh")
    ap.add_argument("--orders", type=int, nargs="+", default=[2, 4, 6, 8])
    cfg = SweepConfig(**vars(ap.parse_args()))

    ref = ph_to_descriptor(benchmark_ladder(cfg.N))
    plan = select_interpolation_points(cfg.K, cfg.m, cfg.Ts)
    rec = generate_record(ref, plan, method=cfg.disc)
    full = run_pipeline(rec, plan)
    sv = np.array(full.diagnostics["singular_values"])
    print("leading normalized Loewner singular values:", np.array2string(sv[:12] / sv[0], precision=2))
    print(f"{'order':>5} {'H2 rel':>10} {'Hinf rel':>10}  certified")
    for k in cfg.orders:
        try:
            res = run_pipeline(rec, plan, PipelineOptions(order=k))
        except StageError as exc:
            print(f"{k:5d}  {exc}")
            continue
        rep = error_report(ref, ph_to_descriptor(res.ph), d_reg=1e-5)
        print(f"{k:5d} {rep.h2_rel:10.3e} {rep.hinf_rel:10.3e}  {res.report.verdict}")


if __name__ == "__main__":
    main()
