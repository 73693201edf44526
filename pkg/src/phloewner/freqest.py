"""Least-squares frequency-response estimation from one multisine record."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as spla

from phloewner.errors import DimensionMismatch, InvalidParameter, RankDeficient, SupportMismatch
from phloewner.excitation import ExperimentPlan
from phloewner.lti import SignalRecord

SUPPORT_TOL = 1e-6


@dataclass(frozen=True)
class FrequencySample:
    point: complex
    value: complex

    def __post_init__(self):
        if not np.isfinite(self.point):
            raise InvalidParameter("sample point must be finite")


def dft_coefficients(u) -> np.ndarray:
    """Coefficients ``U`` with ``u_k = sum_i U_i exp(2 pi j i k / K)``."""
    u = np.asarray(u)
    return np.fft.fft(u, axis=0) / u.shape[0]


def build_regressor(plan: ExperimentPlan, U) -> np.ndarray:
    """Matrix with entry ``U_{i_l} q_{i_l}^t`` for ``t = k_min .. K-1`` (rows) and plan bin ``l`` (columns)."""
    U = np.asarray(U)
    if U.shape[0] != plan.K:
        raise DimensionMismatch("U must have K coefficients")
    energy = np.sum(np.abs(U) ** 2)
    mask = np.zeros(plan.K, dtype=bool)
    mask[list(plan.indices)] = True
    off = np.sum(np.abs(U[~mask]) ** 2)
    if energy == 0 or off > SUPPORT_TOL * energy:
        raise SupportMismatch(f"off-plan energy fraction {off / energy if energy else np.inf:.3g}")
    idx = np.array(plan.indices)
    t = np.arange(plan.k_min, plan.K)
    phase = np.outer(t, idx) % plan.K
    return U[idx] * np.exp(2j * np.pi * phase / plan.K)


def estimate_frequency_response(record: SignalRecord, plan: ExperimentPlan) -> list[FrequencySample]:
    """Steady-state least-squares fit of the discrete transfer function at the plan points."""
    if record.K != plan.K:
        raise DimensionMismatch(f"record has {record.K} samples, plan expects {plan.K}")
    u, y = record.u, record.y
    if (u.ndim > 1 and u.shape[1] != 1) or (y.ndim > 1 and y.shape[1] != 1):
        raise InvalidParameter("only single-input single-output records are supported")
    u = u.reshape(-1)
    y = y.reshape(-1)
    F = build_regressor(plan, dft_coefficients(u))
    ybar = y[plan.k_min:]
    H, _, rank, sv = spla.lstsq(F, ybar, lapack_driver="gelsd")
    if rank < plan.r:
        raise RankDeficient(f"regressor rank {rank} < {plan.r}")
    return [FrequencySample(complex(q), complex(h)) for q, h in zip(plan.points, H)]
