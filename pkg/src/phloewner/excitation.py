"""Experiment design: interpolation points, multisine input, measurement noise."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from phloewner.errors import InvalidParameter
from phloewner.lti import DescriptorSystem, SignalRecord, discretize, simulate

RNG_ALGORITHM = "PCG64"


@dataclass(frozen=True)
class ExperimentPlan:
    """DFT bins excited by the input and the steady-state cut-off ``k_min``.

    Plans built by :func:`select_interpolation_points` are closed under the
    conjugation map ``i -> K - i``; hand-built plans need not be.
    """

    K: int
    indices: tuple[int, ...]
    k_min: int
    Ts: float = 1.0

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if len(set(idx)) != len(idx):
            raise InvalidParameter("plan indices must be distinct")
        if any(not 1 <= i <= self.K - 1 for i in idx):
            raise InvalidParameter("plan indices must lie in [1, K-1]")
        if not 0 <= self.k_min < self.K:
            raise InvalidParameter("k_min must lie in [0, K)")
        if self.K - self.k_min < len(idx):
            raise InvalidParameter("K - k_min must be at least the number of excited bins")

    @property
    def r(self) -> int:
        return len(self.indices)

    @property
    def points(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.array(self.indices) / self.K)

    @property
    def is_conjugate_closed(self) -> bool:
        return sorted(self.K - i for i in self.indices) == sorted(self.indices)

    def with_k_min(self, k_min: int) -> ExperimentPlan:
        return ExperimentPlan(self.K, self.indices, k_min, self.Ts)


def select_interpolation_points(K: int, m: int, Ts: float = 1.0, k_min: int | None = None) -> ExperimentPlan:
    """Choose ``m/2`` log-spaced bins in ``[1, K//2 - 1]`` plus their conjugates.

    Bins that collide after rounding are pushed upward to the next free bin.
    The returned order is the log-spaced bins ascending followed by their
    partners ``K - i`` in the same order.
    """
    if K < 4:
        raise InvalidParameter("K must be at least 4")
    if m < 2 or m % 2 or m > K - 2:
        raise InvalidParameter("m must be even with 2 <= m <= K - 2")
    half = m // 2
    hi = K // 2 - 1
    if half > hi:
        raise InvalidParameter(f"{half} distinct bins do not fit in [1, {hi}]")
    raw = np.floor(np.exp(np.linspace(0.0, np.log(hi), half)) + 0.5).astype(int)
    chosen: list[int] = []
    taken: set[int] = set()
    for i in raw:
        i = max(int(i), 1)
        while i in taken:
            i += 1
        if i > hi:
            raise InvalidParameter(f"{half} distinct bins do not fit in [1, {hi}]")
        chosen.append(i)
        taken.add(i)
    indices = tuple(chosen) + tuple(K - i for i in chosen)
    if k_min is None:
        k_min = K // 4
    return ExperimentPlan(K, indices, k_min, Ts)


def design_input(plan: ExperimentPlan) -> np.ndarray:
    """Multisine whose DFT equals ``(1+j)/K`` on the plan bins and zero elsewhere."""
    K = plan.K
    k = np.arange(K)
    u = np.zeros(K, dtype=complex)
    for i in plan.indices:
        # reduce i*k mod K first to keep the phase argument small
        u += np.exp(2j * np.pi * ((i * k) % K) / K)
    return (1 + 1j) / K * u


def add_noise(y, sigma: float, seed: int) -> np.ndarray:
    """Multiplicative relative noise ``y_k (1 + sigma xi_k)`` with ``xi_k ~ N(0, 1)``."""
    if sigma < 0:
        raise InvalidParameter("sigma must be nonnegative")
    y = np.asarray(y)
    if sigma == 0:
        return y.copy()
    xi = np.random.Generator(np.random.PCG64(seed)).standard_normal(y.shape)
    return y * (1.0 + sigma * xi)


def generate_record(model: DescriptorSystem, plan: ExperimentPlan, sigma: float = 0.0,
                    seed: int = 0, method: str = "zoh") -> SignalRecord:
    """Drive ``model`` with the designed input and return the (noisy) record.

    Continuous models are sampled at ``plan.Ts`` with ``method`` first.
    """
    if model.is_discrete:
        disc = model
    else:
        disc = discretize(model, plan.Ts, method)
    u = design_input(plan)
    y = simulate(disc, u)
    y = add_noise(y, sigma, seed)
    meta = {"rng": RNG_ALGORITHM, "seed": int(seed), "sigma": float(sigma),
            "K": plan.K, "Ts": plan.Ts, "indices": list(plan.indices),
            "k_min": plan.k_min, "disc": method}
    return SignalRecord(disc.Ts, u, y, meta)
