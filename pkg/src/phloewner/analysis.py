"""Error metrics, Bode data and time-response comparison."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as spla
from scipy.optimize import minimize_scalar

from phloewner.errors import DimensionMismatch, InvalidParameter, NonzeroD, SingularPencil, Unstable
from phloewner.lti import DescriptorSystem, _require_nonsingular, discretize, eval_transfer, simulate

STABILITY_MARGIN = 1e-12
DEFAULT_WMIN, DEFAULT_WMAX, DEFAULT_WPTS = 1e-3, 1e3, 400


def default_grid(wmin=DEFAULT_WMIN, wmax=DEFAULT_WMAX, wpts=DEFAULT_WPTS) -> np.ndarray:
    return np.logspace(np.log10(wmin), np.log10(wmax), int(wpts))


def _check_stable(sys: DescriptorSystem) -> None:
    if sys.is_discrete:
        raise InvalidParameter("norms are computed for continuous-time models")
    _require_nonsingular(sys.E)
    if sys.n and np.linalg.eigvals(np.linalg.solve(sys.E, sys.A)).real.max() >= -STABILITY_MARGIN:
        raise Unstable("system has an eigenvalue in the closed right half-plane")


def h2_norm(sys: DescriptorSystem) -> float:
    """H2 norm via the controllability Gramian (Bartels-Stewart Lyapunov solve)."""
    _check_stable(sys)
    if np.linalg.norm(sys.D) > 1e-12:
        raise NonzeroD("H2 norm is infinite for a nonzero feedthrough")
    if sys.n == 0:
        return 0.0
    A = np.linalg.solve(sys.E, sys.A)
    B = np.linalg.solve(sys.E, sys.B)
    P = spla.solve_continuous_lyapunov(A, -B @ B.conj().T)
    val = np.trace(sys.C @ P @ sys.C.conj().T).real
    return float(np.sqrt(max(val, 0.0)))


def _sigma_max(sys: DescriptorSystem, w: float) -> float:
    return float(np.linalg.norm(eval_transfer(sys, 1j * w), 2))


def hinf_norm(sys: DescriptorSystem, grid=None) -> float:
    """Peak gain over the grid (plus DC and infinity), refined locally around the best grid point.

    A lower bound on the true H-infinity norm.
    """
    _check_stable(sys)
    grid = default_grid() if grid is None else np.sort(np.asarray(grid, dtype=float))
    return _peak_gain(lambda w: _sigma_max(sys, w), grid, float(np.linalg.norm(sys.D, 2)))


def _peak_gain(gain, grid, at_infinity: float) -> float:
    vals = np.array([gain(w) for w in grid])
    best = max(float(vals.max()), gain(0.0), at_infinity)
    i = int(np.argmax(vals))
    lo = np.log10(grid[max(i - 1, 0)])
    hi = np.log10(grid[min(i + 1, len(grid) - 1)])
    if hi > lo:
        res = minimize_scalar(lambda x: -gain(10.0 ** x), bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-10})
        best = max(best, -float(res.fun))
    return best


@dataclass
class ErrorReport:
    h2_abs: float | None
    h2_rel: float | None
    hinf_abs: float
    hinf_rel: float
    order: int
    grid: list[float] = field(repr=False)
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"h2_abs": self.h2_abs, "h2_rel": self.h2_rel, "hinf_abs": self.hinf_abs,
                "hinf_rel": self.hinf_rel, "order": self.order, "diagnostics": self.diagnostics}


def _difference(ref: DescriptorSystem, cand: DescriptorSystem, D=None) -> DescriptorSystem:
    return DescriptorSystem(
        spla.block_diag(ref.E, cand.E),
        spla.block_diag(ref.A, cand.A),
        np.vstack([ref.B, cand.B]),
        np.hstack([ref.C, -cand.C]),
        ref.D - cand.D if D is None else D,
    )


def _same(a: DescriptorSystem, b: DescriptorSystem) -> bool:
    return all(np.array_equal(getattr(a, k), getattr(b, k)) for k in "EABCD")


def error_report(reference: DescriptorSystem, candidate: DescriptorSystem, grid=None,
                 d_reg: float = 0.0) -> ErrorReport:
    """H2 and sampled H-infinity norms of ``reference - candidate``.

    ``d_reg`` is removed from the candidate feedthrough before the H2
    computation when the feedthroughs differ (it is a regularization
    artifact, not identified dynamics).
    When the remaining feedthrough difference is nonzero the H2 fields are
    left as None and the diagnostics say so.
    """
    if (reference.p, reference.m) != (candidate.p, candidate.m):
        raise DimensionMismatch("reference and candidate have different I/O dimensions")
    grid = default_grid() if grid is None else np.sort(np.asarray(grid, dtype=float))
    diag: dict = {}
    if _same(reference, candidate):
        return ErrorReport(0.0, 0.0, 0.0, 0.0, candidate.n, list(map(float, grid)), diag)
    _check_stable(reference)
    _check_stable(candidate)

    def gap(w):
        return float(np.linalg.norm(eval_transfer(reference, 1j * w) - eval_transfer(candidate, 1j * w), 2))

    hinf_abs = _peak_gain(gap, grid, float(np.linalg.norm(reference.D - candidate.D, 2)))
    hinf_ref = hinf_norm(reference, grid)
    Dh2 = reference.D - candidate.D
    if d_reg and np.linalg.norm(Dh2) > 1e-12:
        Dh2 = Dh2 + d_reg * np.eye(candidate.p, candidate.m)
    h2_abs = h2_rel = None
    if np.linalg.norm(Dh2) > 1e-12:
        diag["h2"] = "NonzeroD: feedthrough difference prevents a finite H2 error"
    else:
        h2_abs = h2_norm(_difference(reference, candidate, np.zeros_like(Dh2)))
        try:
            h2_rel = h2_abs / h2_norm(reference)
        except NonzeroD:
            diag["h2_rel"] = "NonzeroD: reference has feedthrough"
    return ErrorReport(h2_abs, h2_rel, hinf_abs, hinf_abs / hinf_ref if hinf_ref else float("inf"),
                       candidate.n, list(map(float, grid)), diag)


def bode_data(sys: DescriptorSystem, grid=None) -> np.ndarray:
    """Rows ``(w, 20 log10 |H(jw)|, unwrapped phase in degrees)``; failed points give NaN."""
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    H = np.full(len(grid), np.nan + 0j)
    for k, w in enumerate(grid):
        try:
            H[k] = eval_transfer(sys, 1j * w)[0, 0]
        except SingularPencil:
            pass
    ok = np.isfinite(H)
    mag = np.full(len(grid), np.nan)
    ph = np.full(len(grid), np.nan)
    with np.errstate(divide="ignore"):
        mag[ok] = 20 * np.log10(np.abs(H[ok]))
    ph[ok] = np.degrees(np.unwrap(np.angle(H[ok])))
    return np.column_stack([grid, mag, ph])


def analytic_input(kind, t: np.ndarray) -> np.ndarray:
    """``rlc_mix`` is sin t + sin 2t + sin t/2; a list of (amplitude, frequency, decay)
    triples gives the sum of ``a sin(f t) exp(-d t)``."""
    if kind == "rlc_mix":
        kind = [(1.0, 1.0, 0.0), (1.0, 2.0, 0.0), (1.0, 0.5, 0.0)]
    if isinstance(kind, str):
        raise InvalidParameter(f"unknown input kind {kind!r}")
    u = np.zeros_like(t, dtype=float)
    for a, f, d in kind:
        u += a * np.sin(f * t) * np.exp(-d * t)
    return u


def time_compare(reference: DescriptorSystem, candidate: DescriptorSystem, input_kind="rlc_mix",
                 T_end: float = 50.0, Ts: float = 1e-2) -> np.ndarray:
    """Rows ``(t, y_ref, y_cand)`` from ZOH simulation of both models on the same sampled input."""
    if reference.is_discrete or candidate.is_discrete:
        raise InvalidParameter("time_compare expects continuous-time models")
    if T_end < 0 or not Ts > 0:
        raise InvalidParameter("need T_end >= 0 and Ts > 0")
    if T_end == 0:
        return np.empty((0, 3))
    t = np.arange(int(np.floor(T_end / Ts + 1e-9)) + 1) * Ts
    u = analytic_input(input_kind, t)
    y_ref = simulate(discretize(reference, Ts, "zoh"), u)
    y_cand = simulate(discretize(candidate, Ts, "zoh"), u)
    return np.column_stack([t, np.real(y_ref), np.real(y_cand)])
