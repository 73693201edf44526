"""Spectral zeros, spectral-zero Loewner realization, realification and pH extraction."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as spla

from phloewner.conj import conjugate_partners, real_part_checked, realification_matrix
from phloewner.errors import (
    ConjugacyViolation,
    IndefiniteE,
    InterpolationFailure,
    InvalidParameter,
    NoRHPZeros,
    NotSPD,
    PencilFailure,
    StructureFailure,
)
from phloewner.lti import DescriptorSystem, PHForm, eval_transfer, ph_to_descriptor, popov

log = logging.getLogger(__name__)

TOL_RHP = 1e-8
INTERP_RTOL = 1e-8


def default_grid(lo: float = 1e-3, hi: float = 1e3, num: int = 100) -> np.ndarray:
    return np.logspace(np.log10(lo), np.log10(hi), num)


@dataclass(frozen=True)
class SpectralTriple:
    """Right-half-plane spectral zero ``lam`` with unit direction ``r`` and ``w = H(lam) r``."""

    lam: complex
    r: np.ndarray
    w: np.ndarray

    def conj(self) -> SpectralTriple:
        return SpectralTriple(np.conj(self.lam), self.r.conj(), self.w.conj())


@dataclass
class PassivityReport:
    popov_min_eig: float
    block_min_eig: float
    q_min_eig: float
    j_skew_residual: float
    verdict: bool
    details: dict = field(default_factory=dict)


def _normalize_direction(r: np.ndarray) -> np.ndarray:
    r = r / np.linalg.norm(r)
    k = int(np.argmax(np.abs(r) > 1e-12 * np.abs(r).max()))
    r = r * (abs(r[k]) / r[k])
    r[k] = abs(r[k])
    return r


def spectral_zeros(sys: DescriptorSystem, tol_rhp: float = TOL_RHP) -> list[SpectralTriple]:
    """Finite right-half-plane zeros of ``Phi(s) = H(-conj s)^* + H(s)`` with directions.

    Zeros come from the structured pencil

        [0    A    B      ]       [ 0    E  0]
        [A^*  0    C^*    ] - s   [-E^*  0  0]
        [B^*  C    D + D^*]       [ 0    0  0]

    solved by QZ. For real systems the result is made exactly closed under
    conjugation. Sorted by imaginary part.
    """
    if sys.is_discrete:
        raise InvalidParameter("spectral zeros are computed for continuous-time models")
    n, m = sys.n, sys.m
    if sys.p != m:
        raise InvalidParameter("spectral zeros need a square transfer function")
    E, A, B, C, D = sys.E, sys.A, sys.B, sys.C, sys.D
    Z = np.zeros
    dt = np.result_type(E, A, B, C, D)
    M = np.block([[Z((n, n)), A, B],
                  [A.conj().T, Z((n, n)), C.conj().T],
                  [B.conj().T, C, D + D.conj().T]]).astype(dt)
    N = np.block([[Z((n, n)), E, Z((n, m))],
                  [-E.conj().T, Z((n, n)), Z((n, m))],
                  [Z((m, n)), Z((m, n)), Z((m, m))]]).astype(dt)
    try:
        (alpha, beta), V = spla.eig(M, N, homogeneous_eigvals=True, right=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise PencilFailure(str(exc)) from exc
    scale = np.linalg.norm(M) / max(np.linalg.norm(N), np.finfo(float).tiny)
    finite = np.abs(beta) * 1e12 * scale > np.abs(alpha)
    lam = alpha[finite] / beta[finite]
    V = V[:, finite]
    on_axis = np.abs(lam.real) <= tol_rhp
    if on_axis.any():
        log.info("rejected %d spectral zeros on the imaginary axis", int(on_axis.sum()))
    keep = lam.real > tol_rhp
    if sys.is_real:
        # keep one member per conjugate pair; partners are added exactly below
        keep &= lam.imag >= -1e-9 * np.maximum(1.0, np.abs(lam))
    lam, V = lam[keep], V[:, keep]
    if lam.size == 0:
        raise NoRHPZeros("no finite spectral zero in the open right half-plane")
    triples = []
    for z, v in zip(lam, V.T):
        is_real_zero = sys.is_real and abs(z.imag) <= 1e-9 * max(1.0, abs(z))
        if is_real_zero:
            z = complex(z.real)
        r = _normalize_direction(v[2 * n:])
        if is_real_zero:
            r = r.real.astype(complex)
            r /= np.linalg.norm(r)
        w = eval_transfer(sys, z) @ r
        t = SpectralTriple(complex(z), r, w)
        triples.append(t)
        if sys.is_real and not is_real_zero:
            triples.append(t.conj())
    triples.sort(key=lambda t: (t.lam.imag, t.lam.real))
    return triples


def build_spectral_loewner(triples: list[SpectralTriple]) -> tuple[np.ndarray, np.ndarray]:
    """Loewner pair for right data ``(lam_j, r_j, w_j)`` and mirrored left data.

    The left data ``(-conj lam_i, r_i^*, -w_i^*)`` follows from ``Phi(lam) r = 0``.
    ``L`` (the Pick matrix) is Hermitian and ``Ls`` skew-Hermitian:

        L_ij  = (r_i^* w_j + w_i^* r_j) / (lam_j + conj lam_i)
        Ls_ij = (lam_j r_i^* w_j - conj(lam_i) w_i^* r_j) / (lam_j + conj lam_i)
    """
    if not triples:
        raise InvalidParameter("need at least one spectral triple")
    lam = np.array([t.lam for t in triples])
    Rd = np.column_stack([t.r for t in triples])
    W = np.column_stack([t.w for t in triples])
    rw = Rd.conj().T @ W
    wr = W.conj().T @ Rd
    den = lam[None, :] + lam.conj()[:, None]
    L = (rw + wr) / den
    Ls = (lam[None, :] * rw - lam.conj()[:, None] * wr) / den
    L = (L + L.conj().T) / 2
    Ls = (Ls - Ls.conj().T) / 2
    return L, Ls


def realize_ph(triples: list[SpectralTriple], D) -> DescriptorSystem:
    """Passive descriptor realization interpolating the spectral-zero data and ``D`` at infinity.

        E = L,  A = Ls - R^* D R,  B = -W^* - R^* D,  C = -W + D R

    with directions ``R = [r_1 .. r_n]`` and values ``W = [w_1 .. w_n]``.
    """
    if not triples:
        raise InvalidParameter("need at least one spectral triple")
    D = np.atleast_2d(np.asarray(D))
    L, Ls = build_spectral_loewner(triples)
    Rd = np.column_stack([t.r for t in triples])
    W = np.column_stack([t.w for t in triples])
    Rh = Rd.conj().T
    sys = DescriptorSystem(L, Ls - Rh @ D @ Rd, -W.conj().T - Rh @ D, -W + D @ Rd, D)
    for t in triples:
        try:
            err = np.linalg.norm(eval_transfer(sys, t.lam) @ t.r - t.w)
        except Exception as exc:
            raise InterpolationFailure(f"cannot evaluate realization at {t.lam}: {exc}") from exc
        if err > INTERP_RTOL * max(np.linalg.norm(t.w), 1e-300):
            raise InterpolationFailure(f"interpolation residual {err:.3g} at lambda={t.lam:.6g}")
    ev = np.linalg.eigvalsh(L)
    if ev.min() <= 0:
        raise IndefiniteE(f"Pick matrix not positive definite (min eig {ev.min():.3g})")
    return sys


def realify(sys: DescriptorSystem, points=None) -> DescriptorSystem:
    """Real equivalent of a system whose coordinates come in conjugate pairs.

    ``points`` labels each state coordinate (e.g. the interpolation points it
    came from); pairs are found by conjugate matching. Defaults to ``diag(A)``.
    """
    if sys.is_real:
        return sys
    if points is None:
        points = np.diag(sys.A)
    U = realification_matrix(conjugate_partners(points))
    Uh = U.conj().T
    return DescriptorSystem(
        real_part_checked(U @ sys.E @ Uh, what="E"),
        real_part_checked(U @ sys.A @ Uh, what="A"),
        real_part_checked(U @ sys.B, what="B"),
        real_part_checked(sys.C @ Uh, what="C"),
        real_part_checked(sys.D, what="D"),
        sys.Ts,
    )


def extract_ph_form(sys: DescriptorSystem) -> PHForm:
    """Explicit pH coordinates via the Cholesky factor of ``E = T T^T``."""
    if not sys.is_real:
        raise ConjugacyViolation("extract_ph_form needs a real system")
    E = sys.E
    if np.linalg.norm(E - E.T) > 1e-8 * np.linalg.norm(E):
        raise NotSPD("E is not symmetric")
    try:
        T = spla.cholesky((E + E.T) / 2, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotSPD("E is not positive definite") from exc
    At = spla.solve_triangular(T, spla.solve_triangular(T, sys.A.T, lower=True).T, lower=True)
    Bt = spla.solve_triangular(T, sys.B, lower=True)
    Ct = spla.solve_triangular(T, sys.C.T, lower=True).T
    D = sys.D
    ph = PHForm(
        J=(At - At.T) / 2,
        R=-(At + At.T) / 2,
        Q=np.eye(sys.n),
        F=(Bt + Ct.T) / 2,
        P=(Ct.T - Bt) / 2,
        S=(D + D.T) / 2,
        N=(D - D.T) / 2,
    )
    res = ph.structure_residuals()
    if res["block_min_eig"] < -1e-6 * (1 + res["block_norm"]):
        raise StructureFailure(f"dissipation block has eigenvalue {res['block_min_eig']:.3g}")
    return ph


def certify_passivity(ph: PHForm, grid=None) -> PassivityReport:
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    res = ph.structure_residuals()
    sys = ph_to_descriptor(ph)
    pmin = np.inf
    worst = None
    for w in grid:
        Phi = popov(sys, 1j * w)
        e = np.linalg.eigvalsh((Phi + Phi.conj().T) / 2).min()
        if e < pmin:
            pmin, worst = e, w
    j_norm = np.linalg.norm(ph.J)
    checks = {
        "j_skew": res["j_skew"] <= 1e-8 * (1 + j_norm),
        "q_psd": res["q_min_eig"] >= -1e-8,
        "block_psd": res["block_min_eig"] >= -1e-8 * (1 + res["block_norm"]),
        "popov_psd": pmin >= -1e-6,
    }
    return PassivityReport(
        popov_min_eig=float(pmin),
        block_min_eig=res["block_min_eig"],
        q_min_eig=res["q_min_eig"],
        j_skew_residual=res["j_skew"],
        verdict=all(checks.values()),
        details={"checks": checks, "worst_frequency": float(worst), "grid_size": int(len(grid))},
    )
