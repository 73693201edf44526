"""Loewner pencil from frequency samples and the resulting discrete/continuous realizations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from phloewner.conj import conjugate_partners, real_part_checked, realification_matrix
from phloewner.errors import ConjugacyViolation, DegenerateData, InvalidParameter, PointCollision
from phloewner.freqest import FrequencySample
from phloewner.lti import DescriptorSystem

D_REG = 1e-5
SVD_TOL = 1e-10
SVD_FLOOR = 1e-14


@dataclass(frozen=True)
class LoewnerPencil:
    """Loewner matrices for left points ``mu`` (rows) and right points ``lam`` (columns).

    ``left_values`` (column) becomes the input matrix of the realization and
    ``right_values`` (row) the output matrix, so that
    ``H(s) = right_values (Ls - s L)^{-1} left_values``.
    """

    L: np.ndarray
    Ls: np.ndarray
    left_values: np.ndarray
    right_values: np.ndarray
    left_points: np.ndarray
    right_points: np.ndarray

    @property
    def n(self) -> int:
        return self.L.shape[0]

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(np.hstack([self.L, self.Ls]), compute_uv=False)

    def realified(self) -> LoewnerPencil:
        """Equivalent real pencil, for data closed under conjugation on both sides."""
        Ul = realification_matrix(conjugate_partners(self.left_points))
        Ur = realification_matrix(conjugate_partners(self.right_points))
        Urh = Ur.conj().T
        return LoewnerPencil(
            real_part_checked(Ul @ self.L @ Urh, what="Loewner matrix"),
            real_part_checked(Ul @ self.Ls @ Urh, what="shifted Loewner matrix"),
            real_part_checked(Ul @ self.left_values, what="left values"),
            real_part_checked(self.right_values @ Urh, what="right values"),
            self.left_points,
            self.right_points,
        )


def partition_samples(samples: list[FrequencySample]) -> tuple[list[FrequencySample], list[FrequencySample]]:
    """Split samples into equally sized left/right halves, keeping conjugate pairs together.

    Groups (a conjugate pair, or a lone sample) are formed in order of first
    appearance and dealt alternately to the left and right halves.
    """
    r = len(samples)
    if r == 0 or r % 2:
        raise InvalidParameter(f"need an even, positive number of samples, got {r}")
    pts = np.array([s.point for s in samples])
    if len(set(np.round(pts, 12))) != r:
        raise InvalidParameter("sample points must be distinct")
    try:
        partner = conjugate_partners(pts, rtol=1e-10)
    except ConjugacyViolation:
        partner = np.arange(r)
    groups, seen = [], set()
    for i in range(r):
        if i in seen:
            continue
        g = sorted({i, int(partner[i])})
        seen.update(g)
        groups.append(g)
    left, right = [], []
    for j, g in enumerate(groups):
        (left if j % 2 == 0 else right).extend(samples[i] for i in g)
    if len(left) != len(right):
        raise InvalidParameter(
            f"cannot form conjugate-closed halves of equal size ({len(left)} vs {len(right)})")
    return left, right


def build_loewner(left: list[FrequencySample], right: list[FrequencySample]) -> LoewnerPencil:
    mu = np.array([s.point for s in left], dtype=complex)
    lam = np.array([s.point for s in right], dtype=complex)
    v = np.array([s.value for s in left], dtype=complex)
    w = np.array([s.value for s in right], dtype=complex)
    diff = mu[:, None] - lam[None, :]
    scale = max(np.abs(mu).max(initial=0.0), np.abs(lam).max(initial=0.0))
    if np.any(np.abs(diff) < 1e-14 * scale):
        raise PointCollision("a left point coincides with a right point")
    L = (v[:, None] - w[None, :]) / diff
    Ls = (mu[:, None] * v[:, None] - lam[None, :] * w[None, :]) / diff
    return LoewnerPencil(L, Ls, v.reshape(-1, 1), w.reshape(1, -1), mu, lam)


def realize_discrete(pencil: LoewnerPencil, svd_tol: float = SVD_TOL, order: int | None = None,
                     Ts: float = 1.0) -> DescriptorSystem:
    """Descriptor realization ``(-L, -Ls, left_values, right_values, 0)`` of the pencil.

    The pencil is compressed onto its dominant singular subspaces when its
    numerical rank (singular values above ``svd_tol * sigma_max``) is below
    the pencil size, or when a smaller ``order`` is requested explicitly.
    """
    n = pencil.n
    if n < 1:
        raise DegenerateData("empty pencil")
    row = np.hstack([pencil.L, pencil.Ls])
    col = np.vstack([pencil.L, pencil.Ls])
    Y, s_row, _ = np.linalg.svd(row)
    _, s_col, Xh = np.linalg.svd(col)
    if s_row[0] < SVD_FLOOR:
        raise DegenerateData("all Loewner singular values vanish")
    k = int(min(np.sum(s_row > svd_tol * s_row[0]), np.sum(s_col > svd_tol * s_col[0])))
    if order is not None:
        if order < 1:
            raise InvalidParameter("order must be positive")
        k = min(int(order), n)
    if k < 1:
        raise DegenerateData(f"no singular value above svd_tol={svd_tol:g} relative")
    p, m = pencil.right_values.shape[0], pencil.left_values.shape[1]
    D = np.zeros((p, m))
    if k == n:
        return DescriptorSystem(-pencil.L, -pencil.Ls, pencil.left_values, pencil.right_values, D, Ts)
    Yk = Y[:, :k].conj().T
    Xk = Xh[:k].conj().T
    return DescriptorSystem(-Yk @ pencil.L @ Xk, -Yk @ pencil.Ls @ Xk,
                            Yk @ pencil.left_values, pencil.right_values @ Xk, D, Ts)


def to_continuous(disc: DescriptorSystem, d_reg: float = D_REG) -> DescriptorSystem:
    """Map a discrete model to continuous time.

    ``E_c = E, A_c = (A - E)/Ts, B_c = B/Ts, C_c = C, D_c = D + d_reg I``.
    The transfer functions satisfy ``H_c(s) = H_d(1 + s Ts) + d_reg``.
    """
    if not disc.is_discrete:
        raise InvalidParameter("to_continuous expects a discrete-time system")
    Ts = disc.Ts
    D = disc.D + d_reg * np.eye(disc.p, disc.m)
    return DescriptorSystem(disc.E, (disc.A - disc.E) / Ts, disc.B / Ts, disc.C, D)
