"""Conjugate pairing of coordinates and the unitary map that makes such data real."""

from __future__ import annotations

import numpy as np

from phloewner.errors import ConjugacyViolation


def conjugate_partners(values, rtol: float = 1e-8) -> np.ndarray:
    """Index array ``p`` with ``values[p[i]] == conj(values[i])`` (within ``rtol``).

    Real values are their own partners. Raises ConjugacyViolation if some
    complex value has no conjugate partner.
    """
    v = np.asarray(values, dtype=complex).ravel()
    n = v.size
    partner = -np.ones(n, dtype=int)
    scale = np.maximum(1.0, np.abs(v))
    for i in range(n):
        if partner[i] >= 0:
            continue
        if abs(v[i].imag) <= rtol * scale[i]:
            partner[i] = i
            continue
        dist = np.abs(v - np.conj(v[i]))
        dist[partner >= 0] = np.inf
        dist[i] = np.inf
        k = int(np.argmin(dist))
        if dist[k] > rtol * scale[i]:
            raise ConjugacyViolation(f"value {v[i]} has no conjugate partner")
        partner[i] = k
        partner[k] = i
    return partner


def realification_matrix(partner) -> np.ndarray:
    """Unitary ``U`` mapping each pair ``(x_i, x_k)`` to ``((x_i + x_k)/sqrt2, j(x_i - x_k)/sqrt2)``.

    When ``x_k = conj(x_i)`` this gives ``(sqrt2 Re x_i, -sqrt2 Im x_i)``.
    Self-paired coordinates are left alone.
    """
    partner = np.asarray(partner)
    n = partner.size
    U = np.zeros((n, n), dtype=complex)
    h = 1.0 / np.sqrt(2.0)
    for i in range(n):
        k = partner[i]
        if k == i:
            U[i, i] = 1.0
        elif i < k:
            U[i, i] = U[i, k] = h
            U[k, i] = 1j * h
            U[k, k] = -1j * h
    return U


def real_part_checked(M: np.ndarray, tol: float = 1e-8, what: str = "matrix") -> np.ndarray:
    M = np.asarray(M)
    if not np.iscomplexobj(M):
        return M
    scale = 1.0 + np.linalg.norm(M)
    if M.size and np.abs(M.imag).max() > tol * scale:
        raise ConjugacyViolation(f"{what} keeps an imaginary part of {np.abs(M.imag).max():.3g}")
    return M.real.copy()
