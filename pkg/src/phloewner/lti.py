"""Descriptor state-space models, port-Hamiltonian forms and basic LTI operations."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as spla

from phloewner.errors import DimensionMismatch, InvalidParameter, SingularE, SingularPencil

EPS_PENCIL = 1e-12
TOL_STRUCT = 1e-10


def _frozen(a, dtype=None) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {a.shape}")
    if not np.iscomplexobj(a):
        a = a.astype(float)
    a.flags.writeable = False
    return a


def _as_real_if_possible(a: np.ndarray, tol: float = 0.0) -> np.ndarray:
    if np.iscomplexobj(a) and np.all(np.abs(a.imag) <= tol):
        return a.real.copy()
    return a


@dataclass(frozen=True)
class DescriptorSystem:
    """LTI model ``E x' = A x + B u, y = C x + D u``.

    ``Ts=None`` marks a continuous-time model; a positive ``Ts`` makes it a
    discrete-time model where ``x'`` means the next state ``x_{k+1}``.
    """

    E: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    Ts: float | None = None

    def __post_init__(self):
        for name in "EABCD":
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        n = self.A.shape[0]
        if self.A.shape != (n, n) or self.E.shape != (n, n):
            raise DimensionMismatch("E and A must be square of equal size")
        if self.B.shape[0] != n or self.C.shape[1] != n:
            raise DimensionMismatch("B must have n rows and C n columns")
        if self.D.shape != (self.C.shape[0], self.B.shape[1]):
            raise DimensionMismatch("D must be p x m")
        if self.Ts is not None:
            if not self.Ts > 0:
                raise InvalidParameter("sampling time must be positive")
            object.__setattr__(self, "Ts", float(self.Ts))

    @classmethod
    def from_abcd(cls, A, B, C, D=None, Ts=None) -> DescriptorSystem:
        A = np.atleast_2d(A)
        B = np.atleast_2d(B)
        C = np.atleast_2d(C)
        if D is None:
            D = np.zeros((C.shape[0], B.shape[1]))
        return cls(np.eye(A.shape[0]), A, B, C, D, Ts)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def p(self) -> int:
        return self.C.shape[0]

    @property
    def is_discrete(self) -> bool:
        return self.Ts is not None

    @property
    def is_real(self) -> bool:
        return not any(np.iscomplexobj(getattr(self, k)) for k in "EABCD")

    def replace(self, **kw) -> DescriptorSystem:
        vals = {k: getattr(self, k) for k in ("E", "A", "B", "C", "D", "Ts")}
        vals.update(kw)
        return DescriptorSystem(**vals)

    def poles(self) -> np.ndarray:
        ev = spla.eigvals(self.A, self.E)
        return ev[np.isfinite(ev)]

    def __call__(self, s):
        return eval_transfer(self, s)


@dataclass(frozen=True)
class PHForm:
    """Port-Hamiltonian model

        x' = (J - R) Q x + (F - P) u
        y  = (F + P)^T Q x + (S + N) u

    with Hamiltonian ``x^T Q x / 2``.
    """

    J: np.ndarray
    R: np.ndarray
    Q: np.ndarray
    F: np.ndarray
    P: np.ndarray
    S: np.ndarray
    N: np.ndarray

    def __post_init__(self):
        for name in ("J", "R", "Q", "F", "P", "S", "N"):
            arr = _frozen(getattr(self, name))
            if np.iscomplexobj(arr):
                raise InvalidParameter(f"PHForm matrix {name} must be real")
            object.__setattr__(self, name, arr)
        n = self.J.shape[0]
        m = self.F.shape[1]
        shapes = {"J": (n, n), "R": (n, n), "Q": (n, n), "F": (n, m),
                  "P": (n, m), "S": (m, m), "N": (m, m)}
        for name, shape in shapes.items():
            if getattr(self, name).shape != shape:
                raise DimensionMismatch(f"{name} has shape {getattr(self, name).shape}, expected {shape}")

    @property
    def n(self) -> int:
        return self.J.shape[0]

    @property
    def m(self) -> int:
        return self.F.shape[1]

    def dissipation_block(self) -> np.ndarray:
        return np.block([[self.R, self.P], [self.P.T, self.S]])

    def structure_residuals(self) -> dict:
        """Residuals of the structural invariants (all should be <= 0 or tiny)."""
        K = self.dissipation_block()
        return {
            "j_skew": float(np.linalg.norm(self.J + self.J.T)),
            "s_sym": float(np.linalg.norm(self.S - self.S.T)),
            "n_skew": float(np.linalg.norm(self.N + self.N.T)),
            "q_min_eig": float(np.linalg.eigvalsh((self.Q + self.Q.T) / 2).min()),
            "block_min_eig": float(np.linalg.eigvalsh((K + K.T) / 2).min()),
            "block_norm": float(np.linalg.norm(K, 2)),
        }


@dataclass(frozen=True)
class SignalRecord:
    """Sampled input/output sequences ``u_k = u(k Ts)`` with matching outputs."""

    Ts: float
    u: np.ndarray
    y: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        y = np.asarray(self.y, dtype=complex)
        if u.shape[0] != y.shape[0]:
            raise DimensionMismatch("u and y must have equal length")
        if u.shape[0] < 2:
            raise InvalidParameter("a record needs at least two samples")
        if not self.Ts > 0:
            raise InvalidParameter("sampling time must be positive")
        u.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "y", y)

    @property
    def K(self) -> int:
        return self.u.shape[0]

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.K) * self.Ts


def eval_transfer(sys: DescriptorSystem, s: complex) -> np.ndarray:
    """C (sE - A)^{-1} B + D at a single point (z-plane point for discrete models)."""
    M = s * sys.E - sys.A
    if sys.n and np.linalg.cond(M) > 1.0 / EPS_PENCIL:
        raise SingularPencil(f"sE - A is numerically singular at s={s}")
    if sys.n == 0:
        return np.array(sys.D, dtype=complex)
    return sys.C @ np.linalg.solve(M, sys.B) + sys.D


def freqresp(sys: DescriptorSystem, points) -> np.ndarray:
    """Transfer matrix at each of ``points``; shape (len(points), p, m)."""
    return np.array([eval_transfer(sys, s) for s in np.ravel(points)])


def popov(sys: DescriptorSystem, s: complex) -> np.ndarray:
    """Popov function H(-conj(s))^* + H(s); Hermitian on the imaginary axis."""
    return eval_transfer(sys, -np.conj(s)).conj().T + eval_transfer(sys, s)


def _require_nonsingular(E: np.ndarray) -> None:
    if E.size and np.linalg.cond(E) > 1.0 / EPS_PENCIL:
        raise SingularE("E is numerically singular")


def discretize(sys: DescriptorSystem, Ts: float, method: str = "zoh") -> DescriptorSystem:
    """Sample a continuous model.

    ``implicit_euler`` is the exact inverse of :func:`phloewner.loewner.to_continuous`
    (``E_d = E, A_d = E + Ts A, B_d = Ts B``); ``zoh`` is the exact
    sample-and-hold discretization of ``E^{-1}A, E^{-1}B``.
    """
    if sys.is_discrete:
        raise InvalidParameter("system is already discrete")
    if not Ts > 0:
        raise InvalidParameter("sampling time must be positive")
    method = method.replace("-", "_")
    if method == "implicit_euler":
        return DescriptorSystem(sys.E, sys.E + Ts * sys.A, Ts * sys.B, sys.C, sys.D, Ts)
    if method != "zoh":
        raise InvalidParameter(f"unknown discretization method {method!r}")
    _require_nonsingular(sys.E)
    n, m = sys.n, sys.m
    Ac = np.linalg.solve(sys.E, sys.A)
    Bc = np.linalg.solve(sys.E, sys.B)
    dtype = np.result_type(Ac, Bc)
    M = np.zeros((n + m, n + m), dtype=dtype)
    M[:n, :n] = Ac * Ts
    M[:n, n:] = Bc * Ts
    Phi = spla.expm(M)
    return DescriptorSystem(np.eye(n), Phi[:n, :n], Phi[:n, n:], sys.C, sys.D, Ts)


def simulate(sys: DescriptorSystem, u, x0=None) -> np.ndarray:
    """Run ``E x_{k+1} = A x_k + B u_k, y_k = C x_k + D u_k`` from ``x0`` (default 0).

    A 1-D input is treated as a single-input sequence; the output is then 1-D
    too when the system has one output.
    """
    if not sys.is_discrete:
        raise InvalidParameter("simulate expects a discrete-time system")
    u = np.asarray(u)
    squeeze = u.ndim == 1
    U = u.reshape(-1, 1) if squeeze else u
    if U.shape[1] != sys.m:
        raise DimensionMismatch(f"input has {U.shape[1]} channels, system has {sys.m}")
    _require_nonsingular(sys.E)
    Ad = np.linalg.solve(sys.E, sys.A)
    Bd = np.linalg.solve(sys.E, sys.B)
    K = U.shape[0]
    dtype = np.result_type(Ad, Bd, sys.C, sys.D, U, float)
    x = np.zeros(sys.n, dtype=dtype) if x0 is None else np.asarray(x0, dtype=dtype).copy()
    X = np.empty((K, sys.n), dtype=dtype)
    for k in range(K):
        X[k] = x
        x = Ad @ x + Bd @ U[k]
    Y = X @ sys.C.T + U @ sys.D.T
    if squeeze and sys.p == 1:
        return Y[:, 0]
    return Y


def build_rlc_ladder(N: int, r: float = 1.0, c: float = 1.0, l: float = 1.0,
                     dissipation: str = "port") -> PHForm:
    """SISO RLC ladder of order 2N in port-Hamiltonian form.

    States alternate capacitor charge / inductor flux, ``Q = diag(1/c, 1/l, ...)``
    and ``J`` is the skew tridiagonal interconnection. The input is a current
    injected at the first node and the output the voltage across it.

    ``dissipation="port"`` puts a single conductance ``r`` at the driven node
    (``R = diag(r, 0, ..., 0)``). ``dissipation="distributed"`` adds a shunt
    conductance ``r`` at every capacitor and a series resistance ``r l / c``
    in every inductor, so that ``R Q = (r/c) I`` and every mode decays at the
    same rate ``r/c``.
    """
    if int(N) != N or N < 1:
        raise InvalidParameter("N must be a positive integer")
    if min(r, c, l) <= 0:
        raise InvalidParameter("r, c, l must be positive")
    n = 2 * int(N)
    J = np.diag(-np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
    cap = np.arange(n) % 2 == 0
    Q = np.diag(np.where(cap, 1.0 / c, 1.0 / l))
    R = np.zeros((n, n))
    if dissipation == "port":
        R[0, 0] = r
    elif dissipation == "distributed":
        R = np.diag(np.where(cap, r, r * l / c))
    else:
        raise InvalidParameter(f"unknown dissipation layout {dissipation!r}")
    F = np.zeros((n, 1))
    F[0, 0] = 1.0
    z = np.zeros((1, 1))
    return PHForm(J, R, Q, F, np.zeros((n, 1)), z, z)


def benchmark_ladder(N: int) -> PHForm:
    """Ladder used by the experiments and acceptance tests.

    Unit capacitors and inductors with distributed losses ``r = 2``, so every
    mode decays like ``exp(-2 t)`` and a record settles well before ``K/4``
    samples at ``Ts = 1e-2``.
    """
    return build_rlc_ladder(N, 2.0, 1.0, 1.0, "distributed")


def ph_to_descriptor(ph: PHForm) -> DescriptorSystem:
    A = (ph.J - ph.R) @ ph.Q
    B = ph.F - ph.P
    C = (ph.F + ph.P).T @ ph.Q
    return DescriptorSystem(np.eye(ph.n), A, B, C, ph.S + ph.N)
