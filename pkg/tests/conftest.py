import numpy as np
import pytest
from scipy import integrate, signal

from phloewner.lti import DescriptorSystem, PHForm, eval_transfer, ph_to_descriptor

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def record_criterion():
    def _record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(ACCEPTANCE_LINES[number])
    return _record


def first_order(D=0.0):
    """1/(s+1) + D."""
    return DescriptorSystem.from_abcd([[-1.0]], [[1.0]], [[1.0]], [[D]])


def random_passive_ph(rng, n, d_min=0.1):
    """Random strictly passive SISO pH model with positive feedthrough."""
    X = rng.standard_normal((n, n))
    J = X - X.T
    Y = rng.standard_normal((n, n))
    R = Y @ Y.T / n + 0.1 * np.eye(n)
    Z = rng.standard_normal((n, n))
    Q = Z @ Z.T / n + 0.5 * np.eye(n)
    F = rng.standard_normal((n, 1))
    S = np.array([[d_min + rng.uniform(0, 1)]])
    return PHForm(J, R, Q, F, np.zeros((n, 1)), S, np.zeros((1, 1)))


def random_stable(rng, n, m=1, p=1, proper=False):
    """Random stable standard-form system (E = I), strictly proper unless asked otherwise."""
    A = rng.standard_normal((n, n))
    shift = np.linalg.eigvals(A).real.max() + rng.uniform(0.2, 2.0)
    A = A - shift * np.eye(n)
    D = rng.standard_normal((p, m)) if proper else np.zeros((p, m))
    return DescriptorSystem.from_abcd(A, rng.standard_normal((n, m)), rng.standard_normal((p, n)), D)


def h2_quadrature(sys: DescriptorSystem) -> float:
    """H2 norm from (1/pi) int_0^inf ||H(iw)||_F^2 dw, mapped to a finite interval by w = tan(theta)."""
    def f(theta):
        w = np.tan(theta)
        H = eval_transfer(sys, 1j * w)
        return np.sum(np.abs(H) ** 2) / np.cos(theta) ** 2 / np.pi

    val, _ = integrate.quad(f, 0.0, np.pi / 2, epsabs=1e-13, epsrel=1e-10, limit=500)
    return float(np.sqrt(val))


def popov_numerator_roots(sys: DescriptorSystem) -> np.ndarray:
    """Roots of n(s)d(-s) + n(-s)d(s) for H = n/d, a polynomial oracle independent of the pencil."""
    E_inv = np.linalg.inv(sys.E)
    num, den = signal.ss2tf(E_inv @ sys.A, E_inv @ sys.B, sys.C, sys.D)
    num, den = np.trim_zeros(num[0], "f"), den

    def mirror(c):
        deg = len(c) - 1
        return c * np.array([(-1) ** (deg - k) for k in range(deg + 1)])

    poly = np.polyadd(np.polymul(num, mirror(den)), np.polymul(mirror(num), den))
    return np.roots(poly)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def modal_rational(rng, n):
    """Real-coefficient strictly proper discrete H(z) = sum c_k / (z - p_k) of exact order n.

    Pole radii in [0.4, 0.9] and residues of modulus ~1 keep the data well away
    from numerical rank loss, so order n is visible at a 1e-10 relative SVD cut.
    """
    poles, res = [], []
    if n % 2:
        poles.append(rng.uniform(-0.9, 0.9))
        res.append(rng.uniform(0.5, 1.5) * rng.choice([-1, 1]))
    for _ in range(n // 2):
        p = rng.uniform(0.4, 0.9) * np.exp(1j * rng.uniform(0.2, 2.9))
        c = rng.uniform(0.5, 1.5) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        poles += [p, np.conj(p)]
        res += [c, np.conj(c)]
    poles, res = np.array(poles), np.array(res)
    return lambda z: complex(np.sum(res / (z - poles)))
