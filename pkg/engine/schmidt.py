"""
Schmidt decomposition of two-qubit pure states.

The canonical output is the angle form

    psi = rho^(1/2) e^{i chi} ( cos(alpha/2) e^{i tau/2}  s(θ1,φ1) ⊗ s(θ2,φ2)
                              + sin(alpha/2) e^{-i tau/2} o(θ1,φ1) ⊗ o(θ2,φ2) )

with s(θ,φ) = (cos θ/2 e^{-iφ/2}, sin θ/2 e^{iφ/2}) and o(θ,φ) its orthogonal
partner (sin θ/2 e^{-iφ/2}, -cos θ/2 e^{iφ/2}). The same state in the
two-particle algebra is

    psi = rho^(1/2) R^1 S^2 (cos(alpha/2) + sin(alpha/2) Iσ2^1 Iσ2^2) e^{J chi} E
    R = psi(θ1,φ1) e^{Iσ3 tau/4},  S = psi(θ2,φ2) e^{Iσ3 tau/4}

decompose() reaches it through the SVD of the 2x2 coefficient matrix
C[i, j] = c_ij. decompose_iterative() is the alternating maximisation of
|<u, v|psi>|^2 over unit spinors followed by the residual step, kept as an
independent route.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np

from config import Config
from engine import ga3, msta2, spinor1
from engine.exceptions import ConvergenceError, DomainError, UsageError
from engine.spinor1 import Spinor1

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SchmidtForm:
    rho: float
    chi: float
    alpha: float
    tau: float
    theta1: float
    phi1: float
    theta2: float
    phi2: float

    @property
    def m1(self) -> float:
        return math.sqrt(self.rho) * math.cos(self.alpha / 2.0)

    @property
    def m2(self) -> float:
        return math.sqrt(self.rho) * math.sin(self.alpha / 2.0)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SchmidtTerms:
    """psi = M1 |u1, v1> + M2 |u2, v2>."""

    m1: float
    m2: float
    u1: Spinor1
    u2: Spinor1
    v1: Spinor1
    v2: Spinor1
    iterations: int = 0
    degenerate: bool = False


class RotorForm(NamedTuple):
    rho: float
    chi: float
    alpha: float
    r: Spinor1
    s: Spinor1


# --- complex helpers ---

def local_state(theta: float, phi: float) -> np.ndarray:
    return np.array([
        math.cos(theta / 2.0) * np.exp(-0.5j * phi),
        math.sin(theta / 2.0) * np.exp(0.5j * phi),
    ])


def local_orthogonal_state(theta: float, phi: float) -> np.ndarray:
    return np.array([
        math.sin(theta / 2.0) * np.exp(-0.5j * phi),
        -math.cos(theta / 2.0) * np.exp(0.5j * phi),
    ])


def _orthogonal(v: np.ndarray) -> np.ndarray:
    """(a, b) -> (-conj b, conj a), orthogonal to v with the same norm."""
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def _wrap_angle(x: float) -> float:
    """Maps x into (-pi, pi]."""
    return x - TWO_PI * math.ceil((x - math.pi) / TWO_PI)


def _coefficient_matrix(c00: complex, c01: complex, c10: complex, c11: complex) -> Tuple[np.ndarray, float]:
    matrix = np.array([[c00, c01], [c10, c11]], dtype=complex)
    if not np.all(np.isfinite(matrix)):
        raise DomainError("Amplitudes must be finite")
    rho = float(np.sum(np.abs(matrix) ** 2))
    if rho == 0.0:
        raise DomainError("Cannot decompose the zero state")
    return matrix, rho


def _angles_and_phases(first: np.ndarray, second: np.ndarray) -> Tuple[float, float, float, float]:
    """Bloch angles of `first` plus the phases of first and second against s(θ,φ), o(θ,φ)."""
    theta, phi = spinor1.bloch_angles(spinor1.from_complex(first[0], first[1]))
    gamma1 = float(np.angle(np.vdot(local_state(theta, phi), first)))
    gamma2 = float(np.angle(np.vdot(local_orthogonal_state(theta, phi), second)))
    return theta, phi, gamma1, gamma2


def _tie_break_basis(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """u1 = |0>, u2 = o(0, 0); v_k from the row contractions u_k^H C."""
    u1 = np.array([1.0 + 0j, 0.0 + 0j])
    u2 = local_orthogonal_state(0.0, 0.0).astype(complex)
    w1 = np.conj(u1) @ matrix
    w2 = np.conj(u2) @ matrix
    return u1, u2, w1 / np.linalg.norm(w1), w2 / np.linalg.norm(w2)


def _is_degenerate(m1: float, m2: float, rho: float) -> bool:
    return m1 - m2 < Config.DEGENERACY_TOLERANCE * math.sqrt(rho)


def decompose(c00: complex, c01: complex, c10: complex, c11: complex) -> SchmidtForm:
    matrix, rho = _coefficient_matrix(c00, c01, c10, c11)
    left, singular, right = np.linalg.svd(matrix)
    m1, m2 = float(singular[0]), float(singular[1])

    if _is_degenerate(m1, m2, rho):
        logger.info("Degenerate Schmidt coefficients, using the |0>-aligned basis for particle 1")
        u1, u2, w1, w2 = _tie_break_basis(matrix)
        alpha = math.pi / 2.0
    else:
        u1, u2 = left[:, 0], left[:, 1]
        w1, w2 = right[0, :], right[1, :]
        alpha = 2.0 * math.atan2(m2, m1)

    theta1, phi1, gamma1, gamma2 = _angles_and_phases(u1, u2)
    theta2, phi2, delta1, delta2 = _angles_and_phases(w1, w2)
    first_phase, second_phase = gamma1 + delta1, gamma2 + delta2

    if m2 < Config.SEPARABLE_TOLERANCE * math.sqrt(rho):
        alpha, tau, chi = 0.0, 0.0, first_phase
    else:
        chi = 0.5 * (first_phase + second_phase)
        tau = first_phase - second_phase
        turns = math.ceil((tau - math.pi) / TWO_PI)
        tau -= TWO_PI * turns
        chi += math.pi * turns

    form = SchmidtForm(
        rho=rho,
        chi=_wrap_angle(chi),
        alpha=alpha,
        tau=tau,
        theta1=theta1,
        phi1=phi1,
        theta2=theta2,
        phi2=phi2,
    )
    logger.debug(f"Schmidt form: {form}")
    return form


def entanglement_angle(c00: complex, c01: complex, c10: complex, c11: complex) -> float:
    return decompose(c00, c01, c10, c11).alpha


def reconstruct(f: SchmidtForm) -> np.ndarray:
    """Amplitudes (c00, c01, c10, c11) of the angle form."""
    first = np.kron(local_state(f.theta1, f.phi1), local_state(f.theta2, f.phi2))
    second = np.kron(local_orthogonal_state(f.theta1, f.phi1), local_orthogonal_state(f.theta2, f.phi2))
    amplitudes = (
        math.cos(f.alpha / 2.0) * np.exp(0.5j * f.tau) * first
        + math.sin(f.alpha / 2.0) * np.exp(-0.5j * f.tau) * second
    )
    return math.sqrt(f.rho) * np.exp(1j * f.chi) * amplitudes


def to_rotor_form(f: SchmidtForm) -> RotorForm:
    twist = Spinor1.from_multivector(ga3.exp_bivector(ga3.Multivector3.bivector(0.0, 0.0, f.tau / 4.0)))
    r = spinor1.spinor_theta_phi(f.theta1, f.phi1) * twist
    s = spinor1.spinor_theta_phi(f.theta2, f.phi2) * twist
    return RotorForm(f.rho, f.chi, f.alpha, r, s)


def assemble(f: SchmidtForm) -> msta2.TwoParticleMV:
    """The two-particle multivector of a SchmidtForm."""
    return msta2.from_rotor_form(*to_rotor_form(f))


# --- iterative route ---

def _as_spinor(v: np.ndarray) -> Spinor1:
    return spinor1.from_complex(v[0], v[1])


def _right_partner(matrix: np.ndarray, u: np.ndarray) -> Tuple[np.ndarray, float]:
    """v = C^T conj(u) / M1 with M1 = |C^T conj(u)|."""
    x = matrix.T @ np.conj(u)
    m = float(np.linalg.norm(x))
    return x / m, m


def _power_iteration(matrix: np.ndarray, tol: float, max_iter: int) -> Tuple[np.ndarray, np.ndarray, float, int, bool]:
    """
    Alternating maximisation of |<u, v|psi>| = |u^H C conj(v)|.

    Fixing u the best v is C^T conj(u) normalised; fixing v the best u is C conj(v)
    normalised. One sweep therefore applies the Gram matrix G = C C^H to u. The operator
    is squared after each sweep, so sweep k applies G^(2^(k-1)) and a gap M1 - M2 of
    1e-9 still separates within a few dozen sweeps.
    """
    u = np.zeros(2, dtype=complex)
    u[int(np.argmax(np.linalg.norm(matrix, axis=1)))] = 1.0
    operator = matrix @ matrix.conj().T
    operator /= np.trace(operator).real
    converged = False

    for iteration in range(1, max_iter + 1):
        x = operator @ u
        previous, u = u, x / np.linalg.norm(x)
        if np.max(np.abs(u - previous)) < tol:
            converged = True
            break
        operator = operator @ operator
        operator /= np.trace(operator).real

    v, m = _right_partner(matrix, u)
    return u, v, m, iteration, converged


def decompose_iterative(c00: complex, c01: complex, c10: complex, c11: complex,
                        tol: Optional[float] = None, max_iter: Optional[int] = None) -> SchmidtTerms:
    tol = Config.ITERATIVE_TOLERANCE if tol is None else tol
    max_iter = Config.ITERATIVE_MAX_ITER if max_iter is None else max_iter
    if not tol > 0.0:
        raise UsageError(f"tol must be positive, got {tol}")
    if int(max_iter) != max_iter or max_iter < 1:
        raise UsageError(f"max_iter must be a positive integer, got {max_iter}")
    max_iter = int(max_iter)

    matrix, rho = _coefficient_matrix(c00, c01, c10, c11)
    u1, v1, m1, iterations, converged = _power_iteration(matrix, tol, max_iter)

    # fix the remaining phase: largest component of u1 real positive
    gauge = np.conj(u1[int(np.argmax(np.abs(u1)))])
    gauge /= abs(gauge)
    u1, v1 = u1 * gauge, v1 * np.conj(gauge)

    residual = matrix - m1 * np.outer(u1, v1)
    u2, v2 = _orthogonal(u1), _orthogonal(v1)
    overlap = np.conj(u2) @ residual @ np.conj(v2)
    m2 = float(abs(overlap))
    if m2 > 0.0:
        v2 = v2 * (overlap / m2)

    if _is_degenerate(m1, m2, rho):
        logger.info(f"Degenerate spectrum after {iterations} iteration(s), using the tie-break basis")
        u1, u2, v1, v2 = _tie_break_basis(matrix)
        half = math.sqrt(rho / 2.0)
        return SchmidtTerms(half, half, _as_spinor(u1), _as_spinor(u2), _as_spinor(v1), _as_spinor(v2),
                            iterations=iterations, degenerate=True)

    if not converged:
        logger.warning(f"⚠️ Iterative Schmidt route did not converge in {max_iter} iterations")
        raise ConvergenceError(
            f"Power iteration did not converge within {max_iter} iterations (M1 - M2 = {m1 - m2:.3e})"
        )

    return SchmidtTerms(m1, m2, _as_spinor(u1), _as_spinor(u2), _as_spinor(v1), _as_spinor(v2),
                        iterations=iterations, degenerate=False)
