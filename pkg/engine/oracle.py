"""
Textbook matrix mechanics for one and two qubits.

Complex amplitude vectors, Pauli matrices, Kronecker products, density
matrices, partial traces and a closed-form 2x2 SVD. This module is the
reference every geometric-algebra result is checked against, so it imports
nothing from the rest of the engine and keeps its own constants. Errors are
plain ValueError.
"""

import logging
from typing import Tuple

import numpy as np

logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-13
TRACE_TOLERANCE = 1e-10
EIGENVALUE_FLOOR = -1e-12
NORMALIZATION_TOLERANCE = 1e-10

IDENTITY2 = np.eye(2, dtype=complex)

_PAULI = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(k: int) -> np.ndarray:
    if k not in _PAULI:
        raise ValueError(f"Pauli axis must be 1, 2 or 3, got {k!r}")
    return _PAULI[k].copy()


def _as_state(state) -> np.ndarray:
    vector = np.asarray(state, dtype=complex).ravel()
    if vector.shape not in ((2,), (4,)):
        raise ValueError(f"State must have 2 or 4 amplitudes, got {vector.shape[0]}")
    if not np.all(np.isfinite(vector)):
        raise ValueError("State amplitudes must be finite")
    return vector


def kron_state(a, b) -> np.ndarray:
    return np.kron(_as_state(a), _as_state(b))


def inner(psi, phi) -> complex:
    """<psi|phi>, conjugate-linear in psi."""
    psi, phi = _as_state(psi), _as_state(phi)
    if psi.shape != phi.shape:
        raise ValueError(f"Dimension mismatch: {psi.shape[0]} vs {phi.shape[0]}")
    return complex(np.vdot(psi, phi))


def density_matrix(state) -> np.ndarray:
    """|psi><psi|."""
    psi = _as_state(state)
    return np.outer(psi, np.conj(psi))


def expectation(rho: np.ndarray, q: np.ndarray) -> complex:
    """tr(rho Q)."""
    rho, q = np.asarray(rho, dtype=complex), np.asarray(q, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape != q.shape:
        raise ValueError(f"Dimension mismatch: rho {rho.shape} vs Q {q.shape}")
    return complex(np.trace(rho @ q))


def check_density_matrix(rho: np.ndarray, trace: float = 1.0) -> np.ndarray:
    """Validates Hermiticity, trace and positivity; returns rho as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape not in ((2, 2), (4, 4)):
        raise ValueError(f"Density matrix must be 2x2 or 4x4, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOLERANCE:
        raise ValueError("Density matrix is not Hermitian")
    if abs(np.trace(rho).real - trace) > TRACE_TOLERANCE:
        raise ValueError(f"Density matrix trace {np.trace(rho).real:.12g} != {trace}")
    if np.min(np.linalg.eigvalsh(rho)) < EIGENVALUE_FLOOR:
        raise ValueError("Density matrix has a negative eigenvalue")
    return rho


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Reduced 2x2 density matrix of particle `keep` (1 or 2)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"partial_trace needs a 4x4 matrix, got {rho.shape}")
    blocks = rho.reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("ijkj->ik", blocks)
    if keep == 2:
        return np.einsum("ijil->jl", blocks)
    raise ValueError(f"keep must be 1 or 2, got {keep!r}")


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """(tr(rho σ1), tr(rho σ2), tr(rho σ3)) of a 2x2 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"bloch_vector needs a 2x2 matrix, got {rho.shape}")
    return np.array([expectation(rho, _PAULI[k]).real for k in (1, 2, 3)])


def apply_local(op: np.ndarray, particle: int, state) -> np.ndarray:
    """(op ⊗ I)|psi> for particle 1, (I ⊗ op)|psi> for particle 2."""
    psi = _as_state(state)
    if psi.shape != (4,):
        raise ValueError("apply_local needs a two-qubit state")
    op = np.asarray(op, dtype=complex)
    if particle == 1:
        return np.kron(op, IDENTITY2) @ psi
    if particle == 2:
        return np.kron(IDENTITY2, op) @ psi
    raise ValueError(f"particle must be 1 or 2, got {particle!r}")


def _orthogonal(v: np.ndarray) -> np.ndarray:
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def svd_2x2(c: np.ndarray) -> Tuple[float, float, np.ndarray, np.ndarray]:
    """
    Closed-form SVD from the eigen-decomposition of the Gram matrix C^H C.

    Returns (M1, M2, U, V) with M1 >= M2 >= 0 and C = U diag(M1, M2) V^H.
    """
    c = np.asarray(c, dtype=complex)
    if c.shape != (2, 2):
        raise ValueError(f"svd_2x2 needs a 2x2 matrix, got {c.shape}")

    gram = c.conj().T @ c
    a, d = gram[0, 0].real, gram[1, 1].real
    b = gram[0, 1]
    largest = 0.5 * (a + d) + np.hypot(0.5 * (a - d), abs(b))

    # either row of (G - lambda I) gives an eigenvector; keep the better conditioned one
    candidates = (np.array([b, largest - a]), np.array([largest - d, np.conj(b)]))
    v1 = max(candidates, key=np.linalg.norm)
    norm = np.linalg.norm(v1)
    v1 = v1 / norm if norm > 0.0 else np.array([1.0 + 0j, 0.0 + 0j])
    v2 = _orthogonal(v1)

    image1 = c @ v1
    m1 = float(np.linalg.norm(image1))
    u1 = image1 / m1 if m1 > 0.0 else np.array([1.0 + 0j, 0.0 + 0j])

    u2 = _orthogonal(u1)
    projection = np.vdot(u2, c @ v2)
    m2 = float(abs(projection))
    if m2 > 0.0:
        u2 = u2 * (projection / m2)

    return m1, m2, np.column_stack([u1, u2]), np.column_stack([v1, v2])


def overlap(psi, phi) -> float:
    """|<psi|phi>|^2 for normalized states of equal dimension."""
    psi, phi = _as_state(psi), _as_state(phi)
    if psi.shape != phi.shape:
        raise ValueError(f"Dimension mismatch: {psi.shape[0]} vs {phi.shape[0]}")
    for name, vector in (("psi", psi), ("phi", phi)):
        if abs(np.vdot(vector, vector).real - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"{name} is not normalized")
    return float(abs(np.vdot(psi, phi)) ** 2)


def overlap_trace(psi, phi) -> float:
    """tr(rho_psi rho_phi), the density-matrix form of overlap()."""
    return float(np.trace(density_matrix(psi) @ density_matrix(phi)).real)
