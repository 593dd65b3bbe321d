"""
Single-particle spinors as even multivectors.

A qubit state c0|0> + c1|1> is carried by psi = a0 + a_k Iσ_k with

    c0 = a0 + i a3,    c1 = -a2 + i a1

so |0> <-> 1 and |1> <-> -Iσ2. The unit imaginary is right-multiplication
by Iσ3 and the Pauli operators act as psi -> σ_k psi σ3.
"""

import logging
import math
import numbers
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from config import Config
from engine import ga3
from engine.exceptions import DomainError, UsageError

logger = logging.getLogger(__name__)

# positions of [1, Iσ1, Iσ2, Iσ3] inside a Multivector3
EVEN_INDICES = (0, 4, 5, 6)
_ODD_INDICES = (1, 2, 3, 7)


@dataclass(frozen=True)
class Spinor1:
    """psi = a0 + a1 Iσ1 + a2 Iσ2 + a3 Iσ3."""

    a0: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    @classmethod
    def from_coefficients(cls, values) -> "Spinor1":
        a0, a1, a2, a3 = (float(v) for v in values)
        return cls(a0, a1, a2, a3)

    @classmethod
    def from_multivector(cls, m: ga3.Multivector3) -> "Spinor1":
        """Reads the even part of m; odd parts must vanish."""
        coefficients = m.coefficients
        if np.any(np.abs(coefficients[list(_ODD_INDICES)]) > Config.CHAIN_TOLERANCE):
            raise UsageError(f"Multivector is not even: {m!r}")
        return cls.from_coefficients(coefficients[list(EVEN_INDICES)])

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([self.a0, self.a1, self.a2, self.a3])

    def to_multivector(self) -> ga3.Multivector3:
        values = np.zeros(8)
        values[list(EVEN_INDICES)] = self.coefficients
        return ga3.Multivector3(values)

    def reverse(self) -> "Spinor1":
        return Spinor1(self.a0, -self.a1, -self.a2, -self.a3)

    def isclose(self, other: "Spinor1", atol: float = Config.PRODUCT_TOLERANCE) -> bool:
        return bool(np.allclose(self.coefficients, other.coefficients, rtol=0.0, atol=atol))

    def __add__(self, other):
        if not isinstance(other, Spinor1):
            return NotImplemented
        return Spinor1.from_coefficients(self.coefficients + other.coefficients)

    def __sub__(self, other):
        if not isinstance(other, Spinor1):
            return NotImplemented
        return Spinor1.from_coefficients(self.coefficients - other.coefficients)

    def __neg__(self):
        return Spinor1(-self.a0, -self.a1, -self.a2, -self.a3)

    def __mul__(self, other):
        if isinstance(other, Spinor1):
            product = self.to_multivector() * other.to_multivector()
            return Spinor1.from_multivector(product)
        if isinstance(other, numbers.Real):
            return Spinor1.from_coefficients(self.coefficients * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return Spinor1.from_coefficients(self.coefficients * float(other))
        return NotImplemented

    def __invert__(self):
        return self.reverse()


def _even_product(*factors: ga3.Multivector3) -> Spinor1:
    result = factors[0]
    for factor in factors[1:]:
        result = ga3.geometric_product(result, factor)
    return Spinor1.from_multivector(result)


def _check_axis(k: int) -> None:
    if k not in (1, 2, 3):
        raise UsageError(f"Pauli axis must be 1, 2 or 3, got {k!r}")


def from_complex(c0: complex, c1: complex) -> Spinor1:
    c0, c1 = complex(c0), complex(c1)
    return Spinor1(c0.real, c1.imag, -c1.real, c0.imag)


def to_complex(psi: Spinor1) -> Tuple[complex, complex]:
    return complex(psi.a0, psi.a3), complex(-psi.a2, psi.a1)


def apply_pauli(k: int, psi: Spinor1) -> Spinor1:
    """sigma_k |psi>  <->  σ_k psi σ3."""
    _check_axis(k)
    sigma_k = ga3.Multivector3.basis(k)
    return _even_product(sigma_k, psi.to_multivector(), ga3.SIGMA3)


def apply_i(psi: Spinor1) -> Spinor1:
    """i |psi>  <->  psi Iσ3."""
    return _even_product(psi.to_multivector(), ga3.I_SIGMA3)


def inner_product(psi: Spinor1, phi: Spinor1) -> complex:
    """<psi|phi> = <phi psi~> - <phi Iσ3 psi~> i."""
    phi_mv = phi.to_multivector()
    psi_rev = ga3.reverse(psi.to_multivector())
    real = ga3.scalar_product(phi_mv, psi_rev)
    imag = -ga3.geometric_product(ga3.geometric_product(phi_mv, ga3.I_SIGMA3), psi_rev).scalar_part
    return complex(real, imag)


def probability_density(psi: Spinor1) -> float:
    """rho = <psi psi~>."""
    return float(np.sum(psi.coefficients ** 2))


def _require_nonzero(psi: Spinor1) -> float:
    rho = probability_density(psi)
    if rho == 0.0:
        raise DomainError("Spinor is zero")
    return rho


def polarization_bivector(psi: Spinor1) -> ga3.Multivector3:
    """P = <rho^-1 psi Iσ3 psi~>_2."""
    rho = _require_nonzero(psi)
    psi_mv = psi.to_multivector()
    rotated = ga3.rotate(psi_mv, ga3.I_SIGMA3)
    return ga3.grade_project(rotated, 2) / rho


def polarization_vector(psi: Spinor1) -> np.ndarray:
    """P_k = -(Iσ_k) . P, i.e. the Bloch vector <sigma_k>."""
    bivector = polarization_bivector(psi)
    basis = (ga3.I_SIGMA1, ga3.I_SIGMA2, ga3.I_SIGMA3)
    return np.array([-ga3.bivector_dot(b, bivector) for b in basis])


def bloch_angles(psi: Spinor1) -> Tuple[float, float]:
    """
    (theta, phi) of the polarization direction, theta in [0, pi],
    phi in (-pi, pi]. phi is 0 at either pole.
    """
    p1, p2, p3 = polarization_vector(psi)
    transverse = math.hypot(p1, p2)
    theta = math.atan2(transverse, p3)
    if transverse < Config.POLE_TOLERANCE:
        return theta, 0.0
    phi = math.atan2(p2, p1)
    if phi == -math.pi:
        phi = math.pi
    return theta, phi


def rotor_factor(psi: Spinor1) -> Tuple[float, Spinor1]:
    """psi = rho^(1/2) R; returns (rho, R)."""
    rho = _require_nonzero(psi)
    return rho, psi * (1.0 / math.sqrt(rho))


def spinor_theta_phi(theta: float, phi: float) -> Spinor1:
    """psi(theta, phi) = exp(-phi Iσ3 / 2) exp(-theta Iσ2 / 2)."""
    azimuth = ga3.exp_bivector(ga3.Multivector3.bivector(0.0, 0.0, -phi / 2.0))
    polar = ga3.exp_bivector(ga3.Multivector3.bivector(0.0, -theta / 2.0, 0.0))
    return _even_product(azimuth, polar)


def orthogonal_spinor(psi: Spinor1) -> Spinor1:
    """psi Iσ2, the state orthogonal to psi with the same rho."""
    _require_nonzero(psi)
    return _even_product(psi.to_multivector(), ga3.I_SIGMA2)
