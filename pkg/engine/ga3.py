"""
Geometric algebra of 3D space.

Multivectors carry 8 real coefficients over the fixed basis

    [1, σ1, σ2, σ3, Iσ1, Iσ2, Iσ3, I]      I = σ1σ2σ3

The product table is generated once from the bitmask form of the blades
(e1 = 0b001, e2 = 0b010, e3 = 0b100) and then re-expressed in this basis,
so Iσ1 = e23, Iσ2 = e31 = -e13, Iσ3 = e12.
"""

import logging
import math
import numbers
from typing import Iterable, Optional

import numpy as np

from config import Config
from engine.exceptions import UsageError

logger = logging.getLogger(__name__)

BASIS_LABELS = ("1", "σ1", "σ2", "σ3", "Iσ1", "Iσ2", "Iσ3", "I")

# (bitmask, sign) such that basis element = sign * blade(bitmask)
_BASIS_BLADES = (
    (0b000, 1),
    (0b001, 1),
    (0b010, 1),
    (0b100, 1),
    (0b110, 1),
    (0b101, -1),
    (0b011, 1),
    (0b111, 1),
)

GRADES = np.array([0, 1, 1, 1, 2, 2, 2, 3])

# Reversion flips bivectors and trivectors
REVERSE_SIGNS = np.array([1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0])

# <e_i e_i> for each basis element; <ab> = sum_i a_i b_i METRIC[i]
METRIC = np.array([1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0])


def _reordering_sign(a: int, b: int) -> int:
    """Sign picked up when sorting blade(a) blade(b) into canonical order (Euclidean metric)."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _build_product_table() -> np.ndarray:
    by_mask = {mask: (index, sign) for index, (mask, sign) in enumerate(_BASIS_BLADES)}
    table = np.zeros((8, 8, 8))
    for i, (mask_i, sign_i) in enumerate(_BASIS_BLADES):
        for j, (mask_j, sign_j) in enumerate(_BASIS_BLADES):
            k, sign_k = by_mask[mask_i ^ mask_j]
            table[i, j, k] = sign_i * sign_j * sign_k * _reordering_sign(mask_i, mask_j)
    return table


# PRODUCT_TABLE[i, j, k]: coefficient of basis k in (basis i)(basis j)
PRODUCT_TABLE = _build_product_table()


class Multivector3:
    """Immutable element of the 8-dimensional algebra."""

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Optional[Iterable[float]] = None):
        values = np.zeros(8) if coefficients is None else np.array(coefficients, dtype=float)
        if values.shape != (8,):
            raise UsageError(f"Multivector3 needs 8 coefficients, got shape {values.shape}")
        values.setflags(write=False)
        self._coefficients = values

    # --- constructors ---

    @classmethod
    def scalar(cls, value: float) -> "Multivector3":
        return cls([value, 0, 0, 0, 0, 0, 0, 0])

    @classmethod
    def vector(cls, v1: float, v2: float, v3: float) -> "Multivector3":
        return cls([0, v1, v2, v3, 0, 0, 0, 0])

    @classmethod
    def bivector(cls, b1: float, b2: float, b3: float) -> "Multivector3":
        """b1 Iσ1 + b2 Iσ2 + b3 Iσ3."""
        return cls([0, 0, 0, 0, b1, b2, b3, 0])

    @classmethod
    def pseudoscalar(cls, value: float = 1.0) -> "Multivector3":
        return cls([0, 0, 0, 0, 0, 0, 0, value])

    @classmethod
    def basis(cls, index: int) -> "Multivector3":
        values = np.zeros(8)
        values[index] = 1.0
        return cls(values)

    # --- accessors ---

    @property
    def coefficients(self) -> np.ndarray:
        return self._coefficients

    @property
    def scalar_part(self) -> float:
        return float(self._coefficients[0])

    @property
    def bivector_part(self) -> np.ndarray:
        """Coefficients of Iσ1, Iσ2, Iσ3."""
        return self._coefficients[4:7].copy()

    def grade(self, k: int) -> "Multivector3":
        return grade_project(self, k)

    def is_grade(self, k: int, atol: float = 0.0) -> bool:
        rest = self._coefficients[GRADES != k]
        return bool(np.all(np.abs(rest) <= atol))

    def isclose(self, other: "Multivector3", atol: float = Config.PRODUCT_TOLERANCE) -> bool:
        return bool(np.allclose(self._coefficients, _coerce(other)._coefficients, rtol=0.0, atol=atol))

    # --- arithmetic ---

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Multivector3(self._coefficients + other._coefficients)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Multivector3(self._coefficients - other._coefficients)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Multivector3(other._coefficients - self._coefficients)

    def __neg__(self):
        return Multivector3(-self._coefficients)

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return Multivector3(self._coefficients * float(other))
        if isinstance(other, Multivector3):
            return geometric_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return Multivector3(self._coefficients * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return Multivector3(self._coefficients / float(other))
        return NotImplemented

    def __invert__(self):
        return reverse(self)

    def __eq__(self, other):
        if not isinstance(other, Multivector3):
            return NotImplemented
        return bool(np.array_equal(self._coefficients, other._coefficients))

    __hash__ = None

    def __repr__(self):
        terms = [
            f"{value:+.6g}{'' if label == '1' else label}"
            for value, label in zip(self._coefficients, BASIS_LABELS)
            if value != 0.0
        ]
        return f"Multivector3({' '.join(terms) if terms else '0'})"


def _coerce(value) -> Optional[Multivector3]:
    if isinstance(value, Multivector3):
        return value
    if isinstance(value, numbers.Real):
        return Multivector3.scalar(float(value))
    return None


ONE = Multivector3.scalar(1.0)
SIGMA1, SIGMA2, SIGMA3 = (Multivector3.basis(k) for k in (1, 2, 3))
I_SIGMA1, I_SIGMA2, I_SIGMA3 = (Multivector3.basis(k) for k in (4, 5, 6))
PSEUDOSCALAR = Multivector3.pseudoscalar()


def geometric_product(a: Multivector3, b: Multivector3) -> Multivector3:
    # c_k = sum_ij a_i b_j T_ijk
    left = np.tensordot(a.coefficients, PRODUCT_TABLE, axes=1)
    return Multivector3(b.coefficients @ left)


def reverse(a: Multivector3) -> Multivector3:
    return Multivector3(a.coefficients * REVERSE_SIGNS)


def grade_project(a: Multivector3, k: int) -> Multivector3:
    """<a>_k for k in 0..3."""
    if not isinstance(k, numbers.Integral) or not 0 <= k <= 3:
        raise UsageError(f"Grade index must be 0, 1, 2 or 3, got {k!r}")
    return Multivector3(np.where(GRADES == k, a.coefficients, 0.0))


def scalar_product(a: Multivector3, b: Multivector3) -> float:
    """<ab>, the scalar part of the geometric product."""
    return float(np.sum(a.coefficients * b.coefficients * METRIC))


def magnitude(a: Multivector3) -> float:
    """sqrt(<a ã>); for even elements this is the spinor norm rho^(1/2)."""
    return math.sqrt(max(float(np.sum(a.coefficients ** 2)), 0.0))


def bivector_dot(a: Multivector3, b: Multivector3) -> float:
    """Inner product of two pure bivectors, <AB>. (Iσk)·(Iσk) = -1."""
    tolerance = Config.PRODUCT_TOLERANCE
    if not (a.is_grade(2, tolerance) and b.is_grade(2, tolerance)):
        raise UsageError("bivector_dot expects two pure bivectors")
    return scalar_product(a, b)


def exp_bivector(b: Multivector3) -> Multivector3:
    """
    Closed-form exponential of a bivector: cos|B| + (B/|B|) sin|B|,
    |B| = sqrt(-<BB>). Returns a rotor; exp(0) is exactly 1.
    """
    if not b.is_grade(2, Config.PRODUCT_TOLERANCE):
        raise UsageError("exp_bivector expects a pure bivector")
    components = b.bivector_part
    angle = math.sqrt(float(np.sum(components ** 2)))
    if angle == 0.0:
        return Multivector3.scalar(1.0)
    scaled = components * (math.sin(angle) / angle)
    return Multivector3([math.cos(angle), 0, 0, 0, scaled[0], scaled[1], scaled[2], 0])


def rotate(rotor: Multivector3, x: Multivector3) -> Multivector3:
    """R x R~."""
    return geometric_product(geometric_product(rotor, x), reverse(rotor))
