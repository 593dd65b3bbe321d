"""
Two-particle correlated algebra.

Elements are real combinations of e_p^1 e_q^2, where e_0 = 1 and
e_k = Iσ_k (k = 1, 2, 3) in each particle space. Bivectors from different
spaces commute, so the product factorises:

    (e_p^1 e_q^2)(e_r^1 e_s^2) = (e_p e_r)^1 (e_q e_s)^2

Flat coefficient order (16 entries):

    0        1
    1..3     Iσ1^1, Iσ2^1, Iσ3^1
    4..6     Iσ1^2, Iσ2^2, Iσ3^2
    7..15    Iσj^1 Iσk^2, row-major in (j, k), j indexing particle 1

The products Iσj^1 Iσk^2 are grade-4 in the full relativistic algebra;
here they are just product-bivector components of the even subalgebra.

Physical states satisfy psi E = psi with the correlator
E = (1 - Iσ3^1 Iσ3^2)/2. Right-multiplication by J = (Iσ3^1 + Iσ3^2)/2
plays the role of i.
"""

import logging
import math
import numbers
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from config import Config
from engine import ga3
from engine.exceptions import DomainError, UsageError
from engine.spinor1 import EVEN_INDICES, Spinor1

logger = logging.getLogger(__name__)

EvenElement = Union[Spinor1, ga3.Multivector3]


def _flat_layout() -> Tuple[Tuple[int, int], ...]:
    layout = [(0, 0)]
    layout += [(k, 0) for k in (1, 2, 3)]
    layout += [(0, k) for k in (1, 2, 3)]
    layout += [(j, k) for j in (1, 2, 3) for k in (1, 2, 3)]
    return tuple(layout)


# FLAT_LAYOUT[n] = (p, q): flat slot n holds e_p^1 e_q^2
FLAT_LAYOUT = _flat_layout()
_GRID_TO_FLAT = {pq: n for n, pq in enumerate(FLAT_LAYOUT)}

BASIS_LABELS = tuple(
    "1" if (p, q) == (0, 0)
    else f"Iσ{p}¹" if q == 0
    else f"Iσ{q}²" if p == 0
    else f"Iσ{p}¹Iσ{q}²"
    for p, q in FLAT_LAYOUT
)


def _build_product_table() -> np.ndarray:
    even = list(EVEN_INDICES)
    # 4x4x4 table of the even subalgebra {1, Iσ1, Iσ2, Iσ3} of G3
    single = ga3.PRODUCT_TABLE[np.ix_(even, even, even)]
    table = np.zeros((16, 16, 16))
    for a, (p, q) in enumerate(FLAT_LAYOUT):
        for b, (r, s) in enumerate(FLAT_LAYOUT):
            for c, (t, u) in enumerate(FLAT_LAYOUT):
                table[a, b, c] = single[p, r, t] * single[q, s, u]
    return table


PRODUCT_TABLE = _build_product_table()

_SINGLE_REVERSE = np.array([1.0, -1.0, -1.0, -1.0])
REVERSE_SIGNS = np.array([_SINGLE_REVERSE[p] * _SINGLE_REVERSE[q] for p, q in FLAT_LAYOUT])

# <e_n e_n>; every cross term has zero scalar part
METRIC = np.array([PRODUCT_TABLE[n, n, 0] for n in range(16)])


class TwoParticleMV:
    """Immutable element of the 16-dimensional two-particle algebra."""

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Optional[Iterable[float]] = None):
        values = np.zeros(16) if coefficients is None else np.array(coefficients, dtype=float)
        if values.shape != (16,):
            raise UsageError(f"TwoParticleMV needs 16 coefficients, got shape {values.shape}")
        values.setflags(write=False)
        self._coefficients = values

    @classmethod
    def basis(cls, p: int, q: int) -> "TwoParticleMV":
        """e_p^1 e_q^2 with e_0 = 1, e_k = Iσ_k."""
        values = np.zeros(16)
        values[_GRID_TO_FLAT[(p, q)]] = 1.0
        return cls(values)

    @property
    def coefficients(self) -> np.ndarray:
        return self._coefficients

    @property
    def scalar_part(self) -> float:
        return float(self._coefficients[0])

    def coefficient(self, p: int, q: int) -> float:
        return float(self._coefficients[_GRID_TO_FLAT[(p, q)]])

    def as_grid(self) -> np.ndarray:
        """4x4 array M[p, q]."""
        grid = np.zeros((4, 4))
        for n, (p, q) in enumerate(FLAT_LAYOUT):
            grid[p, q] = self._coefficients[n]
        return grid

    def reverse(self) -> "TwoParticleMV":
        return TwoParticleMV(self._coefficients * REVERSE_SIGNS)

    def isclose(self, other: "TwoParticleMV", atol: float = Config.PRODUCT_TOLERANCE) -> bool:
        return bool(np.allclose(self._coefficients, other._coefficients, rtol=0.0, atol=atol))

    def projection_error(self) -> float:
        """||psi E - psi||_inf."""
        return float(np.max(np.abs((self * CORRELATOR)._coefficients - self._coefficients)))

    def is_projected(self, atol: float = Config.PROJECTION_TOLERANCE) -> bool:
        return self.projection_error() < atol

    def __add__(self, other):
        if not isinstance(other, TwoParticleMV):
            return NotImplemented
        return TwoParticleMV(self._coefficients + other._coefficients)

    def __sub__(self, other):
        if not isinstance(other, TwoParticleMV):
            return NotImplemented
        return TwoParticleMV(self._coefficients - other._coefficients)

    def __neg__(self):
        return TwoParticleMV(-self._coefficients)

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return TwoParticleMV(self._coefficients * float(other))
        if isinstance(other, TwoParticleMV):
            return geometric_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return TwoParticleMV(self._coefficients * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return TwoParticleMV(self._coefficients / float(other))
        return NotImplemented

    def __invert__(self):
        return self.reverse()

    def __eq__(self, other):
        if not isinstance(other, TwoParticleMV):
            return NotImplemented
        return bool(np.array_equal(self._coefficients, other._coefficients))

    __hash__ = None

    def __repr__(self):
        terms = [
            f"{value:+.6g}{'' if label == '1' else label}"
            for value, label in zip(self._coefficients, BASIS_LABELS)
            if value != 0.0
        ]
        return f"TwoParticleMV({' '.join(terms) if terms else '0'})"


def geometric_product(a: TwoParticleMV, b: TwoParticleMV) -> TwoParticleMV:
    left = np.tensordot(a.coefficients, PRODUCT_TABLE, axes=1)
    return TwoParticleMV(b.coefficients @ left)


def scalar_product(a: TwoParticleMV, b: TwoParticleMV) -> float:
    """<ab>."""
    return float(np.sum(a.coefficients * b.coefficients * METRIC))


def _product(*factors: TwoParticleMV) -> TwoParticleMV:
    result = factors[0]
    for factor in factors[1:]:
        result = geometric_product(result, factor)
    return result


def _even_coefficients(x: EvenElement) -> np.ndarray:
    if isinstance(x, Spinor1):
        return x.coefficients
    if isinstance(x, ga3.Multivector3):
        return Spinor1.from_multivector(x).coefficients
    raise UsageError(f"Cannot embed {type(x).__name__} into a particle space")


def _check_particle(particle: int) -> None:
    if particle not in (1, 2):
        raise UsageError(f"Particle label must be 1 or 2, got {particle!r}")


def embed(x: EvenElement, particle: int) -> TwoParticleMV:
    """Lifts an even element of G3 into particle space 1 or 2."""
    _check_particle(particle)
    a = _even_coefficients(x)
    values = np.zeros(16)
    for k in range(4):
        slot = (k, 0) if particle == 1 else (0, k)
        values[_GRID_TO_FLAT[slot]] = a[k]
    return TwoParticleMV(values)


ONE = TwoParticleMV.basis(0, 0)
CORRELATOR = TwoParticleMV(0.5 * (ONE.coefficients - TwoParticleMV.basis(3, 3).coefficients))
COMPLEX_STRUCTURE = TwoParticleMV(0.5 * (TwoParticleMV.basis(3, 0).coefficients + TwoParticleMV.basis(0, 3).coefficients))


def correlator() -> TwoParticleMV:
    """E = (1 - Iσ3^1 Iσ3^2)/2."""
    return CORRELATOR


def complex_structure() -> TwoParticleMV:
    """J = (Iσ3^1 + Iσ3^2)/2."""
    return COMPLEX_STRUCTURE


def phase_factor(chi: float) -> TwoParticleMV:
    """exp(J chi) E = cos(chi) E + sin(chi) J."""
    return CORRELATOR * math.cos(chi) + COMPLEX_STRUCTURE * math.sin(chi)


def _bit_one_factor() -> np.ndarray:
    # |1> <-> -Iσ2
    return np.array([0.0, 0.0, -1.0, 0.0])


def _build_complex_embedding() -> np.ndarray:
    """16x8 real matrix taking (Re c00, Im c00, Re c01, ..., Im c11) to psi."""
    factors = (np.array([1.0, 0.0, 0.0, 0.0]), _bit_one_factor())
    columns = []
    for i in (0, 1):
        for j in (0, 1):
            local = embed(Spinor1.from_coefficients(factors[i]), 1) * embed(Spinor1.from_coefficients(factors[j]), 2)
            columns.append((local * CORRELATOR).coefficients)
            columns.append((local * COMPLEX_STRUCTURE).coefficients)
    return np.column_stack(columns)


COMPLEX_EMBEDDING = _build_complex_embedding()
_COMPLEX_EXTRACTION = np.linalg.pinv(COMPLEX_EMBEDDING)


def product_state(psi: EvenElement, phi: EvenElement) -> TwoParticleMV:
    """|psi, phi>  <->  psi^1 phi^2 E."""
    return _product(embed(psi, 1), embed(phi, 2), CORRELATOR)


def from_complex4(c00: complex, c01: complex, c10: complex, c11: complex) -> TwoParticleMV:
    """sum_ij c_ij |i, j>, with |i, j> <-> b_i^1 b_j^2 E and b_0 = 1, b_1 = -Iσ2."""
    amplitudes = np.array([c00, c01, c10, c11], dtype=complex)
    interleaved = np.column_stack([amplitudes.real, amplitudes.imag]).ravel()
    return TwoParticleMV(COMPLEX_EMBEDDING @ interleaved)


def require_projected(psi: TwoParticleMV) -> None:
    error = psi.projection_error()
    if error >= Config.PROJECTION_TOLERANCE:
        raise DomainError(f"State is not E-projected (||psi E - psi|| = {error:.3e})")


def to_complex4(psi: TwoParticleMV) -> np.ndarray:
    """Amplitudes (c00, c01, c10, c11) as a complex array."""
    require_projected(psi)
    interleaved = _COMPLEX_EXTRACTION @ psi.coefficients
    return interleaved[0::2] + 1j * interleaved[1::2]


def _reproject(psi: TwoParticleMV, source: TwoParticleMV) -> TwoParticleMV:
    """Pulls drifted results back onto E and restores the norm of `source`."""
    if psi.projection_error() <= Config.REPROJECTION_THRESHOLD:
        return psi
    logger.debug("Re-projecting two-particle state onto E")
    projected = psi * CORRELATOR
    current = norm_squared(projected)
    if current > 0.0:
        projected = projected * math.sqrt(norm_squared(source) / current)
    return projected


def _check_axis(k: int) -> None:
    if k not in (1, 2, 3):
        raise UsageError(f"Pauli axis must be 1, 2 or 3, got {k!r}")


def local_bivector(particle: int, k: int) -> TwoParticleMV:
    """Iσ_k in particle space 1 or 2."""
    _check_particle(particle)
    _check_axis(k)
    return TwoParticleMV.basis(k, 0) if particle == 1 else TwoParticleMV.basis(0, k)


def apply_pauli2(particle: int, k: int, psi: TwoParticleMV) -> TwoParticleMV:
    """sigma_k acting on one particle  <->  -Iσ_k^a psi J."""
    bivector = local_bivector(particle, k)
    require_projected(psi)
    return _reproject(-_product(bivector, psi, COMPLEX_STRUCTURE), psi)


def apply_i2(psi: TwoParticleMV) -> TwoParticleMV:
    """i |psi>  <->  psi J."""
    require_projected(psi)
    return _reproject(psi * COMPLEX_STRUCTURE, psi)


def inner_product2(psi: TwoParticleMV, phi: TwoParticleMV) -> complex:
    """<psi|phi> = 2<phi E psi~> - 2<phi J psi~> i."""
    psi_rev = psi.reverse()
    real = 2.0 * scalar_product(phi * CORRELATOR, psi_rev)
    imag = -2.0 * scalar_product(phi * COMPLEX_STRUCTURE, psi_rev)
    return complex(real, imag)


def norm_squared(psi: TwoParticleMV) -> float:
    return inner_product2(psi, psi).real


def require_normalized(psi: TwoParticleMV) -> None:
    require_projected(psi)
    deviation = abs(norm_squared(psi) - 1.0)
    if deviation >= Config.NORMALIZATION_TOLERANCE:
        raise DomainError(f"State is not normalized (|<psi|psi> - 1| = {deviation:.3e})")


def observable_E(psi: TwoParticleMV) -> TwoParticleMV:
    """psi E psi~."""
    require_projected(psi)
    return _product(psi, CORRELATOR, psi.reverse())


def observable_J(psi: TwoParticleMV) -> TwoParticleMV:
    """psi J psi~; only single-space bivector parts survive."""
    require_projected(psi)
    return _product(psi, COMPLEX_STRUCTURE, psi.reverse())


@dataclass(frozen=True)
class ObservablePair:
    """(psi E psi~, psi J psi~), or a weighted sum of such pairs for a mixed state."""

    e_part: TwoParticleMV
    j_part: TwoParticleMV


def observables(psi: TwoParticleMV) -> ObservablePair:
    return ObservablePair(observable_E(psi), observable_J(psi))


def mix_observables(weighted: Iterable[Tuple[float, ObservablePair]]) -> ObservablePair:
    """Convex combination of pure-state observable pairs."""
    weighted = list(weighted)
    if not weighted:
        raise UsageError("mix_observables needs at least one (weight, pair) entry")
    weights = np.array([w for w, _ in weighted], dtype=float)
    if np.any(weights < 0.0):
        raise UsageError("Mixture weights must be non-negative")
    if abs(weights.sum() - 1.0) >= Config.NORMALIZATION_TOLERANCE:
        raise UsageError(f"Mixture weights must sum to 1, got {weights.sum():.12g}")
    e_part = TwoParticleMV(sum(w * pair.e_part.coefficients for w, pair in weighted))
    j_part = TwoParticleMV(sum(w * pair.j_part.coefficients for w, pair in weighted))
    return ObservablePair(e_part, j_part)


def coefficients_from_observables(pair: ObservablePair) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Density-matrix coefficients (a, b, c) of
    rho = (I⊗I + a_k σ_k⊗I + b_k I⊗σ_k + c_jk σ_j⊗σ_k) / 4.
    """
    # <Iσ_k Iσ_k> = -1 and <(Iσ_j^1 Iσ_k^2)^2> = +1, so the scalar products reduce to coefficients
    j_grid = pair.j_part.as_grid()
    e_grid = pair.e_part.as_grid()
    return 2.0 * j_grid[1:, 0], 2.0 * j_grid[0, 1:], -2.0 * e_grid[1:, 1:]


def density_coefficients(psi: TwoParticleMV) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    require_normalized(psi)
    return coefficients_from_observables(observables(psi))


def reduced_polarization(psi: TwoParticleMV, particle: int) -> np.ndarray:
    """P_k = -2 (Iσ_k^a) . (psi J psi~), the Bloch vector of one particle's reduced state."""
    _check_particle(particle)
    require_normalized(psi)
    j_part = observable_J(psi)
    if particle == 1:
        return np.array([2.0 * j_part.coefficient(k, 0) for k in (1, 2, 3)])
    return np.array([2.0 * j_part.coefficient(0, k) for k in (1, 2, 3)])


def overlap_probability(psi: TwoParticleMV, phi: TwoParticleMV) -> float:
    """|<psi|phi>|^2 = <(psi E psi~)(phi E phi~)> - <(psi J psi~)(phi J phi~)>."""
    require_normalized(psi)
    require_normalized(phi)
    first, second = observables(psi), observables(phi)
    return scalar_product(first.e_part, second.e_part) - scalar_product(first.j_part, second.j_part)


def singlet() -> TwoParticleMV:
    """(|01> - |10>)/sqrt(2)  <->  (Iσ2^1 - Iσ2^2) E / sqrt(2)."""
    half = 1.0 / math.sqrt(2.0)
    return from_complex4(0.0, half, -half, 0.0)


def local_rotation(psi: TwoParticleMV, r: EvenElement, s: EvenElement) -> TwoParticleMV:
    """R^1 S^2 psi."""
    return _product(embed(r, 1), embed(s, 2), psi)


def from_rotor_form(rho: float, chi: float, alpha: float, r: EvenElement, s: EvenElement) -> TwoParticleMV:
    """rho^(1/2) R^1 S^2 (cos(alpha/2) + sin(alpha/2) Iσ2^1 Iσ2^2) exp(J chi) E."""
    if rho < 0.0:
        raise UsageError(f"rho must be non-negative, got {rho}")
    entangler = ONE * math.cos(alpha / 2.0) + TwoParticleMV.basis(2, 2) * math.sin(alpha / 2.0)
    return _product(embed(r, 1), embed(s, 2), entangler, phase_factor(chi)) * math.sqrt(rho)


def spin_correlation(psi: TwoParticleMV, a: Sequence[float], b: Sequence[float]) -> float:
    """<(a.sigma) ⊗ (b.sigma)> = a_j c_jk b_k for unit 3-vectors a, b."""
    a, b = _unit_vector(a), _unit_vector(b)
    _, _, c = density_coefficients(psi)
    return float(a @ c @ b)


def chsh_value(psi: TwoParticleMV, a: Sequence[float], a_prime: Sequence[float],
               b: Sequence[float], b_prime: Sequence[float]) -> float:
    """E(a,b) - E(a,b') + E(a',b) + E(a',b')."""
    _, _, c = density_coefficients(psi)
    a, a_prime, b, b_prime = (_unit_vector(v) for v in (a, a_prime, b, b_prime))
    return float(a @ c @ b - a @ c @ b_prime + a_prime @ c @ b + a_prime @ c @ b_prime)


def _unit_vector(v: Sequence[float]) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise UsageError(f"Measurement direction must have 3 components, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) >= Config.NORMALIZATION_TOLERANCE:
        raise UsageError("Measurement direction must be a unit vector")
    return v
