"""
Test the two-particle correlated algebra against the 4-dimensional matrix picture
"""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from config import Config
from engine import ga3, msta2, oracle, spinor1
from engine.exceptions import DomainError, UsageError
from engine.msta2 import TwoParticleMV
from engine.spinor1 import Spinor1

E = msta2.correlator()
J = msta2.complex_structure()
SQRT_HALF = 1.0 / math.sqrt(2.0)
SINGLET_AMPLITUDES = np.array([0.0, SQRT_HALF, -SQRT_HALF, 0.0])


def product_bivectors(j: int, k: int) -> TwoParticleMV:
    return TwoParticleMV.basis(j, k)


def rotor_form_frames(r: Spinor1, s: Spinor1):
    """A_k = R Iσ_k R~ in space 1 and B_k = S Iσ_k S~ in space 2."""
    basis = (ga3.I_SIGMA1, ga3.I_SIGMA2, ga3.I_SIGMA3)
    a = [msta2.embed(ga3.rotate(r.to_multivector(), b), 1) for b in basis]
    b = [msta2.embed(ga3.rotate(s.to_multivector(), b), 2) for b in basis]
    return a, b


# --- correlator and complex structure ---

def test_correlator_identities_are_exact():
    assert E * E == E
    assert J * J == -E
    assert J * E == J
    assert E * J == J


def test_bivectors_from_different_spaces_commute():
    for j in (1, 2, 3):
        for k in (1, 2, 3):
            a, b = msta2.local_bivector(1, j), msta2.local_bivector(2, k)
            assert a * b == b * a


def test_product_layout_is_row_major():
    assert msta2.local_bivector(1, 2) * msta2.local_bivector(2, 3) == TwoParticleMV.basis(2, 3)
    assert msta2.FLAT_LAYOUT[7 + 3 * (2 - 1) + (3 - 1)] == (2, 3)


def test_grid_accessors_follow_flat_layout(rng):
    values = rng.normal(size=16)
    psi = TwoParticleMV(values)
    grid = psi.as_grid()
    assert grid.shape == (4, 4)
    for n, (p, q) in enumerate(msta2.FLAT_LAYOUT):
        assert grid[p, q] == values[n]
        assert psi.coefficient(p, q) == values[n]


def test_associativity(rng):
    for _ in range(200):
        a, b, c = (TwoParticleMV(rng.normal(size=16)) for _ in range(3))
        assert_allclose(((a * b) * c).coefficients, (a * (b * c)).coefficients, atol=1e-12)


def test_phase_factor():
    assert msta2.phase_factor(0.0) == E
    assert msta2.phase_factor(math.pi / 2).isclose(J, atol=1e-16)


# --- states and the complex map ---

def test_product_state_examples():
    one, down = Spinor1(1.0), Spinor1(0.0, 0.0, -1.0, 0.0)
    assert msta2.product_state(one, one) == E
    assert msta2.product_state(one, down).isclose(-(msta2.local_bivector(2, 2) * E), atol=0.0)


def test_product_state_matches_kronecker(random_spinor):
    for _ in range(1_000):
        psi, phi = random_spinor(), random_spinor()
        state = msta2.product_state(psi, phi)
        assert state.is_projected()
        expected = np.kron(spinor1.to_complex(psi), spinor1.to_complex(phi))
        assert_allclose(msta2.to_complex4(state), expected, atol=1e-12)


def test_from_complex4_examples():
    assert msta2.from_complex4(1, 0, 0, 0) == E
    expected = (msta2.local_bivector(1, 2) - msta2.local_bivector(2, 2)) * E * SQRT_HALF
    assert msta2.from_complex4(*SINGLET_AMPLITUDES).isclose(expected, atol=1e-15)


def test_to_complex4_examples():
    assert_allclose(msta2.to_complex4(E), [1, 0, 0, 0], atol=1e-15)
    assert_allclose(msta2.to_complex4(msta2.singlet()), SINGLET_AMPLITUDES, atol=1e-15)


def test_complex4_round_trip(random_state):
    for _ in range(1_000):
        c = random_state()
        psi = msta2.from_complex4(*c)
        assert psi.projection_error() < 1e-13
        assert_allclose(msta2.to_complex4(psi), c, atol=1e-13)


def test_to_complex4_rejects_unprojected_state():
    with pytest.raises(DomainError):
        msta2.to_complex4(msta2.local_bivector(1, 1))


def test_unit_imaginary_is_consistent_across_spaces(random_state):
    for _ in range(1_000):
        psi = msta2.from_complex4(*random_state())
        left = psi * msta2.local_bivector(1, 3)
        right = psi * msta2.local_bivector(2, 3)
        assert_allclose(left.coefficients, right.coefficients, atol=1e-13)


# --- Pauli and i actions ---

def test_pauli2_examples():
    assert msta2.apply_pauli2(1, 3, E).isclose(E, atol=1e-15)
    assert_allclose(msta2.to_complex4(msta2.apply_pauli2(1, 1, E)), [0, 0, 1, 0], atol=1e-15)
    assert_allclose(msta2.to_complex4(msta2.apply_pauli2(2, 1, E)), [0, 1, 0, 0], atol=1e-15)


@pytest.mark.parametrize("particle", [1, 2])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_pauli2_matches_oracle(particle, k, random_state):
    for _ in range(1_000):
        c = random_state()
        psi = msta2.from_complex4(*c)
        result = msta2.apply_pauli2(particle, k, psi)
        assert result.is_projected()
        expected = oracle.apply_local(oracle.pauli_matrix(k), particle, c)
        assert_allclose(msta2.to_complex4(result), expected, atol=1e-12)
        assert msta2.apply_pauli2(particle, k, result).isclose(psi, atol=1e-12)


@pytest.mark.parametrize("particle, k", [(0, 1), (3, 1), (1, 0), (2, 4)])
def test_pauli2_rejects_bad_indices(particle, k):
    with pytest.raises(UsageError):
        msta2.apply_pauli2(particle, k, E)


def test_i2_examples_and_oracle(random_state):
    assert msta2.apply_i2(E) == J
    for _ in range(1_000):
        c = random_state()
        psi = msta2.from_complex4(*c)
        once = msta2.apply_i2(psi)
        assert_allclose(msta2.to_complex4(once), 1j * c, atol=1e-12)
        assert msta2.apply_i2(once).isclose(-psi, atol=1e-13)
        four = msta2.apply_i2(msta2.apply_i2(once))
        assert msta2.apply_i2(four).isclose(psi, atol=1e-13)


def test_reprojection_restores_source_norm(random_state):
    for _ in range(100):
        psi = msta2.from_complex4(*random_state())
        assert msta2._reproject(psi, psi) is psi
        drifted = psi * 1.001 + TwoParticleMV.basis(3, 3) * 1e-11
        assert drifted.projection_error() > Config.REPROJECTION_THRESHOLD
        repaired = msta2._reproject(drifted, psi)
        assert repaired.projection_error() < Config.REPROJECTION_THRESHOLD
        assert msta2.norm_squared(repaired) == pytest.approx(1.0, abs=1e-14)
        assert_allclose(msta2.to_complex4(repaired), msta2.to_complex4(psi), atol=1e-10)


# --- inner product ---

def test_inner_product2_examples():
    assert msta2.inner_product2(E, E) == pytest.approx(1.0)
    assert msta2.inner_product2(msta2.singlet(), msta2.singlet()) == pytest.approx(1.0, abs=1e-15)


def test_inner_product2_matches_oracle(random_state):
    for _ in range(1_000):
        c, d = random_state(), random_state()
        value = msta2.inner_product2(msta2.from_complex4(*c), msta2.from_complex4(*d))
        assert abs(value - oracle.inner(c, d)) < 1e-12


# --- observables ---

def test_observables_of_up_up():
    assert msta2.observable_E(E) == E
    assert msta2.observable_J(E) == J


def test_singlet_observables():
    singlet = msta2.singlet()
    expected_e = msta2.ONE + sum((product_bivectors(k, k) for k in (1, 2, 3)), TwoParticleMV())
    assert msta2.observable_E(singlet).isclose(expected_e * 0.5, atol=1e-14)
    assert np.max(np.abs(msta2.observable_J(singlet).coefficients)) < 1e-14


def test_observable_e_has_half_scalar_part(random_state):
    for _ in range(1_000):
        psi = msta2.from_complex4(*random_state())
        assert msta2.observable_E(psi).scalar_part == pytest.approx(0.5, abs=1e-13)


def test_observables_ignore_global_phase(random_state, rng):
    for _ in range(200):
        psi = msta2.from_complex4(*random_state())
        rephased = psi * msta2.phase_factor(float(rng.uniform(-math.pi, math.pi)))
        assert msta2.observable_E(rephased).isclose(msta2.observable_E(psi), atol=1e-12)
        assert msta2.observable_J(rephased).isclose(msta2.observable_J(psi), atol=1e-12)


def test_rotor_form_observable_expansions(random_rotor, rng):
    for _ in range(1_000):
        r, s = random_rotor(), random_rotor()
        alpha = float(rng.uniform(0.0, math.pi / 2))
        chi = float(rng.uniform(-math.pi, math.pi))
        psi = msta2.from_rotor_form(1.0, chi, alpha, r, s)
        a, b = rotor_form_frames(r, s)

        expected_e = (msta2.ONE - a[2] * b[2]) * 0.5 + (a[1] * b[1] - a[0] * b[0]) * (0.5 * math.sin(alpha))
        expected_j = (a[2] + b[2]) * (0.5 * math.cos(alpha))
        observable_e = msta2.observable_E(psi)
        assert_allclose(observable_e.coefficients, expected_e.coefficients, atol=1e-12)
        assert_allclose(msta2.observable_J(psi).coefficients, expected_j.coefficients, atol=1e-12)
        assert observable_e.scalar_part == pytest.approx(0.5, abs=1e-12)


def test_observable_j_bivector_length_is_half_cos_alpha(random_rotor, rng):
    for _ in range(100):
        alpha = float(rng.uniform(0.0, math.pi / 2))
        j_part = msta2.observable_J(msta2.from_rotor_form(1.0, 0.0, alpha, random_rotor(), random_rotor()))
        coefficients = j_part.coefficients
        assert np.linalg.norm(coefficients[1:4]) == pytest.approx(0.5 * math.cos(alpha), abs=1e-12)
        assert np.linalg.norm(coefficients[4:7]) == pytest.approx(0.5 * math.cos(alpha), abs=1e-12)
        assert abs(coefficients[0]) < 1e-12
        assert np.max(np.abs(coefficients[7:])) < 1e-12


def test_gauge_redundancy(random_rotor, rng):
    for _ in range(1_000):
        r, s = random_rotor(), random_rotor()
        beta = float(rng.uniform(-math.pi, math.pi))
        alpha = float(rng.uniform(0.0, math.pi / 2))
        chi = float(rng.uniform(-math.pi, math.pi))
        twist = Spinor1.from_multivector(ga3.exp_bivector(ga3.I_SIGMA3 * beta))
        untwist = Spinor1.from_multivector(ga3.exp_bivector(ga3.I_SIGMA3 * -beta))
        original = msta2.from_rotor_form(1.0, chi, alpha, r, s)
        regauged = msta2.from_rotor_form(1.0, chi, alpha, r * twist, s * untwist)
        assert_allclose(regauged.coefficients, original.coefficients, atol=1e-12)


# --- reduced states and density coefficients ---

def test_reduced_polarization_examples():
    assert_allclose(msta2.reduced_polarization(E, 1), [0, 0, 1], atol=1e-15)
    for particle in (1, 2):
        assert_allclose(msta2.reduced_polarization(msta2.singlet(), particle), [0, 0, 0], atol=1e-15)


def test_reduced_polarization_matches_partial_trace(random_state):
    for _ in range(10_000):
        c = random_state()
        psi = msta2.from_complex4(*c)
        rho = oracle.density_matrix(c)
        first, second = msta2.reduced_polarization(psi, 1), msta2.reduced_polarization(psi, 2)
        assert_allclose(first, oracle.bloch_vector(oracle.partial_trace(rho, 1)), atol=1e-11)
        assert_allclose(second, oracle.bloch_vector(oracle.partial_trace(rho, 2)), atol=1e-11)
        assert np.linalg.norm(first) == pytest.approx(np.linalg.norm(second), abs=1e-12)


def test_reduced_polarization_keeps_rotor_direction(random_rotor, rng):
    for _ in range(100):
        r, s = random_rotor(), random_rotor()
        alpha = float(rng.uniform(0.0, math.pi / 2 - 0.1))
        psi = msta2.from_rotor_form(1.0, 0.3, alpha, r, s)
        assert_allclose(msta2.reduced_polarization(psi, 1), math.cos(alpha) * spinor1.polarization_vector(r),
                        atol=1e-12)
        assert_allclose(msta2.reduced_polarization(psi, 2), math.cos(alpha) * spinor1.polarization_vector(s),
                        atol=1e-12)


def test_reduced_polarization_rejects_unnormalized_state():
    with pytest.raises(DomainError):
        msta2.reduced_polarization(E * 2.0, 1)


def test_density_coefficients_examples():
    a, b, c = msta2.density_coefficients(E)
    assert_allclose(a, [0, 0, 1], atol=1e-15)
    assert_allclose(b, [0, 0, 1], atol=1e-15)
    assert_allclose(c, np.diag([0.0, 0.0, 1.0]), atol=1e-15)

    a, b, c = msta2.density_coefficients(msta2.singlet())
    assert_allclose(a, 0.0, atol=1e-15)
    assert_allclose(b, 0.0, atol=1e-15)
    assert_allclose(c, -np.eye(3), atol=1e-14)


def test_density_coefficients_rebuild_oracle_density_matrix(random_state):
    paulis = [oracle.pauli_matrix(k) for k in (1, 2, 3)]
    identity = np.eye(2)
    for _ in range(10_000):
        amplitudes = random_state()
        a, b, c = msta2.density_coefficients(msta2.from_complex4(*amplitudes))
        rho = np.eye(4, dtype=complex)
        for j in range(3):
            rho += a[j] * np.kron(paulis[j], identity) + b[j] * np.kron(identity, paulis[j])
            for k in range(3):
                rho += c[j, k] * np.kron(paulis[j], paulis[k])
        assert_allclose(rho / 4.0, oracle.density_matrix(amplitudes), atol=1e-11)


def test_mixed_observables_give_mixed_density(random_state, rng):
    states = [random_state() for _ in range(3)]
    weights = rng.dirichlet(np.ones(3))
    pairs = [msta2.observables(msta2.from_complex4(*c)) for c in states]
    a, b, c = msta2.coefficients_from_observables(msta2.mix_observables(zip(weights, pairs)))

    rho = sum(w * oracle.density_matrix(s) for w, s in zip(weights, states))
    for j in (1, 2, 3):
        assert a[j - 1] == pytest.approx(oracle.expectation(rho, np.kron(oracle.pauli_matrix(j), np.eye(2))).real, abs=1e-12)
        for k in (1, 2, 3):
            expected = oracle.expectation(rho, np.kron(oracle.pauli_matrix(j), oracle.pauli_matrix(k))).real
            assert c[j - 1, k - 1] == pytest.approx(expected, abs=1e-12)


def test_mix_observables_rejects_bad_weights():
    pair = msta2.observables(E)
    with pytest.raises(UsageError):
        msta2.mix_observables([(0.5, pair)])
    with pytest.raises(UsageError):
        msta2.mix_observables([(1.5, pair), (-0.5, pair)])
    with pytest.raises(UsageError):
        msta2.mix_observables([])


# --- overlap ---

def test_overlap_examples():
    assert msta2.overlap_probability(E, E) == pytest.approx(1.0, abs=1e-15)


def test_overlap_matches_oracle(random_state):
    for _ in range(10_000):
        c, d = random_state(), random_state()
        psi, phi = msta2.from_complex4(*c), msta2.from_complex4(*d)
        value = msta2.overlap_probability(psi, phi)
        assert value == pytest.approx(oracle.overlap(c, d), abs=1e-11)
        assert value == pytest.approx(msta2.overlap_probability(phi, psi), abs=1e-13)


def test_overlap_of_separable_states_factorises(random_rotor):
    for _ in range(1_000):
        r, s, u, v = (random_rotor() for _ in range(4))
        psi, phi = msta2.product_state(r, s), msta2.product_state(u, v)
        first = 0.5 * (1.0 + spinor1.polarization_vector(r) @ spinor1.polarization_vector(u))
        second = 0.5 * (1.0 + spinor1.polarization_vector(s) @ spinor1.polarization_vector(v))
        assert msta2.overlap_probability(psi, phi) == pytest.approx(first * second, abs=1e-12)


def test_overlap_rejects_unnormalized_state():
    with pytest.raises(DomainError):
        msta2.overlap_probability(E, E * 0.5)


# --- singlet ---

def test_singlet_amplitudes_and_normalization():
    singlet = msta2.singlet()
    assert_allclose(msta2.to_complex4(singlet), SINGLET_AMPLITUDES, atol=1e-15)
    assert msta2.norm_squared(singlet) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("theta", np.linspace(0.0, math.pi, 13))
def test_singlet_joint_probability(theta):
    up = spinor1.spinor_theta_phi(0.0, 0.0)
    rotated = msta2.product_state(up, spinor1.spinor_theta_phi(theta, 0.0))
    assert msta2.overlap_probability(msta2.singlet(), rotated) == pytest.approx(0.25 * (1 - math.cos(theta)), abs=1e-12)


def test_singlet_spin_correlation_is_minus_cosine(rng):
    for _ in range(100):
        a, b = rng.normal(size=3), rng.normal(size=3)
        a, b = a / np.linalg.norm(a), b / np.linalg.norm(b)
        assert msta2.spin_correlation(msta2.singlet(), a, b) == pytest.approx(-a @ b, abs=1e-12)


def test_singlet_reaches_tsirelson_bound():
    z, x = np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])
    b = (z + x) / math.sqrt(2.0)
    b_prime = (x - z) / math.sqrt(2.0)
    value = msta2.chsh_value(msta2.singlet(), z, x, b, b_prime)
    assert abs(value) == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)


def test_product_states_obey_chsh_bound(random_rotor, rng):
    for _ in range(100):
        psi = msta2.product_state(random_rotor(), random_rotor())
        directions = [v / np.linalg.norm(v) for v in rng.normal(size=(4, 3))]
        assert abs(msta2.chsh_value(psi, *directions)) <= 2.0 + 1e-12


def test_spin_correlation_rejects_non_unit_direction():
    with pytest.raises(UsageError):
        msta2.spin_correlation(msta2.singlet(), [1.0, 1.0, 0.0], [0.0, 0.0, 1.0])


def test_local_rotation_preserves_overlap(random_state, random_rotor):
    for _ in range(100):
        psi, phi = msta2.from_complex4(*random_state()), msta2.from_complex4(*random_state())
        r, s = random_rotor(), random_rotor()
        before = msta2.overlap_probability(psi, phi)
        after = msta2.overlap_probability(msta2.local_rotation(psi, r, s), msta2.local_rotation(phi, r, s))
        assert after == pytest.approx(before, abs=1e-12)


def test_embed_rejects_bad_particle():
    with pytest.raises(UsageError):
        msta2.embed(Spinor1(1.0), 3)
