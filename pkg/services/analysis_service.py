import logging
import math
from typing import Optional

import numpy as np
import pandas as pd

from config import Config
from engine import msta2, oracle, schmidt, spinor1
from engine.exceptions import UsageError
from models import ReportRecord, StateSpec

logger = logging.getLogger(__name__)


def _max_abs(difference) -> float:
    return float(np.max(np.abs(np.asarray(difference))))


class StateAnalysisService:
    """
    Runs the decompose / observables / overlap / bell-curve computations for a
    StateSpec and packages them as ReportRecords. With xcheck=True each report
    also carries residuals against the matrix oracle.
    """

    def __init__(self):
        logger.info("StateAnalysisService initialized")

    def decompose(self, spec: StateSpec, xcheck: bool = False) -> ReportRecord:
        amplitudes = spec.resolved()
        form = schmidt.decompose(*amplitudes)
        rebuilt = schmidt.reconstruct(form)

        fields = form.as_dict()
        fields.update({
            "m1": form.m1,
            "m2": form.m2,
            "reconstruction_residual": _max_abs(rebuilt - amplitudes),
        })

        residuals = None
        if xcheck:
            m1, m2, _, _ = oracle.svd_2x2(amplitudes.reshape(2, 2))
            assembled = msta2.to_complex4(schmidt.assemble(form))
            residuals = {
                "m1": abs(form.m1 - m1),
                "m2": abs(form.m2 - m2),
                "rotor_form": _max_abs(assembled - amplitudes),
                "reconstruction": _max_abs(rebuilt - amplitudes),
            }

        logger.info(f"✅ decompose: alpha={form.alpha:.6f}, rho={form.rho:.6f}")
        return ReportRecord("decompose", spec.echo(), fields, residuals)

    def observables(self, spec: StateSpec, xcheck: bool = False) -> ReportRecord:
        amplitudes = spec.require_normalized()
        psi = msta2.from_complex4(*amplitudes)
        pair = msta2.observables(psi)
        a, b, c = msta2.coefficients_from_observables(pair)
        polarization = {particle: msta2.reduced_polarization(psi, particle) for particle in (1, 2)}

        fields = {
            "observable_E": pair.e_part.coefficients,
            "observable_J": pair.j_part.coefficients,
            "polarization_1": polarization[1],
            "polarization_2": polarization[2],
            "a": a,
            "b": b,
            "c": c,
        }

        residuals = None
        if xcheck:
            rho = oracle.density_matrix(amplitudes)
            residuals = {
                "polarization_1": _max_abs(polarization[1] - oracle.bloch_vector(oracle.partial_trace(rho, 1))),
                "polarization_2": _max_abs(polarization[2] - oracle.bloch_vector(oracle.partial_trace(rho, 2))),
                "density_matrix": _max_abs(self._density_from_coefficients(a, b, c) - rho),
            }

        logger.info("✅ observables computed")
        return ReportRecord("observables", spec.echo(), fields, residuals)

    def overlap(self, first: StateSpec, second: StateSpec, xcheck: bool = False) -> ReportRecord:
        psi_amplitudes = first.require_normalized()
        phi_amplitudes = second.require_normalized()
        psi = msta2.from_complex4(*psi_amplitudes)
        phi = msta2.from_complex4(*phi_amplitudes)
        probability = msta2.overlap_probability(psi, phi)

        residuals = None
        if xcheck:
            expected = oracle.overlap(psi_amplitudes, phi_amplitudes)
            residuals = {"oracle_probability": expected, "probability": abs(probability - expected)}

        inputs = {"state": first.echo(), "other_state": second.echo()}
        logger.info(f"✅ overlap: P={probability:.6f}")
        return ReportRecord("overlap", inputs, {"probability": probability}, residuals)

    def bell_curve(self, samples: Optional[int] = None, xcheck: bool = False) -> pd.DataFrame:
        """
        Singlet vs. product states |up> ⊗ |n(theta)>, theta uniform on [0, pi],
        computed through the overlap formula rather than the closed form.
        """
        samples = Config.BELL_CURVE_DEFAULT_SAMPLES if samples is None else samples
        if isinstance(samples, bool) or not isinstance(samples, int) or samples < 2:
            raise UsageError(f"samples must be an integer >= 2, got {samples!r}")

        singlet = msta2.singlet()
        up = spinor1.spinor_theta_phi(0.0, 0.0)
        thetas = np.array([math.pi * i / (samples - 1) for i in range(samples)])

        probabilities = []
        for theta in thetas:
            rotated = msta2.product_state(up, spinor1.spinor_theta_phi(theta, 0.0))
            probabilities.append(msta2.overlap_probability(singlet, rotated))
        frame = pd.DataFrame({"theta": thetas, "probability": probabilities})

        if xcheck:
            singlet_amplitudes = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)
            up_vector = np.array([1.0, 0.0])
            frame["oracle_probability"] = [
                oracle.overlap(singlet_amplitudes,
                               oracle.kron_state(up_vector, [math.cos(theta / 2.0), math.sin(theta / 2.0)]))
                for theta in thetas
            ]
            frame["residual"] = (frame["probability"] - frame["oracle_probability"]).abs()

        logger.info(f"✅ bell-curve: {samples} samples")
        return frame

    @staticmethod
    def _density_from_coefficients(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
        """(I⊗I + a_k σ_k⊗I + b_k I⊗σ_k + c_jk σ_j⊗σ_k) / 4, built on the oracle's matrices."""
        paulis = [oracle.pauli_matrix(k) for k in (1, 2, 3)]
        rho = np.kron(oracle.IDENTITY2, oracle.IDENTITY2).astype(complex)
        for k in range(3):
            rho = rho + a[k] * np.kron(paulis[k], oracle.IDENTITY2) + b[k] * np.kron(oracle.IDENTITY2, paulis[k])
            for j in range(3):
                rho = rho + c[k, j] * np.kron(paulis[k], paulis[j])
        return rho / 4.0
