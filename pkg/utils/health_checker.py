"""
Health Checker for the Geometric Algebra Qubit Engine
Runs the algebraic identities and a few oracle spot checks
"""

import sys
import math
import logging
from datetime import datetime
from typing import Callable, Dict, Optional

import numpy as np

from config import Config
from engine import ga3, msta2, oracle, schmidt

logger = logging.getLogger(__name__)

# fixed so that repeated health checks are comparable
SPOT_CHECK_SEED = 20240101


class HealthChecker:
    """Self-checks for the numerical kernel"""

    def __init__(self, services: Optional[Dict] = None):
        self.services = services or {}
        self._checks: Dict[str, Callable[[], float]] = {
            'correlator_idempotent': self._correlator_idempotent,
            'complex_structure_square': self._complex_structure_square,
            'complex_structure_absorbs_correlator': self._complex_structure_absorbs_correlator,
            'pseudoscalar_central': self._pseudoscalar_central,
            'singlet_observable_J': self._singlet_observable_j,
            'singlet_correlations': self._singlet_correlations,
            'oracle_density_coefficients': self._oracle_density_coefficients,
            'oracle_schmidt_coefficients': self._oracle_schmidt_coefficients,
        }

    def get_service_status(self) -> Dict:
        """Get basic service status for API responses"""
        return {
            'analysis_service': 'ready' if self.services.get('analysis') else 'unavailable',
        }

    def run_checks(self) -> Dict:
        """Runs every identity check; each reports its residual against CHAIN_TOLERANCE."""
        logger.info("🔍 Running engine self-checks...")
        results = {}
        for name, check in self._checks.items():
            try:
                residual = float(check())
                healthy = residual < Config.CHAIN_TOLERANCE
                results[name] = {'healthy': healthy, 'residual': residual}
                if not healthy:
                    logger.warning(f"⚠️ Self-check {name} residual {residual:.3e}")
            except Exception as e:
                logger.error(f"❌ Self-check {name} failed: {e}")
                results[name] = {'healthy': False, 'error': str(e)}
        return results

    def get_comprehensive_health(self) -> Dict:
        """Get comprehensive health check for detailed monitoring"""
        try:
            health_data = {
                'status': 'healthy',
                'timestamp': datetime.now().isoformat(),
                'python_version': sys.version.split()[0],
                'services': self.get_service_status(),
                'configuration': {
                    'valid': Config.validate_config(),
                    'tolerances': Config.tolerances(),
                },
                'checks': self.run_checks(),
            }

            issues = [name for name, status in health_data['checks'].items() if not status['healthy']]
            if issues or not health_data['configuration']['valid']:
                health_data['status'] = 'degraded'
                health_data['issues'] = issues

            return health_data

        except Exception as e:
            logger.error(f"Health check failed: {e}")
            return {
                'status': 'error',
                'error': str(e),
                'timestamp': datetime.now().isoformat()
            }

    # --- identity checks, each returns a residual ---

    @staticmethod
    def _correlator_idempotent() -> float:
        e = msta2.correlator()
        return float(np.max(np.abs((e * e - e).coefficients)))

    @staticmethod
    def _complex_structure_square() -> float:
        e, j = msta2.correlator(), msta2.complex_structure()
        return float(np.max(np.abs((j * j + e).coefficients)))

    @staticmethod
    def _complex_structure_absorbs_correlator() -> float:
        e, j = msta2.correlator(), msta2.complex_structure()
        return float(max(np.max(np.abs((j * e - j).coefficients)), np.max(np.abs((e * j - j).coefficients))))

    @staticmethod
    def _pseudoscalar_central() -> float:
        residual = 0.0
        for k in range(8):
            element = ga3.Multivector3.basis(k)
            commutator = ga3.PSEUDOSCALAR * element - element * ga3.PSEUDOSCALAR
            residual = max(residual, float(np.max(np.abs(commutator.coefficients))))
        return residual

    @staticmethod
    def _singlet_observable_j() -> float:
        return float(np.max(np.abs(msta2.observable_J(msta2.singlet()).coefficients)))

    @staticmethod
    def _singlet_correlations() -> float:
        a, b, c = msta2.density_coefficients(msta2.singlet())
        return float(max(np.max(np.abs(a)), np.max(np.abs(b)), np.max(np.abs(c + np.eye(3)))))

    @staticmethod
    def _spot_state() -> np.ndarray:
        rng = np.random.default_rng(SPOT_CHECK_SEED)
        vector = rng.normal(size=4) + 1j * rng.normal(size=4)
        return vector / np.linalg.norm(vector)

    def _oracle_density_coefficients(self) -> float:
        amplitudes = self._spot_state()
        _, _, c = msta2.density_coefficients(msta2.from_complex4(*amplitudes))
        rho = oracle.density_matrix(amplitudes)
        expected = np.array([
            [oracle.expectation(rho, np.kron(oracle.pauli_matrix(j), oracle.pauli_matrix(k))).real for k in (1, 2, 3)]
            for j in (1, 2, 3)
        ])
        return float(np.max(np.abs(c - expected)))

    def _oracle_schmidt_coefficients(self) -> float:
        amplitudes = self._spot_state()
        form = schmidt.decompose(*amplitudes)
        m1, m2, _, _ = oracle.svd_2x2(amplitudes.reshape(2, 2))
        return float(max(abs(form.m1 - m1), abs(form.m2 - m2), abs(math.hypot(m1, m2) - 1.0)))
