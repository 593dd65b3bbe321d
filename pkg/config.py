import os
import logging

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def _float_env(name: str, default: str) -> float:
    return float(os.getenv(name, default))


def _int_env(name: str, default: str) -> int:
    return int(os.getenv(name, default))


class Config:
    # --- General Application Settings ---
    APP_NAME = "Geometric Algebra Qubit Engine"
    APP_VERSION = "1.0.0"
    LOG_LEVEL = os.getenv('QGA_LOG_LEVEL', 'WARNING').upper()

    # --- Numerical Tolerances ---
    # Single geometric products vs. chains of a few dozen multiply-adds
    PRODUCT_TOLERANCE = _float_env('QGA_PRODUCT_TOLERANCE', '1e-12')
    CHAIN_TOLERANCE = _float_env('QGA_CHAIN_TOLERANCE', '1e-10')

    # Two-particle states: accept if ||psi E - psi||_inf is below this
    PROJECTION_TOLERANCE = _float_env('QGA_PROJECTION_TOLERANCE', '1e-10')
    # Drift above this after a Pauli or i action triggers a right-multiply by E
    REPROJECTION_THRESHOLD = _float_env('QGA_REPROJECTION_THRESHOLD', '1e-13')
    NORMALIZATION_TOLERANCE = _float_env('QGA_NORMALIZATION_TOLERANCE', '1e-10')

    # --- Schmidt Decomposition ---
    DEGENERACY_TOLERANCE = _float_env('QGA_DEGENERACY_TOLERANCE', '1e-9')
    SEPARABLE_TOLERANCE = _float_env('QGA_SEPARABLE_TOLERANCE', '1e-12')
    POLE_TOLERANCE = _float_env('QGA_POLE_TOLERANCE', '1e-15')
    ITERATIVE_TOLERANCE = _float_env('QGA_ITERATIVE_TOLERANCE', '1e-12')
    ITERATIVE_MAX_ITER = _int_env('QGA_ITERATIVE_MAX_ITER', '200')

    # --- Output ---
    SIGNIFICANT_DIGITS = _int_env('QGA_SIGNIFICANT_DIGITS', '12')
    BELL_CURVE_DEFAULT_SAMPLES = _int_env('QGA_BELL_CURVE_SAMPLES', '181')
    MAX_BELL_CURVE_SAMPLES = _int_env('QGA_MAX_BELL_CURVE_SAMPLES', '100001')

    # --- HTTP API / CORS Configuration ---
    CORS_ORIGINS = [
        origin.strip()
        for origin in os.getenv(
            'QGA_CORS_ORIGINS',
            'http://localhost:3000,http://localhost:8000'
        ).split(',')
        if origin.strip()
    ]

    @staticmethod
    def tolerances() -> dict:
        """Returns every numerical setting as a plain dict (used by /health and selfcheck)."""
        return {
            "product_tolerance": Config.PRODUCT_TOLERANCE,
            "chain_tolerance": Config.CHAIN_TOLERANCE,
            "projection_tolerance": Config.PROJECTION_TOLERANCE,
            "reprojection_threshold": Config.REPROJECTION_THRESHOLD,
            "normalization_tolerance": Config.NORMALIZATION_TOLERANCE,
            "degeneracy_tolerance": Config.DEGENERACY_TOLERANCE,
            "separable_tolerance": Config.SEPARABLE_TOLERANCE,
            "pole_tolerance": Config.POLE_TOLERANCE,
            "iterative_tolerance": Config.ITERATIVE_TOLERANCE,
            "iterative_max_iter": Config.ITERATIVE_MAX_ITER,
        }

    @staticmethod
    def log_config_status():
        """Logs the status of the numerical and output configuration for debugging."""
        logger.info(f"=== 🚀 {Config.APP_NAME} v{Config.APP_VERSION} CONFIGURATION ===")

        logger.info("--- NUMERICAL TOLERANCES ---")
        for name, value in Config.tolerances().items():
            logger.info(f"{name}: {value}")

        logger.info("--- OUTPUT ---")
        logger.info(f"Significant digits: {Config.SIGNIFICANT_DIGITS}")
        logger.info(f"Bell curve default samples: {Config.BELL_CURVE_DEFAULT_SAMPLES}")

        logger.info("--- HTTP API ---")
        logger.info(f"CORS origins: {Config.CORS_ORIGINS}")
        logger.info("===================================")

    @staticmethod
    def validate_config() -> bool:
        """
        Checks that tolerances are positive and consistently ordered.
        Returns False (after logging each problem) if anything is off.
        """
        logger.info("🔍 Running config validation...")
        ok = True

        for name, value in Config.tolerances().items():
            if value <= 0:
                logger.error(f"❌ {name} must be positive, got {value}")
                ok = False

        if Config.CHAIN_TOLERANCE < Config.PRODUCT_TOLERANCE:
            logger.error("❌ chain_tolerance is tighter than product_tolerance")
            ok = False

        if Config.SIGNIFICANT_DIGITS < 1:
            logger.error(f"❌ SIGNIFICANT_DIGITS must be >= 1, got {Config.SIGNIFICANT_DIGITS}")
            ok = False

        if Config.BELL_CURVE_DEFAULT_SAMPLES < 2:
            logger.warning("⚠️ BELL_CURVE_DEFAULT_SAMPLES below 2; bell-curve needs an explicit --samples")

        logger.info("✅ Config validation complete." if ok else "❌ Config validation failed.")
        return ok
