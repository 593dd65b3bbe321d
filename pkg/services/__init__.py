"""
Services package for the Geometric Algebra Qubit Engine
"""

from .analysis_service import StateAnalysisService

__all__ = ['StateAnalysisService']
