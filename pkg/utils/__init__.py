"""
Utilities package for the Geometric Algebra Qubit Engine
"""

from .health_checker import HealthChecker
from .report_writer import curve_to_dict, render_curve, render_health, render_report

__all__ = ['HealthChecker', 'render_report', 'render_curve', 'render_health', 'curve_to_dict']
