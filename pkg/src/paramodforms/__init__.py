"""Exact computations with Siegel paramodular forms of degree 2."""
__version__ = "0.1.0"
