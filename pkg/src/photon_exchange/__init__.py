"""
Photon Exchange Workbench

Numerical workbench for photon exchange interactions between two optical
modes and the collective (Dicke) modes of an atomic medium: exact
excitation-sector dynamics under Raman pulse sequences, loss-constrained
searches for nonlinear phase shifts, and the postselected linear-optics
experiments that mirror the loss requirement.
"""

__version__ = "0.1.0"
