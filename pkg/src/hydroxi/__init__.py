"""Hydrogen pseudo-eigenfunctions built from Legendre functions of the second
kind, and their exact decomposition onto the bound-state basis."""

__version__ = "0.1.0"

from .exact import PiSquaredElement, Polynomial, pisq_eval
from .hydrogen import QuantumNumbers, SpatialPoint, eigenvalue, psi_eval, radial, theta_regular, xi, xi_eval
from .spectral import Amplitude, coefficient, decompose

__all__ = [
    "Amplitude",
    "PiSquaredElement",
    "Polynomial",
    "QuantumNumbers",
    "SpatialPoint",
    "coefficient",
    "decompose",
    "eigenvalue",
    "pisq_eval",
    "psi_eval",
    "radial",
    "theta_regular",
    "xi",
    "xi_eval",
]
