"""Exact q-expansions of Jacobi forms and modular differential equations."""

from .catalog import CATALOG, form
from .mde import GenusInput, discover, elliptic_genus, ledger, verify_equation
from .operators import heat, heat_k, iterate, serre
from .ring import basis, certify_zero, coordinates, vanishing_bound
from .series import QZSeries

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "GenusInput",
    "QZSeries",
    "basis",
    "certify_zero",
    "coordinates",
    "discover",
    "elliptic_genus",
    "form",
    "heat",
    "heat_k",
    "iterate",
    "ledger",
    "serre",
    "vanishing_bound",
    "verify_equation",
]
