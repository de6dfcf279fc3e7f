"""Interpolating involutions on matrices with real spectrum via quiver varieties."""

from .errors import HKLabError, InputError, NumericalFailure
from .involution import RealFormSpec, alpha_classical, alpha_gl, beta_gl, theta_form
from .ks import dominance_leq, ks_table_gl, orbit_label, partitions
from .linalg import JordanType, SpectralData, Tolerances, eig_real_check, jordan_type
from .mv import BalanceReport, EncodedPoint, balance, decode, encode
from .quiver import STANDARD, Conventions, DimensionVector, QuiverRep, mu
from .springer import hecke_parameters, restricted_roots, semismall_check_gl
from .tracer import TracePath, trace, verify_ks_endpoint
from .verify import SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "HKLabError",
    "InputError",
    "NumericalFailure",
    "RealFormSpec",
    "alpha_classical",
    "alpha_gl",
    "beta_gl",
    "theta_form",
    "dominance_leq",
    "ks_table_gl",
    "orbit_label",
    "partitions",
    "JordanType",
    "SpectralData",
    "Tolerances",
    "eig_real_check",
    "jordan_type",
    "BalanceReport",
    "EncodedPoint",
    "balance",
    "decode",
    "encode",
    "STANDARD",
    "Conventions",
    "DimensionVector",
    "QuiverRep",
    "mu",
    "hecke_parameters",
    "restricted_roots",
    "semismall_check_gl",
    "TracePath",
    "trace",
    "verify_ks_endpoint",
    "SuiteConfig",
    "run_suite",
]
