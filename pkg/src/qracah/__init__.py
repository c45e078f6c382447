"""Exact construction and verification of q-Racah Leonard triples."""

from .fields import QQ, FieldElement, PrimeField, RationalField, parse_field
from .matrix import Matrix
from .params import AssumptionViolation, QRacahParams, sample_params, validate_params
from .triple import Basis, TripleRealization, build_triple

__all__ = [
    "QQ",
    "FieldElement",
    "PrimeField",
    "RationalField",
    "parse_field",
    "Matrix",
    "AssumptionViolation",
    "QRacahParams",
    "sample_params",
    "validate_params",
    "Basis",
    "TripleRealization",
    "build_triple",
]
