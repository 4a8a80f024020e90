"""Exact symmetry analysis of weighted homogeneous model hypersurfaces Im w = P(z, conj z).

Errors raise CrsymError; ``err.args`` is ``(message, kind)``.
"""

from ._core import (
    SCHEMA_VERSION,
    CrsymError,
    Embedding,
    Report,
    analyze,
    infer_weights,
    lemtub_coefficients,
    parse_polynomial,
    report_from_json,
)

__all__ = [
    "SCHEMA_VERSION",
    "CrsymError",
    "Embedding",
    "Report",
    "analyze",
    "infer_weights",
    "lemtub_coefficients",
    "parse_polynomial",
    "report_from_json",
]
