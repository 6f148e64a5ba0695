"""Pivoted QR factorizations, spectrum-revealing QR and CUR/CX decompositions."""

from ._core import (
    DimensionError,
    NumericalError,
    ParseError,
    REPORT_SCHEMA_VERSION,
    cur,
    cx,
    decaying_spectrum,
    kahan,
    kernel_matrix,
    load_matrix,
    min_oversampling,
    qrcp,
    rqrcp,
    save_matrix,
    srqr,
)

__all__ = [
    "DimensionError",
    "NumericalError",
    "ParseError",
    "REPORT_SCHEMA_VERSION",
    "cur",
    "cx",
    "decaying_spectrum",
    "kahan",
    "kernel_matrix",
    "load_matrix",
    "min_oversampling",
    "qrcp",
    "rqrcp",
    "save_matrix",
    "srqr",
]
