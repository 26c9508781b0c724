"""Finite commutative semiring workbench: ideals, congruences, kernels and
direct decomposability in products."""

from .core import (
    AxiomError,
    AxiomReport,
    FiniteSemiring,
    ProductSemiring,
    SemiringFormatError,
    builtin,
    direct_product,
    is_idempotent,
    is_unitary,
    load,
    parse,
    serialize,
    verify_axioms,
)

__version__ = "0.1.0"
