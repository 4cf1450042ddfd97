"""Exact Frobenius numbers for three generators.

The public surface: validate generators with make_triple, compute with
frobenius (closed forms plus exact fallbacks), and cross-check with the
brute-force oracles in frob3.oracle.
"""

from .errors import (
    FrobeniusError,
    InputError,
    MemoryCapExceeded,
    NonInvertibleError,
    StructureViolation,
    WalkExhausted,
)
from .formulas import FrobeniusResult, frobenius, johnson_reduce, sylvester_g
from .oracle import frobenius_sieve, frobenius_sieve_values
from .params import Case, CaseLabel, CaseParams, Triple, XSetData, classify, make_triple

__version__ = "0.1.0"

__all__ = [
    "Case",
    "CaseLabel",
    "CaseParams",
    "FrobeniusError",
    "FrobeniusResult",
    "InputError",
    "MemoryCapExceeded",
    "NonInvertibleError",
    "StructureViolation",
    "Triple",
    "WalkExhausted",
    "XSetData",
    "__version__",
    "classify",
    "frobenius",
    "frobenius_sieve",
    "frobenius_sieve_values",
    "johnson_reduce",
    "make_triple",
    "sylvester_g",
]
