"""Exact integer helpers: gcd and canonical modular inverses.

Python integers are arbitrary precision, so every operation in the package
is exact by construction; there is no overflow to guard against.  The CLI
still caps raw inputs at INPUT_CAP so single computations stay at desk scale.
"""

from __future__ import annotations

import math

from .errors import InputError, NonInvertibleError

# Enforced at argument-parse time by the CLI, not by the library.
INPUT_CAP = 2**31 - 1


def gcd(x: int, y: int) -> int:
    """Greatest common divisor of |x| and |y|; rejects gcd(0, 0)."""
    if x == 0 and y == 0:
        raise InputError("gcd(0, 0) is undefined")
    return math.gcd(x, y)


def mod_inverse(x: int, n: int) -> int:
    """Inverse of x modulo n, canonical in {1, ..., n-1}.

    Requires n >= 2 and gcd(x, n) == 1.
    """
    if n < 2:
        raise InputError(f"modulus must be >= 2, got {n}")
    try:
        return pow(x % n, -1, n)
    except ValueError:
        raise NonInvertibleError(f"{x} is not invertible modulo {n}") from None
