"""Ground-truth brute force, independent of the closed forms.

Everything here works from first principles: a representability table filled
from the generators, the Frobenius number as the largest unmarked index, and
residue-class minimums found by scanning b*n1 + c*n2 directly.  The only
shared machinery is the divide-out reduction, used to size the table bound;
the table fill itself never consults the case analysis.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .arith import gcd, mod_inverse
from .errors import InputError, MemoryCapExceeded
from .params import CaseParams, Triple
from .formulas import johnson_reduce, unwind_reduction

# Table entries allowed per sieve; override with FROB_MEM_CAP.
DEFAULT_MEM_CAP = 1 << 28


def _mem_cap() -> int:
    env = os.environ.get("FROB_MEM_CAP")
    return int(env) if env else DEFAULT_MEM_CAP


@dataclass
class RepresentabilityTable:
    """bits[n] is True iff n is a non-negative combination of the generators."""

    bound: int
    bits: np.ndarray


def _closure_bits(gens: Sequence[int], bound: int) -> np.ndarray:
    """Representability table for 0..bound over the given generators.

    Equivalent to the first-order fill bits[n] = bits[n-g1] or bits[n-g2] or
    ...: each pass closes the table under adding one generator, and closing
    under each generator in turn from {0} yields exactly the sums.
    """
    if bound < 0:
        raise InputError(f"bound must be non-negative, got {bound}")
    if bound + 1 > _mem_cap():
        raise MemoryCapExceeded(
            f"table of {bound + 1} entries exceeds cap {_mem_cap()}"
        )
    bits = np.zeros(bound + 1, dtype=bool)
    bits[0] = True
    for g in sorted(set(gens)):
        if g > bound:
            continue
        rows = -(-bits.size // g)
        padded = np.zeros(rows * g, dtype=bool)
        padded[: bits.size] = bits
        grid = padded.reshape(rows, g)
        np.logical_or.accumulate(grid, axis=0, out=grid)
        bits = grid.reshape(-1)[: bound + 1]
    return bits


def sieve(t: Triple, bound: int) -> RepresentabilityTable:
    """Representability table for the triple's generators up to bound."""
    return RepresentabilityTable(bound=bound, bits=_closure_bits(t.gens, bound))


def _reduced_bound(gens: tuple[int, ...]) -> int:
    """Safe inclusive bound on g: two-smallest product after full reduction,
    unwound back through the recorded steps."""
    if 1 in gens:
        return max(gens)
    if len(gens) == 2:
        return gens[0] * gens[1]
    t = Triple(gens=gens, pairwise_coprime=False)
    core, trace = johnson_reduce(t)
    if 1 in core:
        bound = 1
    else:
        bound = core[0] * core[1]
    return unwind_reduction(bound, trace)


def frobenius_sieve_values(values: Iterable[int]) -> int:
    """Exhaustive Frobenius number of any positive set with gcd 1.

    Accepts two or three distinct values after collapsing duplicates; a set
    containing 1 sieves to -1 (everything representable).
    """
    gens = tuple(sorted({int(v) for v in values}))
    if not gens or any(v < 1 for v in gens):
        raise InputError(f"generators must be positive, got {gens}")
    g = gens[0]
    for v in gens[1:]:
        g = gcd(g, v)
    if g != 1:
        raise InputError(f"generators {gens} share the common divisor {g}")
    bound = _reduced_bound(gens)
    bits = _closure_bits(gens, bound)
    gaps = np.flatnonzero(~bits)
    return int(gaps[-1]) if gaps.size else -1


def frobenius_sieve(t: Triple) -> int:
    """Exhaustive Frobenius number of a validated triple."""
    return frobenius_sieve_values(t.gens)


def residue_class_minima(t: Triple, bound: Optional[int] = None) -> list[int]:
    """m(b*x) for every multiplier x in 0..a-1 by direct enumeration.

    Scans all b*n1 + c*n2 <= bound (default b*a, which exceeds every class
    minimum since m(b*x) <= b*(a-1)) and keeps the least value per class.
    The class index is recovered as x = value * b^{-1} mod a.
    """
    assert t.pairwise_coprime and len(t.gens) == 3
    a, b, c = t.a, t.b, t.c
    if bound is None:
        bound = b * a
    assert bound >= b * (a - 1)
    n1 = np.arange(bound // b + 1, dtype=np.int64)
    n2 = np.arange(bound // c + 1, dtype=np.int64)
    if n1.size * n2.size > _mem_cap():
        raise MemoryCapExceeded(
            f"scan grid of {n1.size * n2.size} entries exceeds cap {_mem_cap()}"
        )
    vals = (b * n1)[:, None] + (c * n2)[None, :]
    flat = vals[vals <= bound]
    binv = mod_inverse(b, a)
    classes = (flat % a) * binv % a
    best = np.full(a, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(best, classes, flat)
    out = [int(v) for v in best]
    assert all(v <= b * (a - 1) for v in out)
    assert out[0] == 0
    return out


def xset_oracle(t: Triple, p: CaseParams) -> set[int]:
    """X = {x in 1..r : m(b*x) divisible by c}, straight from the definition.

    Uses the scan bound b*r + c*a, comfortably above every class minimum.
    """
    assert p.mu is not None, "X is only defined on the b*r > c*q branch"
    assert p.r is not None
    minima = residue_class_minima(t, bound=p.b * p.r + p.c * p.a)
    return {x for x in range(1, p.r + 1) if minima[x] % p.c == 0}


__all__ = [
    "DEFAULT_MEM_CAP",
    "RepresentabilityTable",
    "frobenius_sieve",
    "frobenius_sieve_values",
    "residue_class_minima",
    "sieve",
    "xset_oracle",
]
