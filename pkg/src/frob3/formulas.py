"""Closed forms and the dispatcher that picks between them.

The dispatcher first divides out shared pair divisors (recording each step
so the result can be unwound), then classifies the pairwise-coprime core and
evaluates the matching closed form.  The one boundary the closed forms do
not cover (mu == r // u) and any runtime-detected structural surprise fall
back to the residue-table evaluator, so the returned g is always exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import gcd
from .errors import InputError, StructureViolation
from .params import (
    Case,
    CaseLabel,
    CaseParams,
    Triple,
    XSetData,
    build_xset,
    compute_base,
    compute_case_params,
    compute_dual_params,
)
from .walk import brauer_shockley_g


@dataclass(frozen=True)
class ReductionStep:
    """One divide-out step: pair sharing d, the untouched third generator.

    Unwinding maps the child answer back: g_parent = d * g_child + offset.
    """

    pair: tuple[int, int]
    d: int
    third: int
    parent: tuple[int, ...]
    child: tuple[int, ...]

    @property
    def multiplier(self) -> int:
        return self.d

    @property
    def offset(self) -> int:
        return self.third * (self.d - 1)


@dataclass(frozen=True)
class FrobeniusResult:
    """Answer plus everything needed to explain how it was produced."""

    g: int
    case: CaseLabel
    params: Optional[CaseParams]
    xset: Optional[XSetData]
    reduction_trace: tuple[ReductionStep, ...]
    method: str  # "formula" | "brauer" | "sieve" | "lemma3"
    violation: Optional[str] = None


def sylvester_g(a: int, b: int) -> int:
    """Two-generator value a*b - a - b; -1 when either generator is 1."""
    if a < 1 or b < 1:
        raise InputError(f"generators must be positive, got ({a}, {b})")
    if gcd(a, b) != 1:
        raise InputError(f"({a}, {b}) share a divisor, no finite answer")
    return a * b - a - b


def johnson_reduce(t: Triple) -> tuple[tuple[int, ...], list[ReductionStep]]:
    """Divide out shared pair divisors until pairwise coprime or degenerate.

    Always picks the pair with the largest gcd first; resorting and collapsing
    duplicates after each step keeps the trace deterministic.  The returned
    core is a sorted distinct tuple that is pairwise coprime, or contains a 1,
    or has fewer than three values.
    """
    gens = t.gens
    trace: list[ReductionStep] = []
    while len(gens) == 3 and 1 not in gens:
        pairs = [(0, 1), (0, 2), (1, 2)]
        d, i, j = max((gcd(gens[i], gens[j]), i, j) for i, j in pairs)
        if d == 1:
            break
        third = gens[3 - i - j]
        child = tuple(sorted({gens[i] // d, gens[j] // d, third}))
        trace.append(
            ReductionStep(
                pair=(gens[i], gens[j]), d=d, third=third, parent=gens, child=child
            )
        )
        gens = child
    return gens, trace


def unwind_reduction(g: int, trace: list[ReductionStep]) -> int:
    """Map a core answer back through the recorded reduction steps."""
    for step in reversed(trace):
        g = step.multiplier * g + step.offset
    return g


def thm3_g(p: CaseParams) -> int:
    """Closed form for the b*r < c*q branch."""
    assert p.lam is not None and p.q is not None and p.r is not None
    a, b, c, ell, q, r, lam = p.a, p.b, p.c, p.ell, p.q, p.r, p.lam
    al = a - ell
    lhs = lam * (b * al + c)
    rhs = c * (q - 1) - b * r
    if lhs >= rhs:
        gpa = b * ((lam + 1) * al + r - 1)
    else:
        gpa = b * (al - 1) + c * (q - lam - 1)
    if lhs == rhs:
        # The two expressions must agree exactly on the boundary.
        assert gpa == b * (al - 1) + c * (q - lam - 1)
    return gpa - a


def _lead_term(p: CaseParams) -> int:
    """Common trailing summand c*q*((a - ell - 1) // r) of the b*r > c*q forms."""
    assert p.q is not None and p.r is not None
    return p.c * p.q * ((p.a - p.ell - 1) // p.r)


def thm5a_g(p: CaseParams) -> int:
    """Closed form for b*r > c*q with mu < r // u."""
    assert p.mu is not None and p.u is not None
    a, b, c, q, r, u, mu = p.a, p.b, p.c, p.q, p.r, p.u, p.mu
    assert mu < r // u
    s = a - p.ell - r
    t1 = b * (r - mu * u - 1)
    t2 = b * (u - 1) + c * (mu * (q + 1) + ((s * mu) // r + 1) * q)
    return max(t1, t2) + _lead_term(p) - a


def thm5a_shortcut_LambdaGtDelta(p: CaseParams) -> int:
    """Simplified form valid when Lambda > Delta (then mu = Delta)."""
    assert p.Lambda is not None and p.Delta is not None
    assert p.Lambda > p.Delta
    a, b, c, q, r = p.a, p.b, p.c, p.q, p.r
    s = a - p.ell - r
    t1 = b * (r - p.Delta * s - 1)
    t2 = b * (s - 1) + c * (p.Delta * (q + 1) + q)
    return max(t1, t2) + c * q - a


def thm5a_shortcut_DeltaPGtLambdaP(p: CaseParams) -> int:
    """Simplified form valid when DeltaP > LambdaP (then mu = 0, X = {r})."""
    assert p.DeltaP is not None and p.LambdaP is not None
    assert p.DeltaP > p.LambdaP
    a, b, c, q, r = p.a, p.b, p.c, p.q, p.r
    t1 = b * (r - 1)
    t2 = b * ((a - p.ell - 1) % r) + c * q
    return max(t1, t2) + _lead_term(p) - a


def thm5b_g(p: CaseParams, xd: XSetData) -> int:
    """Closed form for b*r > c*q with mu > r // u, built on the X-set."""
    assert p.mu is not None and p.u is not None
    assert p.mu > p.r // p.u
    assert xd.m_index >= 1 and xd.w_index is not None
    b, c = p.b, p.c
    m, w = xd.m_index, xd.w_index
    t1 = b * (xd.xs[m] - 1) + c * xd.ys[w]
    t2 = b * (xd.xs[m - 1] - xd.xs[-1] - 1) + c * xd.ys[-1]
    return max(t1, t2) + _lead_term(p) - p.a


def thm6b_g(t: Triple) -> Optional[int]:
    """Mirrored closed form, used purely as a cross-check.

    Returns None unless every applicability guard holds (see
    compute_dual_params); when it does return a value, that value must equal
    the dispatcher's answer.
    """
    d = compute_dual_params(t)
    if d is None:
        return None
    a, b, c = t.a, t.b, t.c
    _, ell = compute_base(t)
    lr = ell - d.rbar
    m, w = d.m_index, d.w_index
    t1 = b * (d.xs[m] - 1) + c * d.ys[w]
    t2 = b * (d.xs[m - 1] - d.xs[-1] - 1) + c * d.ys[-1]
    tail = c * ((d.qbar + 1) * ((ell - 1) // lr) - 2)
    return max(t1, t2) + tail - a


def frobenius(t: Triple) -> FrobeniusResult:
    """Exact g for any validated generator set, with full explanation data."""
    core, trace = johnson_reduce(t)
    params: Optional[CaseParams] = None
    xset: Optional[XSetData] = None
    method = "formula"
    violation: Optional[str] = None
    if 1 in core:
        # A unit generator makes everything representable.
        g_core = -1
        label = CaseLabel(Case.SYLVESTER)
    elif len(core) == 2:
        g_core = sylvester_g(core[0], core[1])
        label = CaseLabel(Case.SYLVESTER)
    else:
        tc = Triple(gens=core, pairwise_coprime=True)
        assert all(
            gcd(core[i], core[j]) == 1 for i in range(3) for j in range(i + 1, 3)
        )
        k, ell = compute_base(tc)
        if ell <= k:
            params = CaseParams(a=tc.a, b=tc.b, c=tc.c, k=k, ell=ell)
            g_core = sylvester_g(tc.a, tc.b)
            label = CaseLabel(Case.SYLVESTER)
        else:
            p = compute_case_params(tc)
            params = p
            if p.b * p.r < p.c * p.q:
                g_core = thm3_g(p)
                label = CaseLabel(Case.THM3)
            else:
                fru = p.r // p.u
                try:
                    xset = build_xset(p)
                except StructureViolation as exc:
                    xset = None
                    violation = str(exc)
                if p.mu < fru:
                    label = CaseLabel(
                        Case.THM5A, p.Lambda > p.Delta, p.DeltaP > p.LambdaP
                    )
                    g_core = thm5a_g(p)
                elif p.mu > fru:
                    label = CaseLabel(Case.THM5B)
                    if xset is not None:
                        g_core = thm5b_g(p, xset)
                    else:
                        # Structural guarantee failed: fall back, stay exact.
                        g_core = brauer_shockley_g(tc)
                        method = "brauer"
                else:
                    # The case analysis leaves mu == r // u open; use the
                    # residue table and surface the event via the label.
                    label = CaseLabel(Case.MU_BOUNDARY)
                    g_core = brauer_shockley_g(tc)
                    method = "brauer"
    assert (g_core == -1) == (1 in core)
    g = unwind_reduction(g_core, trace)
    assert g >= -1
    return FrobeniusResult(
        g=g,
        case=label,
        params=params,
        xset=xset,
        reduction_trace=tuple(trace),
        method=method,
        violation=violation,
    )
