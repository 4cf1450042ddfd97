"""Derived quantities behind the three-generator case analysis.

For a pairwise-coprime triple a < b < c the engine works with the residue
walk of c*b^{-1} mod a.  This module computes the base pair (k, ell), the
division data (q, r), the branch discriminant b*r vs c*q, the refinement
quantities (u, A, B, Lambda, Delta, LambdaP, DeltaP, mu), the set X of
residue classes whose minimum is a pure c-multiple, and the mirrored "dual"
quantities used by the optional cross-check formula.

Branch fields that do not apply are left as None.  Internal consistency is
asserted aggressively: an AssertionError here means an implementation bug,
never bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .arith import gcd, mod_inverse
from .errors import InputError, StructureViolation


@dataclass(frozen=True)
class Triple:
    """A validated generator set: sorted, distinct, each >= 2, overall gcd 1.

    Duplicate inputs collapse at ingestion (the Frobenius number depends only
    on the set), so `gens` can legitimately hold two values.
    """

    gens: tuple[int, ...]
    pairwise_coprime: bool

    @property
    def a(self) -> int:
        return self.gens[0]

    @property
    def b(self) -> int:
        return self.gens[1]

    @property
    def c(self) -> int:
        return self.gens[2]


class Case(str, Enum):
    SYLVESTER = "SYLVESTER"
    THM3 = "THM3"
    THM5A = "THM5A"
    THM5B = "THM5B"
    MU_BOUNDARY = "MU_BOUNDARY"


@dataclass(frozen=True)
class CaseLabel:
    """Principal case plus the two closed-form shortcut flags."""

    case: Case
    shortcut_LambdaGtDelta: bool = False
    shortcut_DeltaPGtLambdaP: bool = False


@dataclass(frozen=True)
class CaseParams:
    """Snapshot of every derived quantity for one pairwise-coprime triple.

    `lam` applies only when b*r < c*q; the block u..mu only when b*r > c*q.
    q and r are None only for SYLVESTER snapshots (ell <= k), where the
    walk-based analysis never runs.
    """

    a: int
    b: int
    c: int
    k: int
    ell: int
    q: Optional[int] = None
    r: Optional[int] = None
    lam: Optional[int] = None
    u: Optional[int] = None
    A: Optional[int] = None
    B: Optional[int] = None
    Lambda: Optional[int] = None
    Delta: Optional[int] = None
    LambdaP: Optional[int] = None
    DeltaP: Optional[int] = None
    mu: Optional[int] = None


@dataclass(frozen=True)
class XSetData:
    """The generated X-set with the indices the closed forms consume.

    xs[i] and ys[i] follow the generation order i = 0..mu (xs[0] == r).
    xhat is min(xs) at position m_index; w_index is the largest i with
    xs[i] + xhat in X, or None when no such i exists.  gap1/gap2 are the two
    values consecutive sorted elements may differ by.
    """

    xs: tuple[int, ...]
    ys: tuple[int, ...]
    xhat: int
    m_index: int
    w_index: Optional[int]
    x_mu: int
    gap1: int
    gap2: int


@dataclass(frozen=True)
class DualParams:
    """Mirrored quantities for the optional cross-check closed form."""

    qbar: int
    rbar: int
    ubar: int
    Abar: int
    Bbar: int
    mubar: int
    xs: tuple[int, ...]
    ys: tuple[int, ...]
    m_index: int
    w_index: int


def make_triple(x: int, y: int, z: int) -> Triple:
    """Validate and normalize three raw generators.

    Sorts, removes duplicates, rejects values < 2 and overall gcd != 1.
    A value of 1 is rejected here at the public boundary; reduction steps
    inside the package may still produce a 1, which callers map to g = -1.
    """
    raw = (x, y, z)
    if any(v < 1 for v in raw):
        raise InputError(f"generators must be positive, got {raw}")
    if any(v == 1 for v in raw):
        raise InputError(f"generator 1 makes every amount representable, got {raw}")
    gens = tuple(sorted(set(raw)))
    if len(gens) < 2:
        raise InputError(f"need at least two distinct generators, got {raw}")
    g = gcd(gens[0], gens[1])
    for v in gens[2:]:
        g = gcd(g, v)
    if g != 1:
        raise InputError(f"generators {raw} share the common divisor {g}")
    assert len(gens) >= 2
    if len(gens) == 3:
        pairwise = (
            gcd(gens[0], gens[1]) == 1
            and gcd(gens[0], gens[2]) == 1
            and gcd(gens[1], gens[2]) == 1
        )
    else:
        pairwise = True
    return Triple(gens=gens, pairwise_coprime=pairwise)


def compute_base(t: Triple) -> tuple[int, int]:
    """Return (k, ell): k = c // b and ell = c * b^{-1} mod a in {1..a-1}."""
    assert t.pairwise_coprime and len(t.gens) == 3
    a, b, c = t.a, t.b, t.c
    k = c // b
    ell = (c % a) * mod_inverse(b, a) % a
    assert 1 <= ell <= a - 1, (a, b, c, ell)
    assert (b * ell - c) % a == 0
    # Whenever ell > k the scaled representative drops below zero.
    if ell > k:
        assert c - b * ell < 0
    return k, ell


def compute_mu(A: int, B: int, r: int, s: int) -> int:
    """Smallest i >= 0 with (i+1)*B // A != (i+1)*s // r.

    All four arguments must be positive and B/A != s/r, which makes the
    search finite; i <= A*r is a hard safety bound, never reached in practice.
    """
    assert A > 0 and B > 0 and r > 0 and s > 0
    assert B * r != A * s, "floor sequences coincide forever"
    cap = A * r
    i = 0
    while True:
        if ((i + 1) * B) // A != ((i + 1) * s) // r:
            return i
        i += 1
        assert i <= cap, "mu search exceeded its termination bound"


def compute_case_params(t: Triple) -> CaseParams:
    """Derive every branch quantity for a pairwise-coprime triple with ell > k."""
    k, ell = compute_base(t)
    a, b, c = t.a, t.b, t.c
    if ell <= k:
        raise InputError(
            f"triple {t.gens} reduces to the two-generator case (ell={ell} <= k={k})"
        )
    assert gcd(a, ell) == 1
    al = a - ell
    q, r = divmod(a, al)
    assert q >= 1 and 0 <= r < al
    assert r % al == ell % al  # r and ell sit in the same class mod (a - ell)
    assert r <= ell
    assert b * r != c * q
    if b * r < c * q:
        assert r < ell and al <= ell
        lam = (c * q - b * r) // (b * al + c)
        assert lam >= 0
        return CaseParams(a=a, b=b, c=c, k=k, ell=ell, q=q, r=r, lam=lam)
    s = al - r
    assert r >= 1 and s >= 1
    u = al % r
    assert 1 <= u < r
    A = b * r - c * q
    B = b * s + c * (q + 1)
    assert A > 0 and B > 0 and A != B
    # s divides r only in the degenerate s = 1 case: gcd(r, s) = gcd(r, a-ell) = 1.
    assert gcd(r, s) == 1
    assert s == 1 or r % s != 0
    mu = compute_mu(A, B, r, s)
    return CaseParams(
        a=a, b=b, c=c, k=k, ell=ell, q=q, r=r,
        u=u, A=A, B=B,
        Lambda=r // s, Delta=A // B, LambdaP=s // r, DeltaP=B // A,
        mu=mu,
    )


def build_xset(p: CaseParams) -> XSetData:
    """Generate X = {x in 1..r : m(b*x) is a multiple of c} from the params.

    Applies only on the b*r > c*q branch.  When mu > r // u the closed form
    additionally relies on structural guarantees (m_index >= 1, w exists,
    x_mu is the least element above u, two-valued gap set); those are
    runtime-validated and raise StructureViolation instead of asserting, so
    the dispatcher can fall back and count the event.
    """
    assert p.mu is not None and p.u is not None and p.q is not None
    q, r, u, mu = p.q, p.r, p.u, p.mu
    s = p.a - p.ell - p.r
    xs = tuple(r * ((s * i) // r + 1) - s * i for i in range(mu + 1))
    ys = tuple(q * ((s * i) // r + 1) + (q + 1) * i for i in range(mu + 1))
    assert all(1 <= x <= r for x in xs)
    assert len(set(xs)) == len(xs), "generated X elements must be distinct"
    assert xs[0] == r
    xhat = min(xs)
    m_index = xs.index(xhat)
    x_mu = xs[-1]
    gap1 = xhat
    gap2 = xhat + u - x_mu
    elems = set(xs)
    w_index = next((i for i in range(mu, -1, -1) if xs[i] + xhat in elems), None)
    if mu > r // u:
        if w_index is None:
            raise StructureViolation(f"no index w with x_w + {xhat} in X for {xs}")
        if m_index == 0:
            raise StructureViolation(f"min(X) occurs at generation index 0 for {xs}")
        above = [x for x in xs if x > u]
        if not above or min(above) != x_mu:
            raise StructureViolation(f"x_mu={x_mu} is not the least X element above u={u}")
        srt = sorted(xs)
        gaps = {b2 - b1 for b1, b2 in zip(srt, srt[1:])}
        if not gaps <= {gap1, gap2}:
            raise StructureViolation(f"gap set {gaps} not within {{{gap1}, {gap2}}}")
    return XSetData(
        xs=xs, ys=ys, xhat=xhat, m_index=m_index, w_index=w_index,
        x_mu=x_mu, gap1=gap1, gap2=gap2,
    )


def classify(t: Triple) -> CaseLabel:
    """Name the closed-form case a pairwise-coprime triple falls into."""
    k, ell = compute_base(t)
    if ell <= k:
        return CaseLabel(Case.SYLVESTER)
    p = compute_case_params(t)
    if p.b * p.r < p.c * p.q:
        return CaseLabel(Case.THM3)
    flag_ld = p.Lambda > p.Delta
    flag_dl = p.DeltaP > p.LambdaP
    fru = p.r // p.u
    if p.mu < fru:
        return CaseLabel(Case.THM5A, flag_ld, flag_dl)
    if p.mu > fru:
        # Either shortcut inequality forces mu < r // u, so no flags here.
        assert not flag_ld and not flag_dl
        return CaseLabel(Case.THM5B)
    assert not flag_ld and not flag_dl
    return CaseLabel(Case.MU_BOUNDARY)


def compute_dual_params(t: Triple) -> Optional[DualParams]:
    """Mirrored quantities for the cross-check form, or None when any guard fails.

    The mirror swaps the roles of the two step directions: qbar = a // ell,
    rbar = a mod ell, and the analogues of (u, A, B, mu) built from them.
    The closed form is only trusted when every guard holds: positive ubar and
    Abar, mubar strictly above (ell - rbar) // ubar, distinct generated
    elements, m_index >= 1, and an existing w index.
    """
    k, ell = compute_base(t)
    if ell <= k:
        return None
    a, b, c = t.a, t.b, t.c
    qbar, rbar = divmod(a, ell)
    lr = ell - rbar
    assert lr >= 1
    if rbar == 0:
        return None
    ubar = rbar % lr
    if ubar == 0:
        return None
    Abar = b * lr - c * (qbar + 1)
    if Abar <= 0:
        return None
    Bbar = b * rbar + c * qbar
    # Same floor-disagreement search, with (r, s) -> (lr, rbar).
    mubar = compute_mu(Abar, Bbar, lr, rbar)
    if mubar <= lr // ubar:
        return None
    xs = tuple(lr * ((rbar * i) // lr + 1) - rbar * i for i in range(mubar + 1))
    ys = tuple((qbar + 1) * ((rbar * i) // lr + 1) + qbar * i for i in range(mubar + 1))
    if len(set(xs)) != len(xs):
        return None
    xhat = min(xs)
    m_index = xs.index(xhat)
    if m_index == 0:
        return None
    elems = set(xs)
    w_index = next((i for i in range(mubar, -1, -1) if xs[i] + xhat in elems), None)
    if w_index is None:
        return None
    return DualParams(
        qbar=qbar, rbar=rbar, ubar=ubar, Abar=Abar, Bbar=Bbar, mubar=mubar,
        xs=xs, ys=ys, m_index=m_index, w_index=w_index,
    )
