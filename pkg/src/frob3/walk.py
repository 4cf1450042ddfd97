"""The residue walk: v-values, local minima, and residue-class minimums.

Fix a pairwise-coprime triple a < b < c with ell > k.  Listing the values
v(x, y) = b*x + c*y along x -> (x + a - ell) mod a, y -> y + 1 enumerates one
residue class of b*x0 mod a; the class minimum m(b*x0) is the least value on
that walk, and g(a, b, c) = max_x m(b*x) - a.  This module implements the
walk primitives, the corrected jump from one local minimum to the next, the
two-branch recursion that evaluates m(b*x) in O(chain) time, and the two
slow-but-direct evaluators built on those facts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, WalkExhausted
from .params import CaseParams, Triple, compute_base, compute_case_params


@dataclass(frozen=True)
class VState:
    """One walk state: coordinates (x, y) and its value v = b*x + c*y."""

    x: int
    y: int
    v: int


@dataclass(frozen=True)
class NextMinDelta:
    """Jump from one local minimum to the next: offset rho and deltas."""

    rho: int
    dx: int
    dy: int


@dataclass(frozen=True)
class WalkTrace:
    """A full walk from one start class, with per-state local-minimum flags."""

    start: int
    states: tuple[VState, ...]
    is_min: tuple[bool, ...]


def v_value(b: int, c: int, x: int, y: int) -> int:
    """The walk value b*x + c*y for non-negative coordinates."""
    assert x >= 0 and y >= 0
    return b * x + c * y


def make_state(t: Triple, x: int, y: int) -> VState:
    return VState(x, y, v_value(t.b, t.c, x, y))


def is_local_min(t: Triple, ell: int, state: VState) -> bool:
    """Local-minimum test against the walk neighbours of (x, y).

    Interior states compare against both neighbours; y = 0 only against the
    successor, y = a-1 only against the predecessor.
    """
    a, b, c = t.a, t.b, t.c
    x, y = state.x, state.y
    assert 0 <= x < a and 0 <= y < a
    assert state.v == b * x + c * y
    succ = b * ((x - ell) % a) + c * (y + 1)
    pred = b * ((x + ell) % a) + c * (y - 1)
    if y == 0:
        return state.v <= succ
    if y == a - 1:
        return state.v <= pred
    return state.v <= min(succ, pred)


def next_local_min(
    t: Triple, ell: int, from_xy: tuple[int, int]
) -> tuple[NextMinDelta, VState]:
    """Jump directly to the next local minimum on the same walk.

    The start must be a local minimum with x < min(a - ell, ell); starts at
    or above that bound are rejected rather than normalized so that callers
    cannot silently leave the regime where the jump formula is valid.
    Raises WalkExhausted when the landing row would pass y = a - 1.
    """
    a = t.a
    x, y = from_xy
    lim = min(a - ell, ell)
    if not 0 <= x < lim:
        raise InputError(f"start x={x} outside [0, {lim}) for a={a}, ell={ell}")
    start = make_state(t, x, y)
    assert is_local_min(t, ell, start), "start must be a local minimum"
    al = a - ell
    rho = (x - ell) % al
    dx = (rho % ell) - x
    # One raising run of ceil((ell - x) / (a - ell)) steps, then the drops.
    dy = -((x - ell) // al) + (ell + rho) // ell
    if y + dy > a - 1:
        raise WalkExhausted(f"next minimum at y={y + dy} exceeds row {a - 1}")
    nxt = make_state(t, x + dx, y + dy)
    assert 0 <= nxt.x < lim
    assert is_local_min(t, ell, nxt)
    return NextMinDelta(rho=rho, dx=dx, dy=dy), nxt


def lemma7_step(x: int, p: CaseParams) -> tuple[int, int]:
    """One step (x', y') of the residue-minimum recursion for m(b*x).

    m(b*x) = min(b*x, m(b*x') + c*y'), split on where x sits mod (a - ell).
    """
    assert p.q is not None and p.r is not None
    a, ell, q, r = p.a, p.ell, p.q, p.r
    assert 1 <= x <= a - 1
    al = a - ell
    off, s0 = divmod(x, al)
    if s0 <= r - 1:
        return s0 - r + al, q - off + 1
    return s0 - r, q - off


def m_of(x: int, p: CaseParams) -> int:
    """Class minimum m(b*x) for one multiplier x in {0..a-1}."""
    assert 0 <= x <= p.a - 1
    if x == 0:
        return 0
    b, c = p.b, p.c
    best = b * x
    shift = 0
    cur = x
    steps = 0
    while cur != 0:
        nx, ny = lemma7_step(cur, p)
        assert ny >= 1
        shift += c * ny
        cur = nx
        best = min(best, b * cur + shift)
        steps += 1
        assert steps <= p.a, "recursion chain failed to reach class 0"
    assert (best - b * x) % p.a == 0
    return best


def m_table(p: CaseParams) -> list[int]:
    """All class minimums m(b*x) for x = 0..a-1, sharing chain work."""
    a, b, c = p.a, p.b, p.c
    tab: list[int | None] = [None] * a
    tab[0] = 0
    for x0 in range(1, a):
        if tab[x0] is not None:
            continue
        chain: list[tuple[int, int, int]] = []
        x = x0
        while tab[x] is None:
            nx, ny = lemma7_step(x, p)
            chain.append((x, nx, ny))
            x = nx
        for xx, nx, ny in reversed(chain):
            prev = tab[nx]
            assert prev is not None
            tab[xx] = min(b * xx, prev + c * ny)
    assert all(v is not None for v in tab)
    return tab  # type: ignore[return-value]


def brauer_shockley_g(t: Triple) -> int:
    """g via the residue-table identity: max over classes of m(b*x), minus a.

    Works on any pairwise-coprime triple with ell > k, including the boundary
    case the closed forms do not cover.
    """
    p = compute_case_params(t)
    tab = m_table(p)
    return max(tab[1:]) - t.a


def lemma3_g(t: Triple) -> int:
    """g by direct minimax over all walks; quadratic in a, used as an oracle."""
    k, ell = compute_base(t)
    if ell <= k:
        raise InputError(f"triple {t.gens} has ell={ell} <= k={k}")
    a, b, c = t.a, t.b, t.c
    al = a - ell
    best = 0
    for x in range(1, a):
        mn = min(b * ((x + al * tt) % a) + c * tt for tt in range(a))
        if mn > best:
            best = mn
    return best - a


def trace_walk(t: Triple, ell: int, start: int) -> WalkTrace:
    """Enumerate the walk from one start class for t = 0..a-1 with min flags."""
    a = t.a
    if not 1 <= start <= a - 1:
        raise InputError(f"start class must lie in 1..{a - 1}, got {start}")
    states = []
    x = start
    for y in range(a):
        states.append(make_state(t, x, y))
        x = (x + a - ell) % a
    flags = tuple(is_local_min(t, ell, s) for s in states)
    return WalkTrace(start=start, states=tuple(states), is_min=flags)
