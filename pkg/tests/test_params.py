"""Unit tests for triple validation, case parameters, and classification."""

from __future__ import annotations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from frob3.arith import gcd
from frob3.errors import InputError
from frob3.params import (
    Case,
    build_xset,
    classify,
    compute_base,
    compute_case_params,
    compute_mu,
    make_triple,
)


def test_make_triple_sorts():
    t = make_triple(16, 11, 15)
    assert t.gens == (11, 15, 16)
    assert (t.a, t.b, t.c) == (11, 15, 16)
    assert t.pairwise_coprime


def test_make_triple_flags_shared_divisors():
    t = make_triple(6, 10, 15)
    assert t.gens == (6, 10, 15)
    assert not t.pairwise_coprime


def test_make_triple_collapses_duplicates():
    assert make_triple(2, 3, 3).gens == (2, 3)


def test_make_triple_rejections():
    with pytest.raises(InputError):
        make_triple(4, 6, 8)  # gcd 2
    with pytest.raises(InputError):
        make_triple(1, 5, 9)  # unit generator at the top level
    with pytest.raises(InputError):
        make_triple(0, 3, 5)
    with pytest.raises(InputError):
        make_triple(3, 3, 3)  # a single distinct value


@given(st.permutations([11, 15, 16]))
def test_make_triple_order_invariant(perm):
    assert make_triple(*perm).gens == (11, 15, 16)


def test_compute_base_hand_cases():
    assert compute_base(make_triple(11, 15, 16)) == (1, 4)
    assert compute_base(make_triple(7, 9, 100)) == (11, 1)
    assert compute_base(make_triple(3, 4, 5)) == (1, 2)


def test_case_params_thm3_example():
    p = compute_case_params(make_triple(3, 4, 5))
    assert (p.q, p.r) == (3, 0)
    assert p.b * p.r < p.c * p.q
    assert p.lam == 1
    assert p.u is None and p.mu is None


def test_case_params_rejects_sylvester_branch():
    with pytest.raises(InputError):
        compute_case_params(make_triple(7, 9, 100))


def test_case_params_known_br_gt_cq_triple():
    p = compute_case_params(make_triple(11, 15, 16))
    assert (p.k, p.ell, p.q, p.r) == (1, 4, 1, 4)
    assert p.b * p.r == 60 and p.c * p.q == 16
    assert (p.u, p.A, p.B) == (3, 44, 77)
    assert (p.Lambda, p.Delta, p.LambdaP, p.DeltaP) == (1, 0, 0, 1)
    assert p.mu == 0
    assert p.lam is None


def test_case_params_large_known_triple():
    t = make_triple(100, 101, 139)
    # The derivation only makes sense if b*ell is congruent to c mod a.
    assert (101 * 39) % 100 == 139 % 100
    p = compute_case_params(t)
    assert (p.q, p.r) == (1, 39)
    assert p.a - p.ell - p.r == 22
    assert (p.u, p.A, p.B, p.mu) == (22, 3800, 2500, 4)


def test_compute_mu_frozen_values():
    assert compute_mu(3800, 2500, 39, 22) == 4
    assert compute_mu(44, 77, 4, 3) == 0
    assert compute_mu(5, 25, 2, 1) == 0


def test_compute_mu_is_first_disagreement():
    mu = compute_mu(3800, 2500, 39, 22)
    for i in range(mu):
        assert ((i + 1) * 2500) // 3800 == ((i + 1) * 22) // 39
    assert ((mu + 1) * 2500) // 3800 != ((mu + 1) * 22) // 39


def test_build_xset_known_triples():
    xd = build_xset(compute_case_params(make_triple(100, 101, 139)))
    assert xd.xs == (39, 17, 34, 12, 29)
    assert xd.ys == (1, 3, 6, 8, 11)
    assert (xd.xhat, xd.m_index, xd.w_index, xd.x_mu) == (12, 3, 1, 29)
    assert {xd.gap1, xd.gap2} == {12, 5}

    xd = build_xset(compute_case_params(make_triple(11, 15, 16)))
    assert (xd.xs, xd.ys) == ((4,), (1,))
    assert (xd.xhat, xd.m_index) == (4, 0)

    xd = build_xset(compute_case_params(make_triple(5, 7, 9)))
    assert (xd.xs, xd.ys) == ((2,), (1,))


def test_classify_hand_cases():
    assert classify(make_triple(7, 9, 100)).case is Case.SYLVESTER
    assert classify(make_triple(3, 4, 5)).case is Case.THM3

    label = classify(make_triple(11, 15, 16))
    assert label.case is Case.THM5A
    assert label.shortcut_LambdaGtDelta and label.shortcut_DeltaPGtLambdaP

    label = classify(make_triple(100, 101, 139))
    assert label.case is Case.THM5B
    assert not label.shortcut_LambdaGtDelta and not label.shortcut_DeltaPGtLambdaP


@st.composite
def pairwise_coprime_triple(draw):
    a = draw(st.integers(2, 60))
    b = draw(st.integers(a + 1, 120))
    assume(gcd(a, b) == 1)
    c = draw(st.integers(b + 1, 240))
    assume(gcd(a, c) == 1 and gcd(b, c) == 1)
    return make_triple(a, b, c)


@given(pairwise_coprime_triple())
def test_case_param_identities(t):
    k, ell = compute_base(t)
    assume(ell > k)
    p = compute_case_params(t)
    a, b, c = t.a, t.b, t.c
    assert a == p.q * (a - ell) + p.r
    assert p.r % (a - ell) == ell % (a - ell)
    assert p.r <= ell
    assert b * p.r != c * p.q
    if b * p.r < c * p.q:
        assert p.r < ell and a - ell <= ell
        assert p.lam is not None and p.lam >= 0
    else:
        s = a - ell - p.r
        assert p.r >= 1 and s >= 1
        assert 1 <= p.u < p.r
        assert p.A > 0 and p.B > 0 and p.A != p.B
        assert gcd(p.r, s) == 1
        assert s == 1 or p.r % s != 0


@given(pairwise_coprime_triple())
def test_xset_elements_well_formed(t):
    k, ell = compute_base(t)
    assume(ell > k)
    p = compute_case_params(t)
    assume(p.u is not None)
    xd = build_xset(p)
    assert xd.xs[0] == p.r
    assert len(set(xd.xs)) == len(xd.xs) == p.mu + 1
    assert all(1 <= x <= p.r for x in xd.xs)
    assert xd.xhat == min(xd.xs) == xd.xs[xd.m_index]
    assert xd.x_mu == xd.xs[-1]
    if p.mu < p.r // p.u:
        # Second closed form of the generated set in the small-mu regime.
        assert set(xd.xs) == {p.r - p.u * i for i in range(p.mu + 1)}
