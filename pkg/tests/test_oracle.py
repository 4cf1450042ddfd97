"""Unit tests for the brute-force sieve and residue oracles."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frob3.errors import InputError, MemoryCapExceeded
from frob3.oracle import (
    frobenius_sieve,
    frobenius_sieve_values,
    residue_class_minima,
    sieve,
    xset_oracle,
)
from frob3.params import compute_case_params, make_triple

from _brute import dp_bits


def test_sieve_hand_tables():
    t = make_triple(3, 4, 5)
    table = sieve(t, 12)
    missing = [n for n in range(13) if not table.bits[n]]
    assert missing == [1, 2]

    t = make_triple(2, 3, 5)
    table = sieve(t, 6)
    assert [n for n in range(7) if not table.bits[n]] == [1]
    assert table.bits[0]


def test_frobenius_sieve_known_values():
    assert frobenius_sieve(make_triple(11, 15, 16)) == 51
    assert frobenius_sieve(make_triple(6, 10, 15)) == 29
    assert frobenius_sieve(make_triple(8, 9, 13)) == 28


def test_frobenius_sieve_values_accepts_raw_input():
    assert frobenius_sieve_values((9, 6, 4)) == 11
    assert frobenius_sieve_values((1, 2)) == -1
    assert frobenius_sieve_values((2, 3, 4)) == 1
    with pytest.raises(InputError):
        frobenius_sieve_values((4, 6, 8))


@given(st.permutations([6, 10, 15]))
def test_frobenius_sieve_permutation_invariant(perm):
    assert frobenius_sieve_values(tuple(perm)) == 29


def test_tail_is_fully_representable():
    for gens in [(3, 4, 5), (11, 15, 16), (4, 6, 9)]:
        t = make_triple(*gens)
        g = frobenius_sieve(t)
        bound = g + 2 * max(gens)
        table = sieve(t, bound)
        assert not table.bits[g]
        assert bool(np.all(table.bits[g + 1 :]))


@given(
    st.lists(st.integers(2, 40), min_size=1, max_size=3, unique=True),
    st.integers(0, 300),
)
@settings(max_examples=80, deadline=None)
def test_vectorized_fill_matches_literal_dp(gens, bound):
    # The cumulative-OR closure must equal the one-cell-at-a-time fill for
    # any generator set, coprime or not.
    from frob3.oracle import _closure_bits

    t_gens = tuple(sorted(gens))
    reference = dp_bits(t_gens, bound)
    got = _closure_bits(t_gens, bound)
    assert got.tolist() == reference


def test_residue_class_minima_known_table():
    t = make_triple(11, 15, 16)
    tab = residue_class_minima(t)
    assert tab[0] == 0
    assert tab[4] == 16 and tab[1] == 15
    assert max(tab) == 62  # g + a
    assert all(v <= 15 * 10 for v in tab)


def test_residue_class_minima_congruence():
    t = make_triple(7, 8, 11)
    tab = residue_class_minima(t)
    for x in range(7):
        assert tab[x] % 7 == (8 * x) % 7


def test_xset_oracle_known_sets():
    for gens, expect in [
        ((11, 15, 16), {4}),
        ((5, 7, 9), {2}),
        ((100, 101, 139), {12, 17, 29, 34, 39}),
    ]:
        t = make_triple(*gens)
        p = compute_case_params(t)
        assert xset_oracle(t, p) == expect


def test_memory_cap_is_enforced(monkeypatch):
    monkeypatch.setenv("FROB_MEM_CAP", "1000")
    with pytest.raises(MemoryCapExceeded):
        frobenius_sieve(make_triple(101, 102, 103))
    monkeypatch.setenv("FROB_MEM_CAP", "100000")
    assert frobenius_sieve(make_triple(101, 102, 103)) == 5049
