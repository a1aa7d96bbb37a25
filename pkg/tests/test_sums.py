from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powersums import sums
from powersums.errors import BudgetExceeded, InvariantBreach
from powersums.exact import binomial
from powersums.sequences import g_value, sigma_poly, tuenter_poly
from powersums.sums import (
    CoefficientRow,
    SumCell,
    big_S,
    big_S_j1_special,
    c_row,
    c_row_oracle,
    multiset_count,
    s_sum,
    s_sum_j2_closed,
    tilde_S_oracle,
    verify_conjecture1,
    weakly_increasing_tuples,
)


def brute_tilde(k, j, n):
    e = 2 * k + 1
    return sum(
        sum((lam[i] - i * n) ** e for i in range(j)) for lam in combinations_with_replacement(range(1, j * n + 1), j)
    )


def test_c_row_examples():
    assert c_row(2, 2).values == (1, 2, 1)
    assert all(c_row(j, 1).values == (1,) for j in range(1, 8))
    assert c_row(2, 3).values == (1, 2, 3, 2, 1)


def test_c_row_oracle_examples():
    assert c_row_oracle(3, 2).values == (1, 3, 3, 1)
    assert c_row_oracle(1, 4).values == (1, 1, 1, 1)


@pytest.mark.parametrize("j", range(1, 9))
def test_recurrence_matches_expansion(j):
    for n in range(1, 9):
        assert c_row(j, n) == c_row_oracle(j, n)


@pytest.mark.parametrize("j", range(1, 11))
def test_row_invariants(j):
    for n in range(1, 11):
        c_row(j, n).check()


def test_row_invariant_breach_detected():
    with pytest.raises(InvariantBreach):
        CoefficientRow(2, 2, (1, 3, 1)).check()


def test_n2_rows_are_binomial():
    for j in range(1, 13):
        assert c_row(j, 2).values == tuple(binomial(j, r) for r in range(j + 1))


def test_s_sum_examples():
    assert s_sum(1, 1, 3) == 1 + 8 + 27 == 36
    assert s_sum(0, 2, 2) == 1 * 2 + 2 * 3 + 1 * 4 == 12
    for k in range(4):
        for j in range(1, 5):
            assert s_sum(k, j, 1) == j ** (2 * k + 1)


def test_s_sum_j1_is_power_sum():
    for k in range(5):
        for n in range(1, 10):
            assert s_sum(k, 1, n) == sum(q ** (2 * k + 1) for q in range(1, n + 1))


def test_j2_closed_form_examples():
    assert s_sum_j2_closed(0, 2) == 12
    assert s_sum_j2_closed(1, 2) == 8 + 2 * 27 + 64 == 126
    assert all(s_sum_j2_closed(k, 1) == 2 ** (2 * k + 1) for k in range(6))


def test_j2_closed_form_sweep():
    for k in range(7):
        for n in range(1, 11):
            assert s_sum(k, 2, n) == s_sum_j2_closed(k, n)


def test_big_S_examples():
    assert big_S(0, 2, 2) == 12 + binomial(6, 1) * 3 == 30
    # (t^2/4) P_1(2, 2) g_2 with t = 2
    assert big_S(1, 2, 1) == 1 * 2 * 6 == 12


def test_big_S_j1_is_sigma():
    for k in range(7):
        p = sigma_poly(2 * k + 1)
        for n in range(1, 13):
            assert big_S(k, 1, n) == p(n)


def test_n1_special_case():
    assert big_S_j1_special(1, 2) == 12
    for j in range(1, 8):
        assert big_S_j1_special(0, j) == g_value(j)
    for k in range(7):
        for j in range(1, 7):
            v = big_S_j1_special(k, j)
            assert v == big_S(k, j, 1)
            assert v == tuenter_poly(k)(j) * g_value(j)
            if k >= 1:
                prev = big_S_j1_special(k - 1, j - 1) if j >= 2 else 0
                assert v == j * j * big_S_j1_special(k - 1, j) - 2 * j * (2 * j - 1) * prev


def test_odometer_matches_itertools():
    for j in range(1, 5):
        for top in range(1, 7):
            got = list(weakly_increasing_tuples(j, top))
            assert got == list(combinations_with_replacement(range(1, top + 1), j))
            assert len(got) == multiset_count(j, top)


def test_tilde_examples():
    assert tilde_S_oracle(0, 2, 2) == 30
    # (1,1), (1,2), (2,2) with the second entry shifted by n = 1
    assert tilde_S_oracle(1, 2, 1) == (1 + 0) + (1 + 1) + (8 + 1) == 12
    for k in range(4):
        for n in range(1, 6):
            assert tilde_S_oracle(k, 1, n) == sum(q ** (2 * k + 1) for q in range(1, n + 1))


def test_tilde_against_independent_enumeration():
    for k in range(3):
        for j in range(1, 4):
            for n in range(1, 4):
                assert tilde_S_oracle(k, j, n) == brute_tilde(k, j, n)


@given(st.integers(-50, 50), st.integers(0, 6))
def test_negative_subscript_sign_rule(r, k):
    e = 2 * k + 1
    assert r**e == -((-r) ** e)


def test_j2_proof_identity():
    # S~_{k,2}(n) = s_{k,2}(n) + (2n+2) sum_{q<=n} x_q
    for k in range(5):
        for n in range(1, 7):
            extra = (2 * n + 2) * sum(q ** (2 * k + 1) for q in range(1, n + 1))
            assert tilde_S_oracle(k, 2, n) == s_sum(k, 2, n) + extra == big_S(k, 2, n)


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as info:
        tilde_S_oracle(0, 4, 5, budget=100)
    assert info.value.count == binomial(23, 4) == 8855


def test_invalid_cells():
    with pytest.raises(ValueError):
        SumCell(-1, 1, 1)
    with pytest.raises(ValueError):
        big_S(0, 0, 1)


def test_verify_conjecture1_small_grid():
    rep = verify_conjecture1(2, 3, 3)
    assert rep.verified == 3 * 3 * 3
    assert rep.counterexamples == [] and rep.skipped == []


def test_verify_conjecture1_j2_slice():
    rep = verify_conjecture1(5, 2, 6)
    assert rep.ok and rep.verified == 6 * 2 * 6


def test_verify_conjecture1_reports_skips_and_counterexamples(monkeypatch):
    rep = verify_conjecture1(0, 4, 5, budget=100)
    assert [4, 5] in [c[1:] for c in rep.skipped]
    assert rep.skipped == sorted(rep.skipped)

    real = sums.tilde_S_oracle

    def broken(k, j, n, budget):
        return real(k, j, n, budget) + (1 if (k, j, n) == (1, 2, 2) else 0)

    monkeypatch.setattr(sums, "tilde_S_oracle", broken)
    rep = verify_conjecture1(1, 2, 2)
    assert rep.counterexamples == [{"cell": [1, 2, 2], "lhs": str(big_S(1, 2, 2) + 1), "rhs": str(big_S(1, 2, 2))}]
    assert rep.to_json()["verified"] == rep.verified == 7
