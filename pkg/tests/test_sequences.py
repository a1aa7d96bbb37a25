from fractions import Fraction

import pytest

from powersums import published as pub
from powersums.exact import binomial, is_prime
from powersums.poly import UniPoly
from powersums.sequences import (
    FaulhaberRow,
    bernoulli,
    faulhaber_closed_form,
    faulhaber_coeff_determinant,
    faulhaber_row_jacobi,
    faulhaber_row_knuth,
    faulhaber_sum_poly,
    g_value,
    g_value_n,
    genocchi,
    n_param_count,
    sigma_poly,
    tuenter_poly,
    venn_row,
    venn_row_sum,
    venn_T,
)
from powersums.sums import big_S_j1_special


def akiyama_tanigawa(n):
    """B_0..B_n with B_1 = +1/2; independent of the binomial recursion."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(4) == Fraction(-1, 30)


def test_bernoulli_against_akiyama_tanigawa():
    ref = akiyama_tanigawa(30)
    ref[1] = -ref[1]
    assert [bernoulli(q) for q in range(31)] == ref


def test_genocchi_examples():
    assert genocchi(6) == -3
    assert genocchi(8) == 17
    assert genocchi(12) == 2073
    with pytest.raises(ValueError):
        genocchi(5)


def test_genocchi_are_integers():
    assert all(genocchi(2 * k).denominator == 1 for k in range(1, 16))


def test_sigma_examples():
    assert sigma_poly(1) == UniPoly([0, Fraction(1, 2), Fraction(1, 2)])
    assert sigma_poly(2)(3) == 1 + 4 + 9
    assert sigma_poly(13)(2) == 1 + 2**13 == 8193


@pytest.mark.parametrize("m", range(1, 11))
def test_sigma_against_direct_sums(m):
    p = sigma_poly(m)
    assert p.degree == m + 1 and p.coeff(0) == 0
    for n in range(1, 21):
        assert p(n) == sum(q**m for q in range(1, n + 1))


def test_tuenter_examples():
    assert tuenter_poly(3) == UniPoly([0, 3, -8, 6])
    assert tuenter_poly(7) == UniPoly([0, 38227, -161424, 282078, -263040, 139440, -40320, 5040])
    assert tuenter_poly(5).coeff(1) == 155 == -genocchi(10)


@pytest.mark.parametrize("k", sorted(pub.TUENTER))
def test_tuenter_matches_published_list(k):
    assert tuenter_poly(k) == UniPoly([0] + list(reversed(pub.TUENTER[k])))


@pytest.mark.parametrize("k", range(1, 11))
def test_tuenter_constant_terms_are_minus_genocchi(k):
    assert tuenter_poly(k).coeff(1) == -genocchi(2 * k)


@pytest.mark.parametrize("k", range(0, 7))
def test_tuenter_reproduces_n1_sums(k):
    # independent route: the binomial sum at n = 1
    for j in range(1, 8):
        assert tuenter_poly(k)(j) * g_value(j) == big_S_j1_special(k, j)


def test_tuenter_leading_coefficient_is_factorial():
    from math import factorial

    assert all(tuenter_poly(k).lead == factorial(k) for k in range(9))


def test_g_examples():
    assert g_value(5) == 630
    assert all(g_value_n(1, n) == 1 for n in range(1, 10))
    assert g_value_n(2, 3) == 2 * (2 * 3 + 1) == 14
    assert [g_value(j) for j in range(1, 10)] == pub.G_TABLE


def test_g_recurrence():
    for j in range(1, 21):
        assert g_value(j + 1) * j == 2 * (2 * j + 1) * g_value(j)


def test_g_is_central_binomial_multiple():
    # g_j = j * C(2j, j) / 2 for j >= 1
    assert all(2 * g_value(j) == j * binomial(2 * j, j) for j in range(1, 20))


def test_knuth_row_examples():
    for k in range(3, 13):
        assert faulhaber_row_knuth(k).A[1] == Fraction(-(k - 2) * k, 6)
    assert faulhaber_row_knuth(5).A[2] == 3
    assert faulhaber_closed_form(2, 5) == 3
    for k in range(1, 13):
        row = faulhaber_row_knuth(k)
        assert row.A[0] == 1
        if k >= 2:
            assert row.A[-1] == 0


def test_row5_gives_published_S41():
    # S_{4,1} = t^2/20 (2t^3 - 5t^2 + 6t - 3)
    assert faulhaber_sum_poly(4) == pub.FAULHABER[4].printed.to_poly()


def test_jacobi_examples():
    assert faulhaber_row_jacobi(2, faulhaber_row_knuth(3)).A == (1, 0)
    row5 = faulhaber_row_jacobi(5, faulhaber_row_knuth(6))
    assert row5.A == (1, Fraction(-5, 2), 3, Fraction(-3, 2), 0)
    with pytest.raises(ValueError):
        faulhaber_row_jacobi(5, faulhaber_row_knuth(5))


@pytest.mark.parametrize("k", range(1, 13))
def test_jacobi_agrees_with_knuth(k):
    assert faulhaber_row_jacobi(k, faulhaber_row_knuth(k + 1)) == faulhaber_row_knuth(k)


@pytest.mark.parametrize("q", range(1, 5))
def test_closed_forms(q):
    for k in range(q + 1, 13):
        assert faulhaber_closed_form(q, k) == faulhaber_row_knuth(k).A[q]


def test_faulhaber_row_length_invariant():
    from powersums.errors import InvariantBreach

    with pytest.raises(InvariantBreach):
        FaulhaberRow(3, (Fraction(1),))


def test_determinant_examples():
    assert faulhaber_coeff_determinant(4, 1).value == Fraction(-(4 - 2) * 4, 6)
    assert faulhaber_coeff_determinant(5, 2).value == 3


@pytest.mark.parametrize("k", range(2, 13))
def test_determinant_agrees_with_knuth(k):
    for q in range(1, k):
        res = faulhaber_coeff_determinant(k, q)
        assert res.agrees
        assert all(d["route"] == "as-printed" for d in res.discrepancies)


def test_as_printed_determinant_is_reported():
    res = faulhaber_coeff_determinant(5, 2)
    assert res.as_printed != res.knuth
    assert res.discrepancies == (
        {"k": 5, "q": 2, "route": "as-printed", "value": "0", "expected": "3"},
    )


def test_venn_examples():
    assert venn_row(7) == [1, 2, 3, 2, 1]
    assert venn_row_sum(5) == 3 == Fraction(2**4 - 1, 5)
    assert venn_T(9, 3) == Fraction(19, 3)


def test_venn_prime_rows():
    for p in range(5, 32, 2):
        if is_prime(p):
            row = venn_row(p)
            assert all(v.denominator == 1 for v in row)
            assert sum(row) == Fraction(2 ** (p - 1) - 1, p)


def test_param_count():
    assert n_param_count(7) == 12
    assert n_param_count(1) == 1
    assert n_param_count(9) == 18
    assert [n_param_count(k) for k in range(1, 10)] == pub.N_TABLE
