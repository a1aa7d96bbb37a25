from fractions import Fraction

import pytest

from powersums import lab
from powersums import published as pub
from powersums.errors import ConjectureViolation
from powersums.poly import RationalCoefficient, UniPoly
from powersums.sequences import tuenter_poly
from powersums.lab import (
    alpha_closed_form,
    bracket_satisfies_sums,
    bracket_terms,
    extract_venn,
    fit_structure,
    genocchi_evaluation_check,
    recover_P,
    signed_coefficients,
    venn_prime_link,
    verify_conjecture43,
)


def test_recover_small_cases():
    assert recover_P(0).at_t(6) == UniPoly([1])
    assert recover_P(1).at_t(6) == UniPoly([0, 1])
    # sum q^5 = t^2 (2t - 1)/12, so P_2(t, 1) = (4t - 2)/(3t)
    p2 = recover_P(2)
    for t in (2, 6, 12):
        assert p2.at_t(t)(1) == Fraction(4 * t - 2, 3 * t)
    assert p2.poly.coeff(1) == RationalCoefficient(UniPoly([Fraction(-2, 3), Fraction(-2, 3)]), 1)


@pytest.mark.parametrize("k", range(0, 8))
def test_recover_at_n1_is_tuenter(k):
    assert recover_P(k).at_t(2) == tuenter_poly(k)


def test_recover_rejects_bad_arguments():
    with pytest.raises(ValueError):
        recover_P(-1)
    with pytest.raises(ValueError):
        recover_P(2, extra_validation=1)


def test_recover_reports_validation_cells():
    rp = recover_P(2, extra_validation=3)
    assert (6, 1) in rp.validation and (1, 5) in rp.validation


def test_recover_raises_on_corrupted_sum(monkeypatch):
    real = lab.big_S
    monkeypatch.setattr(lab, "big_S", lambda k, j, n: real(k, j, n) + (1 if (j, n) == (5, 2) else 0))
    with pytest.raises(ConjectureViolation) as info:
        recover_P(2)
    assert info.value.conjecture == "main"
    assert info.value.witness["cell"] == [2, 5, 2]


def test_signed_coefficients():
    s = signed_coefficients(recover_P(2))
    assert s[0] == RationalCoefficient(UniPoly([2]), 0)
    assert s[1] == RationalCoefficient(UniPoly([Fraction(2, 3), Fraction(2, 3)]), 1)
    s3 = signed_coefficients(recover_P(3))
    assert s3[1](2) == 8 and s3[2](2) == 3


def test_fit_structure_examples():
    f = fit_structure(2, 1, signed_coefficients(recover_P(2))[1])
    assert (f.m, f.l, f.alphas) == (0, 1, (Fraction(2, 3),))
    f = fit_structure(4, 3, signed_coefficients(recover_P(4))[3])
    assert (f.m, f.l, f.alphas) == (1, 0, (Fraction(24, 5), Fraction(8, 5)))


def test_alpha_examples():
    f = fit_structure(3, 2, signed_coefficients(recover_P(3))[2])
    assert f.alphas == (Fraction(4, 3),)
    assert alpha_closed_form("alpha_{k,2,0}", 3) == Fraction(4, 3)
    assert alpha_closed_form("alpha_{k,3,1}", 4) == Fraction(8, 5)
    assert alpha_closed_form("alpha_{k,3,0}", 4) == Fraction(24, 5)
    assert alpha_closed_form("alpha_{k,1,0}", 2) == Fraction(2, 3)


def test_fit_structure_violations():
    with pytest.raises(ConjectureViolation) as info:
        fit_structure(3, 1, RationalCoefficient(UniPoly([1, 1]), 2))
    assert info.value.conjecture == "4.2" and "exponent" in info.value.clause
    with pytest.raises(ConjectureViolation) as info:
        fit_structure(3, 1, RationalCoefficient(UniPoly([-1, -1]), 1))
    assert "non-positive" in info.value.clause
    with pytest.raises(ConjectureViolation):
        # t^2 + 1 over t^2 is outside span{(t+1)^2}
        fit_structure(3, 2, RationalCoefficient(UniPoly([1, 0, 1]), 2))
    with pytest.raises(ValueError):
        fit_structure(3, 3, RationalCoefficient(UniPoly([1]), 3))


def test_extract_venn_examples():
    two = extract_venn(2, signed_coefficients(recover_P(2))[1])
    assert (two.c, two.v) == (Fraction(2, 3), UniPoly([1, 1, 1]))
    three = extract_venn(3, signed_coefficients(recover_P(3))[2])
    assert (three.c, three.v) == (Fraction(4, 3), UniPoly([1, 2, 3, 2, 1]))
    four = extract_venn(4, signed_coefficients(recover_P(4))[3])
    assert four.v == UniPoly([1, 3, Fraction(19, 3), Fraction(23, 3), Fraction(19, 3), 3, 1])


def test_extract_venn_violation():
    with pytest.raises(ConjectureViolation):
        extract_venn(2, RationalCoefficient(UniPoly([1, 2]), 1))


def test_venn_prime_link():
    link = venn_prime_link(extract_venn(3, signed_coefficients(recover_P(3))[2]))
    assert link["prime"] and link["coefficientsMatch"] and link["rowSumMatch"]
    assert link["vAt1"] == link["fermatQuotient"] == "9"
    assert venn_prime_link(extract_venn(4, signed_coefficients(recover_P(4))[3])) == {"k": 4, "p": 9, "prime": False}


def test_genocchi_examples():
    even = genocchi_evaluation_check(2, signed_coefficients(recover_P(2))[1])
    assert even["pAtN1"] == "1" and even["minusGenocchi"] == "-1"
    assert even["signedEqual"] and not even["literalEqual"]
    for k in (3, 5):
        odd = genocchi_evaluation_check(k, signed_coefficients(recover_P(k))[k - 1])
        assert odd["signedEqual"] and odd["literalEqual"]
    assert genocchi_evaluation_check(3, signed_coefficients(recover_P(3))[2])["pAtN1"] == "3"


def test_conj43_k0():
    rep = verify_conjecture43(recover_P(0), 3)
    assert rep.polynomials == {1: UniPoly([0, Fraction(1, 2)]), 2: UniPoly([0, 1]), 3: UniPoly([0, Fraction(3, 4)])}
    assert len(rep.checked) == 3 * 3


def test_bracket_k3():
    # j = 1 must reduce to sum q^7 = t^2 (3t^2 - 4t + 2)/24
    terms = bracket_terms(recover_P(3))
    at_j1 = {a: sum(v for (ta, _), v in terms.items() if ta == a) for a in range(3)}
    assert at_j1 == {0: Fraction(2, 24), 1: Fraction(-4, 24), 2: Fraction(3, 24)}
    assert terms == pub.BRACKETS[3].printed.terms()
    assert verify_conjecture43(recover_P(3), 5).checked[-1] == [5, 6]


def test_bracket_k6_discrepancy():
    entry = pub.BRACKETS[6]
    assert entry.status == pub.TYPO
    assert bracket_satisfies_sums(6, entry.corrected) == []
    assert bracket_satisfies_sums(6, entry.printed) != []
    assert bracket_terms(recover_P(6)) == entry.corrected.terms()
    # derived t^2 row: -(24472 j^2 - 38696 j + 16584)/840
    assert [entry.corrected.terms()[(2, p)] * 840 for p in range(3)] == [-16584, 38696, -24472]
