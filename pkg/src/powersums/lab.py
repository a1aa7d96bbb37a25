"""Reconstruction of P_k(t, x) from exact samples and the structural checks built on it.

With t = n(n+1), the representation under test is

    S_{k,j}(n) = t^(k+1) / 2^(k+1) * P_k(t, j) * g_j(n).

``recover_P`` samples the normalized quotient on a (j, n) grid, interpolates
in x for each n, fits each x-coefficient as num(t)/t^e, and checks every
held-out sample exactly. Any failure raises ``ConjectureViolation``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConjectureViolation
from .exact import binomial, factorial, format_q, is_prime
from .parallel import parallel_map
from .poly import (
    InconsistentSystem,
    NewtonInterpolator,
    RationalCoefficient,
    UniPoly,
    XPolynomial,
    palindrome_check,
    reduce_rational_coefficient,
    solve_linear,
)
from .sequences import bernoulli, g_product, g_value_n, genocchi, n_param_count, tuenter_poly, venn_T
from .sums import big_S

__all__ = [
    "RecoveredP",
    "StructureFit",
    "VennFactorization",
    "quotient_sample",
    "recover_P",
    "signed_coefficients",
    "fit_structure",
    "alpha_closed_form",
    "ALPHA_CLOSED_FORMS",
    "alpha_closed_forms",
    "alpha_guess_fit",
    "extract_venn",
    "venn_prime_link",
    "genocchi_evaluation_check",
    "bracket_terms",
    "Conj43Report",
    "verify_conjecture43",
    "bracket_satisfies_sums",
    "total_alpha_count",
]


def _t(n: int) -> int:
    return n * (n + 1)


def quotient_sample(k: int, j: int, n: int) -> Fraction:
    """S_{k,j}(n) * 2^(k+1) / (t^(k+1) * g_j(n)); conjecturally P_k(t, j)."""
    return Fraction(big_S(k, j, n) * 2 ** (k + 1), _t(n) ** (k + 1) * g_value_n(j, n))


@dataclass(frozen=True)
class RecoveredP:
    k: int
    poly: XPolynomial
    validation: tuple[tuple[int, int], ...] = ()

    def at_t(self, t) -> UniPoly:
        return self.poly.at_t(t)

    def to_json(self) -> dict:
        return {"k": self.k, "poly": self.poly.to_json(), "validation": [list(c) for c in self.validation]}

    def pretty(self) -> str:
        terms = []
        for i in range(self.poly.degree, -1, -1):
            c = self.poly.coeff(i)
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = c.pretty()
            if c.t_exp == 0 and len(c.num.coeffs) > 1:
                body = f"({body})"
            terms.append(f"{body}*{mono}" if mono else body)
        return " + ".join(terms) if terms else "0"


def _sample_row(args: tuple[int, int, int]) -> list[Fraction]:
    k, n, j_count = args
    return [quotient_sample(k, j, n) for j in range(1, j_count + 1)]


def _fit_t_dependence(k: int, i: int, fit_ts: list[int], fit_vals: list[Fraction]) -> RationalCoefficient | None:
    """Smallest e in 0..max(k-1, 0) with value = num(t)/t^e, deg num <= e, exact on the fit samples."""
    for e in range(max(k - 1, 0) + 1):
        rows = [[Fraction(t) ** d for d in range(e + 1)] for t in fit_ts]
        rhs = [v * Fraction(t) ** e for t, v in zip(fit_ts, fit_vals)]
        try:
            num = solve_linear(rows, rhs)
        except InconsistentSystem:
            continue
        return reduce_rational_coefficient(UniPoly(num), e)
    return None


def recover_P(k: int, extra_validation: int = 2, parallelism: int = 1) -> RecoveredP:
    if k < 0:
        raise ValueError("recover_P needs k >= 0")
    if extra_validation < 2:
        raise ValueError("extra_validation must be >= 2")
    n_values = list(range(1, k + 4))
    j_count = k + 1 + extra_validation
    rows = parallel_map(_sample_row, [(k, n, j_count) for n in n_values], parallelism)
    validation: list[tuple[int, int]] = []

    # x-interpolation per n, extra j values held out
    x_polys: dict[int, UniPoly] = {}
    for n, row in zip(n_values, rows):
        interp = NewtonInterpolator((j, row[j - 1]) for j in range(1, k + 2))
        for j in range(k + 2, j_count + 1):
            if interp(j) != row[j - 1]:
                raise ConjectureViolation(
                    "main",
                    "sampled quotient is not a polynomial of degree <= k in x",
                    {"k": k, "cell": [k, j, n], "interpolated": format_q(interp(j)), "sampled": format_q(row[j - 1])},
                )
            validation.append((j, n))
        x_polys[n] = interp.to_poly()

    # t-dependence per x-power, the two largest n held out
    fit_ns, held_ns = n_values[: k + 1], n_values[k + 1 :]
    coeffs = []
    for i in range(k + 1):
        fit = _fit_t_dependence(k, i, [_t(n) for n in fit_ns], [x_polys[n].coeff(i) for n in fit_ns])
        if fit is None:
            raise ConjectureViolation(
                "main",
                f"coefficient of x^{i} is not num(t)/t^e with e <= k-1",
                {"k": k, "xPower": i, "samples": {str(n): format_q(x_polys[n].coeff(i)) for n in fit_ns}},
            )
        for n in held_ns:
            if fit(_t(n)) != x_polys[n].coeff(i):
                raise ConjectureViolation(
                    "main",
                    f"fitted coefficient of x^{i} fails on held-out n",
                    {"k": k, "xPower": i, "n": n, "fitted": format_q(fit(_t(n))), "sampled": format_q(x_polys[n].coeff(i))},
                )
        coeffs.append(fit)
    validation.extend((j, n) for n in held_ns for j in range(1, k + 2))
    poly = XPolynomial(tuple(coeffs))

    if poly.degree != k:
        raise ConjectureViolation("main", "degree in x differs from k", {"k": k, "degree": poly.degree})
    lead = poly.coeff(k)
    if lead.t_exp != 0 or lead.num != UniPoly([factorial(k)]):
        raise ConjectureViolation("main", "leading x-coefficient is not k!", {"k": k, "lead": lead.to_json()})
    if k >= 1 and not poly.coeff(0).is_zero():
        raise ConjectureViolation("main", "P_k(t, x) is not divisible by x", {"k": k, "constant": poly.coeff(0).to_json()})
    return RecoveredP(k, poly, tuple(sorted(validation, key=lambda c: (c[1], c[0]))))


def signed_coefficients(p: RecoveredP) -> list[RationalCoefficient]:
    """p_{k,0..k-1}(t), where the coefficient of x^(k-i) is (-1)^i p_{k,i}."""
    k = p.k
    out = []
    for i in range(k):
        c = p.poly.coeff(k - i)
        out.append(c if i % 2 == 0 else -c)
    return out


@dataclass(frozen=True)
class StructureFit:
    k: int
    j: int
    m: int
    l: int
    alphas: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {"k": self.k, "j": self.j, "m": self.m, "l": self.l, "alphas": [format_q(a) for a in self.alphas]}


def _structure_basis(j: int) -> list[UniPoly]:
    tp1 = UniPoly([1, 1])
    return [UniPoly.monomial(2 * q) * tp1 ** (j - 3 * q) for q in range(j // 3 + 1)]


def fit_structure(k: int, j: int, p: RationalCoefficient) -> StructureFit:
    """Write p_{k,j}(t) t^j as a positive combination of t^(2q) (t+1)^(j-3q), q = 0..floor(j/3)."""
    if not 1 <= j <= k - 1:
        raise ValueError(f"fit_structure needs 1 <= j <= k-1, got k={k}, j={j}")
    p = reduce_rational_coefficient(p.num, p.t_exp)
    witness = {"k": k, "j": j, "coefficient": p.to_json()}
    if p.t_exp != j:
        raise ConjectureViolation("4.2", f"denominator exponent is {p.t_exp}, expected {j}", witness)
    basis = _structure_basis(j)
    size = max(p.num.degree, max(b.degree for b in basis)) + 1
    a = [[b.coeff(d) for b in basis] for d in range(size)]
    try:
        alphas = solve_linear(a, [p.num.coeff(d) for d in range(size)])
    except InconsistentSystem as exc:
        raise ConjectureViolation("4.2", f"numerator outside the basis span (t^{exc.row} coefficient)", witness) from None
    if any(al <= 0 for al in alphas):
        raise ConjectureViolation(
            "4.2", "non-positive alpha", {**witness, "alphas": [format_q(al) for al in alphas]}
        )
    m = j // 3
    return StructureFit(k, j, m, j - 3 * m, tuple(alphas))


def alpha_closed_form(name: str, k: int) -> Fraction:
    f = factorial(k)
    if name == "alpha_{k,1,0}":
        return Fraction((k - 1) * (k + 1), 9) * f
    if name == "alpha_{k,2,0}":
        return Fraction((k - 2) * (k + 1) * (5 * k * k + k - 3), 810) * f
    if name == "alpha_{k,3,0}":
        return Fraction((k - 3) * (k + 1) * (175 * k**4 - 70 * k**3 - 724 * k * k + 643 * k - 690), 765450) * f
    if name == "alpha_{k,3,1}":
        return Fraction((k - 3) * (k + 1) * (2 * k * k - 4 * k + 5), 1575) * f
    raise KeyError(name)


# name -> (j, q, smallest valid k)
ALPHA_CLOSED_FORMS: dict[str, tuple[int, int, int]] = {
    "alpha_{k,1,0}": (1, 0, 2),
    "alpha_{k,2,0}": (2, 0, 3),
    "alpha_{k,3,0}": (3, 0, 4),
    "alpha_{k,3,1}": (3, 1, 4),
}


def alpha_closed_forms(k: int, fits: dict[int, StructureFit]) -> list[dict]:
    """Compare fitted alphas of one k with every closed form valid at that k."""
    out = []
    for name, (j, q, k_min) in ALPHA_CLOSED_FORMS.items():
        if k < k_min or j not in fits:
            continue
        fitted = fits[j].alphas[q]
        formula = alpha_closed_form(name, k)
        out.append({"name": name, "k": k, "fitted": format_q(fitted), "formula": format_q(formula), "match": fitted == formula})
    return out


def alpha_guess_fit(j: int, alpha_by_k: dict[int, Fraction]) -> dict:
    """Exploratory: interpolate alpha_{k,j,0} / ((k-j)(k+1)k!) in k with degree 2j-2.

    Reports the interpolant and whether surplus k values agree; never asserted.
    """
    ks = sorted(k for k in alpha_by_k if k >= j + 1)
    need = 2 * j - 1
    out: dict = {"j": j, "ks": ks, "degree": 2 * j - 2}
    if len(ks) < need:
        out.update({"poly": None, "consistent": None})
        return out
    pts = [(k, alpha_by_k[k] / ((k - j) * (k + 1) * factorial(k))) for k in ks]
    interp = NewtonInterpolator(pts[:need])
    extra = pts[need:]
    out["poly"] = interp.to_poly().to_json("k")
    out["consistent"] = all(interp(k) == v for k, v in extra) if extra else None
    return out


@dataclass(frozen=True)
class VennFactorization:
    k: int
    c: Fraction
    v: UniPoly

    def to_json(self) -> dict:
        return {"k": self.k, "cK": format_q(self.c), "vK": self.v.to_json("n")}


def extract_venn(k: int, p_last: RationalCoefficient) -> VennFactorization:
    """Split p_{k,k-1}(n(n+1)) as c_k v_k(n) / (n(n+1))^(k-1) and check the conjectured closed forms."""
    if k < 1:
        raise ValueError("extract_venn needs k >= 1")
    if p_last.t_exp > k - 1:
        raise ConjectureViolation(
            "venn", "denominator exceeds (n(n+1))^(k-1)", {"k": k, "coefficient": p_last.to_json()}
        )
    num_t = p_last.with_exponent(k - 1)
    vn = num_t.compose(UniPoly([0, 1, 1]))
    if vn.degree != 2 * k - 2:
        raise ConjectureViolation("venn", "numerator degree is not 2k-2", {"k": k, "numerator": vn.to_json("n")})
    c = vn.lead
    v = vn.scale(1 / c)
    expected_v = UniPoly(
        Fraction(binomial(2 * k, q) + (-1) ** (q + 1), 2 * k + 1) for q in range(2 * k - 1, 0, -1)
    )
    if v != expected_v:
        raise ConjectureViolation(
            "venn", "v_k differs from the binomial closed form", {"k": k, "vK": v.to_json("n"), "expected": expected_v.to_json("n")}
        )
    expected_c = (-1) ** (k + 1) * (2 * k + 1) * 2**k * bernoulli(2 * k)
    if c != expected_c:
        raise ConjectureViolation(
            "venn", "c_k differs from the Bernoulli closed form", {"k": k, "cK": format_q(c), "expected": format_q(expected_c)}
        )
    if not palindrome_check(v, 2 * k - 2):
        raise ConjectureViolation("venn", "v_k is not palindromic", {"k": k, "vK": v.to_json("n")})
    return VennFactorization(k, c, v)


def venn_prime_link(fac: VennFactorization) -> dict:
    """For prime p = 2k+1: coefficients of v_k against T(p, q) and v_k(1) against the Fermat quotient."""
    k = fac.k
    p = 2 * k + 1
    out: dict = {"k": k, "p": p, "prime": is_prime(p)}
    if not out["prime"] or k < 2:
        return out
    descending = [fac.v.coeff(2 * k - 1 - q) for q in range(1, 2 * k)]
    venn = [venn_T(p, q) for q in range(1, 2 * k)]
    fermat = Fraction(2 ** (p - 1) - 1, p)
    out.update(
        {
            "coefficientsMatch": descending == venn,
            "integral": all(v.denominator == 1 for v in venn),
            "vAt1": format_q(fac.v(1)),
            "fermatQuotient": format_q(fermat),
            "rowSumMatch": fac.v(1) == fermat,
        }
    )
    return out


def genocchi_evaluation_check(k: int, p_last: RationalCoefficient) -> dict:
    """p_{k,k-1} at n = 1 (t = 2) against -G_{2k} and the constant term of P_k(x)/x, in both sign readings."""
    if k < 1:
        raise ValueError("genocchi_evaluation_check needs k >= 1")
    at1 = p_last(2)
    bern_form = 2 * (2 ** (2 * k) - 1) * bernoulli(2 * k)
    minus_g = -genocchi(2 * k)
    tuenter_const = tuenter_poly(k).coeff(1)
    signed = (-1) ** (k - 1) * at1
    return {
        "k": k,
        "pAtN1": format_q(at1),
        "signedPAtN1": format_q(signed),
        "bernoulliForm": format_q(bern_form),
        "minusGenocchi": format_q(minus_g),
        "tuenterConstant": format_q(tuenter_const),
        "literalEqual": at1 == minus_g,
        "signedEqual": signed == minus_g == tuenter_const == bern_form,
    }


def bracket_terms(p: RecoveredP) -> dict[tuple[int, int], Fraction]:
    """Derived j-bracket as {(t power, j power): coefficient}.

    For k >= 1, S_{k,j}(n) = t^2 B(t, j) j^2/(j-1)! prod(jn+q) with
    B = t^(k-1) (P_k/x)(t, j) / 2^(k+1); for k = 0, S = t B j/(j-1)! prod with B = P_0/2.
    """
    k = p.k
    out: dict[tuple[int, int], Fraction] = {}
    scale = Fraction(1, 2 ** (k + 1))
    if k == 0:
        c = p.poly.coeff(0)
        for a, v in enumerate(c.with_exponent(c.t_exp).coeffs):
            if v:
                out[(a - c.t_exp, 0)] = v * scale
        return out
    for i in range(1, k + 1):
        c = p.poly.coeff(i)
        if c.is_zero():
            continue
        shifted = c.with_exponent(k - 1) if c.t_exp <= k - 1 else None
        if shifted is None:
            raise ConjectureViolation("4.3", "t^(k-1) does not clear the coefficient", {"k": k, "xPower": i})
        for a, v in enumerate(shifted.coeffs):
            if v:
                out[(a, i - 1)] = v * scale
    return out


@dataclass
class Conj43Report:
    k: int
    j_max: int
    checked: list[list[int]] = field(default_factory=list)
    polynomials: dict[int, UniPoly] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "jmax": self.j_max,
            "checkedCells": self.checked,
            "polynomials": {str(j): self.polynomials[j].to_json("t") for j in sorted(self.polynomials)},
        }


def verify_conjecture43(p: RecoveredP, j_max: int, n_max: int | None = None) -> Conj43Report:
    """Check S_{k,j}(n) / prod(jn+q) is a polynomial in t for each j <= j_max, against big_S."""
    k = p.k
    n_max = k + 3 if n_max is None else n_max
    report = Conj43Report(k, j_max)
    for j in range(1, j_max + 1):
        r = p.poly.at_x(j)
        if r.t_exp > k + 1:
            raise ConjectureViolation(
                "4.3", "negative power of t remains after clearing", {"k": k, "j": j, "coefficient": r.to_json()}
            )
        poly_t = r.with_exponent(k + 1).scale(Fraction(j, factorial(j - 1) * 2 ** (k + 1)))
        report.polynomials[j] = poly_t
        for n in range(1, n_max + 1):
            lhs = poly_t(_t(n)) * g_product(j, n)
            rhs = big_S(k, j, n)
            if lhs != rhs:
                raise ConjectureViolation(
                    "4.3",
                    "assembled polynomial disagrees with S_{k,j}(n)",
                    {"cell": [k, j, n], "assembled": format_q(lhs), "direct": str(rhs)},
                )
            report.checked.append([j, n])
    return report


def bracket_satisfies_sums(k: int, bracket, j_max: int = 6, n_max: int = 6) -> list[list[int]]:
    """Cells where a j-bracket display disagrees with S_{k,j}(n); empty means it reproduces all of them."""
    bad = []
    for j in range(1, j_max + 1):
        for n in range(1, n_max + 1):
            t = _t(n)
            pref = Fraction(t**2 * j * j, factorial(j - 1)) if k >= 1 else Fraction(t * j, factorial(j - 1))
            if bracket(t, j) * pref * g_product(j, n) != big_S(k, j, n):
                bad.append([j, n])
    return bad


def total_alpha_count(k: int, fits: dict[int, StructureFit]) -> tuple[int, int]:
    """(alphas found including p_{k,0} = k!, n_param_count(k))."""
    return 1 + sum(f.m + 1 for f in fits.values()), n_param_count(k)
