"""Classical sequences and polynomial families used as cross-checks.

Bernoulli numbers follow the recursion with B_1 = -1/2. Faulhaber
coefficients A_q^(k) are available through three independent routes: the
triangular binomial system (authoritative), the downward three-term
recurrence, and a banded binomial determinant.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InvariantBreach
from .exact import binomial, factorial, format_q, is_prime
from .poly import UniPoly, determinant

__all__ = [
    "bernoulli",
    "genocchi",
    "sigma_poly",
    "tuenter_poly",
    "g_value",
    "g_value_n",
    "g_product",
    "FaulhaberRow",
    "faulhaber_row_knuth",
    "faulhaber_row_jacobi",
    "DeterminantResult",
    "faulhaber_coeff_determinant",
    "faulhaber_closed_form",
    "faulhaber_sum_poly",
    "venn_T",
    "venn_row",
    "venn_row_sum",
    "n_param_count",
]

_lock = threading.Lock()
_bernoulli_cache: list[Fraction] = [Fraction(1)]
_tuenter_cache: list[UniPoly] = [UniPoly([1])]


def bernoulli(q: int) -> Fraction:
    if q < 0:
        raise ValueError("bernoulli index must be >= 0")
    with _lock:
        while len(_bernoulli_cache) <= q:
            m = len(_bernoulli_cache)
            # sum_{i=0}^{m} C(m+1, i) B_i = 0, solved for B_m
            s = sum(binomial(m + 1, i) * b for i, b in enumerate(_bernoulli_cache))
            _bernoulli_cache.append(-s / (m + 1))
        return _bernoulli_cache[q]


def genocchi(two_k: int) -> Fraction:
    """G_{2k} = 2 (1 - 2^{2k}) B_{2k}; only even indices are supported."""
    if two_k < 2 or two_k % 2:
        raise ValueError(f"genocchi index must be even and >= 2, got {two_k}")
    return 2 * (1 - 2**two_k) * bernoulli(two_k)


def sigma_poly(m: int) -> UniPoly:
    """Polynomial in n equal to 1^m + 2^m + ... + n^m."""
    if m < 1:
        raise ValueError("sigma_poly needs m >= 1")
    coeffs = [Fraction(0)] * (m + 2)
    for q in range(m + 1):
        coeffs[m - q + 1] += (-1) ** q * binomial(m + 1, q) * bernoulli(q)
    return UniPoly(c / (m + 1) for c in coeffs)


def tuenter_poly(k: int) -> UniPoly:
    """P_{k+1}(x) = x^2 (P_k(x) - P_k(x-1)) + x P_k(x-1), P_0 = 1."""
    if k < 0:
        raise ValueError("tuenter_poly needs k >= 0")
    x = UniPoly.x()
    with _lock:
        while len(_tuenter_cache) <= k:
            p = _tuenter_cache[-1]
            shifted = p.shift(-1)
            _tuenter_cache.append(x * x * (p - shifted) + x * shifted)
        return _tuenter_cache[k]


def g_product(j: int, n: int) -> int:
    """prod_{q=1}^{j-1} (jn + q)."""
    out = 1
    for q in range(1, j):
        out *= j * n + q
    return out


def g_value_n(j: int, n: int) -> int:
    """g_j(n) = j / (j-1)! * prod_{q=1}^{j-1} (jn + q)."""
    if j < 1 or n < 1:
        raise ValueError("g_value_n needs j >= 1 and n >= 1")
    num = j * g_product(j, n)
    den = factorial(j - 1)
    if num % den:
        raise InvariantBreach(f"g_{j}({n}) is not an integer: {num}/{den}")
    return num // den


def g_value(j: int) -> int:
    return g_value_n(j, 1)


@dataclass(frozen=True)
class FaulhaberRow:
    k: int
    A: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.A) != self.k:
            raise InvariantBreach(f"Faulhaber row {self.k} has {len(self.A)} entries")

    def to_json(self) -> dict:
        return {"k": self.k, "A": [format_q(a) for a in self.A]}


@lru_cache(maxsize=None)
def faulhaber_row_knuth(k: int) -> FaulhaberRow:
    """Solve sum_{q<=r} C(k-q, 2r+1-2q) A_q = 0 (r = 1..k-1) with A_0 = 1."""
    if k < 1:
        raise ValueError("Faulhaber rows start at k = 1")
    A = [Fraction(1)]
    for r in range(1, k):
        s = sum(binomial(k - q, 2 * r + 1 - 2 * q) * A[q] for q in range(r))
        A.append(-s / binomial(k - r, 1))
    row = FaulhaberRow(k, tuple(A))
    if k >= 2 and row.A[-1] != 0:
        raise InvariantBreach(f"A_{k - 1}^({k}) = {row.A[-1]} is not zero")
    return row


def faulhaber_row_jacobi(k: int, row_k_plus_1: FaulhaberRow) -> FaulhaberRow:
    """Downward recurrence from row k+1 to row k."""
    if row_k_plus_1.k != k + 1:
        raise ValueError(f"expected row {k + 1}, got row {row_k_plus_1.k}")
    up = row_k_plus_1.A
    den = (2 * k + 2) * (2 * k + 1)
    A = []
    for q in range(k):
        prev = up[q - 1] if q >= 1 else Fraction(0)
        A.append((2 * (k - q + 1) * (2 * k - 2 * q + 1) * up[q] + (k - q + 1) * (k - q + 2) * prev) / den)
    return FaulhaberRow(k, tuple(A))


def _gv_matrix(k: int, q: int) -> list[list[int]]:
    # row i carries upper index k-q+i; entry C(k-q+i, 2(i-c)+3), zero above the superdiagonal
    return [
        [binomial(k - q + i, 2 * (i - c) + 3) if 2 * (i - c) + 3 >= 0 else 0 for c in range(1, q + 1)]
        for i in range(1, q + 1)
    ]


def _gv_matrix_as_printed(k: int, q: int) -> list[list[int]]:
    # the published display: the last two rows carry k-1 / 2k+1-2c entries
    m = _gv_matrix(k, q)
    if q >= 2:
        m[q - 2] = [binomial(k - 1, 2 * k + 1 - 2 * c) for c in range(1, q)] + [binomial(k - 1, 1)]
        m[q - 1] = (
            [binomial(k, 2 * k + 1)] + [binomial(k - 1, 2 * k + 3 - 2 * c) for c in range(2, q)] + [binomial(k, 3)]
        )
    return m


def _gv_prefactor(k: int, q: int) -> Fraction:
    den = 1
    for r in range(1, q + 1):
        den *= r - k
    return Fraction(1, den)


@dataclass(frozen=True)
class DeterminantResult:
    k: int
    q: int
    value: Fraction
    as_printed: Fraction
    knuth: Fraction
    discrepancies: tuple[dict, ...] = field(default=())

    @property
    def agrees(self) -> bool:
        return self.value == self.knuth

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "q": self.q,
            "determinant": format_q(self.value),
            "asPrinted": format_q(self.as_printed),
            "knuth": format_q(self.knuth),
            "discrepancies": list(self.discrepancies),
        }


def faulhaber_coeff_determinant(k: int, q: int) -> DeterminantResult:
    """A_q^(k) as 1/((1-k)...(q-k)) times a q x q banded binomial determinant.

    The value uses the uniform band pattern; the literal published last two
    rows are evaluated too. Every disagreement with the triangular-system
    value is recorded as a discrepancy naming (k, q).
    """
    if not 1 <= q <= k - 1:
        raise ValueError(f"determinant route needs 1 <= q <= k-1, got k={k}, q={q}")
    pre = _gv_prefactor(k, q)
    value = pre * determinant(_gv_matrix(k, q))
    printed = pre * determinant(_gv_matrix_as_printed(k, q))
    knuth = faulhaber_row_knuth(k).A[q]
    found = []
    if value != knuth:
        found.append({"k": k, "q": q, "route": "banded", "value": format_q(value), "expected": format_q(knuth)})
    if printed != knuth:
        found.append({"k": k, "q": q, "route": "as-printed", "value": format_q(printed), "expected": format_q(knuth)})
    return DeterminantResult(k, q, value, printed, knuth, tuple(found))


def faulhaber_closed_form(q: int, k: int) -> Fraction:
    """Closed forms for A_1^(k) .. A_4^(k), valid for k >= q + 1."""
    if q == 1:
        return Fraction(-(k - 2) * k, 6)
    if q == 2:
        return Fraction((k - 3) * (k - 1) * k * (7 * k - 8), 360)
    if q == 3:
        return Fraction(-(k - 4) * (k - 2) * (k - 1) * k * (31 * k * k - 89 * k + 48), 15120)
    if q == 4:
        return Fraction(
            (k - 5) * (k - 3) * (k - 2) * (k - 1) * k * (127 * k**3 - 691 * k * k + 1038 * k - 384), 604800
        )
    raise ValueError(f"no closed form for q = {q}")


def faulhaber_sum_poly(k: int) -> UniPoly:
    """S_{2k+1}(n) as a polynomial in t = n(n+1)."""
    row = faulhaber_row_knuth(k + 1)
    coeffs = [Fraction(0)] * (k + 2)
    for q, a in enumerate(row.A):
        coeffs[k - q + 1] = a / (2 * (k + 1))
    return UniPoly(coeffs)


def venn_T(p: int, q: int) -> Fraction:
    """(C(p-1, q) + (-1)^(q+1)) / p."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"venn_T needs odd p >= 3, got {p}")
    return Fraction(binomial(p - 1, q) + (-1) ** (q + 1), p)


def venn_row(p: int) -> list[Fraction]:
    row = [venn_T(p, q) for q in range(1, p - 1)]
    if is_prime(p) and any(v.denominator != 1 for v in row):
        raise InvariantBreach(f"non-integral Venn number for prime p = {p}")
    return row


def venn_row_sum(p: int) -> Fraction:
    return sum(venn_row(p), Fraction(0))


def n_param_count(k: int) -> int:
    """Number of alpha parameters fixing P_k(t, x): sum over j < k of floor(j/3) + 1."""
    if k < 1:
        raise ValueError("n_param_count needs k >= 1")
    return sum(j // 3 + 1 for j in range(k))
