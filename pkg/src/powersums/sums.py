"""Coefficient rows C_{j,q}(n), the sums s_{k,j}(n), S_{k,j}(n) and the multiset oracle.

Throughout, ``x_r = r**(2k+1)``. Python's signed integer power already
satisfies ``x_r = -x_{-r}`` for the odd exponent, so negative subscripts need
no special case.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .errors import BudgetExceeded, InvariantBreach
from .exact import binomial, format_int
from .parallel import parallel_map

__all__ = [
    "DEFAULT_BUDGET",
    "CoefficientRow",
    "SumCell",
    "c_row",
    "c_row_oracle",
    "s_sum",
    "s_sum_j2_closed",
    "big_S",
    "big_S_j1_special",
    "weakly_increasing_tuples",
    "multiset_count",
    "tilde_S_oracle",
    "VerificationReport",
    "verify_conjecture1",
]

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class CoefficientRow:
    j: int
    n: int
    values: tuple[int, ...]

    def check(self) -> None:
        """Raise ``InvariantBreach`` unless length, positivity, palindrome and both sum identities hold."""
        j, n, v = self.j, self.n, self.values
        if len(v) != j * (n - 1) + 1:
            raise InvariantBreach(f"C row ({j},{n}) has length {len(v)}")
        if min(v) < 1:
            raise InvariantBreach(f"C row ({j},{n}) has a non-positive entry")
        if v != v[::-1]:
            raise InvariantBreach(f"C row ({j},{n}) is not palindromic")
        if sum(v) != n**j:
            raise InvariantBreach(f"C row ({j},{n}) does not sum to n^j")
        # sum q*C = j(n-1) n^j / 2, compared after doubling
        if 2 * sum(q * c for q, c in enumerate(v)) != j * (n - 1) * n**j:
            raise InvariantBreach(f"C row ({j},{n}) fails the first-moment identity")

    def to_json(self) -> dict:
        return {"j": self.j, "n": self.n, "values": [format_int(c) for c in self.values]}


@dataclass(frozen=True)
class SumCell:
    k: int
    j: int
    n: int

    def __post_init__(self):
        if self.k < 0 or self.j < 1 or self.n < 1:
            raise ValueError(f"invalid cell (k={self.k}, j={self.j}, n={self.n})")

    def as_list(self) -> list[int]:
        return [self.k, self.j, self.n]


def _check_jn(j: int, n: int) -> None:
    if j < 1 or n < 1:
        raise ValueError(f"need j >= 1 and n >= 1, got j={j}, n={n}")


@lru_cache(maxsize=4096)
def c_row(j: int, n: int) -> CoefficientRow:
    """Row j by the sliding-window recurrence C_{j,r} = sum_{q=r-n+1}^{r} C_{j-1,q}."""
    _check_jn(j, n)
    if j == 1:
        return CoefficientRow(1, n, (1,) * n)
    prev = c_row(j - 1, n).values
    length = j * (n - 1) + 1
    out = []
    window = 0
    for r in range(length):
        if r < len(prev):
            window += prev[r]
        if r - n >= 0:
            window -= prev[r - n]
        out.append(window)
    return CoefficientRow(j, n, tuple(out))


def c_row_oracle(j: int, n: int) -> CoefficientRow:
    """Row j by explicit repeated multiplication of (1 + a + ... + a^{n-1})."""
    _check_jn(j, n)
    base = [1] * n
    poly = list(base)
    for _ in range(j - 1):
        prod = [0] * (len(poly) + n - 1)
        for i, a in enumerate(poly):
            for m, b in enumerate(base):
                prod[i + m] += a * b
        poly = prod
    return CoefficientRow(j, n, tuple(poly))


def s_sum(k: int, j: int, n: int) -> int:
    """sum_q C_{j,q}(n) (j+q)^{2k+1}."""
    SumCell(k, j, n)
    e = 2 * k + 1
    return sum(c * (j + q) ** e for q, c in enumerate(c_row(j, n).values))


def s_sum_j2_closed(k: int, n: int) -> int:
    e = 2 * k + 1
    first = sum((2 * n - 2 * q + 2) * q**e for q in range(1, n + 1))
    second = sum((2 * n - q + 1) * q**e for q in range(1, 2 * n + 1))
    return second - first


def big_S(k: int, j: int, n: int) -> int:
    """S_{k,j}(n) = sum_{q=0}^{j-1} C(j(n+1), q) s_{k,j-q}(n)."""
    SumCell(k, j, n)
    return sum(binomial(j * (n + 1), q) * s_sum(k, j - q, n) for q in range(j))


def big_S_j1_special(k: int, j: int) -> int:
    """S_{k,j}(1) = sum_{q=0}^{j-1} C(2j, q) (j-q)^{2k+1}."""
    SumCell(k, j, 1)
    e = 2 * k + 1
    return sum(binomial(2 * j, q) * (j - q) ** e for q in range(j))


def multiset_count(j: int, top: int) -> int:
    """Number of weakly increasing j-tuples with entries in [1, top]."""
    return binomial(top + j - 1, j)


def weakly_increasing_tuples(j: int, top: int) -> Iterator[tuple[int, ...]]:
    """Odometer over 1 <= l_1 <= ... <= l_j <= top in lexicographic order."""
    lam = [1] * j
    while True:
        yield tuple(lam)
        i = j - 1
        while i >= 0 and lam[i] == top:
            i -= 1
        if i < 0:
            return
        v = lam[i] + 1
        for m in range(i, j):
            lam[m] = v


def tilde_S_oracle(k: int, j: int, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Brute-force sum of l_1^e + (l_2 - n)^e + ... + (l_j - (j-1)n)^e over all multisets."""
    SumCell(k, j, n)
    count = multiset_count(j, j * n)
    if count > budget:
        raise BudgetExceeded(count, budget)
    e = 2 * k + 1
    offsets = [i * n for i in range(j)]
    total = 0
    for lam in weakly_increasing_tuples(j, j * n):
        for v, off in zip(lam, offsets):
            total += (v - off) ** e
    return total


@dataclass
class VerificationReport:
    grid: dict
    verified: int = 0
    skipped: list[list[int]] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "grid": self.grid,
            "verified": self.verified,
            "skipped": self.skipped,
            "counterexamples": self.counterexamples,
        }


def _conj1_cell(args: tuple[int, int, int, int]) -> tuple[str, int, int]:
    k, j, n, budget = args
    try:
        lhs = tilde_S_oracle(k, j, n, budget)
    except BudgetExceeded:
        return "skipped", 0, 0
    return "checked", lhs, big_S(k, j, n)


def verify_conjecture1(
    k_max: int, j_max: int, n_max: int, budget: int = DEFAULT_BUDGET, parallelism: int = 1
) -> VerificationReport:
    """Compare the multiset oracle with S_{k,j}(n) on every grid cell within budget."""
    cells = [(k, j, n) for k in range(k_max + 1) for j in range(1, j_max + 1) for n in range(1, n_max + 1)]
    report = VerificationReport(grid={"kmax": k_max, "jmax": j_max, "nmax": n_max, "budget": budget})
    results = parallel_map(_conj1_cell, [(k, j, n, budget) for k, j, n in cells], parallelism)
    for (k, j, n), (status, lhs, rhs) in zip(cells, results):
        if status == "skipped":
            report.skipped.append([k, j, n])
        elif lhs == rhs:
            report.verified += 1
        else:
            report.counterexamples.append({"cell": [k, j, n], "lhs": format_int(lhs), "rhs": format_int(rhs)})
    return report
