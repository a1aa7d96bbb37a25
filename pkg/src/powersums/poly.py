"""Dense univariate polynomials over Q and the small linear algebra around them.

``UniPoly`` stores ascending coefficients with no trailing zeros, so the zero
polynomial is the empty tuple. ``RationalCoefficient`` is ``num(t) / t**e``
and ``XPolynomial`` is a polynomial in x whose coefficients are of that form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import binomial, format_q, parse_q, to_q

__all__ = [
    "UniPoly",
    "RationalCoefficient",
    "XPolynomial",
    "NewtonInterpolator",
    "InconsistentSystem",
    "interpolate",
    "solve_linear",
    "determinant",
    "reduce_rational_coefficient",
    "palindrome_check",
]


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    out = [to_q(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def constant(cls, c) -> UniPoly:
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> UniPoly:
        return cls([0] * degree + [c])

    @classmethod
    def x(cls) -> UniPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[format_q(c) for c in self.coeffs]})"

    def __add__(self, other) -> UniPoly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> UniPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> UniPoly:
        return _as_poly(other) - self

    def __mul__(self, other) -> UniPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> UniPoly:
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = UniPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> UniPoly:
        c = to_q(c)
        return UniPoly(c * a for a in self.coeffs)

    def __call__(self, v):
        """Horner evaluation."""
        v = to_q(v)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def shift(self, h=-1) -> UniPoly:
        """Return p(x + h); the default gives p(x - 1)."""
        h = to_q(h)
        d = len(self.coeffs)
        out = [Fraction(0)] * d
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            hp = Fraction(1)
            # x^i -> sum_m C(i, m) x^m h^(i-m), walked from m = i downwards
            for m in range(i, -1, -1):
                out[m] += c * binomial(i, m) * hp
                hp *= h
        return UniPoly(out)

    def compose(self, inner: UniPoly) -> UniPoly:
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def divide_by_x_power(self, e: int) -> UniPoly:
        if any(self.coeff(i) for i in range(min(e, len(self.coeffs)))):
            raise ValueError("polynomial is not divisible by the requested power of the variable")
        return UniPoly(self.coeffs[e:])

    def x_valuation(self) -> int:
        """Largest e with x**e dividing the polynomial (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def to_json(self, var: str = "t") -> dict:
        return {"var": var, "coeffs": [format_q(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> UniPoly:
        return cls(parse_q(c) for c in data["coeffs"])

    def pretty(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = format_q(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{format_q(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _as_poly(value) -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    return UniPoly([value])


@dataclass(frozen=True)
class RationalCoefficient:
    """``num(t) / t**t_exp``; reduced means t does not divide ``num`` when ``t_exp > 0``."""

    num: UniPoly
    t_exp: int = 0

    def __call__(self, t) -> Fraction:
        t = to_q(t)
        return self.num(t) / t**self.t_exp

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_reduced(self) -> bool:
        return self.t_exp == 0 or self.num.coeff(0) != 0

    def __add__(self, other: RationalCoefficient) -> RationalCoefficient:
        e = max(self.t_exp, other.t_exp)
        num = self.num * UniPoly.monomial(e - self.t_exp) + other.num * UniPoly.monomial(e - other.t_exp)
        return reduce_rational_coefficient(num, e)

    def __neg__(self) -> RationalCoefficient:
        return RationalCoefficient(-self.num, self.t_exp)

    def scale(self, c) -> RationalCoefficient:
        return reduce_rational_coefficient(self.num.scale(c), self.t_exp)

    def with_exponent(self, e: int) -> UniPoly:
        """Numerator over ``t**e``; requires ``e >= t_exp``."""
        if e < self.t_exp:
            raise ValueError(f"cannot write num/t^{self.t_exp} over t^{e}")
        return self.num * UniPoly.monomial(e - self.t_exp)

    def to_json(self) -> dict:
        return {"num": self.num.to_json("t"), "tExp": self.t_exp}

    @classmethod
    def from_json(cls, data: dict) -> RationalCoefficient:
        return cls(UniPoly.from_json(data["num"]), int(data["tExp"]))

    def pretty(self) -> str:
        num = self.num.pretty("t")
        if self.t_exp == 0:
            return num
        den = "t" if self.t_exp == 1 else f"t^{self.t_exp}"
        return f"({num})/{den}"


def reduce_rational_coefficient(num: UniPoly, e: int) -> RationalCoefficient:
    if e < 0:
        raise ValueError("t exponent must be >= 0")
    if num.is_zero():
        return RationalCoefficient(UniPoly(), 0)
    cancel = min(e, num.x_valuation())
    return RationalCoefficient(num.divide_by_x_power(cancel), e - cancel)


@dataclass(frozen=True)
class XPolynomial:
    """Polynomial in x with ``RationalCoefficient`` coefficients (ascending in x)."""

    coeffs: tuple[RationalCoefficient, ...]

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d >= 0 and self.coeffs[d].is_zero():
            d -= 1
        return d

    def coeff(self, i: int) -> RationalCoefficient:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RationalCoefficient(UniPoly(), 0)

    def at_t(self, t) -> UniPoly:
        """Specialize t, leaving a polynomial in x."""
        return UniPoly(c(t) for c in self.coeffs)

    def at_x(self, x) -> RationalCoefficient:
        """Specialize x, leaving a rational function of t."""
        x = to_q(x)
        acc = RationalCoefficient(UniPoly(), 0)
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                acc = acc + c.scale(x**i)
        return acc

    def __call__(self, t, x) -> Fraction:
        return self.at_t(t)(x)

    def to_json(self) -> dict:
        return {"var": "x", "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> XPolynomial:
        return cls(tuple(RationalCoefficient.from_json(c) for c in data["coeffs"]))


class NewtonInterpolator:
    """Incremental Newton divided differences; points can be appended one at a time."""

    def __init__(self, points: Iterable[tuple] = ()):
        self.xs: list[Fraction] = []
        # last diagonal of the divided-difference table, and the Newton coefficients
        self._diag: list[Fraction] = []
        self.newton: list[Fraction] = []
        for x, y in points:
            self.add_point(x, y)

    def add_point(self, x, y) -> None:
        x, y = to_q(x), to_q(y)
        if x in self.xs:
            raise ValueError(f"duplicate abscissa {format_q(x)}")
        diag = [y]
        for i in range(len(self.xs)):
            diag.append((diag[i] - self._diag[i]) / (x - self.xs[len(self.xs) - 1 - i]))
        self.xs.append(x)
        self._diag = diag
        self.newton.append(diag[-1])

    def __call__(self, v) -> Fraction:
        v = to_q(v)
        acc = Fraction(0)
        for i in range(len(self.newton) - 1, -1, -1):
            acc = acc * (v - self.xs[i]) + self.newton[i]
        return acc

    def to_poly(self) -> UniPoly:
        acc = UniPoly()
        for i in range(len(self.newton) - 1, -1, -1):
            acc = acc * UniPoly([-self.xs[i], 1]) + self.newton[i]
        return acc


def interpolate(points: Sequence[tuple]) -> UniPoly:
    """Unique polynomial of degree < len(points) through ``points``."""
    if not points:
        raise ValueError("interpolate needs at least one point")
    return NewtonInterpolator(points).to_poly()


class InconsistentSystem(ArithmeticError):
    """An overdetermined system has no exact solution; ``row`` is the first failing equation."""

    def __init__(self, row: int):
        super().__init__(f"linear system inconsistent at row {row}")
        self.row = row


def _integer_rows(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators; returns the rows and the multipliers."""
    out, mults = [], []
    for row in rows:
        row = [to_q(v) for v in row]
        lcm = math.lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * lcm) for v in row])
        mults.append(lcm)
    return out, mults


def _bareiss(m: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free elimination in place over the first ``ncols`` columns.

    Returns the matrix, the original row index of each position, and the rank.
    """
    nrows = len(m)
    order = list(range(nrows))
    prev = 1
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        if pivot != rank:
            m[rank], m[pivot] = m[pivot], m[rank]
            order[rank], order[pivot] = order[pivot], order[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c in range(len(row_r)):
                # exact by Sylvester's identity
                row_r[c] = (p * row_r[c] - f * row_p[c]) // prev
        prev = p
        rank += 1
    return m, order, rank


def solve_linear(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Exact solution of ``a @ x = b`` for a full-column-rank, possibly tall, matrix.

    Raises ``InconsistentSystem`` when no exact solution exists and
    ``ValueError`` when the columns are dependent (underdetermined).
    """
    if len(a) != len(b):
        raise ValueError("row count of A does not match length of b")
    if not a:
        raise ValueError("empty system")
    ncols = len(a[0])
    if any(len(row) != ncols for row in a):
        raise ValueError("ragged matrix")
    ints, _ = _integer_rows([list(row) + [rhs] for row, rhs in zip(a, b)])
    m, order, rank = _bareiss(ints, ncols)
    if rank < ncols:
        raise ValueError(f"underdetermined system: rank {rank} < {ncols} unknowns")
    bad = [order[r] for r in range(rank, len(m)) if m[r][ncols] != 0]
    if bad:
        raise InconsistentSystem(min(bad))
    x = [Fraction(0)] * ncols
    for r in range(ncols - 1, -1, -1):
        acc = Fraction(m[r][ncols])
        for c in range(r + 1, ncols):
            acc -= m[r][c] * x[c]
        x[r] = acc / m[r][r]
    return x


def determinant(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    ints, mults = _integer_rows(a)
    m, order, rank = _bareiss(ints, n)
    if rank < n:
        return Fraction(0)
    sign = _permutation_sign(order)
    return Fraction(sign * m[n - 1][n - 1], math.prod(mults))


def _permutation_sign(perm: list[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def palindrome_check(p: UniPoly, d: int) -> bool:
    if d < p.degree:
        raise ValueError("palindrome degree bound below polynomial degree")
    return all(p.coeff(i) == p.coeff(d - i) for i in range(d + 1))
