"""Exact integer and rational scalars.

Integers are plain Python ``int`` and rationals are ``fractions.Fraction``;
both are immutable and always normalized. This module adds the combinatorial
helpers and the canonical string encodings used in every report.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "Q",
    "binomial",
    "factorial",
    "to_q",
    "format_int",
    "parse_int",
    "format_q",
    "parse_q",
    "is_prime",
]

Q = Fraction
Scalar = Union[int, Fraction]

_INT_RE = re.compile(r"-?[0-9]+\Z")
_Q_RE = re.compile(r"(-?[0-9]+)(?:/([0-9]+))?\Z")


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with zero extension for k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial: n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial: n must be >= 0, got {n}")
    return math.factorial(n)


def to_q(value: Scalar | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_q(value)
    if isinstance(value, bool) or not isinstance(value, (int, Rational)):
        raise TypeError(f"not an exact scalar: {value!r}")
    return Fraction(value)


def format_int(value: int) -> str:
    return str(int(value))


def parse_int(text: str) -> int:
    if not _INT_RE.match(text):
        raise ValueError(f"malformed integer: {text!r}")
    return int(text)


def format_q(value: Scalar) -> str:
    """Canonical ``p/q`` encoding; the denominator is dropped when it is 1."""
    value = to_q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_q(text: str) -> Fraction:
    m = _Q_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def is_prime(n: int) -> bool:
    # trial division; only used for p = 2k+1 at desk scale
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True
