"""Published tables that derived objects are compared against.

Each entry records the display as printed. Entries whose printed form is
believed to carry a transcription slip have ``status = TYPO`` and a
``corrected`` reading; a derived value that disagrees with the printed form
but equals the corrected reading is reported as a warning, anything else is a
failure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .poly import RationalCoefficient, UniPoly, reduce_rational_coefficient

MATCH = "match"
TYPO = "typo-suspected"


@dataclass(frozen=True)
class Entry:
    key: str
    printed: Any
    status: str = MATCH
    corrected: Any = None
    note: str = ""

    @property
    def expected(self) -> Any:
        return self.corrected if self.status == TYPO else self.printed


def _rc(terms: list[tuple[int, int, int]], den: int = 1, t_exp: int = 0) -> RationalCoefficient:
    """sum coef * t^a * (t+1)^b over ``den * t^t_exp``."""
    num = UniPoly()
    tp1 = UniPoly([1, 1])
    for coef, a, b in terms:
        num = num + UniPoly.monomial(a, Fraction(coef, den)) * tp1**b
    return reduce_rational_coefficient(num, t_exp)


# p_{k,i}(t) for i = 0..k-1, alternating signs already stripped
P_TX: dict[int, list[RationalCoefficient]] = {
    1: [_rc([(1, 0, 0)])],
    2: [_rc([(2, 0, 0)]), _rc([(2, 0, 1)], 3, 1)],
    3: [_rc([(6, 0, 0)]), _rc([(16, 0, 1)], 3, 1), _rc([(4, 0, 2)], 3, 2)],
    4: [
        _rc([(24, 0, 0)]),
        _rc([(40, 0, 1)], 1, 1),
        _rc([(24, 0, 2)], 1, 2),
        _rc([(24, 0, 3), (8, 2, 0)], 5, 3),
    ],
    5: [
        _rc([(120, 0, 0)]),
        _rc([(320, 0, 1)], 1, 1),
        _rc([(1016, 0, 2)], 3, 2),
        _rc([(160, 0, 3), (32, 2, 0)], 1, 3),
        _rc([(80, 0, 4), (80, 2, 1)], 3, 4),
    ],
    6: [
        _rc([(720, 0, 0)]),
        _rc([(2800, 0, 1)], 1, 1),
        _rc([(13664, 0, 2)], 3, 2),
        _rc([(55936, 0, 3), (7632, 2, 0)], 15, 3),
        _rc([(22112, 0, 4), (13664, 2, 1)], 15, 4),
        _rc([(22112, 0, 5), (44224, 2, 2)], 105, 5),
    ],
    7: [
        _rc([(5040, 0, 0)]),
        _rc([(26880, 0, 1)], 1, 1),
        _rc([(185920, 0, 2)], 3, 2),
        _rc([(76800, 0, 3), (7680, 2, 0)], 1, 3),
        _rc([(157088, 0, 4), (67968, 2, 1)], 3, 4),
        _rc([(17920, 0, 5), (22528, 2, 2)], 1, 5),
        _rc([(6720, 0, 6), (22400, 2, 3), (1344, 4, 0)], 3, 6),
    ],
}

# P_k(x)/x, descending powers of x
TUENTER: dict[int, list[int]] = {
    1: [1],
    2: [2, -1],
    3: [6, -8, 3],
    4: [24, -60, 54, -17],
    5: [120, -480, 762, -556, 155],
    6: [720, -4200, 10248, -12840, 8146, -2073],
    7: [5040, -40320, 139440, -263040, 282078, -161424, 38227],
}

# -G_2, -G_4, ..., -G_12
MINUS_GENOCCHI: list[int] = [1, -1, 3, -17, 155, -2073]

G_TABLE: list[int] = [1, 6, 30, 140, 630, 2772, 12012, 51480, 218790]

N_TABLE: list[int] = [1, 2, 3, 5, 7, 9, 12, 15, 18]


@dataclass(frozen=True)
class TPolyDisplay:
    """``t**t_power / den * poly(t)``, with ``coeffs`` in descending powers of t."""

    t_power: int
    den: int
    coeffs: tuple[int, ...]

    def to_poly(self) -> UniPoly:
        body = UniPoly(reversed(self.coeffs))
        return (body * UniPoly.monomial(self.t_power)).scale(Fraction(1, self.den))


FAULHABER: dict[int, Entry] = {
    0: Entry("S_{0,1}", TPolyDisplay(1, 2, (1,))),
    1: Entry("S_{1,1}", TPolyDisplay(2, 4, (1,))),
    2: Entry("S_{2,1}", TPolyDisplay(2, 12, (2, -1))),
    3: Entry("S_{3,1}", TPolyDisplay(2, 24, (3, -4, 2))),
    4: Entry("S_{4,1}", TPolyDisplay(2, 20, (2, -5, 6, -3))),
    5: Entry("S_{5,1}", TPolyDisplay(2, 24, (2, -8, 17, -20, 10))),
    6: Entry(
        "S_{6,1}",
        TPolyDisplay(2, 840, (60, -350, 1148, -46584, 2764, -1382)),
        TYPO,
        TPolyDisplay(2, 840, (60, -350, 1148, -2360, 2764, -1382)),
        "t^2 term printed as -46584, the value of the misprinted j-bracket at j=1",
    ),
    7: Entry(
        "S_{7,1}",
        TPolyDisplay(4, 48, (3, -24, 112, -352, 718, -840, 420)),
        TYPO,
        TPolyDisplay(2, 48, (3, -24, 112, -352, 718, -840, 420)),
        "prefactor printed as t^2/48 * t^2",
    ),
}


@dataclass(frozen=True)
class BracketDisplay:
    """``1/den`` times sum over rows of poly_i(j) * t^(top - i); rows descend in t, coeffs in j."""

    den: int
    rows: tuple[tuple[int, ...], ...]

    def terms(self) -> dict[tuple[int, int], Fraction]:
        top = len(self.rows) - 1
        out: dict[tuple[int, int], Fraction] = {}
        for i, row in enumerate(self.rows):
            deg = len(row) - 1
            for m, c in enumerate(row):
                if c:
                    out[(top - i, deg - m)] = Fraction(c, self.den)
        return out

    def __call__(self, t, j) -> Fraction:
        return sum((c * Fraction(t) ** a * Fraction(j) ** b for (a, b), c in self.terms().items()), Fraction(0))


# S_{k,j}(n) = t^2 * bracket(t, j) * j^2/(j-1)! * prod(jn+q) for k >= 1;
# for k = 0 the display is t * bracket * j/(j-1)! * prod(jn+q)
_S6_ROWS = (
    (4725, -18375, 29890, -24472, 9674, -1382),
    (-18375, 59780, -76755, 44674, -9674),
    (29890, -73416, 64022, -19348),
)
BRACKETS: dict[int, Entry] = {
    0: Entry("S_{0,j}", BracketDisplay(2, ((1,),))),
    1: Entry("S_{1,j}", BracketDisplay(4, ((1,),))),
    2: Entry("S_{2,j}", BracketDisplay(12, ((3, -1), (-1,)))),
    3: Entry("S_{3,j}", BracketDisplay(24, ((9, -8, 2), (-8, 4), (2,)))),
    4: Entry("S_{4,j}", BracketDisplay(20, ((15, -25, 15, -3), (-25, 30, -10), (15, -9), (-3,)))),
    5: Entry(
        "S_{5,j}",
        BracketDisplay(24, ((45, -120, 127, -60, 10), (-120, 254, -192, 50), (127, -180, 70), (-60, 40), (10,))),
    ),
    6: Entry(
        "S_{6,j}",
        BracketDisplay(840, _S6_ROWS + ((-24472, -38696, 16584), (9674, -6910), (-1382,))),
        TYPO,
        BracketDisplay(840, _S6_ROWS + ((-24472, 38696, -16584), (9674, -6910), (-1382,))),
        "t^2 bracket printed as -(24472j^2+38696j-16584), breaking the sign pattern",
    ),
    7: Entry(
        "S_{7,j}",
        BracketDisplay(
            48,
            (
                (945, -5040, 11620, -14400, 9818, -3360, 420),
                (-5040, 23240, -44640, 43520, -21024, 3920),
                (11620, -43200, 63156, -42048, 10584),
                (-14400, 39272, -37824, 12600),
                (9818, -16800, 7700),
                (-3360, 2520),
                (420,),
            ),
        ),
    ),
}

# (c_k, v_k descending in n) from the p_{k,k-1}(n) list
VENN: dict[int, tuple[Fraction, tuple[Fraction, ...]]] = {
    1: (Fraction(1), (Fraction(1),)),
    2: (Fraction(2, 3), tuple(map(Fraction, (1, 1, 1)))),
    3: (Fraction(4, 3), tuple(map(Fraction, (1, 2, 3, 2, 1)))),
    4: (
        Fraction(24, 5),
        (Fraction(1), Fraction(3), Fraction(19, 3), Fraction(23, 3), Fraction(19, 3), Fraction(3), Fraction(1)),
    ),
    5: (Fraction(80, 3), tuple(map(Fraction, (1, 4, 11, 19, 23, 19, 11, 4, 1)))),
    6: (Fraction(22112, 105), tuple(map(Fraction, (1, 5, 17, 38, 61, 71, 61, 38, 17, 5, 1)))),
}

# the banded determinant's last two rows as printed mix k-1 and 2k+1-2c entries
DETERMINANT_AS_PRINTED = Entry(
    "A_q^(k) determinant",
    "last two rows as printed",
    TYPO,
    "uniform band C(k-q+i, 2(i-c)+3)",
    "printed last rows disagree with the triangular system; the uniform band agrees",
)

KNOWN_TYPOS: tuple[Entry, ...] = (FAULHABER[6], FAULHABER[7], BRACKETS[6], DETERMINANT_AS_PRINTED)
