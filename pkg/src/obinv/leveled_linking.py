"""Linking numbers of curves sitting on different pages of the S^3 open book."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .page_model import ALPHA, BETA, HomologyClassVector, Letter


class EqualLevels(ValueError):
    pass


@dataclass(frozen=True)
class LeveledCurve:
    klass: HomologyClassVector
    level: Fraction

    def __post_init__(self):
        object.__setattr__(self, "level", Fraction(self.level))


def basis_linking(first: Letter, t, second: Letter, s) -> int:
    """Linking number of two signed basis curves at levels ``t`` and ``s``."""
    t, s = Fraction(t), Fraction(s)
    if t == s:
        raise EqualLevels("basis curves must sit on distinct levels")
    if t > s:
        first, second = second, first
    # first is now the lower curve
    sign = first.exponent * second.exponent
    if first.index != second.index:
        return 0
    if first.family == second.family:
        return -sign
    if first.family == ALPHA and second.family == BETA:
        return -sign
    return 0


def _basis_terms(klass: HomologyClassVector):
    for i, c in enumerate(klass.a_coeffs, start=1):
        if c:
            yield Letter(ALPHA, i), c
    for i, c in enumerate(klass.b_coeffs, start=1):
        if c:
            yield Letter(BETA, i), c


def linking_number(k1: LeveledCurve, k2: LeveledCurve) -> int:
    if k1.level == k2.level:
        raise EqualLevels("curves must sit on distinct levels")
    total = 0
    for x, cx in _basis_terms(k1.klass):
        for y, cy in _basis_terms(k2.klass):
            total += cx * cy * basis_linking(x, k1.level, y, k2.level)
    return total


def pairing(lower: HomologyClassVector, upper: HomologyClassVector) -> int:
    """sum_k (x_a y_a + x_a y_b + x_b y_b); minus the linking of lower with upper."""
    xa, xb = lower.padded_a, lower.b_coeffs
    ya, yb = upper.padded_a, upper.b_coeffs
    return sum(xa[k] * ya[k] + xa[k] * yb[k] + xb[k] * yb[k] for k in range(len(xb)))


def lower_upper_linking(lower: HomologyClassVector, upper: HomologyClassVector) -> int:
    return -pairing(lower, upper)


def page_framed_tb(klass: HomologyClassVector) -> int:
    """Linking of a page curve with its push-off to a slightly higher page."""
    return -pairing(klass, klass)
