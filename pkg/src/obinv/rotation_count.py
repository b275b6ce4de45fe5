"""Rotation number of a page curve in the standard open book of S^3.

The count walks the cyclic word once.  Wherever two neighbouring letters
have different indices a marker is placed: ``r_u`` when the index goes up,
``r_d`` when it goes down.  Vertical tangencies are then tallied from the
letters on either side of each marker and from same-index neighbours.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .page_model import ALPHA, BETA, CurveWord, Letter

R_UP = "r_u"
R_DOWN = "r_d"


class PlanarRotationError(ValueError):
    pass


class MixedSigns(PlanarRotationError):
    pass


class OutOfUnitRange(PlanarRotationError):
    pass


class AllZero(PlanarRotationError):
    pass


@dataclass(frozen=True)
class TangencyCount:
    lambda_plus: int
    rho_plus: int

    @property
    def r(self) -> int:
        return self.rho_plus - self.lambda_plus


def _is(x: Letter, family: str, exponent: int) -> bool:
    return x.family == family and x.exponent == exponent


def _adjacencies(word: CurveWord):
    n = len(word)
    for k in range(n):
        yield word[k], word[(k + 1) % n]


def index_change_markers(word: CurveWord) -> list:
    """The word with ``R_UP`` / ``R_DOWN`` inserted at every index change.

    The wrap-around from the last letter to the first counts, so a marker may
    trail the final letter.
    """
    out = []
    for x, y in _adjacencies(word):
        out.append(x)
        if y.index > x.index:
            out.append(R_UP)
        elif y.index < x.index:
            out.append(R_DOWN)
    return out


def rotation_word_count(word: CurveWord) -> tuple[TangencyCount, int]:
    lam = rho = 0
    for x, y in _adjacencies(word):
        if x.index == y.index:
            if _is(x, BETA, -1) and _is(y, ALPHA, -1):
                lam += 1
            elif _is(x, ALPHA, -1) and _is(y, BETA, -1):
                rho += 1
        elif y.index > x.index:
            if _is(x, BETA, -1):
                lam += 1
        else:
            if _is(y, ALPHA, -1):
                lam += 1
            if _is(x, ALPHA, -1) or _is(x, BETA, 1):
                rho += 1
    count = TangencyCount(lam, rho)
    return count, count.r


def rotation_number(word: CurveWord) -> int:
    return rotation_word_count(word)[1]


@dataclass(frozen=True)
class DualTangencyCount:
    lambda_minus: int
    rho_minus: int

    @property
    def r(self) -> int:
        return self.lambda_minus - self.rho_minus


def dual_tangency_count(word: CurveWord) -> DualTangencyCount:
    """Diagnostic tally of the opposite-direction tangencies.

    Not used by any result.  It can disagree with :func:`rotation_word_count`
    on valid simple curves; see the README.
    """
    lam = rho = 0
    for x, y in _adjacencies(word):
        if x.index == y.index:
            if _is(x, ALPHA, 1) and _is(y, BETA, 1):
                lam += 1
            elif _is(x, BETA, 1) and _is(y, ALPHA, 1):
                rho += 1
        elif y.index > x.index:
            if _is(x, ALPHA, 1):
                lam += 1
            if _is(y, ALPHA, 1):
                rho += 1
        else:
            if _is(y, BETA, 1):
                lam += 1
    return DualTangencyCount(lam, rho)


def planar_rotation(b_coeffs: Sequence[int]) -> int:
    """Shortcut for planar pages: sum(b) - sign(sum(b)).

    Every entry must be 0 or share a single sign of magnitude one.
    """
    b = [int(x) for x in b_coeffs]
    if any(abs(x) > 1 for x in b):
        raise OutOfUnitRange(f"entries must lie in {{-1, 0, 1}}: {b}")
    if 1 in b and -1 in b:
        raise MixedSigns(f"non-zero entries must share one sign: {b}")
    s = sum(b)
    if s == 0:
        raise AllZero("at least one entry must be non-zero")
    return s - (1 if s > 0 else -1)
