"""Pages, curve words, Dehn twists and open books.

A page of genus ``g`` with ``h + 1`` boundary components carries the curves
alpha_1..alpha_g and beta_1..beta_{g+h}.  A curve on the page is recorded as a
cyclic word in these letters.  Words are taken on trust: nothing here checks
that a word is realised by an embedded simple closed curve, that is the
caller's responsibility.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

ALPHA = "alpha"
BETA = "beta"
HIGH = "high"
LOW = "low"

_TOKEN = re.compile(r"^([aAbB])([1-9][0-9]*)$")


class PageModelError(ValueError):
    pass


class IndexOutOfRange(PageModelError):
    pass


class EmptyWord(PageModelError):
    pass


class TokenError(PageModelError):
    pass


class ZeroHomologyWarning(UserWarning):
    """The curve is null-homologous on the page and may be separating."""


@dataclass(frozen=True)
class PageSignature:
    genus: int
    holes: int

    def __post_init__(self):
        if self.genus < 0 or self.holes < 0:
            raise PageModelError("genus and holes must be non-negative")
        if self.genus + self.holes < 1:
            raise PageModelError("a disc page carries no usable closed curve (need g + h >= 1)")

    @property
    def arcs(self) -> int:
        """Number of b-arcs, g + h."""
        return self.genus + self.holes

    @property
    def rank(self) -> int:
        """Rank of the first homology of the page, 2g + h."""
        return 2 * self.genus + self.holes


@dataclass(frozen=True, order=True)
class Letter:
    family: str
    index: int
    exponent: int = 1

    def __post_init__(self):
        if self.family not in (ALPHA, BETA):
            raise PageModelError(f"unknown letter family {self.family!r}")
        if self.exponent not in (1, -1):
            raise PageModelError("letter exponent must be +1 or -1")
        if self.index < 1:
            raise IndexOutOfRange(f"letter index must be positive, got {self.index}")

    @classmethod
    def parse(cls, token: str) -> "Letter":
        m = _TOKEN.match(token)
        if m is None:
            raise TokenError(f"bad letter token {token!r}")
        c, idx = m.groups()
        return cls(ALPHA if c in "aA" else BETA, int(idx), 1 if c.islower() else -1)

    @property
    def token(self) -> str:
        c = "a" if self.family == ALPHA else "b"
        return (c if self.exponent == 1 else c.upper()) + str(self.index)

    def inverse(self) -> "Letter":
        return Letter(self.family, self.index, -self.exponent)

    def __str__(self):
        return self.token


@dataclass(frozen=True)
class CurveWord:
    """Non-empty cyclic word; the last letter is adjacent to the first."""

    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise EmptyWord("curve word is empty")
        for x in letters:
            if not isinstance(x, Letter):
                raise TypeError(f"expected Letter, got {type(x).__name__}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, tokens: str | Iterable[str]) -> "CurveWord":
        if isinstance(tokens, str):
            tokens = tokens.split()
        return cls(tuple(Letter.parse(t) for t in tokens))

    def tokens(self) -> list[str]:
        return [x.token for x in self.letters]

    def reverse(self) -> "CurveWord":
        """Same curve with the opposite orientation."""
        return CurveWord(tuple(x.inverse() for x in reversed(self.letters)))

    def rotate(self, k: int) -> "CurveWord":
        k %= len(self.letters)
        return CurveWord(self.letters[k:] + self.letters[:k])

    def __add__(self, other: "CurveWord") -> "CurveWord":
        return CurveWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __str__(self):
        return " ".join(self.tokens())


@dataclass(frozen=True)
class DehnTwist:
    curve: CurveWord
    sign: int = 1
    power: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise PageModelError("twist sign must be +1 or -1")
        if not isinstance(self.power, int) or self.power < 1:
            raise PageModelError("twist power must be a positive integer")


@dataclass(frozen=True)
class OpenBookSpec:
    """Page plus monodromy; ``monodromy[0]`` is applied first."""

    page: PageSignature
    monodromy: tuple = ()

    def __post_init__(self):
        monodromy = tuple(self.monodromy)
        for tw in monodromy:
            validate_word(self.page, tw.curve)
        object.__setattr__(self, "monodromy", monodromy)


@dataclass(frozen=True)
class KnotOnPage:
    word: CurveWord
    level: str = HIGH

    def __post_init__(self):
        if self.level not in (HIGH, LOW):
            raise PageModelError(f"knot level must be 'high' or 'low', got {self.level!r}")


@dataclass(frozen=True)
class HomologyClassVector:
    """Coefficients of a curve in the alpha/beta basis of the page homology."""

    a_coeffs: tuple
    b_coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "a_coeffs", tuple(int(x) for x in self.a_coeffs))
        object.__setattr__(self, "b_coeffs", tuple(int(x) for x in self.b_coeffs))
        if len(self.a_coeffs) > len(self.b_coeffs):
            raise PageModelError("a_coeffs cannot be longer than b_coeffs")

    @classmethod
    def zero(cls, page: PageSignature) -> "HomologyClassVector":
        return cls((0,) * page.genus, (0,) * page.arcs)

    @property
    def padded_a(self) -> tuple:
        """a-coefficients extended by zeros to the length of b_coeffs."""
        return self.a_coeffs + (0,) * (len(self.b_coeffs) - len(self.a_coeffs))

    def is_zero(self) -> bool:
        return not any(self.a_coeffs) and not any(self.b_coeffs)

    def __add__(self, other):
        return HomologyClassVector(
            tuple(x + y for x, y in zip(self.a_coeffs, other.a_coeffs)),
            tuple(x + y for x, y in zip(self.b_coeffs, other.b_coeffs)),
        )

    def __neg__(self):
        return HomologyClassVector(tuple(-x for x in self.a_coeffs), tuple(-x for x in self.b_coeffs))

    def __rmul__(self, k: int):
        return HomologyClassVector(tuple(k * x for x in self.a_coeffs), tuple(k * x for x in self.b_coeffs))


def validate_word(page: PageSignature, word: CurveWord | Sequence[Letter]) -> CurveWord:
    """Return ``word`` as a CurveWord if all its letters exist on ``page``."""
    if not isinstance(word, CurveWord):
        word = CurveWord(tuple(word))
    for pos, x in enumerate(word):
        if x.family == ALPHA and x.index > page.genus:
            raise IndexOutOfRange(
                f"letter {x.token} at position {pos}: alpha index exceeds genus {page.genus}"
            )
        if x.index > page.arcs:
            raise IndexOutOfRange(
                f"letter {x.token} at position {pos}: index exceeds g + h = {page.arcs}"
            )
    return word


def homology_class(page: PageSignature, word: CurveWord, warn: bool = True) -> HomologyClassVector:
    """Exponent sums of the alpha_k and beta_k letters of ``word``."""
    word = validate_word(page, word)
    a = [0] * page.genus
    b = [0] * page.arcs
    for x in word:
        if x.family == ALPHA:
            a[x.index - 1] += x.exponent
        else:
            b[x.index - 1] += x.exponent
    klass = HomologyClassVector(tuple(a), tuple(b))
    if warn and klass.is_zero():
        warnings.warn(
            f"curve {word} is null-homologous on the page; it may be separating",
            ZeroHomologyWarning,
            stacklevel=2,
        )
    return klass
