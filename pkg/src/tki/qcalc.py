"""q-numbers, q-factorials and bracket products with factored denominators.

In the unified variables ``[p] = q**p - q**-p`` and the mixed bracket is
``[p; y] = q**p a**y - q**-p a**-y``. Denominators are kept as multisets of
bracket factors and only expanded when the final quotient is taken.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from tki.laurent import ONE, ZERO, LaurentPoly2, exact_div

__all__ = [
    "BracketFactor",
    "Fraction",
    "bracket",
    "qfactorial",
    "bracket_product",
    "bracket_product_factors",
    "fraction_sum",
    "NegativeArgument",
    "ZeroDenominatorFactor",
]


class NegativeArgument(ValueError):
    pass


class ZeroDenominatorFactor(ZeroDivisionError):
    pass


@dataclass(frozen=True, order=True)
class BracketFactor:
    """``[p]`` when ``y == 0``, otherwise the mixed bracket ``[p; y]``."""

    p: int
    y: int = 0

    @property
    def kind(self) -> str:
        return "pure-q" if self.y == 0 else "mixed"

    @property
    def is_zero(self) -> bool:
        return self.p == 0 and self.y == 0

    def canonical(self) -> tuple[int, "BracketFactor"]:
        """(sign, factor) with ``self == sign * factor`` and a positive leading exponent."""
        if self.y < 0 or (self.y == 0 and self.p < 0):
            return -1, BracketFactor(-self.p, -self.y)
        return 1, self

    def expand(self) -> LaurentPoly2:
        return bracket(self.p, self.y)


def bracket(p: int, y: int = 0) -> LaurentPoly2:
    if p == 0 and y == 0:
        return ZERO
    return LaurentPoly2({(y, p): 1, (-y, -p): -1})


def qfactorial(p: int) -> Counter:
    """Factors of ``[p]! = [p][p-1]...[1]``; empty for ``p == 0``."""
    if p < 0:
        raise NegativeArgument(f"q-factorial of negative integer {p}")
    return Counter(BracketFactor(k) for k in range(1, p + 1))


def bracket_product_factors(gamma: int, beta: int, shift: int = 0) -> list[BracketFactor]:
    return [BracketFactor(j + shift, 1) for j in range(-gamma, beta + 1)]


def bracket_product(gamma: int, beta: int, shift: int = 0) -> LaurentPoly2:
    """``prod_{j=-gamma}^{beta} (q^(j+shift) a - q^-(j+shift) a^-1)``."""
    out = ONE
    for f in bracket_product_factors(gamma, beta, shift):
        out = out * f.expand()
    return out


def _expand_all(factors: Counter) -> LaurentPoly2:
    out = ONE
    for f, mult in sorted(factors.items()):
        e = f.expand()
        for _ in range(mult):
            out = out * e
    return out


@dataclass(frozen=True)
class Fraction:
    """``num / prod(den)`` with the denominator held as a multiset of brackets."""

    num: LaurentPoly2
    den: Counter = field(default_factory=Counter)

    def __post_init__(self):
        sign = 1
        canon: Counter = Counter()
        for f, mult in self.den.items():
            if mult <= 0:
                continue
            if f.is_zero:
                raise ZeroDenominatorFactor("zero bracket in a denominator")
            s, c = f.canonical()
            if s < 0 and mult % 2:
                sign = -sign
            canon[c] += mult
        object.__setattr__(self, "den", canon)
        if sign < 0:
            object.__setattr__(self, "num", -self.num)

    @classmethod
    def from_factors(
        cls, coeff: LaurentPoly2, num_factors: Iterable[BracketFactor], den: Counter
    ) -> "Fraction":
        """Build ``coeff * prod(num_factors) / prod(den)``, cancelling shared factors.

        Only numerator factors that literally appear (up to sign) in ``den``
        are cancelled; nothing else is simplified.
        """
        den = Counter(den)
        num = coeff
        for f in num_factors:
            s, c = f.canonical()
            if den[c] > 0:
                den[c] -= 1
                if s < 0:
                    num = -num
            else:
                num = num * f.expand()
        return cls(num, +den)

    def expanded_den(self) -> LaurentPoly2:
        return _expand_all(self.den)

    def value(self, extra: LaurentPoly2 | None = None) -> LaurentPoly2:
        """Exact quotient ``num / (prod(den) * extra)``.

        Divides by one factor at a time; if the full product divides ``num``
        each step is exact.
        """
        out = self.num
        for f, mult in sorted(self.den.items(), reverse=True):
            e = f.expand()
            for _ in range(mult):
                out = exact_div(out, e)
        if extra is not None:
            out = exact_div(out, extra)
        return out

    def __add__(self, other: "Fraction") -> "Fraction":
        return fraction_sum([self, other])


def fraction_sum(terms: list[Fraction]) -> Fraction:
    """Sum over the multiset-maximum common denominator."""
    if not terms:
        return Fraction(ZERO, Counter())
    common: Counter = Counter()
    for t in terms:
        common |= t.den
    num = ZERO
    for t in terms:
        num = num + t.num * _expand_all(common - t.den)
    return Fraction(num, common)
