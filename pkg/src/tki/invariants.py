"""Closed-form polynomial invariants of torus knots.

All formulas are evaluated in the unified variables ``(a, q)`` where every
exponent is an integer. The natural variables are ``a`` and ``z = q - 1/q``.

Each closed form is a finite sum over ``beta + gamma + 1 = n``. Summands are
assembled as :class:`~tki.qcalc.Fraction` objects with factored
denominators, added over a common denominator, and divided exactly once at
the end. A nonzero remainder there means an identity failed, so it is raised
rather than hidden.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from tki.laurent import (
    ONE,
    Q,
    A,
    Z,
    LaurentPoly2,
    NaturalPoly,
    derivative_a,
    exact_div,
    exact_div_int,
    to_natural_z,
)
from tki.qcalc import BracketFactor, Fraction, bracket, bracket_product_factors, fraction_sum, qfactorial

__all__ = [
    "TorusKnot",
    "InvariantResult",
    "NotCoprime",
    "canonicalize",
    "kauffman_torus",
    "kauffman_neg",
    "kauffman_neg_direct",
    "homfly_torus",
    "homfly_from_kauffman",
    "alexander_from_homfly",
    "alexander_via_kauffman_derivative",
    "qtilde",
    "specialize",
    "compute",
    "KINDS",
]

KINDS = ("homfly", "kauffman", "kauffman-neg", "alexander", "qtilde")


class NotCoprime(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TorusKnot:
    n: int
    m: int

    @property
    def is_unknot(self) -> bool:
        return abs(self.n) <= 1 or abs(self.m) <= 1

    def swapped(self) -> "TorusKnot":
        return canonicalize(self.m, self.n)

    def __str__(self):
        return f"{{{self.n},{self.m}}}"


def canonicalize(n: int, m: int) -> TorusKnot:
    """Representative with ``n >= 1`` of the knot ``{n, m}``.

    ``{n, m}`` and ``{-n, -m}`` are the same knot. ``{0, +-1}`` is the unknot
    and maps to ``{1, 0}``.
    """
    n, m = int(n), int(m)
    if gcd(n, m) != 1:
        raise NotCoprime(f"({n}, {m}) not coprime")
    if n == 0:
        return TorusKnot(1, 0)
    if n < 0:
        n, m = -n, -m
    return TorusKnot(n, m)


def _as_knot(k) -> TorusKnot:
    if isinstance(k, TorusKnot):
        return k
    return canonicalize(*k)


def _splits(n: int):
    for gamma in range(n):
        yield n - 1 - gamma, gamma


def _summand(n: int, m: int, beta: int, gamma: int, mixed_sign: int) -> list[Fraction]:
    """Fractions of ``q^{-m(b-g)} a^{-m} (-1)^g (1/[n] +- 1/[b-g;1]) prod/([b]![g]!)``."""
    coeff = LaurentPoly2.monomial((-1) ** gamma, -m, -m * (beta - gamma))
    den = qfactorial(beta) + qfactorial(gamma)
    prod = bracket_product_factors(gamma, beta)
    with_n = Fraction.from_factors(coeff, prod, den + Counter({BracketFactor(n): 1}))
    # the mixed denominator [b-g;1] is one of the product factors: drop it
    rest = prod[:beta] + prod[beta + 1 :]  # prod[beta] is j = beta - gamma
    mixed = Fraction.from_factors(coeff.scale(mixed_sign), rest, den)
    return [with_n, mixed]


@lru_cache(maxsize=None)
def _kauffman(n: int, m: int, neg: bool) -> LaurentPoly2:
    sign = -1 if neg else 1
    parts: list[Fraction] = []
    for beta, gamma in _splits(n):
        parts.extend(_summand(n, m, beta, gamma, sign))
    if n % 2 == 0:
        parts.append(Fraction(LaurentPoly2.const(sign), Counter()))
    total = fraction_sum(parts)
    one = bracket(1)
    # prefactor  +-a^{nm} [1] / ([1] +- (a - 1/a))
    lead = Fraction.from_factors(
        LaurentPoly2.monomial(sign, n * m, 0), [BracketFactor(1)], total.den
    )
    num = lead.num * total.num
    return Fraction(num, lead.den).value(extra=one + (A - A**-1).scale(sign))


def kauffman_torus(k) -> LaurentPoly2:
    """Dubrovnik polynomial ``Y(a, z)`` of ``{n, m}`` in the variables ``(a, q)``."""
    k = _as_knot(k)
    return _kauffman(k.n, k.m, False)


def kauffman_neg(k) -> LaurentPoly2:
    """``Y(a, -z)``, obtained by the substitution ``q -> 1/q``."""
    return kauffman_torus(k).invert_q()


def kauffman_neg_direct(k) -> LaurentPoly2:
    """``Y(a, -z)`` assembled from its own closed form (the fundamental of Sp)."""
    k = _as_knot(k)
    return _kauffman(k.n, k.m, True)


@lru_cache(maxsize=None)
def _homfly(n: int, m: int) -> LaurentPoly2:
    parts = []
    for beta, gamma in _splits(n):
        coeff = LaurentPoly2.monomial((-1) ** gamma, 0, -m * (beta - gamma))
        den = qfactorial(beta) + qfactorial(gamma) + Counter({BracketFactor(n): 1})
        parts.append(Fraction.from_factors(coeff, bracket_product_factors(gamma, beta), den))
    total = fraction_sum(parts)
    lead = Fraction.from_factors(
        LaurentPoly2.monomial(1, m * (n - 1), 0), [BracketFactor(1)], total.den
    )
    return Fraction(lead.num * total.num, lead.den).value(extra=A - A**-1)


def homfly_torus(k) -> LaurentPoly2:
    """HOMFLY polynomial ``P(a, z)`` of ``{n, m}`` in the variables ``(a, q)``."""
    k = _as_knot(k)
    return _homfly(k.n, k.m)


def homfly_from_kauffman(ypos: LaurentPoly2, yneg: LaurentPoly2) -> LaurentPoly2:
    """``(Y+ + Y-)/2 + z (Y+ - Y-) / (2 (a - 1/a))`` with both divisions exact."""
    odd = exact_div(Z * (ypos - yneg), A - A**-1)
    return exact_div_int(ypos + yneg + odd, 2)


def alexander_from_homfly(k) -> NaturalPoly:
    return to_natural_z(homfly_torus(k).at_a1())


def alexander_via_kauffman_derivative(k) -> NaturalPoly:
    """``1 + z/4 * d/da (Y(a,z) - Y(a,-z))`` at ``a = 1``."""
    k = _as_knot(k)
    d = derivative_a(kauffman_torus(k) - kauffman_neg(k)).at_a1()
    return to_natural_z(ONE + exact_div_int(Z * d, 4))


def qtilde(k) -> NaturalPoly:
    """``Y(1, z)``."""
    return to_natural_z(kauffman_torus(k).at_a1())


def specialize(f: LaurentPoly2, group: str, N: int) -> LaurentPoly2:
    """Set ``a = q^(N-1)`` for SO(N) or ``a = q^N`` for SU(N)."""
    if N < 2:
        raise ValueError("N must be at least 2")
    if group == "so":
        return f.a_to_qpow(N - 1)
    if group == "su":
        return f.a_to_qpow(N)
    raise ValueError(f"unknown group {group!r}")


@dataclass(frozen=True)
class InvariantResult:
    knot: TorusKnot
    kind: str
    poly_aq: LaurentPoly2
    poly_az: NaturalPoly | None

    def to_json_obj(self) -> dict:
        return {
            "knot": [self.knot.n, self.knot.m],
            "kind": self.kind,
            "aq": self.poly_aq.to_json_obj(),
            "az": None if self.poly_az is None else self.poly_az.to_json_obj(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


def compute(k, kind: str) -> InvariantResult:
    k = _as_knot(k)
    if kind == "homfly":
        aq = homfly_torus(k)
    elif kind == "kauffman":
        aq = kauffman_torus(k)
    elif kind == "kauffman-neg":
        aq = kauffman_neg(k)
    elif kind == "alexander":
        az = alexander_from_homfly(k)
        return InvariantResult(k, kind, az.expand(), az)
    elif kind == "qtilde":
        az = qtilde(k)
        return InvariantResult(k, kind, az.expand(), az)
    else:
        raise ValueError(f"unknown invariant {kind!r}")
    try:
        az = to_natural_z(aq)
    except ValueError:
        az = None
    return InvariantResult(k, kind, aq, az)
