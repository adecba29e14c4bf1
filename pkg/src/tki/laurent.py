"""Sparse Laurent polynomials in two generators ``a`` and ``q`` over the integers.

Every invariant in this package lives in ``Z[a, 1/a, q, 1/q]``. Coefficients are
Python ints, so nothing here ever touches floating point except
:meth:`LaurentPoly2.eval_complex`, which converts at the very last moment.

The natural knot variables are ``a`` and ``z = q - 1/q``; :class:`NaturalPoly`
holds polynomials in that presentation.
"""

from __future__ import annotations

import json
import re
from typing import Mapping

from tki import _kernels

__all__ = [
    "LaurentPoly2",
    "NaturalPoly",
    "A",
    "Q",
    "ONE",
    "ZERO",
    "Z",
    "exact_div",
    "exact_div_int",
    "derivative_a",
    "to_natural_z",
    "substitute",
    "parse",
    "parse_natural",
    "from_json",
    "natural_from_json",
    "NotDivisible",
    "NotExpressible",
    "ParseError",
    "ZeroBase",
]


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""


class NotExpressible(ValueError):
    """Raised when a polynomial has no presentation in ``z = q - 1/q``."""


class ZeroBase(ZeroDivisionError):
    """Raised when a Laurent polynomial is evaluated at ``a = 0`` or ``q = 0``."""


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _clean(terms: Mapping[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    return {k: int(c) for k, c in terms.items() if c}


class LaurentPoly2:
    """Immutable element of ``Z[a, 1/a, q, 1/q]``.

    Terms are stored as ``{(e_a, e_q): coefficient}`` with zero coefficients
    dropped, so equal polynomials have identical term maps.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self._t = _clean(terms) if terms else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly2":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._t = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "LaurentPoly2":
        return cls._raw({(0, 0): int(c)} if c else {})

    @classmethod
    def monomial(cls, c: int = 1, ea: int = 0, eq: int = 0) -> "LaurentPoly2":
        return cls._raw({(ea, eq): int(c)} if c else {})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def a_degrees(self) -> tuple[int, int]:
        """(min, max) exponent of ``a``; raises on the zero polynomial."""
        eas = [k[0] for k in self._t]
        return min(eas), max(eas)

    def q_degrees(self) -> tuple[int, int]:
        eqs = [k[1] for k in self._t]
        return min(eqs), max(eqs)

    def depends_on_a(self) -> bool:
        return any(k[0] for k in self._t)

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self._t.values()), default=0)

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly2 | None":
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, int):
            return LaurentPoly2.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly2._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, k: int) -> "LaurentPoly2":
        if not k:
            return ZERO
        return LaurentPoly2._raw({e: c * k for e, c in self._t.items()})

    def shift(self, ea: int = 0, eq: int = 0, c: int = 1) -> "LaurentPoly2":
        """Multiply by the monomial ``c * a**ea * q**eq``."""
        if not c:
            return ZERO
        return LaurentPoly2._raw(
            {(k[0] + ea, k[1] + eq): v * c for k, v in self._t.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return LaurentPoly2._raw(_kernels.multiply(self._t, other._t))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative powers exist only for monomials")
            (ea, eq), c = next(iter(self._t.items()))
            if c not in (1, -1):
                raise ValueError("monomial coefficient is not a unit")
            return LaurentPoly2.monomial(c ** (-e), ea * e, eq * e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- substitutions ----------------------------------------------------

    def invert_q(self) -> "LaurentPoly2":
        """q -> 1/q; on polynomials in z this is z -> -z."""
        return LaurentPoly2._raw({(ea, -eq): c for (ea, eq), c in self._t.items()})

    def negate_q(self) -> "LaurentPoly2":
        """q -> -q."""
        return LaurentPoly2._raw(
            {(ea, eq): (-c if eq & 1 else c) for (ea, eq), c in self._t.items()}
        )

    def invert_a(self) -> "LaurentPoly2":
        return LaurentPoly2._raw({(-ea, eq): c for (ea, eq), c in self._t.items()})

    def a_to_qpow(self, e: int) -> "LaurentPoly2":
        """a -> q**e; the result has no a-dependence."""
        out: dict = {}
        for (ea, eq), c in self._t.items():
            k = (0, eq + e * ea)
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out)

    def at_a1(self) -> "LaurentPoly2":
        return self.a_to_qpow(0)

    def eval_complex(self, a0: complex, q0: complex) -> complex:
        """Numeric value at ``a = a0``, ``q = q0``."""
        if a0 == 0 or q0 == 0:
            raise ZeroBase("Laurent polynomial evaluated at a zero base")
        if not self._t:
            return 0j
        a0, q0 = complex(a0), complex(q0)
        rows = _rows(self._t)
        vals = {}
        for ea, row in rows.items():
            lo, hi = min(row), max(row)
            v = 0j
            for eq in range(hi, lo - 1, -1):
                v = v * q0 + float(row.get(eq, 0))
            vals[ea] = v * q0**lo
        eas = sorted(vals, reverse=True)
        total = 0j
        for prev, ea in zip([eas[0]] + eas, eas):
            total = total * a0 ** (prev - ea) + vals[ea]
        return total * a0 ** eas[-1]

    # -- text / json ------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, int], int]]:
        """Terms in (e_a, e_q) lexicographic order."""
        return sorted(self._t.items())

    def __str__(self):
        return _format(self._t, ("a", "q"))

    def __repr__(self):
        return f"LaurentPoly2({str(self)!r})"

    def to_json_obj(self) -> dict:
        return {
            "vars": ["a", "q"],
            "terms": [{"a": ea, "q": eq, "c": str(c)} for (ea, eq), c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


ZERO = LaurentPoly2()
ONE = LaurentPoly2.const(1)
A = LaurentPoly2.monomial(1, 1, 0)
Q = LaurentPoly2.monomial(1, 0, 1)
#: z = q - 1/q in the (a, q) presentation
Z = Q - Q ** -1


class NaturalPoly:
    """Polynomial in ``a`` (Laurent) and ``z`` (nonnegative powers only)."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        t = _clean(terms) if terms else {}
        if any(ez < 0 for _, ez in t):
            raise ValueError("z exponents must be nonnegative")
        self._t = t

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, int):
            other = NaturalPoly({(0, 0): other})
        if not isinstance(other, NaturalPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def z_degree(self) -> int:
        return max((ez for _, ez in self._t), default=0)

    def depends_on_a(self) -> bool:
        return any(ea for ea, _ in self._t)

    def expand(self) -> LaurentPoly2:
        """Substitute ``z = q - 1/q`` back into the (a, q) presentation."""
        out = ZERO
        zp = _z_powers(self.z_degree())
        for (ea, ez), c in self._t.items():
            out = out + zp[ez].shift(ea=ea, c=c)
        return out

    def sorted_terms(self):
        return sorted(self._t.items())

    def __str__(self):
        return _format(self._t, ("a", "z"))

    def __repr__(self):
        return f"NaturalPoly({str(self)!r})"

    def to_json_obj(self) -> dict:
        return {
            "vars": ["a", "z"],
            "terms": [{"a": ea, "z": ez, "c": str(c)} for (ea, ez), c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


_ZPOW: list[LaurentPoly2] = [ONE]


def _z_powers(d: int) -> list[LaurentPoly2]:
    while len(_ZPOW) <= d:
        _ZPOW.append(_ZPOW[-1] * Z)
    return _ZPOW


# -- division ---------------------------------------------------------------


def _rows(t: Mapping[tuple[int, int], int]) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, int]] = {}
    for (ea, eq), c in t.items():
        rows.setdefault(ea, {})[eq] = c
    return rows


def exact_div(f: LaurentPoly2, g: LaurentPoly2 | int) -> LaurentPoly2:
    """Return ``h`` with ``f == g * h`` or raise :class:`NotDivisible`.

    Division runs top-down in ``a``; each step divides the leading ``a``-row
    of the remainder by the leading ``a``-row of ``g`` as univariate Laurent
    polynomials in ``q``.
    """
    if isinstance(g, int):
        return exact_div_int(f, g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return ZERO
    if g.is_monomial():
        (ga, gq), gc = next(iter(g._t.items()))
        out = {}
        for (ea, eq), c in f._t.items():
            v, rem = divmod(c, gc)
            if rem:
                raise NotDivisible("coefficient not divisible")
            out[(ea - ga, eq - gq)] = v
        return LaurentPoly2._raw(out)
    return LaurentPoly2._raw(_kernels.divide(f._t, g._t))


def exact_div_int(f: LaurentPoly2, k: int) -> LaurentPoly2:
    if k == 0:
        raise ZeroDivisionError("division by zero")
    out = {}
    for e, c in f._t.items():
        v, rem = divmod(c, k)
        if rem:
            raise NotDivisible(f"coefficient {c} not divisible by {k}")
        out[e] = v
    return LaurentPoly2._raw(out)


def derivative_a(f: LaurentPoly2) -> LaurentPoly2:
    return LaurentPoly2._raw({(ea - 1, eq): c * ea for (ea, eq), c in f._t.items() if ea})


def to_natural_z(f: LaurentPoly2) -> NaturalPoly:
    """Rewrite ``f(a, q)`` as ``g(a, z)`` with ``z = q - 1/q``.

    Each ``a``-row is peeled from its top ``q``-degree against powers of ``z``.
    """
    out: dict[tuple[int, int], int] = {}
    for ea, row in _rows(f._t).items():
        r = dict(row)
        while r:
            d = max(r)
            if d < 0:
                raise NotExpressible(f"a^{ea} coefficient is not a polynomial in z")
            c = r[d]
            out[(ea, d)] = c
            for (_, eq), cz in _z_powers(d)[d]._t.items():
                v = r.get(eq, 0) - c * cz
                if v:
                    r[eq] = v
                else:
                    r.pop(eq, None)
    return NaturalPoly(out)


def substitute(f: LaurentPoly2, *, a=None, q=None):
    """Substitute for the generators.

    ``a`` and ``q`` may each be a monomial :class:`LaurentPoly2` with unit
    coefficient (``Q**-1``, ``-Q``, ``A**-1``, ``Q**e``, ``ONE``); the result is then
    a :class:`LaurentPoly2`. If either is a number, both must be, and the
    result is complex.
    """
    numeric = [v for v in (a, q) if v is not None and not isinstance(v, LaurentPoly2)]
    if numeric:
        if a is None or q is None or len(numeric) != 2:
            raise ValueError("numeric substitution needs both a and q as numbers")
        return f.eval_complex(a, q)
    a_img = A if a is None else a
    q_img = Q if q is None else q
    for img in (a_img, q_img):
        if not img.is_monomial() or next(iter(img._t.values())) not in (1, -1):
            raise ValueError("substitution images must be signed monomials")
    (aa, aq), ac = next(iter(a_img._t.items()))
    (qa, qq), qc = next(iter(q_img._t.items()))
    out: dict = {}
    for (ea, eq), c in f._t.items():
        k = (ea * aa + eq * qa, ea * aq + eq * qq)
        sign = (ac if ea & 1 else 1) * (qc if eq & 1 else 1)
        out[k] = out.get(k, 0) + sign * c
    return LaurentPoly2(out)


# -- text format ------------------------------------------------------------


def _format(t: Mapping[tuple[int, int], int], names: tuple[str, str]) -> str:
    if not t:
        return "0"
    # descending in the first variable, ascending in the second
    keys = sorted(t, key=lambda k: (-k[0], k[1]))
    parts = []
    for i, k in enumerate(keys):
        c = t[k]
        mons = [
            n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e
        ]
        mag = abs(c)
        if not mons:
            body = str(mag)
        elif mag == 1:
            body = "*".join(mons)
        else:
            body = "*".join([str(mag)] + mons)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([aqz])|(\^)|(\*)|([+-]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        kind = ("int", "var", "^", "*", "sign")[m.lastindex - 1]
        toks.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def _parse_terms(text: str, allowed: str) -> list[tuple[int, dict[str, int]]]:
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, got {tok[1] or 'end of input'!r}", tok[2])
        i += 1
        return tok

    def signed_int():
        nonlocal i
        sign = 1
        if peek()[0] == "sign":
            sign = -1 if take("sign")[1] == "-" else 1
        return sign * int(take("int")[1])

    def factor(powers):
        tok = take("var")
        if tok[1] not in allowed:
            raise ParseError(f"variable {tok[1]!r} not allowed here", tok[2])
        e = 1
        if peek()[0] == "^":
            take("^")
            e = signed_int()
        powers[tok[1]] = powers.get(tok[1], 0) + e

    terms = []
    sign = 1
    if peek()[0] == "sign":
        sign = -1 if take("sign")[1] == "-" else 1
    while True:
        tok = peek()
        coeff = None
        powers: dict[str, int] = {}
        if tok[0] == "int":
            coeff = int(take("int")[1])
            if peek()[0] == "*":
                take("*")
                factor(powers)
            elif peek()[0] == "var":
                factor(powers)
        elif tok[0] == "var":
            factor(powers)
        else:
            raise ParseError("expected a term", tok[2])
        while peek()[0] == "*":
            take("*")
            factor(powers)
        terms.append((sign * (1 if coeff is None else coeff), powers))
        tok = peek()
        if tok[0] == "end":
            break
        if tok[0] != "sign":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        sign = -1 if take("sign")[1] == "-" else 1
    return terms


def parse(text: str) -> LaurentPoly2:
    """Parse the text form; ``z`` is accepted and expanded as ``q - 1/q``."""
    out = ZERO
    for c, p in _parse_terms(text, "aqz"):
        ez = p.get("z", 0)
        if ez < 0:
            raise ParseError("negative power of z", 0)
        mono = LaurentPoly2.monomial(c, p.get("a", 0), p.get("q", 0))
        out = out + (mono * _z_powers(ez)[ez] if ez else mono)
    return out


def parse_natural(text: str) -> NaturalPoly:
    out: dict[tuple[int, int], int] = {}
    for c, p in _parse_terms(text, "az"):
        k = (p.get("a", 0), p.get("z", 0))
        if k[1] < 0:
            raise ParseError("negative power of z", 0)
        out[k] = out.get(k, 0) + c
    return NaturalPoly(out)


def _json_terms(obj, second: str) -> dict[tuple[int, int], int]:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if obj.get("vars") != ["a", second]:
        raise ValueError(f"expected vars ['a', '{second}']")
    out: dict = {}
    for term in obj["terms"]:
        k = (int(term["a"]), int(term[second]))
        out[k] = out.get(k, 0) + int(term["c"])
    return out


def from_json(obj) -> LaurentPoly2:
    return LaurentPoly2(_json_terms(obj, "q"))


def natural_from_json(obj) -> NaturalPoly:
    return NaturalPoly(_json_terms(obj, "z"))

