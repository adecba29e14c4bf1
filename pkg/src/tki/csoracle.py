"""Finite-level numeric evaluation of torus knot invariants for SO(N).

The vacuum of the level-K theory is acted on by the torus knot operator
carrying the vector representation. Each resulting weight is folded back
into the fundamental alcove by (affine) Weyl reflections, picking up a sign
or vanishing on a wall, and the surviving labels are weighted by character
ratios at ``t0 = exp(2 pi i / K)``. After removing the framing phase and
dividing by the unknot, the result should equal the Dubrovnik polynomial at
``a = q0^(N-1)``, ``q = q0 = exp(i pi / K)``.

Exponents of ``t0`` are kept as exact rationals and reduced modulo ``K``
before the complex exponential is taken.
"""

from __future__ import annotations

import cmath
import json
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from tki.invariants import canonicalize, kauffman_torus
from tki.liealg import (
    AlgebraData,
    SingularDenominator,
    algebra_for_N,
    character_product_eval,
    inner,
    root_dot,
    weyl_reflect,
)

__all__ = [
    "CSContext",
    "ChamberState",
    "ComparisonReport",
    "NonTermination",
    "make_context",
    "knot_operator_terms",
    "knot_operator_vacuum",
    "reduce_to_chamber",
    "reduced_vacuum",
    "expected_survivors",
    "conformal_weight",
    "conformal_weight_exact",
    "t_matrix_phase",
    "normalized_invariant",
    "compare_closed_form",
    "SingularDenominator",
]

_MAX_STEPS = 100_000


class NonTermination(RuntimeError):
    """Chamber reduction exceeded its step budget."""


@dataclass(frozen=True)
class CSContext:
    dat: AlgebraData
    K: int

    @property
    def N(self) -> int:
        return self.dat.N

    @property
    def t0(self) -> complex:
        return cmath.exp(2j * math.pi / self.K)

    @property
    def q0(self) -> complex:
        return cmath.exp(1j * math.pi / self.K)

    @property
    def k(self) -> Fraction:
        """Level, possibly half-integral: ``K = 2k + g``."""
        return Fraction(self.K - self.dat.dual_coxeter, 2)

    def tpow(self, r) -> complex:
        """``t0**r`` for rational ``r``, reduced modulo K first."""
        r = Fraction(r) % self.K
        return cmath.exp(2j * math.pi * float(r) / self.K)


def make_context(N: int, K: int) -> CSContext:
    dat = algebra_for_N(N)
    if int(K) != K or K < dat.dual_coxeter + 1:
        raise ValueError(f"K must be an integer >= {dat.dual_coxeter + 1} for SO({N})")
    return CSContext(dat, int(K))


@dataclass(frozen=True)
class ChamberState:
    sign: int
    weight: tuple[int, ...]

    @property
    def is_null(self) -> bool:
        return self.sign == 0


def knot_operator_terms(dat: AlgebraData, n: int, m: int) -> list[tuple[Fraction, tuple[int, ...]]]:
    """``(t-exponent, weight)`` pairs of ``W^(n,-m)`` acting on the vacuum.

    The exponent is ``-mu^2 n m / 2 - m mu.rho`` and the weight ``rho + n mu``.
    """
    if math.gcd(n, m) != 1:
        raise ValueError(f"({n}, {m}) not coprime")
    out = []
    for mu, nrm, rd in zip(dat.fund_weights, dat.fund_norms, dat.fund_rho_dots):
        e = -nrm * n * m / 2 - m * rd
        w = tuple(r + n * x for r, x in zip(dat.rho, mu))
        out.append((Fraction(e), w))
    return out


def knot_operator_vacuum(ctx: CSContext, n: int, m: int) -> list[tuple[complex, tuple[int, ...]]]:
    return [(ctx.tpow(e), w) for e, w in knot_operator_terms(ctx.dat, n, m)]


def reduce_to_chamber(ctx: CSContext, w) -> ChamberState:
    """Fold ``w`` into the open alcove ``{p_i >= 1, theta.p <= K - 1}``.

    Each (affine) reflection flips the sign. A label on any wall is null.
    """
    dat = ctx.dat
    theta = dat.highest_root
    theta_dyn = dat.root_to_dynkin(theta)
    p = tuple(int(x) for x in w)
    sign = 1
    for _ in range(_MAX_STEPS):
        if 0 in p:
            return ChamberState(0, p)
        neg = next((i for i, x in enumerate(p) if x < 0), None)
        if neg is not None:
            p = weyl_reflect(dat, neg + 1, p)
            sign = -sign
            continue
        h = root_dot(dat, theta, p)  # theta is long, so theta^vee = theta
        if h == ctx.K:
            return ChamberState(0, p)
        if h > ctx.K:
            shift = int(h - ctx.K)
            p = tuple(x - shift * t for x, t in zip(p, theta_dyn))
            sign = -sign
            continue
        return ChamberState(sign, p)
    raise NonTermination(f"reduction of {tuple(w)} did not settle in {_MAX_STEPS} steps")


def reduced_vacuum(ctx: CSContext, n: int, m: int) -> dict[tuple[int, ...], list[tuple[int, Fraction]]]:
    """Surviving labels of the knot operator on the vacuum.

    Maps each chamber weight to its ``(sign, t-exponent)`` contributions.
    """
    out = defaultdict(list)
    for e, w in knot_operator_terms(ctx.dat, n, m):
        st = reduce_to_chamber(ctx, w)
        if st.sign:
            out[st.weight].append((st.sign, e))
    return dict(out)


def expected_survivors(dat: AlgebraData, n: int, m: int) -> dict[tuple[int, ...], list[tuple[int, Fraction]]]:
    """Closed-form survivor table for ``rank > n``.

    Weights ``nu_i = rho + (n - i) lambda_1 + lambda_i`` for ``i = 1..n`` with
    sign ``(-1)^(i-1)`` (for D_l, ``lambda_{l-1}`` is read as
    ``lambda_{l-1} + lambda_l``, the top of the exterior power), plus ``rho`` with coefficient one when ``n`` is even.
    Contributions that cancel exactly (the ``rho`` pair of B_l for odd ``n``)
    are listed with both signs.
    """
    l = dat.rank
    if not l > n >= 1:
        raise ValueError("the closed table needs rank > n >= 1")
    out: dict = defaultdict(list)
    for i in range(1, n + 1):
        nu = list(dat.rho)
        nu[0] += n - i
        nu[i - 1] += 1
        if dat.series == "D" and i == l - 1:
            nu[l - 1] += 1  # the second spinor node shares the fork: lambda_{l-1} + lambda_l
        if dat.series == "B":
            e = Fraction(-n * m, 2) - Fraction(m * (2 * l + 1 - 2 * i), 2)
        else:
            e = Fraction(-n * m, 2) - m * (l - i)
        out[tuple(nu)].append(((-1) ** (i - 1), e))
    rho = tuple(dat.rho)
    if dat.series == "B":
        out[rho].append((1, Fraction(0)))
        if n % 2:
            out[rho].append((-1, Fraction(0)))
    elif n % 2 == 0:
        out[rho].append((1, Fraction(0)))
    return dict(out)


def conformal_weight_exact(ctx: CSContext, Lambda) -> Fraction:
    dat = ctx.dat
    p = tuple(r + x for r, x in zip(dat.rho, Lambda))
    return (inner(dat, p, p) - inner(dat, dat.rho, dat.rho)) / (2 * ctx.K)


def conformal_weight(ctx: CSContext, Lambda) -> float:
    """``h = ((rho + L)^2 - rho^2) / (2K)``."""
    return float(conformal_weight_exact(ctx, Lambda))


def central_charge(ctx: CSContext) -> Fraction:
    return Fraction(ctx.K - ctx.dat.dual_coxeter, ctx.K) * ctx.dat.dim


def t_matrix_phase(ctx: CSContext, Lambda) -> complex:
    """Diagonal entry ``exp(2 pi i (h - c/24))`` of the modular T matrix."""
    r = (conformal_weight_exact(ctx, Lambda) - central_charge(ctx) / 24) % 1
    return cmath.exp(2j * math.pi * float(r))


def normalized_invariant(ctx: CSContext, n: int, m: int) -> complex:
    """Unknot-normalized, framing-corrected knot invariant at level K."""
    dat = ctx.dat
    lam1 = dat.fundamental(1)
    t0 = ctx.t0
    den = character_product_eval(dat, lam1, t0)
    if abs(den) < 1e-12:
        raise SingularDenominator(f"quantum dimension vanishes at K={ctx.K}")
    total = 0j
    for weight, contribs in reduced_vacuum(ctx, n, m).items():
        coeff = sum(s * ctx.tpow(e) for s, e in contribs)
        if coeff == 0:
            continue
        Lam = tuple(x - r for x, r in zip(weight, dat.rho))
        total += coeff * character_product_eval(dat, Lam, t0)
    framing = ctx.tpow(n * m * conformal_weight_exact(ctx, lam1) * ctx.K)
    return framing * total / den


@dataclass(frozen=True)
class ComparisonReport:
    N: int
    K: int
    knot: tuple[int, int]
    oracle: complex
    closed: complex
    abs_error: float
    passed: bool

    def to_json_obj(self) -> dict:
        return {
            "N": self.N,
            "K": self.K,
            "knot": list(self.knot),
            "oracle": [self.oracle.real, self.oracle.imag],
            "closed": [self.closed.real, self.closed.imag],
            "abs_error": self.abs_error,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def compare_closed_form(ctx: CSContext, n: int, m: int, tol: float = 1e-8) -> ComparisonReport:
    """Oracle value against the Dubrovnik polynomial at ``a = q0^(N-1)``, ``q = q0``."""
    knot = canonicalize(n, m)
    oracle = normalized_invariant(ctx, knot.n, knot.m)
    q0 = ctx.q0
    a0 = cmath.exp(1j * math.pi * ((ctx.N - 1) % (2 * ctx.K)) / ctx.K)
    closed = kauffman_torus(knot).eval_complex(a0, q0)
    err = abs(oracle - closed)
    return ComparisonReport(ctx.N, ctx.K, (knot.n, knot.m), oracle, closed, err, bool(err <= tol))
