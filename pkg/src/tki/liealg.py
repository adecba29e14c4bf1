"""Root and weight data for the orthogonal algebras B_l = so(2l+1) and D_l = so(2l).

Weights are integer tuples in the Dynkin basis (coefficients of the
fundamental weights). Roots are integer tuples in the root basis
(coefficients of the simple roots). Long roots have squared length 2; the
short simple root of B_l has squared length 1.

Scalar products are exact: the weight metric is stored as ``4 * G``, an
integer matrix, and results come back as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from tki import _kernels
from tki.laurent import LaurentPoly2, exact_div

__all__ = [
    "AlgebraData",
    "build_algebra",
    "algebra_for_N",
    "inner",
    "root_dot",
    "weyl_reflect",
    "weyl_group",
    "character_product_eval",
    "character_weylsum_eval",
    "weyl_numerator",
    "principal_character",
    "fundamental_weight_sum_eval",
    "RankTooSmall",
    "RankMismatch",
    "IndexOutOfRange",
    "SingularDenominator",
    "RankTooLargeForEnumeration",
]

WEYL_ENUMERATION_MAX_RANK = 4


class RankTooSmall(ValueError):
    pass


class RankMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class SingularDenominator(ZeroDivisionError):
    """A character denominator vanished at the chosen root of unity."""


class RankTooLargeForEnumeration(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AlgebraData:
    series: str
    rank: int
    N: int
    cartan: np.ndarray
    metric4: np.ndarray
    simple_len2: tuple[int, ...]
    positive_roots: tuple[tuple[int, ...], ...]
    highest_root: tuple[int, ...]
    rho: tuple[int, ...]
    fund_weights: tuple[tuple[int, ...], ...]
    fund_norms: tuple[Fraction, ...]
    fund_rho_dots: tuple[Fraction, ...]
    dual_coxeter: int
    psi_sq: int = 2

    @property
    def dim(self) -> int:
        """Dimension of the Lie algebra, ``N (N - 1) / 2``."""
        return self.N * (self.N - 1) // 2

    def simple_root(self, i: int) -> tuple[int, ...]:
        """Dynkin components of the simple root ``alpha_(i)`` (1-based)."""
        return tuple(int(v) for v in self.cartan[:, i - 1])

    def root_to_dynkin(self, root) -> tuple[int, ...]:
        return tuple(int(v) for v in self.cartan @ np.asarray(root, dtype=np.int64))

    def fundamental(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def __repr__(self):
        return f"AlgebraData({self.series}_{self.rank}, N={self.N})"


def _cartan(series: str, l: int) -> np.ndarray:
    """Cartan matrix with ``g_ij = 2 a_i.a_j / a_i.a_i`` (the row index is the divisor)."""
    g = 2 * np.eye(l, dtype=np.int64)
    for i in range(l - 1):
        g[i, i + 1] = g[i + 1, i] = -1
    if series == "B":
        g[l - 1, l - 2] = -2
    else:
        g[l - 2, l - 1] = g[l - 1, l - 2] = 0
        g[l - 3, l - 1] = g[l - 1, l - 3] = -1
    return g


def _metric4(series: str, l: int) -> np.ndarray:
    """``4 * G^{ij}`` from the closed-form weight metric."""
    M = np.zeros((l, l), dtype=np.int64)
    if series == "B":
        for i in range(1, l + 1):
            for j in range(1, l + 1):
                if i < l and j < l:
                    M[i - 1, j - 1] = 4 * min(i, j)
                elif i == l and j == l:
                    M[i - 1, j - 1] = l
                else:
                    M[i - 1, j - 1] = 2 * min(i, j)
    else:
        for i in range(1, l + 1):
            for j in range(1, l + 1):
                if i <= l - 2 and j <= l - 2:
                    M[i - 1, j - 1] = 4 * min(i, j)
                elif i <= l - 2 or j <= l - 2:
                    M[i - 1, j - 1] = 2 * min(i, j)
                elif i == j:
                    M[i - 1, j - 1] = l
                else:
                    M[i - 1, j - 1] = l - 2
    return M


def _positive_roots(series: str, l: int) -> list[tuple[int, ...]]:
    """Positive roots in the root basis, family by family."""

    def span(lo, hi, coeff=1, base=None):
        v = list(base) if base else [0] * l
        for s in range(lo, hi + 1):
            v[s - 1] += coeff
        return v

    roots = []
    if series == "B":
        for j in range(1, l + 1):  # beta_(j)
            roots.append(span(j, l))
        for j in range(1, l):  # gamma_(j,k), k from 0 so the simple roots are included
            for k in range(0, l - j):
                roots.append(span(j, j + k))
        for j in range(1, l):  # delta_(j,k)
            for k in range(0, l - j):
                roots.append(span(j + k + 1, l, 2, span(j, j + k)))
    else:
        for j in range(1, l + 1):  # simple roots
            roots.append(span(j, j))
        for j in range(1, l - 1):  # beta_(j)
            roots.append(span(l, l, 1, span(j, l - 2)))
        for j in range(1, l - 1):  # gamma_(j,k)
            for k in range(1, l - j + 1):
                roots.append(span(j, j + k))
        for j in range(1, l - 2):  # delta_(j,k)
            for k in range(0, l - 2 - j):
                v = span(j + k + 1, l - 2, 2, span(j, j + k))
                roots.append(span(l - 1, l, 1, v))
    return [tuple(r) for r in roots]


def _fund_weights(series: str, l: int, cartan: np.ndarray) -> list[tuple[int, ...]]:
    """Weights of the vector representation by the subtraction chain mu_j = mu_{j-1} - alpha_(j-1)."""
    mu = [np.eye(l, dtype=np.int64)[0]]
    top = l + 1 if series == "B" else l
    for j in range(2, top + 1):
        mu.append(mu[-1] - cartan[:, j - 2])
    if series == "B":
        mu += [-mu[l - i] for i in range(1, l + 1)]  # mu_{l+1+i} = -mu_{l+1-i}
    else:
        mu += [-mu[l - i] for i in range(1, l + 1)]  # mu_{l+i} = -mu_{l+1-i}
    return [tuple(int(v) for v in m) for m in mu]


def _qf(x, M, y) -> Fraction:
    return Fraction(int(np.asarray(x) @ M @ np.asarray(y)), 4)


@lru_cache(maxsize=None)
def build_algebra(series: str, l: int) -> AlgebraData:
    series = series.upper()
    if series not in ("B", "D"):
        raise ValueError(f"series must be 'B' or 'D', not {series!r}")
    if (series == "B" and l < 2) or (series == "D" and l < 3):
        raise RankTooSmall(f"{series}_{l} is not supported")
    N = 2 * l + 1 if series == "B" else 2 * l
    cartan = _cartan(series, l)
    metric4 = _metric4(series, l)
    len2 = tuple([2] * (l - 1) + [1 if series == "B" else 2])
    roots = _positive_roots(series, l)
    rho = (1,) * l
    mus = _fund_weights(series, l, cartan)

    # alpha_(i) . lambda^(j) = (alpha_(i)^2 / 2) delta_ij
    if not np.array_equal(cartan.T @ metric4, 2 * np.diag(len2)):
        raise AssertionError("weight metric inconsistent with the Cartan matrix")
    expected_roots = l * l if series == "B" else l * (l - 1)
    if len(set(roots)) != expected_roots:
        raise AssertionError("positive root count mismatch")

    norms = tuple(_qf(m, metric4, m) for m in mus)
    rdots = tuple(_qf(rho, metric4, m) for m in mus)
    # tabulated values of mu_i^2 and rho.mu_i
    if series == "B":
        t_norms = [Fraction(1)] * l + [Fraction(0)] + [Fraction(1)] * l
        t_rdots = [Fraction(2 * l - (2 * i - 1), 2) for i in range(1, l + 1)]
        t_rdots += [Fraction(0)] + [Fraction(-(2 * i - 1), 2) for i in range(1, l + 1)]
    else:
        t_norms = [Fraction(1)] * (2 * l)
        t_rdots = [Fraction(l - i) for i in range(1, l + 1)]
        t_rdots += [Fraction(-(i - 1)) for i in range(1, l + 1)]
    if list(norms) != t_norms or list(rdots) != t_rdots:
        raise AssertionError("vector-representation weights disagree with the scalar product table")
    if any(sum(m[i] for m in mus) for i in range(l)):
        raise AssertionError("vector-representation weights do not sum to zero")

    dat = AlgebraData(
        series=series,
        rank=l,
        N=N,
        cartan=cartan,
        metric4=metric4,
        simple_len2=len2,
        positive_roots=tuple(roots),
        highest_root=(),
        rho=rho,
        fund_weights=tuple(mus),
        fund_norms=norms,
        fund_rho_dots=rdots,
        dual_coxeter=N - 2,
    )
    heights = [root_dot(dat, r, rho) for r in roots]
    if min(heights) <= 0:
        raise AssertionError("a positive root has non-positive pairing with rho")
    theta = roots[heights.index(max(heights))]
    object.__setattr__(dat, "highest_root", theta)
    return dat


def algebra_for_N(N: int) -> AlgebraData:
    """Algebra of SO(N): B_l for odd N, D_l for even N."""
    if N % 2:
        return build_algebra("B", (N - 1) // 2)
    return build_algebra("D", N // 2)


def _check(dat: AlgebraData, *vs):
    for v in vs:
        if len(v) != dat.rank:
            raise RankMismatch(f"vector of length {len(v)} for rank {dat.rank}")


def inner(dat: AlgebraData, x, y) -> Fraction:
    """``x . y`` for Dynkin-basis weights."""
    _check(dat, x, y)
    return _qf(x, dat.metric4, y)


def root_dot(dat: AlgebraData, root, x) -> Fraction:
    """``alpha . x`` for a root in the root basis and a weight in the Dynkin basis."""
    _check(dat, root, x)
    return Fraction(sum(c * s * v for c, s, v in zip(root, dat.simple_len2, x)), 2)


def weyl_reflect(dat: AlgebraData, i: int, x) -> tuple[int, ...]:
    """Simple reflection ``sigma_i`` (1-based): ``x - x_i alpha_(i)``."""
    if not 1 <= i <= dat.rank:
        raise IndexOutOfRange(f"simple root index {i} outside 1..{dat.rank}")
    _check(dat, x)
    xi = x[i - 1]
    col = dat.cartan[:, i - 1]
    return tuple(int(v - xi * c) for v, c in zip(x, col))


@lru_cache(maxsize=None)
def _weyl_group(series: str, l: int):
    dat = build_algebra(series, l)
    gens = []
    for i in range(l):
        s = np.eye(l, dtype=np.int64)
        s[:, i] -= dat.cartan[:, i]
        gens.append(s)
    rho = np.array(dat.rho, dtype=np.int64)
    ident = np.eye(l, dtype=np.int64)
    seen = {tuple(rho): (ident, 1)}
    frontier = [(ident, 1)]
    while frontier:
        nxt = []
        for w, sgn in frontier:
            for s in gens:
                ws = s @ w
                key = tuple(ws @ rho)
                if key not in seen:
                    seen[key] = (ws, -sgn)
                    nxt.append((ws, -sgn))
        frontier = nxt
    mats = np.stack([w for w, _ in seen.values()])
    signs = np.array([s for _, s in seen.values()], dtype=np.int64)
    return mats, signs


def weyl_group(dat: AlgebraData):
    """All Weyl group elements as Dynkin-basis integer matrices, with signatures.

    Elements are distinguished by their image of ``rho``, which is regular.
    """
    if dat.rank > WEYL_ENUMERATION_MAX_RANK:
        raise RankTooLargeForEnumeration(
            f"rank {dat.rank} exceeds {WEYL_ENUMERATION_MAX_RANK}; use the product formula"
        )
    return _weyl_group(dat.series, dat.rank)


def _tpow(logt: complex, r) -> complex:
    return cmath.exp(logt * float(r))


@lru_cache(maxsize=None)
def _root_matrix(series: str, l: int) -> np.ndarray:
    """Rows give ``2 * alpha . x`` as an integer linear form in the Dynkin components."""
    dat = build_algebra(series, l)
    return np.array(
        [[c * s for c, s in zip(r, dat.simple_len2)] for r in dat.positive_roots],
        dtype=np.int64,
    )


def character_product_eval(dat: AlgebraData, Lambda, t0: complex) -> complex:
    """Character at ``-rho`` as a product over positive roots.

    ``prod (t^{a.(rho+L)/2} - t^{-a.(rho+L)/2}) / (t^{a.rho/2} - t^{-a.rho/2})``
    with ``t^r = exp(r log t0)`` on the principal branch.
    """
    _check(dat, Lambda)
    if min(Lambda) < 0:
        raise ValueError("highest weight must have nonnegative Dynkin components")
    if t0 == 0:
        raise ValueError("t0 must be nonzero")
    logt = cmath.log(t0)
    R = _root_matrix(dat.series, dat.rank)
    rho = np.array(dat.rho, dtype=np.int64)
    p = rho + np.asarray(Lambda, dtype=np.int64)
    # 2 alpha.x is an integer s, so t^{alpha.x / 2} = exp(s log t / 4)
    s_num = (R @ p).astype(np.float64)
    s_den = (R @ rho).astype(np.float64)
    den = np.exp(s_den * logt / 4) - np.exp(-s_den * logt / 4)
    if np.min(np.abs(den)) < 1e-12:
        raise SingularDenominator("Weyl denominator vanishes at this t0")
    num = np.exp(s_num * logt / 4) - np.exp(-s_num * logt / 4)
    return complex(np.prod(num / den))


def weyl_numerator(dat: AlgebraData, p) -> LaurentPoly2:
    """``sum_w e(w) s^{4 rho . w(p)}`` as an exact polynomial in ``s = t^{1/4}``.

    The variable ``s`` is carried in the ``q`` slot of :class:`LaurentPoly2`.
    """
    _check(dat, p)
    mats, signs = weyl_group(dat)
    pair = dat.metric4 @ np.array(dat.rho, dtype=np.int64)  # 4 rho . x == pair . x
    terms: dict = {}
    for e, sg in zip(_kernels.weyl_exponents(mats, p, pair).tolist(), signs.tolist()):
        terms[(0, e)] = terms.get((0, e), 0) + sg
    return LaurentPoly2(terms)


def principal_character(dat: AlgebraData, Lambda) -> LaurentPoly2:
    """Character at ``-rho`` as an exact polynomial in ``s = t^{1/4}``.

    Quotient of the two alternating Weyl sums; the division is exact, and the
    quotient has nonnegative coefficients (weight multiplicities).
    """
    _check(dat, Lambda)
    rho = np.array(dat.rho, dtype=np.int64)
    num = weyl_numerator(dat, rho + np.asarray(Lambda, dtype=np.int64))
    return exact_div(num, weyl_numerator(dat, rho))


def character_weylsum_eval(dat: AlgebraData, Lambda, t0: complex) -> complex:
    """``sum_w e(w) t^{rho . w(rho+L)} / sum_w e(w) t^{rho . w(rho)}``.

    Both sums are collected with integer coefficients and divided exactly
    before evaluation, so no floating point cancellation occurs.
    """
    if min(Lambda) < 0:
        raise ValueError("highest weight must have nonnegative Dynkin components")
    s0 = cmath.exp(cmath.log(t0) / 4)
    rho = np.array(dat.rho, dtype=np.int64)
    if abs(weyl_numerator(dat, rho).eval_complex(1, s0)) < 1e-12:
        raise SingularDenominator("Weyl denominator vanishes at this t0")
    return principal_character(dat, Lambda).eval_complex(1, s0)


def fundamental_weight_sum_eval(dat: AlgebraData, t0: complex) -> complex:
    """``sum_{mu} t^{-mu . rho}`` over the weights of the vector representation."""
    logt = cmath.log(t0)
    return sum(_tpow(logt, -r) for r in dat.fund_rho_dots)
