"""Independent numeric oracles shared by the test modules.

The closed forms are summed directly in complex floating point, term by
term, with no cancellation or exact division.
"""

import cmath
import itertools
import math
import random

import numpy as np


def _br(q, p):
    return q**p - q ** (-p)


def _fact(q, p):
    out = 1
    for k in range(1, p + 1):
        out *= _br(q, k)
    return out


def _prod(a, q, gamma, beta):
    out = 1
    for j in range(-gamma, beta + 1):
        out *= q**j * a - q ** (-j) / a
    return out


def kauffman_unreduced(n, m, a, q, neg=False):
    s = -1 if neg else 1
    total = 0
    for gamma in range(n):
        beta = n - 1 - gamma
        mixed = q ** (beta - gamma) * a - q ** (gamma - beta) / a
        total += (
            q ** (-m * (beta - gamma))
            * a ** (-m)
            * (-1) ** gamma
            * (1 / _br(q, n) + s / mixed)
            * _prod(a, q, gamma, beta)
            / (_fact(q, beta) * _fact(q, gamma))
        )
    if n % 2 == 0:
        total += s
    return s * a ** (n * m) * _br(q, 1) / (_br(q, 1) + s * (a - 1 / a)) * total


def homfly_unreduced(n, m, a, q):
    total = 0
    for gamma in range(n):
        beta = n - 1 - gamma
        total += (
            q ** (-m * (beta - gamma))
            * (-1) ** gamma
            * _prod(a, q, gamma, beta)
            / (_br(q, n) * _fact(q, beta) * _fact(q, gamma))
        )
    return a ** (m * (n - 1)) * _br(q, 1) / (a - 1 / a) * total


def random_points(k, seed=0):
    """Random complex points away from the unit circle's roots of unity."""
    rng = random.Random(seed)
    pts = []
    for _ in range(k):
        a = cmath.rect(rng.uniform(0.8, 1.25), rng.uniform(0, 2 * math.pi))
        q = cmath.rect(rng.uniform(0.85, 1.15), rng.uniform(0, 2 * math.pi))
        pts.append((a, q))
    return pts


def rel_err(x, y):
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


def closure_positive_roots(cartan):
    """Positive roots in the root basis by closing the simple roots under reflections."""
    l = cartan.shape[0]
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            dyn = cartan @ np.array(r)  # Dynkin labels: <r, alpha_i^vee>
            for i in range(l):
                v = list(r)
                v[i] -= int(dyn[i])
                v = tuple(v)
                if any(x < 0 for x in v) or not any(v):
                    continue
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def brute_metric(series, l):
    """Inverse of the symmetrised Cartan matrix, in exact rationals via sympy-free elimination."""
    from fractions import Fraction

    from tki.liealg import build_algebra

    dat = build_algebra(series, l)
    # B = D A with D = diag(len2/2) gives the root inner products alpha_i . alpha_j
    B = [[Fraction(dat.simple_len2[i], 2) * int(dat.cartan[i][j]) for j in range(l)] for i in range(l)]
    # lambda^(i) = sum_j C_ij alpha_j with (len2_k/2) delta = lambda^(i).alpha_k = sum_j C_ij B_jk
    # so C = D B^-1, and G = C B C^T
    M = [row[:] + [Fraction(int(i == j)) for j in range(l)] for i, row in enumerate(B)]
    for c in range(l):
        piv = next(r for r in range(c, l) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(l):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    Binv = [row[l:] for row in M]
    D = [Fraction(s, 2) for s in dat.simple_len2]
    C = [[D[i] * Binv[i][j] for j in range(l)] for i in range(l)]
    return [
        [sum(C[i][a] * B[a][b] * C[j][b] for a, b in itertools.product(range(l), repeat=2)) for j in range(l)]
        for i in range(l)
    ]
