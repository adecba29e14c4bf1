import cmath
import random

import numpy as np
import pytest

from tki import _kernels
from tki.invariants import _homfly, _kauffman, homfly_torus, kauffman_torus
from tki.laurent import A, Q, Z, LaurentPoly2, NotDivisible, exact_div
from tki.liealg import build_algebra, character_product_eval, character_weylsum_eval

BACKENDS = ["numba", "numpy", "python"] if _kernels.HAVE_NUMBA else ["numpy", "python"]


@pytest.fixture
def backend(request):
    prev = _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(prev)


def _big_pair(seed):
    rng = random.Random(seed)
    f = LaurentPoly2({(rng.randint(-12, 12), rng.randint(-30, 30)): rng.randint(-9, 9) for _ in range(200)})
    g = (A + Q + Z) ** 6 * (A * Q - 3) ** 3
    return f, g


def _reference(f, g):
    return _kernels._mul_py(f.terms, g.terms)


@pytest.mark.parametrize("backend", BACKENDS, indirect=True)
@pytest.mark.parametrize("seed", range(3))
def test_dense_paths_match_python(backend, seed):
    f, g = _big_pair(seed)
    p = f * g
    assert p.terms == _reference(f, g)
    assert exact_div(p, g) == f
    with pytest.raises(NotDivisible):
        exact_div(p + A**40, g)


@pytest.mark.parametrize("backend", BACKENDS, indirect=True)
def test_closed_forms_identical(backend):
    _kauffman.cache_clear()
    _homfly.cache_clear()
    got = (kauffman_torus((7, 9)), homfly_torus((8, 9)))
    _kauffman.cache_clear()
    _homfly.cache_clear()
    prev = _kernels.set_backend("python")
    try:
        want = (kauffman_torus((7, 9)), homfly_torus((8, 9)))
    finally:
        _kernels.set_backend(prev)
    assert got == want


def test_overflow_falls_back():
    f = LaurentPoly2({(i, j): 10**15 for i in range(10) for j in range(40)})
    g = LaurentPoly2({(i, j): 10**15 + 1 for i in range(10) for j in range(40)})
    assert (f * g).terms == _kernels._mul_py(f.terms, g.terms)


@pytest.mark.parametrize("backend", BACKENDS, indirect=True)
def test_weyl_sum_backends(backend):
    dat = build_algebra("D", 4)
    t0 = cmath.exp(2j * cmath.pi / 24)
    for lam in [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 1)]:
        a = character_product_eval(dat, lam, t0)
        b = character_weylsum_eval(dat, lam, t0)
        assert abs(a - b) <= 1e-10 * max(1, abs(a))


@pytest.mark.parametrize("backend", BACKENDS, indirect=True)
def test_eval_batch(backend):
    f = (A + Q**-1 + 3) ** 4
    pts = [(cmath.exp(0.3j * k), 1.1 * cmath.exp(0.7j * k)) for k in range(6)]
    got = _kernels.eval_batch(f.terms, [p[0] for p in pts], [p[1] for p in pts])
    want = np.array([f.eval_complex(a, q) for a, q in pts])
    assert np.allclose(got, want, rtol=1e-12)


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _kernels.set_backend("fortran")
