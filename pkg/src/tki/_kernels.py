"""Inner loops of the exact polynomial core.

Two implementations sit behind the same entry points:

* ``numba`` -- dense int64 kernels compiled with ``@njit``;
* ``numpy`` -- the same dense int64 algorithms written with numpy slicing.

Both are fast paths only. Products are taken in int64 when a coefficient bound
proves no overflow can happen; otherwise, and for small operands, the pure
Python big-int loops run. Quotients from the int64 division kernel are always
certified by an exact big-int multiplication before they are returned.

The backend is chosen by ``TKI_BACKEND`` (``numba``, ``numpy`` or ``python``);
the default is ``numba`` when importable.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

__all__ = ["multiply", "divide", "eval_batch", "weyl_exponents", "backend", "set_backend", "HAVE_NUMBA"]

_INT64_SAFE = 1 << 62
# below this many term products the dict loop beats array setup
_DENSE_MIN_WORK = 20000


class _Remainder(ArithmeticError):
    pass


def _default_backend() -> str:
    name = os.environ.get("TKI_BACKEND", "").strip().lower()
    if name in ("numba", "numpy", "python"):
        if name == "numba" and not HAVE_NUMBA:
            return "numpy"
        return name
    return "numba" if HAVE_NUMBA else "numpy"


_backend = _default_backend()


def backend() -> str:
    return _backend


def set_backend(name: str) -> str:
    """Switch backend at runtime; returns the previous one."""
    global _backend
    if name not in ("numba", "numpy", "python"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    prev, _backend = _backend, name
    return prev


# -- pure python ------------------------------------------------------------


def _mul_py(f: dict, g: dict) -> dict:
    out: dict = {}
    get = out.get
    for (fa, fq), fc in f.items():
        for (ga, gq), gc in g.items():
            k = (fa + ga, fq + gq)
            out[k] = get(k, 0) + fc * gc
    return {k: c for k, c in out.items() if c}


def _div_rows_py(f: dict, g: dict) -> dict:
    """Row-by-row exact division, top ``a``-row first."""
    rows_g: dict[int, dict[int, int]] = {}
    for (ea, eq), c in g.items():
        rows_g.setdefault(ea, {})[eq] = c
    r: dict[int, dict[int, int]] = {}
    for (ea, eq), c in f.items():
        r.setdefault(ea, {})[eq] = c
    gtop_a = max(rows_g)
    lead = rows_g.pop(gtop_a)
    lower_a = min(r) - min(rows_g, default=gtop_a)
    h: dict = {}
    for top_a in range(max(r), min(r) - 1, -1):
        row = r.pop(top_a, None)
        if not row:
            continue
        ea = top_a - gtop_a
        if ea < lower_a:
            raise _Remainder
        quot = _div_uni(row, lead)
        for eq, c in quot.items():
            h[(ea, eq)] = c
        for ga, grow in rows_g.items():
            target = r.setdefault(ga + ea, {})
            for gq, gc in grow.items():
                for eq, c in quot.items():
                    k = gq + eq
                    v = target.get(k, 0) - c * gc
                    if v:
                        target[k] = v
                    else:
                        target.pop(k, None)
    return h


def _div_uni(f: dict, g: dict) -> dict:
    """Exact division of univariate Laurent polynomials given as dicts."""
    r = dict(f)
    gtop = max(g)
    glead = g[gtop]
    lower = min(r) - min(g)
    gitems = list(g.items())
    h: dict = {}
    for top in range(max(r), lower + gtop - 1, -1):
        v = r.pop(top, 0)
        if not v:
            continue
        c, rem = divmod(v, glead)
        if rem:
            raise _Remainder
        e = top - gtop
        h[e] = c
        for eg, cg in gitems:
            if eg == gtop:
                continue
            k = eg + e
            w = r.get(k, 0) - c * cg
            if w:
                r[k] = w
            else:
                r.pop(k, None)
    if r:
        raise _Remainder
    return h


# -- dense int64 kernels ----------------------------------------------------


def _to_dense(t: dict):
    ka = [k[0] for k in t]
    kq = [k[1] for k in t]
    a0, q0 = min(ka), min(kq)
    arr = np.zeros((max(ka) - a0 + 1, max(kq) - q0 + 1), dtype=np.int64)
    for (ea, eq), c in t.items():
        arr[ea - a0, eq - q0] = c
    return arr, a0, q0


def _to_sparse_arrays(t: dict):
    n = len(t)
    ea = np.empty(n, dtype=np.int64)
    eq = np.empty(n, dtype=np.int64)
    c = np.empty(n, dtype=np.int64)
    for i, ((x, y), v) in enumerate(t.items()):
        ea[i], eq[i], c[i] = x, y, v
    return ea, eq, c


def _from_dense(arr: np.ndarray, a0: int, q0: int) -> dict:
    ia, iq = np.nonzero(arr)
    vals = arr[ia, iq]
    return {
        (int(x) + a0, int(y) + q0): int(v)
        for x, y, v in zip(ia.tolist(), iq.tolist(), vals.tolist())
    }


def _mul_sparse_dense_np(ea, eq, c, dense, shape):
    out = np.zeros(shape, dtype=np.int64)
    ra, rq = dense.shape
    for i in range(ea.shape[0]):
        out[ea[i] : ea[i] + ra, eq[i] : eq[i] + rq] += c[i] * dense
    return out


def _div_dense_np(f, g, qa, qq):
    """Dense exact division; ``qa x qq`` is the quotient box. Returns (h, ok)."""
    r = f.copy()
    ga, gq = g.shape
    h = np.zeros((qa, qq), dtype=np.int64)
    # leading row of g and its leading coefficient
    lead_q = int(np.nonzero(g[ga - 1])[0].max())
    lc = int(g[ga - 1, lead_q])
    for i in range(qa - 1, -1, -1):
        row = r[i + ga - 1]
        for j in range(qq - 1, -1, -1):
            v = int(row[j + lead_q])
            if v == 0:
                continue
            c, rem = divmod(v, lc)
            if rem:
                return h, False
            h[i, j] = c
            r[i : i + ga, j : j + gq] -= c * g
    return h, not r.any()


if HAVE_NUMBA:

    @njit(cache=True)
    def _mul_sparse_dense_nb(ea, eq, c, dense, shape_a, shape_q):
        out = np.zeros((shape_a, shape_q), dtype=np.int64)
        ra, rq = dense.shape
        for t in range(ea.shape[0]):
            ct = c[t]
            oa = ea[t]
            oq = eq[t]
            for i in range(ra):
                for j in range(rq):
                    v = dense[i, j]
                    if v != 0:
                        out[oa + i, oq + j] += ct * v
        return out

    @njit(cache=True)
    def _div_dense_nb(f, g, qa, qq):
        r = f.copy()
        ga, gq = g.shape
        h = np.zeros((qa, qq), dtype=np.int64)
        lead_q = -1
        for j in range(gq):
            if g[ga - 1, j] != 0:
                lead_q = j
        lc = g[ga - 1, lead_q]
        for i in range(qa - 1, -1, -1):
            for j in range(qq - 1, -1, -1):
                v = r[i + ga - 1, j + lead_q]
                if v == 0:
                    continue
                if v % lc != 0:
                    return h, False
                cq = v // lc
                h[i, j] = cq
                for s in range(ga):
                    for u in range(gq):
                        gv = g[s, u]
                        if gv != 0:
                            r[i + s, j + u] -= cq * gv
        for i in range(r.shape[0]):
            for j in range(r.shape[1]):
                if r[i, j] != 0:
                    return h, False
        return h, True

    @njit(cache=True)
    def _eval_batch_nb(ea, eq, coef, a_pts, q_pts):
        n = a_pts.shape[0]
        out = np.zeros(n, dtype=np.complex128)
        for p in range(n):
            la = np.log(a_pts[p])
            lq = np.log(q_pts[p])
            s = 0j
            for t in range(ea.shape[0]):
                s += coef[t] * np.exp(ea[t] * la + eq[t] * lq)
            out[p] = s
        return out


    @njit(cache=True)
    def _weyl_exponents_nb(mats, p, pair):
        out = np.empty(mats.shape[0], dtype=np.int64)
        for w in range(mats.shape[0]):
            d = 0
            for i in range(mats.shape[1]):
                wi = 0
                for j in range(mats.shape[2]):
                    wi += mats[w, i, j] * p[j]
                d += wi * pair[i]
            out[w] = d
        return out


def _weyl_exponents_np(mats, p, pair):
    return (mats @ p) @ pair


def _eval_batch_np(ea, eq, coef, a_pts, q_pts):
    la = np.log(a_pts)[:, None]
    lq = np.log(q_pts)[:, None]
    return (coef[None, :] * np.exp(ea[None, :] * la + eq[None, :] * lq)).sum(axis=1)


# -- dispatch ---------------------------------------------------------------


def _fits_int64(f: dict, g: dict) -> bool:
    mf = max(abs(c) for c in f.values())
    mg = max(abs(c) for c in g.values())
    return mf * mg * min(len(f), len(g)) < _INT64_SAFE


def multiply(f: dict, g: dict) -> dict:
    """Exact product of two term maps."""
    if not f or not g:
        return {}
    if (
        _backend == "python"
        or len(f) * len(g) < _DENSE_MIN_WORK
        or not _fits_int64(f, g)
    ):
        return _mul_py(f, g)
    if len(f) > len(g):
        f, g = g, f
    dense, ga0, gq0 = _to_dense(g)
    ea, eq, c = _to_sparse_arrays(f)
    fa0, fq0 = int(ea.min()), int(eq.min())
    shape_a = int(ea.max()) - fa0 + dense.shape[0]
    shape_q = int(eq.max()) - fq0 + dense.shape[1]
    ea -= fa0
    eq -= fq0
    if _backend == "numba":
        out = _mul_sparse_dense_nb(ea, eq, c, dense, shape_a, shape_q)
    else:
        out = _mul_sparse_dense_np(ea, eq, c, dense, (shape_a, shape_q))
    return _from_dense(out, fa0 + ga0, fq0 + gq0)


def divide(f: dict, g: dict) -> dict:
    """Exact quotient of term maps; raises ``NotDivisible`` on a remainder."""
    from tki.laurent import NotDivisible

    if _backend != "python" and len(f) * len(g) >= _DENSE_MIN_WORK:
        h = _divide_dense(f, g)
        if h is not None:
            return h
    try:
        return _div_rows_py(f, g)
    except _Remainder:
        raise NotDivisible("nonzero remainder in exact division") from None


def _divide_dense(f: dict, g: dict):
    """int64 attempt; ``None`` means fall back to the big-int path."""
    if max(abs(c) for c in f.values()) >= _INT64_SAFE:
        return None
    fd, fa0, fq0 = _to_dense(f)
    gd, ga0, gq0 = _to_dense(g)
    qa = fd.shape[0] - gd.shape[0] + 1
    qq = fd.shape[1] - gd.shape[1] + 1
    if qa <= 0 or qq <= 0:
        return None
    try:
        if _backend == "numba":
            h, ok = _div_dense_nb(fd, gd, qa, qq)
        else:
            h, ok = _div_dense_np(fd, gd, qa, qq)
    except OverflowError:  # pragma: no cover
        return None
    if not ok:
        return None
    hd = _from_dense(h, fa0 - ga0, fq0 - gq0)
    # certificate: the int64 run may have wrapped silently
    if _mul_py(hd, g) != f:
        return None
    return hd


def weyl_exponents(mats, p, pair) -> np.ndarray:
    """``pair . (w p)`` for every stacked Weyl matrix ``w``, in int64."""
    p = np.asarray(p, dtype=np.int64)
    pair = np.asarray(pair, dtype=np.int64)
    if _backend == "numba":
        return _weyl_exponents_nb(mats, p, pair)
    return _weyl_exponents_np(mats, p, pair)


def eval_batch(t: dict, a_pts, q_pts) -> np.ndarray:
    """Evaluate a term map at many complex points."""
    a_pts = np.asarray(a_pts, dtype=np.complex128)
    q_pts = np.asarray(q_pts, dtype=np.complex128)
    if not t:
        return np.zeros(a_pts.shape[0], dtype=np.complex128)
    ea = np.array([k[0] for k in t], dtype=np.float64)
    eq = np.array([k[1] for k in t], dtype=np.float64)
    coef = np.array([float(c) for c in t.values()], dtype=np.complex128)
    if _backend == "numba":
        return _eval_batch_nb(ea, eq, coef, a_pts, q_pts)
    return _eval_batch_np(ea, eq, coef, a_pts, q_pts)
