"""Command-line front end.

    tki compute --n 2 --m 3 --invariant homfly --vars az
    tki verify --max 6 --checks relation,symmetry,a1,olga
    tki cs-check --n 2 --m 3 --N 7 --level 20
    tki table --max 5 --invariant kauffman

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
3 an exact division that should have been exact was not.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from tki.invariants import (
    KINDS,
    NotCoprime,
    TorusKnot,
    alexander_from_homfly,
    alexander_via_kauffman_derivative,
    canonicalize,
    compute,
    homfly_from_kauffman,
    homfly_torus,
    kauffman_neg,
    kauffman_torus,
    qtilde,
)
from tki.laurent import ONE, NotDivisible

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IDENTITY = 0, 1, 2, 3
CHECKS = ("relation", "symmetry", "a1", "olga", "oracle")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    knot: tuple[int, int] | None = None
    max_range: int | None = None
    N: int | None = None
    K: int | None = None
    tol: float = 1e-8
    fmt: str = "text"
    out: str | None = None
    checks: tuple[str, ...] = field(default_factory=lambda: ("relation", "symmetry", "a1", "olga"))
    invariant: str = "homfly"
    vars: str = "az"
    threads: int = 0

    def validate(self):
        if self.command == "compute" and self.knot is None:
            raise UsageError("compute needs --n and --m")
        if self.command == "cs-check" and (self.knot is None or self.N is None or self.K is None):
            raise UsageError("cs-check needs --n, --m, --N and --level")
        if self.command in ("verify", "table") and self.max_range is None:
            raise UsageError(f"{self.command} needs --max")
        if self.command == "verify" and "oracle" in self.checks and self.N is None:
            raise UsageError("the oracle check needs --N")
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise UsageError(f"unknown checks: {', '.join(sorted(bad))}")


def coprime_pairs(max_range: int) -> list[tuple[int, int]]:
    return [
        (n, m)
        for m in range(2, max_range + 1)
        for n in range(1, m)
        if gcd(n, m) == 1
    ]


def oracle_level(n: int, m: int, N: int) -> int:
    """Default level with a wide margin: ``K = n (m + N)``."""
    return max(n * (abs(m) + N), N - 1)


# -- verification ------------------------------------------------------------


def _same_invariants(n: int, m: int) -> bool:
    a, b = TorusKnot(n, m), TorusKnot(m, n)
    return (
        homfly_torus(a) == homfly_torus(b)
        and kauffman_torus(a) == kauffman_torus(b)
        and kauffman_neg(a) == kauffman_neg(b)
        and qtilde(a) == qtilde(b)
        and alexander_from_homfly(a) == alexander_from_homfly(b)
    )


def check_pair(n: int, m: int, checks, N=None, K=None, tol=1e-8) -> dict:
    """Run the requested checks on ``{n, m}``; values are booleans."""
    k = canonicalize(n, m)
    res = {}
    for c in checks:
        if c == "relation":
            res[c] = homfly_from_kauffman(kauffman_torus(k), kauffman_neg(k)) == homfly_torus(k)
        elif c == "symmetry":
            res[c] = _same_invariants(n, m)
        elif c == "a1":
            res[c] = kauffman_torus(k).at_a1() == ONE
        elif c == "olga":
            res[c] = alexander_from_homfly(k) == alexander_via_kauffman_derivative(k)
        elif c == "oracle":
            from tki.csoracle import compare_closed_form, make_context

            level = K if K is not None else oracle_level(n, m, N)
            res[c] = compare_closed_form(make_context(N, level), n, m, tol).passed
    return res


def _check_job(args):
    n, m, checks, N, K, tol = args
    try:
        return (n, m), check_pair(n, m, checks, N, K, tol), None
    except NotDivisible as exc:
        return (n, m), {}, f"NotDivisible: {exc}"


def _workers(threads: int) -> int:
    if threads <= 0:
        threads = int(os.environ.get("TKI_THREADS", "0") or 0)
    if threads <= 0:
        threads = os.cpu_count() or 1
    return threads


def _fan_out(fn, jobs, threads):
    w = min(_workers(threads), max(len(jobs), 1))
    if w == 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=w) as pool:
        return list(pool.map(fn, jobs))


def run_verify(cfg: RunConfig):
    jobs = [(n, m, cfg.checks, cfg.N, cfg.K, cfg.tol) for n, m in coprime_pairs(cfg.max_range)]
    rows = sorted(_fan_out(_check_job, jobs, cfg.threads))
    broken = [r for r in rows if r[2]]
    all_ok = all(all(r[1].values()) for r in rows) and not broken
    if cfg.fmt == "json":
        obj = {
            "checks": list(cfg.checks),
            "pass": all_ok,
            "rows": [
                {"knot": list(k), "results": res, **({"error": err} if err else {})}
                for k, res, err in rows
            ],
        }
        text = json.dumps(obj, sort_keys=True, indent=1) + "\n"
    else:
        lines = ["knot     " + " ".join(f"{c:>9}" for c in cfg.checks)]
        for k, res, err in rows:
            cells = " ".join(f"{('pass' if res.get(c) else 'FAIL'):>9}" for c in cfg.checks)
            lines.append(f"{{{k[0]},{k[1]}}}".ljust(9) + cells + (f"  {err}" if err else ""))
        lines.append(f"{len(rows)} knots, {'all pass' if all_ok else 'FAILURES'}")
        text = "\n".join(lines) + "\n"
    code = EXIT_IDENTITY if broken else (EXIT_OK if all_ok else EXIT_FAIL)
    return text, code


# -- compute / table -----------------------------------------------------------


def _render(result, cfg: RunConfig) -> str:
    if cfg.fmt == "json":
        return json.dumps(result.to_json_obj(), sort_keys=True) + "\n"
    if cfg.vars == "az":
        if result.poly_az is None:
            raise UsageError(f"{result.kind} of {result.knot} has no (a, z) form")
        return f"{result.poly_az}\n"
    return f"{result.poly_aq}\n"


def run_compute(cfg: RunConfig):
    res = compute(canonicalize(*cfg.knot), cfg.invariant)
    return _render(res, cfg), EXIT_OK


def _table_job(args):
    n, m, kind = args
    return compute(TorusKnot(n, m), kind).to_json_obj()


def run_table(cfg: RunConfig):
    kinds = KINDS if cfg.invariant == "all" else (cfg.invariant,)
    jobs = [(n, m, kind) for n, m in coprime_pairs(cfg.max_range) for kind in kinds]
    rows = _fan_out(_table_job, jobs, cfg.threads)
    rows.sort(key=lambda r: (r["knot"], r["kind"]))
    return json.dumps(rows, sort_keys=True) + "\n", EXIT_OK


def run_cs_check(cfg: RunConfig):
    from tki.csoracle import compare_closed_form, make_context

    try:
        ctx = make_context(cfg.N, cfg.K)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = compare_closed_form(ctx, *cfg.knot, tol=cfg.tol)
    if cfg.fmt == "json":
        text = rep.to_json() + "\n"
    else:
        text = (
            f"SO({rep.N}) K={rep.K} {{{rep.knot[0]},{rep.knot[1]}}}\n"
            f"  oracle {rep.oracle:.15g}\n  closed {rep.closed:.15g}\n"
            f"  |error| {rep.abs_error:.3e}  {'pass' if rep.passed else 'FAIL'}\n"
        )
    return text, EXIT_OK if rep.passed else EXIT_FAIL


COMMANDS = {"compute": run_compute, "verify": run_verify, "table": run_table, "cs-check": run_cs_check}


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        text, code = COMMANDS[cfg.command](cfg)
    except (UsageError, NotCoprime) as exc:
        msg = "not coprime" if isinstance(exc, NotCoprime) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except NotDivisible as exc:
        print(f"internal identity violated: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tki", description="Torus knot polynomial invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
        sp.add_argument("--out", metavar="PATH")
        sp.add_argument("--threads", type=int, default=0, help="worker count, 0 = auto (TKI_THREADS)")

    sp = sub.add_parser("compute", help="compute one invariant")
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--invariant", choices=KINDS, default="homfly")
    sp.add_argument("--vars", choices=("aq", "az"), default="az")
    common(sp)

    sp = sub.add_parser("verify", help="check identities over all coprime pairs up to --max")
    sp.add_argument("--max", dest="max_range", type=int)
    sp.add_argument("--checks", default="relation,symmetry,a1,olga")
    sp.add_argument("--N", type=int)
    sp.add_argument("--level", dest="K", type=int)
    sp.add_argument("--tol", type=float, default=1e-8)
    common(sp)

    sp = sub.add_parser("cs-check", help="compare with the finite-level oracle")
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--N", type=int)
    sp.add_argument("--level", dest="K", type=int)
    sp.add_argument("--tol", type=float, default=1e-8)
    common(sp)

    sp = sub.add_parser("table", help="JSON array of invariants for all coprime pairs up to --max")
    sp.add_argument("--max", dest="max_range", type=int)
    sp.add_argument("--invariant", choices=KINDS + ("all",), default="homfly")
    common(sp)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    knot = None
    n, m = getattr(ns, "n", None), getattr(ns, "m", None)
    if n is not None and m is not None:
        knot = (n, m)
    checks = tuple(c.strip() for c in getattr(ns, "checks", "").split(",") if c.strip())
    kw = {
        k: getattr(ns, k)
        for k in ("max_range", "N", "K", "tol", "fmt", "out", "invariant", "vars", "threads")
        if getattr(ns, k, None) is not None
    }
    if checks:
        kw["checks"] = checks
    return RunConfig(command=ns.command, knot=knot, **kw)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
