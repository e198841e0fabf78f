"""Command line front end.

Subcommands: tabulate, rk, sum, constant, verify, selftest.  stdout carries
machine-parseable data only (a single value, CSV, or PASS lines); every
diagnostic, including the echo of the resolved parameter set, goes to
stderr.  Exit codes: 0 success, 1 usage error, 2 computational failure
(size guard, overflow, unreachable tolerance).
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
from fractions import Fraction
from typing import List, Optional

from . import constants as C
from . import verify as V
from .arith import (
    FunctionSpec,
    SDescriptor,
    dirichlet_convolve,
    parse_function,
    sieve_table,
)
from .errors import ComputationError, SizeGuardError, UsageError
from .lattice import build_rk, lattice_point_count_brute
from .sums import (
    SumQuery,
    n_vector_from_z_vector,
    spherical_sum,
    z_vector_from_n_vector,
)

_DOMAINS = {"z": "integers", "n": "naturals",
            "integers": "integers", "naturals": "naturals"}
_PRIME_LOG_NAMES = {"log_n": "log", "kappa_log": "logkappa",
                    "omega_small": "omega", "omega_big": "bigomega"}
CONSTANT_NAMES = ("zeta", "V", "I", "A", "D", "B", "C", "E", "K", "HS")


def _echo(args: argparse.Namespace, keys: List[str]) -> None:
    parts = [f"{k}={getattr(args, k)}" for k in keys if getattr(args, k) is not None]
    print(f"# sphersum {args.command} " + " ".join(parts), file=sys.stderr)


def _function(text: str) -> FunctionSpec:
    return parse_function(text)


def _grid(text: str) -> List[int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("grid must be start:stop:factor")
    try:
        start, stop, factor = int(parts[0]), int(parts[1]), float(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from None
    return V.geometric_grid(start, stop, factor)


def _default_threads() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# subcommand bodies

def _cmd_tabulate(args) -> int:
    _echo(args, ["f", "n"])
    spec = _function(args.f)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    table = sieve_table(spec, args.n)
    out = ["n,value"]
    for n in range(1, args.n + 1):
        v = table.values[n]
        out.append(f"{n},{v if isinstance(v, int) else repr(float(v))}")
    print("\n".join(out))
    return 0


def _cmd_rk(args) -> int:
    _echo(args, ["k", "n"])
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    table = build_rk(args.k, args.n)
    out = ["n,rk"]
    for n in range(args.n + 1):
        out.append(f"{n},{table[n]}")
    print("\n".join(out))
    return 0


def _cmd_sum(args) -> int:
    _echo(args, ["k", "x", "f", "mode", "domain", "method"])
    domain = _DOMAINS.get(args.domain)
    if domain is None:
        raise UsageError("domain must be z or n")
    query = SumQuery(args.k, args.x, _function(args.f), mode=args.mode,
                     domain=domain, method=args.method)
    result = spherical_sum(query)
    v = result.value
    print(v if isinstance(v, int) else repr(float(v)))
    print(f"# points/terms visited: {result.points_visited}, "
          f"elapsed: {result.elapsed:.3f}s", file=sys.stderr)
    return 0


def _cmd_constant(args) -> int:
    _echo(args, ["name", "f", "k", "s", "tol", "eta", "S"])
    name = args.name
    tol = args.tol

    def emit(value: float, bound: float) -> int:
        print(f"{value!r} {bound!r}")
        return 0

    if name == "zeta":
        if args.s is None:
            raise UsageError("constant zeta needs --s")
        cv = C.zeta(args.s, tol or 1e-12)
        return emit(cv.value, cv.error_bound)
    if name == "V":
        return emit(C.unit_ball_volume(args.k), 0.0)
    if name == "I":
        return emit(C.wallis_cosine_integral(args.k), 0.0)
    if name == "A":
        exact = C.alternating_binomial_mean(args.k)
        print(f"{exact.numerator}/{exact.denominator} 0.0")
        return 0
    if name == "K":
        if args.f is None:
            raise UsageError("constant K needs --f log|logkappa|omega|Omega")
        kind = _PRIME_LOG_NAMES.get(_function(args.f).kind)
        if kind is None:
            raise UsageError("constant K takes log, logkappa, omega or Omega")
        cv = C.prime_log_sum_constant(kind, args.k, tol)
        return emit(cv.value, cv.error_bound)
    if name == "HS":
        if args.S is None or args.eta is None:
            raise UsageError("constant HS needs --S and --eta")
        cv = C.fseta_prime_constant(SDescriptor.parse(args.S), args.eta,
                                    args.k, tol)
        return emit(cv.value, cv.error_bound)
    if args.f is None:
        raise UsageError(f"constant {name} needs --f")
    spec = _function(args.f)
    if name == "D":
        cv = C.bounded_series_constant(spec, args.k, tol or 1e-6)
    elif name == "B":
        cv = C.mean_value_constant(spec, args.k, tol or 1e-9)
    elif name == "C":
        cv = C.lcm_main_constant(spec, args.k, r=1, tol=tol or 1e-9)
    elif name == "E":
        cv = C.lcm_main_constant(spec, args.k, r=0, tol=tol or 1e-9)
    else:
        raise UsageError(f"unknown constant {name!r}")
    return emit(cv.value, cv.error_bound)


def _cmd_verify(args) -> int:
    _echo(args, ["theorem", "grid", "k", "f", "domain", "t", "threads",
                 "out", "figures"])
    f = _function(args.f) if args.f else None
    domain = _DOMAINS.get(args.domain) if args.domain else None
    if args.domain and domain is None:
        raise UsageError("domain must be z or n")
    spec = V.make_spec(args.theorem, k=args.k, f=f, domain=domain, t=args.t)
    grid = _grid(args.grid)
    records = V.sweep(spec, grid, threads=args.threads)
    report = V.emit_report(records, "csv")
    paths = V.write_report_files(records, spec, args.out, figures=args.figures)
    sys.stdout.write(report)
    for path in paths:
        print(f"# wrote {path}", file=sys.stderr)
    try:
        slope = V.fit_exponent(records)
        print(f"# fitted residual exponent: {slope:.4f} "
              f"(claimed shape {V.error_shape_text(spec)})", file=sys.stderr)
    except UsageError as exc:
        print(f"# no exponent fit: {exc}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# selftest: the oracle-equivalence suite, deterministic PASS lines

def _selftest_checks(threads: int):
    def gcd_identity_matches_brute():
        for k, x, fname in ((2, 2000, "tau"), (2, 1500, "phi"),
                            (2, 1500, "mu2"), (3, 300, "tau")):
            f = parse_function(fname)
            fast = spherical_sum(SumQuery(k, x, f, "gcd", "integers",
                                          "identity")).value
            slow = spherical_sum(SumQuery(k, x, f, "gcd", "integers",
                                          "brute")).value
            assert fast == slow, (k, x, fname, fast, slow)

    def lcm_convolution_matches_brute():
        for k, x, fname in ((2, 2000, "id"), (2, 1500, "mu2"), (3, 200, "id")):
            f = parse_function(fname)
            fast = spherical_sum(SumQuery(k, x, f, "lcm", "naturals",
                                          "convolution")).value
            slow = spherical_sum(SumQuery(k, x, f, "lcm", "naturals",
                                          "brute")).value
            assert fast == slow, (k, x, fname, fast, slow)

    def rk_totals_match_ball_counts():
        for k in (2, 3, 4):
            n = 2000
            total = 1 + int(build_rk(k, n).cumulative()[n])
            assert total == lattice_point_count_brute(k, n), k

    def ball_count_at_25_is_81():
        brute = lattice_point_count_brute(2, 25)
        assert brute == 81, brute
        assert 1 + int(build_rk(2, 25).cumulative()[25]) == 81

    def convolution_identities():
        n = 2000
        mu = sieve_table(parse_function("mu"), n)
        for left, right in (("tau", "one"), ("sigma", "id"), ("id", "phi")):
            lhs = dirichlet_convolve(mu, sieve_table(parse_function(left), n))
            rhs = sieve_table(parse_function(right), n)
            assert lhs.values[1:] == rhs.values[1:], (left, right)

    def wallis_halving():
        for k in range(2, 21):
            lhs = C.unit_ball_volume(k - 1) * C.wallis_cosine_integral(k)
            assert abs(lhs - C.unit_ball_volume(k) / 2) <= 1e-12, k

    def alternating_mean_is_reciprocal():
        for k in range(1, 31):
            assert C.alternating_binomial_mean(k) == Fraction(1, k), k

    def binomial_round_trip():
        rng = random.Random(20230817)
        for _ in range(25):
            k = rng.randint(1, 6)
            vec = [rng.randint(0, 10 ** 6) for _ in range(k)]
            assert n_vector_from_z_vector(z_vector_from_n_vector(vec)) == vec

    def constant_closed_forms():
        c2 = C.lcm_main_constant(parse_function("id"), 2)
        target = C.zeta(3).value / C.zeta(2).value
        assert abs(c2.value - target) <= c2.error_bound + 1e-11, c2
        e2 = C.lcm_main_constant(parse_function("mu2"), 2)
        assert abs(e2.value - C.zeta(2).value ** -2) <= e2.error_bound + 1e-11

    def sweep_cross_checks():
        for tid, grid in (("cor_tau", [200, 800, 3200]),
                          ("th5_lcm_A1", [100, 400, 1600]),
                          ("lattice_count", [25, 100, 400])):
            spec = V.make_spec(tid)
            records = V.sweep(spec, grid, threads=threads)
            assert len(records) == len(grid)
            assert all(math.isfinite(r.normalized_residual) for r in records)

    return (gcd_identity_matches_brute, lcm_convolution_matches_brute,
            rk_totals_match_ball_counts, ball_count_at_25_is_81,
            convolution_identities, wallis_halving,
            alternating_mean_is_reciprocal, binomial_round_trip,
            constant_closed_forms, sweep_cross_checks)


def _cmd_selftest(args) -> int:
    _echo(args, ["threads"])
    failures = 0
    for check in _selftest_checks(args.threads):
        try:
            check()
        except Exception as exc:
            failures += 1
            print(f"FAIL {check.__name__}")
            print(f"# {check.__name__}: {exc!r}", file=sys.stderr)
        else:
            print(f"PASS {check.__name__}")
    return 2 if failures else 0


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphersum",
        description="Exact spherical sums of arithmetic functions of gcd "
                    "and lcm, their asymptotic constants, and empirical "
                    "verification sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tabulate", help="print n,f(n) for n = 1..N")
    p.add_argument("--f", required=True, help="function spec, e.g. tau or mu*id")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("rk", help="print n,r_k(n) for n = 0..N")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("sum", help="exact spherical sum of f(gcd) or f(lcm)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--mode", choices=("gcd", "lcm"), default="gcd")
    p.add_argument("--domain", default="z", help="z (integers) or n (naturals)")
    p.add_argument("--method", choices=("brute", "identity", "convolution"),
                   default="brute")

    p = sub.add_parser("constant", help="evaluate a named constant")
    p.add_argument("name", choices=CONSTANT_NAMES)
    p.add_argument("--f", help="function spec (D, B, C, E, K)")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--s", type=int, help="zeta argument")
    p.add_argument("--tol", type=float)
    p.add_argument("--eta", type=float, help="log weight (HS)")
    p.add_argument("--S", help="exponent set (HS), e.g. N or {1,3+}")

    p = sub.add_parser("verify", help="sweep a theorem over a grid")
    p.add_argument("--theorem", required=True, choices=V.THEOREM_IDS)
    p.add_argument("--grid", required=True, help="start:stop:factor, geometric")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--f", help="function spec (defaults per theorem)")
    p.add_argument("--domain", help="z or n (defaults per theorem)")
    p.add_argument("--t", type=float, help="declared abscissa (wintner_ii)")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--out", default="reports", help="report directory")
    p.add_argument("--no-figures", dest="figures", action="store_false",
                   help="skip the PNG figure next to the CSV")

    p = sub.add_parser("selftest", help="run the oracle-equivalence suite")
    p.add_argument("--threads", type=int, default=_default_threads())

    return parser


_COMMANDS = {
    "tabulate": _cmd_tabulate,
    "rk": _cmd_rk,
    "sum": _cmd_sum,
    "constant": _cmd_constant,
    "verify": _cmd_verify,
    "selftest": _cmd_selftest,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (SizeGuardError, ComputationError, OverflowError,
            MemoryError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
