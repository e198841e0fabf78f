"""Spherical sums of f(gcd) and f(lcm) over lattice balls, by three routes.

Brute enumeration walks positive-coordinate points only and assembles
full-integer sums from the binomial symmetry identities, so the zero and
sign conventions (f(0) = 0, gcd ignores zero coordinates, lcm vanishes on
them) hold by construction.  The identity route rewrites a GCD ball sum as
sum_{d^2 m <= x} (mu*f)(d) r_k(m).  The convolution route expands f(lcm)
through its multiplicative kernel h and reduces to ellipsoid sums.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .arith import (
    FunctionSpec,
    FunctionTable,
    moebius_transform_inverse,
    prime_power_value,
    primes_up_to,
    sieve_table,
)
from .errors import SizeGuardError, UsageError
from .lattice import (
    DEFAULT_POINT_GUARD,
    RkTable,
    build_rk,
    ellipsoid_count_n,
    ellipsoid_product_sum_n,
    unit_ball_volume,
)

# functions whose lcm sums the convolution route accepts, with the growth
# rank r used by the kernel (|f(p) - p^r| small, |f(p^v)| bounded by p^(vr))
CLASS_A_RANK = {
    "id": 1,
    "sigma": 1,
    "euler_phi": 1,
    "dedekind_psi": 1,
    "beta_alt": 1,
    "mu_squared": 0,
    "one": 0,
}

MODES = ("gcd", "lcm")
DOMAINS = ("integers", "naturals")
METHODS = ("brute", "identity", "convolution")


@dataclass(frozen=True)
class SumQuery:
    k: int
    x: int
    f: FunctionSpec
    mode: str = "gcd"
    domain: str = "integers"
    method: str = "brute"

    def __post_init__(self):
        if self.k < 1:
            raise UsageError("k must be >= 1")
        if not isinstance(self.x, int) or isinstance(self.x, bool):
            raise UsageError("x must be an integer (exact summation bound)")
        if self.x < 0:
            raise UsageError("x must be >= 0")
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {MODES}")
        if self.domain not in DOMAINS:
            raise UsageError(f"domain must be one of {DOMAINS}")
        if self.method not in METHODS:
            raise UsageError(f"method must be one of {METHODS}")
        if self.method == "identity" and self.mode != "gcd":
            raise UsageError("the identity method applies to gcd sums only")
        if self.method == "identity" and self.domain != "integers":
            raise UsageError("the identity method sums over the integer lattice; "
                             "convert natural-domain values through the binomial maps")
        if self.method == "convolution" and self.mode != "lcm":
            raise UsageError("the convolution method applies to lcm sums only")


@dataclass
class SumResult:
    query: SumQuery
    value: object           # exact int, or float for log-weighted functions
    points_visited: int
    elapsed: float


def spherical_sum(query: SumQuery, **kwargs) -> SumResult:
    """Dispatch a SumQuery to its method implementation."""
    if query.mode == "gcd":
        if query.method == "brute":
            return sum_gcd_brute(query, **kwargs)
        return sum_gcd_identity(query, **kwargs)
    if query.method == "brute":
        return sum_lcm_brute(query, **kwargs)
    return sum_lcm_convolution(query, **kwargs)


# ---------------------------------------------------------------------------
# value histograms over positive-coordinate ball points

def gcd_value_counts(k: int, x: int) -> np.ndarray:
    """counts[g] = #{n in N^k : |n|^2 <= x, gcd(n) = g}.

    The innermost coordinate is vectorised; a gcd g forces every coordinate
    to be a multiple of g, so g <= sqrt(x/k) bounds the histogram.
    """
    gmax = math.isqrt(x // k) if x >= k else 0
    counts = np.zeros(gmax + 1, dtype=np.int64)
    if gmax == 0:
        return counts
    _accumulate_gcd(k, x, 0, counts)
    return counts


def _accumulate_gcd(dims: int, budget: int, seed: int, counts: np.ndarray) -> None:
    if dims == 1:
        m = math.isqrt(budget)
        if m >= 1:
            vals = np.gcd(seed, np.arange(1, m + 1, dtype=np.int64))
            counts += np.bincount(vals, minlength=len(counts))[:len(counts)]
        return
    reach = math.isqrt(budget - (dims - 1)) if budget >= dims else 0
    for n in range(1, reach + 1):
        _accumulate_gcd(dims - 1, budget - n * n, math.gcd(seed, n), counts)


def lcm_value_counts(k: int, x: int) -> np.ndarray:
    """counts[l] = #{n in N^k : |n|^2 <= x, lcm(n) = l}."""
    box: dict = {"arr": np.zeros(1, dtype=np.int64)}
    if x >= k:
        _accumulate_lcm(k, x, 1, box)
    return box["arr"]


def _accumulate_lcm(dims: int, budget: int, seed: int, box: dict) -> None:
    if dims == 1:
        m = math.isqrt(budget)
        if m >= 1:
            vals = np.lcm(seed, np.arange(1, m + 1, dtype=np.int64))
            add = np.bincount(vals)
            arr = box["arr"]
            if len(add) > len(arr):
                grown = np.zeros(len(add), dtype=np.int64)
                grown[:len(arr)] = arr
                arr = grown
                box["arr"] = arr
            arr[:len(add)] += add
        return
    reach = math.isqrt(budget - (dims - 1)) if budget >= dims else 0
    for n in range(1, reach + 1):
        _accumulate_lcm(dims - 1, budget - n * n, math.lcm(seed, n), box)


def _weighted_sum(counts: np.ndarray, table: FunctionTable):
    """Exact sum_{v} counts[v] * f(v); falls back to object arithmetic when
    an int64 dot product could overflow."""
    n = len(counts)
    values = table.values[:n]
    if not table.spec.is_integer_valued:
        return float(np.dot(counts, np.asarray(values, dtype=np.float64)))
    total = int(counts.sum())
    vmax = max((abs(v) for v in values), default=0)
    if vmax < 2 ** 62 and total * max(vmax, 1) < 2 ** 62:
        return int(np.dot(counts, np.asarray(values, dtype=np.int64)))
    return sum(int(c) * v for c, v in zip(counts.tolist(), values) if c)


# ---------------------------------------------------------------------------
# binomial conversions between integer-lattice and positive-lattice sums

def z_sum_from_n_sums(n_sums: Sequence):
    """Full-integer k-dimensional sum from positive-lattice sums.

    n_sums[j] must hold the (k-j)-dimensional positive-lattice sum for the
    same x and f, j = 0 .. k-1 (dimension k first, dimension 1 last).
    """
    k = len(n_sums)
    if k < 1:
        raise UsageError("need at least one dimension")
    return sum(math.comb(k, j) * 2 ** (k - j) * n_sums[j] for j in range(k))


def n_sum_from_z_sums(z_sums: Sequence):
    """Positive-lattice k-dimensional sum from full-integer sums, inverse of
    z_sum_from_n_sums; ordering matches (dimension k first)."""
    k = len(z_sums)
    if k < 1:
        raise UsageError("need at least one dimension")
    total = sum((-1) ** j * math.comb(k, j) * z_sums[j] for j in range(k))
    if isinstance(total, int):
        q, rem = divmod(total, 2 ** k)
        return q if rem == 0 else Fraction(total, 2 ** k)
    return total / 2 ** k


def z_vector_from_n_vector(n_vec: Sequence) -> list:
    """Map [N_k, ..., N_1] to [Z_k, ..., Z_1], dimension by dimension."""
    k = len(n_vec)
    return [z_sum_from_n_sums(n_vec[k - m:]) for m in range(k, 0, -1)]


def n_vector_from_z_vector(z_vec: Sequence) -> list:
    k = len(z_vec)
    return [n_sum_from_z_sums(z_vec[k - m:]) for m in range(k, 0, -1)]


# ---------------------------------------------------------------------------
# gcd sums

def sum_gcd_brute(query: SumQuery, guard: int = DEFAULT_POINT_GUARD,
                  force: bool = False) -> SumResult:
    """Exact ball sum of f(gcd) by positive-lattice enumeration."""
    t0 = time.perf_counter()
    if query.mode != "gcd":
        raise UsageError("sum_gcd_brute needs mode='gcd'")
    k, x = query.k, query.x
    estimate = unit_ball_volume(k) * float(x) ** (k / 2)
    if query.domain == "naturals":
        estimate /= 2 ** k
    if estimate > guard and not force:
        raise SizeGuardError(estimate, guard)
    if x == 0:
        return SumResult(query, 0, 0, time.perf_counter() - t0)
    table = sieve_table(query.f, max(math.isqrt(x), 1))
    points = 0
    if query.domain == "naturals":
        counts = gcd_value_counts(k, x)
        value = _weighted_sum(counts, table)
        points = int(counts.sum())
    else:
        n_sums = []
        for dim in range(k, 0, -1):
            counts = gcd_value_counts(dim, x)
            n_sums.append(_weighted_sum(counts, table))
            points += int(counts.sum())
        value = z_sum_from_n_sums(n_sums)
    return SumResult(query, value, points, time.perf_counter() - t0)


def sum_gcd_identity(query: SumQuery, rk: Optional[RkTable] = None) -> SumResult:
    """Exact integer-lattice ball sum of f(gcd) through the square-divisor
    identity sum_{d^2 m <= x} (mu*f)(d) r_k(m)."""
    t0 = time.perf_counter()
    if query.mode != "gcd" or query.domain != "integers":
        raise UsageError("sum_gcd_identity sums f(gcd) over the integer lattice")
    k, x = query.k, query.x
    if x == 0:
        return SumResult(query, 0, 0, time.perf_counter() - t0)
    root = math.isqrt(x)
    mu_f = moebius_transform_inverse(sieve_table(query.f, root))
    if rk is None or rk.k != k or rk.limit < x:
        rk = build_rk(k, x)
    prefix = rk.cumulative()
    value = 0
    terms = 0
    for d in range(1, root + 1):
        c = mu_f[d]
        if c:
            value += c * int(prefix[x // (d * d)])
            terms += 1
    return SumResult(query, value, terms, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# lcm sums

def sum_lcm_brute(query: SumQuery, guard: int = DEFAULT_POINT_GUARD,
                  force: bool = False) -> SumResult:
    """Exact ball sum of f(lcm) by positive-lattice enumeration; the
    integer-lattice value is the positive one times 2^k."""
    t0 = time.perf_counter()
    if query.mode != "lcm":
        raise UsageError("sum_lcm_brute needs mode='lcm'")
    k, x = query.k, query.x
    estimate = unit_ball_volume(k) * float(x) ** (k / 2) / 2 ** k
    if estimate > guard and not force:
        raise SizeGuardError(estimate, guard)
    if x < k:
        return SumResult(query, 0, 0, time.perf_counter() - t0)
    counts = lcm_value_counts(k, x)
    table = sieve_table(query.f, max(len(counts) - 1, 1))
    value = _weighted_sum(counts, table)
    if query.domain == "integers":
        value *= 2 ** k
    return SumResult(query, value, int(counts.sum()), time.perf_counter() - t0)


@dataclass(frozen=True)
class HLocalTable:
    """Kernel values h(p^{e_1}, ..., p^{e_k}) for 0 <= e_i <= max_exponent."""

    p: int
    k: int
    r: int
    max_exponent: int
    values: dict

    def value(self, exponents: tuple) -> int:
        return self.values[exponents]

    def nonzero(self) -> list:
        return [(e, v) for e, v in self.values.items() if v and any(e)]


def h_local_lcm(f: FunctionSpec, r: int, k: int, p: int,
                max_exponent: int) -> HLocalTable:
    """Local kernel of the lcm convolution at prime p.

    h(p^e) = sum over delta in {0,1}^k, delta <= e, of
    f(p^{max(e - delta)}) * prod_i (-p^r)^{delta_i}; the kernel is
    multiplicative across primes.
    """
    if not f.is_multiplicative:
        raise UsageError("the lcm kernel needs a multiplicative f")
    if not f.is_integer_valued:
        raise UsageError("the lcm kernel needs an integer-valued f")
    if r not in (0, 1):
        raise UsageError("kernel rank r must be 0 or 1")
    fp = [prime_power_value(f, p, e) for e in range(max_exponent + 1)]
    pr = p ** r
    values = {}
    for e in itertools.product(range(max_exponent + 1), repeat=k):
        acc = 0
        for delta in itertools.product(*(range(min(ei, 1) + 1) for ei in e)):
            term = fp[max(ei - di for ei, di in zip(e, delta))]
            s = sum(delta)
            acc += term * (-pr) ** s if s else term
        values[e] = acc
    return HLocalTable(p=p, k=k, r=r, max_exponent=max_exponent, values=values)


@lru_cache(maxsize=100_000)
def _cached_local_nonzero(f: FunctionSpec, r: int, k: int, p: int,
                          max_exponent: int) -> tuple:
    return tuple(h_local_lcm(f, r, k, p, max_exponent).nonzero())


def sum_lcm_convolution(query: SumQuery, r: Optional[int] = None) -> SumResult:
    """Exact ball sum of f(lcm) through the multiplicative kernel.

    S = sum over d in N^k with nonzero kernel of h(d) times the ellipsoid
    sum with axis weights d_i^2 (coordinate-product weighted for r = 1,
    plain count for r = 0).
    """
    t0 = time.perf_counter()
    if query.mode != "lcm":
        raise UsageError("sum_lcm_convolution needs mode='lcm'")
    f = query.f
    if r is None:
        r = CLASS_A_RANK.get(f.kind)
        if r is None:
            raise UsageError(
                f"{f.text} has no declared growth rank; pass r=0 or r=1 explicitly")
    if r not in (0, 1):
        raise UsageError("kernel rank r must be 0 or 1")
    k, x = query.k, query.x
    if x < k:
        return SumResult(query, 0, 0, time.perf_counter() - t0)
    dmax = math.isqrt(x)
    primes = primes_up_to(dmax)
    locals_by_prime = []
    for p in primes:
        emax = 1
        while p ** (emax + 1) <= dmax:
            emax += 1
        entries = _cached_local_nonzero(f, r, k, p, emax)
        if entries:
            locals_by_prime.append((p, entries))

    total = 0
    tuples_visited = 0

    def inner(d: tuple) -> int:
        a = tuple(di * di for di in d)
        if r == 1:
            return ellipsoid_product_sum_n(a, x, force=True)
        return ellipsoid_count_n(a, x, force=True)

    stack = [(0, (1,) * k, 1, k)]  # (prime index, d, h, |d|^2)
    while stack:
        idx, d, h, norm = stack.pop()
        tuples_visited += 1
        total += h * inner(d)
        for j in range(idx, len(locals_by_prime)):
            p, entries = locals_by_prime[j]
            if norm + p * p - 1 > x:
                # extending by p multiplies some coordinate (>= 1) by >= p,
                # growing the norm by at least p^2 - 1; later primes more so
                break
            for e, hv in entries:
                nd = tuple(di * p ** ei for di, ei in zip(d, e))
                nn = sum(v * v for v in nd)
                if nn <= x and all(v <= dmax for v in nd):
                    stack.append((j + 1, nd, h * hv, nn))

    if query.domain == "integers":
        total *= 2 ** k
    return SumResult(query, total, tuples_visited, time.perf_counter() - t0)
