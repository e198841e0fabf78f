"""Numerical evaluation of the constants in the asymptotic main terms.

Every routine returns a ConstantValue carrying a certified error bound:
the true constant lies within error_bound of value.  Truncation records
the cutoffs used, and shrinking any cutoff can only grow the bound, never
silently change the value.

Families:
  zeta                     Riemann zeta at integer s >= 2
  unit_ball_volume         volume of the k-dimensional unit ball
  wallis_cosine_integral   integral of cos^k over a quarter period
  alternating_binomial_mean  sum_j (-1)^j C(k-1,j)/(j+1), exactly 1/k
  bounded_series_constant  sum_n g(n)/n^k for bounded g
  mean_value_constant      density constant of f at the gcd, two routes
  lcm_main_constant        Euler product for lcm sums (weighted / counting)
  euler_product_poly       product over primes of an explicit polynomial in 1/p
  fseta_prime_constant     prime sums sum_p (log p)^eta H_{S,k}(p)
  prime_log_sum_constant   the named special cases (log, logkappa, omega, Omega)
  class_a_spot_check       empirical growth ranks of a multiplicative function
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from .arith import FunctionSpec, SDescriptor, prime_power_value, primes_up_to, sieve_table
from .errors import ComputationError, UsageError
from .lattice import unit_ball_volume
from .seriestail import BoundedSeries, euler_product_from_series, zeta_core
from .sums import CLASS_A_RANK

DEFAULT_PRIME_LIMIT = 100_000
DEFAULT_EXPONENT_LIMIT = 40
SERIES_ORDER = 10
_SIEVE_CAP = 50_000_000


@dataclass(frozen=True)
class Truncation:
    prime_limit: Optional[int] = None
    exponent_limit: Optional[int] = None
    series_limit: Optional[int] = None


@dataclass(frozen=True)
class ConstantValue:
    value: float
    error_bound: float
    truncation: Truncation = Truncation()

    def __float__(self) -> float:
        return self.value

    def agrees(self, target: float, atol: float = 0.0) -> bool:
        return abs(self.value - target) <= self.error_bound + atol


@lru_cache(maxsize=256)
def zeta(s: int, tol: float = 1e-12) -> ConstantValue:
    value, bound, cutoff = zeta_core(s, tol)
    return ConstantValue(value, bound, Truncation(series_limit=cutoff))


# ---------------------------------------------------------------------------
# closed-form geometric quantities

def wallis_cosine_integral(k: int) -> float:
    """Integral of cos^k over [0, pi/2]; I_1 = 1, I_2 = pi/4."""
    if k < 0:
        raise UsageError("order must be nonnegative")
    num, den = 1, 1
    for i in range(k, 1, -2):
        num *= i - 1
        den *= i
    ratio = Fraction(num, den)
    if k % 2 == 0:
        return float(ratio) * math.pi / 2.0
    return float(ratio)


def alternating_binomial_mean(k: int) -> Fraction:
    """sum_{j=0}^{k-1} (-1)^j C(k-1, j) / (j+1), computed term by term."""
    if k < 1:
        raise UsageError("k must be positive")
    total = Fraction(0)
    for j in range(k):
        total += Fraction((-1) ** j * math.comb(k - 1, j), j + 1)
    return total


# ---------------------------------------------------------------------------
# coefficient tables for multiplicative kinds: f(p^m) = p^(r m) * poly(1/p)

_SERIES_RANK = {
    "one": 0, "delta": 0, "moebius": 0, "liouville": 0, "tau": 0,
    "mu_squared": 0, "id": 1, "sigma": 1, "euler_phi": 1, "dedekind_psi": 1,
    "beta_alt": 1,
}


def _fpoly(kind: str, m: int) -> list:
    if m == 0:
        return [Fraction(1)]
    if kind == "one":
        return [Fraction(1)]
    if kind == "delta":
        return [Fraction(0)]
    if kind == "moebius":
        return [Fraction(-1)] if m == 1 else [Fraction(0)]
    if kind == "liouville":
        return [Fraction((-1) ** m)]
    if kind == "tau":
        return [Fraction(m + 1)]
    if kind == "mu_squared":
        return [Fraction(1)] if m == 1 else [Fraction(0)]
    if kind == "id":
        return [Fraction(1)]
    if kind == "sigma":
        return [Fraction(1)] * (m + 1)
    if kind == "euler_phi":
        return [Fraction(1), Fraction(-1)]
    if kind == "dedekind_psi":
        return [Fraction(1), Fraction(1)]
    if kind == "beta_alt":
        return [Fraction((-1) ** i) for i in range(m + 1)]
    raise UsageError(f"no local expansion for kind {kind!r}")


def _monomial(m: int, order: int) -> BoundedSeries:
    return BoundedSeries.from_poly([0] * m + [1], order)


# exact dense polynomial helpers (lists of Fractions/ints, index = degree)

def _padd(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _pmul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _ppow(a: list, n: int) -> list:
    out = [1]
    for _ in range(n):
        out = _pmul(out, a)
    return out


# ---------------------------------------------------------------------------
# bounded series constants: sum_n g(n) / n^k

_BOUNDED_KINDS = {"one", "delta", "moebius", "liouville", "mu_squared"}


def _np_prime_flags(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p:: p] = False
    return flags


def _np_table(kind: str, limit: int) -> np.ndarray:
    if kind == "one":
        vals = np.ones(limit + 1, dtype=np.int8)
        vals[0] = 0
        return vals
    if kind == "delta":
        vals = np.zeros(limit + 1, dtype=np.int8)
        vals[1] = 1
        return vals
    primes = np.nonzero(_np_prime_flags(limit))[0]
    if kind == "moebius" or kind == "mu_squared":
        vals = np.ones(limit + 1, dtype=np.int8)
        vals[0] = 0
        for p in primes:
            vals[p:: p] *= -1
            sq = int(p) * int(p)
            if sq <= limit:
                vals[sq:: sq] = 0
        if kind == "mu_squared":
            return (vals != 0).astype(np.int8)
        return vals
    if kind == "liouville":
        vals = np.ones(limit + 1, dtype=np.int8)
        vals[0] = 0
        for p in primes:
            q = int(p)
            while q <= limit:
                vals[q:: q] *= -1
                q *= int(p)
        return vals
    raise UsageError(f"no fast table for kind {kind!r}")


def _weighted_series_sum(values: np.ndarray, k: int) -> Tuple[float, float]:
    """(sum of values[n]/n^k, sum of |values[n]|/n^k) over n >= 1."""
    limit = len(values) - 1
    chunks = []
    abs_chunks = []
    step = 1 << 20
    for start in range(1, limit + 1, step):
        stop = min(limit + 1, start + step)
        n = np.arange(start, stop, dtype=np.float64)
        w = n ** (-float(k))
        seg = values[start:stop].astype(np.float64)
        chunks.append(float(np.dot(seg, w)))
        abs_chunks.append(float(np.dot(np.abs(seg), w)))
    return math.fsum(chunks), math.fsum(abs_chunks)


@lru_cache(maxsize=256)
def bounded_series_constant(spec: FunctionSpec, k: int, tol: float = 1e-6,
                            g_bound: Optional[float] = None,
                            series_limit: Optional[int] = None) -> ConstantValue:
    """sum_{n>=1} g(n)/n^k with the tail bounded by g_bound * N^(1-k)/(k-1)."""
    if k < 2:
        raise UsageError("series needs k >= 2")
    kind = spec.kind if spec.left is None else None
    if g_bound is None:
        if kind in _BOUNDED_KINDS:
            g_bound = 1.0
        else:
            raise UsageError(f"{spec.text} has no registered bound; pass g_bound")
    if kind == "delta":
        return ConstantValue(1.0, 0.0, Truncation(series_limit=1))
    if kind == "one":
        zv = zeta(k, min(tol, 1e-12))
        return ConstantValue(zv.value, zv.error_bound, zv.truncation)
    if series_limit is None:
        need = (2.0 * g_bound / (tol * (k - 1))) ** (1.0 / (k - 1))
        series_limit = max(64, int(need) + 1)
        if series_limit > _SIEVE_CAP:
            raise ComputationError(
                f"tol {tol:g} needs N={series_limit}, beyond the sieve cap")
    if kind in _BOUNDED_KINDS:
        values = _np_table(kind, series_limit)
        total, abs_total = _weighted_series_sum(values, k)
    else:
        if series_limit > 4_000_000:
            raise ComputationError("generic sieve capped at N=4000000")
        table = sieve_table(spec, series_limit)
        total = math.fsum(table.values[n] / n ** k
                          for n in range(1, series_limit + 1))
        abs_total = math.fsum(abs(table.values[n]) / n ** k
                              for n in range(1, series_limit + 1))
    tail = g_bound * series_limit ** (1.0 - k) / (k - 1)
    bound = tail + 1e-12 * abs_total
    return ConstantValue(total, bound, Truncation(series_limit=series_limit))


# ---------------------------------------------------------------------------
# mean value constant of f at the gcd (two independent routes)

_GROWTH = {
    "one": (1.0, 0.0), "delta": (1.0, 0.0), "moebius": (1.0, 0.0),
    "liouville": (1.0, 0.0), "mu_squared": (1.0, 0.0), "tau": (2.0, 0.5),
    "id": (1.0, 1.0), "euler_phi": (1.0, 1.0), "sigma": (2.0, 1.5),
    "dedekind_psi": (2.0, 1.5),
}

_NP_SERIES_KINDS = {"one", "delta", "moebius", "liouville", "mu_squared",
                    "tau", "id", "euler_phi", "sigma", "dedekind_psi"}


def _np_series_table(kind: str, limit: int) -> np.ndarray:
    if kind in _BOUNDED_KINDS:
        return _np_table(kind, limit)
    if kind == "id":
        vals = np.arange(limit + 1, dtype=np.float64)
        return vals
    if kind == "tau":
        vals = np.zeros(limit + 1, dtype=np.float64)
        for i in range(1, math.isqrt(limit) + 1):
            vals[i * i:: i] += 2.0
            vals[i * i] -= 1.0
        return vals
    if kind == "sigma":
        vals = np.zeros(limit + 1, dtype=np.float64)
        for i in range(1, math.isqrt(limit) + 1):
            start = i * i
            vals[start:: i] += float(i)
            vals[start:: i] += np.arange(i, limit // i + 1, dtype=np.float64)
            vals[start] -= float(i)
        return vals
    if kind == "euler_phi" or kind == "dedekind_psi":
        vals = np.arange(limit + 1, dtype=np.float64)
        primes = np.nonzero(_np_prime_flags(limit))[0]
        for p in primes:
            if kind == "euler_phi":
                vals[p:: p] -= vals[p:: p] / float(p)
            else:
                vals[p:: p] += vals[p:: p] / float(p)
        return vals
    raise UsageError(f"no fast table for kind {kind!r}")


# kinds vanishing at prime powers beyond a fixed exponent
_SUPPORT = {"delta": 0, "moebius": 1, "mu_squared": 1}


def _euler_local_numeric_gcd(kind: str, r: int, k: int,
                             prime_limit: int) -> Iterator[Tuple[int, float, float]]:
    spec = FunctionSpec(kind)
    drop = k - r
    support = _SUPPORT.get(kind)
    for p in primes_up_to(prime_limit):
        s = Fraction(0)
        m = 1
        while True:
            if support is not None and m > support:
                tail = 0.0
                break
            # bounds sum over m' >= m of |f(p^m')| p^(-k m')
            cap = 3.6 * (m + 2) * float(p) ** (-drop * m)
            if cap < 1e-18 or m > 200:
                tail = cap
                break
            s += Fraction(prime_power_value(spec, p, m), p ** (k * m))
            m += 1
        # u = (1 - t^k)(1 + s) - 1 with t = 1/p, exactly
        tk = Fraction(1, p ** k)
        u = s - tk - tk * s
        yield p, float(u), tail


def _euler_series_gcd(kind: str, r: int, k: int) -> BoundedSeries:
    order = SERIES_ORDER
    drop = k - r
    total = [Fraction(0)]
    m = 0
    while drop * m <= order:
        total = _padd(total, [0] * (drop * m) + _fpoly(kind, m))
        m += 1
    support = _SUPPORT.get(kind)
    rem = Fraction(0)
    if support is None or support >= m:
        # terms beyond m: |f(p^m)/p^(r m)| <= 2 (m+1), folded at t = 1/2
        rem = Fraction(4 * (m + 2))
    front = [1] + [0] * (k - 1) + [-1]
    return BoundedSeries.from_poly(_pmul(front, total), order, rem)


@lru_cache(maxsize=256)
def mean_value_constant(spec: FunctionSpec, k: int, tol: float = 1e-9,
                        route: str = "auto",
                        prime_limit: Optional[int] = None,
                        series_limit: Optional[int] = None) -> ConstantValue:
    """Density constant sum_d (mu*f)(d)/d^k of f evaluated at gcds.

    route='euler' expands the product over primes (fast, tight bounds);
    route='series' sums f(n)/n^k directly and divides by zeta(k) (slow,
    loose bounds, useful as an independent cross-check).
    """
    if spec.left is not None:
        raise UsageError("mean value constant needs a plain multiplicative kind")
    kind = spec.kind
    if route == "auto":
        route = "euler" if kind in _SERIES_RANK else "series"
    if route == "euler":
        if kind not in _SERIES_RANK:
            raise UsageError(f"no local expansion for kind {kind!r}")
        r = _SERIES_RANK[kind]
        if k < r + 2:
            raise UsageError(f"product for {kind} diverges unless k >= {r + 2}")
        if prime_limit is None:
            prime_limit = DEFAULT_PRIME_LIMIT
        series = _euler_series_gcd(kind, r, k)
        primes = primes_up_to(prime_limit)
        value, bound = euler_product_from_series(
            _euler_local_numeric_gcd(kind, r, k, prime_limit), series, primes)
        if bound > tol:
            raise ComputationError(
                f"bound {bound:g} above tol {tol:g}; raise prime_limit")
        return ConstantValue(value, bound, Truncation(prime_limit=prime_limit))
    if route != "series":
        raise UsageError("route must be 'euler', 'series', or 'auto'")
    if kind not in _GROWTH:
        raise UsageError(f"no growth envelope for kind {kind!r}")
    kg, alpha = _GROWTH[kind]
    if k <= alpha + 1:
        raise UsageError(f"series for {kind} diverges unless k > {alpha + 1:g}")
    if series_limit is None:
        need = (2.0 * kg / (tol * (k - alpha - 1))) ** (1.0 / (k - alpha - 1))
        series_limit = max(64, int(need) + 1)
    cap = _SIEVE_CAP if kind in _BOUNDED_KINDS else _SIEVE_CAP // 2
    if series_limit > cap:
        raise ComputationError(f"tol {tol:g} needs N={series_limit}, beyond cap")
    if kind in _NP_SERIES_KINDS:
        values = _np_series_table(kind, series_limit)
        total, abs_total = _weighted_series_sum(values, k)
    else:
        if series_limit > 4_000_000:
            raise ComputationError("generic sieve capped at N=4000000")
        table = sieve_table(spec, series_limit)
        total = math.fsum(table.values[n] / n ** k
                          for n in range(1, series_limit + 1))
        abs_total = math.fsum(abs(table.values[n]) / n ** k
                              for n in range(1, series_limit + 1))
    tail = kg * series_limit ** (alpha + 1.0 - k) / (k - alpha - 1)
    num_bound = tail + 1e-11 * abs_total
    zv = zeta(k, 1e-13)
    value = total / zv.value
    bound = (num_bound + abs(value) * zv.error_bound) / zv.value
    return ConstantValue(value, bound, Truncation(series_limit=series_limit))


# ---------------------------------------------------------------------------
# lcm main constants (Euler products with max-exponent reorganization)

def _lcm_local_numeric(kind: str, r: int, k: int, prime_limit: int,
                       exponent_limit: int) -> Iterator[Tuple[int, float, float]]:
    spec = FunctionSpec(kind)
    w = r + 1
    env = 2.0
    support = _SUPPORT.get(kind)
    for p in primes_up_to(prime_limit):
        q = Fraction(1, p ** w)
        ginf = 1.0 / (1.0 - float(q))
        coef = 2.0 * env * k * ginf ** (k - 1)
        g_old = Fraction(1)
        s = Fraction(0)
        m = 1
        while True:
            if support is not None and m > support:
                tail = 0.0
                break
            # bounds sum over m' >= m of |f(p^m')| (G(m')^k - G(m'-1)^k)
            cap = coef * float(p) ** (-m)
            if cap < 1e-18 or m > exponent_limit:
                tail = cap
                break
            ratio = Fraction(prime_power_value(spec, p, m), p ** (r * m))
            g_new = g_old + q ** m
            walls = Fraction(0)
            for j in range(k):
                walls += g_new ** j * g_old ** (k - 1 - j)
            s += ratio * Fraction(1, p ** m) * walls
            g_old = g_new
            m += 1
        front = Fraction(p - 1, p) ** k
        u = front * (1 + s) - 1
        yield p, float(u), float(front) * tail


def _lcm_series(kind: str, r: int, k: int) -> BoundedSeries:
    order = SERIES_ORDER
    w = r + 1

    def gpoly(m: int) -> list:
        coeffs = [0] * (w * m + 1)
        for nu in range(m + 1):
            coeffs[w * nu] = 1
        return coeffs

    total = [Fraction(1)]
    g_old = gpoly(0)
    for m in range(1, order + 1):
        g_new = gpoly(m)
        pow_new = [[1]]
        pow_old = [[1]]
        for _ in range(k - 1):
            pow_new.append(_pmul(pow_new[-1], g_new))
            pow_old.append(_pmul(pow_old[-1], g_old))
        walls = [0]
        for j in range(k):
            walls = _padd(walls, _pmul(pow_new[j], pow_old[k - 1 - j]))
        term = _pmul([0] * m + _fpoly(kind, m), walls)
        total = _padd(total, term)
        g_old = g_new
    rem = Fraction(0)
    if _SUPPORT.get(kind) is None:
        # terms beyond m = order: ratio <= 2, walls <= k 2^(k-1), geometric
        rem = Fraction(k * 2 ** (k + 1))
    front = _ppow([1, -1], k)
    return BoundedSeries.from_poly(_pmul(front, total), order, rem)


# declared growth constants (C1, C2): |f(p) - p^r| <= C1 p^(r-1/2) and
# |f(p^nu)| <= C2 p^(nu r) for nu >= 2
_CLASS_A_DECLARED = {
    "id": (0.0, 1.0), "sigma": (1.0, 2.0), "euler_phi": (1.0, 1.0),
    "dedekind_psi": (1.0, 2.0), "beta_alt": (1.0, 1.0),
    "one": (0.0, 1.0), "mu_squared": (0.0, 1.0),
}

_CLASS_A_CHECKED: dict = {}


def _ensure_class_a(spec: FunctionSpec, r: int) -> None:
    kind = spec.kind
    if kind in _CLASS_A_CHECKED:
        return
    c1_declared, c2_declared = _CLASS_A_DECLARED[kind]
    found = class_a_spot_check(spec, r)
    if (found.prime_deviation > c1_declared + 1e-12
            or found.power_ratio > c2_declared + 1e-12):
        raise ComputationError(
            f"{kind} violates its declared growth rank {r}: "
            f"C1={found.prime_deviation:g}, C2={found.power_ratio:g}")
    _CLASS_A_CHECKED[kind] = found


@lru_cache(maxsize=256)
def lcm_main_constant(spec: FunctionSpec, k: int, r: Optional[int] = None,
                      tol: float = 1e-9,
                      prime_limit: Optional[int] = None,
                      exponent_limit: Optional[int] = None) -> ConstantValue:
    """Euler product driving the lcm sum main term.

    r=1 gives the constant for the product-weighted sum (weight w=2 in the
    local factors), r=0 the constant for the plain counting sum (w=1).
    """
    if spec.left is not None:
        raise UsageError("lcm constant needs a plain multiplicative kind")
    kind = spec.kind
    registered = CLASS_A_RANK.get(kind)
    if registered is None:
        raise UsageError(f"{kind} has no registered growth rank")
    if r is None:
        r = registered
    elif r != registered:
        raise UsageError(f"{kind} has growth rank {registered}, not {r}")
    if k < 1:
        raise UsageError("k must be positive")
    _ensure_class_a(spec, r)
    if prime_limit is None:
        prime_limit = DEFAULT_PRIME_LIMIT
    if exponent_limit is None:
        exponent_limit = DEFAULT_EXPONENT_LIMIT
    series = _lcm_series(kind, r, k)
    primes = primes_up_to(prime_limit)
    value, bound = euler_product_from_series(
        _lcm_local_numeric(kind, r, k, prime_limit, exponent_limit),
        series, primes)
    if bound > tol:
        raise ComputationError(f"bound {bound:g} above tol {tol:g}; raise limits")
    return ConstantValue(value, bound,
                         Truncation(prime_limit=prime_limit,
                                    exponent_limit=exponent_limit))


# ---------------------------------------------------------------------------
# explicit Euler products of polynomials in 1/p

def euler_product_poly(coeffs: Sequence, prime_limit: int = DEFAULT_PRIME_LIMIT,
                       tol: float = 1e-9) -> ConstantValue:
    """Product over all primes of sum_j coeffs[j] p^(-j); needs c0=1, c1=0."""
    cs = [Fraction(c) for c in coeffs]
    order = max(SERIES_ORDER, len(cs) - 1)
    series = BoundedSeries.from_poly(cs, order)

    def locals_() -> Iterator[Tuple[int, float, float]]:
        for p in primes_up_to(prime_limit):
            u = Fraction(0)
            for c in reversed(cs[2:]):
                u = (u + c) / p
            yield p, float(u / p), 0.0

    primes = primes_up_to(prime_limit)
    value, bound = euler_product_from_series(locals_(), series, primes)
    if bound > tol:
        raise ComputationError(f"bound {bound:g} above tol {tol:g}; raise prime_limit")
    return ConstantValue(value, bound, Truncation(prime_limit=prime_limit))


# ---------------------------------------------------------------------------
# prime sums sum_p (log p)^eta H_{S,k}(p) and the named special cases

@lru_cache(maxsize=256)
def fseta_prime_constant(s_set: SDescriptor, eta: float, k: int,
                         tol: Optional[float] = None,
                         prime_limit: Optional[int] = None) -> ConstantValue:
    """sum over primes of (log p)^eta * sum_{nu in S} p^(-k nu).

    The tail over p > P is bounded through the integer tail: each summand
    is at most (log t)^eta/(t^k - 1), and (log t)^eta <= (log P)^eta
    (t/P)^(eta/log P) for t >= P turns the integral elementary.
    """
    if k < 2:
        raise UsageError("prime constant needs k >= 2")
    if eta < 0:
        raise UsageError("eta must be nonnegative")
    if prime_limit is None:
        prime_limit = DEFAULT_PRIME_LIMIT

    def tail_bound(limit: int) -> float:
        c = eta / math.log(limit)
        if c >= k - 1:
            raise ComputationError("eta too large for this k at this prime limit")
        raw = math.log(limit) ** eta * limit ** (1.0 - k) / (k - 1 - c)
        return raw / (1.0 - limit ** (-float(k)))

    if tol is not None:
        while tail_bound(prime_limit) > tol * 0.9:
            prime_limit *= 2
            if prime_limit > 20_000_000:
                raise ComputationError(
                    f"tol {tol:g} unreachable below the prime sieve cap")
    terms = []
    for p in primes_up_to(prime_limit):
        h = s_set.power_tail(float(p) ** (-k))
        terms.append(math.log(p) ** eta * h if eta else h)
    partial = math.fsum(terms)
    bound = tail_bound(prime_limit) + 4e-16 * partial
    if tol is not None and bound > tol:
        raise ComputationError(f"bound {bound:g} above tol {tol:g}")
    return ConstantValue(partial, bound, Truncation(prime_limit=prime_limit))


_PRIME_LOG_KINDS = {
    "log": (SDescriptor.naturals(), 1.0),
    "logkappa": (SDescriptor.singleton_one(), 1.0),
    "omega": (SDescriptor.singleton_one(), 0.0),
    "bigomega": (SDescriptor.naturals(), 0.0),
}


@lru_cache(maxsize=256)
def prime_log_sum_constant(kind: str, k: int, tol: Optional[float] = None,
                           prime_limit: Optional[int] = None) -> ConstantValue:
    """Named prime-sum constants: kind in log, logkappa, omega, bigomega."""
    if kind not in _PRIME_LOG_KINDS:
        raise UsageError(f"unknown prime-sum kind {kind!r}")
    s_set, eta = _PRIME_LOG_KINDS[kind]
    return fseta_prime_constant(s_set, eta, k, tol=tol, prime_limit=prime_limit)


# ---------------------------------------------------------------------------
# empirical growth-rank check of a multiplicative function

@dataclass(frozen=True)
class ClassAMembership:
    spec: FunctionSpec
    r: int
    prime_deviation: float      # max |f(p) - p^r| / p^(r - 1/2) over p <= P
    power_ratio: float          # max |f(p^nu)| / p^(nu r), nu >= 2, p^nu <= Q
    prime_limit: int
    power_limit: int


def class_a_spot_check(spec: FunctionSpec, r: int,
                       prime_limit: int = 10_000,
                       power_limit: int = 1_000_000) -> ClassAMembership:
    if not spec.is_multiplicative:
        raise UsageError("growth ranks apply to multiplicative functions")
    c1 = 0.0
    c2 = 0.0
    for p in primes_up_to(prime_limit):
        dev = abs(prime_power_value(spec, p, 1) - p ** r)
        c1 = max(c1, dev / float(p) ** (r - 0.5))
    for p in primes_up_to(math.isqrt(power_limit)):
        nu = 2
        q = p * p
        while q <= power_limit:
            val = abs(prime_power_value(spec, p, nu))
            c2 = max(c2, val / q ** r if r else float(val))
            nu += 1
            q *= p
    return ClassAMembership(spec, r, c1, c2, prime_limit, power_limit)
