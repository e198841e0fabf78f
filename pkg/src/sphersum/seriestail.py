"""Certified numerics for Euler products and zeta-type series.

BoundedSeries is a polynomial in t with exact rational coefficients plus a
remainder envelope: a pair (coeffs, rem) stands for any function f with
|f(t) - sum c_j t^j| <= rem * t^(order+1) on 0 < t <= 1/2.  Sums and
products propagate the envelope, so an Euler-product local factor expanded
through order J yields a rigorous bound on the whole prime tail once the
power sums sum_{p > P} p^(-j) are known.  Those are computed through the
Moebius-log-zeta expansion of the prime zeta function.

The zeta core uses the Euler-Maclaurin corrected integral tail; for a
completely monotone integrand the correction series alternates, so the
first omitted term bounds the truncation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .arith import FunctionSpec, eval_point
from .errors import ComputationError, UsageError

T_MAX = Fraction(1, 2)  # envelope validity domain: 0 < t <= 1/2


@dataclass(frozen=True)
class BoundedSeries:
    coeffs: tuple          # Fractions c_0 .. c_J
    rem: Fraction          # |f(t) - poly(t)| <= rem * t^(J+1) for t <= 1/2

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, coeffs: Sequence, order: int,
                  rem: Fraction = Fraction(0)) -> "BoundedSeries":
        """Exact polynomial, folding coefficients above the order into the
        remainder envelope (|c_j t^j| <= |c_j| (1/2)^(j-J-1) t^(J+1))."""
        cs = [Fraction(c) for c in coeffs]
        rem = Fraction(rem)
        kept = cs[:order + 1] + [Fraction(0)] * max(0, order + 1 - len(cs))
        for j in range(order + 1, len(cs)):
            rem += abs(cs[j]) * T_MAX ** (j - order - 1)
        return cls(coeffs=tuple(kept), rem=rem)

    def _abs_at_tmax(self) -> Fraction:
        return sum(abs(c) * T_MAX ** j for j, c in enumerate(self.coeffs))

    def __add__(self, other: "BoundedSeries") -> "BoundedSeries":
        if self.order != other.order:
            raise UsageError("series orders must match")
        cs = tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        return BoundedSeries(coeffs=cs, rem=self.rem + other.rem)

    def __mul__(self, other: "BoundedSeries") -> "BoundedSeries":
        if self.order != other.order:
            raise UsageError("series orders must match")
        order = self.order
        prod = [Fraction(0)] * (2 * order + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        rem = (self._abs_at_tmax() * other.rem
               + other._abs_at_tmax() * self.rem
               + self.rem * other.rem * T_MAX ** (order + 1))
        return BoundedSeries.from_poly(prod, order, rem)

    def scale(self, c) -> "BoundedSeries":
        c = Fraction(c)
        return BoundedSeries(coeffs=tuple(c * a for a in self.coeffs),
                             rem=abs(c) * self.rem)

    def power(self, n: int) -> "BoundedSeries":
        out = BoundedSeries.from_poly([1], self.order)
        for _ in range(n):
            out = out * self
        return out

    def add_remainder(self, extra) -> "BoundedSeries":
        return BoundedSeries(coeffs=self.coeffs, rem=self.rem + Fraction(extra))


# ---------------------------------------------------------------------------
# zeta core with Euler-Maclaurin tail

def zeta_core(s: int, tol: float) -> Tuple[float, float, int]:
    """(value, error bound, cutoff) for zeta(s), integer s >= 2."""
    if s < 2:
        raise UsageError("zeta needs integer s >= 2")
    if not tol > 0:
        raise UsageError("tol must be positive")
    n = 16
    while True:
        # first omitted Euler-Maclaurin term at cutoff n
        omitted = s * (s + 1) * (s + 2) / 720.0 * n ** (-s - 3.0)
        if omitted <= tol / 4 or n >= 4_000_000:
            break
        n *= 2
    partial = math.fsum(i ** (-float(s)) for i in range(1, n + 1))
    tail = (n ** (1.0 - s) / (s - 1.0) - 0.5 * n ** (-float(s))
            + s / 12.0 * n ** (-s - 1.0))
    value = partial + tail
    bound = omitted + 4e-16 * abs(value)
    if bound > tol:
        raise ComputationError(f"zeta({s}) cannot reach tol {tol:g}")
    return value, bound, n


# ---------------------------------------------------------------------------
# prime zeta and its tails

_MU_SMALL = {1: 1, 2: -1, 3: -1, 4: 0, 5: -1, 6: 1}


def _mu(m: int) -> int:
    if m in _MU_SMALL:
        return _MU_SMALL[m]
    return eval_point(FunctionSpec("moebius"), m)


_PZ_CACHE: dict = {}


def prime_zeta(j: int) -> Tuple[float, float]:
    """(value, error bound) for sum over primes of p^(-j), j >= 2.

    Moebius-log-zeta expansion: P(j) = sum_m mu(m)/m log zeta(j m).  Terms
    with j m > 64 are bounded by the geometric envelope of log zeta.
    """
    if j < 2:
        raise UsageError("prime zeta needs j >= 2")
    if j in _PZ_CACHE:
        return _PZ_CACHE[j]
    total = 0.0
    err = 0.0
    m = 1
    while j * m <= 64:
        mu = _mu(m)
        if mu:
            zv, ze, _ = zeta_core(j * m, 1e-15)
            total += mu / m * math.log(zv)
            err += ze / zv * 1.01 / m + 2e-16 * abs(math.log(zv))
        m += 1
    # log zeta(s) <= 1.1 * 2^(-s) for s > 64
    err += 2.2 * 2.0 ** (-j * m)
    _PZ_CACHE[j] = (total, err)
    return total, err


_PZ_TAIL_CACHE: dict = {}


def prime_zeta_tail(j: int, primes: Sequence[int]) -> Tuple[float, float]:
    """(value, error bound) for sum_{p > P} p^(-j), P = max of the prime list."""
    key = (j, len(primes), primes[-1] if primes else 0)
    if key in _PZ_TAIL_CACHE:
        return _PZ_TAIL_CACHE[key]
    total, err = prime_zeta(j)
    partial = math.fsum(p ** (-float(j)) for p in primes)
    tail = total - partial
    err = err + 2e-16 * partial
    if tail < 0:
        # the true tail is nonnegative; clamp and widen
        err += -tail
        tail = 0.0
    _PZ_TAIL_CACHE[key] = (tail, err)
    return tail, err


# ---------------------------------------------------------------------------
# Euler products with certified prime tails

def euler_product_from_series(local_values, series: BoundedSeries,
                              primes: Sequence[int]) -> Tuple[float, float]:
    """Product over all primes of a local factor.

    local_values yields (p, u, u_err) for p <= P, where u approximates the
    local factor minus one and u_err bounds |u - u_true| (zero when u came
    from exact rational arithmetic).  Keeping u separate from 1 makes the
    float rounding allowance scale with sum |u_p|, which converges, so the
    reported bound stays monotone in the truncation parameters.  The series
    argument expands the same local factor in t = 1/p and certifies the
    p > P part.  Requires c_0 = 1 and c_1 = 0 (the product diverges
    otherwise).

    Returns (value, error bound).
    """
    if series.coeffs[0] != 1 or series.coeffs[1] != 0:
        raise UsageError("local factor must be 1 + O(1/p^2) for a convergent product")
    logs = []
    rel = 0.0
    last_p = 0
    for p, u, u_err in local_values:
        denom = 1.0 + u - u_err
        if not denom > 0:
            raise ComputationError(f"nonpositive local factor at p={p}")
        term = math.log1p(u)
        logs.append(term)
        rel += u_err / denom + 8e-16 * abs(u)
        last_p = p
    big_p = float(last_p)

    tail_val = 0.0
    tail_err = 0.0
    u_abs = 0.0
    u_max = 0.0
    for j in range(2, series.order + 1):
        cj = series.coeffs[j]
        if not cj:
            continue
        c = float(cj)
        pz, pze = prime_zeta_tail(j, primes)
        tail_val += c * pz
        tail_err += abs(c) * pze + 4e-16 * abs(c) * pz
        u_abs += abs(c) * (pz + pze)
        u_max += abs(c) * big_p ** (-j)
    remf = float(series.rem) * (1 + 1e-12)
    order = series.order
    rem_tail = remf * big_p ** (-float(order)) / order  # >= sum_{n>P} n^-(J+1)
    tail_err += rem_tail
    u_abs += rem_tail
    u_max += remf * big_p ** (-(order + 1.0))
    if u_max >= 0.5:
        raise ComputationError("prime tail not in the contraction regime; raise P")
    # |log(1+u) - u| <= u^2 / (2 (1-|u|))
    tail_err += u_max * u_abs / (2.0 * (1.0 - u_max))

    log_total = math.fsum(logs) + tail_val
    value = math.exp(log_total)
    bound = value * math.expm1(rel + tail_err + 1e-15 * (1 + abs(log_total)))
    return value, bound
