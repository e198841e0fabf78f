"""Lattice point counting: r_k tables, exact ball counts, ellipsoid sums.

r_k(n) is the number of representations of n as an ordered sum of k squares
of integers (signs and zeros included).  Tables are built by the additive
convolution r_k = r_{k-1} (+) r_1 and cross-checked against direct lattice
enumeration.  Ellipsoid sums run over positive coordinates only; the
symmetry factors for full-integer sums live in the summation module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import ComputationError, SizeGuardError, UsageError

DEFAULT_POINT_GUARD = 10 ** 9

Real = Union[int, float]


# ---------------------------------------------------------------------------
# r_k tables

@dataclass(frozen=True)
class RkTable:
    """Exact r_k(0..limit) as an int64 array (overflow guarded at build)."""

    k: int
    limit: int
    values: np.ndarray = field(repr=False)

    def __getitem__(self, n: int) -> int:
        return int(self.values[n])

    def cumulative(self) -> np.ndarray:
        """Partial sums over n >= 1, i.e. lattice points with 1 <= |n|^2 <= y."""
        out = np.cumsum(self.values, dtype=np.int64)
        return out - int(self.values[0])


def build_rk(k: int, limit: int) -> RkTable:
    """Tabulate r_k(0..limit) by repeated convolution with r_1."""
    if k < 1:
        raise UsageError("build_rk needs k >= 1")
    if limit < 0:
        raise UsageError("build_rk needs limit >= 0")
    root = math.isqrt(limit)
    r = np.zeros(limit + 1, dtype=np.int64)
    r[0] = 1
    for m in range(1, root + 1):
        r[m * m] = 2
    prev = r
    for _ in range(k - 1):
        step_factor = 2 * root + 1
        if int(prev.max()) * step_factor >= 2 ** 62:
            raise ComputationError("r_k values would overflow the table type")
        nxt = prev.copy()
        for m in range(1, root + 1):
            nxt[m * m:] += 2 * prev[:limit + 1 - m * m]
        prev = nxt
    return RkTable(k=k, limit=limit, values=prev)


# ---------------------------------------------------------------------------
# exact ball count over Z^k

def lattice_point_count_brute(k: int, x: Real, guard: int = DEFAULT_POINT_GUARD,
                              force: bool = False) -> int:
    """Exact #{n in Z^k : n_1^2 + ... + n_k^2 <= x} by nested enumeration.

    The innermost dimension is counted in closed form (2*isqrt(y) + 1), so
    the work is proportional to the point count in dimension k-2.
    """
    if k < 1:
        raise UsageError("lattice count needs k >= 1")
    if x < 0:
        raise UsageError("lattice count needs x >= 0")
    xi = math.floor(x)
    estimate = unit_ball_volume(k) * float(x) ** (k / 2)
    if estimate > guard and not force:
        raise SizeGuardError(estimate, guard)
    return _ball_count(k, xi)


def _ball_count(k: int, x: int) -> int:
    if x < 0:
        return 0
    if k == 1:
        return 2 * math.isqrt(x) + 1
    total = _ball_count(k - 1, x)
    for n in range(1, math.isqrt(x) + 1):
        total += 2 * _ball_count(k - 1, x - n * n)
    return total


# ---------------------------------------------------------------------------
# ellipsoid sums over positive coordinates

@dataclass(frozen=True)
class EllipsoidQuery:
    """sum over n in N^k with a_1 n_1^2 + ... + a_k n_k^2 <= x of 1 or of
    the coordinate product n_1 ... n_k."""

    a: tuple
    x: Real
    weight: str = "count"

    def __post_init__(self):
        if len(self.a) < 1:
            raise UsageError("ellipsoid needs at least one axis weight")
        if any(ai <= 0 for ai in self.a):
            raise UsageError("axis weights must be positive")
        if self.x < 0:
            raise UsageError("ellipsoid needs x >= 0")
        if self.weight not in ("count", "product"):
            raise UsageError("weight must be 'count' or 'product'")
        object.__setattr__(self, "a", tuple(self.a))


def _estimate_points(a: Sequence[Real], x: Real) -> float:
    k = len(a)
    prod = 1.0
    for ai in a:
        prod *= float(ai)
    return unit_ball_volume(k) * float(x) ** (k / 2) / (2 ** k * math.sqrt(prod))


def ellipsoid_count_n(a: Sequence[int], x: Real, guard: int = DEFAULT_POINT_GUARD,
                      force: bool = False) -> int:
    """Exact count of positive-integer points inside the ellipsoid.

    All-integer inputs are compared in exact integer arithmetic; float
    inputs fall back to floored float square roots.
    """
    q = EllipsoidQuery(a=tuple(a), x=x, weight="count")
    if _estimate_points(q.a, q.x) > guard and not force:
        raise SizeGuardError(_estimate_points(q.a, q.x), guard)
    aa = tuple(sorted(q.a, reverse=True))
    if all(isinstance(ai, int) for ai in aa) and isinstance(x, int):
        return _count_int(aa, x)
    return _count_float(aa, float(x))


def _axis_reach(a: int, x: int) -> int:
    # largest n >= 0 with a n^2 <= x, exact for integers
    return math.isqrt(x // a)


def _count_int(a: tuple, x: int) -> int:
    if len(a) == 1:
        return _axis_reach(a[0], x)
    total = 0
    rest = a[1:]
    for n in range(1, _axis_reach(a[0], x) + 1):
        total += _count_int(rest, x - a[0] * n * n)
    return total


def _float_reach(a: float, x: float) -> int:
    if x < a:
        return 0
    n = int(math.sqrt(x / a))
    while (n + 1) * (n + 1) * a <= x:
        n += 1
    while n > 0 and n * n * a > x:
        n -= 1
    return n


def _count_float(a: tuple, x: float) -> int:
    if len(a) == 1:
        return _float_reach(a[0], x)
    total = 0
    rest = a[1:]
    for n in range(1, _float_reach(a[0], x) + 1):
        total += _count_float(rest, x - a[0] * n * n)
    return total


def ellipsoid_product_sum_n(a: Sequence[int], x: Real,
                            guard: int = DEFAULT_POINT_GUARD,
                            force: bool = False) -> int:
    """Exact sum of n_1 * ... * n_k over positive points in the ellipsoid."""
    q = EllipsoidQuery(a=tuple(a), x=x, weight="product")
    if _estimate_points(q.a, q.x) > guard and not force:
        raise SizeGuardError(_estimate_points(q.a, q.x), guard)
    aa = tuple(sorted(q.a, reverse=True))
    if all(isinstance(ai, int) for ai in aa) and isinstance(x, int):
        return _product_int(aa, x)
    return _product_float(aa, float(x))


def _product_int(a: tuple, x: int) -> int:
    if len(a) == 1:
        m = _axis_reach(a[0], x)
        return m * (m + 1) // 2
    total = 0
    rest = a[1:]
    for n in range(1, _axis_reach(a[0], x) + 1):
        total += n * _product_int(rest, x - a[0] * n * n)
    return total


def _product_float(a: tuple, x: float) -> int:
    if len(a) == 1:
        m = _float_reach(a[0], x)
        return m * (m + 1) // 2
    total = 0
    rest = a[1:]
    for n in range(1, _float_reach(a[0], x) + 1):
        total += n * _product_float(rest, x - a[0] * n * n)
    return total


def ellipsoid_main_term(query: EllipsoidQuery) -> float:
    """Leading asymptotic term of the ellipsoid count or product sum."""
    k = len(query.a)
    prod = 1.0
    for ai in query.a:
        prod *= float(ai)
    x = float(query.x)
    if query.weight == "count":
        return unit_ball_volume(k) * x ** (k / 2) / (2 ** k * math.sqrt(prod))
    return x ** k / (2 ** k * math.factorial(k) * prod)


# ---------------------------------------------------------------------------
# shared numeric helpers

def unit_ball_volume(k: int) -> float:
    """Volume of the k-dimensional unit ball (V_0 = 1, V_1 = 2, V_2 = pi)."""
    if k < 0:
        raise UsageError("dimension must be >= 0")
    m, odd = divmod(k, 2)
    if not odd:
        return math.pi ** m / math.factorial(m)
    return 2.0 ** (m + 1) * math.pi ** m / _double_factorial(2 * m + 1)


def _double_factorial(n: int) -> float:
    out = 1.0
    while n > 1:
        out *= n
        n -= 2
    return out


def isqrt_exact_array(vals: np.ndarray) -> np.ndarray:
    """Elementwise integer square root of a nonnegative int64 array."""
    root = np.sqrt(vals.astype(np.float64)).astype(np.int64)
    # float sqrt can land one off near perfect squares; correct both ways
    too_big = root * root > vals
    root[too_big] -= 1
    too_small = (root + 1) * (root + 1) <= vals
    root[too_small] += 1
    return root
