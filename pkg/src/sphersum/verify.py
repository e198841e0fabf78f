"""Empirical checks of the asymptotic formulas on geometric grids.

Each supported statement is a TheoremSpec: an id from THEOREM_IDS plus the
parameters (k, f, domain) it applies to.  sweep() evaluates the exact ball
sum at every grid point with the fastest exact method, cross-checks the
smallest point against an independent brute enumeration, subtracts the
composed main term, and normalizes the residual by the claimed error shape.
Reports render to CSV (one row per grid point), a JSON mirror, and a
log-log residual figure.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence

from .arith import FunctionSpec
from .constants import (
    _SERIES_RANK,
    bounded_series_constant,
    fseta_prime_constant,
    lcm_main_constant,
    mean_value_constant,
    prime_log_sum_constant,
    unit_ball_volume,
    zeta,
)
from .errors import ComputationError, UsageError
from .lattice import build_rk, lattice_point_count_brute
from .sums import (
    CLASS_A_RANK,
    SumQuery,
    n_sum_from_z_sums,
    sum_gcd_brute,
    sum_gcd_identity,
    sum_lcm_brute,
    sum_lcm_convolution,
)

THEOREM_IDS = (
    "wintner_i",
    "wintner_ii",
    "th2_gcd_bounded",
    "cor_tau",
    "th3_gcd_id",
    "cor_g_id",
    "th4_fseta",
    "th5_lcm_A1",
    "cor_lcm_id",
    "th6_lcm_A0",
    "cor_mu2_lcm",
    "lattice_count",
)

# mu-transform of f when f = g * 1 with g bounded
_G_FOR_ONE = {"tau": "one", "one": "delta"}
# mu-transform factor when f = g * id with g bounded
_G_FOR_ID = {
    "id": "delta",
    "sigma": "one",
    "euler_phi": "moebius",
    "dedekind_psi": "mu_squared",
    "beta_alt": "liouville",
}
# additive-over-primes kinds handled by th4_fseta, with their log weight
_TH4_KINDS = {
    "omega_small": ("omega", 0.0),
    "omega_big": ("bigomega", 0.0),
    "kappa_log": ("logkappa", 1.0),
    "log_n": ("log", 1.0),
}

_DEFAULT_F = {
    "wintner_i": "tau",
    "wintner_ii": "tau",
    "th2_gcd_bounded": "tau",
    "cor_tau": "tau",
    "th3_gcd_id": "sigma",
    "cor_g_id": "sigma",
    "th4_fseta": "omega_small",
    "th5_lcm_A1": "id",
    "cor_lcm_id": "id",
    "th6_lcm_A0": "mu_squared",
    "cor_mu2_lcm": "mu_squared",
}

_FORCED_F = {"cor_tau": "tau", "cor_lcm_id": "id", "cor_mu2_lcm": "mu_squared"}

# theorem statements fix the lattice; only some allow both domains
_ALLOWED_DOMAINS = {
    "wintner_i": ("naturals",),
    "wintner_ii": ("naturals",),
    "th2_gcd_bounded": ("integers",),
    "cor_tau": ("naturals", "integers"),
    "th3_gcd_id": ("integers",),
    "cor_g_id": ("naturals",),
    "th4_fseta": ("integers",),
    "th5_lcm_A1": ("naturals",),
    "cor_lcm_id": ("naturals", "integers"),
    "th6_lcm_A0": ("naturals",),
    "cor_mu2_lcm": ("naturals",),
    "lattice_count": ("integers",),
}


@dataclass(frozen=True)
class SweepRecord:
    """One grid point: exact sum, composed main term, and the residual
    normalized by the claimed error shape (doubles throughout)."""

    x: int
    exact: object            # exact int, or float for log-weighted functions
    main_term: float
    residual: float
    normalized_residual: float


@dataclass(frozen=True)
class TheoremSpec:
    """A verifiable statement instance: id, dimension, function, lattice."""

    id: str
    k: int
    f: Optional[FunctionSpec]
    domain: str
    t: Optional[float] = None    # declared series abscissa, wintner_ii only

    def __post_init__(self):
        if self.id not in THEOREM_IDS:
            raise UsageError(f"unknown theorem id {self.id!r}")
        min_k = 1 if self.id == "lattice_count" else 2
        if self.k < min_k:
            raise UsageError(f"{self.id} needs k >= {min_k}")
        if self.domain not in _ALLOWED_DOMAINS[self.id]:
            raise UsageError(
                f"{self.id} is stated for domains {_ALLOWED_DOMAINS[self.id]}")
        if self.id == "lattice_count":
            if self.f is not None:
                raise UsageError("lattice_count takes no function")
        else:
            if self.f is None:
                raise UsageError(f"{self.id} needs a function spec")
            _check_function(self.id, self.k, self.f)
        forced = _FORCED_F.get(self.id)
        if forced and self.f.kind != forced:
            raise UsageError(f"{self.id} is stated for f={forced}")
        if self.id == "wintner_ii":
            if self.t is None:
                raise UsageError("wintner_ii needs a declared abscissa t")
            if not 0.0 < self.t < 1.0:
                raise UsageError("wintner_ii needs 0 < t < 1")
        elif self.t is not None:
            raise UsageError("only wintner_ii takes an abscissa t")

    @property
    def fname(self) -> str:
        return self.f.file_label if self.f is not None else "count"


def _check_function(tid: str, k: int, f: FunctionSpec) -> None:
    if tid in ("wintner_i", "wintner_ii"):
        if f.kind not in _SERIES_RANK:
            raise UsageError(f"no mean value expansion for {f.text}")
        if k < _SERIES_RANK[f.kind] + 2:
            raise UsageError(
                f"mean value of {f.text} diverges unless k >= "
                f"{_SERIES_RANK[f.kind] + 2}")
    elif tid in ("th2_gcd_bounded", "cor_tau"):
        _g_spec(f, _G_FOR_ONE, "one")
    elif tid in ("th3_gcd_id", "cor_g_id"):
        _g_spec(f, _G_FOR_ID, "id")
    elif tid == "th4_fseta":
        if f.kind not in _TH4_KINDS and f.kind != "f_s_eta":
            raise UsageError(f"{f.text} is not an additive-over-primes kind")
    elif tid in ("th5_lcm_A1", "cor_lcm_id"):
        if CLASS_A_RANK.get(f.kind) != 1:
            raise UsageError(f"{f.text} has no declared growth rank 1")
    elif tid in ("th6_lcm_A0", "cor_mu2_lcm"):
        if CLASS_A_RANK.get(f.kind) != 0:
            raise UsageError(f"{f.text} has no declared growth rank 0")


def _g_spec(f: FunctionSpec, table: dict, base: str) -> FunctionSpec:
    """The bounded factor g in f = g * base, from the declared table or an
    explicit convolution spec g*base."""
    if f.kind in table:
        return FunctionSpec(table[f.kind])
    if (f.kind == "convolution" and f.right is not None
            and f.right.kind == base and f.left is not None
            and f.left.left is None):
        return f.left
    raise UsageError(f"{f.text} has no declared bounded factor against {base}")


def make_spec(tid: str, k: int = 2, f: Optional[FunctionSpec] = None,
              domain: Optional[str] = None,
              t: Optional[float] = None) -> TheoremSpec:
    """Fill theorem defaults (function, domain, declared abscissa)."""
    if tid not in THEOREM_IDS:
        raise UsageError(f"unknown theorem id {tid!r}")
    if tid == "lattice_count":
        if f is not None:
            raise UsageError("lattice_count takes no function")
    elif f is None:
        f = FunctionSpec(_DEFAULT_F[tid])
    if domain is None:
        domain = _ALLOWED_DOMAINS[tid][0]
    if tid == "wintner_ii" and t is None:
        if f.kind == "tau":
            t = 1.0 / k       # abscissa of the tau-at-gcd mu-series
        else:
            raise UsageError(f"declare the abscissa t for {f.text}")
    return TheoremSpec(tid, k, f, domain, t)


# ---------------------------------------------------------------------------
# main terms, composed from the constants module

@lru_cache(maxsize=None)
def _main_term_fn(spec: TheoremSpec) -> Callable[[float], float]:
    tid, k, f = spec.id, spec.k, spec.f
    vk = unit_ball_volume(k)

    if tid in ("wintner_i", "wintner_ii"):
        c = vk / 2 ** k * float(mean_value_constant(f, k))
        return lambda x: c * x ** (k / 2)

    if tid == "th2_gcd_bounded":
        c = vk * float(bounded_series_constant(_g_spec(f, _G_FOR_ONE, "one"), k))
        return lambda x: c * x ** (k / 2)

    if tid == "cor_tau":
        zk = float(zeta(k))
        if spec.domain == "integers":
            c = vk * zk
            return lambda x: c * x ** (k / 2)
        if k == 2:
            c = vk * zk / 4
            return lambda x: c * x - 0.5 * math.sqrt(x) * math.log(x)
        lead = vk * zk / 2 ** k
        sec = k * unit_ball_volume(k - 1) * float(zeta(k - 1)) / 2 ** k
        return lambda x: lead * x ** (k / 2) - sec * x ** ((k - 1) / 2)

    if tid == "th3_gcd_id":
        g = _g_spec(f, _G_FOR_ID, "id")
        if k == 2:
            c = 3.0 / math.pi * float(bounded_series_constant(g, 2))
            return lambda x: c * x * math.log(x)
        c = vk * float(zeta(k - 1)) / float(zeta(k)) \
            * float(bounded_series_constant(g, k))
        return lambda x: c * x ** (k / 2)

    if tid == "cor_g_id":
        g = _g_spec(f, _G_FOR_ID, "id")
        if k == 2:
            c = 3.0 / (4.0 * math.pi) * float(bounded_series_constant(g, 2))
            return lambda x: c * x * math.log(x)
        lead = vk * float(zeta(k - 1)) / float(zeta(k)) \
            * float(bounded_series_constant(g, k)) / 2 ** k
        if k == 3:
            sec = 9.0 / (8.0 * math.pi) * float(bounded_series_constant(g, 2))
            return lambda x: lead * x ** 1.5 - sec * x * math.log(x)
        sec = k * unit_ball_volume(k - 1) * float(zeta(k - 2)) \
            / float(zeta(k - 1)) * float(bounded_series_constant(g, k - 1)) \
            / 2 ** k
        return lambda x: lead * x ** (k / 2) - sec * x ** ((k - 1) / 2)

    if tid == "th4_fseta":
        if f.kind == "f_s_eta":
            kc = fseta_prime_constant(f.s_set, f.eta, k)
        else:
            kc = prime_log_sum_constant(_TH4_KINDS[f.kind][0], k)
        c = vk * float(kc)
        return lambda x: c * x ** (k / 2)

    if tid == "th5_lcm_A1":
        c = float(lcm_main_constant(f, k, r=1)) / (2 ** k * math.factorial(k))
        return lambda x: c * x ** k

    if tid == "cor_lcm_id":
        c = float(lcm_main_constant(f, k, r=1)) / math.factorial(k)
        if spec.domain == "naturals":
            c /= 2 ** k
        return lambda x: c * x ** k

    if tid == "th6_lcm_A0":
        c = vk * float(lcm_main_constant(f, k, r=0)) / 2 ** k
        return lambda x: c * x ** (k / 2)

    if tid == "cor_mu2_lcm":
        c = vk / (2.0 * float(zeta(2))) ** k
        return lambda x: c * x ** (k / 2)

    # lattice_count
    return lambda x: vk * x ** (k / 2)


def main_term(spec: TheoremSpec, x) -> float:
    return _main_term_fn(spec)(float(x))


# ---------------------------------------------------------------------------
# claimed error shapes (power of x, power of log x)

def _shape_parts(spec: TheoremSpec) -> tuple:
    tid, k = spec.id, spec.k
    if tid == "wintner_i":
        return (k - 1) / 2, 0.0
    if tid == "wintner_ii":
        return (k - 1 + spec.t) / 2, 0.0
    if tid in ("th2_gcd_bounded", "cor_tau"):
        if k == 2:
            return 0.5, 0.0
        if k == 3:
            return 517 / 1648, 0.0
        if k == 4:
            return 1.0, 2 / 3
        return k / 2 - 1, 0.0
    if tid in ("th3_gcd_id", "cor_g_id"):
        if k in (2, 3):
            return 1.0, 0.0
        if k == 4:
            return 1.0, 5 / 3
        return k / 2 - 1, 0.0
    if tid == "th4_fseta":
        eta = spec.f.eta if spec.f.kind == "f_s_eta" else _TH4_KINDS[spec.f.kind][1]
        if k in (2, 3):
            return 0.5, eta - 1.0
        if k == 4:
            return 1.0, 2 / 3
        return k / 2 - 1, 0.0
    if tid in ("th5_lcm_A1", "cor_lcm_id"):
        if k == 2:
            return 1.5, 1.0
        return k - 0.25, 0.0
    if tid in ("th6_lcm_A0", "cor_mu2_lcm"):
        return k / 2 - 0.25, 0.0
    # lattice_count
    if k == 1:
        return 0.0, 0.0
    return (k - 1) / 2, 0.0


def claimed_error_exponent(spec: TheoremSpec) -> float:
    """Power of x in the claimed error bound (log factors reported apart)."""
    return _shape_parts(spec)[0]


def error_shape_text(spec: TheoremSpec) -> str:
    e, lg = _shape_parts(spec)
    txt = f"x^{e:g}"
    if lg:
        txt += f" * log(x)^{lg:g}"
    return txt


def error_shape(spec: TheoremSpec, x) -> float:
    e, lg = _shape_parts(spec)
    x = float(x)
    shape = x ** e
    if lg:
        if x <= 1.0:
            return 0.0
        shape *= math.log(x) ** lg
    return shape


# ---------------------------------------------------------------------------
# exact evaluation and the brute cross-check

def exact_value(spec: TheoremSpec, x: int):
    """Exact ball sum by the fastest method valid for the statement."""
    k, f = spec.k, spec.f
    if spec.id == "lattice_count":
        return lattice_point_count_brute(k, x)
    if spec.id in ("th5_lcm_A1", "cor_lcm_id", "th6_lcm_A0", "cor_mu2_lcm"):
        q = SumQuery(k, x, f, mode="lcm", domain=spec.domain,
                     method="convolution")
        return sum_lcm_convolution(q).value
    if spec.domain == "integers":
        q = SumQuery(k, x, f, mode="gcd", domain="integers", method="identity")
        return sum_gcd_identity(q).value
    z_sums = []
    for dim in range(k, 0, -1):
        q = SumQuery(dim, x, f, mode="gcd", domain="integers",
                     method="identity")
        z_sums.append(sum_gcd_identity(q).value)
    value = n_sum_from_z_sums(z_sums)
    if isinstance(value, Fraction):
        value = int(value) if value.denominator == 1 else float(value)
    return value


def _brute_value(spec: TheoremSpec, x: int):
    k, f = spec.k, spec.f
    if spec.id == "lattice_count":
        table = build_rk(k, x)
        return 1 + (int(table.cumulative()[x]) if x >= 1 else 0)
    if spec.id in ("th5_lcm_A1", "cor_lcm_id", "th6_lcm_A0", "cor_mu2_lcm"):
        q = SumQuery(k, x, f, mode="lcm", domain=spec.domain, method="brute")
        return sum_lcm_brute(q).value
    q = SumQuery(k, x, f, mode="gcd", domain=spec.domain, method="brute")
    return sum_gcd_brute(q).value


def _cross_check(spec: TheoremSpec, x: int) -> None:
    fast = exact_value(spec, x)
    slow = _brute_value(spec, x)
    if isinstance(fast, int) and isinstance(slow, int):
        ok = fast == slow
    else:
        ok = math.isclose(float(fast), float(slow), rel_tol=1e-9, abs_tol=1e-9)
    if not ok:
        raise ComputationError(
            f"{spec.id} k={spec.k} x={x}: fast method {fast!r} "
            f"disagrees with brute enumeration {slow!r}")


# ---------------------------------------------------------------------------
# sweeps

def _record(spec: TheoremSpec, x: int) -> SweepRecord:
    exact = exact_value(spec, x)
    mt = main_term(spec, x)
    residual = float(exact) - mt
    shape = error_shape(spec, x)
    if shape:
        normalized = residual / shape
    else:
        normalized = math.copysign(math.inf, residual) if residual else 0.0
    return SweepRecord(x, exact, mt, residual, normalized)


def sweep(spec: TheoremSpec, grid: Sequence[int],
          threads: Optional[int] = None) -> List[SweepRecord]:
    """One SweepRecord per grid point, order following the input grid; the
    smallest point is re-derived by brute enumeration first."""
    grid = [int(x) for x in grid]
    if not grid:
        return []
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise UsageError("grid must be strictly ascending")
    if grid[0] < 0:
        raise UsageError("grid points must be >= 0")
    _main_term_fn(spec)          # evaluate constants once, outside the pool
    _cross_check(spec, grid[0])
    if threads is None:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(grid) == 1:
        return [_record(spec, x) for x in grid]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda x: _record(spec, x), grid))


def geometric_grid(start: int, stop: int, factor: float) -> List[int]:
    """Integers start, ~start*factor, ... <= stop (rounded, deduplicated)."""
    if start < 1 or stop < start:
        raise UsageError("need 1 <= start <= stop")
    if factor <= 1.0:
        raise UsageError("grid factor must be > 1")
    out: List[int] = []
    cur = float(start)
    while True:
        xi = round(cur)
        if xi > stop:
            break
        if not out or xi > out[-1]:
            out.append(xi)
        cur *= factor
    return out


def fit_exponent(records: Iterable[SweepRecord]) -> float:
    """Least-squares slope of log|residual| against log x, zero residuals
    skipped; a descriptive statistic, not a pass/fail gate."""
    pts = [(math.log(r.x), math.log(abs(r.residual)))
           for r in records if r.residual != 0.0 and r.x > 1]
    if len(pts) < 3:
        raise UsageError("need at least 3 grid points with nonzero residual")
    n = len(pts)
    mx = sum(p[0] for p in pts) / n
    my = sum(p[1] for p in pts) / n
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
    if sxx == 0.0:
        raise UsageError("grid points must span more than one x")
    return sxy / sxx


# ---------------------------------------------------------------------------
# reports

_CSV_HEADER = "x,exact,main_term,residual,normalized_residual"


def _render_value(v) -> str:
    return str(v) if isinstance(v, int) else repr(float(v))


def emit_report(records: Sequence[SweepRecord], format: str = "csv") -> str:
    """CSV (header + one row per record) or a JSON mirror of the fields."""
    if format == "csv":
        lines = [_CSV_HEADER]
        for r in records:
            lines.append(",".join((
                str(r.x), _render_value(r.exact), repr(r.main_term),
                repr(r.residual), repr(r.normalized_residual))))
        return "\n".join(lines) + "\n"
    if format == "json":
        return json.dumps([asdict(r) for r in records], indent=2) + "\n"
    raise UsageError("format must be 'csv' or 'json'")


def records_from_json(text: str) -> List[SweepRecord]:
    rows = json.loads(text)
    return [SweepRecord(int(row["x"]), row["exact"],
                        float(row["main_term"]), float(row["residual"]),
                        float(row["normalized_residual"])) for row in rows]


def report_basename(spec: TheoremSpec) -> str:
    return f"{spec.id}_k{spec.k}_{spec.fname}"


def write_report_files(records: Sequence[SweepRecord], spec: TheoremSpec,
                       directory, figures: bool = True) -> List[Path]:
    """Write <base>.csv and <base>.json, plus <base>.png unless figures is
    off; returns the written paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    base = report_basename(spec)
    paths = []
    for fmt in ("csv", "json"):
        path = directory / f"{base}.{fmt}"
        path.write_text(emit_report(records, fmt))
        paths.append(path)
    if figures:
        path = directory / f"{base}.png"
        _render_figure(records, spec, path)
        paths.append(path)
    return paths


def _render_figure(records: Sequence[SweepRecord], spec: TheoremSpec,
                   path: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [r.x for r in records]
    fig, (ax_main, ax_res) = plt.subplots(1, 2, figsize=(11, 4.2))
    ax_main.loglog(xs, [abs(float(r.exact)) for r in records], "o",
                   label="exact")
    ax_main.loglog(xs, [abs(r.main_term) for r in records], "-",
                   label="main term")
    ax_main.set_xlabel("x")
    ax_main.set_title(f"{spec.id}, k={spec.k}, f={spec.fname}, {spec.domain}")
    ax_main.legend()

    res_pts = [(r.x, abs(r.residual)) for r in records if r.residual != 0.0]
    if res_pts:
        rx, ry = zip(*res_pts)
        ax_res.loglog(rx, ry, "o", label="|residual|")
        shape_last = error_shape(spec, rx[-1])
        if shape_last:
            scale = ry[-1] / shape_last
            guide = [scale * error_shape(spec, x) for x in rx]
            ax_res.loglog(rx, guide, "--",
                          label=f"~ {error_shape_text(spec)}")
        ax_res.legend()
    ax_res.set_xlabel("x")
    ax_res.set_title("residual vs claimed shape")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
