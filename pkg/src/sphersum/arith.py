"""Arithmetic functions: symbolic specs, exact tabulation, Dirichlet convolution.

A FunctionSpec names one arithmetic function, either a built-in kind, the
prime-power family f_{S,eta}, or a Dirichlet convolution of two specs.  Tables
are exact: integer-valued functions use Python integers of arbitrary size,
log-weighted functions use doubles.  f(0) = 0 for every spec by convention.

Built-in kinds and their values at prime powers p^e (e >= 1):

    one          1                       delta        0 (1 only at n=1)
    id           p^e                     moebius      -1 if e == 1 else 0
    liouville    (-1)^e                  euler_phi    p^e - p^(e-1)
    tau          e + 1                   sigma        (p^(e+1)-1)/(p-1)
    mu_squared   1 if e == 1 else 0      dedekind_psi p^e + p^(e-1)
    beta_alt     (p^(e+1)+(-1)^e)/(p+1)  omega_small  +1 per distinct prime
    omega_big    +e per prime            kappa_log    +log p per distinct prime
    log_n        log n                   f_s_eta      +(log p)^eta * #(S cap [1,e])

beta_alt is the alternating divisor sum liouville * id and dedekind_psi equals
mu_squared * id; both identities are checked in the tests.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Union

from .errors import UsageError

Number = Union[int, float]

_MULTIPLICATIVE_KINDS = frozenset({
    "one", "delta", "id", "moebius", "liouville", "euler_phi", "tau",
    "sigma", "mu_squared", "dedekind_psi", "beta_alt",
})
_ADDITIVE_KINDS = frozenset({"omega_small", "omega_big", "kappa_log", "f_s_eta"})
_ALL_KINDS = _MULTIPLICATIVE_KINDS | _ADDITIVE_KINDS | {"log_n", "convolution"}

_ALIASES = {
    "one": "one", "1": "one",
    "delta": "delta",
    "id": "id",
    "mu": "moebius", "moebius": "moebius",
    "lambda": "liouville", "liouville": "liouville",
    "phi": "euler_phi", "euler_phi": "euler_phi", "totient": "euler_phi",
    "tau": "tau", "d": "tau",
    "omega": "omega_small", "omega_small": "omega_small",
    "Omega": "omega_big", "bigomega": "omega_big", "omega_big": "omega_big",
    "sigma": "sigma",
    "mu2": "mu_squared", "mu_squared": "mu_squared",
    "psi": "dedekind_psi", "dedekind_psi": "dedekind_psi",
    "beta": "beta_alt", "beta_alt": "beta_alt",
    "logkappa": "kappa_log", "log_kappa": "kappa_log", "kappa_log": "kappa_log",
    "log": "log_n", "log_n": "log_n",
}

_CANONICAL_TOKEN = {
    "one": "one", "delta": "delta", "id": "id", "moebius": "mu",
    "liouville": "lambda", "euler_phi": "phi", "tau": "tau", "sigma": "sigma",
    "omega_small": "omega", "omega_big": "Omega", "mu_squared": "mu2",
    "dedekind_psi": "psi", "beta_alt": "beta", "kappa_log": "logkappa",
    "log_n": "log",
}


@dataclass(frozen=True)
class SDescriptor:
    """Decidable set S of exponents with 1 in S: a finite explicit part plus
    an optional tail {nu : nu >= all_from}."""

    explicit: frozenset = frozenset({1})
    all_from: Optional[int] = None

    def __post_init__(self):
        if not all(isinstance(v, int) and v >= 1 for v in self.explicit):
            raise UsageError("explicit exponents must be integers >= 1")
        if self.all_from is not None and (not isinstance(self.all_from, int) or self.all_from < 1):
            raise UsageError("all_from must be an integer >= 1")
        # canonical form: explicit entries covered by the tail are dropped
        if self.all_from is not None:
            object.__setattr__(
                self, "explicit",
                frozenset(v for v in self.explicit if v < self.all_from))
        else:
            object.__setattr__(self, "explicit", frozenset(self.explicit))
        if 1 not in self:
            raise UsageError("S must contain 1")
        object.__setattr__(self, "_sorted", tuple(sorted(self.explicit)))

    def __contains__(self, nu: int) -> bool:
        if self.all_from is not None and nu >= self.all_from:
            return True
        return nu in self.explicit

    def count_upto(self, e: int) -> int:
        """#(S intersect [1, e])."""
        n = bisect_right(self._sorted, e)
        if self.all_from is not None and e >= self.all_from:
            n += e - self.all_from + 1
        return n

    def power_tail(self, y: float) -> float:
        """sum_{nu in S} y^nu for 0 < y < 1, tail summed in closed form."""
        total = sum(y ** v for v in self._sorted)
        if self.all_from is not None:
            total += y ** self.all_from / (1.0 - y)
        return total

    @property
    def preset(self) -> str:
        if self.all_from == 1 and not self.explicit:
            return "all_naturals"
        if self.all_from is None and self.explicit == frozenset({1}):
            return "singleton_one"
        return "custom"

    @classmethod
    def naturals(cls) -> "SDescriptor":
        return cls(explicit=frozenset(), all_from=1)

    @classmethod
    def singleton_one(cls) -> "SDescriptor":
        return cls(explicit=frozenset({1}), all_from=None)

    @classmethod
    def parse(cls, text: str) -> "SDescriptor":
        """Parse "N", "{1}", "{1,2}", or "{1,3+}" (3+ means every nu >= 3)."""
        text = text.strip()
        if text in ("N", "naturals", "all"):
            return cls.naturals()
        if not (text.startswith("{") and text.endswith("}")):
            raise UsageError(f"cannot parse exponent set {text!r}")
        explicit = set()
        all_from = None
        for item in text[1:-1].split(","):
            item = item.strip()
            if not item:
                raise UsageError(f"cannot parse exponent set {text!r}")
            if item.endswith("+"):
                if all_from is not None:
                    raise UsageError("at most one m+ entry is allowed")
                all_from = int(item[:-1])
            else:
                explicit.add(int(item))
        return cls(explicit=frozenset(explicit), all_from=all_from)

    @property
    def text(self) -> str:
        if self.preset == "all_naturals":
            return "N"
        parts = [str(v) for v in self._sorted]
        if self.all_from is not None:
            parts.append(f"{self.all_from}+")
        return "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class FunctionSpec:
    """Symbolic name of an arithmetic function; hashable and comparable."""

    kind: str
    s_set: Optional[SDescriptor] = None
    eta: Optional[float] = None
    left: Optional["FunctionSpec"] = None
    right: Optional["FunctionSpec"] = None

    def __post_init__(self):
        if self.kind not in _ALL_KINDS:
            raise UsageError(f"unknown function kind {self.kind!r}")
        if self.kind == "f_s_eta":
            if self.s_set is None or self.eta is None:
                raise UsageError("f_s_eta needs both an exponent set and eta")
            if not self.eta >= 0:
                raise UsageError("eta must be >= 0")
            object.__setattr__(self, "eta", float(self.eta))
        elif self.s_set is not None or self.eta is not None:
            raise UsageError(f"{self.kind} takes no exponent set or eta")
        if self.kind == "convolution":
            if self.left is None or self.right is None:
                raise UsageError("convolution needs two operand specs")
        elif self.left is not None or self.right is not None:
            raise UsageError(f"{self.kind} takes no operands")

    @property
    def is_multiplicative(self) -> bool:
        if self.kind == "convolution":
            return self.left.is_multiplicative and self.right.is_multiplicative
        return self.kind in _MULTIPLICATIVE_KINDS

    @property
    def is_integer_valued(self) -> bool:
        if self.kind == "convolution":
            return self.left.is_integer_valued and self.right.is_integer_valued
        if self.kind in ("kappa_log", "log_n"):
            return False
        if self.kind == "f_s_eta":
            return self.eta == 0.0
        return True

    @property
    def text(self) -> str:
        """Round-trippable command line syntax for this spec."""
        if self.kind == "convolution":
            return f"{self.left.text}*{self.right.text}"
        if self.kind == "f_s_eta":
            eta = self.eta
            eta_txt = str(int(eta)) if eta == int(eta) else repr(eta)
            return f"fseta:S={self.s_set.text},eta={eta_txt}"
        return _CANONICAL_TOKEN[self.kind]

    @property
    def file_label(self) -> str:
        """Filesystem-safe short label."""
        label = self.text
        for a, b in (("*", "_"), (":", "_"), ("=", ""), (",", "_"),
                     ("{", ""), ("}", ""), ("+", "p"), (".", "_")):
            label = label.replace(a, b)
        return label

    def __str__(self) -> str:
        return self.text


def parse_function(text: str) -> FunctionSpec:
    """Parse the command line function syntax.

    A spec is one or more terms joined by "*" (Dirichlet convolution, left
    associative).  A term is a built-in name ("tau", "mu", "phi", ...) or
    "fseta:S=<set>,eta=<real>" with <set> one of N, {1}, {1,2}, {1,3+}.
    """
    text = text.strip()
    if not text:
        raise UsageError("empty function spec")
    terms = [t.strip() for t in text.split("*")]
    specs = []
    for term in terms:
        if term.startswith("fseta:"):
            body = term[len("fseta:"):]
            s_set = eta = None
            # split on the comma that separates S=... from eta=...; the set
            # itself may contain commas inside braces
            depth = 0
            parts, cur = [], []
            for ch in body:
                if ch == "{":
                    depth += 1
                elif ch == "}":
                    depth -= 1
                if ch == "," and depth == 0:
                    parts.append("".join(cur))
                    cur = []
                else:
                    cur.append(ch)
            parts.append("".join(cur))
            for part in parts:
                key, _, val = part.partition("=")
                key = key.strip()
                if key == "S":
                    s_set = SDescriptor.parse(val)
                elif key == "eta":
                    eta = float(val)
                else:
                    raise UsageError(f"unknown fseta field {key!r}")
            if s_set is None or eta is None:
                raise UsageError("fseta needs S=<set>,eta=<real>")
            specs.append(FunctionSpec("f_s_eta", s_set=s_set, eta=eta))
        elif term in _ALIASES:
            specs.append(FunctionSpec(_ALIASES[term]))
        else:
            raise UsageError(f"unknown function name {term!r}")
    out = specs[0]
    for nxt in specs[1:]:
        out = FunctionSpec("convolution", left=out, right=nxt)
    return out


# ---------------------------------------------------------------------------
# prime helpers

def smallest_prime_factor_table(limit: int) -> list:
    """spf[n] = smallest prime factor of n for 2 <= n <= limit."""
    spf = list(range(limit + 1))
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


@lru_cache(maxsize=8)
def _cached_spf(limit: int) -> tuple:
    return tuple(smallest_prime_factor_table(limit))


def primes_up_to(limit: int) -> list:
    """Ascending list of primes <= limit."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(2, limit + 1) if sieve[i]]


def factorize(n: int) -> list:
    """Prime factorization [(p, e), ...] of n >= 1 by trial division."""
    if n < 1:
        raise UsageError("factorize needs n >= 1")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    return out


def divisors_from_factorization(factors: list) -> list:
    divs = [1]
    for p, e in factors:
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(divs)


# ---------------------------------------------------------------------------
# point evaluation

def prime_power_value(spec: FunctionSpec, p: int, e: int) -> Number:
    """Exact f(p^e) for a multiplicative spec (e >= 0)."""
    if e == 0:
        return 1
    kind = spec.kind
    if kind == "one":
        return 1
    if kind == "delta":
        return 0
    if kind == "id":
        return p ** e
    if kind == "moebius":
        return -1 if e == 1 else 0
    if kind == "liouville":
        return -1 if e % 2 else 1
    if kind == "euler_phi":
        return p ** e - p ** (e - 1)
    if kind == "tau":
        return e + 1
    if kind == "sigma":
        return (p ** (e + 1) - 1) // (p - 1)
    if kind == "mu_squared":
        return 1 if e == 1 else 0
    if kind == "dedekind_psi":
        return p ** e + p ** (e - 1)
    if kind == "beta_alt":
        return (p ** (e + 1) + (-1 if e % 2 else 1)) // (p + 1)
    if kind == "convolution" and spec.is_multiplicative:
        return sum(prime_power_value(spec.left, p, i)
                   * prime_power_value(spec.right, p, e - i)
                   for i in range(e + 1))
    raise UsageError(f"{kind} has no multiplicative prime-power value")


def _additive_increment(spec: FunctionSpec, p: int, e: int) -> Number:
    kind = spec.kind
    if kind == "omega_small":
        return 1
    if kind == "omega_big":
        return e
    if kind == "kappa_log":
        return math.log(p)
    if kind == "f_s_eta":
        count = spec.s_set.count_upto(e)
        if spec.eta == 0.0:
            return count
        return math.log(p) ** spec.eta * count
    raise UsageError(f"{kind} is not an additive kind")


def eval_point(spec: FunctionSpec, n: int) -> Number:
    """Exact f(n) for a single point; f(0) = 0."""
    if n < 0:
        raise UsageError("eval_point needs n >= 0")
    if n == 0:
        return 0
    if spec.kind == "log_n":
        return math.log(n) if n > 1 else 0.0
    if spec.kind == "convolution":
        total = 0
        for d in divisors_from_factorization(factorize(n)):
            lv = eval_point(spec.left, d)
            if lv:
                total += lv * eval_point(spec.right, n // d)
        return total
    factors = factorize(n)
    if spec.kind in _MULTIPLICATIVE_KINDS:
        value = 1
        for p, e in factors:
            value *= prime_power_value(spec, p, e)
            if value == 0:
                return 0
        return value
    value = 0
    for p, e in factors:
        value += _additive_increment(spec, p, e)
    return value


# ---------------------------------------------------------------------------
# tables

@dataclass(frozen=True)
class FunctionTable:
    """Exact values f(1..limit); values[0] is a 0 placeholder (f(0) = 0)."""

    spec: FunctionSpec
    limit: int
    values: list = field(repr=False)

    def __post_init__(self):
        if self.limit < 1:
            raise UsageError("table limit must be >= 1")
        if len(self.values) != self.limit + 1:
            raise UsageError("table length does not match limit")

    def __getitem__(self, n: int) -> Number:
        return self.values[n]

    def __len__(self) -> int:
        return self.limit + 1


def sieve_table(spec: FunctionSpec, limit: int) -> FunctionTable:
    """Tabulate f(1..limit) with a smallest-prime-factor sieve."""
    if limit < 1:
        raise UsageError("sieve limit must be >= 1")
    kind = spec.kind
    if kind == "one":
        values = [0] + [1] * limit
    elif kind == "delta":
        values = [0, 1] + [0] * (limit - 1)
    elif kind == "id":
        values = list(range(limit + 1))
        values[0] = 0
    elif kind == "log_n":
        values = [0.0, 0.0] + [math.log(n) for n in range(2, limit + 1)]
    elif kind == "convolution":
        left = sieve_table(spec.left, limit)
        right = sieve_table(spec.right, limit)
        return dirichlet_convolve(left, right, spec=spec)
    else:
        values = _sieve_by_spf(spec, limit)
    return FunctionTable(spec=spec, limit=limit, values=values)


def _sieve_by_spf(spec: FunctionSpec, limit: int) -> list:
    """Shared fill for multiplicative and additive kinds.

    Every n factors as cof * p^e with p = spf(n) and gcd(cof, p) = 1, so the
    value at n comes from the value at cof and the prime-power part, both of
    which are already filled.
    """
    multiplicative = spec.kind in _MULTIPLICATIVE_KINDS
    spf = _cached_spf(limit) if limit <= 2_000_000 else smallest_prime_factor_table(limit)
    ppart = [0] * (limit + 1)   # spf-power part of n
    values = [0] * (limit + 1)
    values[1] = 1 if multiplicative else (0.0 if not spec.is_integer_valued else 0)
    expo = [0] * (limit + 1)
    for n in range(2, limit + 1):
        p = spf[n]
        m = n // p
        if m % p == 0:
            ppart[n] = ppart[m] * p
            expo[n] = expo[m] + 1
        else:
            ppart[n] = p
            expo[n] = 1
        pp = ppart[n]
        if pp == n:
            if multiplicative:
                values[n] = prime_power_value(spec, p, expo[n])
            else:
                values[n] = _additive_increment(spec, p, expo[n])
        else:
            cof = n // pp
            if multiplicative:
                values[n] = values[cof] * values[pp]
            else:
                values[n] = values[cof] + values[pp]
    return values


def dirichlet_convolve(f: FunctionTable, g: FunctionTable,
                       spec: Optional[FunctionSpec] = None) -> FunctionTable:
    """(f*g)(n) = sum_{d | n} f(d) g(n/d) for n <= shared limit."""
    if f.limit != g.limit:
        raise UsageError("convolution operands need equal limits")
    n = f.limit
    out = [0] * (n + 1)
    fv, gv = f.values, g.values
    for d in range(1, n + 1):
        fd = fv[d]
        if fd:
            for j in range(1, n // d + 1):
                out[d * j] += fd * gv[j]
    if spec is None:
        spec = FunctionSpec("convolution", left=f.spec, right=g.spec)
    return FunctionTable(spec=spec, limit=n, values=out)


def moebius_transform_inverse(f: FunctionTable) -> FunctionTable:
    """Table of mu * f, the Dirichlet inverse transform of f's summatory."""
    mu = sieve_table(FunctionSpec("moebius"), f.limit)
    return dirichlet_convolve(mu, f)
