import math
import random
from fractions import Fraction

import pytest

from sphersum.arith import parse_function
from sphersum.errors import SizeGuardError, UsageError
from sphersum.lattice import build_rk
from sphersum.sums import (
    SumQuery,
    n_sum_from_z_sums,
    n_vector_from_z_vector,
    spherical_sum,
    sum_gcd_brute,
    sum_gcd_identity,
    sum_lcm_brute,
    sum_lcm_convolution,
    z_sum_from_n_sums,
    z_vector_from_n_vector,
)

TAU = parse_function("tau")


def test_tau_gcd_k2_x2_is_8():
    # the four points (+-1, +-1) each contribute tau(1) = 1, and the four
    # axis points (+-1, 0), (0, +-1) contribute tau(1) = 1 as well
    q = SumQuery(2, 2, TAU, "gcd", "integers", "identity")
    assert sum_gcd_identity(q).value == 8
    q = SumQuery(2, 2, TAU, "gcd", "integers", "brute")
    assert sum_gcd_brute(q).value == 8


def test_gcd_identity_matches_brute_random():
    rng = random.Random(101)
    kinds = ("tau", "sigma", "phi", "id", "omega", "Omega", "mu2")
    for k in (2, 3):
        for _ in range(6):
            x = rng.randint(20, 4000 if k == 2 else 600)
            f = parse_function(rng.choice(kinds))
            fast = sum_gcd_identity(
                SumQuery(k, x, f, "gcd", "integers", "identity")).value
            slow = sum_gcd_brute(
                SumQuery(k, x, f, "gcd", "integers", "brute")).value
            assert fast == slow, (k, x, f.text)


def test_gcd_naturals_matches_identity_with_conversion():
    rng = random.Random(33)
    for _ in range(6):
        k = rng.randint(2, 3)
        x = rng.randint(50, 1200)
        f = parse_function(rng.choice(("tau", "phi", "mu2")))
        direct = sum_gcd_brute(
            SumQuery(k, x, f, "gcd", "naturals", "brute")).value
        z_sums = [sum_gcd_identity(
            SumQuery(dim, x, f, "gcd", "integers", "identity")).value
            for dim in range(k, 0, -1)]
        assert n_sum_from_z_sums(z_sums) == direct, (k, x, f.text)


def test_gcd_identity_shared_rk_table():
    table = build_rk(2, 5000)
    q = SumQuery(2, 5000, TAU, "gcd", "integers", "identity")
    assert sum_gcd_identity(q, rk=table).value == sum_gcd_identity(q).value


def test_gcd_log_valued_close():
    f = parse_function("log")
    k, x = 2, 2000
    fast = sum_gcd_identity(SumQuery(k, x, f, "gcd", "integers",
                                     "identity")).value
    slow = sum_gcd_brute(SumQuery(k, x, f, "gcd", "integers", "brute")).value
    assert math.isclose(fast, slow, rel_tol=1e-11)


def test_lcm_convolution_matches_brute_random():
    rng = random.Random(55)
    kinds = ("id", "sigma", "phi", "psi", "mu2")
    for k in (2, 3):
        for _ in range(5):
            x = rng.randint(20, 2500 if k == 2 else 400)
            f = parse_function(rng.choice(kinds))
            fast = sum_lcm_convolution(
                SumQuery(k, x, f, "lcm", "naturals", "convolution")).value
            slow = sum_lcm_brute(
                SumQuery(k, x, f, "lcm", "naturals", "brute")).value
            assert fast == slow, (k, x, f.text)


def test_lcm_integer_domain_is_power_of_two_multiple():
    f = parse_function("id")
    for k in (2, 3):
        x = 500
        nat = spherical_sum(SumQuery(k, x, f, "lcm", "naturals", "brute")).value
        full = spherical_sum(SumQuery(k, x, f, "lcm", "integers",
                                      "brute")).value
        assert full == 2 ** k * nat
        conv = spherical_sum(SumQuery(k, x, f, "lcm", "integers",
                                      "convolution")).value
        assert conv == full


def test_lcm_explicit_rank_override():
    # one is bounded with f(p) = 1, rank 0
    f = parse_function("one")
    x = 800
    fast = sum_lcm_convolution(SumQuery(2, x, f, "lcm", "naturals",
                                        "convolution"), r=0).value
    slow = sum_lcm_brute(SumQuery(2, x, f, "lcm", "naturals", "brute")).value
    assert fast == slow


def test_binomial_conversions_round_trip():
    rng = random.Random(77)
    for _ in range(30):
        k = rng.randint(1, 7)
        vec = [rng.randint(-10 ** 9, 10 ** 9) for _ in range(k)]
        assert n_vector_from_z_vector(z_vector_from_n_vector(vec)) == vec
        zvec = [rng.randint(-10 ** 9, 10 ** 9) for _ in range(k)]
        back = z_vector_from_n_vector(n_vector_from_z_vector(zvec))
        assert [Fraction(v) for v in back] == [Fraction(v) for v in zvec]


def test_binomial_conversion_anchors():
    # k = 1: Z-sum = 2 * N-sum; k = 2: Z = 4 N_2 + 4 N_1
    assert z_sum_from_n_sums([5]) == 10
    assert z_sum_from_n_sums([5, 3]) == 4 * 5 + 4 * 3
    assert n_sum_from_z_sums([4 * 5 + 4 * 3, 2 * 3]) == 5


def test_query_validation():
    with pytest.raises(UsageError):
        SumQuery(0, 10, TAU)
    with pytest.raises(UsageError):
        SumQuery(2, -1, TAU)
    with pytest.raises(UsageError):
        SumQuery(2, 10, TAU, "gcd", "integers", "convolution")
    with pytest.raises(UsageError):
        SumQuery(2, 10, TAU, "lcm", "naturals", "identity")
    with pytest.raises(UsageError):
        SumQuery(2, 10, TAU, "gcd", "naturals", "identity")
    with pytest.raises(UsageError):
        SumQuery(2, 10, TAU, "nope")
    with pytest.raises(UsageError):
        SumQuery(2, 10.5, TAU)


def test_brute_size_guard():
    with pytest.raises(SizeGuardError):
        sum_gcd_brute(SumQuery(2, 10 ** 11, TAU, "gcd", "integers", "brute"))
    with pytest.raises(SizeGuardError):
        sum_lcm_brute(SumQuery(2, 10 ** 11, TAU, "lcm", "naturals", "brute"))


def test_zero_and_tiny_x():
    assert spherical_sum(SumQuery(2, 0, TAU, "gcd", "integers",
                                  "identity")).value == 0
    assert spherical_sum(SumQuery(2, 0, TAU, "gcd", "integers",
                                  "brute")).value == 0
    assert spherical_sum(SumQuery(2, 1, TAU, "lcm", "naturals",
                                  "brute")).value == 0
    # x = 2 admits only (1, 1) with lcm 1
    assert spherical_sum(SumQuery(2, 2, parse_function("id"), "lcm",
                                  "naturals", "convolution")).value == 1


def test_dispatch_routes():
    q = SumQuery(2, 100, TAU, "gcd", "integers", "identity")
    assert spherical_sum(q).value == sum_gcd_identity(q).value
    q = SumQuery(2, 100, parse_function("id"), "lcm", "naturals",
                 "convolution")
    assert spherical_sum(q).value == sum_lcm_convolution(q).value
