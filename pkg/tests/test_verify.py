import json
import math

import pytest

import sphersum.verify as V
from sphersum.arith import parse_function
from sphersum.constants import (
    bounded_series_constant,
    lcm_main_constant,
    mean_value_constant,
    unit_ball_volume,
    zeta,
)
from sphersum.errors import ComputationError, SizeGuardError, UsageError
from sphersum.verify import (
    SweepRecord,
    claimed_error_exponent,
    emit_report,
    error_shape,
    error_shape_text,
    exact_value,
    fit_exponent,
    geometric_grid,
    main_term,
    make_spec,
    records_from_json,
    report_basename,
    sweep,
    write_report_files,
)


# ---------------------------------------------------------------------------
# spec construction and validation

def test_make_spec_defaults():
    s = make_spec("cor_tau")
    assert (s.k, s.f.kind, s.domain) == (2, "tau", "naturals")
    assert make_spec("th3_gcd_id").f.kind == "sigma"
    assert make_spec("th5_lcm_A1").f.kind == "id"
    assert make_spec("lattice_count").f is None
    s = make_spec("wintner_ii")
    assert s.t == pytest.approx(0.5)


def test_make_spec_rejections():
    with pytest.raises(UsageError):
        make_spec("nonsense")
    with pytest.raises(UsageError):
        make_spec("wintner_i", domain="integers")
    with pytest.raises(UsageError):
        make_spec("th2_gcd_bounded", domain="naturals")
    with pytest.raises(UsageError):
        make_spec("cor_tau", f=parse_function("sigma"))
    with pytest.raises(UsageError):
        make_spec("cor_lcm_id", f=parse_function("sigma"))
    with pytest.raises(UsageError):
        make_spec("wintner_ii", f=parse_function("mu2"))    # t undeclared
    with pytest.raises(UsageError):
        make_spec("wintner_ii", t=1.5)
    with pytest.raises(UsageError):
        make_spec("wintner_ii", t=0.0)
    with pytest.raises(UsageError):
        make_spec("cor_tau", t=0.5)                         # t is ii-only
    with pytest.raises(UsageError):
        make_spec("lattice_count", f=parse_function("tau"))
    with pytest.raises(UsageError):
        make_spec("th5_lcm_A1", f=parse_function("mu2"))    # rank 0, not 1
    with pytest.raises(UsageError):
        make_spec("th6_lcm_A0", f=parse_function("id"))     # rank 1, not 0
    with pytest.raises(UsageError):
        make_spec("th2_gcd_bounded", f=parse_function("omega"))
    with pytest.raises(UsageError):
        make_spec("th4_fseta", f=parse_function("tau"))
    with pytest.raises(UsageError):
        make_spec("th2_gcd_bounded", k=1)
    with pytest.raises(UsageError):
        make_spec("wintner_i", f=parse_function("sigma"), k=2)  # needs k >= 4


def test_make_spec_accepts_declared_convolution():
    s = make_spec("th2_gcd_bounded", f=parse_function("mu2*one"))
    assert s.f.kind == "convolution"
    s = make_spec("th3_gcd_id", f=parse_function("lambda*id"))
    assert s.f.kind == "convolution"


def test_wintner_ii_abscissa_must_be_declared_for_new_f():
    s = make_spec("wintner_ii", f=parse_function("mu2"), t=0.25)
    assert s.t == 0.25


# ---------------------------------------------------------------------------
# main terms match hand-composed coefficients

def test_lattice_main_term_is_ball_volume():
    for k in (2, 3, 4):
        s = make_spec("lattice_count", k=k)
        assert main_term(s, 100) == pytest.approx(
            unit_ball_volume(k) * 100 ** (k / 2), rel=1e-12), k


def test_cor_tau_naturals_k2_two_terms():
    s = make_spec("cor_tau", domain="naturals")
    x = 10 ** 4
    target = (math.pi ** 3 / 24) * x - 0.5 * math.sqrt(x) * math.log(x)
    assert main_term(s, x) == pytest.approx(target, rel=1e-12)


def test_cor_tau_integers_coefficient():
    s = make_spec("cor_tau", domain="integers")
    x = 10 ** 4
    target = unit_ball_volume(2) * zeta(2).value * x
    assert main_term(s, x) == pytest.approx(target, rel=1e-12)


def test_wintner_coefficient():
    s = make_spec("wintner_i")
    x = 10 ** 4
    target = (unit_ball_volume(2) / 4) * zeta(2).value * x
    assert main_term(s, x) == pytest.approx(target, rel=1e-12)
    s = make_spec("wintner_ii")
    assert main_term(s, x) == pytest.approx(target, rel=1e-12)


def test_th3_and_corollary_coefficients():
    x = 10 ** 4
    d = bounded_series_constant(parse_function("one"), 2).value   # zeta(2)
    s = make_spec("th3_gcd_id")
    assert main_term(s, x) == pytest.approx(
        (3 / math.pi) * d * x * math.log(x), rel=1e-9)
    s = make_spec("cor_g_id")
    assert main_term(s, x) == pytest.approx(
        (3 / (4 * math.pi)) * d * x * math.log(x), rel=1e-9)
    s = make_spec("th3_gcd_id", k=3)
    d3 = bounded_series_constant(parse_function("one"), 3).value  # zeta(3)
    target = (unit_ball_volume(3) * zeta(2).value / zeta(3).value
              * d3 * x ** 1.5)
    assert main_term(s, x) == pytest.approx(target, rel=1e-8)


def test_lcm_main_coefficients():
    x = 10 ** 3
    c = lcm_main_constant(parse_function("id"), 2).value
    s = make_spec("cor_lcm_id", domain="naturals")
    assert main_term(s, x) == pytest.approx(c / 8 * x ** 2, rel=1e-9)
    s = make_spec("cor_lcm_id", domain="integers")
    assert main_term(s, x) == pytest.approx(c / 2 * x ** 2, rel=1e-9)
    s = make_spec("cor_mu2_lcm")
    target = unit_ball_volume(2) / (2 * zeta(2).value) ** 2 * x
    assert main_term(s, x) == pytest.approx(target, rel=1e-9)


# ---------------------------------------------------------------------------
# claimed error shapes

def test_error_shape_values():
    s = make_spec("cor_tau", domain="naturals")
    assert claimed_error_exponent(s) == 0.5
    assert error_shape(s, 10 ** 4) == pytest.approx(100.0)
    assert error_shape_text(s) == "x^0.5"
    s = make_spec("th2_gcd_bounded", k=3, f=parse_function("mu2*one"))
    assert claimed_error_exponent(s) == pytest.approx(517 / 1648)
    s = make_spec("th5_lcm_A1")
    assert error_shape_text(s) == "x^1.5 * log(x)^1"
    assert error_shape(s, math.e ** 2) == pytest.approx(math.e ** 3 * 2.0)
    s = make_spec("th5_lcm_A1", k=3)
    assert claimed_error_exponent(s) == 2.75
    s = make_spec("th4_fseta")
    assert error_shape_text(s) == "x^0.5 * log(x)^-1"
    assert error_shape(s, 1) == 0.0
    s = make_spec("th6_lcm_A0", k=3)
    assert claimed_error_exponent(s) == 1.25
    s = make_spec("wintner_ii")
    assert claimed_error_exponent(s) == pytest.approx(0.75)
    s = make_spec("lattice_count", k=5)
    assert claimed_error_exponent(s) == 2.0


# ---------------------------------------------------------------------------
# sweeps

def test_sweep_lattice_small_grid():
    s = make_spec("lattice_count")
    recs = sweep(s, [25, 100, 400], threads=1)
    assert [r.x for r in recs] == [25, 100, 400]
    assert recs[0].exact == 81
    assert recs[0].main_term == pytest.approx(math.pi * 25)
    assert recs[0].residual == pytest.approx(81 - math.pi * 25)
    assert recs[0].normalized_residual == pytest.approx(recs[0].residual / 5)


def test_sweep_threads_do_not_change_records():
    s = make_spec("cor_tau", domain="naturals")
    grid = [100, 200, 400, 800]
    assert sweep(s, grid, threads=1) == sweep(s, grid, threads=4)


def test_sweep_rejects_bad_grids():
    s = make_spec("lattice_count")
    with pytest.raises(UsageError):
        sweep(s, [100, 100])
    with pytest.raises(UsageError):
        sweep(s, [400, 100])
    assert sweep(s, []) == []


def test_sweep_brute_check_failure_raises(monkeypatch):
    s = make_spec("lattice_count")
    monkeypatch.setattr(V, "_brute_value", lambda spec, x: -999)
    with pytest.raises(ComputationError):
        sweep(s, [25, 100])


def test_sweep_size_guard_propagates():
    s = make_spec("lattice_count")
    with pytest.raises(SizeGuardError):
        sweep(s, [10 ** 10])


def test_exact_value_routes():
    s = make_spec("cor_tau", domain="naturals")
    # points of norm <= 8: (1,1),(1,2),(2,1),(2,2); gcds 1,1,1,2
    assert exact_value(s, 8) == 5
    s = make_spec("cor_tau", domain="integers")
    assert exact_value(s, 2) == 8      # tau(gcd) over 8 nonzero-norm points
    s = make_spec("th4_fseta", f=parse_function("log"))
    v = exact_value(s, 9)
    assert isinstance(v, float)
    s = make_spec("cor_lcm_id", domain="naturals")
    assert exact_value(s, 8) == 7      # lcms 1,2,2,2 on the same 4 points


def test_geometric_grid():
    assert geometric_grid(100, 1000, 10.0) == [100, 1000]
    grid = geometric_grid(10, 1000, 2.0)
    assert grid[0] == 10 and grid[-1] <= 1000
    assert all(b > a for a, b in zip(grid, grid[1:]))
    with pytest.raises(UsageError):
        geometric_grid(0, 100, 2.0)
    with pytest.raises(UsageError):
        geometric_grid(100, 10, 2.0)
    with pytest.raises(UsageError):
        geometric_grid(10, 100, 1.0)


# ---------------------------------------------------------------------------
# residual exponent fitting

def _fake_records(xs, residuals):
    return [SweepRecord(x, 0, 0.0, r, 0.0) for x, r in zip(xs, residuals)]


def test_fit_exponent_recovers_power():
    xs = [10, 100, 1000, 10000]
    recs = _fake_records(xs, [x ** 0.5 for x in xs])
    assert fit_exponent(recs) == pytest.approx(0.5, abs=0.01)
    recs = _fake_records(xs, [7.0] * 4)
    assert fit_exponent(recs) == pytest.approx(0.0, abs=0.01)
    recs = _fake_records(xs, [-3.0 * x ** 1.25 for x in xs])
    assert fit_exponent(recs) == pytest.approx(1.25, abs=0.01)


def test_fit_exponent_needs_three_nonzero():
    xs = [10, 100, 1000, 10000]
    recs = _fake_records(xs, [1.0, 0.0, 0.0, 2.0])
    with pytest.raises(UsageError):
        fit_exponent(recs)


# ---------------------------------------------------------------------------
# report emission

def test_emit_report_csv_layout():
    assert emit_report([]) == "x,exact,main_term,residual,normalized_residual\n"
    recs = [SweepRecord(25, 81, 78.5, 2.5, 0.5)]
    text = emit_report(recs)
    lines = text.splitlines()
    assert len(lines) == 2
    assert lines[1] == "25,81,78.5,2.5,0.5"
    with pytest.raises(UsageError):
        emit_report(recs, format="tsv")


def test_report_json_round_trip():
    s = make_spec("lattice_count")
    recs = sweep(s, [25, 100, 400], threads=1)
    back = records_from_json(emit_report(recs, format="json"))
    assert back == recs
    assert isinstance(back[0].exact, int)


def test_report_basename():
    assert report_basename(make_spec("cor_tau")) == "cor_tau_k2_tau"
    assert report_basename(make_spec("lattice_count", k=3)) == \
        "lattice_count_k3_count"
    s = make_spec("th4_fseta", f=parse_function("fseta:S={1,3+},eta=1"))
    assert "fseta" in report_basename(s)


def test_write_report_files(tmp_path):
    s = make_spec("lattice_count")
    recs = sweep(s, [25, 100, 400], threads=1)
    paths = write_report_files(recs, s, tmp_path)
    assert [p.suffix for p in paths] == [".csv", ".json", ".png"]
    for p in paths:
        assert p.exists() and p.stat().st_size > 0
    assert paths[0].read_text() == emit_report(recs)
    out2 = tmp_path / "nofig"
    paths = write_report_files(recs, s, out2, figures=False)
    assert [p.suffix for p in paths] == [".csv", ".json"]
    assert not (out2 / "lattice_count_k2_count.png").exists()


# ---------------------------------------------------------------------------
# normalized residuals at desk scale stay modest

def test_normalized_residuals_small_grid():
    s = make_spec("cor_tau", domain="naturals")
    recs = sweep(s, [1000, 2000, 4000], threads=1)
    assert all(abs(r.normalized_residual) <= 10 for r in recs)
    s = make_spec("th6_lcm_A0")
    recs = sweep(s, [500, 1000, 2000], threads=1)
    assert all(abs(r.normalized_residual) <= 10 for r in recs)
